use anyhow::Result;
use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Rows destined for either a JSON document or a CSV file with a fixed header.
///
/// A single JSON row is emitted as a bare object, several as an array.
pub struct Table {
    header: Vec<&'static str>,
    json_rows: Vec<Value>,
    csv_rows: Vec<Vec<String>>,
    document: Option<Value>,
}

impl Table {
    pub fn new<const N: usize>(header: [&'static str; N]) -> Self {
        Self {
            header: header.to_vec(),
            json_rows: Vec::new(),
            csv_rows: Vec::new(),
            document: None,
        }
    }

    pub fn push(&mut self, json: Value, csv: Vec<String>) {
        debug_assert_eq!(csv.len(), self.header.len());
        self.json_rows.push(json);
        self.csv_rows.push(csv);
    }

    /// Replace the JSON rendering with a whole document.
    pub fn set_document(&mut self, doc: Value) {
        self.document = Some(doc);
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => {
                let v = match (&self.document, self.json_rows.as_slice()) {
                    (Some(d), _) => d.clone(),
                    (None, [one]) => one.clone(),
                    (None, rows) => Value::Array(rows.to_vec()),
                };
                Ok(serde_json::to_string_pretty(&v)? + "\n")
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header)?;
                for r in &self.csv_rows {
                    w.write_record(r)?;
                }
                Ok(String::from_utf8(w.into_inner()?)?)
            }
        }
    }
}
