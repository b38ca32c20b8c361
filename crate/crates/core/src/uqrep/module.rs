//! Submodules generated by highest weight vectors, and the generator table
//! restricted to such a submodule.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::linalg;
use crate::numfield::Field;

use super::{GeneratorTable, Kind, SparseMatrix};

/// Basis of an invariant subspace. Every basis vector is a weight vector,
/// normalized to 1 at its pivot coordinate and 0 at the other pivots.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleBasis<F: Field> {
    ambient_dim: usize,
    vectors: Vec<Vec<F>>,
    pivots: Vec<usize>,
    weights: Vec<Vec<i64>>,
}

impl<F: Field> ModuleBasis<F> {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vectors(&self) -> &[Vec<F>] {
        &self.vectors
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    /// Coordinates of a vector known to lie in the span.
    pub fn coordinates(&self, v: &[F]) -> Vec<F> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// The ambient vector with the given coordinates.
    pub fn embed(&self, coords: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.ambient_dim];
        for (c, b) in coords.iter().zip(&self.vectors) {
            if c.is_exactly_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                if !x.is_exactly_zero() {
                    *o = o.clone() + c.clone() * x.clone();
                }
            }
        }
        out
    }

    fn restrict(&self, m: &SparseMatrix<F>) -> SparseMatrix<F> {
        let mut out = SparseMatrix::zeros(self.dim(), self.dim());
        for (k, b) in self.vectors.iter().enumerate() {
            let image = m.apply(b);
            for (row, &p) in self.pivots.iter().enumerate() {
                out.add_at(row, k, image[p].clone());
            }
        }
        out
    }

    /// Generator matrices of the submodule in this basis.
    pub fn restricted_table(&self, table: &GeneratorTable<F>) -> Result<GeneratorTable<F>> {
        let mats = table.labels().map(|(k, i, j)| self.restrict(table.get(k, i, j))).collect();
        GeneratorTable::new(table.n(), table.q().clone(), self.weights.clone(), mats)
    }

    /// Largest defect of `M b - sum_m c_m b_m` over all generators and basis vectors.
    pub fn closure_residual(&self, table: &GeneratorTable<F>) -> f64 {
        let mut worst: f64 = 0.0;
        for (k, i, j) in table.labels() {
            let m = table.get(k, i, j);
            for b in &self.vectors {
                let image = m.apply(b);
                let back = self.embed(&self.coordinates(&image));
                for (x, y) in image.iter().zip(&back) {
                    worst = worst.max((x.clone() - y.clone()).magnitude());
                }
            }
        }
        worst
    }
}

/// Basis indices of weight `mu`.
pub fn weight_space<F: Field>(table: &GeneratorTable<F>, mu: &[i64]) -> Vec<usize> {
    table
        .weights()
        .iter()
        .enumerate()
        .filter(|(_, w)| w.as_slice() == mu)
        .map(|(i, _)| i)
        .collect()
}

fn raising_ops<F: Field>(table: &GeneratorTable<F>) -> Vec<&SparseMatrix<F>> {
    let n = table.n();
    (0..n)
        .flat_map(|i| (0..i).map(move |j| (i, j)))
        .map(|(i, j)| table.get(Kind::LMinus, i, j))
        .collect()
}

/// Basis of the vectors of weight `mu` killed by every `L-_ij`, `i > j`.
pub fn highest_weight_vectors<F: Field>(table: &GeneratorTable<F>, mu: &[i64]) -> Vec<Vec<F>> {
    let cols = weight_space(table, mu);
    if cols.is_empty() {
        return Vec::new();
    }
    let mut rows = Vec::new();
    for op in raising_ops(table) {
        let dense = op.to_dense();
        for r in dense {
            let restricted: Vec<F> = cols.iter().map(|&c| r[c].clone()).collect();
            if restricted.iter().any(|v| !v.is_exactly_zero()) {
                rows.push(restricted);
            }
        }
    }
    linalg::kernel(&rows, cols.len())
        .into_iter()
        .map(|k| {
            let mut v = vec![F::zero(); table.dim()];
            for (c, x) in cols.iter().zip(k) {
                v[*c] = x;
            }
            v
        })
        .collect()
}

fn single_weight<F: Field>(table: &GeneratorTable<F>, v: &[F]) -> Option<Vec<i64>> {
    let mut found: Option<&Vec<i64>> = None;
    for (x, w) in v.iter().zip(table.weights()) {
        if x.is_zero() {
            continue;
        }
        match found {
            None => found = Some(w),
            Some(f) if f == w => {}
            Some(_) => return None,
        }
    }
    found.cloned()
}

struct WeightSpaceBasis<F: Field> {
    vectors: Vec<(usize, Vec<F>)>,
}

impl<F: Field> WeightSpaceBasis<F> {
    /// Reduce `v` and, if independent, add it. Returns whether it was new.
    fn insert(&mut self, mut v: Vec<F>) -> bool {
        for (p, b) in &self.vectors {
            let c = v[*p].clone();
            if c.is_exactly_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_exactly_zero() {
                    *x = x.clone() - c.clone() * y.clone();
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x = if x.is_zero() { F::zero() } else { x.clone() * inv.clone() };
        }
        for (_, b) in self.vectors.iter_mut() {
            let c = b[p].clone();
            if c.is_exactly_zero() {
                continue;
            }
            for (x, y) in b.iter_mut().zip(&v) {
                if !y.is_exactly_zero() {
                    *x = x.clone() - c.clone() * y.clone();
                }
            }
        }
        self.vectors.push((p, v));
        true
    }
}

/// The submodule generated by a highest weight vector.
pub fn submodule_from_hw<F: Field>(table: &GeneratorTable<F>, hw: &[F]) -> Result<ModuleBasis<F>> {
    if hw.len() != table.dim() {
        return Err(Error::Domain(format!(
            "vector has length {}, module has dimension {}",
            hw.len(),
            table.dim()
        )));
    }
    let Some(mu) = single_weight(table, hw) else {
        return Err(Error::NotHighestWeight);
    };
    for op in raising_ops(table) {
        if op.apply(hw).iter().any(|x| !x.is_zero()) {
            return Err(Error::NotHighestWeight);
        }
    }
    let n = table.n();
    let lowering: Vec<(usize, usize, Kind)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .map(|(i, j)| (i, j, if i < j { Kind::LPlus } else { Kind::LMinus }))
        .collect();

    let mut spaces: BTreeMap<Vec<i64>, WeightSpaceBasis<F>> = BTreeMap::new();
    let mut queue = VecDeque::new();
    spaces.insert(mu.clone(), WeightSpaceBasis { vectors: Vec::new() });
    spaces.get_mut(&mu).unwrap().insert(hw.to_vec());
    queue.push_back((mu, hw.to_vec()));
    let cap = super::max_dim();
    let mut total = 1usize;
    while let Some((w, v)) = queue.pop_front() {
        for &(i, j, kind) in &lowering {
            let image = table.get(kind, i, j).apply(&v);
            if image.iter().all(|x| x.is_zero()) {
                continue;
            }
            let mut w2 = w.clone();
            w2[j] += 1;
            w2[i] -= 1;
            let space = spaces.entry(w2.clone()).or_insert_with(|| WeightSpaceBasis { vectors: Vec::new() });
            if space.insert(image.clone()) {
                total += 1;
                if total > cap {
                    return Err(Error::DimensionCap { dim: total, cap });
                }
                queue.push_back((w2, image));
            }
        }
    }
    let mut vectors = Vec::new();
    let mut pivots = Vec::new();
    let mut weights = Vec::new();
    // highest weights first (reverse lexicographic order on weights)
    for (w, space) in spaces.into_iter().rev() {
        for (p, v) in space.vectors {
            pivots.push(p);
            vectors.push(v);
            weights.push(w.clone());
        }
    }
    Ok(ModuleBasis {
        ambient_dim: table.dim(),
        vectors,
        pivots,
        weights,
    })
}

/// One irreducible submodule per independent highest weight vector of each
/// dominant weight occurring in the module, highest weights first.
pub fn irreducible_components<F: Field>(table: &GeneratorTable<F>) -> Result<Vec<(Vec<i64>, ModuleBasis<F>)>> {
    let mut dominant: Vec<Vec<i64>> = table
        .weights()
        .iter()
        .filter(|w| w.windows(2).all(|p| p[0] >= p[1]))
        .cloned()
        .collect();
    dominant.sort();
    dominant.dedup();
    let mut out = Vec::new();
    for mu in dominant.into_iter().rev() {
        for hw in highest_weight_vectors(table, &mu) {
            out.push((mu.clone(), submodule_from_hw(table, &hw)?));
        }
    }
    Ok(out)
}
