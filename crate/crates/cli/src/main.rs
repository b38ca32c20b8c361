//! `qaw`: evaluate Askey-Wilson and q-Jacobi polynomials, export
//! orthogonality measures, and run the verification campaigns.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a verification failed.

mod output;

use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qaw_core::numfield::{parse_rational, rat, QContext, Rational};
use qaw_core::orthmeasure::{build_measure, complexify, QuadratureSettings};
use qaw_core::polyring::XPoly;
use qaw_core::qclassical::{
    askey_wilson_pn, askey_wilson_rn, big_limit_target, big_qjacobi, limit_big_scaled, limit_little_scaled,
    little_limit_target, little_qjacobi, sup_distance, uniform_grid, AWParams, BigJacobiParams, LimitSign,
    LittleJacobiParams,
};
use qaw_core::qdiffop::{apply_aw_operator, aw_eigenvalue};
use qaw_core::uqrep::{default_h_samples, verify_qhc, CoidealSpec, VerificationCase};
use qaw_core::Field;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use output::{Format, Table};

#[derive(Parser)]
#[command(name = "qaw", version, about = "Askey-Wilson polynomials and quantum spherical functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Backend {
    Exact,
    Float,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate p_n(x; a, b, c, d | q).
    EvalAw(EvalAw),
    /// Evaluate the big q-Jacobi polynomial P_n(x; q^alpha, q^beta, c, d; q).
    EvalBigq(EvalBigq),
    /// Evaluate the little q-Jacobi polynomial p_n(x; q^alpha, q^beta; q).
    EvalLittleq(EvalLittleq),
    /// Export the orthogonality measure for real parameters.
    Measure(MeasureArgs),
    /// Check the q-difference equation on random exact parameters.
    CheckQdiff(CheckQdiff),
    /// Check orthogonality of p_0..p_k under the measure.
    CheckOrth(CheckOrth),
    /// Check the big and little q-Jacobi limit transitions.
    CheckLimit(CheckLimit),
    /// Compare representation-side spherical functions with Askey-Wilson polynomials.
    CheckSpherical(CheckSpherical),
    /// Evaluate the q^h C reduction residual.
    CheckQhc(CheckQhc),
}

#[derive(Args)]
struct EvalAw {
    #[arg(long)]
    backend: Backend,
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long, allow_hyphen_values = true)]
    c: String,
    #[arg(long, allow_hyphen_values = true)]
    d: String,
    /// Comma-separated evaluation points.
    #[arg(long, allow_hyphen_values = true)]
    x: String,
}

#[derive(Args)]
struct EvalBigq {
    #[arg(long)]
    backend: Backend,
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    #[arg(long = "q-alpha", allow_hyphen_values = true)]
    q_alpha: String,
    #[arg(long = "q-beta", allow_hyphen_values = true)]
    q_beta: String,
    #[arg(long, allow_hyphen_values = true)]
    c: String,
    #[arg(long, allow_hyphen_values = true)]
    d: String,
    #[arg(long, allow_hyphen_values = true)]
    x: String,
}

#[derive(Args)]
struct EvalLittleq {
    #[arg(long)]
    backend: Backend,
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    #[arg(long = "q-alpha", allow_hyphen_values = true)]
    q_alpha: String,
    #[arg(long = "q-beta", allow_hyphen_values = true)]
    q_beta: String,
    #[arg(long, allow_hyphen_values = true)]
    x: String,
}

#[derive(Args)]
struct FloatParams {
    #[arg(long, allow_hyphen_values = true)]
    q: f64,
    #[arg(long, allow_hyphen_values = true)]
    a: f64,
    #[arg(long, allow_hyphen_values = true)]
    b: f64,
    #[arg(long, allow_hyphen_values = true)]
    c: f64,
    #[arg(long, allow_hyphen_values = true)]
    d: f64,
}

impl FloatParams {
    fn aw(&self) -> AWParams<f64> {
        AWParams::new(self.a, self.b, self.c, self.d, self.q)
    }
}

#[derive(Args)]
struct MeasureArgs {
    #[command(flatten)]
    params: FloatParams,
}

#[derive(Args)]
struct CheckQdiff {
    #[arg(long, default_value_t = 6)]
    max_degree: usize,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct CheckOrth {
    #[command(flatten)]
    params: FloatParams,
    #[arg(long, default_value_t = 4)]
    max_degree: usize,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LimitFamily {
    Big,
    Little,
}

#[derive(Args)]
struct CheckLimit {
    #[arg(long, value_enum)]
    family: LimitFamily,
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    #[arg(long, default_value_t = 0.5)]
    q: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    beta: f64,
    /// Big q-Jacobi only.
    #[arg(long, default_value_t = 1.5)]
    c: f64,
    /// Big q-Jacobi only.
    #[arg(long, default_value_t = 1.0)]
    d: f64,
}

#[derive(Args)]
struct CheckSpherical {
    /// Comma-separated ranks.
    #[arg(long)]
    n: String,
    /// Comma-separated degrees.
    #[arg(long)]
    l: String,
    /// Left coideal sqrt(c); comma-separated values form a grid.
    #[arg(long, default_value = "1")]
    s: String,
    #[arg(long, default_value = "1")]
    t: String,
    /// Right coideal sqrt(c).
    #[arg(long, default_value = "1")]
    s2: String,
    #[arg(long, default_value = "1")]
    t2: String,
    #[arg(long, default_value = "1/2")]
    q: String,
}

#[derive(Args)]
struct CheckQhc {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    l: usize,
    #[arg(long)]
    s: String,
    #[arg(long)]
    t: String,
    #[arg(long)]
    s2: String,
    #[arg(long)]
    t2: String,
    /// Comma-separated coweight, one entry per rank.
    #[arg(long, allow_hyphen_values = true)]
    h: Option<String>,
    #[arg(long, default_value = "1/2")]
    q: String,
}

enum Outcome {
    Ok,
    VerificationFailed,
}

fn parse_exact(s: &str) -> Result<Rational> {
    parse_rational(s).map_err(|e| anyhow!("{e} (the exact backend takes p/q, integer or decimal literals)"))
}

fn parse_float(s: &str) -> Result<f64> {
    if let Ok(v) = s.trim().parse::<f64>() {
        return Ok(v);
    }
    Ok(parse_exact(s)?.to_float())
}

fn list<T>(s: &str, parse: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    s.split(',').filter(|p| !p.trim().is_empty()).map(|p| parse(p.trim())).collect()
}

fn parse_usize(s: &str) -> Result<usize> {
    s.parse().with_context(|| format!("not a nonnegative integer: {s:?}"))
}

fn scalar_json<F: Field + Display>(v: &F) -> Value {
    if F::EXACT {
        Value::String(format!("{v}"))
    } else {
        json!(v.to_float())
    }
}

fn eval_table<F: Field + Display>(family: &str, n: usize, params: &[(&str, &F)], poly: &XPoly<F>, xs: &[F]) -> Table {
    let param_str = params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";");
    let mut t = Table::new(["family", "n", "params", "x", "value"]);
    for x in xs {
        let v = poly.eval(x);
        t.push(
            json!({
                "family": family,
                "n": n,
                "backend": F::NAME,
                "params": params.iter().map(|(k, v)| (k.to_string(), scalar_json(*v))).collect::<serde_json::Map<_, _>>(),
                "x": scalar_json(x),
                "value": scalar_json(&v),
            }),
            vec![family.into(), n.to_string(), param_str.clone(), format!("{x}"), format!("{v}")],
        );
    }
    t
}

fn run_eval_aw<F: Field + Display>(args: &EvalAw, parse: impl Fn(&str) -> Result<F>) -> Result<Table> {
    let p = AWParams::new(parse(&args.a)?, parse(&args.b)?, parse(&args.c)?, parse(&args.d)?, parse(&args.q)?);
    QContext::new(p.q.clone())?;
    let xs = list(&args.x, &parse)?;
    let poly = askey_wilson_pn(args.n, &p)?;
    let params = [("a", &p.a), ("b", &p.b), ("c", &p.c), ("d", &p.d), ("q", &p.q)];
    Ok(eval_table("askey-wilson", args.n, &params, &poly, &xs))
}

fn run_eval_bigq<F: Field + Display>(args: &EvalBigq, parse: impl Fn(&str) -> Result<F>) -> Result<Table> {
    let p = BigJacobiParams {
        q_alpha: parse(&args.q_alpha)?,
        q_beta: parse(&args.q_beta)?,
        c: parse(&args.c)?,
        d: parse(&args.d)?,
        q: parse(&args.q)?,
    };
    QContext::new(p.q.clone())?;
    let xs = list(&args.x, &parse)?;
    let poly = big_qjacobi(args.n, &p)?;
    let params = [("q_alpha", &p.q_alpha), ("q_beta", &p.q_beta), ("c", &p.c), ("d", &p.d), ("q", &p.q)];
    Ok(eval_table("big-q-jacobi", args.n, &params, &poly, &xs))
}

fn run_eval_littleq<F: Field + Display>(args: &EvalLittleq, parse: impl Fn(&str) -> Result<F>) -> Result<Table> {
    let p = LittleJacobiParams {
        q_alpha: parse(&args.q_alpha)?,
        q_beta: parse(&args.q_beta)?,
        q: parse(&args.q)?,
    };
    QContext::new(p.q.clone())?;
    let xs = list(&args.x, &parse)?;
    let poly = little_qjacobi(args.n, &p)?;
    let params = [("q_alpha", &p.q_alpha), ("q_beta", &p.q_beta), ("q", &p.q)];
    Ok(eval_table("little-q-jacobi", args.n, &params, &poly, &xs))
}

fn run_measure(args: &MeasureArgs, format: Format) -> Result<Table> {
    let m = build_measure(&complexify(&args.params.aw()), QuadratureSettings::default())?;
    let mut t = Table::new(["family", "k", "point", "mass"]);
    if format == Format::Json {
        t.set_document(serde_json::to_value(&m)?);
    }
    for a in &m.atoms {
        t.push(Value::Null, vec![a.family.to_string(), a.k.to_string(), a.point.to_string(), a.mass.to_string()]);
    }
    Ok(t)
}

fn random_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64, max_den: i64) -> Rational {
    loop {
        let den = rng.gen_range(1..=max_den);
        let num = rng.gen_range(lo * den..=hi * den);
        if num != 0 {
            return rat(num, den);
        }
    }
}

fn run_check_qdiff(args: &CheckQdiff) -> Result<(Table, Outcome)> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut t = Table::new(["family", "n", "params", "residual_zero"]);
    let mut all = true;
    let mut trials = 0;
    while trials < args.trials {
        let q = random_rational(&mut rng, 0, 1, 9);
        if q >= rat(1, 1) {
            continue;
        }
        let p = AWParams::new(
            random_rational(&mut rng, -2, 2, 7),
            random_rational(&mut rng, -2, 2, 7),
            random_rational(&mut rng, -2, 2, 7),
            random_rational(&mut rng, -2, 2, 7),
            q,
        );
        if askey_wilson_rn(args.max_degree, &p).is_err() {
            continue;
        }
        trials += 1;
        let params = format!("a={};b={};c={};d={};q={}", p.a, p.b, p.c, p.d, p.q);
        for n in 0..=args.max_degree {
            let r = askey_wilson_rn(n, &p)?;
            let zero = (&apply_aw_operator(&r, &p)? - &r.scale(&aw_eigenvalue(n, &p))).is_zero();
            all &= zero;
            t.push(
                json!({"family": "askey-wilson", "n": n, "params": params, "residual_zero": zero}),
                vec!["askey-wilson".into(), n.to_string(), params.clone(), zero.to_string()],
            );
        }
    }
    Ok((t, if all { Outcome::Ok } else { Outcome::VerificationFailed }))
}

fn run_check_orth(args: &CheckOrth) -> Result<(Table, Outcome)> {
    let p = args.params.aw();
    let m = build_measure(&complexify(&p), QuadratureSettings::default())?;
    let polys = (0..=args.max_degree)
        .map(|n| askey_wilson_pn(n, &p))
        .collect::<qaw_core::Result<Vec<_>>>()?;
    let g = m.gram(&polys)?;
    let mut worst: f64 = 0.0;
    for i in 0..polys.len() {
        for j in 0..polys.len() {
            if i != j {
                worst = worst.max((g[i][j] / (g[i][i] * g[j][j]).sqrt()).abs());
            }
        }
    }
    let norm_err = (g[0][0] - m.norm).abs() / m.norm;
    let ok = worst < args.tol && norm_err < args.tol;
    let mut t = Table::new(["max_offdiag", "norm_rel_err", "atoms", "orthogonal"]);
    t.push(
        json!({"gram": g, "max_offdiag": worst, "norm": m.norm, "norm_rel_err": norm_err, "atoms": m.atoms.len(), "orthogonal": ok}),
        vec![worst.to_string(), norm_err.to_string(), m.atoms.len().to_string(), ok.to_string()],
    );
    Ok((t, if ok { Outcome::Ok } else { Outcome::VerificationFailed }))
}

fn run_check_limit(args: &CheckLimit) -> Result<(Table, Outcome)> {
    let a_values = [1e-2, 1e-3, 1e-4];
    let mut t = Table::new(["family", "n", "sign", "err_1e-2", "err_1e-3", "err_1e-4", "converged"]);
    let mut all = true;
    let mut record = |family: &str, n: usize, sign: &str, errs: [f64; 3]| {
        let ok = errs.windows(2).all(|w| w[1] / w[0] < 0.5) && errs[2] < 1e-5;
        all &= ok;
        t.push(
            json!({"family": family, "n": n, "sign": sign, "errors": errs, "a": a_values, "converged": ok}),
            vec![
                family.into(),
                n.to_string(),
                sign.into(),
                errs[0].to_string(),
                errs[1].to_string(),
                errs[2].to_string(),
                ok.to_string(),
            ],
        );
    };
    for n in 1..=args.max_degree {
        match args.family {
            LimitFamily::Big => {
                let grid = uniform_grid(9, -args.d, args.c);
                let target = big_limit_target(n, args.alpha, args.beta, args.c, args.d, args.q)?;
                let mut errs = [0.0; 3];
                for (e, a) in errs.iter_mut().zip(a_values) {
                    let r = limit_big_scaled(n, args.alpha, args.beta, args.c, args.d, a, args.q)?;
                    *e = sup_distance(&r, &target, &grid);
                }
                record("big", n, "", errs);
            }
            LimitFamily::Little => {
                let grid = uniform_grid(9, 0.0, 1.0);
                let target = little_limit_target(n, args.alpha, args.beta, args.q)?;
                for (sign, name) in [(LimitSign::Upper, "+"), (LimitSign::Lower, "-")] {
                    let mut errs = [0.0; 3];
                    for (e, a) in errs.iter_mut().zip(a_values) {
                        let r = limit_little_scaled(n, args.alpha, args.beta, a, sign, args.q)?;
                        *e = sup_distance(&r, &target, &grid);
                    }
                    record("little", n, name, errs);
                }
            }
        }
    }
    Ok((t, if all { Outcome::Ok } else { Outcome::VerificationFailed }))
}

fn run_check_spherical(args: &CheckSpherical) -> Result<(Table, Outcome)> {
    let q = parse_exact(&args.q)?;
    let ns = list(&args.n, parse_usize)?;
    let ls = list(&args.l, parse_usize)?;
    let (ss, ts) = (list(&args.s, parse_exact)?, list(&args.t, parse_exact)?);
    let (s2s, t2s) = (list(&args.s2, parse_exact)?, list(&args.t2, parse_exact)?);
    let mut cases = Vec::new();
    for &n in &ns {
        for &l in &ls {
            for s in &ss {
                for t in &ts {
                    for s2 in &s2s {
                        for t2 in &t2s {
                            cases.push(VerificationCase {
                                n,
                                l,
                                s: s.clone(),
                                t: t.clone(),
                                s2: s2.clone(),
                                t2: t2.clone(),
                            });
                        }
                    }
                }
            }
        }
    }
    let reports = qaw_core::uqrep::run_campaign(&cases, &q);
    let mut t = Table::new(["n", "l", "s", "t", "s2", "t2", "residual_zero", "collapsed", "matched_AW"]);
    let mut all = true;
    for r in reports {
        let r = r?;
        all &= r.passed();
        let row = vec![
            r.n.to_string(),
            r.l.to_string(),
            r.s.clone(),
            r.t.clone(),
            r.s2.clone(),
            r.t2.clone(),
            r.residual_zero.to_string(),
            r.collapsed.to_string(),
            r.matched_aw.to_string(),
        ];
        t.push(serde_json::to_value(&r)?, row);
    }
    Ok((t, if all { Outcome::Ok } else { Outcome::VerificationFailed }))
}

fn run_check_qhc(args: &CheckQhc) -> Result<(Table, Outcome)> {
    let q = parse_exact(&args.q)?;
    let ctx = QContext::new(q)?;
    let left = CoidealSpec::new(parse_exact(&args.s)?, parse_exact(&args.t)?)?;
    let right = CoidealSpec::new(parse_exact(&args.s2)?, parse_exact(&args.t2)?)?;
    let samples = match &args.h {
        Some(h) => vec![list(h, |s| s.parse::<i64>().with_context(|| format!("not an integer: {s:?}")))?],
        None => default_h_samples(args.n),
    };
    let mut t = Table::new(["n", "l", "h", "residual", "residual_zero"]);
    let mut all = true;
    for h in &samples {
        let r = verify_qhc(args.n, args.l, &left, &right, h, &ctx)?;
        let zero = r.is_exactly_zero();
        all &= zero;
        let hs = h.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        t.push(
            json!({"n": args.n, "l": args.l, "h": h, "residual": r.to_string(), "residual_zero": zero}),
            vec![args.n.to_string(), args.l.to_string(), hs, r.to_string(), zero.to_string()],
        );
    }
    Ok((t, if all { Outcome::Ok } else { Outcome::VerificationFailed }))
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let (table, outcome) = match &cli.command {
        Command::EvalAw(a) => (
            match a.backend {
                Backend::Exact => run_eval_aw(a, parse_exact)?,
                Backend::Float => run_eval_aw(a, parse_float)?,
            },
            Outcome::Ok,
        ),
        Command::EvalBigq(a) => (
            match a.backend {
                Backend::Exact => run_eval_bigq(a, parse_exact)?,
                Backend::Float => run_eval_bigq(a, parse_float)?,
            },
            Outcome::Ok,
        ),
        Command::EvalLittleq(a) => (
            match a.backend {
                Backend::Exact => run_eval_littleq(a, parse_exact)?,
                Backend::Float => run_eval_littleq(a, parse_float)?,
            },
            Outcome::Ok,
        ),
        Command::Measure(a) => (run_measure(a, cli.format)?, Outcome::Ok),
        Command::CheckQdiff(a) => run_check_qdiff(a)?,
        Command::CheckOrth(a) => run_check_orth(a)?,
        Command::CheckLimit(a) => run_check_limit(a)?,
        Command::CheckSpherical(a) => run_check_spherical(a)?,
        Command::CheckQhc(a) => run_check_qhc(a)?,
    };
    let text = table.render(cli.format)?;
    match &cli.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
