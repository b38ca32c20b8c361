//! Zonal spherical functions computed from the representation side, and the
//! exact check of the `q^h C` reduction formula.
//!
//! The matrix coefficient `a(u) = xi(u v)` of `V(l(e_1 - e_n))` is left
//! `k^sigma`-invariant when `v` is `k^sigma`-fixed and right
//! `k^tau`-invariant when the covector `xi` is killed by `k^tau`. The left
//! coideal therefore acts on the vector side and the right coideal on the
//! covector side. Restricted to the torus, `a(q^h) = sum_b xi_b v_b q^{<h, wt_b>}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numfield::{Field, QContext, Rational};
use crate::parallel::map_slice;
use crate::polyring::{first_minus_last, LaurentPoly, MultiLaurent, XPoly};
use crate::qclassical::askey_wilson_pn;
use crate::qdiffop::{coefficient_a, parameter_map, radial_constant, SigmaTauParams};

use super::coideal::{coideal_matrices, fixed_covectors, fixed_vectors, CoidealSpec};
use super::module::submodule_from_hw;
use super::{casimir_matrix, spherical_hw_vector, vvstar_power, GeneratorTable};

/// The spherical function of `V(l(e_1 - e_n))` restricted to the torus.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalFunction<F: Field> {
    /// `xi(q^h v)` before normalization, as a function of `z_i = q^{h_i}`.
    pub multivariate: MultiLaurent<F>,
    /// Monic in `x = (z + 1/z)/2` with `z = z_1 / z_n`.
    pub x_poly: XPoly<F>,
    pub laurent: LaurentPoly<F>,
    pub module_dim: usize,
    /// `v` has a nonzero component along the highest weight vector.
    pub hw_component_nonzero: bool,
}

struct Setup<F: Field> {
    table: GeneratorTable<F>,
    v: Vec<F>,
    xi: Vec<F>,
}

fn require_finite<F: Field>(spec: &CoidealSpec<F>, side: &str) -> Result<F> {
    spec.q_sigma().ok_or_else(|| {
        Error::UnsupportedParameter(format!("{side} coideal must have s, t > 0 for a finite parameter"))
    })
}

/// `(n, q^sigma, q^tau)` of the left and right coideals.
pub fn sigma_tau<F: Field>(n: usize, left: &CoidealSpec<F>, right: &CoidealSpec<F>, q: &F) -> Result<SigmaTauParams<F>> {
    SigmaTauParams::finite(n, require_finite(left, "left")?, require_finite(right, "right")?, q.clone())
}

fn setup<F: Field>(
    n: usize,
    l: usize,
    left: &CoidealSpec<F>,
    right: &CoidealSpec<F>,
    ctx: &QContext<F>,
) -> Result<Setup<F>> {
    require_finite(left, "left")?;
    require_finite(right, "right")?;
    let w = vvstar_power(n, l, ctx)?;
    let basis = submodule_from_hw(&w, &spherical_hw_vector(n, l))?;
    let table = basis.restricted_table(&w)?;
    let vs = fixed_vectors(&coideal_matrices(left, &table)?);
    let xis = fixed_covectors(&coideal_matrices(right, &table)?);
    if vs.len() != 1 || xis.len() != 1 {
        return Err(Error::Normalization(format!(
            "expected one-dimensional fixed spaces, found {} and {}",
            vs.len(),
            xis.len()
        )));
    }
    Ok(Setup {
        table,
        v: vs.into_iter().next().unwrap(),
        xi: xis.into_iter().next().unwrap(),
    })
}

impl<F: Field> Setup<F> {
    fn phi(&self) -> MultiLaurent<F> {
        let mut m = MultiLaurent::zero(self.table.n());
        for ((x, v), w) in self.xi.iter().zip(&self.v).zip(self.table.weights()) {
            m.add_term(w, x.clone() * v.clone());
        }
        m
    }
}

/// The `(sigma, tau)`-spherical function on `V(l(e_1 - e_n))`, with `sigma`
/// from the left coideal and `tau` from the right one.
pub fn spherical_restriction<F: Field>(
    n: usize,
    l: usize,
    left: &CoidealSpec<F>,
    right: &CoidealSpec<F>,
    ctx: &QContext<F>,
) -> Result<SphericalFunction<F>> {
    if n < 2 {
        return Err(Error::Domain(format!("rank n must be at least 2, got {n}")));
    }
    if l == 0 {
        require_finite(left, "left")?;
        require_finite(right, "right")?;
        let mut multivariate = MultiLaurent::zero(n);
        multivariate.add_term(&vec![0; n], F::one());
        return Ok(SphericalFunction {
            multivariate,
            x_poly: XPoly::constant(F::one()),
            laurent: LaurentPoly::one(),
            module_dim: 1,
            hw_component_nonzero: true,
        });
    }
    let s = setup(n, l, left, right, ctx)?;
    let multivariate = s.phi();
    let line = multivariate.collapse(&first_minus_last(n))?;
    let x_poly = line.to_x_basis()?.monic()?;
    if x_poly.degree() != Some(l) {
        return Err(Error::Normalization(format!(
            "restriction has degree {:?}, expected {l}",
            x_poly.degree()
        )));
    }
    Ok(SphericalFunction {
        laurent: LaurentPoly::from_x_basis(&x_poly),
        x_poly,
        multivariate,
        module_dim: s.table.dim(),
        // the first basis vector is the highest weight vector
        hw_component_nonzero: !s.v[0].is_zero(),
    })
}

/// Monic `p_l(x; parameter_map(sigma, tau) | q^2)`.
pub fn monic_aw_target<F: Field>(l: usize, st: &SigmaTauParams<F>) -> Result<XPoly<F>> {
    askey_wilson_pn(l, &parameter_map(st)?)?.monic()
}

/// `xi(q^h C v) - xi(RHS v)` where
/// `RHS = A(q^lambda;q^2)(q^{h+2e_1} - q^h) + A(q^-lambda;q^2)(q^{h-2e_1} - q^h) + (1-q^{2n})/(1-q^2) q^h`.
pub fn verify_qhc<F: Field>(
    n: usize,
    l: usize,
    left: &CoidealSpec<F>,
    right: &CoidealSpec<F>,
    h: &[i64],
    ctx: &QContext<F>,
) -> Result<F> {
    if h.len() != n {
        return Err(Error::Domain(format!("h has {} entries, expected {n}", h.len())));
    }
    let lambda = h[0] - h[n - 1];
    if (-1..=1).contains(&lambda) {
        return Err(Error::Domain(format!(
            "h is not generic: lambda = {lambda} makes a denominator of A vanish"
        )));
    }
    let st = sigma_tau(n, left, right, ctx.q())?;
    let p = parameter_map(&st)?;
    let (table, v, xi) = if l == 0 {
        (super::trivial_rep(n, ctx)?, vec![F::one()], vec![F::one()])
    } else {
        let s = setup(n, l, left, right, ctx)?;
        (s.table, s.v, s.xi)
    };
    let pair = |hh: &[i64], vec: &[F]| -> F {
        let d = table.q_h(hh).apply(vec);
        xi.iter().zip(d).fold(F::zero(), |acc, (a, b)| acc + a.clone() * b)
    };
    let cv = casimir_matrix(&table).apply(&v);
    let lhs = pair(h, &cv);
    let mut up = h.to_vec();
    up[0] += 2;
    let mut down = h.to_vec();
    down[0] -= 2;
    let base = pair(h, &v);
    let a_plus = coefficient_a(&ctx.q_power(lambda), &p)?;
    let a_minus = coefficient_a(&ctx.q_power(-lambda), &p)?;
    let rhs = a_plus * (pair(&up, &v) - base.clone())
        + a_minus * (pair(&down, &v) - base.clone())
        + radial_constant(n, ctx.q()) * base;
    Ok(lhs - rhs)
}

/// Three generic coweights with `lambda = 3, 2, -3`.
pub fn default_h_samples(n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![0; n];
    a[0] = 3;
    let mut b = vec![1; n];
    b[n - 1] = -1;
    let mut c = vec![0; n];
    c[0] = -1;
    c[n - 1] = 2;
    if n >= 3 {
        c[1] = 2;
    }
    vec![a, b, c]
}

mod rational_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::numfield::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// One `(n, l, left, right)` verification task over exact rationals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationCase {
    pub n: usize,
    pub l: usize,
    #[serde(with = "rational_string")]
    pub s: Rational,
    #[serde(with = "rational_string")]
    pub t: Rational,
    #[serde(with = "rational_string")]
    pub s2: Rational,
    #[serde(with = "rational_string")]
    pub t2: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n: usize,
    pub l: usize,
    pub s: String,
    pub t: String,
    pub s2: String,
    pub t2: String,
    pub residual_zero: bool,
    pub collapsed: bool,
    #[serde(rename = "matched_AW")]
    pub matched_aw: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.residual_zero && self.collapsed && self.matched_aw
    }
}

/// Run the spherical and `q^h C` checks for one case.
pub fn verify_case(case: &VerificationCase, q: &Rational, h_samples: &[Vec<i64>]) -> Result<VerificationReport> {
    let ctx = QContext::new(q.clone())?;
    let left = CoidealSpec::new(case.s.clone(), case.t.clone())?;
    let right = CoidealSpec::new(case.s2.clone(), case.t2.clone())?;
    let mut report = VerificationReport {
        n: case.n,
        l: case.l,
        s: case.s.to_string(),
        t: case.t.to_string(),
        s2: case.s2.to_string(),
        t2: case.t2.to_string(),
        residual_zero: false,
        collapsed: false,
        matched_aw: false,
        error: None,
    };
    match spherical_restriction(case.n, case.l, &left, &right, &ctx) {
        Ok(f) => {
            report.collapsed = true;
            let st = sigma_tau(case.n, &left, &right, q)?;
            report.matched_aw = f.x_poly == monic_aw_target(case.l, &st)?;
        }
        Err(e @ (Error::Collapse { .. } | Error::Normalization(_))) => report.error = Some(e.to_string()),
        Err(e) => return Err(e),
    }
    let mut all_zero = true;
    for h in h_samples {
        match verify_qhc(case.n, case.l, &left, &right, h, &ctx) {
            Ok(r) => all_zero &= r.is_exactly_zero(),
            Err(e @ Error::Normalization(_)) => {
                all_zero = false;
                report.error.get_or_insert(e.to_string());
            }
            Err(e) => return Err(e),
        }
    }
    report.residual_zero = all_zero;
    Ok(report)
}

/// Run independent cases on the worker pool; output order follows input order.
pub fn run_campaign(cases: &[VerificationCase], q: &Rational) -> Vec<Result<VerificationReport>> {
    map_slice(cases, |c| verify_case(c, q, &default_h_samples(c.n)))
}

/// Single-threaded [`run_campaign`].
pub fn run_campaign_sequential(cases: &[VerificationCase], q: &Rational) -> Vec<Result<VerificationReport>> {
    cases.iter().map(|c| verify_case(c, q, &default_h_samples(c.n))).collect()
}
