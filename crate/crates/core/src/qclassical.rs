//! Askey-Wilson, big q-Jacobi and little q-Jacobi polynomials, and the scaled
//! Askey-Wilson evaluators whose limits give the q-Jacobi families.
//!
//! The primitive object is `R_n(z)`, the `4phi3` factor of the Askey-Wilson
//! polynomial written as a symmetric Laurent polynomial. The normalized
//! `p_n(x)` multiplies it by `a^{-n} (ab, ac, ad; q)_n`, which is singular at
//! `a = 0`; callers that need that case work with `R_n` directly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numfield::Field;
use crate::polyring::{LaurentPoly, XPoly};
use crate::qseries::{check_denominators, qpochhammer, qpochhammer_multi};

/// Askey-Wilson parameters `(a, b, c, d)` with base `q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AWParams<F> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
    pub q: F,
}

impl<F: Field> AWParams<F> {
    pub fn new(a: F, b: F, c: F, d: F, q: F) -> Self {
        Self { a, b, c, d, q }
    }

    pub fn abcd(&self) -> F {
        self.a.clone() * self.b.clone() * self.c.clone() * self.d.clone()
    }

    pub fn as_array(&self) -> [F; 4] {
        [self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone()]
    }

    /// Reorder `(a, b, c, d)` by the permutation `perm` (indices into the array).
    pub fn permuted(&self, perm: [usize; 4]) -> Self {
        let v = self.as_array();
        Self::new(
            v[perm[0]].clone(),
            v[perm[1]].clone(),
            v[perm[2]].clone(),
            v[perm[3]].clone(),
            self.q.clone(),
        )
    }

    pub fn to_f64(&self) -> AWParams<f64> {
        AWParams::new(
            self.a.to_float(),
            self.b.to_float(),
            self.c.to_float(),
            self.d.to_float(),
            self.q.to_float(),
        )
    }

    fn denominators(&self) -> [F; 3] {
        [
            self.a.clone() * self.b.clone(),
            self.a.clone() * self.c.clone(),
            self.a.clone() * self.d.clone(),
        ]
    }

    /// Coefficients `c_k` of `R_n = sum_k c_k (az, a/z; q)_k`.
    fn series_coefficients(&self, n: usize) -> Result<Vec<F>> {
        let q = &self.q;
        let dens = self.denominators();
        check_denominators(&dens, q, n)?;
        let top = [q.powi(-(n as i64)), q.powi(n as i64 - 1) * self.abcd()];
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut term = F::one();
        let mut qk = F::one();
        coeffs.push(term.clone());
        for _ in 0..n {
            let mut num = q.clone();
            for t in &top {
                num = num * (F::one() - t.clone() * qk.clone());
            }
            let mut den = F::one() - qk.clone() * q.clone();
            for b in &dens {
                den = den * (F::one() - b.clone() * qk.clone());
            }
            term = term * num / den;
            coeffs.push(term.clone());
            qk = qk * q.clone();
        }
        Ok(coeffs)
    }
}

/// `R_n(z)`: the `4phi3(q^-n, q^{n-1}abcd, az, a/z; ab, ac, ad; q, q)` factor as
/// a symmetric Laurent polynomial, with `(az, a/z; q)_k` expanded in `z`.
pub fn askey_wilson_rn<F: Field>(n: usize, p: &AWParams<F>) -> Result<LaurentPoly<F>> {
    let coeffs = p.series_coefficients(n)?;
    let mut out = LaurentPoly::zero();
    let mut pair = LaurentPoly::one();
    let mut aqj = p.a.clone();
    for (k, c) in coeffs.iter().enumerate() {
        out = &out + &pair.scale(c);
        if k < n {
            // (1 - a q^j z)(1 - a q^j / z) = (1 + a^2 q^{2j}) - a q^j (z + 1/z)
            let factor = LaurentPoly::from_terms([
                (0, F::one() + aqj.clone() * aqj.clone()),
                (1, -aqj.clone()),
                (-1, -aqj.clone()),
            ]);
            pair = &pair * &factor;
            aqj = aqj * p.q.clone();
        }
    }
    Ok(out)
}

/// `r_n(x)` built directly in the `x` variable via
/// `(az, a/z; q)_k = prod_j (1 - 2 a q^j x + a^2 q^{2j})`.
pub fn askey_wilson_rn_x<F: Field>(n: usize, p: &AWParams<F>) -> Result<XPoly<F>> {
    let coeffs = p.series_coefficients(n)?;
    let two = F::from_i64(2);
    let mut out = XPoly::zero();
    let mut pair = XPoly::constant(F::one());
    let mut aqj = p.a.clone();
    for (k, c) in coeffs.iter().enumerate() {
        out = &out + &pair.scale(c);
        if k < n {
            let factor = XPoly::from_coeffs(vec![
                F::one() + aqj.clone() * aqj.clone(),
                -(two.clone() * aqj.clone()),
            ]);
            pair = &pair * &factor;
            aqj = aqj * p.q.clone();
        }
    }
    Ok(out)
}

/// Evaluate `r_n` at a point `x` without building the polynomial.
pub fn eval_rn<F: Field>(n: usize, p: &AWParams<F>, x: &F) -> Result<F> {
    let coeffs = p.series_coefficients(n)?;
    let two = F::from_i64(2);
    let mut sum = F::zero();
    let mut pair = F::one();
    let mut aqj = p.a.clone();
    for (k, c) in coeffs.iter().enumerate() {
        sum = sum + c.clone() * pair.clone();
        if k < n {
            pair = pair
                * (F::one() - two.clone() * aqj.clone() * x.clone() + aqj.clone() * aqj.clone());
            aqj = aqj * p.q.clone();
        }
    }
    Ok(sum)
}

/// `p_n(x; a, b, c, d | q) = a^{-n} (ab, ac, ad; q)_n r_n(x)`.
pub fn askey_wilson_pn<F: Field>(n: usize, p: &AWParams<F>) -> Result<XPoly<F>> {
    if n > 0 && p.a.is_zero() {
        return Err(Error::Domain(
            "p_n has an a^-n prefactor; use askey_wilson_rn when a = 0".into(),
        ));
    }
    let rn = askey_wilson_rn(n, p)?.to_x_basis()?;
    let pref = p.a.powi(-(n as i64)) * qpochhammer_multi(&p.denominators(), &p.q, n);
    Ok(rn.scale(&pref))
}

/// Big q-Jacobi parameters; `alpha` and `beta` enter only as `q^alpha`, `q^beta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BigJacobiParams<F> {
    pub q_alpha: F,
    pub q_beta: F,
    pub c: F,
    pub d: F,
    pub q: F,
}

/// `P_n^{(alpha,beta)}(x; c, d : q) =
/// 3phi2(q^-n, q^{n+alpha+beta+1}, q^{alpha+1} x / c; q^{alpha+1}, -q^{alpha+1} d / c; q, q)`.
pub fn big_qjacobi<F: Field>(n: usize, p: &BigJacobiParams<F>) -> Result<XPoly<F>> {
    let q = &p.q;
    let qa1 = p.q_alpha.clone() * q.clone();
    let dens = [qa1.clone(), -(qa1.clone() * p.d.clone() / p.c.clone())];
    check_denominators(&dens, q, n)?;
    let top = [
        q.powi(-(n as i64)),
        q.powi(n as i64 + 1) * p.q_alpha.clone() * p.q_beta.clone(),
    ];
    let mut out = XPoly::constant(F::one());
    let mut term = XPoly::constant(F::one());
    let mut qk = F::one();
    for _ in 0..n {
        let mut scalar = q.clone();
        for t in &top {
            scalar = scalar * (F::one() - t.clone() * qk.clone());
        }
        let mut den = F::one() - qk.clone() * q.clone();
        for b in &dens {
            den = den * (F::one() - b.clone() * qk.clone());
        }
        // (q^{alpha+1} x / c; q) factor: 1 - q^{alpha+1+k} x / c
        let lin = XPoly::from_coeffs(vec![F::one(), -(qa1.clone() * qk.clone() / p.c.clone())]);
        term = (&term * &lin).scale(&(scalar / den));
        out = &out + &term;
        qk = qk * q.clone();
    }
    Ok(out)
}

/// Little q-Jacobi parameters, given as `q^alpha`, `q^beta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LittleJacobiParams<F> {
    pub q_alpha: F,
    pub q_beta: F,
    pub q: F,
}

/// `p_n^{(alpha,beta)}(x : q) = 2phi1(q^-n, q^{alpha+beta+n+1}; q^{alpha+1}; q; q x)`.
pub fn little_qjacobi<F: Field>(n: usize, p: &LittleJacobiParams<F>) -> Result<XPoly<F>> {
    let q = &p.q;
    let qa1 = p.q_alpha.clone() * q.clone();
    check_denominators(std::slice::from_ref(&qa1), q, n)?;
    let top = [
        q.powi(-(n as i64)),
        q.powi(n as i64 + 1) * p.q_alpha.clone() * p.q_beta.clone(),
    ];
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut term = F::one();
    let mut qk = F::one();
    coeffs.push(F::one());
    for _ in 0..n {
        let mut num = q.clone();
        for t in &top {
            num = num * (F::one() - t.clone() * qk.clone());
        }
        let den = (F::one() - qk.clone() * q.clone()) * (F::one() - qa1.clone() * qk.clone());
        term = term * num / den;
        coeffs.push(term.clone());
        qk = qk * q.clone();
    }
    Ok(XPoly::from_coeffs(coeffs))
}

/// Which of the paired sign choices in the little q-Jacobi limit to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LimitSign {
    Upper,
    Lower,
}

impl LimitSign {
    fn value(self) -> f64 {
        match self {
            LimitSign::Upper => 1.0,
            LimitSign::Lower => -1.0,
        }
    }
}

/// `n + 1` Chebyshev points of the first kind mapped to `[lo, hi]`.
pub fn chebyshev_nodes(count: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..count)
        .map(|k| {
            let t = (std::f64::consts::PI * (2 * k + 1) as f64 / (2 * count) as f64).cos();
            0.5 * (lo + hi) + 0.5 * (hi - lo) * t
        })
        .collect()
}

/// Interpolating polynomial through `(xs[i], ys[i])`, via Newton divided differences.
pub fn interpolate(xs: &[f64], ys: &[f64]) -> XPoly<f64> {
    assert_eq!(xs.len(), ys.len());
    let m = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..m {
        for i in (j..m).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
        }
    }
    let mut out = XPoly::constant(dd[m - 1]);
    for i in (0..m - 1).rev() {
        let shifted = XPoly::from_coeffs(vec![-xs[i], 1.0]);
        out = &(&out * &shifted) + &XPoly::constant(dd[i]);
    }
    out
}

/// Askey-Wilson parameters and argument scale of the big q-Jacobi limit, at
/// auxiliary parameter `a`. Returns `(params, s)` with the Askey-Wilson
/// argument equal to `s * x`.
pub fn big_limit_substitution(
    alpha: f64,
    beta: f64,
    c: f64,
    d: f64,
    a: f64,
    q: f64,
) -> (AWParams<f64>, f64) {
    let sq = q.sqrt();
    let dc = (d / c).sqrt();
    let cd = (c / d).sqrt();
    let params = AWParams::new(
        q.powf(alpha + 0.5) * a * dc,
        sq / a * cd,
        -sq / a * dc,
        -q.powf(beta + 0.5) * a * cd,
        q,
    );
    (params, sq / (2.0 * a * (c * d).sqrt()))
}

/// Scaled `r_n` approaching the big q-Jacobi polynomial `P_n^{(alpha,beta)}(x; c, d : q)` as `a -> 0`.
///
/// Returned as a polynomial in `x` by interpolating `n + 1` Chebyshev samples on `[-d, c]`.
pub fn limit_big_scaled(
    n: usize,
    alpha: f64,
    beta: f64,
    c: f64,
    d: f64,
    a: f64,
    q: f64,
) -> Result<XPoly<f64>> {
    let (params, scale) = big_limit_substitution(alpha, beta, c, d, a, q);
    let xs = chebyshev_nodes(n + 1, -d, c);
    let ys = xs
        .iter()
        .map(|x| eval_rn(n, &params, &(scale * x)))
        .collect::<Result<Vec<_>>>()?;
    Ok(interpolate(&xs, &ys))
}

/// Askey-Wilson parameters and argument scale of the little q-Jacobi limit.
///
/// The lower sign flips the sign of the argument together with the
/// parameters; with the argument left unflipped the lower-sign family tends
/// to the target evaluated at `-x`.
pub fn little_limit_substitution(
    alpha: f64,
    beta: f64,
    a: f64,
    sign: LimitSign,
    q: f64,
) -> (AWParams<f64>, f64) {
    let s = sign.value();
    let sq = q.sqrt();
    let a2 = a * a;
    let params = AWParams::new(
        s * q.powf(alpha + 0.5) * a2,
        s * sq / a2,
        -s * sq,
        -s * q.powf(beta + 0.5),
        q,
    );
    (params, s * sq / (2.0 * a2))
}

/// Scaled `r_n` approaching `(q^{beta+1};q)_n / (q^{-n-alpha};q)_n p_n^{(beta,alpha)}(x : q)`.
///
/// Interpolated from `n + 1` Chebyshev samples on `[0, 1]`.
pub fn limit_little_scaled(
    n: usize,
    alpha: f64,
    beta: f64,
    a: f64,
    sign: LimitSign,
    q: f64,
) -> Result<XPoly<f64>> {
    let (params, scale) = little_limit_substitution(alpha, beta, a, sign, q);
    let xs = chebyshev_nodes(n + 1, 0.0, 1.0);
    let ys = xs
        .iter()
        .map(|x| eval_rn(n, &params, &(scale * x)))
        .collect::<Result<Vec<_>>>()?;
    Ok(interpolate(&xs, &ys))
}

/// The limit target of [`limit_little_scaled`].
pub fn little_limit_target(n: usize, alpha: f64, beta: f64, q: f64) -> Result<XPoly<f64>> {
    let swapped = LittleJacobiParams {
        q_alpha: q.powf(beta),
        q_beta: q.powf(alpha),
        q,
    };
    let pref = qpochhammer(&q.powf(beta + 1.0), &q, n) / qpochhammer(&q.powf(-(n as f64) - alpha), &q, n);
    Ok(little_qjacobi(n, &swapped)?.scale(&pref))
}

/// The limit target of [`limit_big_scaled`].
pub fn big_limit_target(n: usize, alpha: f64, beta: f64, c: f64, d: f64, q: f64) -> Result<XPoly<f64>> {
    big_qjacobi(
        n,
        &BigJacobiParams {
            q_alpha: q.powf(alpha),
            q_beta: q.powf(beta),
            c,
            d,
            q,
        },
    )
}

/// Largest `|p(x) - r(x)|` over `grid`.
pub fn sup_distance(p: &XPoly<f64>, r: &XPoly<f64>, grid: &[f64]) -> f64 {
    grid.iter()
        .map(|&x| (p.eval_f64(x) - r.eval_f64(x)).abs())
        .fold(0.0, f64::max)
}

/// `count` equally spaced points on `[lo, hi]`.
pub fn uniform_grid(count: usize, lo: f64, hi: f64) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect()
}
