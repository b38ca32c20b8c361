//! q-shifted factorials and terminating basic hypergeometric series.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numfield::Field;

/// `(a;q)_n = (1-a)(1-aq)...(1-aq^{n-1})`; the empty product is 1.
pub fn qpochhammer<F: Field>(a: &F, q: &F, n: usize) -> F {
    let mut acc = F::one();
    let mut aqk = a.clone();
    for _ in 0..n {
        acc = acc * (F::one() - aqk.clone());
        aqk = aqk * q.clone();
    }
    acc
}

/// `(a_1,...,a_s;q)_n`.
pub fn qpochhammer_multi<F: Field>(bases: &[F], q: &F, n: usize) -> F {
    bases
        .iter()
        .fold(F::one(), |acc, a| acc * qpochhammer(a, q, n))
}

/// A truncated infinite product together with its multiplicative error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfiniteProduct<T> {
    pub value: T,
    /// Number of factors multiplied.
    pub factors: usize,
    /// The discarded tail `t` satisfies `|log t| <= rel_bound`.
    pub rel_bound: f64,
}

/// Number of factors kept for `(a;q)_inf`: the first `K` with `|a| q^K < tol (1-q)`.
pub fn truncation_point(abs_a: f64, q: f64, tol: f64) -> Result<usize> {
    if !(q.abs() < 1.0) {
        return Err(Error::Domain(format!("infinite product needs |q| < 1, got {q}")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let q = q.abs();
    let threshold = tol * (1.0 - q);
    let mut k = 0usize;
    let mut term = abs_a;
    while term >= threshold {
        term *= q;
        k += 1;
        if k > 1_000_000 {
            return Err(Error::Domain("infinite product truncation did not terminate".into()));
        }
    }
    Ok(k)
}

fn tail_bound(abs_a: f64, q: f64, k: usize) -> f64 {
    let head = abs_a * q.abs().powi(k as i32);
    if head >= 1.0 {
        return f64::INFINITY;
    }
    // sum_{j>=k} -log(1 - |a| q^j) <= (|a| q^k / (1-q)) / (1 - |a| q^k)
    head / (1.0 - q.abs()) / (1.0 - head)
}

/// `(a;q)_inf` with an explicit tail bound.
pub fn qpochhammer_inf_bounded(a: f64, q: f64, tol: f64) -> Result<InfiniteProduct<f64>> {
    let k = truncation_point(a.abs(), q, tol)?;
    Ok(InfiniteProduct {
        value: qpochhammer(&a, &q, k),
        factors: k,
        rel_bound: tail_bound(a.abs(), q, k),
    })
}

/// `(a;q)_inf` truncated at the first `K` with `|a| q^K < tol (1-q)`.
pub fn qpochhammer_inf(a: f64, q: f64, tol: f64) -> Result<f64> {
    qpochhammer_inf_bounded(a, q, tol).map(|p| p.value)
}

/// Complex-base variant, same truncation rule on `|a|`.
pub fn qpochhammer_inf_complex(a: Complex64, q: f64, tol: f64) -> Result<Complex64> {
    let k = truncation_point(a.norm(), q, tol)?;
    let mut acc = Complex64::new(1.0, 0.0);
    let mut aqk = a;
    for _ in 0..k {
        acc *= Complex64::new(1.0, 0.0) - aqk;
        aqk *= q;
    }
    Ok(acc)
}

/// Product of `(a_i;q)_inf` over complex bases.
pub fn qpochhammer_inf_multi_complex(bases: &[Complex64], q: f64, tol: f64) -> Result<Complex64> {
    bases.iter().try_fold(Complex64::new(1.0, 0.0), |acc, &a| {
        Ok(acc * qpochhammer_inf_complex(a, q, tol)?)
    })
}

/// Reject denominators in `{1, q^-1, ..., q^-(n-1)}`, which make a term of a
/// terminating series undefined.
pub fn check_denominators<F: Field>(denominators: &[F], q: &F, n: usize) -> Result<()> {
    for (index, b) in denominators.iter().enumerate() {
        let mut forbidden = F::one();
        for _ in 0..n {
            let hit = if F::EXACT {
                *b == forbidden
            } else {
                (b.to_float() - forbidden.to_float()).abs() < crate::numfield::FLOAT_TOL
            };
            if hit {
                return Err(Error::DenominatorCollision { index });
            }
            forbidden = forbidden / q.clone();
        }
    }
    Ok(())
}

/// Terminating `_{s+1}phi_s(q^-n, a_2..a_{s+1}; b_1..b_s; q, z)`.
///
/// `numerators[0]` must equal `q^-n`. Terms are summed upward from `k = 0`
/// using the term ratio.
pub fn phi_terminating<F: Field>(
    numerators: &[F],
    denominators: &[F],
    q: &F,
    z: &F,
    n: usize,
) -> Result<F> {
    if numerators.len() != denominators.len() + 1 {
        return Err(Error::Domain(format!(
            "expected {} numerator parameters for {} denominators, got {}",
            denominators.len() + 1,
            denominators.len(),
            numerators.len()
        )));
    }
    if !numerators[0].approx_eq(&q.powi(-(n as i64))) {
        return Err(Error::Domain("first numerator parameter must be q^-n".into()));
    }
    check_denominators(denominators, q, n)?;

    let mut term = F::one();
    let mut sum = F::one();
    let mut qk = F::one();
    for _ in 0..n {
        let mut num = z.clone();
        for a in numerators {
            num = num * (F::one() - a.clone() * qk.clone());
        }
        let mut den = F::one() - qk.clone() * q.clone();
        for b in denominators {
            den = den * (F::one() - b.clone() * qk.clone());
        }
        term = term * num / den;
        sum = sum + term.clone();
        qk = qk * q.clone();
    }
    Ok(sum)
}
