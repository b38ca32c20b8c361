//! The Askey-Wilson second-order q-difference operator, its radial-part
//! specialization for the `(sigma, tau)` spherical functions, and Casimir
//! eigenvalues.
//!
//! Operators act on Laurent polynomials. The coefficients `A(z;q)` are
//! rational in `z`; the operator is evaluated over a common denominator and
//! divided out exactly, and a nonzero remainder is reported as
//! [`Error::Consistency`] rather than silently dropped.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numfield::{Field, QContext};
use crate::polyring::LaurentPoly;
use crate::qclassical::AWParams;

/// `q^sigma` (or `q^tau`) for a finite parameter, or one of the two infinite ends.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SphereParam<F> {
    Finite(F),
    PlusInfinity,
    MinusInfinity,
}

impl<F: Field> SphereParam<F> {
    pub fn finite(&self) -> Option<&F> {
        match self {
            SphereParam::Finite(v) => Some(v),
            _ => None,
        }
    }
}

/// Rank `n` of `gl(n)` together with `q^sigma`, `q^tau` and `q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaTauParams<F> {
    pub n: usize,
    pub sigma: SphereParam<F>,
    pub tau: SphereParam<F>,
    pub q: F,
}

impl<F: Field> SigmaTauParams<F> {
    /// Finite `sigma`, `tau` given as `q^sigma`, `q^tau` (both positive).
    pub fn finite(n: usize, q_sigma: F, q_tau: F, q: F) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("rank n must be at least 2, got {n}")));
        }
        if !(q_sigma.to_float() > 0.0 && q_tau.to_float() > 0.0) {
            return Err(Error::Domain("q^sigma and q^tau must be positive".into()));
        }
        QContext::new(q.clone())?;
        Ok(Self {
            n,
            sigma: SphereParam::Finite(q_sigma),
            tau: SphereParam::Finite(q_tau),
            q,
        })
    }

    fn finite_pair(&self) -> Result<(F, F)> {
        match (self.sigma.finite(), self.tau.finite()) {
            (Some(s), Some(t)) => Ok((s.clone(), t.clone())),
            _ => Err(Error::UnsupportedParameter(
                "radial part is only defined for finite sigma and tau".into(),
            )),
        }
    }
}

/// A weight `lambda = sum_k lambda_k e_k` of `U(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    /// `l (e_1 - e_n)`.
    pub fn spherical(n: usize, l: i64) -> Self {
        let mut w = vec![0; n];
        w[0] += l;
        w[n - 1] -= l;
        Weight(w)
    }

    /// `rho = sum_k (n - k) e_k`.
    pub fn rho(n: usize) -> Self {
        Weight((1..=n).map(|k| (n - k) as i64).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn pair(&self, h: &[i64]) -> i64 {
        self.0.iter().zip(h).map(|(a, b)| a * b).sum()
    }
}

/// `A(z;q) = (1-az)(1-bz)(1-cz)(1-dz) / ((1-z^2)(1-q z^2))` with `q = p.q`.
pub fn coefficient_a<F: Field>(z: &F, p: &AWParams<F>) -> Result<F> {
    let one = F::one();
    let z2 = z.clone() * z.clone();
    let den = (one.clone() - z2.clone()) * (one.clone() - p.q.clone() * z2);
    if den.is_zero() {
        return Err(Error::Singularity(format!(
            "A(z;q) denominator vanishes at z = {}",
            z.to_float()
        )));
    }
    let num = p
        .as_array()
        .iter()
        .fold(one.clone(), |acc, e| acc * (one.clone() - e.clone() * z.clone()));
    Ok(num / den)
}

fn linear_factor<F: Field>(e: &F) -> LaurentPoly<F> {
    LaurentPoly::from_terms([(0, F::one()), (1, -e.clone())])
}

/// `A(z;q)(R(qz) - R(z)) + A(1/z;q)(R(z/q) - R(z))` for symmetric `R`.
pub fn apply_aw_operator<F: Field>(r: &LaurentPoly<F>, p: &AWParams<F>) -> Result<LaurentPoly<F>> {
    if !r.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let q = &p.q;
    let numer_plus = p
        .as_array()
        .iter()
        .fold(LaurentPoly::one(), |acc, e| &acc * &linear_factor(e));
    let numer_minus = numer_plus.invert_z();
    // (1 - z^2)(1 - q z^2) and its image under z -> 1/z.
    let den_plus = &LaurentPoly::from_terms([(0, F::one()), (2, -F::one())])
        * &LaurentPoly::from_terms([(0, F::one()), (2, -q.clone())]);
    let den_minus = den_plus.invert_z();

    let up = &r.q_shift(q, 1) - r;
    let down = &r.q_shift(q, -1) - r;
    let numerator = &(&(&numer_plus * &up) * &den_minus) + &(&(&numer_minus * &down) * &den_plus);
    let denominator = &den_plus * &den_minus;
    let (quot, rem) = numerator.div_rem(&denominator)?;
    check_remainder(&rem, &numerator)?;
    Ok(if F::EXACT { quot } else { quot.chop(0.0) })
}

fn check_remainder<F: Field>(rem: &LaurentPoly<F>, numerator: &LaurentPoly<F>) -> Result<()> {
    let max_remainder = rem.max_abs_coeff();
    let ok = if F::EXACT {
        rem.is_zero()
    } else {
        max_remainder <= 1e-9 * numerator.max_abs_coeff().max(1.0)
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Consistency { max_remainder })
    }
}

/// Eigenvalue of the Askey-Wilson operator on `R_n`: `-(1 - q^-n)(1 - q^{n-1} abcd)`.
pub fn aw_eigenvalue<F: Field>(n: usize, p: &AWParams<F>) -> F {
    let one = F::one();
    let n = n as i64;
    -((one.clone() - p.q.powi(-n)) * (one - p.q.powi(n - 1) * p.abcd()))
}

/// Askey-Wilson parameters of the radial part, with base `q^2`:
/// `(-q^{s+t+1}, -q^{-s-t+1}, q^{s-t+1}, q^{-s+t+2(n-2)+1})`.
pub fn parameter_map<F: Field>(st: &SigmaTauParams<F>) -> Result<AWParams<F>> {
    let (qs, qt) = st.finite_pair()?;
    let q = &st.q;
    let n = st.n as i64;
    Ok(AWParams::new(
        -(qs.clone() * qt.clone() * q.clone()),
        -(q.clone() / (qs.clone() * qt.clone())),
        qs.clone() * q.clone() / qt.clone(),
        qt * q.powi(2 * (n - 2) + 1) / qs,
        q.clone() * q.clone(),
    ))
}

/// `(1 - q^{2n}) / (1 - q^2)`.
pub fn radial_constant<F: Field>(n: usize, q: &F) -> F {
    let q2 = q.clone() * q.clone();
    (F::one() - q2.powi(n as i64)) / (F::one() - q2)
}

/// The radial part of the Casimir operator:
/// `A(z;q^2)(T_{q^2} - id) + A(1/z;q^2)(T_{q^-2} - id) + (1-q^{2n})/(1-q^2)`.
pub fn apply_radial_operator<F: Field>(
    r: &LaurentPoly<F>,
    st: &SigmaTauParams<F>,
) -> Result<LaurentPoly<F>> {
    let p = parameter_map(st)?;
    let shifted = apply_aw_operator(r, &p)?;
    Ok(&shifted + &r.scale(&radial_constant(st.n, &st.q)))
}

/// `chi_lambda(C) = sum_k q^{2(lambda_k + n - k)}`.
pub fn casimir_eigenvalue<F: Field>(lambda: &Weight, ctx: &QContext<F>) -> F {
    let n = lambda.rank() as i64;
    lambda
        .0
        .iter()
        .enumerate()
        .fold(F::zero(), |acc, (k, lk)| {
            acc + ctx.q_power(2 * (lk + n - (k as i64 + 1)))
        })
}

/// `chi_l = q^{2(l+n-1)} + q^{-2l} + (q^2 - q^{2n-2}) / (1 - q^2)`.
pub fn chi_l<F: Field>(l: i64, n: usize, ctx: &QContext<F>) -> F {
    let n = n as i64;
    let q2 = ctx.q_power(2);
    ctx.q_power(2 * (l + n - 1))
        + ctx.q_power(-2 * l)
        + (q2.clone() - ctx.q_power(2 * n - 2)) / (F::one() - q2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use crate::numfield::{rat, Rational};
    use crate::polyring::XPoly;
    use crate::qclassical::askey_wilson_rn;

    fn params() -> AWParams<Rational> {
        AWParams::new(rat(1, 3), rat(-2, 5), rat(3, 7), rat(1, 11), rat(1, 2))
    }

    #[test]
    fn coefficient_a_examples() {
        let q = rat(1, 3);
        let zero = rat(0, 1);
        let p = AWParams::new(zero.clone(), zero.clone(), zero.clone(), zero, q.clone());
        let z = rat(2, 1);
        let expected = rat(1, 1) / ((rat(1, 1) - rat(4, 1)) * (rat(1, 1) - rat(4, 1) * q));
        assert_eq!(coefficient_a(&z, &p).unwrap(), expected);

        let mut p = params();
        p.a = rat(5, 2);
        assert_eq!(coefficient_a(&rat(2, 5), &p).unwrap(), rat(0, 1));

        // direct substitution oracle
        let p = params();
        let z = rat(3, 4);
        let one = rat(1, 1);
        let num = (one.clone() - p.a.clone() * z.clone())
            * (one.clone() - p.b.clone() * z.clone())
            * (one.clone() - p.c.clone() * z.clone())
            * (one.clone() - p.d.clone() * z.clone());
        let den = (one.clone() - z.clone() * z.clone()) * (one - p.q.clone() * z.clone() * z.clone());
        assert_eq!(coefficient_a(&z, &p).unwrap(), num / den);
    }

    #[test]
    fn coefficient_a_singular() {
        assert!(matches!(
            coefficient_a(&rat(1, 1), &params()),
            Err(Error::Singularity(_))
        ));
        // z^2 = 1/q
        let p = AWParams::new(rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 4));
        assert!(coefficient_a(&rat(2, 1), &p).is_err());
    }

    #[test]
    fn operator_kills_constants() {
        assert!(apply_aw_operator(&LaurentPoly::one(), &params()).unwrap().is_zero());
    }

    #[test]
    fn operator_eigen_relation_low_degree() {
        let p = params();
        for n in 1..=3 {
            let r = askey_wilson_rn(n, &p).unwrap();
            let lhs = apply_aw_operator(&r, &p).unwrap();
            assert_eq!(lhs, r.scale(&aw_eigenvalue(n, &p)), "n = {n}");
        }
    }

    #[test]
    fn operator_eigen_relation_float() {
        let p = params().to_f64();
        let r = askey_wilson_rn(4, &p).unwrap();
        let lhs = apply_aw_operator(&r, &p).unwrap();
        let rhs = r.scale(&aw_eigenvalue(4, &p));
        assert!((&lhs - &rhs).max_abs_coeff() < 1e-10);
    }

    #[test]
    fn operator_rejects_asymmetric_input() {
        let z = LaurentPoly::monomial(rat(1, 1), 1);
        assert_eq!(apply_aw_operator(&z, &params()).unwrap_err(), Error::NotSymmetric);
    }

    #[test]
    fn operator_does_not_raise_degree() {
        let p = params();
        for d in 0..=5usize {
            let mut c = vec![rat(0, 1); d + 1];
            c[d] = rat(1, 1);
            let r = LaurentPoly::from_x_basis(&XPoly::from_coeffs(c));
            let out = apply_aw_operator(&r, &p).unwrap();
            let deg = out.to_x_basis().unwrap().degree().unwrap_or(0);
            assert!(deg <= d);
        }
    }

    #[test]
    fn solutions_of_eigen_equation_are_unique() {
        // Build the operator matrix on x^0..x^n and check that
        // (D - eigenvalue) has a one-dimensional kernel spanned by R_n.
        let p = params();
        for n in 0..=5usize {
            let ev = aw_eigenvalue(n, &p);
            let columns: Vec<XPoly<Rational>> = (0..=n)
                .map(|k| {
                    let mut c = vec![rat(0, 1); k + 1];
                    c[k] = rat(1, 1);
                    let r = LaurentPoly::from_x_basis(&XPoly::from_coeffs(c));
                    let out = &apply_aw_operator(&r, &p).unwrap() - &r.scale(&ev);
                    out.to_x_basis().unwrap()
                })
                .collect();
            let rows: Vec<Vec<Rational>> = (0..=n)
                .map(|i| columns.iter().map(|col| col.coeff(i)).collect())
                .collect();
            let ker = linalg::kernel(&rows, n + 1);
            assert_eq!(ker.len(), 1, "n = {n}");
            let rn = askey_wilson_rn(n, &p).unwrap().to_x_basis().unwrap();
            let v = XPoly::from_coeffs(ker[0].clone());
            let ratio = rn.leading().unwrap().clone() / v.leading().unwrap().clone();
            assert_eq!(v.scale(&ratio), rn);
        }
    }

    #[test]
    fn parameter_map_examples() {
        let q = rat(1, 2);
        let st = SigmaTauParams::finite(2, rat(1, 1), rat(1, 1), q.clone()).unwrap();
        let p = parameter_map(&st).unwrap();
        assert_eq!(p, AWParams::new(-q.clone(), -q.clone(), q.clone(), q.clone(), rat(1, 4)));

        // sigma = 1, tau = 0, n = 3: q^sigma = q.
        let st = SigmaTauParams::finite(3, q.clone(), rat(1, 1), q.clone()).unwrap();
        let p = parameter_map(&st).unwrap();
        let q2 = q.clone() * q.clone();
        assert_eq!(p, AWParams::new(-q2.clone(), rat(-1, 1), q2.clone(), q2.clone(), q2));

        for (s, t) in [(rat(2, 1), rat(1, 3)), (rat(5, 7), rat(3, 1))] {
            for n in 2..=5 {
                let st = SigmaTauParams::finite(n, s.clone(), t.clone(), q.clone()).unwrap();
                assert_eq!(parameter_map(&st).unwrap().abcd(), q.powi(2 * n as i64));
            }
        }
    }

    #[test]
    fn infinite_parameters_are_refused() {
        let st = SigmaTauParams {
            n: 2,
            sigma: SphereParam::Finite(rat(1, 1)),
            tau: SphereParam::PlusInfinity,
            q: rat(1, 2),
        };
        assert!(matches!(parameter_map(&st), Err(Error::UnsupportedParameter(_))));
        assert!(apply_radial_operator(&LaurentPoly::one(), &st).is_err());
    }

    #[test]
    fn radial_operator_on_constants() {
        let q = rat(1, 2);
        let st = SigmaTauParams::finite(2, rat(1, 1), rat(1, 1), q.clone()).unwrap();
        let out = apply_radial_operator(&LaurentPoly::one(), &st).unwrap();
        assert_eq!(out, LaurentPoly::constant(rat(5, 4)));
        assert_eq!(out, LaurentPoly::constant(radial_constant(2, &q)));
    }

    #[test]
    fn radial_operator_eigenvalue_chi_l() {
        let q = rat(2, 3);
        let ctx = QContext::new(q.clone()).unwrap();
        for n in 2..=3 {
            let st = SigmaTauParams::finite(n, rat(2, 1), rat(1, 2), q.clone()).unwrap();
            let p = parameter_map(&st).unwrap();
            for l in 0..=3 {
                let r = askey_wilson_rn(l, &p).unwrap();
                let out = apply_radial_operator(&r, &st).unwrap();
                assert_eq!(out, r.scale(&chi_l(l as i64, n, &ctx)));
            }
        }
    }

    #[test]
    fn radial_operator_commutes_with_inversion() {
        let q = rat(1, 2);
        let st = SigmaTauParams::finite(3, rat(1, 2), rat(2, 1), q).unwrap();
        let r = LaurentPoly::from_terms([(2, rat(3, 1)), (0, rat(1, 5)), (-2, rat(3, 1)), (1, rat(-1, 1)), (-1, rat(-1, 1))]);
        let out = apply_radial_operator(&r, &st).unwrap();
        assert_eq!(apply_radial_operator(&r.invert_z(), &st).unwrap(), out.invert_z());
        assert!(out.is_symmetric());
    }

    #[test]
    fn casimir_examples() {
        let ctx = QContext::new(rat(1, 2)).unwrap();
        for n in 2..=4 {
            let expected = radial_constant(n, &rat(1, 2));
            assert_eq!(casimir_eigenvalue(&Weight::zero(n), &ctx), expected);
        }
        assert_eq!(chi_l(1, 2, &ctx), rat(65, 16));
        for n in 2..=4 {
            for l in 0..=6 {
                assert_eq!(
                    chi_l(l, n, &ctx),
                    casimir_eigenvalue(&Weight::spherical(n, l), &ctx)
                );
            }
        }
    }

    #[test]
    fn eigenvalue_consistency() {
        for q in [rat(1, 2), rat(2, 3), rat(3, 10)] {
            let ctx = QContext::new(q.clone()).unwrap();
            for n in 2..=4usize {
                for l in 0..=6i64 {
                    let q2 = q.clone() * q.clone();
                    let lhs = -((rat(1, 1) - q2.powi(-l)) * (rat(1, 1) - q2.powi(l - 1) * q.powi(2 * n as i64)))
                        + radial_constant(n, &q);
                    assert_eq!(lhs, chi_l(l, n, &ctx));
                }
            }
        }
    }

    #[test]
    fn weights() {
        assert!(Weight(vec![2, 0, -1]).is_dominant());
        assert!(!Weight(vec![0, 1, 0]).is_dominant());
        assert_eq!(Weight::rho(3), Weight(vec![2, 1, 0]));
        assert_eq!(Weight::spherical(3, 2), Weight(vec![2, 0, -2]));
    }
}
