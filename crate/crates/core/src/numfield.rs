//! Arithmetic backends.
//!
//! Generic code is written against [`Field`], which is implemented for exact
//! rationals ([`Rational`]) and for `f64`. Choosing the backend at the type
//! level makes mixing impossible inside generic code; the dynamically tagged
//! [`Scalar`] covers callers (the CLI, JSON input) that choose at runtime and
//! rejects mixed operands with [`Error::BackendMismatch`].

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Float comparisons in the float backend use this absolute/relative tolerance.
pub const FLOAT_TOL: f64 = 1e-12;

pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True for exact backends, where `is_zero` is decidable.
    const EXACT: bool;
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn to_float(&self) -> f64;
    /// Exact zero test, or `|x| < FLOAT_TOL` for floats.
    fn is_zero(&self) -> bool;
    /// Structural zero: only exact `0` (used to prune stored coefficients).
    fn is_exactly_zero(&self) -> bool;

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }

    fn powi(&self, k: i64) -> Self {
        let mut base = if k < 0 { self.recip() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    /// Magnitude used for tolerance scaling.
    fn magnitude(&self) -> f64 {
        self.to_float().abs()
    }

    /// Equality in the backend's sense: bitwise for exact, relative 1e-12 for floats.
    fn approx_eq(&self, other: &Self) -> bool {
        if Self::EXACT {
            self == other
        } else {
            let (a, b) = (self.to_float(), other.to_float());
            (a - b).abs() <= FLOAT_TOL * (1.0 + a.abs().max(b.abs()))
        }
    }
}

impl Field for Rational {
    const EXACT: bool = true;
    const NAME: &'static str = "exact";

    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn to_float(&self) -> f64 {
        rational_to_f64(self)
    }
    fn is_zero(&self) -> bool {
        <BigRational as Zero>::is_zero(self)
    }
    fn is_exactly_zero(&self) -> bool {
        <BigRational as Zero>::is_zero(self)
    }
    fn recip(&self) -> Self {
        BigRational::recip(self)
    }
}

impl Field for f64 {
    const EXACT: bool = false;
    const NAME: &'static str = "float";

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn to_float(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        self.abs() < FLOAT_TOL
    }
    fn is_exactly_zero(&self) -> bool {
        *self == 0.0
    }
    fn powi(&self, k: i64) -> Self {
        f64::powi(*self, k as i32)
    }
}

/// Nearest-float conversion of an exact rational.
///
/// `BigRational::to_f64` rounds correctly for moderate sizes; for huge
/// numerators and denominators it can return NaN, so fall back to a scaled
/// quotient in that case.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let Some(v) = ToPrimitive::to_f64(r) {
        if v.is_finite() {
            return v;
        }
    }
    let (n, d) = (r.numer(), r.denom());
    let shift = n.bits() as i64 - d.bits() as i64;
    let scaled = if shift > 0 {
        BigRational::new(n.clone(), d.clone() << (shift as usize))
    } else {
        BigRational::new(n.clone() << ((-shift) as usize), d.clone())
    };
    ToPrimitive::to_f64(&scaled).unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}

/// Build a rational from integer numerator and denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"p/q"`, `"p"`, or a terminating decimal such as `"0.25"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational literal: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if s.contains(['e', 'E']) || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let n = BigInt::from_str(if digits.is_empty() { "0" } else { &digits })
            .map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let v = BigRational::new(n, d);
        return Ok(if neg { -v } else { v });
    }
    BigInt::from_str(s)
        .map(BigRational::from_integer)
        .map_err(|_| bad())
}

/// The deformation parameter together with its backend.
#[derive(Debug, Clone, PartialEq)]
pub struct QContext<F: Field> {
    q: F,
}

impl<F: Field> QContext<F> {
    /// Requires `0 < q < 1`.
    pub fn new(q: F) -> Result<Self> {
        let v = q.to_float();
        if !(v > 0.0 && v < 1.0) || q.is_zero() || q == F::one() {
            return Err(Error::Domain(format!("q must lie in (0,1), got {v}")));
        }
        Ok(Self { q })
    }

    pub fn q(&self) -> &F {
        &self.q
    }

    /// `q^k` for any signed `k`.
    pub fn q_power(&self, k: i64) -> F {
        self.q.powi(k)
    }

    /// Context for base `q^2`.
    pub fn squared(&self) -> Self {
        Self {
            q: self.q.clone() * self.q.clone(),
        }
    }
}

/// Runtime-tagged scalar for callers that select the backend dynamically.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Float(f64),
}

impl Scalar {
    pub fn backend(&self) -> &'static str {
        match self {
            Scalar::Exact(_) => Rational::NAME,
            Scalar::Float(_) => f64::NAME,
        }
    }

    pub fn to_float(&self) -> f64 {
        match self {
            Scalar::Exact(r) => rational_to_f64(r),
            Scalar::Float(x) => *x,
        }
    }

    fn binary(
        &self,
        other: &Scalar,
        exact: impl FnOnce(&Rational, &Rational) -> Rational,
        float: impl FnOnce(f64, f64) -> f64,
    ) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(exact(a, b))),
            (Scalar::Float(a), Scalar::Float(b)) => Ok(Scalar::Float(float(*a, *b))),
            _ => Err(Error::BackendMismatch {
                left: self.backend(),
                right: other.backend(),
            }),
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.binary(other, |a, b| a + b, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.binary(other, |a, b| a - b, |a, b| a - b)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.binary(other, |a, b| a * b, |a, b| a * b)
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        match other {
            Scalar::Exact(b) if Zero::is_zero(b) => {
                return Err(Error::Domain("division by exact zero".into()))
            }
            _ => {}
        }
        self.binary(other, |a, b| a / b, |a, b| a / b)
    }
}

impl Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Float(x) => write!(f, "{x}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_power_examples() {
        let ctx = QContext::new(rat(1, 2)).unwrap();
        assert_eq!(ctx.q_power(0), rat(1, 1));
        assert_eq!(ctx.q_power(2), rat(1, 4));
        assert_eq!(ctx.q_power(-2), rat(4, 1));
    }

    #[test]
    fn q_power_inverse_pairs_exact() {
        let ctx = QContext::new(rat(3, 7)).unwrap();
        for k in -9..=9 {
            assert_eq!(ctx.q_power(k) * ctx.q_power(-k), rat(1, 1));
        }
    }

    #[test]
    fn to_float_examples() {
        assert!((Scalar::Exact(rat(1, 3)).to_float() - 1.0 / 3.0).abs() < 1e-16);
        assert_eq!(Scalar::Float(0.5).to_float(), 0.5);
        assert_eq!(Scalar::Exact(rat(65, 16)).to_float(), 4.0625);
    }

    #[test]
    fn huge_rationals_convert() {
        let big = Rational::from_i64(3).powi(900) / Rational::from_i64(2).powi(1400);
        let expected = 900.0 * 3f64.log2() - 1400.0;
        assert!((rational_to_f64(&big).log2() - expected).abs() < 1e-9);
    }

    #[test]
    fn mixing_backends_is_an_error() {
        let a = Scalar::Exact(rat(1, 2));
        let b = Scalar::Float(0.5);
        assert!(matches!(a.try_add(&b), Err(Error::BackendMismatch { .. })));
        assert!(matches!(b.try_mul(&a), Err(Error::BackendMismatch { .. })));
        assert_eq!(
            a.try_mul(&Scalar::Exact(rat(2, 3))).unwrap(),
            Scalar::Exact(rat(1, 3))
        );
    }

    #[test]
    fn qcontext_rejects_out_of_range() {
        assert!(QContext::new(rat(1, 1)).is_err());
        assert!(QContext::new(rat(0, 1)).is_err());
        assert!(QContext::new(rat(3, 2)).is_err());
        assert!(QContext::new(-0.5f64).is_err());
        assert!(QContext::new(0.5f64).is_ok());
    }

    #[test]
    fn parse_literals() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert!(parse_rational("1e-3").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("pi").is_err());
    }

    #[test]
    fn lowest_terms_positive_denominator() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    proptest::proptest! {
        #[test]
        fn float_image_of_product_within_4ulp(
            a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000
        ) {
            let s = rat(a, b);
            let t = rat(c, d);
            let exact = (s.clone() * t.clone()).to_float();
            let approx = s.to_float() * t.to_float();
            let ulp = f64::EPSILON * exact.abs().max(f64::MIN_POSITIVE);
            proptest::prop_assert!((exact - approx).abs() <= 4.0 * ulp);
        }
    }
}
