//! Laurent polynomials in `z`, polynomials in `x = (z + 1/z)/2`, and sparse
//! multivariate Laurent polynomials on the torus.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::numfield::Field;

/// Laurent polynomial in one variable `z`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPoly<F: Field> {
    coeffs: BTreeMap<i64, F>,
}

impl<F: Field> Default for LaurentPoly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> LaurentPoly<F> {
    pub fn zero() -> Self {
        Self {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(c, 0)
    }

    /// `c z^e`.
    pub fn monomial(c: F, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    /// `z + z^-1`.
    pub fn z_plus_inverse() -> Self {
        Self::from_terms([(1, F::one()), (-1, F::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, F)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: F) {
        if c.is_exactly_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(F::zero);
        *slot = slot.clone() + c;
        if slot.is_exactly_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeff(&self, e: i64) -> F {
        self.coeffs.get(&e).cloned().unwrap_or_else(F::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &F)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c.clone() * s.clone())))
    }

    /// `T_{q^k, z}`: `f(z) -> f(q^k z)`, i.e. the coefficient of `z^m` is multiplied by `q^{km}`.
    pub fn q_shift(&self, q: &F, k: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c.clone() * q.powi(k * e))))
    }

    /// `f(z) -> f(1/z)`.
    pub fn invert_z(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (-e, c.clone())))
    }

    /// Invariance under `z -> 1/z`: exact in the exact backend, coefficientwise
    /// within tolerance in the float backend.
    pub fn is_symmetric(&self) -> bool {
        let inv = self.invert_z();
        let exps: std::collections::BTreeSet<i64> =
            self.coeffs.keys().chain(inv.coeffs.keys()).copied().collect();
        exps.into_iter()
            .all(|e| self.coeff(e).approx_eq(&inv.coeff(e)))
    }

    pub fn eval(&self, z: &F) -> F {
        self.terms()
            .fold(F::zero(), |acc, (e, c)| acc + c.clone() * z.powi(e))
    }

    /// Largest coefficient magnitude (0 for the zero polynomial).
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.values().map(F::magnitude).fold(0.0, f64::max)
    }

    /// Drop float coefficients below `tol` (no-op on exact inputs, whose zeros are never stored).
    pub fn chop(&self, tol: f64) -> Self {
        Self::from_terms(
            self.terms()
                .filter(|(_, c)| c.magnitude() > tol)
                .map(|(e, c)| (e, c.clone())),
        )
    }

    /// Division by a nonzero Laurent polynomial, returning `(quotient, remainder)`.
    ///
    /// Both operands are shifted to ordinary polynomials with nonzero constant
    /// term and divided from the top degree down.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let (dmin, dmax) = match (d.min_exponent(), d.max_exponent()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::Domain("division by the zero Laurent polynomial".into())),
        };
        let Some(nmin) = self.min_exponent() else {
            return Ok((Self::zero(), Self::zero()));
        };
        let nmax = self.max_exponent().unwrap();
        let mut rem: Vec<F> = (nmin..=nmax).map(|e| self.coeff(e)).collect();
        let den: Vec<F> = (dmin..=dmax).map(|e| d.coeff(e)).collect();
        let dd = den.len() - 1;
        let lead = den[dd].clone();
        let mut quot = Self::zero();
        if rem.len() > dd {
            for top in (dd..rem.len()).rev() {
                let c = rem[top].clone() / lead.clone();
                if c.is_exactly_zero() {
                    continue;
                }
                let shift = top - dd;
                for (i, di) in den.iter().enumerate() {
                    rem[shift + i] = rem[shift + i].clone() - c.clone() * di.clone();
                }
                rem[top] = F::zero();
                quot.add_term(shift as i64 + nmin - dmin, c);
            }
        }
        let remainder = Self::from_terms(
            rem.into_iter()
                .enumerate()
                .map(|(i, c)| (i as i64 + nmin, c)),
        );
        Ok((quot, remainder))
    }

    /// Express a symmetric Laurent polynomial in the basis of powers of `x`.
    ///
    /// Uses `z^j + z^-j = 2x (z^{j-1} + z^{-(j-1)}) - (z^{j-2} + z^{-(j-2)})`.
    pub fn to_x_basis(&self) -> Result<XPoly<F>> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let deg = self.max_exponent().unwrap_or(0).max(0);
        let two = F::from_i64(2);
        // cheb[j] = z^j + z^-j as a polynomial in x, with cheb[0] = 2.
        let mut prev = XPoly::constant(two.clone());
        let mut cur = XPoly::from_coeffs(vec![F::zero(), two.clone()]);
        let mut out = XPoly::constant(self.coeff(0));
        for j in 1..=deg {
            if j > 1 {
                let next = &cur.mul_x().scale(&two) - &prev;
                prev = cur;
                cur = next;
            }
            let c = self.coeff(j);
            if !c.is_exactly_zero() {
                out = &out + &cur.scale(&c);
            }
        }
        Ok(out)
    }

    pub fn from_x_basis(p: &XPoly<F>) -> Self {
        let x = Self::z_plus_inverse().scale(&(F::one() / F::from_i64(2)));
        p.coeffs()
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * &x) + &Self::constant(c.clone()))
    }
}

impl<F: Field> Add for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn add(self, rhs: &LaurentPoly<F>) -> LaurentPoly<F> {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl<F: Field> Sub for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn sub(self, rhs: &LaurentPoly<F>) -> LaurentPoly<F> {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl<F: Field> Mul for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn mul(self, rhs: &LaurentPoly<F>) -> LaurentPoly<F> {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<F: Field> Neg for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn neg(self) -> LaurentPoly<F> {
        LaurentPoly::from_terms(self.terms().map(|(e, c)| (e, -c.clone())))
    }
}

impl<F: Field + fmt::Display> fmt::Display for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .rev()
            .map(|(e, c)| match e {
                0 => format!("{c}"),
                1 => format!("({c})*z"),
                _ => format!("({c})*z^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Polynomial in `x`, coefficients in ascending order with a nonzero leading coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct XPoly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> XPoly<F> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![F::zero(), F::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(F::is_exactly_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn mul_x(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(F::zero());
        c.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(c)
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Result<Self> {
        let lead = self
            .leading()
            .ok_or_else(|| Error::Normalization("zero polynomial has no monic form".into()))?;
        if lead.is_zero() {
            return Err(Error::Normalization("leading coefficient vanishes".into()));
        }
        Ok(self.scale(&lead.recip()))
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn to_f64(&self) -> XPoly<f64> {
        XPoly::from_coeffs(self.coeffs.iter().map(F::to_float).collect())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len)
            .map(|k| (self.coeff(k) - other.coeff(k)).magnitude())
            .fold(0.0, f64::max)
    }
}

impl XPoly<f64> {
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }
}

impl<F: Field> Add for &XPoly<F> {
    type Output = XPoly<F>;
    fn add(self, rhs: &XPoly<F>) -> XPoly<F> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        XPoly::from_coeffs((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<F: Field> Sub for &XPoly<F> {
    type Output = XPoly<F>;
    fn sub(self, rhs: &XPoly<F>) -> XPoly<F> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        XPoly::from_coeffs((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<F: Field> Mul for &XPoly<F> {
    type Output = XPoly<F>;
    fn mul(self, rhs: &XPoly<F>) -> XPoly<F> {
        if self.is_zero() || rhs.is_zero() {
            return XPoly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        XPoly::from_coeffs(out)
    }
}

impl<F: Field + fmt::Display> fmt::Display for XPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_exactly_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c})*x"),
                _ => format!("({c})*x^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Sparse Laurent polynomial in `z_1..z_n`, keyed by exponent (weight) vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiLaurent<F: Field> {
    nvars: usize,
    coeffs: BTreeMap<Vec<i64>, F>,
}

impl<F: Field> MultiLaurent<F> {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, weight: &[i64], c: F) {
        assert_eq!(weight.len(), self.nvars, "weight length mismatch");
        if c.is_exactly_zero() {
            return;
        }
        let slot = self.coeffs.entry(weight.to_vec()).or_insert_with(F::zero);
        *slot = slot.clone() + c;
        if slot.is_exactly_zero() {
            self.coeffs.remove(weight);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &F)> {
        self.coeffs.iter().map(|(w, c)| (w.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Evaluate at the torus point `z_i = q^{h_i}`, i.e. pair with `q^h`.
    pub fn pair_with_qh(&self, q: &F, h: &[i64]) -> F {
        self.terms().fold(F::zero(), |acc, (w, c)| {
            let e: i64 = w.iter().zip(h).map(|(a, b)| a * b).sum();
            acc + c.clone() * q.powi(e)
        })
    }

    /// Restrict to the one-parameter line `mu = j * direction`, returning the
    /// Laurent polynomial whose `z^j` coefficient is that of `z^{j * direction}`.
    pub fn collapse(&self, direction: &[i64]) -> Result<LaurentPoly<F>> {
        assert_eq!(direction.len(), self.nvars, "direction length mismatch");
        let pivot = direction
            .iter()
            .position(|&d| d != 0)
            .ok_or_else(|| Error::Domain("collapse direction must be nonzero".into()))?;
        let mut out = LaurentPoly::zero();
        for (w, c) in self.terms() {
            let j = w[pivot] / direction[pivot];
            let on_line = w[pivot] % direction[pivot] == 0
                && w.iter().zip(direction).all(|(a, d)| *a == j * d);
            if !on_line {
                return Err(Error::Collapse { weight: w.to_vec() });
            }
            out.add_term(j, c.clone());
        }
        Ok(out)
    }
}

/// The direction `e_1 - e_n` in `Z^n`.
pub fn first_minus_last(n: usize) -> Vec<i64> {
    let mut d = vec![0; n];
    d[0] = 1;
    d[n - 1] -= 1;
    d
}
