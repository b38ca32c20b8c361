//! The two-sided coideals `k^(c,d)` and their fixed vectors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::numfield::Field;

use super::{GeneratorTable, Kind, SparseMatrix};

/// `k^(c,d)` through `s = sqrt(c)` and `t = sqrt(d)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoidealSpec<F> {
    pub s: F,
    pub t: F,
}

impl<F: Field> CoidealSpec<F> {
    pub fn new(s: F, t: F) -> Result<Self> {
        if s.is_zero() && t.is_zero() {
            return Err(Error::Domain("coideal needs (s, t) != (0, 0)".into()));
        }
        if s.to_float() < 0.0 || t.to_float() < 0.0 {
            return Err(Error::Domain("coideal parameters s, t must be nonnegative".into()));
        }
        Ok(Self { s, t })
    }

    pub fn c(&self) -> F {
        self.s.clone() * self.s.clone()
    }

    pub fn d(&self) -> F {
        self.t.clone() * self.t.clone()
    }

    /// `q^sigma = t / s`, or `None` when `sigma` is infinite.
    pub fn q_sigma(&self) -> Option<F> {
        if self.s.is_zero() || self.t.is_zero() {
            None
        } else {
            Some(self.t.clone() / self.s.clone())
        }
    }

    pub fn is_finite(&self) -> bool {
        self.q_sigma().is_some()
    }
}

/// Number of spanning elements of `k^(c,d)` for rank `n`.
pub fn coideal_size(n: usize) -> usize {
    let m = n - 2;
    2 + m + m + m * m.saturating_sub(1) + m + 1
}

/// One matrix per spanning element of `k^(c,d)`, families (i) to (vi) in order.
pub fn coideal_matrices<F: Field>(spec: &CoidealSpec<F>, table: &GeneratorTable<F>) -> Result<Vec<SparseMatrix<F>>> {
    if spec.s.is_zero() && spec.t.is_zero() {
        return Err(Error::Domain("coideal needs (s, t) != (0, 0)".into()));
    }
    let n = table.n();
    let last = n - 1;
    let (s, t) = (spec.s.clone(), spec.t.clone());
    let lp = |i, j| table.get(Kind::LPlus, i, j);
    let lm = |i, j| table.get(Kind::LMinus, i, j);
    let mut out = Vec::with_capacity(coideal_size(n));
    out.push(lp(0, 0).sub(lm(last, last)));
    out.push(lm(0, 0).sub(lp(last, last)));
    for k in 1..last {
        out.push(lp(0, k).scale(&s).add(&lm(last, k).scale(&t)));
    }
    for k in 1..last {
        out.push(lp(k, last).scale(&t).add(&lm(k, 0).scale(&s)));
    }
    for i in 1..last {
        for j in i + 1..last {
            out.push(lp(i, j).clone());
            out.push(lm(j, i).clone());
        }
    }
    for i in 1..last {
        out.push(lp(i, i).sub(lm(i, i)));
    }
    let st = s.clone() * t.clone();
    let diff = s.clone() * s - t.clone() * t;
    out.push(
        lp(0, last)
            .scale(&st)
            .sub(&lm(last, 0).scale(&st))
            .sub(&lp(0, 0).sub(lm(0, 0)).scale(&diff)),
    );
    Ok(out)
}

fn stacked_kernel<F: Field>(mats: &[SparseMatrix<F>], transpose: bool) -> Vec<Vec<F>> {
    let Some(first) = mats.first() else {
        return Vec::new();
    };
    let ncols = if transpose { first.nrows() } else { first.ncols() };
    let mut rows = Vec::new();
    for m in mats {
        let dense = if transpose { m.transpose().to_dense() } else { m.to_dense() };
        rows.extend(dense.into_iter().filter(|r| r.iter().any(|x| !x.is_exactly_zero())));
    }
    linalg::kernel(&rows, ncols)
}

/// Basis of the joint kernel `{ v : M v = 0 for all M }`.
pub fn fixed_vectors<F: Field>(mats: &[SparseMatrix<F>]) -> Vec<Vec<F>> {
    stacked_kernel(mats, false)
}

/// Basis of the joint left kernel `{ xi : xi M = 0 for all M }`.
pub fn fixed_covectors<F: Field>(mats: &[SparseMatrix<F>]) -> Vec<Vec<F>> {
    stacked_kernel(mats, true)
}
