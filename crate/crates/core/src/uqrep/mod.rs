//! Finite-dimensional representations of `U_q(gl(n))` in terms of the
//! L-operators `L+_ij`, `L-_ij` and their antipodes, plus the two-sided
//! coideals `k^(c,d)`, fixed vectors, the Casimir element and the
//! spherical-function restriction to the torus.
//!
//! Indices are 0-based throughout: `L+_ij` with `i, j in 0..n`.

pub mod coideal;
pub mod module;
pub mod sparse;
pub mod spherical;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numfield::{Field, QContext};
pub use sparse::SparseMatrix;

pub use coideal::{coideal_matrices, coideal_size, fixed_covectors, fixed_vectors, CoidealSpec};
pub use module::{highest_weight_vectors, irreducible_components, submodule_from_hw, weight_space, ModuleBasis};
pub use spherical::{
    default_h_samples, monic_aw_target, run_campaign, run_campaign_sequential, sigma_tau, spherical_restriction, verify_case, verify_qhc, SphericalFunction, VerificationCase,
    VerificationReport,
};

/// Default cap on representation dimensions, overridable through `QAW_MAX_DIM`.
pub const DEFAULT_MAX_DIM: usize = 1024;

pub fn max_dim() -> usize {
    std::env::var("QAW_MAX_DIM")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_DIM)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    LPlus,
    LMinus,
    SLPlus,
    SLMinus,
}

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::LPlus, Kind::LMinus, Kind::SLPlus, Kind::SLMinus];

    fn slot(self) -> usize {
        match self {
            Kind::LPlus => 0,
            Kind::LMinus => 1,
            Kind::SLPlus => 2,
            Kind::SLMinus => 3,
        }
    }

    pub fn antipode(self) -> Kind {
        match self {
            Kind::LPlus => Kind::SLPlus,
            Kind::LMinus => Kind::SLMinus,
            Kind::SLPlus => Kind::LPlus,
            Kind::SLMinus => Kind::LMinus,
        }
    }

    pub fn is_antipode(self) -> bool {
        matches!(self, Kind::SLPlus | Kind::SLMinus)
    }
}

/// Matrices of every `L+-_ij` and `S(L+-_ij)` on a module with a weight basis.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorTable<F: Field> {
    n: usize,
    q: F,
    weights: Vec<Vec<i64>>,
    mats: Vec<SparseMatrix<F>>,
}

impl<F: Field> GeneratorTable<F> {
    pub fn new(n: usize, q: F, weights: Vec<Vec<i64>>, mats: Vec<SparseMatrix<F>>) -> Result<Self> {
        if mats.len() != 4 * n * n {
            return Err(Error::Domain(format!("expected {} generator matrices, got {}", 4 * n * n, mats.len())));
        }
        let dim = weights.len();
        if mats.iter().any(|m| m.nrows() != dim || m.ncols() != dim) {
            return Err(Error::Domain("generator matrix shape does not match the weight list".into()));
        }
        Ok(Self { n, q, weights, mats })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> &F {
        &self.q
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn get(&self, kind: Kind, i: usize, j: usize) -> &SparseMatrix<F> {
        &self.mats[kind.slot() * self.n * self.n + i * self.n + j]
    }

    /// Labels with a matrix that is not identically zero.
    pub fn labels(&self) -> impl Iterator<Item = (Kind, usize, usize)> + '_ {
        let n = self.n;
        Kind::ALL
            .into_iter()
            .flat_map(move |k| (0..n).flat_map(move |i| (0..n).map(move |j| (k, i, j))))
    }

    /// Diagonal matrix `q^{<h, wt>}`.
    pub fn q_h(&self, h: &[i64]) -> SparseMatrix<F> {
        let ctx_q = self.q.clone();
        SparseMatrix::from_triplets(
            self.dim(),
            self.dim(),
            self.weights.iter().enumerate().map(|(i, w)| {
                let e: i64 = w.iter().zip(h).map(|(a, b)| a * b).sum();
                (i, i, ctx_q.powi(e))
            }),
        )
    }

    /// Entry `(r, c)` of `L+-_ij` or `S(L+-_ij)` nonzero implies `wt(r) = wt(c) + e_j - e_i`.
    pub fn check_weights(&self) -> Result<()> {
        for (kind, i, j) in self.labels() {
            for (r, c, _) in self.get(kind, i, j).entries() {
                let mut expected = self.weights[c].clone();
                expected[j] += 1;
                expected[i] -= 1;
                if self.weights[r] != expected {
                    return Err(Error::Domain(format!(
                        "{kind:?}[{i}][{j}] maps weight {:?} to {:?}",
                        self.weights[c], self.weights[r]
                    )));
                }
            }
        }
        Ok(())
    }

    /// `L+` upper and `L-` lower triangular as operator-valued matrices.
    pub fn is_triangular(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                (i <= j || self.get(Kind::LPlus, i, j).is_zero() && self.get(Kind::SLPlus, i, j).is_zero())
                    && (i >= j || self.get(Kind::LMinus, i, j).is_zero() && self.get(Kind::SLMinus, i, j).is_zero())
            })
        })
    }
}

fn diag<F: Field>(values: Vec<F>) -> SparseMatrix<F> {
    let n = values.len();
    SparseMatrix::from_triplets(n, n, values.into_iter().enumerate().map(|(i, v)| (i, i, v)))
}

fn unit<F: Field>(n: usize, r: usize, c: usize, v: F) -> SparseMatrix<F> {
    SparseMatrix::from_triplets(n, n, [(r, c, v)])
}

fn q_minus_inv<F: Field>(q: &F) -> F {
    q.clone() - q.recip()
}

/// `R = sum q^{delta_ij} e_ii (x) e_jj + (q - q^-1) sum_{i>j} e_ij (x) e_ji`
/// on `V (x) V`, index `(i, j) -> i n + j`.
pub fn build_r_matrix<F: Field>(n: usize, ctx: &QContext<F>) -> SparseMatrix<F> {
    let q = ctx.q();
    let mut r = SparseMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let v = if i == j { q.clone() } else { F::one() };
            r.add_at(i * n + j, i * n + j, v);
            if i > j {
                // e_ij (x) e_ji sends v_j (x) v_i to v_i (x) v_j
                r.add_at(i * n + j, j * n + i, q_minus_inv(q));
            }
        }
    }
    r
}

/// `R+ = P R P`.
pub fn r_plus<F: Field>(n: usize, ctx: &QContext<F>) -> SparseMatrix<F> {
    let r = build_r_matrix(n, ctx);
    let swap = |k: usize| (k % n) * n + k / n;
    SparseMatrix::from_triplets(n * n, n * n, r.entries().map(|(a, b, v)| (swap(a), swap(b), v.clone())))
}

fn generator_slots<F: Field>(n: usize, dim: usize) -> Vec<SparseMatrix<F>> {
    vec![SparseMatrix::zeros(dim, dim); 4 * n * n]
}

/// The vector representation on `V` with basis `v_0..v_{n-1}`.
pub fn vector_rep<F: Field>(n: usize, ctx: &QContext<F>) -> Result<GeneratorTable<F>> {
    let q = ctx.q().clone();
    let qi = q.recip();
    let c = q_minus_inv(&q);
    let mut mats = generator_slots(n, n);
    let slot = |kind: Kind, i: usize, j: usize| kind.slot() * n * n + i * n + j;
    for i in 0..n {
        let pick = |hit: &F| (0..n).map(|k| if k == i { hit.clone() } else { F::one() }).collect();
        mats[slot(Kind::LPlus, i, i)] = diag(pick(&q));
        mats[slot(Kind::LMinus, i, i)] = diag(pick(&qi));
        mats[slot(Kind::SLPlus, i, i)] = diag(pick(&qi));
        mats[slot(Kind::SLMinus, i, i)] = diag(pick(&q));
        for j in 0..n {
            if i < j {
                mats[slot(Kind::LPlus, i, j)] = unit(n, j, i, c.clone());
                mats[slot(Kind::SLPlus, i, j)] = unit(n, j, i, -c.clone());
            } else if i > j {
                mats[slot(Kind::LMinus, i, j)] = unit(n, j, i, -c.clone());
                mats[slot(Kind::SLMinus, i, j)] = unit(n, j, i, c.clone());
            }
        }
    }
    let weights = (0..n)
        .map(|k| {
            let mut w = vec![0; n];
            w[k] = 1;
            w
        })
        .collect();
    GeneratorTable::new(n, q, weights, mats)
}

/// The contragredient representation on `V*` with dual basis `v*_0..v*_{n-1}`.
pub fn dual_rep<F: Field>(n: usize, ctx: &QContext<F>) -> Result<GeneratorTable<F>> {
    let q = ctx.q().clone();
    let qi = q.recip();
    let c = q_minus_inv(&q);
    let mut mats = generator_slots(n, n);
    let slot = |kind: Kind, i: usize, j: usize| kind.slot() * n * n + i * n + j;
    for i in 0..n {
        let pick = |hit: &F| (0..n).map(|k| if k == i { hit.clone() } else { F::one() }).collect();
        mats[slot(Kind::LPlus, i, i)] = diag(pick(&qi));
        mats[slot(Kind::LMinus, i, i)] = diag(pick(&q));
        mats[slot(Kind::SLPlus, i, i)] = diag(pick(&q));
        mats[slot(Kind::SLMinus, i, i)] = diag(pick(&qi));
        for j in 0..n {
            let s2 = ctx.q_power(2 * (j as i64 - i as i64));
            if i < j {
                mats[slot(Kind::LPlus, i, j)] = unit(n, i, j, -c.clone());
                mats[slot(Kind::SLPlus, i, j)] = unit(n, i, j, s2 * c.clone());
            } else if i > j {
                mats[slot(Kind::LMinus, i, j)] = unit(n, i, j, c.clone());
                mats[slot(Kind::SLMinus, i, j)] = unit(n, i, j, -(s2 * c.clone()));
            }
        }
    }
    let weights = (0..n)
        .map(|k| {
            let mut w = vec![0; n];
            w[k] = -1;
            w
        })
        .collect();
    GeneratorTable::new(n, q, weights, mats)
}

/// The tensor product module through `Delta(L_ij) = sum_k L_ik (x) L_kj` and
/// `Delta(S(L_ij)) = sum_k S(L_kj) (x) S(L_ik)`.
pub fn tensor_action<F: Field>(t1: &GeneratorTable<F>, t2: &GeneratorTable<F>) -> Result<GeneratorTable<F>> {
    if t1.n != t2.n || t1.q != t2.q {
        return Err(Error::Domain("tensor factors must share n and q".into()));
    }
    let dim = t1.dim() * t2.dim();
    let cap = max_dim();
    if dim > cap {
        return Err(Error::DimensionCap { dim, cap });
    }
    let n = t1.n;
    let mut mats = Vec::with_capacity(4 * n * n);
    for kind in Kind::ALL {
        for i in 0..n {
            for j in 0..n {
                let mut acc = SparseMatrix::zeros(dim, dim);
                for k in 0..n {
                    let (a, b) = if kind.is_antipode() {
                        (t1.get(kind, k, j), t2.get(kind, i, k))
                    } else {
                        (t1.get(kind, i, k), t2.get(kind, k, j))
                    };
                    if a.nnz() == 0 || b.nnz() == 0 {
                        continue;
                    }
                    acc = acc.add(&a.kron(b));
                }
                mats.push(acc);
            }
        }
    }
    let weights = t1
        .weights
        .iter()
        .flat_map(|w1| {
            t2.weights
                .iter()
                .map(move |w2| w1.iter().zip(w2).map(|(a, b)| a + b).collect())
        })
        .collect();
    GeneratorTable::new(n, t1.q.clone(), weights, mats)
}

/// `(V* (x) V)^{(x) l}`; `l = 0` gives the trivial module.
pub fn vvstar_power<F: Field>(n: usize, l: usize, ctx: &QContext<F>) -> Result<GeneratorTable<F>> {
    let dim = (n * n).checked_pow(l as u32).unwrap_or(usize::MAX);
    let cap = max_dim();
    if dim > cap {
        return Err(Error::DimensionCap { dim, cap });
    }
    if l == 0 {
        return trivial_rep(n, ctx);
    }
    let base = tensor_action(&dual_rep(n, ctx)?, &vector_rep(n, ctx)?)?;
    let mut w = base.clone();
    for _ in 1..l {
        w = tensor_action(&w, &base)?;
    }
    Ok(w)
}

/// The counit module: `L+-_ij` and `S(L+-_ij)` act by `delta_ij`.
pub fn trivial_rep<F: Field>(n: usize, ctx: &QContext<F>) -> Result<GeneratorTable<F>> {
    let mut mats = generator_slots(n, 1);
    for kind in Kind::ALL {
        for i in 0..n {
            mats[kind.slot() * n * n + i * n + i] = SparseMatrix::identity(1);
        }
    }
    GeneratorTable::new(n, ctx.q().clone(), vec![vec![0; n]], mats)
}

/// Index of `v*_i (x) v_j` in `V* (x) V`.
pub fn vvstar_index(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

/// `(v*_{n-1} (x) v_0)^{(x) l}` as a coordinate vector.
pub fn spherical_hw_vector<F: Field>(n: usize, l: usize) -> Vec<F> {
    let base = vvstar_index(n, n - 1, 0);
    let mut idx = 0usize;
    for _ in 0..l {
        idx = idx * n * n + base;
    }
    let dim = (n * n).pow(l as u32);
    let mut v = vec![F::zero(); dim];
    v[idx] = F::one();
    v
}

/// `C = sum_ij q^{2(n-i)} L+_ij S(L-_ji)` with 1-based `i`.
pub fn casimir_matrix<F: Field>(table: &GeneratorTable<F>) -> SparseMatrix<F> {
    let n = table.n;
    let mut c = SparseMatrix::zeros(table.dim(), table.dim());
    for i in 0..n {
        let coeff = table.q.powi(2 * (n - 1 - i) as i64);
        for j in 0..n {
            let a = table.get(Kind::LPlus, i, j);
            let b = table.get(Kind::SLMinus, j, i);
            if a.nnz() == 0 || b.nnz() == 0 {
                continue;
            }
            c = c.add(&a.mul(b).scale(&coeff));
        }
    }
    c
}

/// Largest residual among the RTT relations
/// `R+ L1 L2 = L2 L1 R+` (both signs) and `R+ L+_1 L-_2 = L-_2 L+_1 R+`.
pub fn rtt_residual<F: Field>(table: &GeneratorTable<F>) -> Result<f64> {
    let n = table.n;
    let ctx = QContext::new(table.q.clone())?;
    let rp = r_plus(n, &ctx);
    let mut worst: f64 = 0.0;
    let dim = table.dim();
    for (first, second) in [(Kind::LPlus, Kind::LPlus), (Kind::LMinus, Kind::LMinus), (Kind::LPlus, Kind::LMinus)] {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut lhs = SparseMatrix::zeros(dim, dim);
                        let mut rhs = SparseMatrix::zeros(dim, dim);
                        for a in 0..n {
                            for b in 0..n {
                                let r1 = rp.get(i * n + j, a * n + b);
                                if !r1.is_exactly_zero() {
                                    let prod = table.get(first, a, k).mul(table.get(second, b, l));
                                    lhs = lhs.add(&prod.scale(&r1));
                                }
                                let r2 = rp.get(a * n + b, k * n + l);
                                if !r2.is_exactly_zero() {
                                    let prod = table.get(second, j, b).mul(table.get(first, i, a));
                                    rhs = rhs.add(&prod.scale(&r2));
                                }
                            }
                        }
                        worst = worst.max(lhs.sub(&rhs).max_abs());
                    }
                }
            }
        }
    }
    Ok(worst)
}

/// Largest residual of `sum_k L_ik S(L_kj) = sum_k S(L_ik) L_kj = delta_ij`.
pub fn antipode_residual<F: Field>(table: &GeneratorTable<F>) -> f64 {
    let n = table.n;
    let dim = table.dim();
    let mut worst: f64 = 0.0;
    for (l, s) in [(Kind::LPlus, Kind::SLPlus), (Kind::LMinus, Kind::SLMinus)] {
        for i in 0..n {
            for j in 0..n {
                let mut left = SparseMatrix::zeros(dim, dim);
                let mut right = SparseMatrix::zeros(dim, dim);
                for k in 0..n {
                    left = left.add(&table.get(l, i, k).mul(table.get(s, k, j)));
                    right = right.add(&table.get(s, i, k).mul(table.get(l, k, j)));
                }
                if i == j {
                    left = left.sub(&SparseMatrix::identity(dim));
                    right = right.sub(&SparseMatrix::identity(dim));
                }
                worst = worst.max(left.max_abs()).max(right.max_abs());
            }
        }
    }
    worst
}

/// Largest residual of `[C, X]` over all generator matrices `X`.
pub fn casimir_commutator_residual<F: Field>(table: &GeneratorTable<F>) -> f64 {
    let c = casimir_matrix(table);
    table
        .labels()
        .map(|(k, i, j)| {
            let x = table.get(k, i, j);
            c.mul(x).sub(&x.mul(&c)).max_abs()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{rat, Rational};
    use crate::qdiffop::{casimir_eigenvalue, Weight};

    fn ctx() -> QContext<Rational> {
        QContext::new(rat(1, 2)).unwrap()
    }

    #[test]
    fn r_matrix_n2() {
        let r = build_r_matrix(2, &ctx());
        let q = rat(1, 2);
        assert_eq!(r.get(0, 0), q);
        assert_eq!(r.get(1, 1), rat(1, 1));
        assert_eq!(r.get(2, 2), rat(1, 1));
        assert_eq!(r.get(3, 3), q);
        assert_eq!(r.get(2, 1), q.clone() - q.recip());
        assert_eq!(r.nnz(), 5);
        // lower triangular with nonzero diagonal: invertible
        assert!(r.entries().all(|(a, b, _)| a >= b));
    }

    #[test]
    fn vector_rep_formulas() {
        let v = vector_rep(2, &ctx()).unwrap();
        let q = rat(1, 2);
        let e0 = vec![rat(1, 1), rat(0, 1)];
        assert_eq!(v.get(Kind::LPlus, 0, 0).apply(&e0), vec![q.clone(), rat(0, 1)]);
        assert_eq!(
            v.get(Kind::LPlus, 0, 1).apply(&e0),
            vec![rat(0, 1), q.clone() - q.recip()]
        );
        let d = dual_rep(3, &ctx()).unwrap();
        // S(L+_ij) v*_j = q^{2(j-i)} (q - q^-1) v*_i
        let mut e2 = vec![rat(0, 1); 3];
        e2[2] = rat(1, 1);
        let out = d.get(Kind::SLPlus, 0, 2).apply(&e2);
        assert_eq!(out[0], q.powi(4) * (q.clone() - q.recip()));
    }

    #[test]
    fn structure_of_basic_modules() {
        for n in 2..=3 {
            let ctx = ctx();
            for t in [vector_rep(n, &ctx).unwrap(), dual_rep(n, &ctx).unwrap()] {
                assert!(t.is_triangular());
                t.check_weights().unwrap();
                assert_eq!(rtt_residual(&t).unwrap(), 0.0);
                assert_eq!(antipode_residual(&t), 0.0);
            }
        }
    }

    #[test]
    fn structure_of_tensor_products() {
        let ctx = ctx();
        for n in 2..=3 {
            let vv = tensor_action(&dual_rep(n, &ctx).unwrap(), &vector_rep(n, &ctx).unwrap()).unwrap();
            assert_eq!(vv.dim(), n * n);
            vv.check_weights().unwrap();
            assert_eq!(vv.weights()[vvstar_index(n, 0, n - 1)], {
                let mut w = vec![0; n];
                w[n - 1] = 1;
                w[0] = -1;
                w
            });
            assert_eq!(rtt_residual(&vv).unwrap(), 0.0);
            assert_eq!(antipode_residual(&vv), 0.0);
            assert_eq!(casimir_commutator_residual(&vv), 0.0);
        }
        let v = vector_rep(2, &ctx).unwrap();
        let vvv = tensor_action(&v, &v).unwrap();
        assert_eq!(rtt_residual(&vvv).unwrap(), 0.0);
    }

    #[test]
    fn casimir_on_vector_rep() {
        let ctx = ctx();
        let c = casimir_matrix(&vector_rep(2, &ctx).unwrap());
        assert_eq!(c, SparseMatrix::identity(2).scale(&rat(17, 16)));
        for n in 2..=4 {
            let c = casimir_matrix(&vector_rep(n, &ctx).unwrap());
            let mut eps1 = vec![0; n];
            eps1[0] = 1;
            let chi = casimir_eigenvalue(&Weight(eps1), &ctx);
            assert_eq!(c, SparseMatrix::identity(n).scale(&chi));
        }
    }

    #[test]
    fn dimension_cap() {
        let ctx = ctx();
        let err = vvstar_power(4, 4, &ctx).unwrap_err();
        assert!(matches!(err, Error::DimensionCap { dim: 65536, .. }));
    }
}
