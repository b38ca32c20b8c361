//! The Askey-Wilson orthogonality measure: a continuous weight on the unit
//! circle plus finitely many atoms, inner products by periodic trapezoid
//! quadrature, the closed-form total mass, and the normalized Haar functional
//! on the spherical subalgebra.
//!
//! The continuous part is `(1/2 pi) int_0^{2 pi} P Q w(e^{i theta}) d theta`,
//! i.e. the full contour integral. The atom masses are doubled relative to
//! the half-circle convention so that the total mass equals
//! `2 (abcd;q)_inf / (q, ab, ac, ad, bc, bd, cd; q)_inf`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numfield::Field;
use crate::parallel::{map_range, map_range_sequential, pairwise_sum};
use crate::polyring::XPoly;
use crate::qclassical::AWParams;
use crate::qdiffop::{parameter_map, SigmaTauParams};
use crate::qseries::{qpochhammer_inf_complex, qpochhammer_inf_multi_complex};

const NAMES: [char; 4] = ['a', 'b', 'c', 'd'];

/// Quadrature and product-truncation settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSettings {
    pub initial_points: usize,
    pub max_doublings: u32,
    pub rel_tol: f64,
    pub product_tol: f64,
    /// Evaluate samples on the rayon pool (ignored without the `parallel` feature).
    pub parallel: bool,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            initial_points: 64,
            max_doublings: 14,
            rel_tol: 1e-10,
            product_tol: 1e-17,
            parallel: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub point: f64,
    pub mass: f64,
    /// Which of `a, b, c, d` generated the family.
    pub family: char,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureSpec {
    pub params: AWParams<Complex64>,
    pub atoms: Vec<Atom>,
    pub norm: f64,
    pub quadrature: QuadratureSettings,
    /// Index pairs of atoms from different families sitting at the same point.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coincident: Vec<[usize; 2]>,
}

/// Lift real parameters to the complex representation used by the measure.
pub fn complexify(p: &AWParams<f64>) -> AWParams<Complex64> {
    let c = |v: f64| Complex64::new(v, 0.0);
    AWParams {
        a: c(p.a),
        b: c(p.b),
        c: c(p.c),
        d: c(p.d),
        q: c(p.q),
    }
}

fn values(p: &AWParams<Complex64>) -> [Complex64; 4] {
    [p.a, p.b, p.c, p.d]
}

fn is_real(z: Complex64) -> bool {
    z.im.abs() <= 1e-14 * z.re.abs().max(1.0)
}

fn check_hypotheses(p: &AWParams<Complex64>) -> Result<f64> {
    if !is_real(p.q) || !(p.q.re > 0.0 && p.q.re < 1.0) {
        return Err(Error::Domain(format!("q must be real with 0 < q < 1, got {}", p.q)));
    }
    let v = values(p);
    let mut used = [false; 4];
    for i in 0..4 {
        if is_real(v[i]) || used[i] {
            continue;
        }
        let partner = (0..4).find(|&j| j != i && !used[j] && (v[j] - v[i].conj()).norm() <= 1e-14 * v[i].norm().max(1.0));
        match partner {
            Some(j) => {
                used[i] = true;
                used[j] = true;
            }
            None => {
                return Err(Error::Hypothesis(format!(
                    "parameter {} = {} is complex without a conjugate partner",
                    NAMES[i], v[i]
                )))
            }
        }
    }
    for i in 0..4 {
        for j in i + 1..4 {
            let prod = v[i] * v[j];
            if is_real(prod) && prod.re >= 1.0 {
                return Err(Error::Hypothesis(format!(
                    "pairwise product {}{} = {} is >= 1",
                    NAMES[i], NAMES[j], prod.re
                )));
            }
        }
    }
    Ok(p.q.re)
}

/// `w_k(e, f, g, h)`, doubled for the full-circle normalization.
fn atom_mass(e: f64, others: [Complex64; 3], q: f64, k: usize, tol: f64) -> Result<f64> {
    let e = Complex64::new(e, 0.0);
    let [f, g, h] = others;
    let qc = Complex64::new(q, 0.0);
    let head = qpochhammer_inf_complex(1.0 / (e * e), q, tol)?
        / qpochhammer_inf_multi_complex(&[qc, e * f, f / e, e * g, g / e, e * h, h / e], q, tol)?;
    let finite = |bases: &[Complex64]| -> Complex64 {
        bases.iter().fold(Complex64::new(1.0, 0.0), |acc, &b| {
            let mut term = acc;
            let mut bq = b;
            for _ in 0..k {
                term *= Complex64::new(1.0, 0.0) - bq;
                bq *= q;
            }
            term
        })
    };
    let ratio = finite(&[e * e, e * f, e * g, e * h]) / finite(&[qc, e * qc / f, e * qc / g, e * qc / h]);
    let q2k = q.powi(2 * k as i32);
    let tail = (Complex64::new(1.0, 0.0) - e * e * q2k) / (Complex64::new(1.0, 0.0) - e * e)
        * (qc / (e * f * g * h)).powi(k as i32);
    let w = 2.0 * head * ratio * tail;
    Ok(w.re)
}

/// Enumerate the atoms and the closed-form total mass.
pub fn build_measure(p: &AWParams<Complex64>, settings: QuadratureSettings) -> Result<MeasureSpec> {
    let q = check_hypotheses(p)?;
    let v = values(p);
    let mut atoms = Vec::new();
    for i in 0..4 {
        if !is_real(v[i]) || v[i].re.abs() <= 1.0 {
            continue;
        }
        let e = v[i].re;
        let mut others = [Complex64::new(0.0, 0.0); 3];
        let mut slot = 0;
        for (j, o) in v.iter().enumerate() {
            if j != i {
                others[slot] = *o;
                slot += 1;
            }
        }
        let mut k = 0usize;
        while (e * q.powi(k as i32)).abs() > 1.0 {
            let eq = e * q.powi(k as i32);
            let mass = atom_mass(e, others, q, k, settings.product_tol)?;
            if !(mass > 0.0) {
                return Err(Error::Hypothesis(format!(
                    "atom mass for {} at k = {k} is not positive ({mass})",
                    NAMES[i]
                )));
            }
            atoms.push(Atom {
                point: (eq + 1.0 / eq) / 2.0,
                mass,
                family: NAMES[i],
                k,
            });
            k += 1;
        }
    }
    let mut coincident = Vec::new();
    for i in 0..atoms.len() {
        for j in i + 1..atoms.len() {
            if atoms[i].family != atoms[j].family
                && (atoms[i].point - atoms[j].point).abs() <= 1e-12 * atoms[i].point.abs().max(1.0)
            {
                coincident.push([i, j]);
            }
        }
    }
    Ok(MeasureSpec {
        params: p.clone(),
        atoms,
        norm: norm_one_complex(p, settings.product_tol)?,
        quadrature: settings,
        coincident,
    })
}

/// [`build_measure`] for real parameters with default settings.
pub fn build_measure_real(p: &AWParams<f64>) -> Result<MeasureSpec> {
    build_measure(&complexify(p), QuadratureSettings::default())
}

fn weight_complex(theta: f64, p: &AWParams<Complex64>, q: f64, tol: f64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let z = Complex64::from_polar(1.0, theta);
    let zi = z.conj();
    // (z^2, z^-2; q)_inf = (1-z)(1+z)(1-1/z)(1+1/z) (q z^2, q z^-2; q)_inf. A parameter
    // e = +-1 cancels its leading denominator factors against (1-ez)(1-e/z).
    let mut num = qpochhammer_inf_multi_complex(&[q * z * z, q * zi * zi], q, tol)?;
    let mut bases = Vec::with_capacity(8);
    let mut cancelled = [false; 2];
    for e in values(p) {
        let unit = if e == one {
            Some(0)
        } else if e == -one {
            Some(1)
        } else {
            None
        };
        match unit {
            Some(slot) if !cancelled[slot] => {
                cancelled[slot] = true;
                bases.push(q * e * z);
                bases.push(q * e * zi);
            }
            _ => {
                bases.push(e * z);
                bases.push(e * zi);
            }
        }
    }
    for (slot, sign) in [(0, 1.0), (1, -1.0)] {
        if !cancelled[slot] {
            num *= (one - sign * z) * (one - sign * zi);
        }
    }
    if num == Complex64::new(0.0, 0.0) {
        return Ok(num);
    }
    Ok(num / qpochhammer_inf_multi_complex(&bases, q, tol)?)
}

/// `w(e^{i theta}; a, b, c, d; q)`.
pub fn weight_eval(theta: f64, p: &AWParams<Complex64>, tol: f64) -> Result<f64> {
    let q = check_hypotheses(p)?;
    Ok(weight_complex(theta, p, q, tol)?.re)
}

/// `2 (abcd;q)_inf / (q, ab, ac, ad, bc, bd, cd; q)_inf`.
pub fn norm_one(p: &AWParams<f64>, tol: f64) -> Result<f64> {
    norm_one_complex(&complexify(p), tol)
}

fn norm_one_complex(p: &AWParams<Complex64>, tol: f64) -> Result<f64> {
    let q = p.q.re;
    let [a, b, c, d] = values(p);
    let num = qpochhammer_inf_complex(a * b * c * d, q, tol)?;
    let den = qpochhammer_inf_multi_complex(
        &[Complex64::new(q, 0.0), a * b, a * c, a * d, b * c, b * d, c * d],
        q,
        tol,
    )?;
    Ok((2.0 * num / den).re)
}

impl MeasureSpec {
    pub fn q(&self) -> f64 {
        self.params.q.re
    }

    /// Sum of the atom masses.
    pub fn discrete_mass(&self) -> f64 {
        pairwise_sum(&self.atoms.iter().map(|a| a.mass).collect::<Vec<_>>())
    }

    fn samples(&self, m: usize, odd_only: bool, f: &(dyn Fn(f64) -> Vec<f64> + Sync)) -> Result<Vec<Vec<f64>>> {
        let q = self.q();
        let tol = self.quadrature.product_tol;
        let count = if odd_only { m / 2 } else { m };
        let eval = |j: usize| -> Result<Vec<f64>> {
            let idx = if odd_only { 2 * j + 1 } else { j };
            let theta = 2.0 * PI * idx as f64 / m as f64;
            let w = weight_complex(theta, &self.params, q, tol)?;
            if !w.re.is_finite() {
                return Err(Error::Singularity(format!("weight is not finite at theta = {theta}")));
            }
            let x = theta.cos();
            Ok(f(x).into_iter().map(|v| v * w.re).collect())
        };
        let rows = if self.quadrature.parallel {
            map_range(count, eval)
        } else {
            map_range_sequential(count, eval)
        };
        rows.into_iter().collect()
    }

    /// Continuous parts of several integrals `(1/2 pi) int f_i(cos theta) w d theta`,
    /// doubling the trapezoid rule until every entry has settled.
    pub fn integrate_continuous(&self, width: usize, f: &(dyn Fn(f64) -> Vec<f64> + Sync)) -> Result<Vec<f64>> {
        let column_sums = |rows: &[Vec<f64>]| -> (Vec<f64>, Vec<f64>) {
            let mut sums = Vec::with_capacity(width);
            let mut abs_sums = Vec::with_capacity(width);
            for i in 0..width {
                let col: Vec<f64> = rows.iter().map(|r| r[i]).collect();
                sums.push(pairwise_sum(&col));
                abs_sums.push(pairwise_sum(&col.iter().map(|v| v.abs()).collect::<Vec<_>>()));
            }
            (sums, abs_sums)
        };
        let mut m = self.quadrature.initial_points.max(4);
        let (mut sums, mut abs_sums) = column_sums(&self.samples(m, false, f)?);
        let mut last_change = f64::INFINITY;
        for _ in 0..self.quadrature.max_doublings {
            let (new, new_abs) = column_sums(&self.samples(2 * m, true, f)?);
            let mut worst: f64 = 0.0;
            for i in 0..width {
                let old = sums[i] / m as f64;
                sums[i] += new[i];
                abs_sums[i] += new_abs[i];
                let cur = sums[i] / (2 * m) as f64;
                let scale = (abs_sums[i] / (2 * m) as f64).max(f64::MIN_POSITIVE);
                worst = worst.max((cur - old).abs() / scale);
            }
            m *= 2;
            last_change = worst;
            if worst < self.quadrature.rel_tol {
                return Ok(sums.iter().map(|s| s / m as f64).collect());
            }
        }
        Err(Error::QuadratureNonConvergence {
            points: m,
            change: last_change,
        })
    }

    /// Gram matrix `<P_i, P_j>` including the atoms.
    pub fn gram(&self, polys: &[XPoly<f64>]) -> Result<Vec<Vec<f64>>> {
        let k = polys.len();
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
        let integrand = |x: f64| -> Vec<f64> {
            let vals: Vec<f64> = polys.iter().map(|p| p.eval_f64(x)).collect();
            pairs.iter().map(|&(i, j)| vals[i] * vals[j]).collect()
        };
        let cont = self.integrate_continuous(pairs.len(), &integrand)?;
        let mut g = vec![vec![0.0; k]; k];
        for (idx, &(i, j)) in pairs.iter().enumerate() {
            let mut terms = vec![cont[idx]];
            terms.extend(
                self.atoms
                    .iter()
                    .map(|a| polys[i].eval_f64(a.point) * polys[j].eval_f64(a.point) * a.mass),
            );
            let v = pairwise_sum(&terms);
            g[i][j] = v;
            g[j][i] = v;
        }
        Ok(g)
    }
}

/// `<P, Q>`: continuous part by quadrature plus the atoms.
pub fn inner_product(p: &XPoly<f64>, q: &XPoly<f64>, m: &MeasureSpec) -> Result<f64> {
    let g = m.gram(&[p.clone(), q.clone()])?;
    Ok(g[0][1])
}

/// Measure for the spherical subalgebra: mapped parameters at base `q^2`.
pub fn spherical_measure<F: Field>(st: &SigmaTauParams<F>, settings: QuadratureSettings) -> Result<MeasureSpec> {
    let p = parameter_map(st)?.to_f64();
    build_measure(&complexify(&p), settings)
}

/// Normalized Haar functional `h(P) = <P, 1> / <1, 1>`.
///
/// Numerator and denominator come from the same quadrature samples, so
/// `h(1) = 1` holds exactly.
pub fn haar_expectation<F: Field>(p: &XPoly<f64>, st: &SigmaTauParams<F>) -> Result<f64> {
    let m = spherical_measure(st, QuadratureSettings::default())?;
    haar_with_measure(p, &m)
}

pub fn haar_with_measure(p: &XPoly<f64>, m: &MeasureSpec) -> Result<f64> {
    let one = XPoly::constant(1.0);
    let g = m.gram(&[p.clone(), one])?;
    Ok(g[0][1] / g[1][1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::rat;
    use crate::qclassical::askey_wilson_pn;

    fn real(a: f64, b: f64, c: f64, d: f64, q: f64) -> AWParams<f64> {
        AWParams::new(a, b, c, d, q)
    }

    #[test]
    fn no_atoms_inside_unit_disc() {
        let m = build_measure_real(&real(0.5, -0.3, 0.2, 0.9, 0.4)).unwrap();
        assert!(m.atoms.is_empty());
    }

    #[test]
    fn single_atom_example() {
        let m = build_measure_real(&real(2.0, 0.1, 0.1, 0.1, 0.25)).unwrap();
        assert_eq!(m.atoms.len(), 1);
        assert!((m.atoms[0].point - 1.25).abs() < 1e-15);
        assert_eq!(m.atoms[0].family, 'a');
        assert!(m.atoms[0].mass > 0.0);
    }

    #[test]
    fn product_hypothesis() {
        let err = build_measure_real(&real(2.0, 0.5, 0.1, 0.1, 0.5)).unwrap_err();
        assert!(matches!(err, Error::Hypothesis(ref s) if s.contains("ab")));
        let err = build_measure_real(&real(0.1, 0.1, 1.5, 0.9, 0.5)).unwrap_err();
        assert!(matches!(err, Error::Hypothesis(ref s) if s.contains("cd")));
    }

    #[test]
    fn lone_complex_parameter_rejected() {
        let mut p = complexify(&real(0.1, 0.2, 0.3, 0.4, 0.5));
        p.a = Complex64::new(0.1, 0.3);
        assert!(build_measure(&p, QuadratureSettings::default()).is_err());
        p.b = Complex64::new(0.1, -0.3);
        assert!(build_measure(&p, QuadratureSettings::default()).is_ok());
    }

    #[test]
    fn weight_zeros_and_value() {
        let p = complexify(&real(0.0, 0.0, 0.0, 0.0, 0.5));
        assert_eq!(weight_eval(0.0, &p, 1e-17).unwrap(), 0.0);
        assert!(weight_eval(PI, &p, 1e-17).unwrap().abs() < 1e-12);
        // theta = pi/2: (-1;q)_inf^2, independent oracle.
        let w = weight_eval(PI / 2.0, &p, 1e-17).unwrap();
        assert!((w - 22.738230399183975).abs() < 1e-12, "{w}");
    }

    #[test]
    fn norm_examples() {
        let v = norm_one(&real(0.0, 0.0, 0.0, 0.0, 0.5), 1e-17).unwrap();
        assert!((v - 6.925493238910127).abs() < 1e-12, "{v}");
        let small = norm_one(&real(0.0, 0.0, 0.0, 0.0, 1e-9), 1e-17).unwrap();
        assert!((small - 2.0).abs() < 1e-8);
        let m = build_measure_real(&real(0.0, 0.0, 0.0, 0.0, 0.5)).unwrap();
        let one = XPoly::constant(1.0);
        let ip = inner_product(&one, &one, &m).unwrap();
        assert!((ip - v).abs() / v < 1e-10);
    }

    #[test]
    fn total_mass_matches_norm_with_atoms() {
        for p in [real(1.2, 0.1, 0.1, 0.1, 0.5), real(3.5, -0.2, 0.1, 0.15, 0.6), real(-2.5, 0.3, -0.1, 0.2, 0.7)] {
            let m = build_measure_real(&p).unwrap();
            assert!(!m.atoms.is_empty());
            assert!(m.atoms.iter().all(|a| a.mass > 0.0));
            let one = XPoly::constant(1.0);
            let total = inner_product(&one, &one, &m).unwrap();
            assert!((total - m.norm).abs() / m.norm < 1e-8, "{total} vs {}", m.norm);
        }
    }

    #[test]
    fn gram_is_diagonal() {
        let sets = [
            real(1.2, 0.1, 0.1, 0.1, 0.5),
            real(0.3, -0.4, 0.5, 0.2, 0.6),
        ];
        for p in sets {
            let m = build_measure_real(&p).unwrap();
            let polys: Vec<XPoly<f64>> = (0..5).map(|n| askey_wilson_pn(n, &p).unwrap()).collect();
            let g = m.gram(&polys).unwrap();
            for i in 0..5 {
                for j in 0..5 {
                    if i != j {
                        let r = g[i][j] / (g[i][i] * g[j][j]).sqrt();
                        assert!(r.abs() < 1e-8, "{i},{j}: {r}");
                    }
                }
            }
        }
    }

    #[test]
    fn conjugate_pair_parameters() {
        let mut p = complexify(&real(0.0, 0.0, 0.3, -0.2, 0.5));
        p.a = Complex64::new(0.2, 0.4);
        p.b = Complex64::new(0.2, -0.4);
        let m = build_measure(&p, QuadratureSettings::default()).unwrap();
        let one = XPoly::constant(1.0);
        let total = inner_product(&one, &one, &m).unwrap();
        assert!((total - m.norm).abs() / m.norm < 1e-8);
    }

    #[test]
    fn multiplication_by_x_is_symmetric() {
        let m = build_measure_real(&real(1.2, 0.1, 0.1, 0.1, 0.5)).unwrap();
        let p = XPoly::from_coeffs(vec![0.3, -1.0, 2.0]);
        let r = XPoly::from_coeffs(vec![1.0, 0.5]);
        let lhs = inner_product(&p.mul_x(), &r, &m).unwrap();
        let rhs = inner_product(&p, &r.mul_x(), &m).unwrap();
        assert!((lhs - rhs).abs() < 1e-12 * lhs.abs().max(1.0));
    }

    #[test]
    fn trapezoid_converges_spectrally() {
        let mut m = build_measure_real(&real(0.4, 0.3, -0.2, 0.1, 0.5)).unwrap();
        let exact = m.norm;
        let mut errors = Vec::new();
        for pts in [8usize, 16, 32] {
            m.quadrature.initial_points = pts;
            m.quadrature.max_doublings = 0;
            let s: Vec<f64> = m.samples(pts, false, &|_| vec![1.0]).unwrap().iter().map(|r| r[0]).collect();
            errors.push((pairwise_sum(&s) / pts as f64 - exact).abs());
        }
        assert!(errors[1] < 0.1 * errors[0]);
        assert!(errors[2] < 0.1 * errors[1].max(1e-14) || errors[2] < 1e-13);
    }

    #[test]
    fn parallel_and_sequential_agree_bitwise() {
        let mut m = build_measure_real(&real(1.2, 0.1, 0.1, 0.1, 0.5)).unwrap();
        let p = XPoly::from_coeffs(vec![0.3, -1.0, 2.0, 0.7]);
        let a = inner_product(&p, &p, &m).unwrap();
        m.quadrature.parallel = false;
        let b = inner_product(&p, &p, &m).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn haar_functional() {
        let st = SigmaTauParams::finite(2, rat(1, 1), rat(1, 1), rat(1, 2)).unwrap();
        assert_eq!(haar_expectation(&XPoly::constant(1.0), &st).unwrap(), 1.0);
        let p = parameter_map(&st).unwrap();
        for l in 1..=4 {
            let pl = askey_wilson_pn(l, &p).unwrap().to_f64();
            let h = haar_expectation(&pl, &st).unwrap();
            assert!(h.abs() < 1e-8, "l = {l}: {h}");
        }
        // an atom from b = -q / (q^sigma q^tau)
        let st = SigmaTauParams::finite(2, rat(2, 1), rat(2, 1), rat(1, 2)).unwrap();
        let m = spherical_measure(&st, QuadratureSettings::default()).unwrap();
        assert_eq!(m.atoms.len(), 1);
        let p = parameter_map(&st).unwrap();
        let pl = askey_wilson_pn(2, &p).unwrap().to_f64();
        assert!(haar_with_measure(&pl, &m).unwrap().abs() < 1e-8);
    }

    #[test]
    fn unit_parameter_is_removable() {
        // b = -1: the weight has a removable singularity at theta = pi
        let st = SigmaTauParams::finite(4, rat(1, 1), rat(1, 2), rat(1, 2)).unwrap();
        let p = parameter_map(&st).unwrap().to_f64();
        assert_eq!(p.b, -1.0);
        let cp = complexify(&p);
        let near = weight_eval(PI - 1e-6, &cp, 1e-17).unwrap();
        let at = weight_eval(PI, &cp, 1e-17).unwrap();
        assert!(at.is_finite() && (near - at).abs() < 1e-5 * near.abs().max(1.0));
        let m = spherical_measure(&st, QuadratureSettings::default()).unwrap();
        let one = XPoly::constant(1.0);
        let total = inner_product(&one, &one, &m).unwrap();
        assert!((total - m.norm).abs() / m.norm < 1e-8);
    }

    #[test]
    fn haar_of_x_is_stable_under_refinement() {
        let st = SigmaTauParams::finite(3, rat(1, 2), rat(2, 1), rat(1, 2)).unwrap();
        let mut m = spherical_measure(&st, QuadratureSettings::default()).unwrap();
        let x = XPoly::x();
        let a = haar_with_measure(&x, &m).unwrap();
        m.quadrature.initial_points = 512;
        let b = haar_with_measure(&x, &m).unwrap();
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn measure_json_shape() {
        let m = build_measure_real(&real(1.2, 0.1, 0.1, 0.1, 0.5)).unwrap();
        let v: serde_json::Value = serde_json::to_value(&m).unwrap();
        assert!(v["params"].is_object());
        assert!(v["atoms"][0]["point"].is_number());
        assert!(v["atoms"][0]["mass"].is_number());
        assert!(v["norm"].is_number());
    }
}
