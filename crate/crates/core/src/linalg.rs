//! Dense exact linear algebra: rank and null spaces.
//!
//! Two independent routes are provided. [`kernel`] is plain Gauss-Jordan over
//! any [`Field`]. [`kernel_fraction_free`] clears denominators row by row and
//! runs Bareiss elimination over the integers, only returning to rationals
//! for back substitution. The representation engine uses the fraction-free
//! route; tests cross-check it against Gauss-Jordan.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

use crate::numfield::{Field, Rational};

fn int_zero(x: &BigInt) -> bool {
    num_traits::Zero::is_zero(x)
}

fn int_one() -> BigInt {
    BigInt::from(1)
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(rows: &mut Vec<Vec<F>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        // Float backend: partial pivoting on magnitude; exact: first nonzero.
        let pick = if F::EXACT {
            (r..rows.len()).find(|&i| !rows[i][col].is_exactly_zero())
        } else {
            (r..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .max_by(|&i, &j| {
                    rows[i][col]
                        .magnitude()
                        .partial_cmp(&rows[j][col].magnitude())
                        .unwrap()
                })
        };
        let Some(p) = pick else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for v in rows[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_exactly_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for j in 0..ncols {
                let t = rows[r][j].clone();
                rows[i][j] = rows[i][j].clone() - f.clone() * t;
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

fn kernel_from_rref<F: Field>(rows: &[Vec<F>], pivots: &[usize], ncols: usize) -> Vec<Vec<F>> {
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); ncols];
            v[f] = F::one();
            for (row, &pc) in rows.iter().zip(pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Basis of `{ v : A v = 0 }` by Gauss-Jordan elimination.
pub fn kernel<F: Field>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    kernel_from_rref(&m, &pivots, ncols)
}

pub fn rank<F: Field>(rows: &[Vec<F>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(int_one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

/// Bareiss fraction-free elimination on integer rows; returns pivot columns
/// and leaves `m` in row echelon form.
pub fn bareiss_echelon(m: &mut Vec<Vec<BigInt>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut prev = int_one();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !int_zero(&m[i][col])) else {
            continue;
        };
        m.swap(r, p);
        let piv = m[r][col].clone();
        for i in (r + 1)..m.len() {
            let f = m[i][col].clone();
            for j in col..ncols {
                let v = &piv * &m[i][j] - &f * &m[r][j];
                m[i][j] = v / &prev;
            }
        }
        prev = piv;
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    pivots
}

/// Null space over the rationals via fraction-free elimination.
///
/// Basis vectors are scaled to primitive integer vectors with a positive
/// leading entry, so the output is canonical for a given pivot structure.
pub fn kernel_fraction_free(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_exactly_zero()))
        .map(|r| integer_row(r))
        .collect();
    let pivots = bareiss_echelon(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (ri, &pc) in pivots.iter().enumerate().rev() {
                let mut acc = Rational::zero();
                for j in (pc + 1)..ncols {
                    if !int_zero(&m[ri][j]) && !v[j].is_exactly_zero() {
                        acc = acc + BigRational::from_integer(m[ri][j].clone()) * v[j].clone();
                    }
                }
                v[pc] = -acc / BigRational::from_integer(m[ri][pc].clone());
            }
            primitive(v)
        })
        .collect()
}

pub fn rank_fraction_free(rows: &[Vec<Rational>], ncols: usize) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    bareiss_echelon(&mut m, ncols).len()
}

/// Scale a rational vector to a primitive integer vector whose first nonzero entry is positive.
pub fn primitive(v: Vec<Rational>) -> Vec<Rational> {
    let lcm = v.iter().fold(int_one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::from(0), |acc, x| acc.gcd(x));
    if int_zero(&g) {
        return v;
    }
    let sign = ints
        .iter()
        .find(|x| !int_zero(x))
        .map(|x| if x.is_negative() { -int_one() } else { int_one() })
        .unwrap();
    ints.into_iter()
        .map(|x| BigRational::from_integer(x * &sign / &g))
        .collect()
}

/// Dense matrix-vector product.
pub fn mat_vec<F: Field>(rows: &[Vec<F>], v: &[F]) -> Vec<F> {
    rows.iter()
        .map(|r| {
            r.iter()
                .zip(v)
                .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
        })
        .collect()
}
