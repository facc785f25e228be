//! Exact linear algebra: row reduction over `F_p`, rational inverses, and a
//! small rational simplex for optimizing over `{y : A y <= b}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::rational::Q;

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime and small
    let mut r = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    r
}

/// Reduced row echelon form over `F_p` in place; returns pivot columns.
/// Zero rows are removed.
pub fn rref_mod_p(rows: &mut Vec<Vec<u64>>, ncols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][col].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][col], p);
        for v in rows[r].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col] == 0 {
                continue;
            }
            let f = row[col];
            for (v, &w) in row.iter_mut().zip(&pivot_row) {
                *v = (*v + p * p - f * w % p) % p;
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{v : M v = 0}` over `F_p`, one vector per free column.
pub fn kernel_mod_p(rows: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m = rows.to_vec();
    let pivots = rref_mod_p(&mut m, ncols, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = (p - row[f] % p) % p;
            }
            v
        })
        .collect()
}

pub fn rank_mod_p(rows: &[Vec<u64>], ncols: usize, p: u64) -> usize {
    let mut m = rows.to_vec();
    rref_mod_p(&mut m, ncols, p).len()
}

/// Inverse of a square rational matrix, or `None` if singular.
pub fn invert(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pr = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, pr);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= inv;
        }
        let pivot = a[col].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == col || row[col].is_zero() {
                continue;
            }
            let f = row[col];
            for (v, w) in row.iter_mut().zip(&pivot) {
                *v -= f * w;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(BigRational),
    Unbounded,
}

fn big(x: &Q) -> BigRational {
    BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

/// Maximizes `c·y` over `{y : A y <= b}` given a feasible `y0`.
///
/// The substitution `y = y0 + z⁺ - z⁻` with slacks turns the problem into
/// standard form with the slack basis feasible, so no phase one is needed.
/// Bland's rule guarantees termination.
pub fn maximize(a: &[Vec<Q>], b: &[Q], c: &[Q], y0: &[Q]) -> LpOutcome {
    let m = a.len();
    let d = c.len();
    let nvars = 2 * d + m;
    // tableau rows: [coeffs | rhs]
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for i in 0..m {
        let ay0: Q = a[i].iter().zip(y0).map(|(x, y)| x * y).sum();
        let rhs = b[i] - ay0;
        assert!(!rhs.is_negative(), "starting point is infeasible");
        let mut row = vec![BigRational::zero(); nvars + 1];
        for j in 0..d {
            row[j] = big(&a[i][j]);
            row[d + j] = -big(&a[i][j]);
        }
        row[2 * d + i] = BigRational::one();
        row[nvars] = big(&rhs);
        t.push(row);
    }
    let cy0: Q = c.iter().zip(y0).map(|(x, y)| x * y).sum();
    // reduced costs for maximization: obj[j] = c_j - z_j
    let mut obj = vec![BigRational::zero(); nvars + 1];
    for j in 0..d {
        obj[j] = big(&c[j]);
        obj[d + j] = -big(&c[j]);
    }
    let mut basis: Vec<usize> = (0..m).map(|i| 2 * d + i).collect();
    loop {
        let Some(enter) = (0..nvars).find(|&j| obj[j].is_positive()) else {
            // objective value is -obj[rhs]
            return LpOutcome::Optimal(big(&cy0) - obj[nvars].clone());
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][nvars] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((lr, _)) = leave else {
            return LpOutcome::Unbounded;
        };
        let piv = t[lr][enter].clone();
        for v in t[lr].iter_mut() {
            *v /= &piv;
        }
        let prow = t[lr].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == lr || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (v, w) in row.iter_mut().zip(&prow) {
                *v -= &f * w;
            }
        }
        let f = obj[enter].clone();
        for (v, w) in obj.iter_mut().zip(&prow) {
            *v -= &f * w;
        }
        basis[lr] = enter;
    }
}

/// Bounds `[min, max]` of each linear form `objs[k]·y` over `{A y <= b}`;
/// `None` when some form is unbounded (then the polyhedron is unbounded).
pub fn bounding_box(a: &[Vec<Q>], b: &[Q], objs: &[Vec<Q>], y0: &[Q]) -> Option<Vec<(BigRational, BigRational)>> {
    objs.iter()
        .map(|c| {
            let hi = match maximize(a, b, c, y0) {
                LpOutcome::Optimal(v) => v,
                LpOutcome::Unbounded => return None,
            };
            let neg: Vec<Q> = c.iter().map(|x| -x).collect();
            let lo = match maximize(a, b, &neg, y0) {
                LpOutcome::Optimal(v) => -v,
                LpOutcome::Unbounded => return None,
            };
            Some((lo, hi))
        })
        .collect()
}
