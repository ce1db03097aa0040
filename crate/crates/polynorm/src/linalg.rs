//! Exact linear algebra over the rationals and the integers, shared by the
//! lattice and polytope engines. Dense and unoptimized; input sizes are small.
#![allow(clippy::needless_range_loop)] // elimination reads one row while writing another

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = BigRational::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// Reduced row echelon form in place. Returns the pivot column of each
/// nonzero row, in order.
pub fn rref(rows: &mut Vec<Vec<BigRational>>) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..ncols {
                    let sub = &factor * &rows[r][j];
                    rows[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of {x : rows · x = 0}, one vector per free column of the RREF.
/// Each vector is scaled to a primitive integer vector with its first
/// nonzero entry positive; vectors are ordered by free column index.
pub fn kernel_basis(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        let prim = primitive_integer(&v);
        let mut v: Vec<BigRational> = prim.into_iter().map(BigRational::from_integer).collect();
        if let Some(first) = v.iter().position(|x| !x.is_zero()) {
            if v[first].is_negative() {
                for x in v.iter_mut() {
                    *x = -x.clone();
                }
            }
        }
        basis.push(v);
    }
    basis
}

/// Least-index solution of a (possibly rectangular) consistent system
/// `A x = b`; free variables are set to zero. `None` when inconsistent.
pub fn solve_any(a: &[Vec<BigRational>], b: &[BigRational], ncols: usize) -> Option<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.last().is_some_and(|&c| c == ncols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (row, &pc) in m.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}

pub fn invert(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
            }
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
        return None;
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Scale a rational vector by the unique positive rational making it a
/// primitive integer vector. The zero vector maps to itself.
pub fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    if v.iter().all(|x| x.is_zero()) {
        return vec![BigInt::zero(); v.len()];
    }
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Row-style Hermite normal form over the integers: echelon shape with
/// positive pivots increasing left to right and entries above each pivot
/// reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hnf(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| !r.iter().all(|x| x.is_zero()))
        .cloned()
        .collect();
    if m.is_empty() {
        return Vec::new();
    }
    let ncols = m[0].len();
    let mut top = 0;
    for c in 0..ncols {
        // Euclid on the rows at or below `top` until one nonzero entry
        // remains in column c.
        loop {
            let mut nonzero: Vec<usize> = (top..m.len()).filter(|&i| !m[i][c].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            if nonzero.len() == 1 {
                let i = nonzero[0];
                m.swap(top, i);
                break;
            }
            nonzero.sort_by(|&i, &j| m[i][c].abs().cmp(&m[j][c].abs()));
            let i = nonzero[0];
            for &j in &nonzero[1..] {
                let q = &m[j][c] / &m[i][c];
                for k in 0..ncols {
                    let sub = &q * &m[i][k];
                    m[j][k] -= sub;
                }
            }
        }
        if top < m.len() && !m[top][c].is_zero() {
            if m[top][c].is_negative() {
                for x in m[top].iter_mut() {
                    *x = -x.clone();
                }
            }
            // Reduce the entries above the pivot into [0, pivot).
            for i in 0..top {
                let q = m[i][c].div_floor(&m[top][c]);
                if !q.is_zero() {
                    for k in 0..ncols {
                        let sub = &q * &m[top][k];
                        m[i][k] -= sub;
                    }
                }
            }
            top += 1;
        }
    }
    m.truncate(top);
    m.retain(|r| !r.iter().all(|x| x.is_zero()));
    m
}

/// Integer basis of {x in Z^n : rows · x = 0}. The result is saturated
/// (it is the full intersection of the rational kernel with Z^n) and is
/// returned in Hermite normal form.
pub fn integer_kernel(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    // Unimodular row reduction of [A^T | I]: the I-halves of the rows whose
    // A^T-half reduced to zero form a basis of {x : x · A^T = 0} = {x : A x = 0}.
    let nrows = rows.len();
    let mut m: Vec<Vec<BigInt>> = (0..ncols)
        .map(|i| {
            let mut r: Vec<BigInt> = rows.iter().map(|row| row[i].clone()).collect();
            for j in 0..ncols {
                r.push(if i == j { BigInt::one() } else { BigInt::zero() });
            }
            r
        })
        .collect();
    let width = nrows + ncols;
    let mut top = 0;
    for c in 0..nrows {
        loop {
            let mut nonzero: Vec<usize> = (top..m.len()).filter(|&i| !m[i][c].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            if nonzero.len() == 1 {
                m.swap(top, nonzero[0]);
                break;
            }
            nonzero.sort_by(|&i, &j| m[i][c].abs().cmp(&m[j][c].abs()));
            let i = nonzero[0];
            for &j in &nonzero[1..] {
                let q = &m[j][c] / &m[i][c];
                for k in 0..width {
                    let sub = &q * &m[i][k];
                    m[j][k] -= sub;
                }
            }
        }
        if top < m.len() && !m[top][c].is_zero() {
            top += 1;
        }
    }
    let kernel: Vec<Vec<BigInt>> = m[top..].iter().map(|row| row[nrows..].to_vec()).collect();
    hnf(&kernel)
}
