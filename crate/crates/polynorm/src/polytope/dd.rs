//! Double description: extreme rays of a pointed polyhedral cone
//! {y : row · y >= 0 for every row}, in exact rational arithmetic.
//!
//! The incremental step keeps the nonnegative rays plus one combined ray
//! per adjacent (positive, negative) pair, with the combinatorial
//! adjacency test. The cone must be pointed and the rows must have full
//! column rank; both hold for the two uses in this crate (facets of a
//! full-dimensional polytope, vertices of a bounded full-dimensional
//! H-polytope).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::linalg;

/// Zero sets over the processed constraints, as a small bitset.
#[derive(Debug, Clone, PartialEq, Eq)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn new(len: usize) -> Self {
        ZeroSet(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersect(&self, other: &Self) -> Self {
        ZeroSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn contains_all(&self, other: &Self) -> bool {
        other.0.iter().zip(&self.0).all(|(o, s)| o & !s == 0)
    }
}

struct Ray {
    dir: Vec<BigInt>,
    zeros: ZeroSet,
}

fn eval(row: &[BigRational], dir: &[BigInt]) -> BigRational {
    let mut acc = BigRational::zero();
    for (r, d) in row.iter().zip(dir) {
        acc += r * BigRational::from_integer(d.clone());
    }
    acc
}

/// Extreme rays of {y : rows · y >= 0}, each scaled to a primitive integer
/// vector. Returns `None` when the rows do not have full column rank (the
/// cone is not pointed, or the input is degenerate).
pub fn extreme_rays(rows: &[Vec<BigRational>], dim: usize) -> Option<Vec<Vec<BigInt>>> {
    let rows: Vec<Vec<BigRational>> = rows
        .iter()
        .filter(|r| !r.iter().all(|x| x.is_zero()))
        .cloned()
        .collect();
    let total = rows.len();
    if dim == 0 {
        return Some(Vec::new());
    }

    // Initial simplicial cone from the first `dim` linearly independent rows.
    let mut chosen: Vec<usize> = Vec::new();
    let mut staged: Vec<Vec<BigRational>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        staged.push(row.clone());
        if linalg::rank(&staged) == staged.len() {
            chosen.push(i);
            if chosen.len() == dim {
                break;
            }
        } else {
            staged.pop();
        }
    }
    if chosen.len() < dim {
        return None;
    }
    let inverse = linalg::invert(&staged)?;
    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let col: Vec<BigRational> = inverse.iter().map(|r| r[j].clone()).collect();
            let dir = linalg::primitive_integer(&col);
            let mut zeros = ZeroSet::new(total);
            for (k, &ci) in chosen.iter().enumerate() {
                if k != j {
                    zeros.set(ci);
                }
            }
            Ray { dir, zeros }
        })
        .collect();

    for (ci, row) in rows.iter().enumerate() {
        if chosen.contains(&ci) {
            continue;
        }
        let values: Vec<BigRational> = rays.iter().map(|r| eval(row, &r.dir)).collect();
        let mut keep: Vec<Ray> = Vec::new();
        let mut pos: Vec<usize> = Vec::new();
        let mut neg: Vec<usize> = Vec::new();
        for (i, v) in values.iter().enumerate() {
            if v.is_zero() {
                pos.push(i); // zero rays survive; grouped with pos for pairing exclusion
            } else if v.is_positive() {
                pos.push(i);
            } else {
                neg.push(i);
            }
        }
        let mut new_rays: Vec<Ray> = Vec::new();
        for &p in &pos {
            if values[p].is_zero() {
                // mark the new tight constraint
                let mut z = rays[p].zeros.clone();
                z.set(ci);
                new_rays.push(Ray {
                    dir: rays[p].dir.clone(),
                    zeros: z,
                });
            } else {
                new_rays.push(Ray {
                    dir: rays[p].dir.clone(),
                    zeros: rays[p].zeros.clone(),
                });
            }
        }
        for &p in &pos {
            if values[p].is_zero() {
                continue;
            }
            for &q in &neg {
                let common = rays[p].zeros.intersect(&rays[q].zeros);
                // Combinatorial adjacency: no third ray's zero set contains
                // the common zero set.
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == q || !r.zeros.contains_all(&common));
                if !adjacent {
                    continue;
                }
                // Positive combination zeroing the new constraint.
                let vp = &values[p];
                let vq = &values[q];
                let dir: Vec<BigRational> = rays[p]
                    .dir
                    .iter()
                    .zip(&rays[q].dir)
                    .map(|(dp, dq)| {
                        vp * BigRational::from_integer(dq.clone())
                            - vq * BigRational::from_integer(dp.clone())
                    })
                    .collect();
                let dir = linalg::primitive_integer(&dir);
                let mut zeros = common.clone();
                zeros.set(ci);
                new_rays.push(Ray { dir, zeros });
            }
        }
        keep.append(&mut new_rays);
        rays = keep;
    }

    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.dir).collect();
    out.sort();
    out.dedup();
    Some(out)
}
