//! Exact rational phase-1 simplex, used for convex-position tests.
//!
//! The only consumer is the membership test "is p a convex combination of
//! the points in V": feasibility of sum(lambda_i v_i) = p, sum(lambda_i) = 1,
//! lambda >= 0. Infeasibility comes with a Farkas certificate, which is
//! exactly a functional separating p from conv(V).
#![allow(clippy::needless_range_loop)] // pivoting reads one row while writing another

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub enum Membership {
    /// p lies in conv(V).
    Inside,
    /// A functional with max(phi·v) over V strictly below phi·p.
    Separated { functional: Vec<BigRational> },
}

/// Decide whether `target` is a convex combination of `points`, by phase-1
/// simplex with Bland's rule (exact arithmetic, guaranteed termination).
pub fn convex_membership(points: &[&[BigRational]], target: &[BigRational]) -> Membership {
    let d = target.len();
    let rows = d + 1;
    let cols = points.len();

    // Constraint matrix: one column per lambda, rows = coordinates + the
    // convexity row; b = (target, 1). Flip rows to make b nonnegative.
    let mut flip = vec![false; rows];
    let mut b: Vec<BigRational> = target.to_vec();
    b.push(BigRational::one());
    for (i, bi) in b.iter_mut().enumerate() {
        if bi.is_negative() {
            flip[i] = true;
            *bi = -bi.clone();
        }
    }
    let entry = |i: usize, j: usize| -> BigRational {
        let raw = if i < d {
            points[j][i].clone()
        } else {
            BigRational::one()
        };
        if flip[i] {
            -raw
        } else {
            raw
        }
    };

    // Dense tableau over columns [lambda | artificials], starting from the
    // all-artificial basis. Objective: minimize the sum of artificials.
    let width = cols + rows;
    let mut t: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..cols).map(|j| entry(i, j)).collect();
            for k in 0..rows {
                row.push(if k == i {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
            }
            row.push(b[i].clone());
            row
        })
        .collect();
    // Objective row holds the negated reduced costs: z_j - c_j. With the
    // artificial basis, z_j = sum of column j over the constraint rows.
    let mut obj: Vec<BigRational> = (0..=width)
        .map(|j| {
            let mut s = BigRational::zero();
            for row in &t {
                s += &row[j];
            }
            if (cols..width).contains(&j) {
                s -= BigRational::one();
            }
            s
        })
        .collect();
    let mut basis: Vec<usize> = (cols..width).collect();

    // Bland: entering column = lowest index with positive obj entry.
    while let Some(enter) = (0..width).find(|&j| obj[j].is_positive()) {
        // Ratio test; Bland tie-break on the smallest basis variable.
        let mut leave: Option<usize> = None;
        let mut best: Option<BigRational> = None;
        for i in 0..rows {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width] / &t[i][enter];
                let better = match &best {
                    None => true,
                    Some(r) => {
                        ratio < *r || (ratio == *r && basis[i] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else {
            // Phase-1 objective is bounded below by 0, so this cannot happen.
            unreachable!("unbounded phase-1 simplex");
        };
        // Pivot.
        let inv = t[leave][enter].recip();
        for x in t[leave].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != leave && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..=width {
                    let sub = &f * &t[leave][j];
                    t[i][j] -= sub;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for j in 0..=width {
                let sub = &f * &t[leave][j];
                obj[j] -= sub;
            }
        }
        basis[leave] = enter;
    }

    // Optimal value of the phase-1 objective: sum of artificials.
    let mut value = BigRational::zero();
    for (i, &bv) in basis.iter().enumerate() {
        if bv >= cols {
            value += &t[i][width];
        }
    }
    if value.is_zero() {
        return Membership::Inside;
    }

    // Farkas: y_i = 1 - reduced_cost(artificial_i) = 1 + obj[cols + i] - ...
    // The obj row stores z_j - c_j, and for artificial i, z_j = y_i with
    // cost 1, so y_i = obj[cols+i] + 1. Undo the row flips.
    let mut y: Vec<BigRational> = (0..rows)
        .map(|i| &obj[cols + i] + BigRational::one())
        .collect();
    for (i, yi) in y.iter_mut().enumerate() {
        if flip[i] {
            *yi = -yi.clone();
        }
    }
    let functional = y[..d].to_vec();
    let offset = y[d].clone();
    // The Farkas certificate (phi, c) satisfies phi·v + c <= 0 on V and
    // phi·p + c > 0, so phi strictly separates p from conv(V).
    debug_assert!(points.iter().all(|v| {
        let mut s = offset.clone();
        for (c, x) in functional.iter().zip(*v) {
            s += c * x;
        }
        !s.is_positive()
    }));
    debug_assert!({
        let mut s = offset;
        for (c, x) in functional.iter().zip(target) {
            s += c * x;
        }
        s.is_positive()
    });
    Membership::Separated { functional }
}
