//! Independent brute-force reference implementations, used by tests to
//! check the engine. Nothing here is called from the main code path, and
//! apart from the core types the implementations share no code with the
//! engine: the vertex check enumerates barycentric systems with its own
//! elimination, and the norm reference is the literal double loop over
//! support pairs with no hull shortcut.
#![allow(clippy::needless_range_loop)] // elimination reads one row while writing another

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice;
use crate::norm::{BallDescription, NormBall};
use crate::poly::LaurentPolynomial;
use crate::{DualVector, RationalVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("operation not defined for the zero polynomial")]
    ZeroPolynomial,
    #[error("dual vector has {got} entries, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("essential dimension {0} too large for a grid sweep")]
    DimensionTooLarge(usize),
    #[error("grid step and radius must be positive")]
    BadGrid,
    #[error("norm is identically zero; the ball is the whole dual space")]
    MonomialBall,
}

/// The literal definition: exhaustive maximum of phi(alpha - beta) over all
/// ordered support pairs.
pub fn norm_bruteforce_points(
    f: &LaurentPolynomial,
    phi: &DualVector,
) -> Result<BigRational, OracleError> {
    if f.is_zero() {
        return Err(OracleError::ZeroPolynomial);
    }
    if phi.len() != f.num_vars() {
        return Err(OracleError::DimensionMismatch {
            expected: f.num_vars(),
            got: phi.len(),
        });
    }
    let support = f.support();
    let mut best = BigRational::zero();
    for alpha in &support {
        for beta in &support {
            let mut value = BigRational::zero();
            for ((a, b), p) in alpha.0.iter().zip(&beta.0).zip(phi) {
                value += BigRational::from_integer(a - b) * p;
            }
            if value > best {
                best = value;
            }
        }
    }
    Ok(best)
}

/// Elimination tailored to the oracle: solve the barycentric system
/// "columns combine to target with weights summing to one". Returns the
/// weights when the system has a unique solution, `None` otherwise.
fn solve_barycentric(columns: &[&RationalVector], target: &RationalVector) -> Option<Vec<BigRational>> {
    let d = target.len();
    let rows = d + 1;
    let k = columns.len();
    // Augmented matrix [columns | target], last row all ones.
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<BigRational> = columns
                .iter()
                .map(|c| {
                    if i < d {
                        c[i].clone()
                    } else {
                        BigRational::one()
                    }
                })
                .collect();
            row.push(if i < d {
                target[i].clone()
            } else {
                BigRational::one()
            });
            row
        })
        .collect();
    // Forward elimination with partial ordering by first nonzero.
    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut used = vec![false; rows];
    for col in 0..k {
        let Some(r) = (0..rows).find(|&r| !used[r] && !m[r][col].is_zero()) else {
            return None; // dependent columns: skip this subset
        };
        used[r] = true;
        pivot_rows.push(r);
        let inv = m[r][col].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..=k {
                    let sub = &f * &m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
    }
    // Consistency: every non-pivot row must have zero right-hand side.
    for (i, row) in m.iter().enumerate() {
        if !used[i] && !row[k].is_zero() {
            return None;
        }
    }
    Some(pivot_rows.iter().map(|&r| m[r][k].clone()).collect())
}

/// Is the candidate point a vertex of the hull of the point set? Decided by
/// exhaustive Caratheodory enumeration: the candidate is *not* a vertex
/// exactly when some subset of at most d+1 of the other points contains it
/// in its simplex.
pub fn vertex_check_lp(points: &[RationalVector], candidate: usize) -> bool {
    let target = &points[candidate];
    let d = target.len();
    let others: Vec<&RationalVector> = points
        .iter()
        .enumerate()
        .filter(|&(i, p)| i != candidate && p != target)
        .map(|(_, p)| p)
        .collect();
    let mut subset: Vec<&RationalVector> = Vec::new();
    !search_subsets(&others, 0, d + 1, &mut subset, target)
}

fn search_subsets<'a>(
    others: &[&'a RationalVector],
    start: usize,
    max_size: usize,
    subset: &mut Vec<&'a RationalVector>,
    target: &RationalVector,
) -> bool {
    if !subset.is_empty() {
        if let Some(mu) = solve_barycentric(subset, target) {
            if mu.iter().all(|x| !x.is_negative()) {
                return true;
            }
        }
    }
    if subset.len() == max_size {
        return false;
    }
    for i in start..others.len() {
        subset.push(others[i]);
        if search_subsets(others, i + 1, max_size, subset, target) {
            subset.pop();
            return true;
        }
        subset.pop();
    }
    false
}

/// One classified grid point of a membership sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSample {
    pub point: RationalVector,
    /// norm(point) <= 1, by the oracle's own double loop over the reduced
    /// support.
    pub norm_inside: bool,
    /// membership in the engine's reduced-ball half-space representation.
    pub ball_inside: bool,
}

/// Sweep a grid over [-radius, radius]^m in the essential coordinates and
/// classify every point twice: by the definitional norm and by the
/// engine-computed ball. The two classifications must agree everywhere;
/// callers assert on the returned samples.
pub fn ball_membership_sweep(
    f: &LaurentPolynomial,
    grid_step: &BigRational,
    radius: &BigRational,
) -> Result<Vec<SweepSample>, OracleError> {
    if !grid_step.is_positive() || !radius.is_positive() {
        return Err(OracleError::BadGrid);
    }
    if f.is_zero() {
        return Err(OracleError::ZeroPolynomial);
    }
    let reduction = lattice::reduce(f).map_err(|_| OracleError::ZeroPolynomial)?;
    let m = reduction.essential_dim();
    if m == 0 {
        return Err(OracleError::MonomialBall);
    }
    if m > 3 {
        return Err(OracleError::DimensionTooLarge(m));
    }
    let ball = match crate::norm::reduced_ball(f) {
        Ok(BallDescription::Ball(b)) => b,
        Ok(BallDescription::WholeDualSpace { .. }) => return Err(OracleError::MonomialBall),
        Err(_) => return Err(OracleError::ZeroPolynomial),
    };
    // Reduced support points, shared input preparation for both routes.
    let support: Vec<Vec<BigInt>> = f
        .support()
        .iter()
        .map(|alpha| lattice::exponent_coordinates(&reduction, alpha).expect("support in lattice"))
        .collect();

    let imax = (radius / grid_step).floor().to_integer();
    let imax: i64 = i64::try_from(&imax).unwrap_or(i64::MAX);
    let mut samples = Vec::new();
    let mut index = vec![-imax; m];
    loop {
        let point: RationalVector = index
            .iter()
            .map(|&i| BigRational::from_integer(BigInt::from(i)) * grid_step)
            .collect();
        let norm = reduced_norm_bruteforce(&support, &point);
        let sample = SweepSample {
            norm_inside: norm <= BigRational::one(),
            ball_inside: ball_contains(&ball, &point),
            point,
        };
        samples.push(sample);
        // advance odometer
        let mut pos = 0;
        loop {
            if pos == m {
                return Ok(samples);
            }
            index[pos] += 1;
            if index[pos] <= imax {
                break;
            }
            index[pos] = -imax;
            pos += 1;
        }
    }
}

fn reduced_norm_bruteforce(support: &[Vec<BigInt>], phi: &RationalVector) -> BigRational {
    let mut best = BigRational::zero();
    for alpha in support {
        for beta in support {
            let mut value = BigRational::zero();
            for ((a, b), p) in alpha.iter().zip(beta).zip(phi) {
                value += BigRational::from_integer(a - b) * p;
            }
            if value > best {
                best = value;
            }
        }
    }
    best
}

fn ball_contains(ball: &NormBall, point: &RationalVector) -> bool {
    ball.contains_reduced(point).expect("reduced ball has facets")
}
