//! Essential-variable structure of a polynomial's exponent set: the rank-m
//! lattice spanned by exponent differences, an integer basis for it,
//! coordinates of exponents in that basis, and the induced projection of
//! dual vectors.
//!
//! The basis is the Hermite-normal-form basis of the *saturation* of the
//! difference lattice (the intersection of its rational span with Z^n).
//! Saturation keeps all exponent coordinates integral while making the
//! coordinate system canonical for the span, which is what the reduced
//! norm ball is expressed in.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::linalg;
use crate::poly::{ExponentVector, LaurentPolynomial};
use crate::{DualVector, RationalVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("operation not defined for the zero polynomial")]
    ZeroPolynomial,
    #[error("exponent vector lies outside the lattice")]
    OutsideLattice,
    #[error("vector has {got} entries, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Base exponent plus an integer lattice basis realizing the
/// essential-variable coordinate change for one polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeReduction {
    base: ExponentVector,
    basis: Vec<Vec<BigInt>>,
    num_vars: usize,
}

/// The image of a dual vector in the essential coordinates: entry i is the
/// action of the vector on the i-th lattice basis vector.
pub type EssentialFunctional = RationalVector;

impl LatticeReduction {
    pub fn base(&self) -> &ExponentVector {
        &self.base
    }

    /// Lattice basis rows, in Hermite normal form.
    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn essential_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn inessential_dim(&self) -> usize {
        self.num_vars - self.essential_dim()
    }
}

/// Compute the essential-variable reduction of a nonzero polynomial: the
/// base point is the lexicographically least support point and the basis
/// spans the saturation of the lattice generated by the support differences.
pub fn reduce(f: &LaurentPolynomial) -> Result<LatticeReduction, LatticeError> {
    let support = f.support();
    let base = support.first().cloned().ok_or(LatticeError::ZeroPolynomial)?;
    let n = f.num_vars();
    let diffs: Vec<Vec<BigInt>> = support
        .iter()
        .map(|a| a.0.iter().zip(&base.0).map(|(x, b)| x - b).collect())
        .collect();
    let difference_basis = linalg::hnf(&diffs);
    let basis = saturate(&difference_basis, n);
    Ok(LatticeReduction {
        base,
        basis,
        num_vars: n,
    })
}

/// HNF basis of (Q-span of `rows`) intersected with Z^n.
fn saturate(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let rational: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
        .collect();
    let annihilator = linalg::kernel_basis(&rational, n);
    if annihilator.is_empty() {
        // Full rank: the saturation is all of Z^n.
        return (0..n)
            .map(|i| {
                let mut row = vec![BigInt::zero(); n];
                row[i] = BigInt::from(1);
                row
            })
            .collect();
    }
    let annihilator_int: Vec<Vec<BigInt>> = annihilator
        .iter()
        .map(|v| linalg::primitive_integer(v))
        .collect();
    linalg::integer_kernel(&annihilator_int, n)
}

/// The unique integer coordinates of `alpha` relative to the reduction:
/// alpha - base = sum_i u_i basis_i.
pub fn exponent_coordinates(
    r: &LatticeReduction,
    alpha: &ExponentVector,
) -> Result<Vec<BigInt>, LatticeError> {
    if alpha.len() != r.num_vars {
        return Err(LatticeError::DimensionMismatch {
            expected: r.num_vars,
            got: alpha.len(),
        });
    }
    let mut rem: Vec<BigInt> = alpha
        .0
        .iter()
        .zip(&r.base.0)
        .map(|(x, b)| x - b)
        .collect();
    let mut coords = Vec::with_capacity(r.basis.len());
    // The basis is in echelon form, so peel off pivots left to right.
    for row in &r.basis {
        let pivot = row.iter().position(|x| !x.is_zero()).expect("nonzero basis row");
        let (q, rest) = num_integer::Integer::div_rem(&rem[pivot], &row[pivot]);
        if !rest.is_zero() {
            return Err(LatticeError::OutsideLattice);
        }
        for (x, b) in rem.iter_mut().zip(row) {
            *x -= &q * b;
        }
        coords.push(q);
    }
    if rem.iter().any(|x| !x.is_zero()) {
        return Err(LatticeError::OutsideLattice);
    }
    Ok(coords)
}

/// Project a dual vector to the essential coordinates by pairing it with
/// each lattice basis vector. The Laurent norm depends only on this image.
pub fn project_functional(
    r: &LatticeReduction,
    phi: &DualVector,
) -> Result<EssentialFunctional, LatticeError> {
    if phi.len() != r.num_vars {
        return Err(LatticeError::DimensionMismatch {
            expected: r.num_vars,
            got: phi.len(),
        });
    }
    Ok(r.basis
        .iter()
        .map(|row| {
            let mut acc = BigRational::zero();
            for (b, p) in row.iter().zip(phi) {
                acc += BigRational::from_integer(b.clone()) * p;
            }
            acc
        })
        .collect())
}

/// Basis of the annihilator subspace {phi : phi(basis_i) = 0 for all i} in
/// the dual space: the degenerate directions of the norm. Empty when the
/// polynomial has no inessential variables.
pub fn degenerate_directions(r: &LatticeReduction) -> Vec<DualVector> {
    let rows: Vec<Vec<BigRational>> = r
        .basis
        .iter()
        .map(|row| row.iter().cloned().map(BigRational::from_integer).collect())
        .collect();
    linalg::kernel_basis(&rows, r.num_vars)
}

/// Rational coordinates of an arbitrary vector `w` relative to the basis:
/// the unique u with w = sum_i u_i basis_i, or `None` when w lies outside
/// the rational span.
pub fn rational_coordinates(
    r: &LatticeReduction,
    w: &[BigRational],
) -> Option<Vec<BigRational>> {
    if w.len() != r.num_vars {
        return None;
    }
    let m = r.basis.len();
    // Solve G^T u = w; G has full row rank so a solution is unique.
    let a: Vec<Vec<BigRational>> = (0..r.num_vars)
        .map(|col| {
            r.basis
                .iter()
                .map(|row| BigRational::from_integer(row[col].clone()))
                .collect()
        })
        .collect();
    let u = linalg::solve_any(&a, w, m)?;
    // Consistency check: reconstruct w.
    for col in 0..r.num_vars {
        let mut acc = BigRational::zero();
        for (ui, row) in u.iter().zip(&r.basis) {
            acc += ui * BigRational::from_integer(row[col].clone());
        }
        if acc != w[col] {
            return None;
        }
    }
    Some(u)
}

/// Rewrite the polynomial in the essential coordinates: each support point
/// becomes its integer coordinate vector relative to the reduction. The
/// result has `essential_dim` variables; for a monomial it is a constant.
pub fn reduce_polynomial(
    f: &LaurentPolynomial,
    r: &LatticeReduction,
) -> Result<LaurentPolynomial, LatticeError> {
    let m = r.essential_dim();
    let mut terms = Vec::with_capacity(f.num_terms());
    for (e, c) in f.terms() {
        let coords = exponent_coordinates(r, e)?;
        terms.push((ExponentVector(coords), c.clone()));
    }
    Ok(LaurentPolynomial::from_terms(m, terms))
}
