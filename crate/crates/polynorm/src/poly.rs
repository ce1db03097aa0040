//! Multivariate Laurent polynomials with integer coefficients: canonical
//! sparse representation, ring arithmetic, support extraction, symmetry
//! detection and single-variable specialization.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("operation not defined for the zero polynomial")]
    ZeroPolynomial,
    #[error("dual vector has {got} entries, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dual vector entry {0} is not an integer")]
    NonIntegerEntry(String),
}

/// An exponent vector in Z^n. Ordered lexicographically, which is the
/// canonical term order throughout the crate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(pub Vec<BigInt>);

impl ExponentVector {
    pub fn zeros(n: usize) -> Self {
        ExponentVector(vec![BigInt::zero(); n])
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        ExponentVector(entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Pairing with a rational dual vector.
    pub fn pair(&self, phi: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, p) in self.0.iter().zip(phi) {
            acc += BigRational::from_integer(e.clone()) * p;
        }
        acc
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.0.iter().cloned().map(BigRational::from_integer).collect()
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A Laurent polynomial in canonical form: a finite map from exponent
/// vectors to nonzero integer coefficients. Two polynomials are equal iff
/// their term maps are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPolynomial {
    num_vars: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero(num_vars: usize) -> Self {
        LaurentPolynomial {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, BigInt::one())
    }

    pub fn constant(num_vars: usize, c: BigInt) -> Self {
        Self::monomial(num_vars, ExponentVector::zeros(num_vars), c)
    }

    pub fn monomial(num_vars: usize, exps: ExponentVector, c: BigInt) -> Self {
        assert_eq!(exps.len(), num_vars, "exponent vector length mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPolynomial { num_vars, terms }
    }

    /// The monomial t_i.
    pub fn variable(num_vars: usize, index: usize) -> Self {
        assert!(index < num_vars, "variable index out of range");
        let mut exps = ExponentVector::zeros(num_vars);
        exps.0[index] = BigInt::one();
        Self::monomial(num_vars, exps, BigInt::one())
    }

    /// Build from raw terms: duplicate exponents are summed and zero sums
    /// dropped, so the result is canonical.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, BigInt)>,
    {
        let mut map: BTreeMap<ExponentVector, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), num_vars, "exponent vector length mismatch");
            let entry = map.entry(e).or_insert_with(BigInt::zero);
            *entry += c;
        }
        map.retain(|_, c| !c.is_zero());
        LaurentPolynomial { num_vars, terms: map }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &ExponentVector) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// The set of exponent vectors with nonzero coefficient, in canonical
    /// (lexicographic) order.
    pub fn support(&self) -> Vec<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    pub fn neg(&self) -> Self {
        LaurentPolynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.num_vars, other.num_vars, "variable count mismatch");
        Self::from_terms(
            self.num_vars,
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Ring product. Zero coefficients produced by cancellation are dropped.
    ///
    /// Panics when variable counts differ.
    pub fn multiply(&self, other: &Self) -> Self {
        assert_eq!(self.num_vars, other.num_vars, "variable count mismatch");
        let mut map: BTreeMap<ExponentVector, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.add(eb);
                let entry = map.entry(e).or_insert_with(BigInt::zero);
                *entry += ca * cb;
            }
        }
        map.retain(|_, c| !c.is_zero());
        LaurentPolynomial {
            num_vars: self.num_vars,
            terms: map,
        }
    }

    /// f^k by binary exponentiation; f^0 is the constant 1.
    pub fn power(&self, k: u32) -> Self {
        let mut acc = Self::one(self.num_vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.multiply(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.multiply(&base);
            }
        }
        acc
    }

    /// Center of the reflection symmetry alpha -> 2c - alpha, when one
    /// exists: the reflection must permute the support and match the
    /// coefficients up to one global sign. Returns `None` otherwise.
    ///
    /// The candidate center is forced: a reflection fixes the barycenter of
    /// the support, so only the barycenter needs to be verified.
    pub fn symmetry_center(&self) -> Result<Option<Vec<BigRational>>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let count = BigInt::from(self.terms.len());
        let mut sums = vec![BigInt::zero(); self.num_vars];
        for e in self.terms.keys() {
            for (s, x) in sums.iter_mut().zip(&e.0) {
                *s += x;
            }
        }
        let center: Vec<BigRational> = sums
            .into_iter()
            .map(|s| BigRational::new(s, count.clone()))
            .collect();
        // Entries must be half-integers for the reflection to map Z^n to Z^n.
        let two = BigInt::from(2);
        if center.iter().any(|c| (c * BigRational::from_integer(two.clone())).denom() != &BigInt::one()) {
            return Ok(None);
        }
        let double_center: Vec<BigInt> = center
            .iter()
            .map(|c| (c * BigRational::from_integer(two.clone())).to_integer())
            .collect();
        for sign in [1i64, -1] {
            let sign = BigInt::from(sign);
            let ok = self.terms.iter().all(|(e, c)| {
                let reflected = ExponentVector(
                    double_center.iter().zip(&e.0).map(|(d, x)| d - x).collect(),
                );
                self.terms.get(&reflected).is_some_and(|rc| rc == &(&sign * c))
            });
            if ok {
                return Ok(Some(center));
            }
        }
        Ok(None)
    }

    /// The single-variable polynomial f(t^phi_1, ..., t^phi_n) for an
    /// integer dual vector phi.
    pub fn specialize(&self, phi: &[BigRational]) -> Result<UnivariatePolynomial, PolyError> {
        if phi.len() != self.num_vars {
            return Err(PolyError::DimensionMismatch {
                expected: self.num_vars,
                got: phi.len(),
            });
        }
        let phi_int: Vec<BigInt> = phi
            .iter()
            .map(|p| {
                if p.is_integer() {
                    Ok(p.to_integer())
                } else {
                    Err(PolyError::NonIntegerEntry(p.to_string()))
                }
            })
            .collect::<Result<_, _>>()?;
        let mut terms: BTreeMap<BigInt, BigInt> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut exp = BigInt::zero();
            for (p, x) in phi_int.iter().zip(&e.0) {
                exp += p * x;
            }
            let entry = terms.entry(exp).or_insert_with(BigInt::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(UnivariatePolynomial { terms })
    }

    /// Canonical text form, parseable by the expression parser. Terms are
    /// listed in ascending lexicographic exponent order.
    pub fn to_text(&self, vars: &[String]) -> String {
        assert_eq!(vars.len(), self.num_vars, "variable name count mismatch");
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mono: Vec<String> = e
                .0
                .iter()
                .zip(vars)
                .filter(|(x, _)| !x.is_zero())
                .map(|(x, v)| {
                    if x.is_one() {
                        v.clone()
                    } else {
                        format!("{v}^{x}")
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

/// A Laurent polynomial in one variable; may be zero (empty term map).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UnivariatePolynomial {
    terms: BTreeMap<BigInt, BigInt>,
}

impl UnivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (BigInt, BigInt)>,
    {
        let mut map: BTreeMap<BigInt, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            let entry = map.entry(e).or_insert_with(BigInt::zero);
            *entry += c;
        }
        map.retain(|_, c| !c.is_zero());
        UnivariatePolynomial { terms: map }
    }

    pub fn from_i64_terms(terms: &[(i64, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(e, c)| (BigInt::from(e), BigInt::from(c))))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, &BigInt)> {
        self.terms.iter()
    }

    pub fn min_exponent(&self) -> Option<&BigInt> {
        self.terms.keys().next()
    }

    pub fn max_exponent(&self) -> Option<&BigInt> {
        self.terms.keys().next_back()
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let mut map: BTreeMap<BigInt, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let entry = map.entry(ea + eb).or_insert_with(BigInt::zero);
                *entry += ca * cb;
            }
        }
        map.retain(|_, c| !c.is_zero());
        UnivariatePolynomial { terms: map }
    }

    /// Largest exponent minus smallest exponent. The zero polynomial has no
    /// degree span; callers must treat that case explicitly.
    pub fn degree_span(&self) -> Result<BigInt, PolyError> {
        let min = self.terms.keys().next().ok_or(PolyError::ZeroPolynomial)?;
        let max = self.terms.keys().next_back().unwrap();
        Ok(max - min)
    }
}
