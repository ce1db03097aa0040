//! Seeded random instance generators shared by the property and acceptance
//! suites. All distributions are fixed here so every run is reproducible.
#![allow(dead_code)] // each test binary uses its own subset of the helpers

use num_bigint::BigInt;
use num_rational::BigRational;
use polynorm::poly::{ExponentVector, LaurentPolynomial};
use polynorm::DualVector;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qs(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&n| q(n)).collect()
}

/// Random nonzero polynomial with up to `max_terms` terms, exponents in
/// [-exp_bound, exp_bound] and coefficients in [-9, 9] \ {0}.
pub fn gen_poly(
    rng: &mut ChaCha8Rng,
    num_vars: usize,
    max_terms: usize,
    exp_bound: i64,
) -> LaurentPolynomial {
    loop {
        let terms = rng.gen_range(1..=max_terms);
        let f = LaurentPolynomial::from_terms(
            num_vars,
            (0..terms).map(|_| {
                let exps: Vec<BigInt> = (0..num_vars)
                    .map(|_| BigInt::from(rng.gen_range(-exp_bound..=exp_bound)))
                    .collect();
                let mut c = 0;
                while c == 0 {
                    c = rng.gen_range(-9i64..=9);
                }
                (ExponentVector(exps), BigInt::from(c))
            }),
        );
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random polynomial with at least `min_terms` distinct terms.
pub fn gen_poly_min_terms(
    rng: &mut ChaCha8Rng,
    num_vars: usize,
    min_terms: usize,
    max_terms: usize,
    exp_bound: i64,
) -> LaurentPolynomial {
    loop {
        let f = gen_poly(rng, num_vars, max_terms, exp_bound);
        if f.num_terms() >= min_terms {
            return f;
        }
    }
}

/// Random rational dual vector with numerators in [-max_num, max_num] and
/// denominators in [1, max_den].
pub fn gen_phi_rational(
    rng: &mut ChaCha8Rng,
    num_vars: usize,
    max_num: i64,
    max_den: i64,
) -> DualVector {
    (0..num_vars)
        .map(|_| {
            BigRational::new(
                BigInt::from(rng.gen_range(-max_num..=max_num)),
                BigInt::from(rng.gen_range(1..=max_den)),
            )
        })
        .collect()
}

pub fn gen_phi_integer(rng: &mut ChaCha8Rng, num_vars: usize, bound: i64) -> DualVector {
    (0..num_vars)
        .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-bound..=bound))))
        .collect()
}

/// Random binomial whose Newton polytope is a genuine segment.
pub fn gen_segment_factor(rng: &mut ChaCha8Rng, num_vars: usize, exp_bound: i64) -> LaurentPolynomial {
    loop {
        let a: Vec<BigInt> = (0..num_vars)
            .map(|_| BigInt::from(rng.gen_range(-exp_bound..=exp_bound)))
            .collect();
        let b: Vec<BigInt> = (0..num_vars)
            .map(|_| BigInt::from(rng.gen_range(-exp_bound..=exp_bound)))
            .collect();
        if a == b {
            continue;
        }
        let mut c1 = 0;
        while c1 == 0 {
            c1 = rng.gen_range(-5i64..=5);
        }
        let mut c2 = 0;
        while c2 == 0 {
            c2 = rng.gen_range(-5i64..=5);
        }
        return LaurentPolynomial::from_terms(
            num_vars,
            [
                (ExponentVector(a), BigInt::from(c1)),
                (ExponentVector(b), BigInt::from(c2)),
            ],
        );
    }
}

/// Reverse the sign of every exponent: g(t) -> g(t^-1).
pub fn reverse(g: &LaurentPolynomial) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(
        g.num_vars(),
        g.terms()
            .map(|(e, c)| (ExponentVector(e.0.iter().map(|x| -x).collect()), c.clone())),
    )
}

/// Random centrally-symmetric polynomial g(t) * g(t^-1) * t^gamma.
pub fn gen_symmetric(rng: &mut ChaCha8Rng, num_vars: usize, max_terms: usize) -> LaurentPolynomial {
    let g = gen_poly_min_terms(rng, num_vars, 2, max_terms, 3);
    let gamma: Vec<BigInt> = (0..num_vars)
        .map(|_| BigInt::from(rng.gen_range(-2i64..=2)))
        .collect();
    let shift = LaurentPolynomial::monomial(num_vars, ExponentVector(gamma), BigInt::from(1));
    g.multiply(&reverse(&g)).multiply(&shift)
}
