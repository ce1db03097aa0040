//! Acceptance suite: one test per criterion, each asserting its exact
//! (tolerance-zero) conditions and its runtime bound, and printing a
//! PASS line on success (run with `--nocapture` to see them).

mod common;

use std::time::{Duration, Instant};

use common::*;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

use polynorm::lattice;
use polynorm::norm::{self, BallDescription, Factorization, SpecializedNorm};
use polynorm::oracle;
use polynorm::parser::parse;
use polynorm::poly::LaurentPolynomial;
use polynorm::polytope;
use polynorm::{DualVector, RationalVector};

fn borromean() -> LaurentPolynomial {
    parse("(t1-1)*(t2-1)*(t3-1)", None).unwrap().0
}

fn great_circle() -> LaurentPolynomial {
    parse(
        "(t1*t2*t3*t4*t5*t6-1)^2*(t1^-1*t2^-1*t3^-1*t4*t5*t6-1)^2",
        None,
    )
    .unwrap()
    .0
}

fn finish(name: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    assert!(
        elapsed < budget,
        "{name} exceeded its runtime budget: {elapsed:?} >= {budget:?}"
    );
    println!("acceptance {name}: PASS ({elapsed:.2?})");
}

#[test]
fn criterion_01_borromean_golden() {
    let start = Instant::now();
    let f = borromean();
    let mut r = rng(0xacce_0001);
    for _ in 0..50 {
        let phi = gen_phi_rational(&mut r, 3, 7, 7);
        let expected: BigRational = phi.iter().map(|x| x.abs()).sum();
        assert_eq!(norm::norm_def(&f, &phi).unwrap(), expected);
    }
    let ball = match norm::reduced_ball(&f).unwrap() {
        BallDescription::Ball(b) => b,
        BallDescription::WholeDualSpace { .. } => panic!("borromean is not a monomial"),
    };
    assert_eq!(ball.essential_dim(), 3);
    assert_eq!(ball.inessential_dim(), 0);
    let mut expected = polytope::points_i64(&[
        &[1, 0, 0],
        &[-1, 0, 0],
        &[0, 1, 0],
        &[0, -1, 0],
        &[0, 0, 1],
        &[0, 0, -1],
    ]);
    expected.sort();
    assert_eq!(ball.reduced_ball().vertices(), &expected[..]);
    finish("1 (Borromean golden)", start, Duration::from_secs(1));
}

#[test]
fn criterion_02_great_circle_golden() {
    let start = Instant::now();
    let f = great_circle();
    let ball = match norm::reduced_ball(&f).unwrap() {
        BallDescription::Ball(b) => b,
        BallDescription::WholeDualSpace { .. } => panic!("not a monomial"),
    };
    assert_eq!(ball.essential_dim(), 2);
    assert_eq!(ball.inessential_dim(), 4);
    let mut r = rng(0xacce_0002);
    let two = q(2);
    for _ in 0..50 {
        let phi = gen_phi_rational(&mut r, 6, 7, 7);
        let s1: BigRational = phi.iter().cloned().sum();
        let s2: BigRational = -&phi[0] - &phi[1] - &phi[2] + &phi[3] + &phi[4] + &phi[5];
        let expected = &two * s1.abs() + &two * s2.abs();
        assert_eq!(norm::norm_def(&f, &phi).unwrap(), expected);
    }
    let mut expected: Vec<RationalVector> = vec![
        vec![qr(1, 4), qr(1, 4)],
        vec![qr(-1, 4), qr(-1, 4)],
        vec![qr(1, 4), qr(-1, 4)],
        vec![qr(-1, 4), qr(1, 4)],
    ];
    expected.sort();
    assert_eq!(ball.reduced_ball().vertices(), &expected[..]);
    // Degeneracy witnessed.
    assert_eq!(norm::norm_def(&f, &qs(&[1, -1, 0, 0, 0, 0])).unwrap(), q(0));
    finish("2 (great-circle golden)", start, Duration::from_secs(1));
}

#[test]
fn criterion_03_route_equivalence() {
    let start = Instant::now();
    let mut r = rng(0xacce_0003);
    for _ in 0..1000 {
        let n = r.gen_range(1..=4);
        let f = gen_poly(&mut r, n, 12, 5);
        let phi = gen_phi_rational(&mut r, n, 7, 7);
        let by_def = norm::norm_def(&f, &phi).unwrap();
        assert_eq!(norm::norm_geometric(&f, &phi).unwrap(), by_def);
        assert_eq!(oracle::norm_bruteforce_points(&f, &phi).unwrap(), by_def);

        let phi_int = gen_phi_integer(&mut r, n, 5);
        let by_def_int = norm::norm_def(&f, &phi_int).unwrap();
        let image = f.specialize(&phi_int).unwrap();
        match norm::norm_specialized(&f, &phi_int).unwrap() {
            SpecializedNorm::Value(v) => {
                assert_eq!(BigRational::from_integer(v), by_def_int);
            }
            SpecializedNorm::Indeterminate => {
                // The route may decline only when its premise genuinely
                // failed: the specialization vanished, or coefficient
                // cancellation pulled an extreme exponent strictly inside
                // the support extremes (so its degree span undershoots).
                if !image.is_zero() {
                    let span = image.degree_span().unwrap();
                    assert!(
                        BigRational::from_integer(span) < by_def_int,
                        "route declined although the degree span is intact"
                    );
                }
            }
        }
        // Every vanished specialization must be reported as indeterminate.
        if image.is_zero() {
            assert_eq!(
                norm::norm_specialized(&f, &phi_int).unwrap(),
                SpecializedNorm::Indeterminate
            );
        }
    }
    finish("3 (route equivalence, 1000 instances)", start, Duration::from_secs(60));
}

#[test]
fn criterion_04_decomposition() {
    let start = Instant::now();
    let mut r = rng(0xacce_0004);
    for _ in 0..500 {
        let n = r.gen_range(1..=3);
        let f = gen_poly(&mut r, n, 8, 5);
        let g = gen_poly(&mut r, n, 8, 5);
        let phi = gen_phi_rational(&mut r, n, 7, 7);
        let product = f.multiply(&g);
        assert_eq!(
            norm::norm_def(&product, &phi).unwrap(),
            norm::norm_def(&f, &phi).unwrap() + norm::norm_def(&g, &phi).unwrap()
        );
        let k = r.gen_range(1..=3u32);
        assert_eq!(
            norm::norm_def(&f.power(k), &phi).unwrap(),
            q(k as i64) * norm::norm_def(&f, &phi).unwrap()
        );
        // The decomposition operation itself, with the checked factorization.
        let fact = Factorization::new(vec![(f.clone(), 1), (g.clone(), 1)]);
        assert_eq!(
            norm::norm_decomposed(&fact, &product, &phi).unwrap(),
            norm::norm_def(&product, &phi).unwrap()
        );
    }
    finish("4 (decomposition, 500 pairs)", start, Duration::from_secs(60));
}

#[test]
fn criterion_05_minkowski() {
    let start = Instant::now();
    let mut r = rng(0xacce_0005);
    for _ in 0..200 {
        let n = r.gen_range(1..=3);
        let f = gen_poly(&mut r, n, 8, 5);
        let g = gen_poly(&mut r, n, 8, 5);
        let hull = |p: &LaurentPolynomial| {
            polytope::hull_vertices(&p.support().iter().map(|e| e.to_rational()).collect::<Vec<_>>())
                .unwrap()
        };
        let product = f.multiply(&g);
        let nf = hull(&f);
        let ng = hull(&g);
        let sum = polytope::minkowski_sum(&nf, &ng).unwrap();
        assert_eq!(
            hull(&product).vertices(),
            sum.vertices(),
            "Minkowski sum mismatch"
        );
        let k = r.gen_range(2..=3u32);
        let powered = hull(&f.power(k));
        let dilated = polytope::dilate(&nf, &q(k as i64)).unwrap();
        assert_eq!(powered.vertices(), dilated.vertices());
    }
    finish("5 (Minkowski, 200 pairs)", start, Duration::from_secs(60));
}

#[test]
fn criterion_06_ball_consistency() {
    let start = Instant::now();
    let mut r = rng(0xacce_0006);
    let step = qr(1, 8);
    let radius = q(2);
    let mut done = 0;
    let mut attempts = 0;
    while done < 100 {
        attempts += 1;
        assert!(attempts < 10_000, "generator failed to hit target dims");
        // Mostly m = 2, some m = 3 (the sweep is cubic in the grid size).
        let target_m = if done % 10 == 0 { 3 } else { 2 };
        let f = gen_poly_min_terms(&mut r, target_m, 3, 8, 3);
        let red = lattice::reduce(&f).unwrap();
        if red.essential_dim() != target_m {
            continue;
        }
        let ball = match norm::reduced_ball(&f).unwrap() {
            BallDescription::Ball(b) => b,
            BallDescription::WholeDualSpace { .. } => continue,
        };
        // Membership sweep agrees with the H-representation everywhere.
        let samples = oracle::ball_membership_sweep(&f, &step, &radius).unwrap();
        for s in &samples {
            assert_eq!(
                s.norm_inside, s.ball_inside,
                "sweep disagreement at {:?}",
                s.point
            );
        }
        // Every vertex has norm exactly one; vertex set centrally symmetric.
        let reduced = lattice::reduce_polynomial(&f, ball.reduction()).unwrap();
        for v in ball.reduced_ball().vertices() {
            assert_eq!(norm::norm_def(&reduced, v).unwrap(), q(1));
            let neg: RationalVector = v.iter().map(|x| -x.clone()).collect();
            assert!(ball.reduced_ball().vertices().contains(&neg));
        }
        done += 1;
    }
    finish("6 (ball consistency, 100 instances)", start, Duration::from_secs(120));
}

#[test]
fn criterion_07_symmetric_fast_path() {
    let start = Instant::now();
    let mut r = rng(0xacce_0007);
    for i in 0..100 {
        let n = r.gen_range(1..=3);
        let f = gen_symmetric(&mut r, n, 4);
        let direct = norm::reduced_ball(&f).unwrap();
        let fast = norm::symmetric_ball(&f).unwrap();
        let (direct, fast) = match (&direct, &fast) {
            (BallDescription::Ball(a), BallDescription::Ball(b)) => (a, b),
            _ => panic!("instance {i}: symmetric products are never monomials"),
        };
        assert_eq!(
            direct.reduced_ball().vertices(),
            fast.reduced_ball().vertices(),
            "instance {i}: vertex sets differ"
        );
        let halfspaces = norm::half_space_presentation_symmetric(&f).unwrap();
        assert_eq!(
            halfspaces,
            direct.reduced_ball().facets().unwrap().to_vec(),
            "instance {i}: facet presentations differ"
        );
        for _ in 0..20 {
            let phi = gen_phi_rational(&mut r, n, 7, 7);
            let by_def = norm::norm_def(&f, &phi).unwrap();
            match norm::symmetric_facet_formula(&f, &phi) {
                Ok((value, _)) => assert_eq!(value, by_def),
                Err(norm::NormError::ZeroEssentialImage) => assert!(by_def.is_zero()),
                Err(other) => panic!("unexpected error {other}"),
            }
        }
    }
    finish("7 (symmetric fast path, 100 instances)", start, Duration::from_secs(120));
}

#[test]
fn criterion_08_seminorm_axioms() {
    let start = Instant::now();
    let mut r = rng(0xacce_0008);
    for _ in 0..1000 {
        let n = r.gen_range(1..=4);
        let f = gen_poly(&mut r, n, 10, 5);
        let phi = gen_phi_rational(&mut r, n, 7, 7);
        let psi = gen_phi_rational(&mut r, n, 7, 7);
        let lambda = qr(r.gen_range(-9i64..=9), r.gen_range(1i64..=5));

        let n_phi = norm::norm_def(&f, &phi).unwrap();
        let n_psi = norm::norm_def(&f, &psi).unwrap();
        assert!(!n_phi.is_negative());

        let sum: DualVector = phi.iter().zip(&psi).map(|(a, b)| a + b).collect();
        assert!(norm::norm_def(&f, &sum).unwrap() <= &n_phi + &n_psi);

        let scaled: DualVector = phi.iter().map(|x| x * &lambda).collect();
        assert_eq!(norm::norm_def(&f, &scaled).unwrap(), lambda.abs() * &n_phi);
    }
    finish("8 (semi-norm axioms, 1000 instances)", start, Duration::from_secs(30));
}

#[test]
fn criterion_09_non_degeneracy() {
    let start = Instant::now();
    let mut r = rng(0xacce_0009);
    let mut done = 0;
    while done < 200 {
        let n = r.gen_range(1..=4);
        let f = gen_poly_min_terms(&mut r, n, 2, 8, 4);
        let red = lattice::reduce(&f).unwrap();
        if red.essential_dim() == 0 {
            continue;
        }
        let phi = gen_phi_rational(&mut r, n, 7, 7);
        let projected = lattice::project_functional(&red, &phi).unwrap();
        let value = norm::norm_def(&f, &phi).unwrap();
        // norm(phi) == 0 exactly when the essential image vanishes.
        assert_eq!(
            value.is_zero(),
            projected.iter().all(|x| x.is_zero()),
            "non-degeneracy violated"
        );
        // And a guaranteed-nonzero essential image has positive norm: pair
        // phi with a lattice basis direction when the projection vanished.
        if projected.iter().all(|x| x.is_zero()) {
            let basis_dir: DualVector = red.basis()[0]
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect();
            let nudged = norm::norm_def(&f, &basis_dir).unwrap();
            assert!(nudged.is_positive());
        } else {
            assert!(value.is_positive());
        }
        done += 1;
    }
    finish("9 (non-degeneracy, 200 instances)", start, Duration::from_secs(30));
}

#[test]
fn criterion_10_factor_ball_cross_check() {
    let start = Instant::now();
    // Both worked examples first.
    let vars3 = ["t1", "t2", "t3"];
    let borromean_fact = Factorization::new(vec![
        (parse("t1-1", Some(&vars3)).unwrap().0, 1),
        (parse("t2-1", Some(&vars3)).unwrap().0, 1),
        (parse("t3-1", Some(&vars3)).unwrap().0, 1),
    ]);
    let vars6 = ["t1", "t2", "t3", "t4", "t5", "t6"];
    let circle_fact = Factorization::new(vec![
        (parse("t1*t2*t3*t4*t5*t6-1", Some(&vars6)).unwrap().0, 2),
        (
            parse("t1^-1*t2^-1*t3^-1*t4*t5*t6-1", Some(&vars6)).unwrap().0,
            2,
        ),
    ]);
    for fact in [&borromean_fact, &circle_fact] {
        let target = fact.product();
        let from_factors = norm::factor_ball_vertices(fact).unwrap();
        let ball = match norm::reduced_ball(&target).unwrap() {
            BallDescription::Ball(b) => b,
            BallDescription::WholeDualSpace { .. } => unreachable!(),
        };
        assert_eq!(from_factors, ball.reduced_ball().vertices().to_vec());
    }

    // 50 random products of segment factors whose forms span.
    let mut r = rng(0xacce_000a);
    let mut done = 0;
    while done < 50 {
        let n = r.gen_range(2..=3);
        let k = r.gen_range(2..=4);
        let factors: Vec<(LaurentPolynomial, u32)> = (0..k)
            .map(|_| (gen_segment_factor(&mut r, n, 2), r.gen_range(1..=2u32)))
            .collect();
        let fact = Factorization::new(factors);
        let from_factors = match norm::factor_ball_vertices(&fact) {
            Ok(v) => v,
            Err(norm::NormError::FormsDoNotSpan) => continue,
            Err(other) => panic!("unexpected error {other}"),
        };
        let target = fact.product();
        let ball = match norm::reduced_ball(&target).unwrap() {
            BallDescription::Ball(b) => b,
            BallDescription::WholeDualSpace { .. } => continue,
        };
        assert_eq!(
            from_factors,
            ball.reduced_ball().vertices().to_vec(),
            "factor route disagrees with the reduced ball"
        );
        done += 1;
    }
    finish("10 (factor-ball cross-check)", start, Duration::from_secs(30));
}
