mod common;

use common::random_spec;
use morphblocks::format::{parse_rational, to_f64};
use morphblocks::linalg::{
    bool_stabilize, char_poly, dominant_eigen_interval, growing_letters, incidence_matrix, left_eigenvector, parikh,
    primitivity_check, BoolMatrix, EigenOptions,
};
use morphblocks::sequences::{exact_limit_primitive, normalize_spec, recurrence_ratio};
use morphblocks::{IntMatrix, IntVector, Letter, Rational};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn alph(word: &[Letter], n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    for l in word {
        seen[l.index()] = true;
    }
    seen
}

fn random_primitive(rng: &mut StdRng, n: usize) -> IntMatrix {
    loop {
        let rows: Vec<Vec<BigInt>> = (0..n)
            .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(0..=3))).collect())
            .collect();
        let a = IntMatrix::from_rows(rows);
        if primitivity_check(&a) {
            return a;
        }
    }
}

fn random_vec(rng: &mut StdRng, n: usize, lo: i64, hi: i64) -> IntVector {
    morphblocks::Vector((0..n).map(|_| BigInt::from(rng.gen_range(lo..=hi))).collect())
}

#[test]
fn parikh_commutes_with_incidence() {
    let mut rng = StdRng::seed_from_u64(9);
    for _ in 0..500 {
        let spec = random_spec(&mut rng, 5, 4);
        let h = spec.morphism();
        let n = h.len();
        let len = rng.gen_range(0..30);
        let u: Vec<Letter> = (0..len).map(|_| Letter(rng.gen_range(0..n) as u16)).collect();
        let a = incidence_matrix(h);
        assert_eq!(parikh(&h.apply(&u), n), a.mul_vec(&parikh(&u, n)));
    }
}

#[test]
fn incidence_of_powers() {
    let mut rng = StdRng::seed_from_u64(10);
    for _ in 0..60 {
        let spec = random_spec(&mut rng, 4, 3);
        let h = spec.morphism();
        let a = incidence_matrix(h);
        for t in 1..=6u32 {
            assert_eq!(incidence_matrix(&h.power(t as usize).unwrap()), a.pow(t));
        }
    }
}

#[test]
fn stabilized_power_is_idempotent() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..100 {
        let spec = random_spec(&mut rng, 5, 4);
        let b = BoolMatrix::pattern(&incidence_matrix(spec.morphism()));
        let st = bool_stabilize(&b);
        let be = b.pow(st.e);
        assert!(be.is_idempotent());
        assert_eq!(be.mul(&be), be);
        assert_eq!(b.pow(st.t), b.pow(st.t + st.c));
    }
}

#[test]
fn stabilized_alphabets() {
    let mut rng = StdRng::seed_from_u64(12);
    for _ in 0..100 {
        let spec = random_spec(&mut rng, 5, 3);
        let g = normalize_spec(&spec).unwrap().spec.morphism().clone();
        let n = g.len();
        for c in 0..n {
            let once = g.rule(Letter::from_index(c)).0.clone();
            let twice = g.apply(&once).0;
            assert_eq!(alph(&twice, n), alph(&once, n));
        }
    }
}

#[test]
fn growing_letters_match_iteration() {
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..100 {
        let spec = random_spec(&mut rng, 5, 3);
        let h = spec.morphism();
        let n = h.len();
        let a = incidence_matrix(h);
        let grows = growing_letters(h);
        // a bounded letter's image length is fixed after n steps
        let big = a.pow((3 * n) as u32);
        let small = a.pow(n as u32);
        for (c, &grows_c) in grows.iter().enumerate() {
            let long = big.column(c).sum();
            let short = small.column(c).sum();
            assert_eq!(grows_c, long > short, "letter {c} of {h}");
        }
    }
}

#[test]
fn cayley_hamilton() {
    let mut rng = StdRng::seed_from_u64(14);
    for _ in 0..40 {
        let n = rng.gen_range(1..=4);
        let rows: Vec<Vec<BigInt>> = (0..n)
            .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-3..=3))).collect())
            .collect();
        let a = IntMatrix::from_rows(rows);
        let p = char_poly(&a);
        let mut acc = IntMatrix::zeros(n, n);
        let mut power = IntMatrix::identity(n);
        for c in &p.coeffs {
            acc = &acc + &power.map(|x| x * c);
            power = &power * &a;
        }
        assert!(acc.to_rows().iter().flatten().all(|x| x.is_zero()));
    }
}

#[test]
fn golden_square_enclosure() {
    let a = IntMatrix::from_rows(vec![vec![2.into(), 1.into()], vec![1.into(), 1.into()]]);
    let tol = parse_rational("1e-9").unwrap();
    let iv = dominant_eigen_interval(&a, &EigenOptions::with_tol(tol.clone())).unwrap();
    assert!(&iv.hi - &iv.lo <= tol);
    let f = |x: &Rational| x * x - BigRational::from_integer(3.into()) * x + BigRational::from_integer(1.into());
    assert!(f(&iv.lo).is_negative() && f(&iv.hi).is_positive());
}

#[test]
fn eigen_interval_brackets_float_estimate() {
    let mut rng = StdRng::seed_from_u64(15);
    for _ in 0..30 {
        let n = rng.gen_range(2..=4);
        let a = random_primitive(&mut rng, n);
        let iv = dominant_eigen_interval(&a, &EigenOptions::default()).unwrap();
        let p = char_poly(&a);
        // the spectral radius is a root of the characteristic polynomial
        let sign = |x: &Rational| p.eval(x).signum();
        assert!(sign(&iv.lo) != sign(&iv.hi) || p.eval(&iv.lo).is_zero() || p.eval(&iv.hi).is_zero());
        // and dominates the growth of A^k
        let k = 60u32;
        let growth = to_f64(&BigRational::new(a.pow(k + 1).trace() + 1, a.pow(k).trace() + 1));
        assert!((growth - to_f64(&iv.lo)).abs() < 1e-3, "{growth} vs {}", iv);
    }
}

#[test]
fn left_eigenvector_is_fixed() {
    let mut rng = StdRng::seed_from_u64(16);
    for _ in 0..20 {
        let n = rng.gen_range(2..=4);
        let a = random_primitive(&mut rng, n);
        let le = left_eigenvector(&a, &EigenOptions::default()).unwrap();
        let lambda = (to_f64(&le.lambda.lo) + to_f64(&le.lambda.hi)) / 2.0;
        let l: Vec<f64> = le.center.iter().map(to_f64).collect();
        for j in 0..n {
            let lhs: f64 = (0..n)
                .map(|i| l[i] * to_f64(&BigRational::from_integer(a.get(i, j).clone())))
                .sum();
            assert!((lhs - lambda * l[j]).abs() < 1e-9);
        }
        for (c, b) in le.center.iter().zip(&le.bounds) {
            assert!(b.contains(c));
        }
    }
}

/// The certified limit contains the exact recurrence ratio at k = 40.
#[test]
fn primitive_limit_contains_recurrence() {
    let mut rng = StdRng::seed_from_u64(2024);
    let tol = parse_rational("1e-12").unwrap();
    for case in 0..40 {
        let n = rng.gen_range(2..=4);
        let a = random_primitive(&mut rng, n);
        let u = random_vec(&mut rng, n, 0, 3);
        let v = random_vec(&mut rng, n, 0, 3);
        if u.sum().is_zero() || v.sum().is_zero() {
            continue;
        }
        let (x, y) = if case % 2 == 0 {
            (IntVector::zeros(n), IntVector::zeros(n))
        } else {
            (random_vec(&mut rng, n, 0, 2), random_vec(&mut rng, n, 0, 2))
        };
        let iv = exact_limit_primitive(&a, &u, &v, &x, &y, &tol).unwrap();
        let r = recurrence_ratio(&a, &u, &v, &x, &y, 40).unwrap();
        let r80 = recurrence_ratio(&a, &u, &v, &x, &y, 80).unwrap();
        // the recurrence converges to the enclosed limit
        let dist = |q: &Rational| {
            if iv.contains(q) {
                BigRational::zero()
            } else {
                (q - &iv.lo).abs().min((q - &iv.hi).abs())
            }
        };
        assert!(dist(&r80) <= dist(&r), "case {case}");
        assert!(
            to_f64(&dist(&r80)) < 1e-9,
            "case {case}: {} not near {}",
            to_f64(&r80),
            iv
        );
    }
}

proptest! {
    #[test]
    fn matrix_power_is_repeated_product(seed in any::<u64>(), k in 0u32..8) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = rng.gen_range(1..=4);
        let rows: Vec<Vec<BigInt>> = (0..n).map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-2..=2))).collect()).collect();
        let a = IntMatrix::from_rows(rows);
        let mut p = IntMatrix::identity(n);
        for _ in 0..k {
            p = &p * &a;
        }
        prop_assert_eq!(a.pow(k), p);
    }

    #[test]
    fn transpose_swaps_vector_products(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = rng.gen_range(1..=4);
        let rows: Vec<Vec<BigInt>> = (0..n).map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-5..=5))).collect()).collect();
        let a = IntMatrix::from_rows(rows);
        let v = random_vec(&mut rng, n, -5, 5);
        prop_assert_eq!(a.vec_mul(&v), a.transpose().mul_vec(&v));
    }
}
