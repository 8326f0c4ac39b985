use std::collections::BTreeSet;

use mukai_core::field::{Field, Rationals};
use mukai_core::forms::*;
use mukai_core::Matrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Whether `a x^2 + b y^2 = z^2` has a solution mod `p^k` with `(x, y, z)` not all divisible by `p`.
fn brute_force_symbol(a: i64, b: i64, p: u64, k: u32) -> i32 {
    let m = p.pow(k) as i64;
    let mut unit_square = vec![false; m as usize];
    let mut any_square = vec![false; m as usize];
    for z in 0..m {
        let r = (z * z % m) as usize;
        any_square[r] = true;
        if z % p as i64 != 0 {
            unit_square[r] = true;
        }
    }
    let (a, b) = (a.rem_euclid(m), b.rem_euclid(m));
    for x in 0..m {
        let ax = a * (x * x % m) % m;
        for y in 0..m {
            let r = ((ax + b * (y * y % m)) % m) as usize;
            let primitive_xy = x % p as i64 != 0 || y % p as i64 != 0;
            if (primitive_xy && any_square[r]) || unit_square[r] {
                return 1;
            }
        }
    }
    -1
}

fn squarefree_part(n: i64) -> i64 {
    let mut n = n;
    let mut k = 2;
    while k * k <= n.abs() {
        while n % (k * k) == 0 {
            n /= k * k;
        }
        k += 1;
    }
    n
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let a = rng.gen_range(-bound..=bound);
        if a != 0 {
            return a;
        }
    }
}

#[test]
fn hilbert_symbol_matches_local_solvability() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..500 {
        let (a, b) = (nonzero(&mut rng, 50), nonzero(&mut rng, 50));
        let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        let k = if p == 2 { 6 } else { 4 };
        let expected = brute_force_symbol(squarefree_part(a), squarefree_part(b), p, k);
        assert_eq!(hilbert_symbol(&q(a), &q(b), Place::Prime(p)), expected, "({a},{b})_{p}");
    }
    for _ in 0..40 {
        let (a, b) = (nonzero(&mut rng, 50), nonzero(&mut rng, 50));
        for p in [11u64, 13] {
            let expected = brute_force_symbol(squarefree_part(a), squarefree_part(b), p, 3);
            assert_eq!(hilbert_symbol(&q(a), &q(b), Place::Prime(p)), expected, "({a},{b})_{p}");
        }
    }
}

#[test]
fn hilbert_symbol_is_bimultiplicative_and_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for v in [Place::Prime(2), Place::Prime(3), Place::Prime(5), Place::Prime(7), Place::Infinity] {
        for _ in 0..500 {
            let (a, b, c) = (nonzero(&mut rng, 60), nonzero(&mut rng, 60), nonzero(&mut rng, 60));
            let s = |x: i64, y: i64| hilbert_symbol(&q(x), &q(y), v);
            assert_eq!(s(a, b * c), s(a, b) * s(a, c));
            assert_eq!(s(a, b), s(b, a));
        }
    }
}

#[test]
fn hilbert_reciprocity_on_random_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for i in 0..200 {
        let f = random_form(2 + i % 9, 40, &mut rng);
        let places = relevant_places(f.entries());
        let product: i32 = places.iter().map(|&v| hasse_invariant(&f, v)).product();
        assert_eq!(product, 1);
        assert_eq!(local_profile(&f).hasse_minus.len() % 2, 0);
    }
}

#[test]
fn hasse_invariant_is_independent_of_the_diagonalization() {
    let r = Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    while done < 100 {
        let n = rng.gen_range(2..=6);
        let mut m = Matrix::zeros(&r, n, n);
        for i in 0..n {
            for j in i..n {
                let v = r.from_i64(rng.gen_range(-5..=5));
                m.set(i, j, v.clone());
                m.set(j, i, v);
            }
        }
        let Ok(d1) = diagonalize(&m) else { continue };
        let d2 = diagonalize_randomized(&m, &mut rng).unwrap();
        assert_eq!(local_profile(&d1), local_profile(&d2));
        done += 1;
    }
}

#[test]
fn trivial_disc_rank_ten_hasse_sets_are_scaling_stable() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..500 {
        let head = random_form(9, 30, &mut rng);
        let last = -head.det_class();
        let f = head.sum(&DiagonalForm::new(&[BigRational::from_integer(last)]).unwrap());
        assert!(local_profile(&f).disc.is_one());
        let c = BigRational::new(nonzero(&mut rng, 200).into(), rng.gen_range(1..=50).into());
        let g = f.scaled(&c).unwrap();
        assert_eq!(local_profile(&f).finite_hasse_minus(), local_profile(&g).finite_hasse_minus());
        assert!(are_similar(&f, &g));
    }
}

fn even_sets() -> Vec<BTreeSet<u64>> {
    [&[][..], &[2, 3], &[2, 5], &[3, 5], &[2, 7], &[3, 7], &[5, 7], &[2, 3, 5, 7], &[11, 13], &[2, 11]]
        .iter()
        .map(|s| s.iter().copied().collect())
        .collect()
}

#[test]
fn qs_family_is_pairwise_non_similar() {
    let report = qs_family(&even_sets(), TrivialityReading::Disc).unwrap();
    assert_eq!(report.forms.len(), 10);
    assert!(report.pairwise_non_similar, "{:?}", report.similar_pairs);
    for (set, profile) in report.sets.iter().zip(&report.profiles) {
        assert_eq!(&profile.finite_hasse_minus(), set);
        assert!(profile.disc.is_one());
    }
    let q23 = &report.forms[1];
    let scaled = q23.scaled(&BigRational::from_integer(7.into())).unwrap();
    assert_eq!(local_profile(&scaled).finite_hasse_minus(), [2, 3].into_iter().collect());
    let odd: BTreeSet<u64> = [2].into_iter().collect();
    assert!(matches!(q_s(&odd, TrivialityReading::Disc), Err(mukai_core::Error::InconsistentInvariants(_))));
}

#[test]
fn det_reading_loses_scaling_stability() {
    let report = qs_family(&even_sets(), TrivialityReading::Det).unwrap();
    for (set, profile) in report.sets.iter().zip(&report.profiles) {
        assert_eq!(&profile.finite_hasse_minus(), set);
        assert_eq!(profile.signature, (10, 0));
    }
    // symmetric differences inside {2} and primes 3 mod 4 collapse under scaling
    assert!(report.similar_pairs.contains(&(0, 1)));
    let scaled = report.forms[1].scaled(&BigRational::from_integer(7.into())).unwrap();
    assert_ne!(local_profile(&scaled).finite_hasse_minus(), [2, 3].into_iter().collect());
}

#[test]
fn ninefold_splitting_matches_signature_rule() {
    for s in 0..=7usize {
        let built = construct_with_invariants(7, &BigInt::one(), &BTreeSet::new(), (7 - s, s));
        assert_eq!(built.is_ok(), s == 0 || s == 4, "s = {s}");
        if let Ok(f) = built {
            assert_eq!(predicate_assumptions(&f, TrivialityReading::Disc).unwrap().clifford_m8, Some(true));
        }
    }
    let f = DiagonalForm::from_integers(&[1, 1, 1, -1, -1, -1, -1]).unwrap();
    let m8 = predicate_assumptions(&f, TrivialityReading::Disc).unwrap().clifford_m8.unwrap();
    let rep = f.scaled(&BigRational::from_integer(local_profile(&f).det)).unwrap();
    let s = local_profile(&rep).signature.1;
    assert_eq!(m8, local_profile(&rep).hasse_minus.is_empty());
    if m8 {
        assert!(s == 0 || s == 4);
    }
}
