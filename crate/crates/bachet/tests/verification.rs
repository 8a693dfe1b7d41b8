//! Cross-module agreement checks: the two counting routes, twist pairing,
//! the supersingular line, and both structure algorithms, over ranges
//! large enough to be convincing but quick under `cargo test`.

use bachet::counting::{
    chi_sum_x3_plus_1, count_by_character_sum, count_by_enumeration, residue_class_of_a, twist,
    ResidueClass,
};
use bachet::field::{chi, primes_in_class, smallest_nonresidue};
use bachet::structure::{count_order3, structure_exhaustive, structure_randomized};
use bachet::BachetCurve;

use rayon::prelude::*;

#[test]
fn counting_routes_agree_below_500() {
    let primes = primes_in_class(500, 1, 1).unwrap();
    primes.par_iter().for_each(|&p| {
        for a in 1..p.value() {
            let e = BachetCurve::new(p, a).unwrap();
            assert_eq!(
                count_by_character_sum(&e),
                count_by_enumeration(&e).unwrap(),
                "p={p} a={a}"
            );
        }
    });
}

#[test]
fn twist_traces_negate_below_500() {
    for p in primes_in_class(500, 1, 6).unwrap() {
        for a in [1, smallest_nonresidue(p).value()] {
            let e = BachetCurve::new(p, a).unwrap();
            let pair = twist(&e, None).unwrap();
            assert_eq!(pair.original_count.trace(), -pair.twist_count.trace());
            assert_eq!(
                pair.original_count.order() + pair.twist_count.order(),
                2 * p.value() + 2
            );
            // the twist lands in the opposite residue class
            assert_ne!(
                residue_class_of_a(&pair.original),
                residue_class_of_a(&pair.twist)
            );
        }
    }
}

#[test]
fn supersingular_line_below_500() {
    for p in primes_in_class(500, 5, 6).unwrap() {
        for a in 1..p.value() {
            let e = BachetCurve::new(p, a).unwrap();
            let c = count_by_character_sum(&e);
            assert_eq!(c.trace(), 0, "p={p} a={a}");
        }
        // structure check on the class representative
        let e = BachetCurve::new(p, 1).unwrap();
        let s = structure_exhaustive(&e).unwrap();
        assert!(s.is_cyclic());
        assert_eq!(s.nm(), p.value() + 1);
    }
}

#[test]
fn chi_sum_identity_below_300() {
    // N = p + 1 + chi(a) * sum chi(x^3 + 1), so one sum determines both classes
    for p in primes_in_class(300, 1, 6).unwrap() {
        let s = chi_sum_x3_plus_1(p).unwrap();
        for a in 1..p.value() {
            let e = BachetCurve::new(p, a).unwrap();
            let n = count_by_character_sum(&e).order() as i64;
            assert_eq!(n, p.value() as i64 + 1 + chi(e.a()).value() * s);
        }
    }
}

#[test]
fn structure_paths_agree_below_300() {
    let primes = primes_in_class(300, 1, 1).unwrap();
    primes.par_iter().for_each(|&p| {
        let reps: Vec<u64> = if p.value() % 6 == 1 {
            vec![1, smallest_nonresidue(p).value()]
        } else {
            vec![1]
        };
        for a in reps {
            let e = BachetCurve::new(p, a).unwrap();
            let exhaustive = structure_exhaustive(&e).unwrap();
            let count = count_by_character_sum(&e);
            let randomized = structure_randomized(&e, &count, 200, 0).unwrap();
            assert_eq!(exhaustive, randomized, "p={p} a={a}");
        }
    });
}

#[test]
fn order3_census_against_enumeration_below_100() {
    for p in primes_in_class(100, 1, 1).unwrap() {
        for a in 1..p.value() {
            let e = BachetCurve::new(p, a).unwrap();
            let brute = e
                .enumerate_points()
                .unwrap()
                .iter()
                .filter(|q| !q.is_infinity() && q.scalar_mul(3).is_infinity())
                .count() as u32;
            assert_eq!(count_order3(&e).order3, brute, "p={p} a={a}");
        }
    }
}

#[test]
fn class_representatives_cover_all_counts_below_500() {
    for p in primes_in_class(500, 1, 6).unwrap() {
        let n_qr = count_by_character_sum(&BachetCurve::new(p, 1).unwrap()).order();
        let g = smallest_nonresidue(p).value();
        let n_nqr = count_by_character_sum(&BachetCurve::new(p, g).unwrap()).order();
        for a in 1..p.value() {
            let e = BachetCurve::new(p, a).unwrap();
            let n = count_by_character_sum(&e).order();
            let expected = match residue_class_of_a(&e) {
                ResidueClass::Qr => n_qr,
                ResidueClass::Nqr => n_nqr,
            };
            assert_eq!(n, expected, "p={p} a={a}");
        }
    }
}
