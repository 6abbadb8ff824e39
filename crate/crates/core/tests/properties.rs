//! Property tests for the algebraic invariants of the spectrum layer.

use proptest::prelude::*;

use milnor_core::diagram::{from_hodge_deligne, to_hodge_deligne};
use milnor_core::local::torsion_exponents;
use milnor_core::rational::{frac, rat, Rational};
use milnor_core::spectrum::{pairing_index, star, WeightedSpectrum};

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=8).prop_map(|(n, d)| rat(n, d))
}

fn weighted_entry() -> impl Strategy<Value = ((Rational, i64), i64)> {
    (rational(), -2i64..=5, -3i64..=3).prop_map(|(a, w, m)| ((a, w), m))
}

fn weighted_spectrum() -> impl Strategy<Value = WeightedSpectrum> {
    prop::collection::vec(weighted_entry(), 0..5).prop_map(WeightedSpectrum::from_entries)
}

fn effective_spectrum() -> impl Strategy<Value = WeightedSpectrum> {
    prop::collection::vec((rational(), -2i64..=5, 1i64..=3), 0..5)
        .prop_map(|v| WeightedSpectrum::from_entries(v.into_iter().map(|(a, w, m)| ((a, w), m))))
}

proptest! {
    #[test]
    fn star_adds_a_bounded_pairing(a in rational(), w in -3i64..=5, b in rational(), v in -3i64..=5) {
        let (alpha, weight) = star((a, w), (b, v));
        prop_assert_eq!(alpha, a + b);
        let added = weight - w - v;
        prop_assert!((0..=2).contains(&added));
        prop_assert_eq!(added, pairing_index(a, b) as i64);
        // identity element
        prop_assert_eq!(star((a, w), (rat(0, 1), 0)), (a, w));
        // the eigenvalue class of the product is the product of classes
        prop_assert_eq!(frac(alpha), frac(frac(a) + frac(b)));
    }

    #[test]
    fn convolution_is_commutative_and_associative(
        a in weighted_spectrum(),
        b in weighted_spectrum(),
        c in weighted_spectrum(),
    ) {
        prop_assert_eq!(a.convolve(&b), b.convolve(&a));
        prop_assert_eq!(a.convolve(&b).convolve(&c), a.convolve(&b.convolve(&c)));
    }

    #[test]
    fn forgetting_weights_is_a_homomorphism(a in weighted_spectrum(), b in weighted_spectrum()) {
        prop_assert_eq!(
            a.convolve(&b).forget_weights(),
            a.forget_weights().convolve(&b.forget_weights())
        );
    }

    #[test]
    fn addition_is_a_group_operation(a in weighted_spectrum(), b in weighted_spectrum()) {
        let sum = &a + &b;
        prop_assert_eq!(&(&sum - &b), &a);
        prop_assert!((&a - &a).is_empty());
        prop_assert_eq!(
            sum.total_multiplicity(),
            a.total_multiplicity() + b.total_multiplicity()
        );
    }

    #[test]
    fn diagram_round_trip(s in effective_spectrum()) {
        let d = to_hodge_deligne(&s).unwrap();
        prop_assert_eq!(d.total_multiplicity() as i64, s.total_multiplicity());
        prop_assert_eq!(from_hodge_deligne(&d), s);
    }

    #[test]
    fn serialization_round_trip(s in weighted_spectrum()) {
        let js = serde_json::to_string(&s).unwrap();
        let back: WeightedSpectrum = serde_json::from_str(&js).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn divisible_torsion_orders_recover_exact_exponents(
        entries in prop::collection::vec((0i64..6, 1u64..5), 1..5),
        k in 1u64..5,
    ) {
        // choose l as a common denominator multiple so that l * alpha is integral
        let data: Vec<(Rational, u64)> = entries.iter().map(|&(n, m)| (rat(n, 6), m)).collect();
        let l = 6 * k;
        let report = torsion_exponents(&data, l).unwrap();
        let mut expected: Vec<u64> = data
            .iter()
            .flat_map(|&(a, m)| {
                let e = (a * rat(l as i64, 1)).to_integer() as u64;
                std::iter::repeat_n(e, m as usize)
            })
            .filter(|&e| e > 0)
            .collect();
        expected.sort_unstable();
        prop_assert_eq!(report.exponents, expected);
    }
}
