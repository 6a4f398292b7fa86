use proptest::prelude::*;

use gtseq::intervals::{check_first_identity, check_second_identity, interval};
use gtseq::labelings::{signed_count, ShiftedLabels};
use gtseq::monotone::{alpha, count_extension};
use gtseq::operators::{binomial_determinant, extended_sum, product_formula, ProductFormula};
use gtseq::paths::signed_families;
use gtseq::patterns::{enumerate_patterns, signed_pattern_count};
use gtseq::{BigInt, Extension, GTPattern, OperatorExpression, PathVariant, TreeSequence};

fn labels(max_n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(lo..=hi, 1..=max_n)
}

fn count(seed: u64, k: &[i64]) -> BigInt {
    let ts = TreeSequence::random(k.len(), seed).unwrap();
    signed_count(&ts, &ShiftedLabels::new(k.to_vec()))
}

/// Swaps positions `i`, `i + 1` and shifts them so the pair becomes
/// `(k_{i+1} + 1, k_i - 1)`.
fn shifted_swap(k: &[i64], i: usize) -> Vec<i64> {
    let mut s = k.to_vec();
    s[i] = k[i + 1] + 1;
    s[i + 1] = k[i] - 1;
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn signed_count_matches_the_product(k in labels(4, -3, 3), seed in any::<u64>()) {
        prop_assert_eq!(count(seed, &k), product_formula(&k));
    }

    #[test]
    fn signed_count_does_not_depend_on_the_trees(k in labels(4, -3, 3), a in any::<u64>(), b in any::<u64>()) {
        prop_assert_eq!(count(a, &k), count(b, &k));
    }

    #[test]
    fn determinant_equals_product(k in labels(5, -6, 6)) {
        prop_assert_eq!(binomial_determinant(&k), product_formula(&k));
    }

    #[test]
    fn product_is_shift_antisymmetric(k in labels(6, -20, 20), pos in any::<prop::sample::Index>()) {
        prop_assume!(k.len() >= 2);
        let i = pos.index(k.len() - 1);
        prop_assert_eq!(product_formula(&k), -product_formula(&shifted_swap(&k, i)));
    }

    #[test]
    fn signed_count_is_shift_antisymmetric(k in labels(4, -2, 2), seed in any::<u64>(), pos in any::<prop::sample::Index>()) {
        prop_assume!(k.len() >= 2);
        let i = pos.index(k.len() - 1);
        prop_assert_eq!(count(seed, &k), -count(seed, &shifted_swap(&k, i)));
    }

    #[test]
    fn pattern_stream_sums_to_the_count(k in labels(3, -2, 3)) {
        let s: i64 = enumerate_patterns(&k).map(|p| p.sign() as i64).sum();
        prop_assert_eq!(BigInt::from(s), signed_pattern_count(&k));
        prop_assert_eq!(signed_pattern_count(&k), product_formula(&k));
    }

    #[test]
    fn patterns_round_trip(k in labels(3, -2, 3)) {
        for p in enumerate_patterns(&k) {
            let seq = p.to_tree_sequence();
            prop_assert_eq!(&GTPattern::from_tree_sequence(&seq).unwrap(), &p);
            let json = serde_json::to_string(&p).unwrap();
            prop_assert_eq!(&serde_json::from_str::<GTPattern>(&json).unwrap(), &p);
            if p.is_classical() && p.bottom().iter().all(|&x| x >= 1) {
                let t = p.to_ssyt().unwrap();
                prop_assert_eq!(&GTPattern::from_ssyt(&t, k.len()).unwrap(), &p);
            }
        }
    }

    #[test]
    fn alpha_rotation(k in labels(4, -2, 2)) {
        let n = k.len() as i64;
        let mut r: Vec<i64> = k[1..].to_vec();
        r.push(k[0] - n);
        let sign = if n % 2 == 1 { 1 } else { -1 };
        prop_assert_eq!(alpha(&k), BigInt::from(sign) * alpha(&r));
    }

    #[test]
    fn extensions_agree_with_alpha(k in labels(3, -2, 3)) {
        let a = alpha(&k);
        for v in Extension::ALL {
            prop_assert_eq!(count_extension(v, &k), a.clone());
        }
    }

    #[test]
    fn general_paths_match_the_product(k in labels(3, -2, 2)) {
        prop_assert_eq!(signed_families(&k, PathVariant::General).unwrap(), product_formula(&k));
    }

    #[test]
    fn interval_identities(x in -30i64..30, y in -30i64..30, z in -30i64..30) {
        let a = check_first_identity(x, y, z);
        let b = check_second_identity(x, y, z);
        prop_assert!(a.identity_holds && a.dichotomy_holds);
        prop_assert!(b.identity_holds && b.dichotomy_holds);
    }

    #[test]
    fn interval_sign_and_length(x in -30i64..30, y in -30i64..30) {
        let iv = interval(x, y);
        let expected = if y >= x { (y - x + 1) as usize } else { (x - y - 1) as usize };
        prop_assert_eq!(iv.len(), expected);
        prop_assert_eq!(iv.sign(), if y < x - 1 { -1 } else { 1 });
    }

    #[test]
    fn extended_sums_are_additive(a in -15i64..15, b in -15i64..15, c in -15i64..15) {
        let f = |t: i64| BigInt::from(t * t * t - 2 * t + 5);
        prop_assert_eq!(extended_sum(a, b, f) + extended_sum(b + 1, c, f), extended_sum(a, c, f));
    }

    #[test]
    fn high_differences_annihilate_the_product(k in labels(4, -5, 5), pos in any::<prop::sample::Index>()) {
        let n = k.len();
        let i = pos.index(n);
        let op = OperatorExpression::delta(n, i).pow(n as u32);
        prop_assert_eq!(op.apply(&ProductFormula { arity: n }, &k).unwrap(), BigInt::from(0));
    }

    #[test]
    fn operator_products_commute(x in 0usize..3, y in 0usize..3, e in 1u32..4) {
        let a = OperatorExpression::delta(3, x).pow(e);
        let b = OperatorExpression::v(3, y, (y + 1) % 3);
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn tree_sequences_survive_json(n in 1usize..6, seed in any::<u64>()) {
        let ts = TreeSequence::random(n, seed).unwrap();
        let json = serde_json::to_string(&ts).unwrap();
        prop_assert_eq!(serde_json::from_str::<TreeSequence>(&json).unwrap(), ts);
    }
}
