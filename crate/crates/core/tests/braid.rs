mod common;

use cobordism_core::braid::{parse_braid, BraidWord, Gen};
use cobordism_core::garside::{conjugate_by_cycling_equal, garside_normal_form, words_equal};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{closure_verdict, decode, encode, random_signed_word, word_pairs};

#[test]
fn word_problem_matches_relation_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let pairs = word_pairs(&mut rng, 300, 8);
    let mut equal = 0;
    for (w1, w2) in &pairs {
        let expected = closure_verdict(w1, w2, 12);
        equal += expected as usize;
        assert_eq!(words_equal(&decode(w1), &decode(w2)), expected, "{} vs {}", decode(w1), decode(w2));
    }
    assert!(equal >= 150, "only {equal} equal pairs");
}

#[test]
fn half_twist_identities() {
    let eq = |x: &str, y: &str| words_equal(&x.parse().unwrap(), &y.parse().unwrap());
    assert!(eq("aba", "bab"));
    assert!(eq("(ab)^3", "(aba)^2"));
    assert!(eq("(ab)^6", "bab^3ab^3ab^2"));
    assert!(eq("a^-1", "(aba)^-1ab"));
    assert!(!eq("ab", "ba"));
    assert!(conjugate_by_cycling_equal(&"ab".parse().unwrap(), &"ba".parse().unwrap()));
}

#[test]
fn parse_errors_carry_positions() {
    assert!(parse_braid("ac").is_err());
    assert!(parse_braid("a^0").is_err());
    assert_eq!(parse_braid("1").unwrap(), BraidWord::empty());
    assert_eq!(parse_braid("a^-2 b").unwrap().to_string(), "a^-2b");
}

fn signed_word() -> impl Strategy<Value = BraidWord> {
    (any::<u64>(), 0usize..=16).prop_map(|(seed, len)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        decode(&encode(&random_signed_word(&mut rng, len)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn display_round_trips(w in signed_word()) {
        prop_assert_eq!(parse_braid(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn normal_form_is_canonical(w in signed_word()) {
        let nf = garside_normal_form(&w);
        prop_assert!(nf.is_left_canonical());
        prop_assert!(words_equal(&nf.expand(), &w));
        prop_assert_eq!(garside_normal_form(&nf.expand()), nf);
    }

    #[test]
    fn inverse_cancels(w in signed_word()) {
        prop_assert!(words_equal(&w.concat(&w.inverse()), &BraidWord::empty()));
        prop_assert!(words_equal(&w.inverse().concat(&w), &BraidWord::empty()));
    }

    #[test]
    fn flip_is_conjugation_by_half_twist(w in signed_word()) {
        let d = BraidWord::delta();
        prop_assert!(words_equal(&w.flip(), &d.concat(&w).concat(&d.inverse())));
    }

    #[test]
    fn rotations_are_cycling_equal(w in signed_word(), i in 0usize..32) {
        let r = w.rotate_left(i % (w.length() as usize).max(1));
        prop_assert!(conjugate_by_cycling_equal(&w, &r));
        prop_assert_eq!(r.exponent_sum(), w.exponent_sum());
        prop_assert_eq!(r.closure().component_count, w.closure().component_count);
    }

    #[test]
    fn equality_is_multiplicative(x in signed_word(), y in signed_word()) {
        let z = x.concat(&y);
        prop_assert!(words_equal(&garside_normal_form(&x).expand().concat(&y), &z));
    }
}

#[test]
fn generators_commute_with_flip() {
    assert_eq!(BraidWord::generator(Gen::A).flip(), BraidWord::generator(Gen::B));
}
