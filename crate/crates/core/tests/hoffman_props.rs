use std::collections::BTreeMap;

use fmzv::hoffman::{concat_right, word_to_ztuple};
use fmzv::{shuffle, shuffle_lincomb, z_word, Letter, LinComb, Word, ZTuple};
use num_bigint::BigInt;
use proptest::prelude::*;

fn words_up_to(len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..len {
        layer = layer
            .iter()
            .flat_map(|w| [Letter::X, Letter::Y].map(|l| w.concat(&Word::from_letters([l]))))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

/// Every interleaving of `a` and `b`, counted with multiplicity.
fn interleavings(a: &[Letter], b: &[Letter]) -> BTreeMap<Word, BigInt> {
    let mut out = BTreeMap::new();
    let n = a.len() + b.len();
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize != a.len() {
            continue;
        }
        let (mut i, mut j) = (0, 0);
        let letters: Vec<Letter> = (0..n)
            .map(|pos| {
                if mask >> pos & 1 == 1 {
                    i += 1;
                    a[i - 1]
                } else {
                    j += 1;
                    b[j - 1]
                }
            })
            .collect();
        *out.entry(Word::from_letters(letters))
            .or_insert_with(|| BigInt::from(0)) += 1;
    }
    out
}

#[test]
fn commutative_on_all_pairs_up_to_length_4() {
    let words = words_up_to(4);
    for a in &words {
        for b in &words {
            assert_eq!(shuffle(a, b), shuffle(b, a), "{a} ш {b}");
        }
    }
}

#[test]
fn associative_on_all_triples_up_to_length_3() {
    let words = words_up_to(3);
    for a in &words {
        for b in &words {
            let ab = shuffle(a, b);
            for c in &words {
                let c1 = LinComb::monomial(c.clone(), 1);
                let left = shuffle_lincomb(&ab, &c1);
                let right = shuffle_lincomb(&LinComb::monomial(a.clone(), 1), &shuffle(b, c));
                assert_eq!(left, right, "({a} ш {b}) ш {c}");
            }
        }
    }
}

#[test]
fn grading_and_letter_counts() {
    let words = words_up_to(4);
    for a in &words {
        for b in &words {
            for (w, c) in shuffle(a, b).terms() {
                assert!(c > &BigInt::from(0));
                assert_eq!(w.len(), a.len() + b.len());
                assert_eq!(w.count(Letter::Y), a.count(Letter::Y) + b.count(Letter::Y));
            }
        }
    }
}

#[test]
fn coefficient_sums_are_binomial_up_to_length_5() {
    let words = words_up_to(5);
    for a in &words {
        for b in &words {
            let n = (a.len() + b.len()) as u64;
            assert_eq!(
                shuffle(a, b).coeff_sum(),
                binomial(n, a.len() as u64),
                "{a} ш {b}"
            );
        }
    }
}

#[test]
fn matches_brute_force_interleavings_up_to_length_4() {
    let words = words_up_to(4);
    for a in &words {
        for b in &words {
            let expected = LinComb::from_terms(interleavings(a.letters(), b.letters()));
            assert_eq!(shuffle(a, b), expected, "{a} ш {b}");
        }
    }
}

#[test]
fn unit_and_zero() {
    for a in words_up_to(3) {
        let one = LinComb::one();
        let am = LinComb::monomial(a.clone(), 3);
        assert_eq!(shuffle_lincomb(&one, &am), am);
        assert!(shuffle_lincomb(&LinComb::zero(), &am).is_zero());
        assert_eq!(concat_right(&am, &Word::empty()), am);
    }
}

fn ztuple_strategy() -> impl Strategy<Value = ZTuple> {
    prop::collection::vec(1u32..6, 0..5).prop_map(|v| ZTuple::new(v).unwrap())
}

fn word_strategy() -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::bool::ANY, 0..6).prop_map(|bs| {
        Word::from_letters(
            bs.into_iter()
                .map(|b| if b { Letter::Y } else { Letter::X }),
        )
    })
}

proptest! {
    #[test]
    fn ztuple_word_round_trip(t in ztuple_strategy()) {
        let w = z_word(&t);
        prop_assert_eq!(w.len() as u64, t.weight());
        prop_assert_eq!(w.count(Letter::Y), t.depth());
        prop_assert_eq!(word_to_ztuple(&w).unwrap(), t.clone());
        prop_assert_eq!(t.to_string().trim_matches(|c| c == '(' || c == ')').parse::<ZTuple>().unwrap(), t);
    }

    #[test]
    fn word_text_round_trip(w in word_strategy()) {
        prop_assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
    }

    #[test]
    fn lincomb_json_round_trip(a in word_strategy(), b in word_strategy()) {
        let s = shuffle(&a, &b);
        prop_assert_eq!(LinComb::from_word_json(&s.to_word_json()).unwrap(), s);
    }

    #[test]
    fn associative_on_sampled_length_4_triples(a in word_strategy(), b in word_strategy(), c in word_strategy()) {
        let (a, b, c) = (Word::from_letters(a.letters().iter().take(4).copied()),
                         Word::from_letters(b.letters().iter().take(4).copied()),
                         Word::from_letters(c.letters().iter().take(4).copied()));
        let left = shuffle_lincomb(&shuffle(&a, &b), &LinComb::monomial(c.clone(), 1));
        let right = shuffle_lincomb(&LinComb::monomial(a, 1), &shuffle(&b, &c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn shuffles_of_yh_words_stay_in_yh(t in ztuple_strategy(), u in ztuple_strategy()) {
        let s = shuffle(&z_word(&t), &z_word(&u));
        prop_assert!(s.terms().all(|(w, _)| w.in_yh()));
    }
}
