use std::collections::HashSet;

use howson::word::{enumerate_reduced, reduced_word_count, Letter, Word};
use proptest::prelude::*;

fn any_letters(max: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(prop::sample::select(Letter::ALL.to_vec()), 0..=max)
}

proptest! {
    #[test]
    fn reduction_is_idempotent(letters in any_letters(30)) {
        let w = Word::from_letters(letters);
        prop_assert!(Word::is_reduced(w.letters()));
        prop_assert_eq!(Word::from_letters(w.letters().iter().copied()), w);
    }

    #[test]
    fn parse_display_round_trip(letters in any_letters(30)) {
        let w = Word::from_letters(letters);
        prop_assert_eq!(Word::parse(&w.to_string()).unwrap(), w.clone());
        prop_assert_eq!(Word::parse(&w.compact()).unwrap(), w);
    }

    #[test]
    fn concat_matches_reduction_of_juxtaposition(a in any_letters(12), b in any_letters(12)) {
        let (wa, wb) = (Word::from_letters(a.clone()), Word::from_letters(b.clone()));
        let joined = Word::from_letters(a.into_iter().chain(b));
        prop_assert_eq!(wa.concat(&wb), joined);
    }
}

#[test]
fn concat_is_associative_up_to_length_four() {
    let words: Vec<Word> = enumerate_reduced(4).collect();
    for a in &words {
        for b in &words {
            let ab = a.concat(b);
            for c in &words {
                assert_eq!(ab.concat(c), a.concat(&b.concat(c)));
            }
        }
    }
}

#[test]
fn words_times_inverses_vanish() {
    for w in enumerate_reduced(6) {
        assert!(w.concat(&w.invert()).is_empty());
        assert!(w.invert().concat(&w).is_empty());
        assert_eq!(w.invert().invert(), w);
    }
}

#[test]
fn power_law() {
    for w in enumerate_reduced(3) {
        for a in -5i64..=5 {
            for b in -5i64..=5 {
                assert_eq!(w.power(a + b), w.power(a).concat(&w.power(b)), "{w} {a} {b}");
            }
        }
    }
}

#[test]
fn enumeration_is_duplicate_free_and_reduced() {
    let mut seen = HashSet::new();
    let mut prev_len = 0;
    for w in enumerate_reduced(8) {
        assert!(Word::is_reduced(w.letters()));
        assert!(w.len() >= prev_len);
        prev_len = w.len();
        assert!(seen.insert(w));
    }
    assert_eq!(seen.len() as u64, reduced_word_count(8));
}

#[test]
fn enumeration_count_at_ten() {
    // 1 + sum_{k=1..10} 4 * 3^(k-1)
    let closed = 1 + (1..=10).map(|k| 4 * 3u64.pow(k - 1)).sum::<u64>();
    assert_eq!(closed, 118_097);
    assert_eq!(enumerate_reduced(10).count() as u64, closed);
}

#[test]
fn enumeration_is_lexicographic_within_length() {
    let words: Vec<Word> = enumerate_reduced(5).collect();
    for pair in words.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if a.len() == b.len() {
            assert!(a.letters() < b.letters(), "{a} !< {b}");
        }
    }
}
