mod common;

use std::collections::BTreeSet;

use common::{brute_edit_distance, cipher, cipher_transliterator, CIPHER_LATIN, DEVANAGARI};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use translit_core::script::detect_script;
use translit_core::scoring::{edit_align, translit_optimized_wer, wer, EditOp, WerReport};
use translit_core::translit::Romanizer;

fn random_tokens(rng: &mut impl Rng, alphabet: &[&'static str], max_len: usize, min_len: usize) -> Vec<&'static str> {
    let len = rng.gen_range(min_len..=max_len);
    (0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect()
}

#[test]
fn wer_matches_recursive_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let alphabet = ["a", "b", "c"];
    for _ in 0..200 {
        let r = random_tokens(&mut rng, &alphabet, 8, 1);
        let h = random_tokens(&mut rng, &alphabet, 8, 0);
        let rep = wer(&r, &h).unwrap();
        let oracle = brute_edit_distance(&r, &h, &|a, b| a == b);
        assert_eq!(rep.errors(), oracle, "{r:?} / {h:?}");
        assert!((rep.wer - oracle as f64 / r.len() as f64).abs() < 1e-12);
        assert_eq!(rep.wer == 0.0, r == h);
    }
}

#[test]
fn alignment_reconciles_with_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let alphabet = ["a", "b", "c", "d"];
    for _ in 0..200 {
        let r = random_tokens(&mut rng, &alphabet, 8, 1);
        let h = random_tokens(&mut rng, &alphabet, 8, 0);
        let (ops, rep) = edit_align(&r, &h, |a, b| a == b).unwrap();
        let count = |op| ops.iter().filter(|t| t.op == op).count();
        assert_eq!(count(EditOp::Substitution), rep.substitutions);
        assert_eq!(count(EditOp::Insertion), rep.insertions);
        assert_eq!(count(EditOp::Deletion), rep.deletions);
        let refs: Vec<usize> = ops.iter().filter_map(|t| t.ref_index).collect();
        let hyps: Vec<usize> = ops.iter().filter_map(|t| t.hyp_index).collect();
        assert_eq!(refs, (0..r.len()).collect::<Vec<_>>());
        assert_eq!(hyps, (0..h.len()).collect::<Vec<_>>());
        for t in &ops {
            if let (EditOp::Match, Some(i), Some(j)) = (t.op, t.ref_index, t.hyp_index) {
                assert_eq!(r[i], h[j]);
            }
        }
    }
}

/// Candidate set straight from the definition, without the memoizing expander.
fn oracle_set(t: &dyn Romanizer, token: &str, k: usize) -> BTreeSet<String> {
    let mut set = BTreeSet::from([token.to_lowercase()]);
    if detect_script(token).unwrap().is_native() {
        if let Ok(r) = t.transliterate(token, k) {
            set.extend(r.texts().map(str::to_string));
        }
    }
    set
}

#[test]
fn mixed_script_pairs_match_set_oracle() {
    let (words, t) = cipher_transliterator(13, &DEVANAGARI, &CIPHER_LATIN, "hi", 40);
    // Native spellings, their cipher romanizations (some upper-cased) and
    // unrelated Latin tokens.
    let mut pool: Vec<String> = Vec::new();
    for w in words.iter().take(6) {
        let latin = cipher(w, &DEVANAGARI, &CIPHER_LATIN);
        pool.push(w.clone());
        pool.push(latin.to_uppercase());
        pool.push(latin);
    }
    pool.extend(["zz", "yy"].map(String::from));

    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut strictly_better = 0;
    for _ in 0..100 {
        let pick = |rng: &mut ChaCha8Rng, min: usize| -> Vec<String> {
            let len = rng.gen_range(min..=6);
            (0..len).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect()
        };
        let r = pick(&mut rng, 1);
        let h = pick(&mut rng, 0);
        for k in [1, 2, 5] {
            let got = translit_optimized_wer(&r, &h, &t, k).unwrap();
            let rs: Vec<_> = r.iter().map(|x| oracle_set(&t, x, k)).collect();
            let hs: Vec<_> = h.iter().map(|x| oracle_set(&t, x, k)).collect();
            let oracle = brute_edit_distance(&rs, &hs, &|a, b| !a.is_disjoint(b));
            assert_eq!(got.errors(), oracle, "k={k} {r:?} / {h:?}");
        }
        let plain = wer(&r, &h).unwrap();
        let relaxed = translit_optimized_wer(&r, &h, &t, 5).unwrap();
        assert!(relaxed.wer <= plain.wer);
        strictly_better += usize::from(relaxed.wer < plain.wer);
    }
    assert!(strictly_better > 0);
}

#[test]
fn native_hypothesis_counts_as_correct() {
    let (words, t) = cipher_transliterator(15, &DEVANAGARI, &CIPHER_LATIN, "hi", 20);
    let latin = cipher(&words[0], &DEVANAGARI, &CIPHER_LATIN);
    let r = vec![latin.as_str(), "x"];
    let h = vec![words[0].as_str(), "x"];
    assert_eq!(wer(&r, &h).unwrap().substitutions, 1);
    assert_eq!(translit_optimized_wer(&r, &h, &t, 1).unwrap().wer, 0.0);
}

#[test]
fn k_monotonicity() {
    let (words, t) = cipher_transliterator(16, &DEVANAGARI, &CIPHER_LATIN, "hi", 30);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..50 {
        let r: Vec<String> = (0..rng.gen_range(1..6))
            .map(|_| {
                let w = &words[rng.gen_range(0..words.len())];
                if rng.gen_bool(0.5) {
                    cipher(w, &DEVANAGARI, &CIPHER_LATIN)
                } else {
                    w.clone()
                }
            })
            .collect();
        let h: Vec<String> = r
            .iter()
            .map(|x| {
                if rng.gen_bool(0.3) {
                    words[rng.gen_range(0..words.len())].clone()
                } else {
                    x.clone()
                }
            })
            .collect();
        let rates: Vec<f64> = [1, 2, 5]
            .iter()
            .map(|&k| translit_optimized_wer(&r, &h, &t, k).unwrap().wer)
            .collect();
        assert!(rates[1] <= rates[0] && rates[2] <= rates[1], "{rates:?}");
    }
}

proptest! {
    #[test]
    fn merge_is_associative(
        a in (0usize..20, 0usize..20, 0usize..20, 1usize..40),
        b in (0usize..20, 0usize..20, 0usize..20, 1usize..40),
        c in (0usize..20, 0usize..20, 0usize..20, 1usize..40),
    ) {
        let mk = |x: (usize, usize, usize, usize)| WerReport::new(x.0, x.1, x.2, x.3);
        let left = mk(a).merge(&mk(b)).merge(&mk(c));
        let right = mk(a).merge(&mk(b).merge(&mk(c)));
        prop_assert_eq!(left, right);
        prop_assert!((left.wer - left.errors() as f64 / left.ref_words as f64).abs() < 1e-12);
    }

    #[test]
    fn exact_equality_is_a_sub_relation(
        r in prop::collection::vec(prop::sample::select(vec!["a", "A", "b"]), 1..8),
        h in prop::collection::vec(prop::sample::select(vec!["a", "A", "b"]), 0..8),
    ) {
        struct Nothing;
        impl Romanizer for Nothing {
            fn transliterate(
                &self,
                _: &str,
                _: usize,
            ) -> Result<translit_core::translit::TransliterationResult, translit_core::translit::TranslitError> {
                Ok(Default::default())
            }
        }
        let plain = wer(&r, &h).unwrap();
        let relaxed = translit_optimized_wer(&r, &h, &Nothing, 5).unwrap();
        prop_assert!(relaxed.errors() <= plain.errors());
    }
}
