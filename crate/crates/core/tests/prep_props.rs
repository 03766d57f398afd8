mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use translit_core::lexicon::{Lexicon, Romanization};
use translit_core::prep::*;

#[test]
fn discovery_reduces_to_the_shared_spelling() {
    let lexicons = discovery_lexicons();
    let out = agreement_based(&lexicons).unwrap();
    for (before, after) in lexicons.iter().zip(&out) {
        let (native, _) = before.iter().next().unwrap();
        let forms: Vec<&str> = after.get(native).unwrap().iter().map(|r| r.form.as_str()).collect();
        assert_eq!(forms, ["discovery"], "{}", before.language);
        // Frequency survives untouched.
        let orig = before.get(native).unwrap().iter().find(|r| r.form == "discovery").unwrap();
        assert_eq!(after.get(native).unwrap()[0].freq, orig.freq);
    }
}

fn random_lexicons<R: Rng>(rng: &mut R) -> Vec<Lexicon> {
    let pool = ["ab", "ba", "abc", "ca", "bb", "cab", "ac"];
    let natives = ["क", "ख", "ग", "घ"];
    (0..rng.gen_range(2..=4))
        .map(|i| {
            let mut lex = Lexicon::new(format!("l{i}"));
            for n in natives {
                if rng.gen_bool(0.7) {
                    for _ in 0..rng.gen_range(1..=4) {
                        lex.insert(n, pool[rng.gen_range(0..pool.len())], Some(rng.gen_range(0..6)));
                    }
                }
            }
            lex
        })
        .collect()
}

#[test]
fn agreement_is_idempotent_and_conservative() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..500 {
        let lexicons = random_lexicons(&mut rng);
        let common = common_romanizations(&lexicons);
        let once = agreement_based(&lexicons).unwrap();
        let twice = agreement_based(&once).unwrap();
        assert_eq!(once, twice);
        for (b, a) in lexicons.iter().zip(&once) {
            assert_eq!(b.num_words(), a.num_words());
            for (native, forms) in b.iter() {
                let after = a.get(native).unwrap();
                assert!(after.iter().all(|r| forms.contains(r)));
                if after != forms {
                    assert!(after.iter().all(|r| common.contains(&r.form)));
                }
            }
        }
    }
}

/// Independent threshold: mean as an exact fraction via cross-multiplication
/// of the reduced rational.
fn oracle_keep(freqs: &[u64]) -> Vec<bool> {
    let sum: u64 = freqs.iter().sum();
    let n = freqs.len() as u64;
    let g = gcd(sum, n).max(1);
    let (num, den) = (sum / g, n / g);
    freqs.iter().map(|&f| f * den >= num).collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

#[test]
fn frequency_matches_rational_mean() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..1000 {
        let k = rng.gen_range(1..=8);
        let freqs: Vec<u64> = (0..k).map(|_| rng.gen_range(0..50)).collect();
        let mut lex = Lexicon::new("x");
        for (i, &f) in freqs.iter().enumerate() {
            lex.insert("w", &format!("f{i}"), Some(f));
        }
        let out = frequency_based(&lex).unwrap();
        let kept: BTreeSet<String> = out.get("w").unwrap().iter().map(|r| r.form.clone()).collect();
        let want: BTreeSet<String> = oracle_keep(&freqs)
            .into_iter()
            .enumerate()
            .filter(|(_, k)| *k)
            .map(|(i, _)| format!("f{i}"))
            .collect();
        assert_eq!(kept, want, "{freqs:?}");
        assert!(!kept.is_empty());
    }
}

proptest! {
    #[test]
    fn frequency_is_local_per_word(
        a in proptest::collection::vec(0u64..20, 1..5),
        b in proptest::collection::vec(0u64..20, 1..5),
    ) {
        let build = |other: &[u64]| {
            let mut lex = Lexicon::new("x");
            for (i, &f) in a.iter().enumerate() {
                lex.insert("target", &format!("t{i}"), Some(f));
            }
            for (i, &f) in other.iter().enumerate() {
                lex.insert("other", &format!("o{i}"), Some(f));
            }
            lex
        };
        let with_b = frequency_based(&build(&b)).unwrap();
        let alone = frequency_based(&build(&[1])).unwrap();
        prop_assert_eq!(with_b.get("target"), alone.get("target"));
        let forms: &[Romanization] = with_b.get("target").unwrap();
        prop_assert!(!forms.is_empty());
    }
}
