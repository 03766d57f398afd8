//! Lexicon pre-processing before transducer training.
//!
//! * Agreement-based: romanizations attested in every language's lexicon form
//!   a common set; a word whose forms meet that set keeps only the meeting
//!   forms. Words with no common form are left alone.
//! * Frequency-based: each word keeps the forms whose frequency is at least
//!   the mean frequency of that word's forms.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::lexicon::{Lexicon, Romanization};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PrepError {
    #[error("agreement-based pre-processing needs at least 2 lexicons, got {0}")]
    TooFewLexicons(usize),
    #[error("{language}: `{native}` -> `{form}` has no frequency")]
    MissingFrequency {
        language: String,
        native: String,
        form: String,
    },
}

/// Romanization strings present in every lexicon.
pub fn common_romanizations(lexicons: &[Lexicon]) -> BTreeSet<String> {
    let mut sets = lexicons.iter().map(|lex| {
        lex.iter()
            .flat_map(|(_, forms)| forms.iter().map(|r| r.form.clone()))
            .collect::<BTreeSet<String>>()
    });
    let Some(first) = sets.next() else {
        return BTreeSet::new();
    };
    sets.fold(first, |acc, s| acc.intersection(&s).cloned().collect())
}

pub fn agreement_based(lexicons: &[Lexicon]) -> Result<Vec<Lexicon>, PrepError> {
    if lexicons.len() < 2 {
        return Err(PrepError::TooFewLexicons(lexicons.len()));
    }
    let common = common_romanizations(lexicons);
    Ok(lexicons
        .iter()
        .map(|lex| {
            let mut out = lex.clone();
            for (native, forms) in lex.iter() {
                let agreed: Vec<Romanization> = forms
                    .iter()
                    .filter(|r| common.contains(&r.form))
                    .cloned()
                    .collect();
                if !agreed.is_empty() {
                    out.replace(native, agreed);
                }
            }
            out
        })
        .collect())
}

pub fn frequency_based(lexicon: &Lexicon) -> Result<Lexicon, PrepError> {
    let mut out = lexicon.clone();
    for (native, forms) in lexicon.iter() {
        let freqs = forms
            .iter()
            .map(|r| {
                r.freq.ok_or_else(|| PrepError::MissingFrequency {
                    language: lexicon.language.clone(),
                    native: native.to_string(),
                    form: r.form.clone(),
                })
            })
            .collect::<Result<Vec<u64>, _>>()?;
        let n = freqs.len() as u128;
        let sum: u128 = freqs.iter().map(|&f| f as u128).sum();
        // freq >= sum / n, compared exactly as freq * n >= sum
        let kept: Vec<Romanization> = forms
            .iter()
            .zip(&freqs)
            .filter(|(_, &f)| f as u128 * n >= sum)
            .map(|(r, _)| r.clone())
            .collect();
        out.replace(native, kept);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PrepMode {
    Agreement,
    Frequency,
    /// Agreement then frequency. Experimental.
    AgreementThenFrequency,
}

/// Runs `mode` over `lexicons`.
pub fn apply(mode: PrepMode, lexicons: &[Lexicon]) -> Result<Vec<Lexicon>, PrepError> {
    match mode {
        PrepMode::Agreement => agreement_based(lexicons),
        PrepMode::Frequency => lexicons.iter().map(frequency_based).collect(),
        PrepMode::AgreementThenFrequency => agreement_based(lexicons)?
            .iter()
            .map(frequency_based)
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LexiconDelta {
    pub language: String,
    pub words: usize,
    pub words_modified: usize,
    pub forms_before: usize,
    pub forms_after: usize,
    pub forms_removed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrepSummary {
    pub mode: PrepMode,
    pub words_modified: usize,
    pub forms_removed: usize,
    pub lexicons: Vec<LexiconDelta>,
}

/// Compares each input lexicon with its processed counterpart.
pub fn summarize(mode: PrepMode, before: &[Lexicon], after: &[Lexicon]) -> PrepSummary {
    let lexicons: Vec<LexiconDelta> = before
        .iter()
        .zip(after)
        .map(|(b, a)| {
            let words_modified = b
                .iter()
                .filter(|(native, forms)| a.get(native) != Some(*forms))
                .count();
            LexiconDelta {
                language: b.language.clone(),
                words: b.num_words(),
                words_modified,
                forms_before: b.num_forms(),
                forms_after: a.num_forms(),
                forms_removed: b.num_forms() - a.num_forms(),
            }
        })
        .collect();
    PrepSummary {
        mode,
        words_modified: lexicons.iter().map(|d| d.words_modified).sum(),
        forms_removed: lexicons.iter().map(|d| d.forms_removed).sum(),
        lexicons,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex(lang: &str, rows: &[(&str, &str, u64)]) -> Lexicon {
        let mut l = Lexicon::new(lang);
        for (n, f, c) in rows {
            l.insert(n, f, Some(*c));
        }
        l
    }

    fn forms(l: &Lexicon, native: &str) -> Vec<(String, u64)> {
        l.get(native)
            .unwrap()
            .iter()
            .map(|r| (r.form.clone(), r.freq.unwrap()))
            .collect()
    }

    #[test]
    fn frequency_threshold_is_the_mean() {
        let l = lex("x", &[("w", "x", 5), ("w", "y", 1)]);
        assert_eq!(forms(&frequency_based(&l).unwrap(), "w"), [("x".into(), 5)]);

        let l = lex("x", &[("w", "x", 3), ("w", "y", 3)]);
        assert_eq!(frequency_based(&l).unwrap(), l);

        let l = lex("x", &[("w", "only", 0)]);
        assert_eq!(frequency_based(&l).unwrap(), l);
    }

    #[test]
    fn frequency_needs_counts() {
        let mut l = Lexicon::new("hi");
        l.insert("w", "x", None);
        assert!(matches!(
            frequency_based(&l),
            Err(PrepError::MissingFrequency { .. })
        ));
    }

    #[test]
    fn agreement_leaves_unshared_words() {
        let a = lex("a", &[("w1", "shared", 2), ("w1", "mine", 9), ("w2", "lonely", 4)]);
        let b = lex("b", &[("v1", "shared", 1), ("v1", "theirs", 1)]);
        let out = agreement_based(&[a.clone(), b]).unwrap();
        assert_eq!(forms(&out[0], "w1"), [("shared".into(), 2)]);
        assert_eq!(out[0].get("w2"), a.get("w2"));
        assert_eq!(forms(&out[1], "v1"), [("shared".into(), 1)]);
    }

    #[test]
    fn agreement_needs_two() {
        assert_eq!(
            agreement_based(&[Lexicon::new("a")]),
            Err(PrepError::TooFewLexicons(1))
        );
    }

    #[test]
    fn summary_counts_changes() {
        let a = lex("a", &[("w", "x", 5), ("w", "y", 1), ("v", "z", 2)]);
        let out = apply(PrepMode::Frequency, std::slice::from_ref(&a)).unwrap();
        let s = summarize(PrepMode::Frequency, &[a], &out);
        assert_eq!(s.words_modified, 1);
        assert_eq!(s.forms_removed, 1);
        assert_eq!(s.lexicons[0].forms_after, 2);
    }
}
