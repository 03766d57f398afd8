//! Word error rate over a minimum-edit alignment, plus a variant that treats
//! two tokens as equal when their romanization candidate sets meet.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::script::detect_script;
use crate::translit::Romanizer;

pub const DEFAULT_K: usize = 5;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScoreError {
    #[error("empty reference")]
    EmptyReference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EditOp {
    Match,
    Substitution,
    Deletion,
    Insertion,
}

/// One alignment column; indices point into the reference and hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AlignedToken {
    pub op: EditOp,
    pub ref_index: Option<usize>,
    pub hyp_index: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct WerReport {
    pub substitutions: usize,
    pub insertions: usize,
    pub deletions: usize,
    pub ref_words: usize,
    pub wer: f64,
}

impl WerReport {
    pub fn new(substitutions: usize, insertions: usize, deletions: usize, ref_words: usize) -> Self {
        let errors = substitutions + insertions + deletions;
        WerReport {
            substitutions,
            insertions,
            deletions,
            ref_words,
            wer: if ref_words == 0 {
                0.0
            } else {
                errors as f64 / ref_words as f64
            },
        }
    }

    pub fn errors(&self) -> usize {
        self.substitutions + self.insertions + self.deletions
    }

    /// Sums components; the rate is recomputed, never averaged.
    pub fn merge(&self, other: &WerReport) -> WerReport {
        WerReport::new(
            self.substitutions + other.substitutions,
            self.insertions + other.insertions,
            self.deletions + other.deletions,
            self.ref_words + other.ref_words,
        )
    }
}

impl fmt::Display for WerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "WER={:.2} S={} I={} D={} N={}",
            self.wer * 100.0,
            self.substitutions,
            self.insertions,
            self.deletions,
            self.ref_words
        )
    }
}

/// Unit-cost Levenshtein alignment. Among minimal alignments the backtrace
/// prefers the diagonal, then deletion, then insertion.
pub fn edit_align<T, F>(
    reference: &[T],
    hypothesis: &[T],
    equal: F,
) -> Result<(Vec<AlignedToken>, WerReport), ScoreError>
where
    F: Fn(&T, &T) -> bool,
{
    if reference.is_empty() {
        return Err(ScoreError::EmptyReference);
    }
    let (n, m) = (reference.len(), hypothesis.len());
    let w = m + 1;
    let mut d = vec![0usize; (n + 1) * w];
    for i in 0..=n {
        d[i * w] = i;
    }
    for (j, cell) in d[..w].iter_mut().enumerate() {
        *cell = j;
    }
    for i in 1..=n {
        for j in 1..=m {
            let sub = d[(i - 1) * w + j - 1] + usize::from(!equal(&reference[i - 1], &hypothesis[j - 1]));
            let del = d[(i - 1) * w + j] + 1;
            let ins = d[i * w + j - 1] + 1;
            d[i * w + j] = sub.min(del).min(ins);
        }
    }

    let mut ops = Vec::with_capacity(n.max(m));
    let (mut s, mut ins, mut del) = (0, 0, 0);
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        let here = d[i * w + j];
        if i > 0 && j > 0 {
            let same = equal(&reference[i - 1], &hypothesis[j - 1]);
            if d[(i - 1) * w + j - 1] + usize::from(!same) == here {
                let op = if same {
                    EditOp::Match
                } else {
                    s += 1;
                    EditOp::Substitution
                };
                ops.push(AlignedToken {
                    op,
                    ref_index: Some(i - 1),
                    hyp_index: Some(j - 1),
                });
                i -= 1;
                j -= 1;
                continue;
            }
        }
        if i > 0 && d[(i - 1) * w + j] + 1 == here {
            del += 1;
            ops.push(AlignedToken {
                op: EditOp::Deletion,
                ref_index: Some(i - 1),
                hyp_index: None,
            });
            i -= 1;
        } else {
            ins += 1;
            ops.push(AlignedToken {
                op: EditOp::Insertion,
                ref_index: None,
                hyp_index: Some(j - 1),
            });
            j -= 1;
        }
    }
    ops.reverse();
    debug_assert_eq!(s + ins + del, d[n * w + m]);
    Ok((ops, WerReport::new(s, ins, del, n)))
}

pub fn tokenize(line: &str) -> Vec<&str> {
    line.split_whitespace().collect()
}

/// Plain WER under exact token equality.
pub fn wer<S: AsRef<str>>(reference: &[S], hypothesis: &[S]) -> Result<WerReport, ScoreError> {
    edit_align(reference, hypothesis, |a, b| a.as_ref() == b.as_ref()).map(|(_, r)| r)
}

/// Expands tokens to candidate sets: the lowercased surface form, plus the
/// k-best romanizations of native-script tokens. Results are memoized.
pub struct CandidateExpander<'a, T: Romanizer + ?Sized> {
    romanizer: &'a T,
    k: usize,
    cache: HashMap<String, BTreeSet<String>>,
}

impl<'a, T: Romanizer + ?Sized> CandidateExpander<'a, T> {
    pub fn new(romanizer: &'a T, k: usize) -> Self {
        CandidateExpander {
            romanizer,
            k,
            cache: HashMap::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn expand(&mut self, token: &str) -> BTreeSet<String> {
        if let Some(set) = self.cache.get(token) {
            return set.clone();
        }
        let mut set = BTreeSet::from([token.to_lowercase()]);
        if detect_script(token).is_ok_and(|t| t.is_native()) {
            if let Ok(r) = self.romanizer.transliterate(token, self.k) {
                set.extend(r.candidates.into_iter().map(|c| c.text));
            }
        }
        self.cache.insert(token.to_string(), set.clone());
        set
    }

    pub fn align<S: AsRef<str>>(
        &mut self,
        reference: &[S],
        hypothesis: &[S],
    ) -> Result<(Vec<AlignedToken>, WerReport), ScoreError> {
        let r: Vec<BTreeSet<String>> = reference.iter().map(|t| self.expand(t.as_ref())).collect();
        let h: Vec<BTreeSet<String>> = hypothesis.iter().map(|t| self.expand(t.as_ref())).collect();
        edit_align(&r, &h, sets_intersect)
    }
}

pub fn sets_intersect(a: &BTreeSet<String>, b: &BTreeSet<String>) -> bool {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small.iter().any(|x| large.contains(x))
}

/// WER where tokens match when their candidate sets intersect.
pub fn translit_optimized_wer<S, T>(
    reference: &[S],
    hypothesis: &[S],
    romanizer: &T,
    k: usize,
) -> Result<WerReport, ScoreError>
where
    S: AsRef<str>,
    T: Romanizer + ?Sized,
{
    CandidateExpander::new(romanizer, k)
        .align(reference, hypothesis)
        .map(|(_, r)| r)
}
