//! Lexicon-trained transliterators.
//!
//! Building runs EM alignment over the lexicon, Viterbi-segments every entry
//! into pair symbols, trains a pair n-gram model on the segmentations and
//! compiles it into a native-to-Latin transducer. Decoding composes a word
//! acceptor with that transducer and reads off the k cheapest distinct
//! outputs. Inverting the transducer gives the Latin-to-native direction from
//! the same joint model.

mod bundle;

use std::collections::BTreeSet;
use std::sync::Arc;

use log::warn;
use serde::Serialize;
use thiserror::Error;

use crate::align::{em_train, viterbi_align, AlignError, AlignmentModel, EmConfig};
use crate::fst::{compose, shortest_paths, Fst, FstError};
use crate::lexicon::Lexicon;
use crate::ngram::{to_fst, train_ngram, LmError, NGramModel, DEFAULT_ORDER};
use crate::symbols::SymbolTable;

pub use bundle::{load_bundle, save_bundle, Manifest, BUNDLE_FILES};

#[derive(Debug, Error)]
pub enum TranslitError {
    #[error("lexicon `{0}` has no usable entries")]
    EmptyLexicon(String),
    #[error("no lexicon entry of `{0}` could be aligned")]
    AllUnalignable(String),
    #[error("empty word")]
    EmptyWord,
    #[error("`{word}` contains codepoints outside the input alphabet: {}", format_codepoints(.codepoints))]
    UnknownCodepoints { word: String, codepoints: Vec<char> },
    #[error("a union needs at least one transliterator")]
    EmptyUnion,
    #[error("bundle {path}: {msg}")]
    Bundle { path: String, msg: String },
    #[error(transparent)]
    Align(#[from] AlignError),
    #[error(transparent)]
    Lm(#[from] LmError),
    #[error(transparent)]
    Fst(#[from] FstError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn format_codepoints(cps: &[char]) -> String {
    cps.iter()
        .map(|c| format!("U+{:04X}", *c as u32))
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuildConfig {
    pub order: usize,
    pub em: EmConfig,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig {
            order: DEFAULT_ORDER,
            em: EmConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Candidate {
    pub text: String,
    /// Tropical cost (negative natural-log joint probability).
    pub weight: f64,
}

/// Candidates in nondecreasing cost; strings are distinct. Empty when the
/// word has no accepting path.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct TransliterationResult {
    pub candidates: Vec<Candidate>,
}

impl TransliterationResult {
    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn best(&self) -> Option<&str> {
        self.candidates.first().map(|c| c.text.as_str())
    }

    pub fn texts(&self) -> impl Iterator<Item = &str> {
        self.candidates.iter().map(|c| c.text.as_str())
    }
}

/// Anything that maps a word to k-best transliterations.
pub trait Romanizer {
    fn transliterate(&self, word: &str, k: usize) -> Result<TransliterationResult, TranslitError>;
}

/// A trained single-language transliterator.
#[derive(Debug, Clone)]
pub struct Transliterator {
    manifest: Manifest,
    align_model: AlignmentModel,
    lm: NGramModel,
    fst: Fst,
    reversed: bool,
}

impl Transliterator {
    pub fn language(&self) -> &str {
        &self.manifest.language
    }

    pub fn manifest(&self) -> &Manifest {
        &self.manifest
    }

    pub fn align_model(&self) -> &AlignmentModel {
        &self.align_model
    }

    pub fn lm(&self) -> &NGramModel {
        &self.lm
    }

    /// Input-to-output transducer (native to Latin unless reversed).
    pub fn fst(&self) -> &Fst {
        &self.fst
    }

    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    pub fn input_syms(&self) -> &Arc<SymbolTable> {
        self.fst.isyms()
    }

    pub fn output_syms(&self) -> &Arc<SymbolTable> {
        self.fst.osyms()
    }

    /// Native-script symbol table regardless of direction.
    pub fn native_syms(&self) -> &Arc<SymbolTable> {
        if self.reversed {
            self.fst.osyms()
        } else {
            self.fst.isyms()
        }
    }

    pub fn latin_syms(&self) -> &Arc<SymbolTable> {
        if self.reversed {
            self.fst.isyms()
        } else {
            self.fst.osyms()
        }
    }

    /// The same joint model read in the opposite direction.
    pub fn reverse(&self) -> Transliterator {
        Transliterator {
            fst: self.fst.invert(),
            reversed: !self.reversed,
            ..self.clone()
        }
    }
}

impl Romanizer for Transliterator {
    fn transliterate(&self, word: &str, k: usize) -> Result<TransliterationResult, TranslitError> {
        decode(&self.fst, word, k)
    }
}

/// Trains a native-to-Latin transliterator from `lexicon`.
pub fn build_transliterator(
    lexicon: &Lexicon,
    config: &BuildConfig,
) -> Result<Transliterator, TranslitError> {
    let entries = lexicon.training_entries();
    if entries.is_empty() {
        return Err(TranslitError::EmptyLexicon(lexicon.language.clone()));
    }
    let outcome = em_train(entries.clone(), &config.em)?;

    let mut sequences = Vec::with_capacity(entries.len());
    let mut skipped = 0;
    for e in &entries {
        let native: String = e.native.iter().collect();
        let latin: String = e.latin.iter().collect();
        match viterbi_align(&outcome.model, &native, &latin) {
            Ok(al) => sequences.push((al.pairs, e.count)),
            Err(err) => {
                warn!("{}: skipping entry: {err}", lexicon.language);
                skipped += 1;
            }
        }
    }
    if sequences.is_empty() {
        return Err(TranslitError::AllUnalignable(lexicon.language.clone()));
    }
    let lm = train_ngram(&sequences, config.order)?;

    let mut native_chars = BTreeSet::new();
    let mut latin_chars = BTreeSet::new();
    for e in &entries {
        native_chars.extend(e.native.iter().copied());
        latin_chars.extend(e.latin.iter().copied());
    }
    let native_syms = Arc::new(SymbolTable::from_symbols(
        native_chars.iter().map(char::to_string),
    ));
    let latin_syms = Arc::new(SymbolTable::from_symbols(
        latin_chars.iter().map(char::to_string),
    ));
    let fst = to_fst(&lm, native_syms, latin_syms)?;

    Ok(Transliterator {
        manifest: Manifest {
            language: lexicon.language.clone(),
            order: config.order,
            em_iters: config.em.max_iters,
            em_tol: config.em.tol,
            entries: entries.len(),
            aligned: sequences.len(),
            skipped,
            em_iterations: outcome.iterations,
            created_unix: None,
        },
        align_model: outcome.model,
        lm,
        fst,
        reversed: false,
    })
}

/// Many-to-one transducer: the union of several transliterators sharing one
/// output table.
#[derive(Debug, Clone)]
pub struct UnionTransducer {
    languages: Vec<String>,
    fst: Fst,
}

impl UnionTransducer {
    pub fn languages(&self) -> &[String] {
        &self.languages
    }

    pub fn fst(&self) -> &Fst {
        &self.fst
    }
}

impl Romanizer for UnionTransducer {
    fn transliterate(&self, word: &str, k: usize) -> Result<TransliterationResult, TranslitError> {
        decode(&self.fst, word, k)
    }
}

pub fn build_union(members: &[&Transliterator]) -> Result<UnionTransducer, TranslitError> {
    if members.is_empty() {
        return Err(TranslitError::EmptyUnion);
    }
    let fsts: Vec<&Fst> = members.iter().map(|t| t.fst()).collect();
    Ok(UnionTransducer {
        languages: members.iter().map(|t| t.language().to_string()).collect(),
        fst: Fst::union(&fsts),
    })
}

fn decode(fst: &Fst, word: &str, k: usize) -> Result<TransliterationResult, TranslitError> {
    if word.is_empty() {
        return Err(TranslitError::EmptyWord);
    }
    let symbols: Vec<String> = word.chars().map(String::from).collect();
    let mut unknown: Vec<char> = word
        .chars()
        .filter(|c| fst.isyms().find(&c.to_string()).is_none())
        .collect();
    if !unknown.is_empty() {
        unknown.sort_unstable();
        unknown.dedup();
        return Err(TranslitError::UnknownCodepoints {
            word: word.to_string(),
            codepoints: unknown,
        });
    }
    let acceptor = Fst::linear_acceptor(&symbols, fst.isyms().clone())?;
    let lattice = compose(&acceptor, fst)?.connect();
    let candidates = shortest_paths(&lattice, k, true)
        .into_iter()
        .map(|p| Candidate {
            text: lattice.output_string(&p.output),
            weight: p.weight,
        })
        .collect();
    Ok(TransliterationResult { candidates })
}
