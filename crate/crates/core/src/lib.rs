//! Transliteration toolkit: pair-symbol alignment, pair n-gram models
//! compiled to weighted transducers, lexicon pre-processing, script
//! normalization of corpora and transliteration-aware WER.

pub mod align;
pub mod balance;
pub mod corpus;
pub mod fst;
pub mod lexicon;
pub mod ngram;
pub mod prep;
pub mod script;
pub mod scoring;
pub mod semiring;
pub mod symbols;
pub mod translit;

pub use fst::{compose, shortest_paths, Fst, FstError, StateId, Transition, WeightedPath};
pub use semiring::Weight;
pub use symbols::{Label, SymbolTable, EPSILON, EPSILON_SYMBOL};
