//! Backoff n-gram models over pair-symbol sequences.
//!
//! Probabilities are Witten-Bell estimates stored in backoff form: a context
//! `h` keeps explicit conditionals for every token seen after it, and
//! `P(w | h) = α(h) · P(w | h')` for the rest, where `h'` drops the oldest
//! token. The lowest order interpolates with a uniform distribution over the
//! predicted vocabulary. All log-probabilities are natural logs.

mod arpa;
mod compile;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::align::PairSymbol;

pub use compile::to_fst;

pub const DEFAULT_ORDER: usize = 6;
pub const BOS: &str = "<s>";
pub const EOS: &str = "</s>";

#[derive(Debug, Error)]
pub enum LmError {
    #[error("no training sequences")]
    Empty,
    #[error("n-gram order must be at least 1")]
    ZeroOrder,
    #[error("sequence {index}: count must be positive, got {count}")]
    BadCount { index: usize, count: f64 },
    #[error("symbol `{0}` is missing from the symbol table")]
    UnknownSymbol(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A position in a padded pair sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Token {
    Bos,
    Eos,
    Pair(PairSymbol),
}

impl Token {
    pub fn parse(s: &str) -> Option<Token> {
        match s {
            BOS => Some(Token::Bos),
            EOS => Some(Token::Eos),
            _ => PairSymbol::parse(s).map(Token::Pair),
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Bos => f.write_str(BOS),
            Token::Eos => f.write_str(EOS),
            Token::Pair(p) => p.fmt(f),
        }
    }
}

/// Explicit conditionals and backoff weight of one history.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Context {
    pub probs: BTreeMap<Token, f64>,
    pub backoff: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NGramModel {
    order: usize,
    /// Every token the model can predict: observed pair symbols and `</s>`.
    vocab: BTreeSet<Token>,
    contexts: BTreeMap<Vec<Token>, Context>,
}

/// Witten-Bell interpolation of one conditional: `count` of `w` after `h`,
/// `total` tokens and `types` distinct tokens after `h`, and `lower` the
/// lower-order probability of `w`.
pub fn witten_bell(count: f64, total: f64, types: f64, lower: f64) -> f64 {
    (count + types * lower) / (total + types)
}

impl NGramModel {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn vocab(&self) -> &BTreeSet<Token> {
        &self.vocab
    }

    pub fn contexts(&self) -> &BTreeMap<Vec<Token>, Context> {
        &self.contexts
    }

    pub fn context(&self, h: &[Token]) -> Option<&Context> {
        self.contexts.get(h)
    }

    /// Pair symbols the model can emit.
    pub fn pair_symbols(&self) -> impl Iterator<Item = PairSymbol> + '_ {
        self.vocab.iter().filter_map(|t| match t {
            Token::Pair(p) => Some(*p),
            _ => None,
        })
    }

    /// `ln P(w | h)` with recursive backoff. Histories longer than
    /// `order - 1` are truncated; unknown histories back off at no cost.
    pub fn cond_log_prob(&self, history: &[Token], w: Token) -> f64 {
        let start = history.len().saturating_sub(self.order - 1);
        let mut h = &history[start..];
        let mut acc = 0.0;
        loop {
            if let Some(ctx) = self.contexts.get(h) {
                if let Some(&p) = ctx.probs.get(&w) {
                    return acc + p;
                }
                acc += ctx.backoff;
            }
            if h.is_empty() {
                return f64::NEG_INFINITY;
            }
            h = &h[1..];
        }
    }

    /// Joint log-probability of `pairs` with `<s>`/`</s>` padding.
    pub fn score_sequence(&self, pairs: &[PairSymbol]) -> f64 {
        let tokens = padded(pairs);
        let mut total = 0.0;
        for j in 1..tokens.len() {
            total += self.cond_log_prob(&tokens[..j], tokens[j]);
        }
        total
    }

    /// Summed probability over the vocabulary for history `h`; should be 1.
    pub fn context_mass(&self, h: &[Token]) -> f64 {
        self.vocab
            .iter()
            .map(|&w| self.cond_log_prob(h, w).exp())
            .sum()
    }
}

fn padded(pairs: &[PairSymbol]) -> Vec<Token> {
    let mut tokens = Vec::with_capacity(pairs.len() + 2);
    tokens.push(Token::Bos);
    tokens.extend(pairs.iter().copied().map(Token::Pair));
    tokens.push(Token::Eos);
    tokens
}

/// Counts every n-gram up to `order` in each padded sequence (weighted by
/// its count) and derives Witten-Bell backoff estimates.
pub fn train_ngram(sequences: &[(Vec<PairSymbol>, f64)], order: usize) -> Result<NGramModel, LmError> {
    if order == 0 {
        return Err(LmError::ZeroOrder);
    }
    if sequences.is_empty() {
        return Err(LmError::Empty);
    }
    let mut counts: BTreeMap<Vec<Token>, BTreeMap<Token, f64>> = BTreeMap::new();
    for (index, (pairs, count)) in sequences.iter().enumerate() {
        if !(*count > 0.0 && count.is_finite()) {
            return Err(LmError::BadCount {
                index,
                count: *count,
            });
        }
        let tokens = padded(pairs);
        for j in 1..tokens.len() {
            for k in 0..=(order - 1).min(j) {
                *counts
                    .entry(tokens[j - k..j].to_vec())
                    .or_default()
                    .entry(tokens[j])
                    .or_insert(0.0) += count;
            }
        }
    }

    let vocab: BTreeSet<Token> = counts[&Vec::new()].keys().copied().collect();
    let mut model = NGramModel {
        order,
        vocab,
        contexts: BTreeMap::new(),
    };

    let mut by_len: Vec<(&Vec<Token>, &BTreeMap<Token, f64>)> = counts.iter().collect();
    by_len.sort_by_key(|(h, _)| h.len());
    let uniform = 1.0 / model.vocab.len() as f64;
    for (h, followers) in by_len {
        let total: f64 = followers.values().sum();
        let types = followers.len() as f64;
        let probs = followers
            .iter()
            .map(|(&w, &c)| {
                let lower = if h.is_empty() {
                    uniform
                } else {
                    model.cond_log_prob(&h[1..], w).exp()
                };
                (w, witten_bell(c, total, types, lower).ln())
            })
            .collect();
        let backoff = if h.is_empty() {
            0.0
        } else {
            (types / (total + types)).ln()
        };
        model.contexts.insert(h.clone(), Context { probs, backoff });
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: char, o: char) -> PairSymbol {
        PairSymbol::matched(i, o)
    }

    #[test]
    fn unigram_is_add_one_over_vocab() {
        let m = train_ngram(&[(vec![p('a', 'x'), p('b', 'y'), p('a', 'x')], 1.0)], 1).unwrap();
        // counts a:x 2, b:y 1, </s> 1; N = 4, V = 3.
        let lp = |w| m.cond_log_prob(&[], w);
        assert!((lp(Token::Pair(p('a', 'x'))) - (3.0f64 / 7.0).ln()).abs() < 1e-12);
        assert!((lp(Token::Pair(p('b', 'y'))) - (2.0f64 / 7.0).ln()).abs() < 1e-12);
        assert!((lp(Token::Eos) - (2.0f64 / 7.0).ln()).abs() < 1e-12);
        assert_eq!(lp(Token::Pair(p('c', 'z'))), f64::NEG_INFINITY);
    }

    #[test]
    fn bigram_hand_computed() {
        // Sequence a: <s> a </s>. Unigram: a 1, </s> 1 -> 1/2 each.
        // Context <s>: a 1, T=1 -> (1 + 1/2)/2 = 3/4; α = 1/2.
        let a = p('a', 'a');
        let m = train_ngram(&[(vec![a], 1.0)], 2).unwrap();
        let bos = [Token::Bos];
        assert!((m.cond_log_prob(&bos, Token::Pair(a)) - 0.75f64.ln()).abs() < 1e-12);
        assert!((m.cond_log_prob(&bos, Token::Eos) - 0.25f64.ln()).abs() < 1e-12);
        assert!((m.context(&bos).unwrap().backoff - 0.5f64.ln()).abs() < 1e-12);
        // score = ln P(a|<s>) + ln P(</s>|a) where context a: </s> 1 ->
        // (1 + 1/2)/2 = 3/4.
        assert!((m.score_sequence(&[a]) - (0.75f64 * 0.75).ln()).abs() < 1e-12);
    }

    #[test]
    fn empty_sequence_scores_end_given_begin() {
        let m = train_ngram(&[(vec![p('a', 'x')], 2.0), (vec![], 1.0)], 3).unwrap();
        assert_eq!(m.score_sequence(&[]), m.cond_log_prob(&[Token::Bos], Token::Eos));
    }

    #[test]
    fn every_context_is_normalized() {
        let seqs = vec![
            (vec![p('a', 'x'), p('b', 'y'), p('a', 'x')], 3.0),
            (vec![p('b', 'y'), PairSymbol::insertion('h')], 1.0),
            (vec![PairSymbol::deletion('c')], 2.0),
        ];
        for order in 1..=6 {
            let m = train_ngram(&seqs, order).unwrap();
            for h in m.contexts().keys() {
                assert!((m.context_mass(h) - 1.0).abs() < 1e-9, "order {order} context {h:?}");
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(train_ngram(&[], 3), Err(LmError::Empty)));
        assert!(matches!(train_ngram(&[(vec![], 1.0)], 0), Err(LmError::ZeroOrder)));
        assert!(matches!(
            train_ngram(&[(vec![], -1.0)], 2),
            Err(LmError::BadCount { .. })
        ));
    }
}
