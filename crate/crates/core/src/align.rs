//! Monotone grapheme alignment between native-script and Latin words.
//!
//! Each word pair spans an edit lattice whose moves are a match `(c, d)`, a
//! deletion `(c, ε)` or an insertion `(ε, d)`, one codepoint per side. EM
//! estimates a unigram distribution over these pair symbols; Viterbi decoding
//! then turns each training pair into a pair-symbol sequence.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{BufRead, Write};

use log::warn;
use thiserror::Error;

use crate::symbols::EPSILON_SYMBOL;

/// Probability floor applied to reachable pair symbols after each M-step.
pub const PROB_FLOOR: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum AlignError {
    #[error("no training entries")]
    NoEntries,
    #[error("entry {index}: word `{word}` has no codepoints")]
    EmptyWord { index: usize, word: String },
    #[error("entry {index}: count must be positive, got {count}")]
    BadCount { index: usize, count: f64 },
    #[error("no monotone alignment of `{native}` / `{latin}` has nonzero probability")]
    Unalignable { native: String, latin: String },
    #[error("every training entry underflowed")]
    AllSkipped,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// One input grapheme paired with one output grapheme; either side may be
/// empty, but not both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairSymbol {
    input: Option<char>,
    output: Option<char>,
}

impl PairSymbol {
    pub fn new(input: Option<char>, output: Option<char>) -> Option<PairSymbol> {
        if input.is_none() && output.is_none() {
            None
        } else {
            Some(PairSymbol { input, output })
        }
    }

    pub fn matched(input: char, output: char) -> PairSymbol {
        PairSymbol {
            input: Some(input),
            output: Some(output),
        }
    }

    pub fn deletion(input: char) -> PairSymbol {
        PairSymbol {
            input: Some(input),
            output: None,
        }
    }

    pub fn insertion(output: char) -> PairSymbol {
        PairSymbol {
            input: None,
            output: Some(output),
        }
    }

    pub fn input(&self) -> Option<char> {
        self.input
    }

    pub fn output(&self) -> Option<char> {
        self.output
    }

    /// Input side as a symbol-table string, `<eps>` when empty.
    pub fn input_symbol(&self) -> String {
        side_symbol(self.input)
    }

    pub fn output_symbol(&self) -> String {
        side_symbol(self.output)
    }

    /// Parses the `input:output` form written by [`Display`](fmt::Display).
    pub fn parse(s: &str) -> Option<PairSymbol> {
        let (input, rest) = if let Some(rest) = s.strip_prefix(EPSILON_SYMBOL) {
            (None, rest)
        } else {
            let c = s.chars().next()?;
            (Some(c), &s[c.len_utf8()..])
        };
        let rest = rest.strip_prefix(':')?;
        let output = if rest == EPSILON_SYMBOL {
            None
        } else {
            let mut it = rest.chars();
            let c = it.next()?;
            if it.next().is_some() {
                return None;
            }
            Some(c)
        };
        PairSymbol::new(input, output)
    }
}

fn side_symbol(c: Option<char>) -> String {
    c.map_or_else(|| EPSILON_SYMBOL.to_string(), String::from)
}

impl fmt::Display for PairSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.input_symbol(), self.output_symbol())
    }
}

/// A word pair together with its pair-symbol segmentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignedPair {
    pub native_word: String,
    pub latin_word: String,
    pub pairs: Vec<PairSymbol>,
}

impl AlignedPair {
    /// Concatenated input sides.
    pub fn native_side(&self) -> String {
        self.pairs.iter().filter_map(|p| p.input).collect()
    }

    /// Concatenated output sides.
    pub fn latin_side(&self) -> String {
        self.pairs.iter().filter_map(|p| p.output).collect()
    }
}

/// Unigram distribution over pair symbols.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AlignmentModel {
    probs: BTreeMap<PairSymbol, f64>,
}

impl AlignmentModel {
    pub fn from_probs(probs: BTreeMap<PairSymbol, f64>) -> Self {
        AlignmentModel { probs }
    }

    pub fn prob(&self, p: &PairSymbol) -> f64 {
        self.probs.get(p).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PairSymbol, f64)> {
        self.probs.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.probs.values().sum()
    }

    /// `input<TAB>output<TAB>probability`, epsilon as `<eps>`.
    pub fn write_tsv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for (p, prob) in &self.probs {
            writeln!(w, "{}\t{}\t{}", p.input_symbol(), p.output_symbol(), prob)?;
        }
        Ok(())
    }

    pub fn read_tsv<R: BufRead>(r: R) -> Result<Self, AlignError> {
        let side = |s: &str, line: usize| -> Result<Option<char>, AlignError> {
            if s == EPSILON_SYMBOL {
                return Ok(None);
            }
            let mut it = s.chars();
            match (it.next(), it.next()) {
                (Some(c), None) => Ok(Some(c)),
                _ => Err(AlignError::Parse {
                    line,
                    msg: format!("`{s}` is not a single codepoint or {EPSILON_SYMBOL}"),
                }),
            }
        };
        let mut probs = BTreeMap::new();
        for (n, line) in r.lines().enumerate() {
            let line = line?;
            let lineno = n + 1;
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let [i, o, p] = fields.as_slice() else {
                return Err(AlignError::Parse {
                    line: lineno,
                    msg: "expected 3 tab-separated fields".into(),
                });
            };
            let sym = PairSymbol::new(side(i, lineno)?, side(o, lineno)?).ok_or_else(|| {
                AlignError::Parse {
                    line: lineno,
                    msg: "pair symbol with both sides empty".into(),
                }
            })?;
            let p: f64 = p.parse().map_err(|_| AlignError::Parse {
                line: lineno,
                msg: format!("bad probability `{p}`"),
            })?;
            probs.insert(sym, p);
        }
        Ok(AlignmentModel { probs })
    }
}

/// A training pair with its multiplicity.
#[derive(Debug, Clone)]
pub struct TrainingEntry {
    pub native: Vec<char>,
    pub latin: Vec<char>,
    pub count: f64,
}

impl TrainingEntry {
    pub fn new(native: &str, latin: &str, count: f64) -> Self {
        TrainingEntry {
            native: native.chars().collect(),
            latin: latin.chars().collect(),
            count,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmConfig {
    pub max_iters: usize,
    /// Stop once total log-likelihood improves by less than this.
    pub tol: f64,
}

impl Default for EmConfig {
    fn default() -> Self {
        EmConfig {
            max_iters: 10,
            tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EmOutcome {
    pub model: AlignmentModel,
    /// Total data log-likelihood of the initial model and after every M-step.
    pub log_likelihoods: Vec<f64>,
    pub iterations: usize,
    /// Entries whose lattice mass underflowed in the last E-step.
    pub skipped: usize,
}

/// Step-wise EM trainer; [`em_train`] drives it to convergence.
#[derive(Debug)]
pub struct AlignmentTrainer {
    entries: Vec<TrainingEntry>,
    reachable: BTreeSet<PairSymbol>,
    model: AlignmentModel,
}

#[derive(Debug, Clone)]
pub struct Expectations {
    pub counts: BTreeMap<PairSymbol, f64>,
    pub log_likelihood: f64,
    pub skipped: usize,
}

impl AlignmentTrainer {
    /// Validates `entries` and initializes a uniform model over every pair
    /// symbol reachable in some entry's lattice.
    pub fn new(entries: Vec<TrainingEntry>) -> Result<Self, AlignError> {
        if entries.is_empty() {
            return Err(AlignError::NoEntries);
        }
        let mut reachable = BTreeSet::new();
        for (index, e) in entries.iter().enumerate() {
            for w in [&e.native, &e.latin] {
                if w.is_empty() {
                    return Err(AlignError::EmptyWord {
                        index,
                        word: w.iter().collect(),
                    });
                }
            }
            if !(e.count > 0.0 && e.count.is_finite()) {
                return Err(AlignError::BadCount {
                    index,
                    count: e.count,
                });
            }
            for &c in &e.native {
                reachable.insert(PairSymbol::deletion(c));
                for &d in &e.latin {
                    reachable.insert(PairSymbol::matched(c, d));
                }
            }
            for &d in &e.latin {
                reachable.insert(PairSymbol::insertion(d));
            }
        }
        let p = 1.0 / reachable.len() as f64;
        let model = AlignmentModel {
            probs: reachable.iter().map(|&s| (s, p)).collect(),
        };
        Ok(AlignmentTrainer {
            entries,
            reachable,
            model,
        })
    }

    pub fn model(&self) -> &AlignmentModel {
        &self.model
    }

    pub fn entries(&self) -> &[TrainingEntry] {
        &self.entries
    }

    /// Forward-backward over every entry under the current model.
    pub fn expectations(&self) -> Expectations {
        let mut counts = BTreeMap::new();
        let mut log_likelihood = 0.0;
        let mut skipped = 0;
        for e in &self.entries {
            let lattice = Lattice::new(&self.model, &e.native, &e.latin);
            let z = lattice.total();
            if !(z.is_finite() && z >= f64::MIN_POSITIVE) {
                warn!(
                    "skipping `{}` / `{}`: alignment mass underflowed",
                    e.native.iter().collect::<String>(),
                    e.latin.iter().collect::<String>()
                );
                skipped += 1;
                continue;
            }
            log_likelihood += e.count * z.ln();
            lattice.accumulate(e.count / z, &mut counts);
        }
        Expectations {
            counts,
            log_likelihood,
            skipped,
        }
    }

    /// Renormalizes expected counts, floors reachable symbols and
    /// renormalizes again.
    pub fn maximize(&mut self, exp: &Expectations) {
        let total: f64 = exp.counts.values().sum();
        let mut probs: BTreeMap<PairSymbol, f64> = self
            .reachable
            .iter()
            .map(|s| {
                let c = exp.counts.get(s).copied().unwrap_or(0.0);
                let p = if total > 0.0 { c / total } else { 0.0 };
                (*s, p.max(PROB_FLOOR))
            })
            .collect();
        let z: f64 = probs.values().sum();
        for p in probs.values_mut() {
            *p /= z;
        }
        self.model = AlignmentModel { probs };
    }

    pub fn into_model(self) -> AlignmentModel {
        self.model
    }
}

/// Runs EM until `max_iters` M-steps or until the log-likelihood gain drops
/// below `tol`.
pub fn em_train(entries: Vec<TrainingEntry>, config: &EmConfig) -> Result<EmOutcome, AlignError> {
    let mut trainer = AlignmentTrainer::new(entries)?;
    let mut exp = trainer.expectations();
    if exp.skipped == trainer.entries.len() {
        return Err(AlignError::AllSkipped);
    }
    let mut log_likelihoods = vec![exp.log_likelihood];
    let mut iterations = 0;
    while iterations < config.max_iters {
        trainer.maximize(&exp);
        iterations += 1;
        exp = trainer.expectations();
        let prev = *log_likelihoods.last().expect("non-empty");
        log_likelihoods.push(exp.log_likelihood);
        if exp.log_likelihood - prev < config.tol {
            break;
        }
    }
    Ok(EmOutcome {
        skipped: exp.skipped,
        model: trainer.into_model(),
        log_likelihoods,
        iterations,
    })
}

/// Log of the summed probability of every monotone alignment; `-inf` when
/// none has mass.
pub fn alignment_likelihood(model: &AlignmentModel, native: &str, latin: &str) -> f64 {
    let x: Vec<char> = native.chars().collect();
    let y: Vec<char> = latin.chars().collect();
    Lattice::new(model, &x, &y).total().ln()
}

/// Most probable monotone alignment. At each lattice cell ties prefer a
/// match, then a deletion, then an insertion.
pub fn viterbi_align(
    model: &AlignmentModel,
    native: &str,
    latin: &str,
) -> Result<AlignedPair, AlignError> {
    let x: Vec<char> = native.chars().collect();
    let y: Vec<char> = latin.chars().collect();
    let (n, m) = (x.len(), y.len());
    let lp = |s: PairSymbol| model.prob(&s).ln();

    #[derive(Clone, Copy)]
    enum Back {
        Start,
        Match,
        Delete,
        Insert,
    }
    let mut score = vec![vec![f64::NEG_INFINITY; m + 1]; n + 1];
    let mut back = vec![vec![Back::Start; m + 1]; n + 1];
    score[0][0] = 0.0;
    for i in 0..=n {
        for j in 0..=m {
            if i == 0 && j == 0 {
                continue;
            }
            let mut best = f64::NEG_INFINITY;
            let mut how = Back::Start;
            if i > 0 && j > 0 {
                let s = score[i - 1][j - 1] + lp(PairSymbol::matched(x[i - 1], y[j - 1]));
                if s > best {
                    best = s;
                    how = Back::Match;
                }
            }
            if i > 0 {
                let s = score[i - 1][j] + lp(PairSymbol::deletion(x[i - 1]));
                if s > best {
                    best = s;
                    how = Back::Delete;
                }
            }
            if j > 0 {
                let s = score[i][j - 1] + lp(PairSymbol::insertion(y[j - 1]));
                if s > best {
                    best = s;
                    how = Back::Insert;
                }
            }
            score[i][j] = best;
            back[i][j] = how;
        }
    }
    if score[n][m] == f64::NEG_INFINITY {
        return Err(AlignError::Unalignable {
            native: native.to_string(),
            latin: latin.to_string(),
        });
    }
    let mut pairs = Vec::with_capacity(n + m);
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        match back[i][j] {
            Back::Match => {
                pairs.push(PairSymbol::matched(x[i - 1], y[j - 1]));
                i -= 1;
                j -= 1;
            }
            Back::Delete => {
                pairs.push(PairSymbol::deletion(x[i - 1]));
                i -= 1;
            }
            Back::Insert => {
                pairs.push(PairSymbol::insertion(y[j - 1]));
                j -= 1;
            }
            Back::Start => unreachable!("finite score has a back-pointer"),
        }
    }
    pairs.reverse();
    Ok(AlignedPair {
        native_word: native.to_string(),
        latin_word: latin.to_string(),
        pairs,
    })
}

/// Log-probability of an explicit pair sequence under the unigram model.
pub fn path_log_prob(model: &AlignmentModel, pairs: &[PairSymbol]) -> f64 {
    pairs.iter().map(|p| model.prob(p).ln()).sum()
}

/// Forward and backward tables of one edit lattice, in probability space.
struct Lattice<'a> {
    model: &'a AlignmentModel,
    x: &'a [char],
    y: &'a [char],
    alpha: Vec<Vec<f64>>,
}

impl<'a> Lattice<'a> {
    fn new(model: &'a AlignmentModel, x: &'a [char], y: &'a [char]) -> Self {
        let (n, m) = (x.len(), y.len());
        let mut alpha = vec![vec![0.0; m + 1]; n + 1];
        alpha[0][0] = 1.0;
        for i in 0..=n {
            for j in 0..=m {
                if i == 0 && j == 0 {
                    continue;
                }
                let mut a = 0.0;
                if i > 0 && j > 0 {
                    a += alpha[i - 1][j - 1] * model.prob(&PairSymbol::matched(x[i - 1], y[j - 1]));
                }
                if i > 0 {
                    a += alpha[i - 1][j] * model.prob(&PairSymbol::deletion(x[i - 1]));
                }
                if j > 0 {
                    a += alpha[i][j - 1] * model.prob(&PairSymbol::insertion(y[j - 1]));
                }
                alpha[i][j] = a;
            }
        }
        Lattice { model, x, y, alpha }
    }

    fn total(&self) -> f64 {
        self.alpha[self.x.len()][self.y.len()]
    }

    /// Adds `scale * alpha(src) * p * beta(dst)` for every lattice edge.
    fn accumulate(&self, scale: f64, counts: &mut BTreeMap<PairSymbol, f64>) {
        let (n, m) = (self.x.len(), self.y.len());
        let mut beta = vec![vec![0.0; m + 1]; n + 1];
        beta[n][m] = 1.0;
        for i in (0..=n).rev() {
            for j in (0..=m).rev() {
                if i == n && j == m {
                    continue;
                }
                let mut b = 0.0;
                if i < n && j < m {
                    let s = PairSymbol::matched(self.x[i], self.y[j]);
                    let edge = self.model.prob(&s) * beta[i + 1][j + 1];
                    b += edge;
                    self.add(counts, s, scale * self.alpha[i][j] * edge);
                }
                if i < n {
                    let s = PairSymbol::deletion(self.x[i]);
                    let edge = self.model.prob(&s) * beta[i + 1][j];
                    b += edge;
                    self.add(counts, s, scale * self.alpha[i][j] * edge);
                }
                if j < m {
                    let s = PairSymbol::insertion(self.y[j]);
                    let edge = self.model.prob(&s) * beta[i][j + 1];
                    b += edge;
                    self.add(counts, s, scale * self.alpha[i][j] * edge);
                }
                beta[i][j] = b;
            }
        }
    }

    fn add(&self, counts: &mut BTreeMap<PairSymbol, f64>, s: PairSymbol, v: f64) {
        if v > 0.0 {
            *counts.entry(s).or_insert(0.0) += v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_em_step_on_single_codepoint() {
        let out = em_train(
            vec![TrainingEntry::new("a", "a", 1.0)],
            &EmConfig {
                max_iters: 1,
                tol: 0.0,
            },
        )
        .unwrap();
        let m = &out.model;
        assert_eq!(m.len(), 3);
        // Posterior of the three alignments is 3/5, 1/5, 1/5 under the
        // uniform start; expected counts 3/5, 2/5, 2/5.
        assert!((m.prob(&PairSymbol::matched('a', 'a')) - 3.0 / 7.0).abs() < 1e-12);
        assert!((m.prob(&PairSymbol::deletion('a')) - 2.0 / 7.0).abs() < 1e-12);
        assert!((m.prob(&PairSymbol::insertion('a')) - 2.0 / 7.0).abs() < 1e-12);
    }

    #[test]
    fn diagonal_wins_after_training() {
        let out = em_train(vec![TrainingEntry::new("ab", "ab", 1.0)], &EmConfig::default()).unwrap();
        let al = viterbi_align(&out.model, "ab", "ab").unwrap();
        assert_eq!(
            al.pairs,
            [PairSymbol::matched('a', 'a'), PairSymbol::matched('b', 'b')]
        );
    }

    #[test]
    fn forced_alignments() {
        let model = AlignmentModel::from_probs(BTreeMap::from([(PairSymbol::matched('a', 'a'), 1.0)]));
        let al = viterbi_align(&model, "a", "a").unwrap();
        assert_eq!(al.pairs, [PairSymbol::matched('a', 'a')]);
        assert_eq!(alignment_likelihood(&model, "a", "a"), 0.0);

        let ins = AlignmentModel::from_probs(BTreeMap::from([(PairSymbol::insertion('x'), 0.5)]));
        let al = viterbi_align(&ins, "", "x").unwrap();
        assert_eq!(al.pairs, [PairSymbol::insertion('x')]);

        assert!(matches!(
            viterbi_align(&model, "b", "a"),
            Err(AlignError::Unalignable { .. })
        ));
        assert_eq!(alignment_likelihood(&model, "b", "a"), f64::NEG_INFINITY);
    }

    #[test]
    fn viterbi_tie_prefers_match() {
        // Match and delete+insert both have probability 1/4 here.
        let model = AlignmentModel::from_probs(BTreeMap::from([
            (PairSymbol::matched('a', 'b'), 0.25),
            (PairSymbol::deletion('a'), 0.5),
            (PairSymbol::insertion('b'), 0.5),
        ]));
        let al = viterbi_align(&model, "a", "b").unwrap();
        assert_eq!(al.pairs, [PairSymbol::matched('a', 'b')]);
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(matches!(
            em_train(Vec::new(), &EmConfig::default()),
            Err(AlignError::NoEntries)
        ));
        assert!(matches!(
            em_train(vec![TrainingEntry::new("", "a", 1.0)], &EmConfig::default()),
            Err(AlignError::EmptyWord { index: 0, .. })
        ));
        assert!(matches!(
            em_train(vec![TrainingEntry::new("a", "a", 0.0)], &EmConfig::default()),
            Err(AlignError::BadCount { .. })
        ));
    }

    #[test]
    fn pair_symbol_text_forms() {
        for s in ["a:x", "<eps>:x", "क:<eps>", "::a", ":::"] {
            let p = PairSymbol::parse(s).unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert!(PairSymbol::parse("<eps>:<eps>").is_none());
        assert!(PairSymbol::parse("ab:x").is_none());
    }

    #[test]
    fn model_tsv_round_trip() {
        let out = em_train(
            vec![TrainingEntry::new("कम", "kam", 2.0), TrainingEntry::new("म", "ma", 1.0)],
            &EmConfig::default(),
        )
        .unwrap();
        let mut buf = Vec::new();
        out.model.write_tsv(&mut buf).unwrap();
        let back = AlignmentModel::read_tsv(buf.as_slice()).unwrap();
        assert_eq!(back, out.model);
    }
}
