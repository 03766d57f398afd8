//! Corpus normalization to Latin script and grapheme inventories.

use std::collections::{BTreeMap, HashMap};
use std::io::{BufRead, Write};

use log::debug;
use serde::Serialize;

use crate::script::{detect_script, ScriptTag};
use crate::translit::Romanizer;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormalizeOptions {
    /// Copy Latin tokens verbatim. When off they are lowercased to match the
    /// lowercase romanizations the transducers emit.
    pub passthrough_latin: bool,
}

impl Default for NormalizeOptions {
    fn default() -> Self {
        NormalizeOptions {
            passthrough_latin: true,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CorpusReport {
    pub lines: u64,
    pub tokens: u64,
    pub transliterated: u64,
    pub untransliterable: u64,
    pub per_script: BTreeMap<ScriptTag, u64>,
    pub graphemes_before: usize,
    pub graphemes_after: usize,
}

/// Exact per-codepoint counts, whitespace excluded.
pub fn grapheme_inventory<R: BufRead>(r: R) -> std::io::Result<BTreeMap<char, u64>> {
    let mut inv = BTreeMap::new();
    for line in r.lines() {
        add_to_inventory(&mut inv, &line?);
    }
    Ok(inv)
}

pub fn add_to_inventory(inv: &mut BTreeMap<char, u64>, text: &str) {
    for c in text.chars().filter(|c| !c.is_whitespace()) {
        *inv.entry(c).or_insert(0) += 1;
    }
}

/// Stateful per-line normalizer; caches transliterations by surface form.
pub struct Normalizer<'a, T: Romanizer + ?Sized> {
    romanizer: &'a T,
    options: NormalizeOptions,
    cache: HashMap<String, Option<String>>,
    before: BTreeMap<char, u64>,
    after: BTreeMap<char, u64>,
    report: CorpusReport,
}

impl<'a, T: Romanizer + ?Sized> Normalizer<'a, T> {
    pub fn new(romanizer: &'a T, options: NormalizeOptions) -> Self {
        Normalizer {
            romanizer,
            options,
            cache: HashMap::new(),
            before: BTreeMap::new(),
            after: BTreeMap::new(),
            report: CorpusReport::default(),
        }
    }

    /// Normalizes one transcript. Tokens are whitespace-separated and are
    /// rejoined with single spaces.
    pub fn line(&mut self, line: &str) -> String {
        add_to_inventory(&mut self.before, line);
        let mut out = Vec::new();
        for token in line.split_whitespace() {
            let tag = detect_script(token).unwrap_or(ScriptTag::Other);
            *self.report.per_script.entry(tag).or_insert(0) += 1;
            self.report.tokens += 1;
            let mapped = match tag {
                t if t.is_native() => match self.romanize(token) {
                    Some(latin) => {
                        self.report.transliterated += 1;
                        latin
                    }
                    None => {
                        self.report.untransliterable += 1;
                        token.to_string()
                    }
                },
                ScriptTag::Latin if !self.options.passthrough_latin => token.to_lowercase(),
                _ => token.to_string(),
            };
            out.push(mapped);
        }
        let joined = out.join(" ");
        add_to_inventory(&mut self.after, &joined);
        self.report.lines += 1;
        joined
    }

    fn romanize(&mut self, token: &str) -> Option<String> {
        if let Some(hit) = self.cache.get(token) {
            return hit.clone();
        }
        let best = match self.romanizer.transliterate(token, 1) {
            Ok(r) => r.best().map(str::to_string),
            Err(e) => {
                debug!("`{token}`: {e}");
                None
            }
        };
        self.cache.insert(token.to_string(), best.clone());
        best
    }

    pub fn finish(mut self) -> CorpusReport {
        self.report.graphemes_before = self.before.len();
        self.report.graphemes_after = self.after.len();
        self.report
    }
}

/// Streams `r` to `w` one transcript per line.
pub fn normalize_corpus<R, W, T>(
    r: R,
    mut w: W,
    romanizer: &T,
    options: NormalizeOptions,
) -> std::io::Result<CorpusReport>
where
    R: BufRead,
    W: Write,
    T: Romanizer + ?Sized,
{
    let mut n = Normalizer::new(romanizer, options);
    for line in r.lines() {
        let out = n.line(&line?);
        writeln!(w, "{out}")?;
    }
    Ok(n.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::translit::{Candidate, TranslitError, TransliterationResult};

    /// Maps क to "k" and nothing else.
    struct Toy;

    impl Romanizer for Toy {
        fn transliterate(&self, word: &str, _k: usize) -> Result<TransliterationResult, TranslitError> {
            if word.chars().all(|c| c == 'क') {
                Ok(TransliterationResult {
                    candidates: vec![Candidate {
                        text: "k".repeat(word.chars().count()),
                        weight: 0.0,
                    }],
                })
            } else {
                Ok(TransliterationResult::default())
            }
        }
    }

    #[test]
    fn inventory() {
        let inv = grapheme_inventory("ab ab".as_bytes()).unwrap();
        assert_eq!(inv, BTreeMap::from([('a', 2), ('b', 2)]));
        assert!(grapheme_inventory("".as_bytes()).unwrap().is_empty());
    }

    #[test]
    fn latin_lines_pass_through() {
        let mut out = Vec::new();
        let rep = normalize_corpus("Hello world\n".as_bytes(), &mut out, &Toy, NormalizeOptions::default())
            .unwrap();
        assert_eq!(out, b"Hello world\n");
        assert_eq!(rep.per_script[&ScriptTag::Latin], 2);

        let mut out = Vec::new();
        normalize_corpus(
            "Hello world\n".as_bytes(),
            &mut out,
            &Toy,
            NormalizeOptions { passthrough_latin: false },
        )
        .unwrap();
        assert_eq!(out, b"hello world\n");
    }

    #[test]
    fn native_tokens_and_failures() {
        let mut out = Vec::new();
        let rep = normalize_corpus(
            "कक ख 42\n\nx\n".as_bytes(),
            &mut out,
            &Toy,
            NormalizeOptions::default(),
        )
        .unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "kk ख 42\n\nx\n");
        assert_eq!(rep.lines, 3);
        assert_eq!(rep.tokens, 4);
        assert_eq!(rep.transliterated, 1);
        assert_eq!(rep.untransliterable, 1);
        assert_eq!(rep.per_script[&ScriptTag::Other], 1);
    }
}
