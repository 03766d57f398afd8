//! Native-word to romanization lexicons and their TSV form
//! (`native<TAB>romanization<TAB>count`).

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use thiserror::Error;

use crate::align::TrainingEntry;

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Romanization {
    pub form: String,
    /// Observation count; absent when the source carried no frequency column.
    pub freq: Option<u64>,
}

impl Romanization {
    pub fn new(form: impl Into<String>, freq: u64) -> Self {
        Romanization {
            form: form.into(),
            freq: Some(freq),
        }
    }
}

/// Per-language map from native word to its distinct romanizations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Lexicon {
    pub language: String,
    entries: BTreeMap<String, Vec<Romanization>>,
}

impl Lexicon {
    pub fn new(language: impl Into<String>) -> Self {
        Lexicon {
            language: language.into(),
            entries: BTreeMap::new(),
        }
    }

    /// Adds one observation. Romanizations are lowercased; a repeated
    /// (native, form) pair accumulates its frequency.
    pub fn insert(&mut self, native: &str, form: &str, freq: Option<u64>) {
        let form = form.to_lowercase();
        let forms = self.entries.entry(native.to_string()).or_default();
        match forms.iter_mut().find(|r| r.form == form) {
            Some(r) => {
                r.freq = match (r.freq, freq) {
                    (Some(a), Some(b)) => Some(a + b),
                    (a, b) => a.or(b),
                }
            }
            None => forms.push(Romanization { form, freq }),
        }
    }

    pub fn get(&self, native: &str) -> Option<&[Romanization]> {
        self.entries.get(native).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[Romanization])> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    pub fn num_words(&self) -> usize {
        self.entries.len()
    }

    pub fn num_forms(&self) -> usize {
        self.entries.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub(crate) fn replace(&mut self, native: &str, forms: Vec<Romanization>) {
        debug_assert!(!forms.is_empty());
        self.entries.insert(native.to_string(), forms);
    }

    /// EM training entries; a missing frequency counts once and zero-frequency
    /// forms are dropped.
    pub fn training_entries(&self) -> Vec<TrainingEntry> {
        self.iter()
            .flat_map(|(native, forms)| {
                forms.iter().filter_map(move |r| {
                    let count = r.freq.unwrap_or(1);
                    (count > 0).then(|| TrainingEntry::new(native, &r.form, count as f64))
                })
            })
            .collect()
    }

    pub fn read_tsv<R: BufRead>(language: &str, r: R) -> Result<Lexicon, LexiconError> {
        let mut lex = Lexicon::new(language);
        for (n, line) in r.lines().enumerate() {
            let line = line?;
            let lineno = n + 1;
            let bad = |msg: String| LexiconError::Parse { line: lineno, msg };
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let (native, form, freq) = match fields.as_slice() {
                [native, form] => (*native, *form, None),
                [native, form, count] => {
                    let c: u64 = count
                        .trim()
                        .parse()
                        .map_err(|_| bad(format!("count `{count}` is not a non-negative integer")))?;
                    (*native, *form, Some(c))
                }
                _ => {
                    return Err(bad(format!(
                        "expected `native<TAB>romanization<TAB>count`, got {} field(s)",
                        fields.len()
                    )))
                }
            };
            for (what, field) in [("native word", native), ("romanization", form)] {
                if field.is_empty() {
                    return Err(bad(format!("empty {what}")));
                }
                if field.chars().any(char::is_whitespace) {
                    return Err(bad(format!("{what} `{field}` contains whitespace")));
                }
            }
            lex.insert(native, form, freq);
        }
        Ok(lex)
    }

    pub fn write_tsv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for (native, forms) in &self.entries {
            for r in forms {
                match r.freq {
                    Some(f) => writeln!(w, "{native}\t{}\t{f}", r.form)?,
                    None => writeln!(w, "{native}\t{}", r.form)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_merges() {
        let text = "कम\tKam\t3\nकम\tkam\t2\nकम\tkum\n\nनम\tnam\t0\n";
        let lex = Lexicon::read_tsv("hi", text.as_bytes()).unwrap();
        assert_eq!(lex.num_words(), 2);
        assert_eq!(
            lex.get("कम").unwrap(),
            &[
                Romanization::new("kam", 5),
                Romanization {
                    form: "kum".into(),
                    freq: None
                }
            ]
        );
        let entries = lex.training_entries();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[1].count, 1.0);
    }

    #[test]
    fn malformed_lines_name_their_number() {
        for bad in ["a\tb\nc\n", "a\tb\nc\td\tx\n", "a\tb\nc d\te\t1\n", "a\tb\n\tx\t1\n"] {
            match Lexicon::read_tsv("x", bad.as_bytes()) {
                Err(LexiconError::Parse { line, .. }) => assert_eq!(line, 2, "{bad:?}"),
                other => panic!("{bad:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn tsv_round_trip() {
        let text = "कम\tkam\t5\nकम\tkum\t1\nनम\tnam\n";
        let lex = Lexicon::read_tsv("hi", text.as_bytes()).unwrap();
        let mut out = Vec::new();
        lex.write_tsv(&mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), text);
    }
}
