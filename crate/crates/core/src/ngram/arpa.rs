//! ARPA-style text serialization.
//!
//! Values in the file are base-10 logs; the model keeps natural logs. Pair
//! symbols are written `input:output` with `<eps>` for an empty side.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::LN_10;
use std::io::{BufRead, Write};

use super::{Context, LmError, NGramModel, Token};

/// Log10 stand-in for `ln 0` on the `<s>` unigram line.
const LOG_ZERO: f64 = -99.0;

impl NGramModel {
    pub fn write_arpa<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        // n-gram lines grouped by order: (history, word, ln p)
        let mut by_order: Vec<Vec<(Vec<Token>, f64)>> = vec![Vec::new(); self.order];
        for (h, ctx) in &self.contexts {
            for (&t, &lp) in &ctx.probs {
                let mut gram = h.clone();
                gram.push(t);
                by_order[h.len()].push((gram, lp));
            }
        }
        let has_bos = self.contexts.contains_key([Token::Bos].as_slice());
        if has_bos {
            by_order[0].push((vec![Token::Bos], f64::NEG_INFINITY));
            by_order[0].sort_by(|a, b| a.0.cmp(&b.0));
        }

        writeln!(w, "\\data\\")?;
        for (k, grams) in by_order.iter().enumerate() {
            writeln!(w, "ngram {}={}", k + 1, grams.len())?;
        }
        for (k, grams) in by_order.iter().enumerate() {
            writeln!(w)?;
            writeln!(w, "\\{}-grams:", k + 1)?;
            for (gram, lp) in grams {
                let lp10 = if lp.is_finite() { lp / LN_10 } else { LOG_ZERO };
                let words = gram.iter().map(Token::to_string).collect::<Vec<_>>().join(" ");
                match self.contexts.get(gram) {
                    Some(ctx) => writeln!(w, "{lp10}\t{words}\t{}", ctx.backoff / LN_10)?,
                    None => writeln!(w, "{lp10}\t{words}")?,
                }
            }
        }
        writeln!(w)?;
        writeln!(w, "\\end\\")?;
        Ok(())
    }

    pub fn read_arpa<R: BufRead>(r: R) -> Result<NGramModel, LmError> {
        let mut declared: BTreeMap<usize, usize> = BTreeMap::new();
        let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
        let mut section: Option<usize> = None;
        let mut in_data = false;
        let mut contexts: BTreeMap<Vec<Token>, Context> = BTreeMap::new();
        let mut backoffs: Vec<(Vec<Token>, f64)> = Vec::new();
        let mut ended = false;

        for (n, line) in r.lines().enumerate() {
            let line = line?;
            let lineno = n + 1;
            let bad = |msg: String| LmError::Parse { line: lineno, msg };
            let text = line.trim_end();
            if text.is_empty() {
                continue;
            }
            if text == "\\data\\" {
                in_data = true;
                continue;
            }
            if text == "\\end\\" {
                ended = true;
                break;
            }
            if let Some(k) = text
                .strip_prefix('\\')
                .and_then(|s| s.strip_suffix("-grams:"))
            {
                let k: usize = k.parse().map_err(|_| bad(format!("bad section `{text}`")))?;
                section = Some(k);
                in_data = false;
                continue;
            }
            if in_data {
                let (k, c) = text
                    .strip_prefix("ngram ")
                    .and_then(|s| s.split_once('='))
                    .ok_or_else(|| bad(format!("bad header line `{text}`")))?;
                let k = k.trim().parse().map_err(|_| bad("bad order".into()))?;
                let c = c.trim().parse().map_err(|_| bad("bad count".into()))?;
                declared.insert(k, c);
                continue;
            }
            let k = section.ok_or_else(|| bad("n-gram line outside a section".into()))?;
            let fields: Vec<&str> = text.split('\t').collect();
            let (lp, words, bo) = match fields.as_slice() {
                [lp, words] => (*lp, *words, None),
                [lp, words, bo] => (*lp, *words, Some(*bo)),
                _ => return Err(bad("expected 2 or 3 tab-separated fields".into())),
            };
            let lp10: f64 = lp.parse().map_err(|_| bad(format!("bad logprob `{lp}`")))?;
            let gram = words
                .split(' ')
                .map(|t| Token::parse(t).ok_or_else(|| bad(format!("bad token `{t}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            if gram.len() != k {
                return Err(bad(format!("expected {k} tokens, got {}", gram.len())));
            }
            *seen.entry(k).or_default() += 1;
            let (word, history) = gram.split_last().expect("k >= 1");
            if *word != Token::Bos {
                contexts
                    .entry(history.to_vec())
                    .or_default()
                    .probs
                    .insert(*word, lp10 * LN_10);
            }
            if let Some(bo) = bo {
                let bo: f64 = bo.parse().map_err(|_| bad(format!("bad backoff `{bo}`")))?;
                backoffs.push((gram, bo * LN_10));
            }
        }
        if !ended {
            return Err(LmError::Parse {
                line: 0,
                msg: "missing \\end\\ marker".into(),
            });
        }
        let nonempty: BTreeMap<usize, usize> =
            declared.iter().filter(|(_, &c)| c > 0).map(|(&k, &c)| (k, c)).collect();
        if nonempty != seen {
            return Err(LmError::Parse {
                line: 0,
                msg: format!("header counts {declared:?} disagree with body {seen:?}"),
            });
        }
        for (gram, bo) in backoffs {
            contexts.entry(gram).or_default().backoff = bo;
        }
        let order = declared.keys().max().copied().ok_or(LmError::Empty)?;
        let vocab: BTreeSet<Token> = contexts
            .get(&Vec::new())
            .ok_or(LmError::Empty)?
            .probs
            .keys()
            .copied()
            .collect();
        Ok(NGramModel {
            order,
            vocab,
            contexts,
        })
    }
}
