use std::fs::File;
use std::io::{self, BufRead, BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use translit_core::scoring::{tokenize, CandidateExpander, WerReport};

use super::{load_bundles, open_input, romanizer};
use crate::error::CliError;
use crate::ScoreArgs;

const INTERPRETATION: &str = "tokens match when their candidate sets intersect; \
a set holds the lowercased token plus its k-best romanizations if it is in a native script";

#[derive(Debug, Serialize)]
struct Utterance {
    id: String,
    #[serde(flatten)]
    report: WerReport,
}

#[derive(Debug, Serialize)]
struct ScoreReport {
    metric: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    interpretation: Option<&'static str>,
    summary: String,
    total: WerReport,
    utterances: Vec<Utterance>,
}

/// Splits an optional `uttid<TAB>` prefix.
fn split_id(line: &str) -> (Option<&str>, &str) {
    match line.split_once('\t') {
        Some((id, text)) => (Some(id), text),
        None => (None, line),
    }
}

fn read_lines(path: &Path) -> Result<Vec<String>, CliError> {
    open_input(path)?
        .lines()
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::input(path, e))
}

pub fn run(a: ScoreArgs) -> Result<(), CliError> {
    let refs = read_lines(&a.reference)?;
    let hyps = read_lines(&a.hypothesis)?;
    if refs.len() != hyps.len() {
        return Err(CliError::Usage(format!(
            "{} has {} lines but {} has {}",
            a.reference.display(),
            refs.len(),
            a.hypothesis.display(),
            hyps.len()
        )));
    }
    let k = usize::from(a.k);
    let machine = if a.bundles.is_empty() {
        None
    } else {
        Some(romanizer(load_bundles(&a.bundles, false)?)?)
    };
    let mut expander = machine.as_deref().map(|m| CandidateExpander::new(m, k));

    let mut total = WerReport::default();
    let mut utterances = Vec::with_capacity(refs.len());
    for (n, (r, h)) in refs.iter().zip(&hyps).enumerate() {
        let lineno = n + 1;
        let (rid, rtext) = split_id(r);
        let (hid, htext) = split_id(h);
        if let (Some(x), Some(y)) = (rid, hid) {
            if x != y {
                return Err(CliError::Usage(format!(
                    "line {lineno}: utterance ids differ (`{x}` vs `{y}`)"
                )));
            }
        }
        let (rt, ht) = (tokenize(rtext), tokenize(htext));
        let scored = match expander.as_mut() {
            Some(e) => e.align(&rt, &ht).map(|(_, rep)| rep),
            None => translit_core::scoring::wer(&rt, &ht),
        };
        let report = scored.map_err(|e| CliError::input(&a.reference, format!("line {lineno}: {e}")))?;
        total = total.merge(&report);
        utterances.push(Utterance {
            id: rid.or(hid).map_or_else(|| lineno.to_string(), str::to_string),
            report,
        });
    }

    let summary = total.to_string();
    if let Some(path) = &a.report {
        let translit = machine.is_some();
        let report = ScoreReport {
            metric: if translit { "translit_optimized_wer" } else { "wer" },
            k: translit.then_some(k),
            interpretation: translit.then_some(INTERPRETATION),
            summary: summary.clone(),
            total,
            utterances,
        };
        let f = File::create(path).map_err(|e| CliError::input(path, e))?;
        let mut w = BufWriter::new(f);
        serde_json::to_writer_pretty(&mut w, &report).map_err(|e| CliError::input(path, e))?;
        writeln!(w)?;
        w.flush()?;
    }
    writeln!(io::stdout().lock(), "{summary}")?;
    Ok(())
}
