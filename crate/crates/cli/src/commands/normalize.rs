use std::fs::File;
use std::io::{self, BufWriter, Write};

use log::info;
use translit_core::corpus::{normalize_corpus, NormalizeOptions};

use super::{load_bundles, open_input, romanizer};
use crate::error::CliError;
use crate::NormalizeArgs;

pub fn run(a: NormalizeArgs) -> Result<(), CliError> {
    let machine = romanizer(load_bundles(&a.bundles, false)?)?;
    let input = open_input(&a.corpus)?;
    let mut out = BufWriter::new(io::stdout().lock());
    let options = NormalizeOptions {
        passthrough_latin: a.passthrough_latin,
    };
    let report = normalize_corpus(input, &mut out, machine.as_ref(), options)
        .map_err(|e| CliError::input(&a.corpus, e))?;
    out.flush()?;
    info!(
        "{} lines, {} tokens, {} transliterated, {} untransliterable",
        report.lines, report.tokens, report.transliterated, report.untransliterable
    );
    if report.untransliterable > 0 {
        log::warn!("{} token(s) copied through untransliterated", report.untransliterable);
    }
    if let Some(path) = &a.report {
        let f = File::create(path).map_err(|e| CliError::input(path, e))?;
        let mut w = BufWriter::new(f);
        serde_json::to_writer_pretty(&mut w, &report).map_err(|e| CliError::input(path, e))?;
        writeln!(w)?;
        w.flush()?;
    }
    Ok(())
}
