use std::fs::File;
use std::io::{self, BufWriter, Write};

use translit_core::prep::{apply, summarize, PrepMode};

use super::{read_lexicon, stem};
use crate::error::CliError;
use crate::{Mode, PrepArgs};

pub fn run(a: PrepArgs) -> Result<(), CliError> {
    let mode = match a.mode {
        Mode::Ab => PrepMode::Agreement,
        Mode::Fb => PrepMode::Frequency,
        Mode::AbFb => PrepMode::AgreementThenFrequency,
    };
    if !matches!(mode, PrepMode::Frequency) && a.lexicons.len() < 2 {
        return Err(CliError::Usage(format!(
            "--mode ab needs at least 2 lexicons, got {}",
            a.lexicons.len()
        )));
    }
    let before = a
        .lexicons
        .iter()
        .map(|p| read_lexicon(p, &stem(p)))
        .collect::<Result<Vec<_>, _>>()?;
    let after = apply(mode, &before).map_err(|e| CliError::Usage(e.to_string()))?;

    std::fs::create_dir_all(&a.out_dir).map_err(|e| CliError::input(&a.out_dir, e))?;
    for (path, lex) in a.lexicons.iter().zip(&after) {
        let name = path
            .file_name()
            .ok_or_else(|| CliError::Usage(format!("{}: not a file", path.display())))?;
        let dest = a.out_dir.join(name);
        if dest.canonicalize().ok() == path.canonicalize().ok() {
            return Err(CliError::Usage(format!(
                "{}: refusing to overwrite an input lexicon",
                dest.display()
            )));
        }
        let mut w = BufWriter::new(File::create(&dest).map_err(|e| CliError::input(&dest, e))?);
        lex.write_tsv(&mut w).and_then(|_| w.flush()).map_err(|e| CliError::input(&dest, e))?;
    }

    let summary = summarize(mode, &before, &after);
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &summary).map_err(|e| CliError::Usage(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}
