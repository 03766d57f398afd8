use std::io::{self, BufRead, Write};

use translit_core::translit::TranslitError;

use super::{load_bundles, romanizer};
use crate::error::CliError;
use crate::TranslitArgs;

/// Printed in place of candidates when a word cannot be transliterated.
pub const UNKNOWN: &str = "<unk>";

pub fn run(a: TranslitArgs) -> Result<(), CliError> {
    let machine = romanizer(load_bundles(&a.bundles, a.reverse)?)?;
    let stdin = io::stdin().lock();
    let mut out = io::BufWriter::new(io::stdout().lock());
    for line in stdin.lines() {
        let line = line?;
        for word in line.split_whitespace() {
            write!(out, "{word}")?;
            match machine.transliterate(word, a.k.into()) {
                Ok(r) if !r.is_empty() => {
                    for c in r.texts() {
                        write!(out, "\t{c}")?;
                    }
                }
                Ok(_) => {
                    eprintln!("translit: `{word}`: no accepting path");
                    write!(out, "\t{UNKNOWN}")?;
                }
                Err(e @ TranslitError::UnknownCodepoints { .. }) => {
                    eprintln!("translit: {e}");
                    write!(out, "\t{UNKNOWN}")?;
                }
                Err(e) => return Err(CliError::Model(e.to_string())),
            }
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(())
}
