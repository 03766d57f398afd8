pub mod balance;
pub mod build;
pub mod normalize;
pub mod prep;
pub mod score;
pub mod translit;

use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::Path;

use translit_core::lexicon::Lexicon;
use translit_core::translit::{build_union, load_bundle, Romanizer, Transliterator};

use crate::error::CliError;

/// Buffered reader over a file, or stdin for `-`.
pub fn open_input(path: &Path) -> Result<Box<dyn BufRead>, CliError> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(io::stdin().lock()));
    }
    let f = File::open(path).map_err(|e| CliError::input(path, e))?;
    Ok(Box::new(BufReader::new(f)))
}

/// File stem, used as the language tag of a lexicon.
pub fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "und".into())
}

pub fn read_lexicon(path: &Path, language: &str) -> Result<Lexicon, CliError> {
    Lexicon::read_tsv(language, open_input(path)?).map_err(|e| CliError::input(path, e))
}

pub fn load_bundles(dirs: &[impl AsRef<Path>], reverse: bool) -> Result<Vec<Transliterator>, CliError> {
    dirs.iter()
        .map(|d| {
            let d = d.as_ref();
            if !d.is_dir() {
                return Err(CliError::Usage(format!("{}: not a bundle directory", d.display())));
            }
            let t = load_bundle(d).map_err(|e| CliError::Model(e.to_string()))?;
            Ok(if reverse { t.reverse() } else { t })
        })
        .collect()
}

/// A single bundle decodes directly; several decode through their union.
pub fn romanizer(members: Vec<Transliterator>) -> Result<Box<dyn Romanizer>, CliError> {
    if members.len() == 1 {
        return Ok(Box::new(members.into_iter().next().expect("one member")));
    }
    let refs: Vec<&Transliterator> = members.iter().collect();
    let union = build_union(&refs).map_err(|e| CliError::Model(e.to_string()))?;
    Ok(Box::new(union))
}
