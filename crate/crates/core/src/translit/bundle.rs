//! On-disk model bundles: one directory per language.

use std::fmt::Display;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use super::{TranslitError, Transliterator};
use crate::align::AlignmentModel;
use crate::fst::Fst;
use crate::ngram::NGramModel;
use crate::symbols::SymbolTable;

pub const MANIFEST: &str = "manifest.txt";
pub const ALIGNMENT: &str = "alignment.tsv";
pub const ARPA: &str = "model.arpa";
pub const FST: &str = "model.fst";
pub const NATIVE_SYMS: &str = "native.syms";
pub const LATIN_SYMS: &str = "latin.syms";

pub const BUNDLE_FILES: [&str; 6] = [MANIFEST, ALIGNMENT, ARPA, FST, NATIVE_SYMS, LATIN_SYMS];

const FORMAT_VERSION: u32 = 1;

/// Build parameters and statistics, stored as `key=value` lines.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Manifest {
    pub language: String,
    pub order: usize,
    pub em_iters: usize,
    pub em_tol: f64,
    pub entries: usize,
    pub aligned: usize,
    pub skipped: usize,
    pub em_iterations: usize,
    pub created_unix: Option<u64>,
}

impl Manifest {
    pub fn write<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "format={FORMAT_VERSION}")?;
        writeln!(w, "language={}", self.language)?;
        writeln!(w, "order={}", self.order)?;
        writeln!(w, "em_iters={}", self.em_iters)?;
        writeln!(w, "em_tol={}", self.em_tol)?;
        writeln!(w, "entries={}", self.entries)?;
        writeln!(w, "aligned={}", self.aligned)?;
        writeln!(w, "skipped={}", self.skipped)?;
        writeln!(w, "em_iterations={}", self.em_iterations)?;
        if let Some(t) = self.created_unix {
            writeln!(w, "created_unix={t}")?;
        }
        Ok(())
    }

    pub fn read<R: BufRead>(r: R) -> Result<Manifest, String> {
        let mut m = Manifest {
            language: String::new(),
            order: 0,
            em_iters: 0,
            em_tol: 0.0,
            entries: 0,
            aligned: 0,
            skipped: 0,
            em_iterations: 0,
            created_unix: None,
        };
        let mut seen_language = false;
        let mut seen_order = false;
        for (n, line) in r.lines().enumerate() {
            let line = line.map_err(|e| e.to_string())?;
            if line.trim().is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key=value", n + 1))?;
            let num = |v: &str| -> Result<usize, String> {
                v.parse().map_err(|_| format!("line {}: bad {key} `{v}`", n + 1))
            };
            match key {
                "format" => {
                    if value != FORMAT_VERSION.to_string() {
                        return Err(format!("unsupported format `{value}`"));
                    }
                }
                "language" => {
                    m.language = value.to_string();
                    seen_language = true;
                }
                "order" => {
                    m.order = num(value)?;
                    seen_order = true;
                }
                "em_iters" => m.em_iters = num(value)?,
                "em_tol" => {
                    m.em_tol = value
                        .parse()
                        .map_err(|_| format!("line {}: bad em_tol `{value}`", n + 1))?
                }
                "entries" => m.entries = num(value)?,
                "aligned" => m.aligned = num(value)?,
                "skipped" => m.skipped = num(value)?,
                "em_iterations" => m.em_iterations = num(value)?,
                "created_unix" => {
                    m.created_unix = Some(
                        value
                            .parse()
                            .map_err(|_| format!("line {}: bad created_unix `{value}`", n + 1))?,
                    )
                }
                _ => log::debug!("manifest: ignoring key `{key}`"),
            }
        }
        if !seen_language || !seen_order {
            return Err("missing `language` or `order`".into());
        }
        Ok(m)
    }
}

fn bundle_err(path: &Path, e: impl Display) -> TranslitError {
    TranslitError::Bundle {
        path: path.display().to_string(),
        msg: e.to_string(),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, TranslitError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| bundle_err(path, e))
}

fn open(path: &Path) -> Result<BufReader<File>, TranslitError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| bundle_err(path, e))
}

/// Writes the forward model to `dir`, creating it if needed. With
/// `timestamp == false` the output is a pure function of the model.
pub fn save_bundle(t: &Transliterator, dir: &Path, timestamp: bool) -> Result<(), TranslitError> {
    std::fs::create_dir_all(dir).map_err(|e| bundle_err(dir, e))?;
    let forward = if t.is_reversed() { t.reverse() } else { t.clone() };

    let mut manifest = forward.manifest.clone();
    manifest.created_unix = if timestamp {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .ok()
            .map(|d| d.as_secs())
    } else {
        None
    };

    let write = |name: &str, f: &dyn Fn(&mut BufWriter<File>) -> Result<(), String>| {
        let path = dir.join(name);
        let mut w = create(&path)?;
        f(&mut w).map_err(|e| bundle_err(&path, e))?;
        w.flush().map_err(|e| bundle_err(&path, e))
    };
    write(MANIFEST, &|w| manifest.write(w).map_err(|e| e.to_string()))?;
    write(ALIGNMENT, &|w| {
        forward.align_model.write_tsv(w).map_err(|e| e.to_string())
    })?;
    write(ARPA, &|w| forward.lm.write_arpa(w).map_err(|e| e.to_string()))?;
    write(FST, &|w| forward.fst.write_text(w).map_err(|e| e.to_string()))?;
    write(NATIVE_SYMS, &|w| {
        forward.fst.isyms().write_text(w).map_err(|e| e.to_string())
    })?;
    write(LATIN_SYMS, &|w| {
        forward.fst.osyms().write_text(w).map_err(|e| e.to_string())
    })?;
    Ok(())
}

/// Loads a bundle in the native-to-Latin direction.
pub fn load_bundle(dir: &Path) -> Result<Transliterator, TranslitError> {
    let path = dir.join(MANIFEST);
    let manifest = Manifest::read(open(&path)?).map_err(|e| bundle_err(&path, e))?;

    let path = dir.join(ALIGNMENT);
    let align_model = AlignmentModel::read_tsv(open(&path)?).map_err(|e| bundle_err(&path, e))?;

    let path = dir.join(ARPA);
    let lm = NGramModel::read_arpa(open(&path)?).map_err(|e| bundle_err(&path, e))?;

    let path = dir.join(NATIVE_SYMS);
    let isyms = SymbolTable::read_text(open(&path)?).map_err(|e| bundle_err(&path, e))?;
    let path = dir.join(LATIN_SYMS);
    let osyms = SymbolTable::read_text(open(&path)?).map_err(|e| bundle_err(&path, e))?;

    let path = dir.join(FST);
    let fst = Fst::read_text(open(&path)?, Arc::new(isyms), Arc::new(osyms))
        .map_err(|e| bundle_err(&path, e))?;

    if lm.order() != manifest.order {
        return Err(bundle_err(
            &dir.join(ARPA),
            format!(
                "order {} disagrees with manifest order {}",
                lm.order(),
                manifest.order
            ),
        ));
    }
    Ok(Transliterator {
        manifest,
        align_model,
        lm,
        fst,
        reversed: false,
    })
}
