use std::collections::HashMap;
use std::io::{BufRead, Write};

use thiserror::Error;

/// Symbol identifier. `0` is reserved for epsilon.
pub type Label = u32;

pub const EPSILON: Label = 0;
pub const EPSILON_SYMBOL: &str = "<eps>";

#[derive(Debug, Error)]
pub enum SymbolTableError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Bidirectional map between symbol strings and labels.
///
/// Id 0 always maps to `<eps>`; user symbols start at 1 and are dense.
#[derive(Debug, Clone)]
pub struct SymbolTable {
    symbols: Vec<String>,
    ids: HashMap<String, Label>,
}

impl PartialEq for SymbolTable {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for SymbolTable {}

impl Default for SymbolTable {
    fn default() -> Self {
        Self::new()
    }
}

impl SymbolTable {
    pub fn new() -> Self {
        let mut ids = HashMap::new();
        ids.insert(EPSILON_SYMBOL.to_string(), EPSILON);
        SymbolTable {
            symbols: vec![EPSILON_SYMBOL.to_string()],
            ids,
        }
    }

    pub fn from_symbols<I, S>(symbols: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut table = SymbolTable::new();
        for s in symbols {
            table.add(s.as_ref());
        }
        table
    }

    /// Adds `symbol` if absent and returns its label.
    pub fn add(&mut self, symbol: &str) -> Label {
        if let Some(&id) = self.ids.get(symbol) {
            return id;
        }
        let id = self.symbols.len() as Label;
        self.symbols.push(symbol.to_string());
        self.ids.insert(symbol.to_string(), id);
        id
    }

    pub fn find(&self, symbol: &str) -> Option<Label> {
        self.ids.get(symbol).copied()
    }

    pub fn symbol(&self, label: Label) -> Option<&str> {
        self.symbols.get(label as usize).map(String::as_str)
    }

    pub fn contains_label(&self, label: Label) -> bool {
        (label as usize) < self.symbols.len()
    }

    /// Number of entries, epsilon included.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    /// True when only epsilon is present.
    pub fn is_empty(&self) -> bool {
        self.symbols.len() == 1
    }

    /// User symbols (epsilon excluded) in label order.
    pub fn iter(&self) -> impl Iterator<Item = (Label, &str)> {
        self.symbols
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, s)| (i as Label, s.as_str()))
    }

    /// Concatenates the symbols of `labels`, skipping epsilon.
    pub fn render(&self, labels: &[Label]) -> String {
        labels
            .iter()
            .filter(|&&l| l != EPSILON)
            .filter_map(|&l| self.symbol(l))
            .collect()
    }

    pub fn write_text<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for (i, s) in self.symbols.iter().enumerate() {
            writeln!(w, "{s}\t{i}")?;
        }
        Ok(())
    }

    /// Reads `symbol<TAB>id` lines. Ids must be dense and start with `<eps><TAB>0`.
    pub fn read_text<R: BufRead>(r: R) -> Result<Self, SymbolTableError> {
        let mut table = SymbolTable::new();
        for (n, line) in r.lines().enumerate() {
            let line = line?;
            let lineno = n + 1;
            if line.is_empty() {
                continue;
            }
            let (sym, id) = line.rsplit_once('\t').ok_or_else(|| SymbolTableError::Parse {
                line: lineno,
                msg: "expected `symbol<TAB>id`".into(),
            })?;
            let id: Label = id.trim().parse().map_err(|_| SymbolTableError::Parse {
                line: lineno,
                msg: format!("bad id `{id}`"),
            })?;
            if id == EPSILON {
                if sym != EPSILON_SYMBOL {
                    return Err(SymbolTableError::Parse {
                        line: lineno,
                        msg: format!("id 0 must be `{EPSILON_SYMBOL}`"),
                    });
                }
                continue;
            }
            if id as usize != table.len() || table.find(sym).is_some() {
                return Err(SymbolTableError::Parse {
                    line: lineno,
                    msg: format!("symbol `{sym}` with id {id} breaks the dense bijection"),
                });
            }
            table.add(sym);
        }
        Ok(table)
    }
}
