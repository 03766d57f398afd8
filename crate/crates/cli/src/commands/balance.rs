use std::io::{self, BufRead, Write};

use translit_core::balance::balance_plan;

use super::open_input;
use crate::error::CliError;
use crate::BalanceArgs;

/// `language amount` per line, tab- or space-separated; `#` starts a comment.
fn read_amounts(r: impl BufRead) -> Result<Vec<(String, f64)>, String> {
    let mut out = Vec::new();
    for (n, line) in r.lines().enumerate() {
        let line = line.map_err(|e| e.to_string())?;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [language, amount] = fields.as_slice() else {
            return Err(format!("line {}: expected `language<TAB>amount`", n + 1));
        };
        let amount: f64 = amount
            .parse()
            .map_err(|_| format!("line {}: `{amount}` is not a number", n + 1))?;
        out.push((language.to_string(), amount));
    }
    Ok(out)
}

pub fn run(a: BalanceArgs) -> Result<(), CliError> {
    let amounts = read_amounts(open_input(&a.amounts)?).map_err(|e| CliError::input(&a.amounts, e))?;
    let plan = balance_plan(&amounts, a.cap).map_err(|e| CliError::input(&a.amounts, e))?;
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &plan).map_err(|e| CliError::Usage(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}
