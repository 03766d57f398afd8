//! Line-oriented text format.
//!
//! Arcs are `src<TAB>dst<TAB>ilabel<TAB>olabel<TAB>weight`, finals are
//! `state<TAB>weight`. Labels are symbol strings resolved through the sidecar
//! symbol tables. The source state of the first line is the start state.

use std::io::{BufRead, Write};
use std::sync::Arc;

use super::{Fst, FstError, StateId, Transition};
use crate::semiring::Weight;
use crate::symbols::SymbolTable;

impl Fst {
    pub fn write_text<W: Write>(&self, mut w: W) -> Result<(), FstError> {
        let order = std::iter::once(self.start).chain(self.states().filter(|&s| s != self.start));
        for s in order {
            for a in self.arcs(s) {
                let i = self.isyms.symbol(a.ilabel).expect("arc labels resolve");
                let o = self.osyms.symbol(a.olabel).expect("arc labels resolve");
                writeln!(w, "{s}\t{}\t{i}\t{o}\t{}", a.nextstate, a.weight.value())?;
            }
            let fw = self.final_weight(s);
            // A start state with no arcs is written as a final record even when
            // non-final, so that it still fixes the start state.
            if !fw.is_zero() || (s == self.start && self.arcs(s).is_empty()) {
                writeln!(w, "{s}\t{}", fw.value())?;
            }
        }
        Ok(())
    }

    pub fn read_text<R: BufRead>(
        r: R,
        isyms: Arc<SymbolTable>,
        osyms: Arc<SymbolTable>,
    ) -> Result<Fst, FstError> {
        enum Record {
            Arc(StateId, Transition),
            Final(StateId, Weight),
        }
        let mut records = Vec::new();
        let mut max_state = 0;
        for (n, line) in r.lines().enumerate() {
            let line = line?;
            let lineno = n + 1;
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| FstError::Parse { line: lineno, msg };
            let fields: Vec<&str> = line.split('\t').collect();
            let state = |s: &str| -> Result<StateId, FstError> {
                s.parse().map_err(|_| bad(format!("bad state id `{s}`")))
            };
            let weight = |s: &str| -> Result<Weight, FstError> {
                s.parse::<f64>()
                    .map(Weight)
                    .map_err(|_| bad(format!("bad weight `{s}`")))
            };
            match fields.as_slice() {
                [src, dst, i, o, w] => {
                    let src = state(src)?;
                    let dst = state(dst)?;
                    let ilabel = isyms
                        .find(i)
                        .ok_or_else(|| bad(format!("unknown input symbol `{i}`")))?;
                    let olabel = osyms
                        .find(o)
                        .ok_or_else(|| bad(format!("unknown output symbol `{o}`")))?;
                    max_state = max_state.max(src).max(dst);
                    records.push(Record::Arc(src, Transition::new(ilabel, olabel, weight(w)?, dst)));
                }
                [s, w] => {
                    let s = state(s)?;
                    max_state = max_state.max(s);
                    records.push(Record::Final(s, weight(w)?));
                }
                _ => return Err(bad(format!("expected 2 or 5 fields, got {}", fields.len()))),
            }
        }

        let mut fst = Fst::new(isyms, osyms);
        if records.is_empty() {
            return Ok(fst);
        }
        while fst.num_states() <= max_state {
            fst.add_state();
        }
        let start = match records[0] {
            Record::Arc(s, _) | Record::Final(s, _) => s,
        };
        fst.set_start(start);
        for rec in records {
            match rec {
                Record::Arc(s, a) => fst.add_arc(s, a),
                Record::Final(s, w) => fst.set_final(s, w),
            }
        }
        Ok(fst)
    }
}
