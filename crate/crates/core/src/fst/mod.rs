//! Weighted finite-state transducers over the tropical semiring.
//!
//! An [`Fst`] is an immutable-by-convention value: every algorithm in this
//! module returns a new machine. Symbol tables are shared through [`Arc`] so
//! composing or inverting large machines never copies them.

mod compose;
mod shortest;
mod text;

use std::collections::VecDeque;
use std::sync::Arc;

use thiserror::Error;

use crate::semiring::Weight;
use crate::symbols::{Label, SymbolTable, SymbolTableError, EPSILON};

pub use compose::compose;
pub use shortest::{shortest_paths, WeightedPath};

pub type StateId = usize;

#[derive(Debug, Error)]
pub enum FstError {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol table mismatch: left output table differs from right input table")]
    SymbolTableMismatch,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Symbols(#[from] SymbolTableError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    pub ilabel: Label,
    pub olabel: Label,
    pub weight: Weight,
    pub nextstate: StateId,
}

impl Transition {
    pub fn new(ilabel: Label, olabel: Label, weight: impl Into<Weight>, nextstate: StateId) -> Self {
        Transition {
            ilabel,
            olabel,
            weight: weight.into(),
            nextstate,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
struct State {
    arcs: Vec<Transition>,
    /// `Weight::ZERO` for non-final states.
    final_weight: Weight,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fst {
    states: Vec<State>,
    start: StateId,
    isyms: Arc<SymbolTable>,
    osyms: Arc<SymbolTable>,
}

impl Fst {
    /// A machine with a single non-final start state.
    pub fn new(isyms: Arc<SymbolTable>, osyms: Arc<SymbolTable>) -> Self {
        Fst {
            states: vec![State {
                arcs: Vec::new(),
                final_weight: Weight::ZERO,
            }],
            start: 0,
            isyms,
            osyms,
        }
    }

    pub fn add_state(&mut self) -> StateId {
        self.states.push(State {
            arcs: Vec::new(),
            final_weight: Weight::ZERO,
        });
        self.states.len() - 1
    }

    pub fn set_start(&mut self, s: StateId) {
        assert!(s < self.states.len(), "start state {s} out of range");
        self.start = s;
    }

    pub fn set_final(&mut self, s: StateId, w: impl Into<Weight>) {
        self.states[s].final_weight = w.into();
    }

    pub fn add_arc(&mut self, s: StateId, arc: Transition) {
        assert!(arc.nextstate < self.states.len(), "arc target out of range");
        debug_assert!(self.isyms.contains_label(arc.ilabel));
        debug_assert!(self.osyms.contains_label(arc.olabel));
        self.states[s].arcs.push(arc);
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.states.iter().map(|s| s.arcs.len()).sum()
    }

    pub fn arcs(&self, s: StateId) -> &[Transition] {
        &self.states[s].arcs
    }

    pub fn final_weight(&self, s: StateId) -> Weight {
        self.states[s].final_weight
    }

    pub fn is_final(&self, s: StateId) -> bool {
        !self.states[s].final_weight.is_zero()
    }

    pub fn isyms(&self) -> &Arc<SymbolTable> {
        &self.isyms
    }

    pub fn osyms(&self) -> &Arc<SymbolTable> {
        &self.osyms
    }

    pub fn states(&self) -> std::ops::Range<StateId> {
        0..self.states.len()
    }

    /// Chain acceptor over `symbols`, every arc and the final weight `0`.
    pub fn linear_acceptor<S: AsRef<str>>(
        symbols: &[S],
        table: Arc<SymbolTable>,
    ) -> Result<Fst, FstError> {
        let labels = symbols
            .iter()
            .map(|s| {
                table
                    .find(s.as_ref())
                    .filter(|&l| l != EPSILON)
                    .ok_or_else(|| FstError::UnknownSymbol(s.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut fst = Fst::new(table.clone(), table);
        let mut prev = fst.start();
        for l in labels {
            let next = fst.add_state();
            fst.add_arc(prev, Transition::new(l, l, Weight::ONE, next));
            prev = next;
        }
        fst.set_final(prev, Weight::ONE);
        Ok(fst)
    }

    /// One-state machine mapping every symbol of `table` to itself at cost 0.
    pub fn identity(table: Arc<SymbolTable>) -> Fst {
        let mut fst = Fst::new(table.clone(), table.clone());
        for (l, _) in table.iter() {
            fst.add_arc(0, Transition::new(l, l, Weight::ONE, 0));
        }
        fst.set_final(0, Weight::ONE);
        fst
    }

    /// Swaps input and output labels on every arc, and the two symbol tables.
    pub fn invert(&self) -> Fst {
        let states = self
            .states
            .iter()
            .map(|st| State {
                arcs: st
                    .arcs
                    .iter()
                    .map(|a| Transition {
                        ilabel: a.olabel,
                        olabel: a.ilabel,
                        ..*a
                    })
                    .collect(),
                final_weight: st.final_weight,
            })
            .collect();
        Fst {
            states,
            start: self.start,
            isyms: self.osyms.clone(),
            osyms: self.isyms.clone(),
        }
    }

    /// Removes states that are not on some start-to-final path.
    ///
    /// Surviving states keep their relative order. If no final state is
    /// reachable the result is a lone non-final start state.
    pub fn connect(&self) -> Fst {
        let n = self.states.len();
        let mut access = vec![false; n];
        let mut queue = VecDeque::from([self.start]);
        access[self.start] = true;
        while let Some(s) = queue.pop_front() {
            for a in &self.states[s].arcs {
                if !access[a.nextstate] {
                    access[a.nextstate] = true;
                    queue.push_back(a.nextstate);
                }
            }
        }

        let mut reverse: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for (s, st) in self.states.iter().enumerate() {
            for a in &st.arcs {
                reverse[a.nextstate].push(s);
            }
        }
        let mut coaccess: Vec<bool> = (0..n).map(|s| self.is_final(s)).collect();
        queue.extend((0..n).filter(|&s| coaccess[s]));
        while let Some(s) = queue.pop_front() {
            for &p in &reverse[s] {
                if !coaccess[p] {
                    coaccess[p] = true;
                    queue.push_back(p);
                }
            }
        }

        let keep: Vec<bool> = (0..n).map(|s| access[s] && coaccess[s]).collect();
        if !keep[self.start] {
            return Fst::new(self.isyms.clone(), self.osyms.clone());
        }
        let mut remap = vec![usize::MAX; n];
        let mut next_id = 0;
        for s in 0..n {
            if keep[s] {
                remap[s] = next_id;
                next_id += 1;
            }
        }
        let states = (0..n)
            .filter(|&s| keep[s])
            .map(|s| State {
                arcs: self.states[s]
                    .arcs
                    .iter()
                    .filter(|a| keep[a.nextstate])
                    .map(|a| Transition {
                        nextstate: remap[a.nextstate],
                        ..*a
                    })
                    .collect(),
                final_weight: self.states[s].final_weight,
            })
            .collect();
        Fst {
            states,
            start: remap[self.start],
            isyms: self.isyms.clone(),
            osyms: self.osyms.clone(),
        }
    }

    /// Union of `members` under a fresh start state with `ε:ε/0` arcs into
    /// each member. Symbol tables are merged by symbol string, in member order.
    pub fn union(members: &[&Fst]) -> Fst {
        let mut isyms = SymbolTable::new();
        let mut osyms = SymbolTable::new();
        for m in members {
            for (_, s) in m.isyms.iter() {
                isyms.add(s);
            }
            for (_, s) in m.osyms.iter() {
                osyms.add(s);
            }
        }
        let imaps: Vec<Vec<Label>> = members
            .iter()
            .map(|m| relabel_map(&m.isyms, &isyms))
            .collect();
        let omaps: Vec<Vec<Label>> = members
            .iter()
            .map(|m| relabel_map(&m.osyms, &osyms))
            .collect();

        let mut out = Fst::new(Arc::new(isyms), Arc::new(osyms));
        for (k, m) in members.iter().enumerate() {
            let offset = out.states.len();
            for st in &m.states {
                out.states.push(State {
                    arcs: st
                        .arcs
                        .iter()
                        .map(|a| Transition {
                            ilabel: imaps[k][a.ilabel as usize],
                            olabel: omaps[k][a.olabel as usize],
                            weight: a.weight,
                            nextstate: a.nextstate + offset,
                        })
                        .collect(),
                    final_weight: st.final_weight,
                });
            }
            out.states[0].arcs.push(Transition::new(
                EPSILON,
                EPSILON,
                Weight::ONE,
                m.start + offset,
            ));
        }
        out
    }

    /// Renders a label sequence on the output side.
    pub fn output_string(&self, labels: &[Label]) -> String {
        self.osyms.render(labels)
    }

    pub fn input_string(&self, labels: &[Label]) -> String {
        self.isyms.render(labels)
    }
}

fn relabel_map(from: &SymbolTable, to: &SymbolTable) -> Vec<Label> {
    let mut map = vec![EPSILON; from.len()];
    for (l, s) in from.iter() {
        map[l as usize] = to.find(s).expect("merged table contains every member symbol");
    }
    map
}
