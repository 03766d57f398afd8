use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use super::{Fst, FstError, StateId, Transition};
use crate::symbols::EPSILON;

/// Filter state of the epsilon-sequencing filter.
///
/// `Free` allows the left machine to advance alone on an output epsilon;
/// `Blocked` is entered once the right machine advances alone on an input
/// epsilon and forbids left-alone moves until the next real match. Between two
/// matches every epsilon interleaving is therefore realised by exactly one
/// path: left epsilons first, then right epsilons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Filter {
    Free,
    Blocked,
}

/// Composes `a` with `b` over the tropical semiring.
///
/// Requires `a`'s output table to equal `b`'s input table. The result keeps
/// `a`'s input table and `b`'s output table; only states reachable from the
/// start pair are built, and the result is not trimmed.
pub fn compose(a: &Fst, b: &Fst) -> Result<Fst, FstError> {
    if !std::sync::Arc::ptr_eq(a.osyms(), b.isyms()) && a.osyms() != b.isyms() {
        return Err(FstError::SymbolTableMismatch);
    }

    let mut out = Fst::new(a.isyms().clone(), b.osyms().clone());
    let mut ids: HashMap<(StateId, StateId, Filter), StateId> = HashMap::new();
    let mut queue = VecDeque::new();

    let start = (a.start(), b.start(), Filter::Free);
    ids.insert(start, out.start());
    queue.push_back(start);

    let mut intern = |key: (StateId, StateId, Filter),
                      out: &mut Fst,
                      queue: &mut VecDeque<(StateId, StateId, Filter)>|
     -> StateId {
        match ids.entry(key) {
            Entry::Occupied(e) => *e.get(),
            Entry::Vacant(e) => {
                let id = out.add_state();
                e.insert(id);
                queue.push_back(key);
                id
            }
        }
    };

    // States are numbered in discovery order, so the ids queue and the output
    // state ids advance together.
    let mut current = 0;
    while let Some((s1, s2, filter)) = queue.pop_front() {
        let src = current;
        current += 1;

        let fw = a.final_weight(s1).times(b.final_weight(s2));
        if !fw.is_zero() {
            out.set_final(src, fw);
        }

        for arc1 in a.arcs(s1) {
            if arc1.olabel == EPSILON {
                // Left advances alone; right stays.
                if filter == Filter::Free {
                    let dst = intern((arc1.nextstate, s2, Filter::Free), &mut out, &mut queue);
                    out.add_arc(
                        src,
                        Transition::new(arc1.ilabel, EPSILON, arc1.weight, dst),
                    );
                }
                continue;
            }
            for arc2 in b.arcs(s2) {
                if arc2.ilabel == arc1.olabel {
                    let dst = intern(
                        (arc1.nextstate, arc2.nextstate, Filter::Free),
                        &mut out,
                        &mut queue,
                    );
                    out.add_arc(
                        src,
                        Transition::new(
                            arc1.ilabel,
                            arc2.olabel,
                            arc1.weight.times(arc2.weight),
                            dst,
                        ),
                    );
                }
            }
        }

        for arc2 in b.arcs(s2) {
            if arc2.ilabel == EPSILON {
                // Right advances alone; left stays.
                let dst = intern((s1, arc2.nextstate, Filter::Blocked), &mut out, &mut queue);
                out.add_arc(
                    src,
                    Transition::new(EPSILON, arc2.olabel, arc2.weight, dst),
                );
            }
        }
    }
    debug_assert_eq!(current, out.num_states());
    Ok(out)
}
