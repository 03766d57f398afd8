use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap, HashSet};

use super::{Fst, StateId};
use crate::symbols::{Label, EPSILON};

/// An accepting path with epsilons removed from both label sequences.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedPath {
    pub input: Vec<Label>,
    pub output: Vec<Label>,
    pub weight: f64,
}

/// Up to `n` cheapest accepting paths, in nondecreasing weight order.
///
/// With `unique_outputs`, only the cheapest path of each distinct output
/// string is kept. Equal weights are ordered by the rendered output string,
/// then by the rendered input string. `usize::MAX` asks for every path and
/// only terminates on machines with finitely many paths.
///
/// The search is A* guided by the exact distance-to-final of every state,
/// which makes reduced arc costs non-negative, so complete paths surface in
/// weight order even with negative arcs. Machines with negative-weight
/// cycles are not supported.
pub fn shortest_paths(fst: &Fst, n: usize, unique_outputs: bool) -> Vec<WeightedPath> {
    if n == 0 {
        return Vec::new();
    }
    let to_final = distance_to_final(fst);
    if !to_final[fst.start()].is_finite() {
        return Vec::new();
    }

    let mut nodes = PathArena::default();
    let mut prefixes = PrefixTrie::default();
    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;
    heap.push(Item {
        f: to_final[fst.start()],
        seq,
        g: 0.0,
        state: fst.start(),
        node: ROOT,
        prefix: ROOT,
        complete: false,
    });

    let mut expanded_states: Vec<usize> = vec![0; fst.num_states()];
    let mut expanded_keys: HashSet<(StateId, usize)> = HashSet::new();
    let mut found: Vec<(f64, usize, usize)> = Vec::new();
    let mut distinct: HashSet<usize> = HashSet::new();

    while let Some(item) = heap.pop() {
        if enough(&found, &distinct, n, unique_outputs) {
            let nth = nth_weight(&found, n, unique_outputs);
            if item.f > nth {
                break;
            }
        }

        if item.complete {
            found.push((item.g, item.node, item.prefix));
            distinct.insert(item.prefix);
            continue;
        }

        if unique_outputs {
            if !expanded_keys.insert((item.state, item.prefix)) {
                continue;
            }
        } else {
            if expanded_states[item.state] >= n {
                continue;
            }
            expanded_states[item.state] += 1;
        }

        let fw = fst.final_weight(item.state);
        if !fw.is_zero() {
            seq += 1;
            let g = item.g + fw.value();
            heap.push(Item {
                f: g,
                seq,
                g,
                state: item.state,
                node: item.node,
                prefix: item.prefix,
                complete: true,
            });
        }
        for arc in fst.arcs(item.state) {
            let h = to_final[arc.nextstate];
            if !h.is_finite() {
                continue;
            }
            let g = item.g + arc.weight.value();
            let node = nodes.push(item.node, arc.ilabel, arc.olabel);
            let prefix = if arc.olabel == EPSILON {
                item.prefix
            } else {
                prefixes.child(item.prefix, arc.olabel)
            };
            seq += 1;
            heap.push(Item {
                f: g + h,
                seq,
                g,
                state: arc.nextstate,
                node,
                prefix,
                complete: false,
            });
        }
    }

    let mut paths: Vec<(WeightedPath, String, String, usize)> = found
        .into_iter()
        .map(|(weight, node, prefix)| {
            let (input, output) = nodes.labels(node);
            let ostr = fst.output_string(&output);
            let istr = fst.input_string(&input);
            (
                WeightedPath {
                    input,
                    output,
                    weight,
                },
                ostr,
                istr,
                prefix,
            )
        })
        .collect();
    paths.sort_by(|a, b| {
        a.0.weight
            .total_cmp(&b.0.weight)
            .then_with(|| a.1.cmp(&b.1))
            .then_with(|| a.2.cmp(&b.2))
            .then_with(|| a.0.output.cmp(&b.0.output))
            .then_with(|| a.0.input.cmp(&b.0.input))
    });
    if unique_outputs {
        let mut seen = HashSet::new();
        paths.retain(|p| seen.insert(p.3));
    }
    paths.truncate(n);
    paths.into_iter().map(|p| p.0).collect()
}

fn enough(found: &[(f64, usize, usize)], distinct: &HashSet<usize>, n: usize, unique: bool) -> bool {
    if unique {
        distinct.len() >= n
    } else {
        found.len() >= n
    }
}

/// Weight of the n-th result found so far; results arrive in nondecreasing
/// weight order so this is a running bound.
fn nth_weight(found: &[(f64, usize, usize)], n: usize, unique: bool) -> f64 {
    if unique {
        let mut seen = HashSet::new();
        for &(w, _, p) in found {
            if seen.insert(p) && seen.len() == n {
                return w;
            }
        }
        f64::INFINITY
    } else {
        found[n - 1].0
    }
}

/// Shortest distance from each state to any final state (final weight
/// included). Dijkstra when every weight is non-negative, Bellman-Ford
/// otherwise.
pub(crate) fn distance_to_final(fst: &Fst) -> Vec<f64> {
    let n = fst.num_states();
    let mut reverse: Vec<Vec<(StateId, f64)>> = vec![Vec::new(); n];
    let mut nonnegative = true;
    for s in fst.states() {
        for a in fst.arcs(s) {
            let w = a.weight.value();
            nonnegative &= w >= 0.0;
            reverse[a.nextstate].push((s, w));
        }
        nonnegative &= fst.final_weight(s).value() >= 0.0;
    }
    let mut dist: Vec<f64> = fst.states().map(|s| fst.final_weight(s).value()).collect();

    if nonnegative {
        let mut heap: BinaryHeap<Item2> = dist
            .iter()
            .enumerate()
            .filter(|(_, d)| d.is_finite())
            .map(|(s, &d)| Item2 { d, state: s })
            .collect();
        let mut done = vec![false; n];
        while let Some(Item2 { d, state }) = heap.pop() {
            if done[state] {
                continue;
            }
            done[state] = true;
            for &(p, w) in &reverse[state] {
                let nd = d + w;
                if nd < dist[p] {
                    dist[p] = nd;
                    heap.push(Item2 { d: nd, state: p });
                }
            }
        }
    } else {
        for _ in 0..n {
            let mut changed = false;
            for s in 0..n {
                if !dist[s].is_finite() {
                    continue;
                }
                for &(p, w) in &reverse[s] {
                    let nd = dist[s] + w;
                    if nd < dist[p] {
                        dist[p] = nd;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }
    dist
}

const ROOT: usize = 0;

/// Back-pointer arena for partial paths.
struct PathArena {
    nodes: Vec<(usize, Label, Label)>,
}

impl Default for PathArena {
    fn default() -> Self {
        PathArena {
            nodes: vec![(ROOT, EPSILON, EPSILON)],
        }
    }
}

impl PathArena {
    fn push(&mut self, parent: usize, ilabel: Label, olabel: Label) -> usize {
        self.nodes.push((parent, ilabel, olabel));
        self.nodes.len() - 1
    }

    fn labels(&self, mut node: usize) -> (Vec<Label>, Vec<Label>) {
        let mut input = Vec::new();
        let mut output = Vec::new();
        while node != ROOT {
            let (parent, i, o) = self.nodes[node];
            if i != EPSILON {
                input.push(i);
            }
            if o != EPSILON {
                output.push(o);
            }
            node = parent;
        }
        input.reverse();
        output.reverse();
        (input, output)
    }
}

/// Interns output prefixes so that `(state, prefix)` keys are cheap.
#[derive(Default)]
struct PrefixTrie {
    children: HashMap<(usize, Label), usize>,
    next: usize,
}

impl PrefixTrie {
    fn child(&mut self, parent: usize, label: Label) -> usize {
        let next = &mut self.next;
        *self.children.entry((parent, label)).or_insert_with(|| {
            *next += 1;
            *next
        })
    }
}

struct Item {
    f: f64,
    seq: u64,
    g: f64,
    state: StateId,
    node: usize,
    prefix: usize,
    complete: bool,
}

impl PartialEq for Item {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Item {}

impl PartialOrd for Item {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Item {
    // Reversed for a min-heap; complete paths pop before partial ones of
    // equal cost, then FIFO.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .f
            .total_cmp(&self.f)
            .then_with(|| self.complete.cmp(&other.complete))
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

struct Item2 {
    d: f64,
    state: StateId,
}

impl PartialEq for Item2 {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Item2 {}

impl PartialOrd for Item2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Item2 {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .d
            .total_cmp(&self.d)
            .then_with(|| other.state.cmp(&self.state))
    }
}
