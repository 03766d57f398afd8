//! Brute-force oracles shared by the integration and acceptance tests.
//!
//! Nothing here calls into the algorithms it checks: paths are enumerated by
//! plain depth-first search, edit distance by naive recursion, alignments by
//! explicit enumeration of every monotone move sequence.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use translit_core::align::{AlignmentModel, PairSymbol};
use translit_core::ngram::NGramModel;
use translit_core::{Fst, Label, SymbolTable, Transition, EPSILON};

pub type PathTriple = (Vec<Label>, Vec<Label>, f64);

pub fn table(symbols: &[&str]) -> Arc<SymbolTable> {
    Arc::new(SymbolTable::from_symbols(symbols))
}

/// Random acyclic machine: arcs only go to higher-numbered states. Weights are
/// multiples of 1/4 so every path sum is exact in `f64`.
pub fn random_acyclic<R: Rng>(
    rng: &mut R,
    max_states: usize,
    isyms: &Arc<SymbolTable>,
    osyms: &Arc<SymbolTable>,
    eps_prob: f64,
) -> Fst {
    let n = rng.gen_range(1..=max_states);
    let mut fst = Fst::new(isyms.clone(), osyms.clone());
    for _ in 1..n {
        fst.add_state();
    }
    let label = |rng: &mut R, t: &SymbolTable| -> Label {
        if rng.gen_bool(eps_prob) {
            EPSILON
        } else {
            rng.gen_range(1..t.len()) as Label
        }
    };
    for s in 0..n {
        if s + 1 < n {
            for _ in 0..rng.gen_range(0..=3) {
                let t = rng.gen_range(s + 1..n);
                let i = label(rng, isyms);
                let o = label(rng, osyms);
                let w = rng.gen_range(0..16) as f64 / 4.0;
                fst.add_arc(s, Transition::new(i, o, w, t));
            }
        }
        if s + 1 == n || rng.gen_bool(0.4) {
            fst.set_final(s, rng.gen_range(0..8) as f64 / 4.0);
        }
    }
    fst
}

/// Every accepting path of an acyclic machine, epsilons stripped.
pub fn enumerate_paths(fst: &Fst) -> Vec<PathTriple> {
    fn walk(
        fst: &Fst,
        s: usize,
        input: &mut Vec<Label>,
        output: &mut Vec<Label>,
        w: f64,
        out: &mut Vec<PathTriple>,
    ) {
        if fst.is_final(s) {
            out.push((input.clone(), output.clone(), w + fst.final_weight(s).value()));
        }
        for a in fst.arcs(s) {
            if a.ilabel != EPSILON {
                input.push(a.ilabel);
            }
            if a.olabel != EPSILON {
                output.push(a.olabel);
            }
            walk(fst, a.nextstate, input, output, w + a.weight.value(), out);
            if a.olabel != EPSILON {
                output.pop();
            }
            if a.ilabel != EPSILON {
                input.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(fst, fst.start(), &mut Vec::new(), &mut Vec::new(), 0.0, &mut out);
    out
}

pub fn sorted(mut paths: Vec<PathTriple>) -> Vec<PathTriple> {
    paths.sort_by(|a, b| {
        a.2.total_cmp(&b.2)
            .then_with(|| a.1.cmp(&b.1))
            .then_with(|| a.0.cmp(&b.0))
    });
    paths
}

/// Join of the path sets of `a` and `b` on the middle string: one entry per
/// pair of paths, weights added.
pub fn brute_compose(a: &Fst, b: &Fst) -> Vec<PathTriple> {
    let pa = enumerate_paths(a);
    let pb = enumerate_paths(b);
    let mut out = Vec::new();
    for (ai, ao, aw) in &pa {
        for (bi, bo, bw) in &pb {
            if ao == bi {
                out.push((ai.clone(), bo.clone(), aw + bw));
            }
        }
    }
    out
}

/// Minimum weight per (input, output) string pair.
pub fn min_by_strings(paths: &[PathTriple]) -> BTreeMap<(Vec<Label>, Vec<Label>), f64> {
    let mut best = BTreeMap::new();
    for (i, o, w) in paths {
        let e = best.entry((i.clone(), o.clone())).or_insert(f64::INFINITY);
        if *w < *e {
            *e = *w;
        }
    }
    best
}

/// Naive recursive edit distance with unit costs under `eq`.
pub fn brute_edit_distance<T>(a: &[T], b: &[T], eq: &dyn Fn(&T, &T) -> bool) -> usize {
    if a.is_empty() {
        return b.len();
    }
    if b.is_empty() {
        return a.len();
    }
    let sub = brute_edit_distance(&a[1..], &b[1..], eq) + usize::from(!eq(&a[0], &b[0]));
    let del = brute_edit_distance(&a[1..], b, eq) + 1;
    let ins = brute_edit_distance(a, &b[1..], eq) + 1;
    sub.min(del).min(ins)
}

/// One monotone alignment move: `(Some(c), Some(d))` match,
/// `(Some(c), None)` deletion, `(None, Some(d))` insertion.
pub type Move = (Option<char>, Option<char>);

/// Every monotone alignment of `x` with `y` built from 1:1, 1:0 and 0:1 moves.
pub fn enumerate_alignments(x: &[char], y: &[char]) -> Vec<Vec<Move>> {
    if x.is_empty() && y.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut extend = |m: Move, rest: Vec<Vec<Move>>| {
        for mut r in rest {
            r.insert(0, m);
            out.push(r);
        }
    };
    if !x.is_empty() && !y.is_empty() {
        extend((Some(x[0]), Some(y[0])), enumerate_alignments(&x[1..], &y[1..]));
    }
    if !x.is_empty() {
        extend((Some(x[0]), None), enumerate_alignments(&x[1..], y));
    }
    if !y.is_empty() {
        extend((None, Some(y[0])), enumerate_alignments(x, &y[1..]));
    }
    out
}

/// Consonant-like native codepoints for synthetic cipher lexicons.
pub const DEVANAGARI: [char; 12] = [
    'क', 'ख', 'ग', 'च', 'ज', 'त', 'द', 'न', 'प', 'ब', 'म', 'र',
];
pub const CIPHER_LATIN: [char; 12] = ['k', 'h', 'g', 'c', 'j', 't', 'd', 'n', 'p', 'b', 'm', 'r'];
pub const TAMIL: [char; 8] = ['க', 'ங', 'ச', 'ட', 'த', 'ந', 'ப', 'ம'];
pub const TAMIL_LATIN: [char; 8] = ['q', 'x', 'z', 'w', 'v', 'f', 's', 'l'];

pub fn cipher(word: &str, from: &[char], to: &[char]) -> String {
    word.chars()
        .map(|c| to[from.iter().position(|&f| f == c).expect("cipher alphabet")])
        .collect()
}

/// `n` distinct random words of length 2..=6 over `alphabet`, sorted.
pub fn random_words<R: Rng>(rng: &mut R, alphabet: &[char], n: usize) -> Vec<String> {
    let mut words = std::collections::BTreeSet::new();
    while words.len() < n {
        let len = rng.gen_range(2..=6);
        let w: String = (0..len)
            .map(|_| alphabet[rng.gen_range(0..alphabet.len())])
            .collect();
        words.insert(w);
    }
    words.into_iter().collect()
}

/// Lexicon TSV for a cipher over `words`, one romanization per word.
pub fn cipher_lexicon_tsv(words: &[String], from: &[char], to: &[char]) -> String {
    words
        .iter()
        .map(|w| format!("{w}\t{}\t1\n", cipher(w, from, to)))
        .collect()
}

/// Native spellings of "discovery" in four scripts, each with the English
/// spelling plus variants attested only in that language.
pub fn discovery_lexicons() -> Vec<translit_core::lexicon::Lexicon> {
    use translit_core::lexicon::Lexicon;
    type Row<'a> = (&'a str, &'a str, &'a [(&'a str, u64)]);
    let rows: [Row; 4] = [
        ("hi", "डिस्कवरी", &[("discovery", 12), ("diskavari", 30), ("discoveri", 2)]),
        ("bn", "ডিসকভারি", &[("discovery", 4), ("diskovari", 9)]),
        ("ta", "டிஸ்கவரி", &[("tiskavari", 7), ("discovery", 3), ("diskavary", 1)]),
        ("kn", "ಡಿಸ್ಕವರಿ", &[("discovery", 5), ("diskavaree", 5)]),
    ];
    rows.iter()
        .map(|(lang, native, forms)| {
            let mut lex = Lexicon::new(*lang);
            for (f, c) in forms.iter() {
                lex.insert(native, f, Some(*c));
            }
            lex
        })
        .collect()
}

/// `n` random words over `alphabet`, a lexicon mapping each through the
/// cipher, and the transliterator trained on it.
pub fn cipher_transliterator(
    seed: u64,
    alphabet: &[char],
    latin: &[char],
    language: &str,
    n: usize,
) -> (Vec<String>, translit_core::translit::Transliterator) {
    use rand::SeedableRng;
    use translit_core::lexicon::Lexicon;
    use translit_core::translit::{build_transliterator, BuildConfig};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let words = random_words(&mut rng, alphabet, n);
    let tsv = cipher_lexicon_tsv(&words, alphabet, latin);
    let lex = Lexicon::read_tsv(language, tsv.as_bytes()).unwrap();
    let t = build_transliterator(&lex, &BuildConfig::default()).unwrap();
    (words, t)
}

pub fn move_symbol(m: Move) -> PairSymbol {
    PairSymbol::new(m.0, m.1).unwrap()
}

pub fn random_word<R: Rng>(rng: &mut R, alphabet: &[char], max: usize) -> String {
    let len = rng.gen_range(0..=max);
    (0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect()
}

/// Random model over every pair symbol the alphabets can form; roughly one
/// symbol in five gets zero mass.
pub fn random_model<R: Rng>(rng: &mut R, xs: &[char], ys: &[char]) -> AlignmentModel {
    let mut syms = Vec::new();
    for &x in xs {
        syms.push(PairSymbol::deletion(x));
        for &y in ys {
            syms.push(PairSymbol::matched(x, y));
        }
    }
    for &y in ys {
        syms.push(PairSymbol::insertion(y));
    }
    let raw: Vec<f64> = syms
        .iter()
        .map(|_| if rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(0.01..1.0) })
        .collect();
    let z: f64 = raw.iter().sum();
    AlignmentModel::from_probs(syms.into_iter().zip(raw.into_iter().map(|p| p / z)).collect())
}

pub fn tables(model: &NGramModel) -> (Arc<SymbolTable>, Arc<SymbolTable>) {
    let mut i = SymbolTable::new();
    let mut o = SymbolTable::new();
    for p in model.pair_symbols() {
        if let Some(c) = p.input() {
            i.add(&c.to_string());
        }
        if let Some(c) = p.output() {
            o.add(&c.to_string());
        }
    }
    (Arc::new(i), Arc::new(o))
}

/// Follows explicit arcs only; `None` if some transition is not explicit.
pub fn explicit_path_weight(fst: &Fst, pairs: &[PairSymbol], inverted: bool) -> Option<f64> {
    let label = |t: &SymbolTable, c: Option<char>| c.map_or(EPSILON, |c| t.find(&c.to_string()).unwrap());
    let mut s = fst.start();
    let mut w = 0.0;
    for p in pairs {
        let (mut il, mut ol) = (p.input(), p.output());
        if inverted {
            std::mem::swap(&mut il, &mut ol);
        }
        let il = label(fst.isyms(), il);
        let ol = label(fst.osyms(), ol);
        let arc = fst
            .arcs(s)
            .iter()
            .find(|a| a.ilabel == il && a.olabel == ol && !(il == EPSILON && ol == EPSILON))?;
        w += arc.weight.value();
        s = arc.nextstate;
    }
    if !fst.is_final(s) {
        return None;
    }
    Some(w + fst.final_weight(s).value())
}
