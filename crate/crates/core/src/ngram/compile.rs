use std::collections::HashMap;
use std::sync::Arc;

use super::{LmError, NGramModel, Token};
use crate::fst::{Fst, StateId, Transition};
use crate::semiring::Weight;
use crate::symbols::{Label, SymbolTable, EPSILON, EPSILON_SYMBOL};

/// Compiles `model` into a transducer with one state per stored history.
///
/// Explicit n-grams become arcs labelled `input:output` with cost `-ln P`;
/// backoffs become `ε:ε` arcs with cost `-ln α` to the shortened history;
/// `</s>` becomes the final weight. The start state is the `<s>` history
/// (the empty history for unigram models).
pub fn to_fst(
    model: &NGramModel,
    isyms: Arc<SymbolTable>,
    osyms: Arc<SymbolTable>,
) -> Result<Fst, LmError> {
    let resolve = |table: &SymbolTable, side: Option<char>| -> Result<Label, LmError> {
        match side {
            None => Ok(EPSILON),
            Some(c) => {
                let s = c.to_string();
                table
                    .find(&s)
                    .filter(|&l| l != EPSILON && s != EPSILON_SYMBOL)
                    .ok_or(LmError::UnknownSymbol(s))
            }
        }
    };

    let mut fst = Fst::new(isyms.clone(), osyms.clone());
    let mut state_of: HashMap<&[Token], StateId> = HashMap::new();
    for (i, h) in model.contexts().keys().enumerate() {
        let s = if i == 0 { fst.start() } else { fst.add_state() };
        state_of.insert(h.as_slice(), s);
    }
    let start_history: &[Token] = if model.order() >= 2 { &[Token::Bos] } else { &[] };
    let start = *state_of
        .get(start_history)
        .expect("trained models always store the start history");
    fst.set_start(start);

    let order = model.order();
    for (h, ctx) in model.contexts() {
        let src = state_of[h.as_slice()];
        for (&w, &lp) in &ctx.probs {
            let cost = Weight(-lp);
            match w {
                Token::Eos => fst.set_final(src, cost),
                Token::Bos => {}
                Token::Pair(p) => {
                    let il = resolve(&isyms, p.input())?;
                    let ol = resolve(&osyms, p.output())?;
                    let mut next = h.clone();
                    next.push(w);
                    let keep = next.len().min(order - 1);
                    let mut hist = &next[next.len() - keep..];
                    while !state_of.contains_key(hist) {
                        hist = &hist[1..];
                    }
                    fst.add_arc(src, Transition::new(il, ol, cost, state_of[hist]));
                }
            }
        }
        if !h.is_empty() {
            let lower = state_of[&h[1..]];
            fst.add_arc(src, Transition::new(EPSILON, EPSILON, Weight(-ctx.backoff), lower));
        }
    }
    Ok(fst)
}
