//! Browser bindings for the transliteration toolkit.
//!
//! Every exported function takes plain strings and returns a JSON string, so
//! the page needs no generated type glue. The Hindi and Tamil sample
//! lexicons are compiled in and trained on first use.

use std::sync::OnceLock;

use serde::Serialize;
use serde_json::json;
use translit_core::balance::balance_plan;
use translit_core::lexicon::Lexicon;
use translit_core::script::detect_script;
use translit_core::scoring::{tokenize, wer, AlignedToken, CandidateExpander, WerReport};
use translit_core::translit::{
    build_transliterator, build_union, BuildConfig, Candidate, Romanizer, UnionTransducer,
};
use wasm_bindgen::prelude::wasm_bindgen;

const LEXICONS: [(&str, &str); 2] = [
    ("hi", include_str!("../../../data/hi.tsv")),
    ("ta", include_str!("../../../data/ta.tsv")),
];

struct Models {
    union: UnionTransducer,
    words: Vec<(String, String)>,
}

fn models() -> &'static Models {
    static MODELS: OnceLock<Models> = OnceLock::new();
    MODELS.get_or_init(|| {
        let mut members = Vec::new();
        let mut words = Vec::new();
        for (lang, tsv) in LEXICONS {
            let lex = Lexicon::read_tsv(lang, tsv.as_bytes()).expect("bundled lexicon parses");
            words.extend(lex.iter().map(|(w, _)| (lang.to_string(), w.to_string())));
            members.push(build_transliterator(&lex, &BuildConfig::default()).expect("bundled lexicon trains"));
        }
        let refs: Vec<_> = members.iter().collect();
        Models {
            union: build_union(&refs).expect("at least one member"),
            words,
        }
    })
}

fn error(msg: impl ToString) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

#[derive(Serialize)]
struct TokenResult {
    token: String,
    script: &'static str,
    candidates: Vec<Candidate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

/// Native words of the sample lexicons as `[[language, word], ...]`.
#[wasm_bindgen]
pub fn sample_words() -> String {
    serde_json::to_string(&models().words).unwrap_or_else(error)
}

/// k-best romanizations for every whitespace-separated token of `text`.
#[wasm_bindgen]
pub fn romanize(text: &str, k: usize) -> String {
    let k = k.clamp(1, 100);
    let union = &models().union;
    let tokens: Vec<TokenResult> = tokenize(text)
        .into_iter()
        .map(|token| {
            let script = detect_script(token).map(|t| t.name()).unwrap_or("other");
            let mut out = TokenResult {
                token: token.to_string(),
                script,
                candidates: Vec::new(),
                error: None,
            };
            if detect_script(token).is_ok_and(|t| t.is_native()) {
                match union.transliterate(token, k) {
                    Ok(r) if r.is_empty() => out.error = Some("no accepting path".into()),
                    Ok(r) => out.candidates = r.candidates,
                    Err(e) => out.error = Some(e.to_string()),
                }
            }
            out
        })
        .collect();
    serde_json::to_string(&tokens).unwrap_or_else(error)
}

/// Balance plan for `language amount` lines.
#[wasm_bindgen]
pub fn balance(amounts: &str, cap: f64) -> String {
    let mut parsed = Vec::new();
    for (n, line) in amounts.lines().enumerate() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            [] => continue,
            [lang, amount] => match amount.parse::<f64>() {
                Ok(a) => parsed.push((lang.to_string(), a)),
                Err(_) => return error(format!("line {}: `{amount}` is not a number", n + 1)),
            },
            _ => return error(format!("line {}: expected `language amount`", n + 1)),
        }
    }
    match balance_plan(&parsed, cap) {
        Ok(plan) => serde_json::to_string(&plan).unwrap_or_else(error),
        Err(e) => error(e),
    }
}

#[derive(Serialize)]
struct ScoreResult<'a> {
    reference: Vec<&'a str>,
    hypothesis: Vec<&'a str>,
    plain: WerReport,
    translit: WerReport,
    alignment: Vec<AlignedToken>,
    summary: String,
}

/// Plain and transliteration-optimized WER for one utterance, with the
/// relaxed alignment.
#[wasm_bindgen]
pub fn score(reference: &str, hypothesis: &str, k: usize) -> String {
    let r = tokenize(reference);
    let h = tokenize(hypothesis);
    let plain = match wer(&r, &h) {
        Ok(p) => p,
        Err(e) => return error(e),
    };
    let mut expander = CandidateExpander::new(&models().union, k.clamp(1, 100));
    match expander.align(&r, &h) {
        Ok((alignment, translit)) => serde_json::to_string(&ScoreResult {
            summary: translit.to_string(),
            reference: r.clone(),
            hypothesis: h.clone(),
            plain,
            translit,
            alignment,
        })
        .unwrap_or_else(error),
        Err(e) => error(e),
    }
}
