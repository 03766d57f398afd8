//! Per-token script classification by Unicode block.

use std::fmt;

use serde::Serialize;
use thiserror::Error;
use unicode_normalization::char::is_combining_mark;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot detect the script of an empty token")]
pub struct EmptyToken;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScriptTag {
    Devanagari,
    Bengali,
    Tamil,
    Kannada,
    Latin,
    Mixed,
    Other,
}

impl ScriptTag {
    pub const ALL: [ScriptTag; 7] = [
        ScriptTag::Devanagari,
        ScriptTag::Bengali,
        ScriptTag::Tamil,
        ScriptTag::Kannada,
        ScriptTag::Latin,
        ScriptTag::Mixed,
        ScriptTag::Other,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScriptTag::Devanagari => "devanagari",
            ScriptTag::Bengali => "bengali",
            ScriptTag::Tamil => "tamil",
            ScriptTag::Kannada => "kannada",
            ScriptTag::Latin => "latin",
            ScriptTag::Mixed => "mixed",
            ScriptTag::Other => "other",
        }
    }

    /// One of the four native Indic blocks.
    pub fn is_native(self) -> bool {
        matches!(
            self,
            ScriptTag::Devanagari | ScriptTag::Bengali | ScriptTag::Tamil | ScriptTag::Kannada
        )
    }
}

impl fmt::Display for ScriptTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Native block of a single codepoint, if any.
pub fn native_block(c: char) -> Option<ScriptTag> {
    match c as u32 {
        0x0900..=0x097F => Some(ScriptTag::Devanagari),
        0x0980..=0x09FF => Some(ScriptTag::Bengali),
        0x0B80..=0x0BFF => Some(ScriptTag::Tamil),
        0x0C80..=0x0CFF => Some(ScriptTag::Kannada),
        _ => None,
    }
}

fn is_latin_letter(c: char) -> bool {
    c.is_alphabetic() && matches!(c as u32, 0x0041..=0x024F | 0x1E00..=0x1EFF)
}

/// Digits and combining marks never decide the tag; native-block digits and
/// signs are likewise transparent. Characters outside the five named scripts
/// are ignored, so a token made only of them is `Other`.
pub fn detect_script(token: &str) -> Result<ScriptTag, EmptyToken> {
    if token.is_empty() {
        return Err(EmptyToken);
    }
    let mut found: Option<ScriptTag> = None;
    for c in token.chars() {
        if c.is_numeric() {
            continue;
        }
        let tag = match native_block(c) {
            Some(t) => t,
            None if is_combining_mark(c) => continue,
            None if is_latin_letter(c) => ScriptTag::Latin,
            None => continue,
        };
        match found {
            None => found = Some(tag),
            Some(prev) if prev != tag => return Ok(ScriptTag::Mixed),
            _ => {}
        }
    }
    Ok(found.unwrap_or(ScriptTag::Other))
}
