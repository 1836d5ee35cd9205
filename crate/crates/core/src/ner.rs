//! Rule- and gazetteer-based named entity recognition.
//!
//! Recognized tokens are exempt from spelling-error detection. Four entity
//! kinds are produced:
//!
//! * `Pattern`: e-mail addresses and ten-digit phone numbers (optionally
//!   prefixed by `+91` or `0`);
//! * `Temporal`: `DD/MM/YYYY`, `DD-MM-YYYY` and `HH:MM`;
//! * `Numeral`: any Number token, and a currency sign (`₹` or `रु`) directly
//!   followed by a number;
//! * `Textual`: exact matches of gazetteer entries of up to three words.
//!
//! Pattern and temporal rules run over whitespace-delimited chunks, so an
//! entity may cover several tokens (a date is Number, Punct, Number, ...).
//! Devanagari digits are read as their ASCII equivalents by every rule.
//! Overlapping matches are resolved longest-first, then leftmost.

use std::collections::{BTreeMap, HashSet};
use std::ops::Range;
use std::path::Path;
use std::sync::OnceLock;

use regex::Regex;
use serde::Serialize;

use crate::script::{tokenize, Sentence, TokenKind};
use crate::wordlist::{self, WordlistError};

/// Longest gazetteer entry, in words.
pub const MAX_ENTRY_WORDS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EntityKind {
    Temporal,
    Numeral,
    Pattern,
    Textual,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntitySpan {
    /// Contiguous range of token ordinals within the sentence.
    pub token_indices: Range<usize>,
    pub kind: EntityKind,
    /// Rule name, or gazetteer label for textual entities.
    pub label: String,
}

impl EntitySpan {
    pub fn covers(&self, token_index: usize) -> bool {
        self.token_indices.contains(&token_index)
    }

    fn overlaps(&self, other: &EntitySpan) -> bool {
        self.token_indices.start < other.token_indices.end
            && other.token_indices.start < self.token_indices.end
    }
}

/// Named word lists, each entry stored as its sequence of words.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Gazetteers {
    lists: BTreeMap<String, HashSet<Vec<String>>>,
}

impl Gazetteers {
    /// Loads every `<label>.txt` file in `dir`.
    pub fn load(dir: impl AsRef<Path>) -> Result<Self, WordlistError> {
        let dir = dir.as_ref();
        let io_err = |source| WordlistError::Io {
            path: dir.to_path_buf(),
            source,
        };
        let mut paths = Vec::new();
        for entry in std::fs::read_dir(dir).map_err(io_err)? {
            let path = entry.map_err(io_err)?.path();
            if path.is_file() && path.extension().is_some_and(|e| e == "txt") {
                paths.push(path);
            }
        }
        paths.sort();
        let mut gaz = Gazetteers::default();
        for path in paths {
            let label = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let text = wordlist::read_file(&path)?;
            gaz.add_list(&label, &text);
        }
        Ok(gaz)
    }

    /// The person and place lists bundled with the crate.
    pub fn sample() -> Self {
        let mut gaz = Gazetteers::default();
        gaz.add_list("person", include_str!("../data/gazetteers/person.txt"));
        gaz.add_list("place", include_str!("../data/gazetteers/place.txt"));
        gaz
    }

    fn add_list(&mut self, label: &str, text: &str) {
        self.lists.entry(label.to_string()).or_default();
        for entry in wordlist::entries(text) {
            self.insert(label, &entry);
        }
    }

    /// Adds one entry. Entries that are not 1 to 3 Devanagari words are
    /// ignored and `false` is returned.
    pub fn insert(&mut self, label: &str, entry: &str) -> bool {
        let tokens = tokenize(&wordlist::nfc(entry));
        if tokens
            .iter()
            .any(|t| !matches!(t.kind, TokenKind::Word | TokenKind::Space))
        {
            return false;
        }
        let words: Vec<String> = tokens
            .into_iter()
            .filter(|t| t.is_word())
            .map(|t| t.surface)
            .collect();
        if words.is_empty() || words.len() > MAX_ENTRY_WORDS {
            return false;
        }
        self.lists.entry(label.to_string()).or_default().insert(words)
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.lists.keys().map(String::as_str)
    }

    /// Number of entries under `label`.
    pub fn size(&self, label: &str) -> Option<usize> {
        self.lists.get(label).map(HashSet::len)
    }

    fn lookup(&self, words: &[String]) -> Option<&str> {
        self.lists
            .iter()
            .find(|(_, entries)| entries.contains(words))
            .map(|(label, _)| label.as_str())
    }
}

/// Loads a gazetteer directory.
pub fn load_gazetteers(dir: impl AsRef<Path>) -> Result<Gazetteers, WordlistError> {
    Gazetteers::load(dir)
}

struct Rules {
    email: Regex,
    phone: Regex,
    date: Regex,
    time: Regex,
}

fn rules() -> &'static Rules {
    static RULES: OnceLock<Rules> = OnceLock::new();
    RULES.get_or_init(|| Rules {
        email: Regex::new(
            r"[A-Za-z0-9._%+\-]+@[A-Za-z0-9\-]+(?:\.[A-Za-z0-9\-]+)*\.[A-Za-z]{2,}",
        )
        .unwrap(),
        phone: Regex::new(r"(?:\+91|0)?[0-9]{10}").unwrap(),
        date: Regex::new(r"([0-9]{1,2})([/\-])([0-9]{1,2})([/\-])([0-9]{4})").unwrap(),
        time: Regex::new(r"([0-9]{1,2}):([0-9]{2})").unwrap(),
    })
}

fn ascii_digit(c: char) -> char {
    match c {
        '\u{0966}'..='\u{096F}' => char::from(b'0' + (c as u32 - 0x0966) as u8),
        _ => c,
    }
}

fn is_digit_like(c: char) -> bool {
    c.is_ascii_digit() || ('\u{0966}'..='\u{096F}').contains(&c)
}

/// Whitespace-free run of tokens, with its text folded to ASCII digits.
struct Chunk {
    tokens: Range<usize>,
    text: String,
    /// Char offset (within `text`) at which each token of the chunk starts.
    starts: Vec<usize>,
}

impl Chunk {
    /// Token range covering the char range `chars` of the chunk.
    fn covering(&self, chars: Range<usize>) -> Range<usize> {
        let first = self.starts.partition_point(|&s| s <= chars.start) - 1;
        let last = self.starts.partition_point(|&s| s < chars.end) - 1;
        self.tokens.start + first..self.tokens.start + last + 1
    }
}

fn chunks(sentence: &Sentence) -> Vec<Chunk> {
    let mut out: Vec<Chunk> = Vec::new();
    let mut current: Option<Chunk> = None;
    for (i, tok) in sentence.tokens.iter().enumerate() {
        if tok.kind == TokenKind::Space {
            out.extend(current.take());
            continue;
        }
        let chunk = current.get_or_insert_with(|| Chunk {
            tokens: i..i,
            text: String::new(),
            starts: Vec::new(),
        });
        chunk.starts.push(chunk.text.chars().count());
        chunk.text.extend(tok.surface.chars().map(ascii_digit));
        chunk.tokens.end = i + 1;
    }
    out.extend(current);
    out
}

fn char_range(text: &str, bytes: Range<usize>) -> Range<usize> {
    let start = text[..bytes.start].chars().count();
    start..start + text[bytes].chars().count()
}

/// True when the match is not glued to further digits on either side.
fn digit_bounded(text: &str, bytes: &Range<usize>) -> bool {
    let before = text[..bytes.start].chars().next_back();
    let after = text[bytes.end..].chars().next();
    !before.is_some_and(|c| c.is_ascii_digit()) && !after.is_some_and(|c| c.is_ascii_digit())
}

fn pattern_matches(chunk: &Chunk, out: &mut Vec<EntitySpan>) {
    let rules = rules();
    let mut push = |bytes: Range<usize>, kind, label: &str| {
        out.push(EntitySpan {
            token_indices: chunk.covering(char_range(&chunk.text, bytes)),
            kind,
            label: label.to_string(),
        });
    };
    for m in rules.email.find_iter(&chunk.text) {
        push(m.range(), EntityKind::Pattern, "email");
    }
    for m in rules.phone.find_iter(&chunk.text) {
        if digit_bounded(&chunk.text, &m.range()) {
            push(m.range(), EntityKind::Pattern, "phone");
        }
    }
    for caps in rules.date.captures_iter(&chunk.text) {
        let whole = caps.get(0).unwrap().range();
        let field = |i: usize| caps[i].parse::<u32>().unwrap_or(0);
        let (day, month, year) = (field(1), field(3), field(5));
        let same_sep = caps[2] == caps[4];
        if same_sep
            && (1..=31).contains(&day)
            && (1..=12).contains(&month)
            && (1000..=2999).contains(&year)
            && digit_bounded(&chunk.text, &whole)
        {
            push(whole, EntityKind::Temporal, "date");
        }
    }
    for caps in rules.time.captures_iter(&chunk.text) {
        let whole = caps.get(0).unwrap().range();
        let hh: u32 = caps[1].parse().unwrap_or(99);
        let mm: u32 = caps[2].parse().unwrap_or(99);
        if hh <= 23 && mm <= 59 && digit_bounded(&chunk.text, &whole) {
            push(whole, EntityKind::Temporal, "time");
        }
    }
}

fn currency_matches(sentence: &Sentence, out: &mut Vec<EntitySpan>) {
    let toks = &sentence.tokens;
    for (i, tok) in toks.iter().enumerate() {
        let sign = match tok.surface.as_str() {
            "₹" | "रु" => true,
            s => s.ends_with('₹') && tok.kind == TokenKind::Punct,
        };
        if !sign {
            continue;
        }
        let mut j = i + 1;
        if toks.get(j).is_some_and(|t| t.kind == TokenKind::Space && t.surface.chars().count() == 1) {
            j += 1;
        }
        if toks.get(j).is_some_and(|t| t.kind == TokenKind::Number) {
            out.push(EntitySpan {
                token_indices: i..j + 1,
                kind: EntityKind::Numeral,
                label: "currency".into(),
            });
        }
    }
}

fn numeral_matches(sentence: &Sentence, out: &mut Vec<EntitySpan>) {
    for (i, tok) in sentence.tokens.iter().enumerate() {
        if tok.kind == TokenKind::Number && tok.surface.chars().all(is_digit_like) {
            out.push(EntitySpan {
                token_indices: i..i + 1,
                kind: EntityKind::Numeral,
                label: "number".into(),
            });
        }
    }
}

/// Every gazetteer match in the sentence, overlapping ones included.
pub fn gazetteer_matches(sentence: &Sentence, gazetteers: &Gazetteers) -> Vec<EntitySpan> {
    let mut out = Vec::new();
    if gazetteers.is_empty() {
        return out;
    }
    let toks = &sentence.tokens;
    for start in 0..toks.len() {
        if !toks[start].is_word() {
            continue;
        }
        let mut words: Vec<String> = Vec::with_capacity(MAX_ENTRY_WORDS);
        let mut end = start;
        while words.len() < MAX_ENTRY_WORDS && end < toks.len() && toks[end].is_word() {
            words.push(wordlist::nfc(&toks[end].surface));
            if let Some(label) = gazetteers.lookup(&words) {
                out.push(EntitySpan {
                    token_indices: start..end + 1,
                    kind: EntityKind::Textual,
                    label: label.to_string(),
                });
            }
            // Entry words are separated by exactly one whitespace token.
            match (toks.get(end + 1), toks.get(end + 2)) {
                (Some(sp), Some(next)) if sp.kind == TokenKind::Space && next.is_word() => {
                    end += 2;
                }
                _ => break,
            }
        }
    }
    out
}

/// Finds the entities of one sentence. The result is non-overlapping and
/// ordered by position.
pub fn find_entities(sentence: &Sentence, gazetteers: &Gazetteers) -> Vec<EntitySpan> {
    let mut found = Vec::new();
    for chunk in chunks(sentence) {
        pattern_matches(&chunk, &mut found);
    }
    currency_matches(sentence, &mut found);
    found.extend(gazetteer_matches(sentence, gazetteers));
    numeral_matches(sentence, &mut found);

    // Stable: equal spans keep rule order (pattern, temporal, currency,
    // textual, numeral).
    found.sort_by_key(|s| (std::cmp::Reverse(s.token_indices.len()), s.token_indices.start));
    let mut chosen: Vec<EntitySpan> = Vec::new();
    for span in found {
        if !chosen.iter().any(|c| c.overlaps(&span)) {
            chosen.push(span);
        }
    }
    chosen.sort_by_key(|s| s.token_indices.start);
    chosen
}
