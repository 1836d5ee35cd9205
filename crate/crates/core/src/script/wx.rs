//! WX transliteration between Devanagari and ASCII.
//!
//! The mapping itself lives in a data file (`data/wx_table.tsv`, embedded at
//! compile time and replaceable at runtime). This module owns the writing
//! rules: inherent vowels, implicit and explicit halant, and `^XXXX` escapes
//! for codepoints the table does not name. The rules are chosen so that
//! `from_wx(to_wx(s)) == s` for every string made of Devanagari codepoints
//! and ZWJ/ZWNJ, including malformed OCR sequences such as stray matras.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

use thiserror::Error;

use super::token::is_devanagari;

const BUILTIN_TABLE: &str = include_str!("../../data/wx_table.tsv");

const INHERENT_VOWEL: char = '\u{0905}';
const NUKTA: char = '\u{093C}';
const HALANT: char = '\u{094D}';
const ZWNJ: char = '\u{200C}';
const ZWJ: char = '\u{200D}';
const ESCAPE: char = '^';

#[derive(Debug, Error)]
pub enum WxTableError {
    #[error("cannot read WX table {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("WX table line {line}: {message}")]
    Invalid { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed WX at byte {offset}: {reason}")]
pub struct MalformedWx {
    pub offset: usize,
    pub reason: String,
}

/// ASCII transliteration of a Devanagari string.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct WxString(String);

impl WxString {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl AsRef<str> for WxString {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for WxString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Category {
    Consonant,
    Vowel,
    Matra,
    Nukta,
    Halant,
    Modifier,
    Other,
}

fn category(c: char) -> Category {
    match c {
        '\u{0915}'..='\u{0939}' | '\u{0958}'..='\u{095F}' | '\u{0978}'..='\u{097F}' => {
            Category::Consonant
        }
        '\u{0904}'..='\u{0914}' | '\u{0960}'..='\u{0961}' | '\u{0972}'..='\u{0977}' => {
            Category::Vowel
        }
        '\u{093A}'
        | '\u{093B}'
        | '\u{093E}'..='\u{094C}'
        | '\u{094E}'
        | '\u{094F}'
        | '\u{0955}'..='\u{0957}'
        | '\u{0962}'
        | '\u{0963}' => Category::Matra,
        NUKTA => Category::Nukta,
        HALANT => Category::Halant,
        '\u{0900}'..='\u{0903}' => Category::Modifier,
        _ => Category::Other,
    }
}

fn escapable(c: char) -> bool {
    is_devanagari(c) || c == ZWJ || c == ZWNJ
}

/// What a table code stands for when read back.
#[derive(Debug, Clone, Default)]
struct CodeSlots {
    consonant: Option<char>,
    vowel: Option<char>,
    matra: Option<char>,
    plain: Option<char>,
    nukta: bool,
    halant: bool,
}

impl CodeSlots {
    fn filled(&self) -> usize {
        [
            self.consonant.is_some(),
            self.vowel.is_some() || self.matra.is_some(),
            self.plain.is_some(),
            self.nukta,
            self.halant,
        ]
        .iter()
        .filter(|&&b| b)
        .count()
    }
}

/// A loaded WX mapping. Immutable once built.
#[derive(Debug, Clone)]
pub struct WxTable {
    encode: HashMap<char, String>,
    decode: HashMap<String, CodeSlots>,
    max_code_len: usize,
    halant_code: String,
}

impl WxTable {
    /// The table shipped with the crate.
    pub fn builtin() -> &'static WxTable {
        static TABLE: OnceLock<WxTable> = OnceLock::new();
        TABLE.get_or_init(|| WxTable::parse(BUILTIN_TABLE).expect("builtin WX table is valid"))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, WxTableError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| WxTableError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, WxTableError> {
        let mut encode = HashMap::new();
        let mut decode: HashMap<String, CodeSlots> = HashMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let invalid = |message: String| WxTableError::Invalid {
                line: line_no,
                message,
            };
            let (left, code) = line
                .split_once('\t')
                .ok_or_else(|| invalid("expected `U+XXXX<TAB>CODE`".into()))?;
            let c = parse_codepoint(left.trim()).ok_or_else(|| invalid(format!("bad codepoint {left:?}")))?;
            if !is_devanagari(c) {
                return Err(invalid(format!("U+{:04X} is outside the Devanagari block", c as u32)));
            }
            let code = code.trim();
            if code.is_empty()
                || !code.bytes().all(|b| b.is_ascii_graphic())
                || code.contains(ESCAPE)
            {
                return Err(invalid(format!("code {code:?} must be printable ASCII without '^'")));
            }
            if encode.insert(c, code.to_string()).is_some() {
                return Err(invalid(format!("U+{:04X} mapped twice", c as u32)));
            }
            let slots = decode.entry(code.to_string()).or_default();
            let slot_taken = match category(c) {
                Category::Consonant => slots.consonant.replace(c).is_some(),
                Category::Vowel => slots.vowel.replace(c).is_some(),
                Category::Matra => slots.matra.replace(c).is_some(),
                Category::Nukta => std::mem::replace(&mut slots.nukta, true),
                Category::Halant => std::mem::replace(&mut slots.halant, true),
                Category::Modifier | Category::Other => slots.plain.replace(c).is_some(),
            };
            if slot_taken || slots.filled() > 1 {
                return Err(invalid(format!("code {code:?} is ambiguous")));
            }
        }
        let halant_code = encode
            .get(&HALANT)
            .cloned()
            .ok_or_else(|| WxTableError::Invalid { line: 0, message: "no code for halant".into() })?;
        if !encode.contains_key(&INHERENT_VOWEL) {
            return Err(WxTableError::Invalid {
                line: 0,
                message: "no code for the inherent vowel".into(),
            });
        }
        let max_code_len = decode.keys().map(String::len).max().unwrap_or(1);
        Ok(WxTable {
            encode,
            decode,
            max_code_len,
            halant_code,
        })
    }

    fn push_code(&self, out: &mut String, c: char) {
        match self.encode.get(&c) {
            Some(code) => out.push_str(code),
            None => push_escape(out, c),
        }
    }

    /// Transliterates `s` to WX. Codepoints outside Devanagari (other than
    /// ZWJ/ZWNJ) are copied unchanged.
    pub fn to_wx(&self, s: &str) -> WxString {
        let mut out = String::with_capacity(s.len());
        // A consonant has been written and its vowel is not yet decided.
        let mut open_consonant = false;
        let mut nukta_written = false;
        // A halant was absorbed into the consonant cluster just written.
        let mut after_halant = false;

        for c in s.chars() {
            let cat = if escapable(c) { Some(category(c)) } else { None };
            if after_halant && matches!(cat, Some(Category::Vowel | Category::Matra)) {
                out.push_str(&self.halant_code);
            }
            after_halant = false;
            match cat {
                Some(Category::Matra) if open_consonant => {
                    self.push_code(&mut out, c);
                    open_consonant = false;
                }
                Some(Category::Halant) if open_consonant => {
                    open_consonant = false;
                    after_halant = true;
                }
                Some(Category::Nukta) if open_consonant && !nukta_written => {
                    self.push_code(&mut out, c);
                    nukta_written = true;
                }
                _ => {
                    if open_consonant {
                        self.push_code(&mut out, INHERENT_VOWEL);
                        open_consonant = false;
                    }
                    match cat {
                        None => out.push(c),
                        Some(Category::Matra | Category::Halant | Category::Nukta) => {
                            push_escape(&mut out, c)
                        }
                        Some(Category::Consonant) => {
                            self.push_code(&mut out, c);
                            open_consonant = true;
                            nukta_written = false;
                        }
                        Some(_) => self.push_code(&mut out, c),
                    }
                }
            }
        }
        if open_consonant {
            self.push_code(&mut out, INHERENT_VOWEL);
        }
        WxString(out)
    }

    fn lex(&self, w: &str) -> Result<Vec<Unit>, MalformedWx> {
        let bytes = w.as_bytes();
        let mut units = Vec::new();
        let mut pos = 0;
        while pos < w.len() {
            let c = w[pos..].chars().next().expect("pos is a char boundary");
            if c == ESCAPE {
                let hex = w.get(pos + 1..pos + 5).filter(|h| h.bytes().all(|b| b.is_ascii_hexdigit()));
                let cp = hex
                    .and_then(|h| u32::from_str_radix(h, 16).ok())
                    .and_then(char::from_u32)
                    .filter(|&cp| escapable(cp))
                    .ok_or_else(|| MalformedWx {
                        offset: pos,
                        reason: "escape must be '^' and four hex digits of a Devanagari codepoint".into(),
                    })?;
                units.push(Unit::escaped(cp));
                pos += 5;
                continue;
            }
            if !c.is_ascii() {
                units.push(Unit::Pass(c));
                pos += c.len_utf8();
                continue;
            }
            let longest = (1..=self.max_code_len.min(bytes.len() - pos))
                .rev()
                .find_map(|len| {
                    let code = w.get(pos..pos + len)?;
                    self.decode.get(code).map(|slots| (len, slots))
                });
            match longest {
                Some((len, slots)) => {
                    units.push(Unit::from_slots(slots, pos));
                    pos += len;
                }
                None if c.is_ascii_alphabetic() => {
                    return Err(MalformedWx {
                        offset: pos,
                        reason: format!("{c:?} is not a WX code"),
                    })
                }
                None => {
                    units.push(Unit::Pass(c));
                    pos += 1;
                }
            }
        }
        Ok(units)
    }

    /// Converts WX back to Devanagari.
    pub fn from_wx(&self, w: &str) -> Result<String, MalformedWx> {
        let units = self.lex(w)?;
        let mut out = String::with_capacity(w.len() * 3);
        let mut i = 0;
        while i < units.len() {
            let unit = &units[i];
            i += 1;
            match *unit {
                Unit::Consonant(c) => {
                    out.push(c);
                    if let Some(Unit::Nukta(_)) = units.get(i) {
                        out.push(NUKTA);
                        i += 1;
                    }
                    match units.get(i) {
                        Some(Unit::Vowel { independent: Some(INHERENT_VOWEL), .. }) => i += 1,
                        Some(&Unit::Vowel { matra: Some(m), .. }) | Some(&Unit::Matra(m)) => {
                            out.push(m);
                            i += 1;
                        }
                        Some(Unit::Halant(_)) => {
                            out.push(HALANT);
                            i += 1;
                        }
                        _ => out.push(HALANT),
                    }
                }
                Unit::Vowel { independent: Some(v), .. } => out.push(v),
                Unit::Vowel { independent: None, offset, .. } => {
                    return Err(MalformedWx {
                        offset,
                        reason: "vowel sign without a consonant".into(),
                    })
                }
                Unit::Nukta(offset) => {
                    return Err(MalformedWx {
                        offset,
                        reason: "nukta without a consonant".into(),
                    })
                }
                Unit::Halant(offset) => {
                    return Err(MalformedWx {
                        offset,
                        reason: "halant without a consonant".into(),
                    })
                }
                Unit::Matra(c) | Unit::Plain(c) | Unit::Pass(c) => out.push(c),
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy)]
enum Unit {
    Consonant(char),
    Vowel {
        independent: Option<char>,
        matra: Option<char>,
        offset: usize,
    },
    /// Escaped dependent vowel sign.
    Matra(char),
    Nukta(usize),
    Halant(usize),
    Plain(char),
    Pass(char),
}

impl Unit {
    fn escaped(cp: char) -> Unit {
        match category(cp) {
            Category::Consonant => Unit::Consonant(cp),
            Category::Vowel => Unit::Vowel {
                independent: Some(cp),
                matra: None,
                offset: 0,
            },
            Category::Matra => Unit::Matra(cp),
            _ => Unit::Plain(cp),
        }
    }

    fn from_slots(slots: &CodeSlots, offset: usize) -> Unit {
        if let Some(c) = slots.consonant {
            Unit::Consonant(c)
        } else if slots.vowel.is_some() || slots.matra.is_some() {
            Unit::Vowel {
                independent: slots.vowel,
                matra: slots.matra,
                offset,
            }
        } else if slots.nukta {
            Unit::Nukta(offset)
        } else if slots.halant {
            Unit::Halant(offset)
        } else {
            Unit::Plain(slots.plain.expect("every code fills one slot"))
        }
    }
}

fn push_escape(out: &mut String, c: char) {
    use std::fmt::Write;
    let _ = write!(out, "{ESCAPE}{:04X}", c as u32);
}

fn parse_codepoint(s: &str) -> Option<char> {
    let hex = s.strip_prefix("U+").or_else(|| s.strip_prefix("u+"))?;
    u32::from_str_radix(hex, 16).ok().and_then(char::from_u32)
}

/// Transliterates with the builtin table.
pub fn to_wx(s: &str) -> WxString {
    WxTable::builtin().to_wx(s)
}

/// Reverses [`to_wx`] with the builtin table.
pub fn from_wx(w: &str) -> Result<String, MalformedWx> {
    WxTable::builtin().from_wx(w)
}
