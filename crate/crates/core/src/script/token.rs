//! Sentence splitting and tokenization of Devanagari text.
//!
//! Every codepoint is assigned a [`TokenKind`]; a token is a maximal run of
//! codepoints of the same kind. Vowel signs, halant, nukta and the other
//! combining marks belong to whatever Word run precedes them, so they never
//! start a Word token and never split from their base letter. A combining
//! mark with no Devanagari letter before it (a stray mark in OCR output) is
//! classified as `Punct`.

use std::ops::Range;

use serde::Serialize;

const DANDA: char = '\u{0964}';
const DOUBLE_DANDA: char = '\u{0965}';
const ZWNJ: char = '\u{200C}';
const ZWJ: char = '\u{200D}';

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TokenKind {
    Word,
    Space,
    Punct,
    Number,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Token {
    pub surface: String,
    pub kind: TokenKind,
    /// Half-open codepoint offsets into the source text.
    pub span: Range<usize>,
    /// Half-open byte offsets into the source text.
    #[serde(skip)]
    pub byte_span: Range<usize>,
    /// Ordinal of the token within its sentence.
    pub index: usize,
}

impl Token {
    pub fn is_word(&self) -> bool {
        self.kind == TokenKind::Word
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sentence {
    pub tokens: Vec<Token>,
    /// Codepoint offsets of the sentence within the document.
    pub source_span: Range<usize>,
    #[serde(skip)]
    pub byte_span: Range<usize>,
}

impl Sentence {
    /// Tokenizes `text` as a standalone sentence starting at offset zero.
    pub fn from_text(text: &str) -> Self {
        let tokens = tokenize(text);
        Sentence {
            tokens,
            source_span: 0..text.chars().count(),
            byte_span: 0..text.len(),
        }
    }

    /// Number of Word tokens.
    pub fn word_count(&self) -> usize {
        self.tokens.iter().filter(|t| t.is_word()).count()
    }

    /// The tokens seen by the language model: every token except whitespace.
    pub fn non_space_tokens(&self) -> impl Iterator<Item = &Token> {
        self.tokens.iter().filter(|t| t.kind != TokenKind::Space)
    }

    /// Position of token `token_index` among the non-space tokens.
    pub fn sequence_position(&self, token_index: usize) -> Option<usize> {
        let token = self.tokens.get(token_index)?;
        if token.kind == TokenKind::Space {
            return None;
        }
        Some(
            self.tokens[..token_index]
                .iter()
                .filter(|t| t.kind != TokenKind::Space)
                .count(),
        )
    }

    pub fn text(&self) -> String {
        self.tokens.iter().map(|t| t.surface.as_str()).collect()
    }
}

pub fn is_devanagari(c: char) -> bool {
    ('\u{0900}'..='\u{097F}').contains(&c)
}

pub fn is_devanagari_digit(c: char) -> bool {
    ('\u{0966}'..='\u{096F}').contains(&c)
}

/// Signs that attach to a preceding letter.
pub fn is_combining_mark(c: char) -> bool {
    matches!(c,
        '\u{0900}'..='\u{0903}'
        | '\u{093A}'..='\u{093C}'
        | '\u{093E}'..='\u{094F}'
        | '\u{0951}'..='\u{0957}'
        | '\u{0962}'..='\u{0963}')
}

fn is_word_char(c: char) -> bool {
    is_devanagari(c) && c != DANDA && c != DOUBLE_DANDA && !is_devanagari_digit(c)
}

fn base_kind(c: char) -> TokenKind {
    if c.is_whitespace() {
        TokenKind::Space
    } else if c.is_ascii_digit() || is_devanagari_digit(c) {
        TokenKind::Number
    } else if is_word_char(c) {
        TokenKind::Word
    } else {
        TokenKind::Punct
    }
}

/// Kind of `c` given the kind of the codepoint before it.
fn classify(c: char, prev: Option<TokenKind>) -> TokenKind {
    let continues_word = prev == Some(TokenKind::Word);
    if c == ZWJ || c == ZWNJ {
        return if continues_word { TokenKind::Word } else { TokenKind::Punct };
    }
    if is_combining_mark(c) && !continues_word {
        return TokenKind::Punct;
    }
    base_kind(c)
}

/// Splits `text` into tokens whose offsets are relative to `text`.
pub fn tokenize(text: &str) -> Vec<Token> {
    tokenize_at(text, 0, 0)
}

/// Splits `text` into tokens, offsetting spans by the given codepoint and
/// byte positions of `text` within a larger document.
pub fn tokenize_at(text: &str, char_offset: usize, byte_offset: usize) -> Vec<Token> {
    let mut tokens: Vec<Token> = Vec::new();
    let mut prev: Option<TokenKind> = None;
    for (ci, (bi, c)) in text.char_indices().enumerate() {
        let kind = classify(c, prev);
        let char_pos = char_offset + ci;
        let byte_pos = byte_offset + bi;
        match tokens.last_mut() {
            Some(last) if last.kind == kind => {
                last.surface.push(c);
                last.span.end = char_pos + 1;
                last.byte_span.end = byte_pos + c.len_utf8();
            }
            _ => {
                let index = tokens.len();
                tokens.push(Token {
                    surface: c.to_string(),
                    kind,
                    span: char_pos..char_pos + 1,
                    byte_span: byte_pos..byte_pos + c.len_utf8(),
                    index,
                });
            }
        }
        prev = Some(kind);
    }
    tokens
}

fn is_terminator(c: char) -> bool {
    matches!(c, DANDA | DOUBLE_DANDA | '.' | '?' | '!')
}

/// Splits a document into sentences.
///
/// A boundary falls after a terminator (danda, double danda, `.`, `?`, `!`)
/// that is followed by whitespace or the end of the text. The whitespace run
/// after the terminator stays with the sentence it follows, so the sentence
/// sources concatenate back to the input.
pub fn split_sentences(text: &str) -> Vec<Sentence> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut sentences = Vec::new();
    let mut start = 0usize;
    let mut i = 0usize;
    while i < chars.len() {
        let c = chars[i].1;
        let at_boundary = is_terminator(c)
            && chars.get(i + 1).is_none_or(|&(_, next)| next.is_whitespace());
        i += 1;
        if at_boundary {
            while i < chars.len() && chars[i].1.is_whitespace() {
                i += 1;
            }
            sentences.push(make_sentence(text, &chars, start, i));
            start = i;
        }
    }
    if start < chars.len() {
        sentences.push(make_sentence(text, &chars, start, chars.len()));
    }
    sentences
}

fn make_sentence(text: &str, chars: &[(usize, char)], start: usize, end: usize) -> Sentence {
    let byte_start = chars[start].0;
    let byte_end = chars.get(end).map_or(text.len(), |&(b, _)| b);
    Sentence {
        tokens: tokenize_at(&text[byte_start..byte_end], start, byte_start),
        source_span: start..end,
        byte_span: byte_start..byte_end,
    }
}
