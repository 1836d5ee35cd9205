//! Out-of-vocabulary detection and masking.
//!
//! A token is reported as a spelling error when it is not whitespace, not
//! punctuation, not in the lexicon and not covered by any entity span.
//! Number tokens are always covered by a Numeral entity, so in practice
//! only Word tokens are ever reported.

use std::ops::Range;

use serde::Serialize;
use thiserror::Error;

use crate::lexicon::Lexicon;
use crate::ner::EntitySpan;
use crate::script::{Sentence, TokenKind};

/// Placeholder written in place of each detected error.
pub const MASK_TOKEN: &str = "[MASK]";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DetectedError {
    /// Ordinal of the token within the sentence.
    pub token_index: usize,
    /// Position of the token in the masked sequence (whitespace excluded).
    pub word_index: usize,
    pub surface: String,
    /// Codepoint span of the word in the document.
    pub span: Range<usize>,
    #[serde(skip)]
    pub byte_span: Range<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaskedSentence {
    /// Non-whitespace tokens of the sentence, errors replaced by [`MASK_TOKEN`].
    pub tokens: Vec<String>,
    /// Positions in `tokens` holding the mask, ascending.
    pub mask_indices: Vec<usize>,
}

impl MaskedSentence {
    pub fn is_masked(&self, index: usize) -> bool {
        self.mask_indices.binary_search(&index).is_ok()
    }

    /// Puts the original surfaces back at the masked positions.
    pub fn unmask(&self, errors: &[DetectedError]) -> Vec<String> {
        let mut tokens = self.tokens.clone();
        for e in errors {
            if let Some(slot) = tokens.get_mut(e.word_index) {
                *slot = e.surface.clone();
            }
        }
        tokens
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MaskError {
    #[error("token {0} is not a word of the sentence")]
    IndexOutOfRange(usize),
}

/// Applies the detection criteria to every token of `sentence`.
pub fn detect_errors(
    sentence: &Sentence,
    lexicon: &Lexicon,
    entities: &[EntitySpan],
) -> Vec<DetectedError> {
    let mut word_index = 0;
    let mut errors = Vec::new();
    for tok in &sentence.tokens {
        if tok.kind == TokenKind::Space {
            continue;
        }
        let flagged = tok.kind != TokenKind::Punct
            && !lexicon.contains(&tok.surface)
            && !entities.iter().any(|e| e.covers(tok.index));
        if flagged {
            errors.push(DetectedError {
                token_index: tok.index,
                word_index,
                surface: tok.surface.clone(),
                span: tok.span.clone(),
                byte_span: tok.byte_span.clone(),
            });
        }
        word_index += 1;
    }
    errors
}

/// Replaces every detected error of `sentence` with the mask token at once.
pub fn mask(sentence: &Sentence, errors: &[DetectedError]) -> Result<MaskedSentence, MaskError> {
    let mut tokens: Vec<String> = sentence.non_space_tokens().map(|t| t.surface.clone()).collect();
    let mut mask_indices = Vec::with_capacity(errors.len());
    for e in errors {
        let is_word = sentence
            .tokens
            .get(e.token_index)
            .is_some_and(|t| t.kind == TokenKind::Word);
        let position = sentence.sequence_position(e.token_index);
        match position {
            Some(pos) if is_word => {
                tokens[pos] = MASK_TOKEN.to_string();
                mask_indices.push(pos);
            }
            _ => return Err(MaskError::IndexOutOfRange(e.token_index)),
        }
    }
    mask_indices.sort_unstable();
    mask_indices.dedup();
    Ok(MaskedSentence {
        tokens,
        mask_indices,
    })
}
