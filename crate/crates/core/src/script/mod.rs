//! Devanagari text model: sentences, tokens and WX transliteration.

mod token;
mod wx;

pub use token::{
    is_combining_mark, is_devanagari, is_devanagari_digit, split_sentences, tokenize, tokenize_at,
    Sentence, Token, TokenKind,
};
pub use wx::{from_wx, to_wx, MalformedWx, WxString, WxTable, WxTableError};
