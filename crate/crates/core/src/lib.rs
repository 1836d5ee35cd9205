//! Context-sensitive spelling correction for OCR-generated Devanagari text.
//!
//! Out-of-vocabulary words are found with a lexicon and a rule/gazetteer
//! entity recognizer, masked, and sent to a masked language model for
//! contextual candidates. The candidate closest to the misspelling in WX
//! edit distance wins; equal distances go to the more probable candidate.

pub mod correct;
pub mod detect;
pub mod eval;
pub mod lexicon;
pub mod mlm;
pub mod ner;
pub mod pipeline;
pub mod script;
mod wordlist;

pub use correct::{edit_distance, select_correction, Correction, RankedCandidate};
pub use detect::{detect_errors, mask, DetectedError, MaskedSentence, MASK_TOKEN};
pub use lexicon::Lexicon;
pub use mlm::{Candidate, CandidateList, CandidateProvider, MockProvider};
pub use ner::{find_entities, EntityKind, EntitySpan, Gazetteers};
pub use pipeline::{correct_document, CorrectedDocument, Pipeline, PipelineConfig};
pub use script::{from_wx, split_sentences, to_wx, tokenize, Sentence, Token, TokenKind, WxString};
