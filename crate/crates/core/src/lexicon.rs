//! Lookup dictionary of valid words.
//!
//! A lexicon file is a flat wordlist: one word per line, `#` comments and
//! blank lines ignored, CRLF accepted. Entries and queries are compared
//! after NFC normalization.

use std::collections::HashSet;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::wordlist::{self, WordlistError};

const SAMPLE: &str = include_str!("../data/lexicon_sample.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    words: HashSet<String>,
    source_digest: String,
}

impl Lexicon {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, WordlistError> {
        let text = wordlist::read_file(path.as_ref())?;
        Ok(Self::from_text(&text))
    }

    pub fn from_text(text: &str) -> Self {
        let words = wordlist::entries(text).collect();
        Lexicon {
            words,
            source_digest: hex::encode(Sha256::digest(text.as_bytes())),
        }
    }

    /// The sample wordlist bundled with the crate (about 1500 common words).
    pub fn sample() -> Self {
        Self::from_text(SAMPLE)
    }

    pub fn contains(&self, word: &str) -> bool {
        if word.is_empty() {
            return false;
        }
        if self.words.contains(word) {
            return true;
        }
        self.words.contains(&wordlist::nfc(word))
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Hex SHA-256 of the file the lexicon was loaded from.
    pub fn source_digest(&self) -> &str {
        &self.source_digest
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }
}

/// Loads a lexicon file.
pub fn load_lexicon(path: impl AsRef<Path>) -> Result<Lexicon, WordlistError> {
    Lexicon::load(path)
}
