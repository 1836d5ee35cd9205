//! Line-oriented word files shared by the lexicon and gazetteers.

use std::path::{Path, PathBuf};

use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

#[derive(Debug, Error)]
pub enum WordlistError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{} is not valid UTF-8 (byte offset {offset})", path.display())]
    Encoding { path: PathBuf, offset: usize },
}

pub(crate) fn nfc(s: &str) -> String {
    s.nfc().collect()
}

pub(crate) fn read_file(path: &Path) -> Result<String, WordlistError> {
    let bytes = std::fs::read(path).map_err(|source| WordlistError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    String::from_utf8(bytes).map_err(|e| WordlistError::Encoding {
        path: path.to_path_buf(),
        offset: e.utf8_error().valid_up_to(),
    })
}

/// Trimmed, NFC-normalized entries; blank lines and `#` comments dropped.
pub(crate) fn entries(text: &str) -> impl Iterator<Item = String> + '_ {
    text.lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with('#'))
        .map(nfc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crlf_comments_and_blanks() {
        let got: Vec<_> = entries("# header\r\nखाया\r\n\r\n  बनाया  \n").collect();
        assert_eq!(got, ["खाया", "बनाया"]);
    }

    #[test]
    fn composes_nukta_letters() {
        // U+095B is a composition exclusion, so NFC keeps ज + nukta.
        assert_eq!(nfc("\u{095B}"), "\u{091C}\u{093C}");
        assert_eq!(nfc("\u{091C}\u{093C}"), "\u{091C}\u{093C}");
    }
}
