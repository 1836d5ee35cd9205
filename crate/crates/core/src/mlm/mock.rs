use std::collections::HashMap;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use super::wire::WireCandidate;
use super::{Candidate, CandidateList, CandidateProvider, ProviderError};
use crate::detect::{MaskedSentence, MASK_TOKEN};

#[derive(Debug, Error)]
pub enum MockError {
    #[error("cannot read mock table {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("mock table is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("mock table entry {entry}: {reason}")]
    InvalidTable { entry: usize, reason: String },
}

#[derive(Debug, Deserialize)]
struct TableFile {
    entries: Vec<TableEntry>,
}

#[derive(Debug, Deserialize)]
struct TableEntry {
    tokens: Vec<String>,
    mask_index: usize,
    candidates: Vec<WireCandidate>,
}

/// Answers from a fixed table keyed by the exact masked word sequence and
/// mask position. Unknown queries get an empty list.
#[derive(Debug, Clone, Default)]
pub struct MockProvider {
    table: HashMap<(Vec<String>, usize), CandidateList>,
}

impl MockProvider {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reads a table file:
    /// `{"entries": [{"tokens": [...], "mask_index": j, "candidates": [{"token", "prob"}]}]}`.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, MockError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| MockError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn from_json(json: &str) -> Result<Self, MockError> {
        let file: TableFile = serde_json::from_str(json)?;
        let mut mock = MockProvider::new();
        for (entry, e) in file.entries.into_iter().enumerate() {
            let invalid = |reason: String| MockError::InvalidTable { entry, reason };
            let candidates = e
                .candidates
                .into_iter()
                .map(|c| Candidate::new(c.token, c.prob))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|err| invalid(err.to_string()))?;
            let list = CandidateList::new(e.mask_index, candidates)
                .map_err(|err| invalid(err.to_string()))?;
            mock.insert(e.tokens, list).map_err(invalid)?;
        }
        Ok(mock)
    }

    /// The five candidates of the worked example
    /// `राम ने खाना [MASK]`.
    pub fn worked_example() -> Self {
        Self::from_json(include_str!("../../data/mock/worked_example.json"))
            .expect("bundled mock table is valid")
    }

    /// Stores `list` for the masked sequence `tokens` at `list.mask_index`.
    pub fn insert(&mut self, tokens: Vec<String>, list: CandidateList) -> Result<(), String> {
        let j = list.mask_index;
        if tokens.get(j).map(String::as_str) != Some(MASK_TOKEN) {
            return Err(format!("token {j} of the key is not {MASK_TOKEN}"));
        }
        self.table.insert((tokens, j), list);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

impl CandidateProvider for MockProvider {
    fn candidates(
        &self,
        masked: &MaskedSentence,
        mask_index: usize,
        k: usize,
    ) -> Result<CandidateList, ProviderError> {
        let key = (masked.tokens.clone(), mask_index);
        Ok(self
            .table
            .get(&key)
            .cloned()
            .map(|list| list.truncated(k))
            .unwrap_or_else(|| CandidateList::empty(mask_index)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mlm::predict;
    use proptest::prelude::*;

    fn masked() -> MaskedSentence {
        MaskedSentence {
            tokens: ["राम", "ने", "खाना", MASK_TOKEN].map(String::from).to_vec(),
            mask_indices: vec![3],
        }
    }

    fn words(list: &CandidateList) -> Vec<(&str, f64)> {
        list.candidates()
            .iter()
            .map(|c| (c.word.as_str(), c.probability))
            .collect()
    }

    #[test]
    fn worked_example_top_five() {
        let mock = MockProvider::worked_example();
        let list = predict(&mock, &masked(), 3, 5).unwrap();
        assert_eq!(
            words(&list),
            [
                ("खाया", 0.4191),
                ("बनाया", 0.2359),
                ("खिलाया", 0.1257),
                ("लाया", 0.0124),
                ("पकाया", 0.0113)
            ]
        );
        let top = predict(&mock, &masked(), 3, 1).unwrap();
        assert_eq!(words(&top), [("खाया", 0.4191)]);
    }

    #[test]
    fn unknown_context_is_empty() {
        let mock = MockProvider::worked_example();
        let mut other = masked();
        other.tokens[0] = "सीता".into();
        assert!(predict(&mock, &other, 3, 10).unwrap().is_empty());
    }

    #[test]
    fn invalid_probability_rejected() {
        let json = r#"{"entries":[{"tokens":["[MASK]"],"mask_index":0,"candidates":[{"token":"x","prob":1.5}]}]}"#;
        assert!(matches!(
            MockProvider::from_json(json),
            Err(MockError::InvalidTable { entry: 0, .. })
        ));
    }

    #[test]
    fn key_must_hold_mask() {
        let json = r#"{"entries":[{"tokens":["a","b"],"mask_index":1,"candidates":[]}]}"#;
        assert!(matches!(
            MockProvider::from_json(json),
            Err(MockError::InvalidTable { .. })
        ));
    }

    #[test]
    fn unsorted_entry_rejected() {
        let json = r#"{"entries":[{"tokens":["[MASK]"],"mask_index":0,"candidates":[{"token":"x","prob":0.1},{"token":"y","prob":0.2}]}]}"#;
        assert!(MockProvider::from_json(json).is_err());
    }

    proptest! {
        #[test]
        fn truncation_is_a_prefix(k1 in 1usize..8, k2 in 1usize..8) {
            let (small, large) = (k1.min(k2), k1.max(k2));
            let mock = MockProvider::worked_example();
            let a = predict(&mock, &masked(), 3, small).unwrap();
            let b = predict(&mock, &masked(), 3, large).unwrap();
            prop_assert!(a.len() <= small);
            prop_assert_eq!(a.candidates(), &b.candidates()[..a.len()]);
        }
    }
}
