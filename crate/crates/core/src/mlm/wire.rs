//! JSON bodies of the prediction protocol.
//!
//! `POST <endpoint>/v1/predict` with [`PredictRequest`]; a 200 answer carries
//! [`PredictResponse`], a 400 answer carries [`ErrorBody`].

use serde::{Deserialize, Serialize};

use super::{Candidate, CandidateError, CandidateList};

pub const PREDICT_PATH: &str = "/v1/predict";
pub const HEALTH_PATH: &str = "/v1/health";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictRequest {
    /// Word-level masked sequence.
    pub tokens: Vec<String>,
    /// 0-based position of the mask being asked about.
    pub mask_index: usize,
    pub top_k: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WireCandidate {
    pub token: String,
    pub prob: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictResponse {
    pub candidates: Vec<WireCandidate>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: String,
}

impl PredictResponse {
    /// Validates a server answer for a request of size `k`. Any bad entry
    /// rejects the whole response; the only repair made is re-sorting by
    /// probability.
    pub fn validate(self, mask_index: usize, k: usize) -> Result<CandidateList, CandidateError> {
        if self.candidates.len() > k {
            return Err(CandidateError::TooMany {
                len: self.candidates.len(),
                k,
            });
        }
        let mut candidates = self
            .candidates
            .into_iter()
            .map(|c| Candidate::new(c.token, c.prob))
            .collect::<Result<Vec<_>, _>>()?;
        candidates.sort_by(|a, b| b.probability.total_cmp(&a.probability));
        CandidateList::new(mask_index, candidates)
    }
}

impl From<&CandidateList> for PredictResponse {
    fn from(list: &CandidateList) -> Self {
        PredictResponse {
            candidates: list
                .candidates()
                .iter()
                .map(|c| WireCandidate {
                    token: c.word.clone(),
                    prob: c.probability,
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn request_shape_is_exact() {
        let req = PredictRequest {
            tokens: vec!["राम".into(), "ने".into(), "खाना".into(), "[MASK]".into()],
            mask_index: 3,
            top_k: 10,
        };
        assert_eq!(
            serde_json::to_string(&req).unwrap(),
            r#"{"tokens":["राम","ने","खाना","[MASK]"],"mask_index":3,"top_k":10}"#
        );
    }

    #[test]
    fn validate_resorts_and_rejects() {
        let resp: PredictResponse = serde_json::from_str(
            r#"{"candidates":[{"token":"लाया","prob":0.0124},{"token":"खाया","prob":0.4191}]}"#,
        )
        .unwrap();
        let list = resp.validate(3, 10).unwrap();
        assert_eq!(list.candidates()[0].word, "खाया");

        let zero: PredictResponse =
            serde_json::from_str(r#"{"candidates":[{"token":"खाया","prob":0}]}"#).unwrap();
        assert!(zero.validate(3, 10).is_err());

        let dup: PredictResponse = serde_json::from_str(
            r#"{"candidates":[{"token":"a","prob":0.5},{"token":"a","prob":0.2}]}"#,
        )
        .unwrap();
        assert!(matches!(dup.validate(0, 10), Err(CandidateError::Duplicate(_))));

        let long: PredictResponse = serde_json::from_str(
            r#"{"candidates":[{"token":"a","prob":0.5},{"token":"b","prob":0.2}]}"#,
        )
        .unwrap();
        assert!(matches!(long.validate(0, 1), Err(CandidateError::TooMany { .. })));
    }
}
