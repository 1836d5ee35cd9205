//! Masked-language-model candidate providers.
//!
//! A provider answers "which whole words could stand at this mask?" for a
//! masked word sequence. Two providers ship with the crate: [`MockProvider`],
//! an exact-lookup table used for tests and offline runs, and
//! [`RemoteProvider`], an HTTP client for an inference server speaking the
//! JSON protocol in [`wire`]. Probabilities are opaque scores; they are
//! compared, never renormalized.

mod mock;
#[cfg(feature = "remote")]
mod remote;
pub mod wire;

use std::collections::HashSet;
use std::fmt;
use std::time::Duration;

use serde::Serialize;
use thiserror::Error;

use crate::detect::MaskedSentence;

pub use mock::{MockError, MockProvider};
#[cfg(feature = "remote")]
pub use remote::RemoteProvider;

pub const DEFAULT_TOP_K: usize = 10;
pub const MAX_TOP_K: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Candidate {
    pub word: String,
    pub probability: f64,
}

impl Candidate {
    pub fn new(word: impl Into<String>, probability: f64) -> Result<Self, CandidateError> {
        let word = word.into();
        if word.is_empty() {
            return Err(CandidateError::EmptyWord);
        }
        if word.chars().any(char::is_whitespace) {
            return Err(CandidateError::Whitespace(word));
        }
        if !(probability.is_finite() && probability > 0.0 && probability <= 1.0) {
            return Err(CandidateError::Probability { word, probability });
        }
        Ok(Candidate { word, probability })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CandidateError {
    #[error("candidate word is empty")]
    EmptyWord,
    #[error("candidate {0:?} contains whitespace")]
    Whitespace(String),
    #[error("candidate {word:?} has probability {probability} outside (0, 1]")]
    Probability { word: String, probability: f64 },
    #[error("candidate {0:?} appears twice")]
    Duplicate(String),
    #[error("candidates are not sorted by probability")]
    Unsorted,
    #[error("{len} candidates exceed the requested {k}")]
    TooMany { len: usize, k: usize },
}

/// Candidates for one mask position, most probable first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateList {
    pub mask_index: usize,
    candidates: Vec<Candidate>,
}

impl CandidateList {
    /// Checks sortedness and uniqueness; the candidates themselves are
    /// already valid by construction.
    pub fn new(mask_index: usize, candidates: Vec<Candidate>) -> Result<Self, CandidateError> {
        let mut seen = HashSet::new();
        for c in &candidates {
            if !seen.insert(c.word.as_str()) {
                return Err(CandidateError::Duplicate(c.word.clone()));
            }
        }
        if candidates
            .windows(2)
            .any(|w| w[0].probability < w[1].probability)
        {
            return Err(CandidateError::Unsorted);
        }
        Ok(CandidateList {
            mask_index,
            candidates,
        })
    }

    pub fn empty(mask_index: usize) -> Self {
        CandidateList {
            mask_index,
            candidates: Vec::new(),
        }
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn truncated(mut self, k: usize) -> Self {
        self.candidates.truncate(k);
        self
    }

    /// Multiplies every probability by `factor`, keeping the order.
    pub fn scaled(&self, factor: f64) -> Result<Self, CandidateError> {
        let candidates = self
            .candidates
            .iter()
            .map(|c| Candidate::new(c.word.clone(), c.probability * factor))
            .collect::<Result<Vec<_>, _>>()?;
        CandidateList::new(self.mask_index, candidates)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProviderCause {
    Connect,
    Timeout,
    Status(u16),
    Schema,
}

impl fmt::Display for ProviderCause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProviderCause::Connect => f.write_str("connect"),
            ProviderCause::Timeout => f.write_str("timeout"),
            ProviderCause::Status(code) => write!(f, "status {code}"),
            ProviderCause::Schema => f.write_str("schema"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("provider error ({cause}): {message}")]
pub struct ProviderError {
    pub cause: ProviderCause,
    pub message: String,
}

impl ProviderError {
    pub fn new(cause: ProviderCause, message: impl Into<String>) -> Self {
        ProviderError {
            cause,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MlmError {
    #[error("position {0} is not masked")]
    MaskNotFound(usize),
    #[error("top_k must be at least 1")]
    InvalidK,
    #[error(transparent)]
    Provider(#[from] ProviderError),
}

/// Source of contextual candidates for masked positions.
///
/// Implementations must be safe to call from several threads at once.
pub trait CandidateProvider: Send + Sync {
    /// Returns at most `k` candidates for position `mask_index` of `masked`.
    /// Callers go through [`predict`], which checks the arguments first.
    fn candidates(
        &self,
        masked: &MaskedSentence,
        mask_index: usize,
        k: usize,
    ) -> Result<CandidateList, ProviderError>;
}

/// Asks `provider` for the top `k` candidates at mask position `mask_index`.
pub fn predict(
    provider: &dyn CandidateProvider,
    masked: &MaskedSentence,
    mask_index: usize,
    k: usize,
) -> Result<CandidateList, MlmError> {
    if k == 0 {
        return Err(MlmError::InvalidK);
    }
    if !masked.is_masked(mask_index) {
        return Err(MlmError::MaskNotFound(mask_index));
    }
    Ok(provider.candidates(masked, mask_index, k)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MlmConfig {
    pub top_k: usize,
    pub endpoint: Option<String>,
    pub timeout: Duration,
}

impl Default for MlmConfig {
    fn default() -> Self {
        MlmConfig {
            top_k: DEFAULT_TOP_K,
            endpoint: None,
            timeout: Duration::from_secs(10),
        }
    }
}

impl MlmConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(1..=MAX_TOP_K).contains(&self.top_k) {
            return Err(format!("top_k must be in 1..={MAX_TOP_K}, got {}", self.top_k));
        }
        if self.timeout.is_zero() {
            return Err("timeout must be positive".into());
        }
        Ok(())
    }
}
