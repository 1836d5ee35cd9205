//! End-to-end correction of a document.
//!
//! Each sentence goes through tokenization, entity recognition, detection,
//! masking, one provider query per mask, and candidate selection. Sentences
//! are independent, so they may be processed in parallel; results are
//! assembled in document order. Only the bytes of corrected words change in
//! the output.

use std::path::PathBuf;
use std::sync::Arc;

use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::correct::{select_correction_with, Correction};
use crate::detect::{detect_errors, mask, DetectedError};
use crate::lexicon::Lexicon;
use crate::mlm::{predict, CandidateProvider, MlmConfig, MlmError, ProviderError};
use crate::ner::{find_entities, Gazetteers};
use crate::script::{split_sentences, Sentence, WxTable};
use crate::wordlist::WordlistError;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("lexicon: {0}")]
    Lexicon(#[source] WordlistError),
    #[error("gazetteers: {0}")]
    Gazetteers(#[source] WordlistError),
    #[error(transparent)]
    WxTable(#[from] crate::script::WxTableError),
    #[error("invalid model settings: {0}")]
    Mlm(String),
}

/// Where resources come from. `None` paths select the bundled samples.
#[derive(Debug, Clone, Default)]
pub struct PipelineConfig {
    pub lexicon_path: Option<PathBuf>,
    pub gazetteer_dir: Option<PathBuf>,
    pub wx_table_path: Option<PathBuf>,
    pub mlm: MlmConfig,
    pub emit_audit: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum SkipReason {
    NoCandidates,
    Provider(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AppliedCorrection {
    /// Ordinal of the sentence in the document.
    pub sentence: usize,
    pub error: DetectedError,
    pub correction: Correction,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedError {
    pub sentence: usize,
    pub error: DetectedError,
    pub reason: SkipReason,
    /// Set when the provider itself failed, as opposed to answering with
    /// nothing.
    #[serde(skip)]
    pub provider_error: Option<ProviderError>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrectedDocument {
    pub text: String,
    pub corrections: Vec<AppliedCorrection>,
    pub skipped: Vec<SkippedError>,
    /// Hex SHA-256 of the input text.
    pub source_digest: String,
}

impl CorrectedDocument {
    pub fn detected(&self) -> usize {
        self.corrections.len() + self.skipped.len()
    }

    pub fn provider_failures(&self) -> usize {
        self.skipped.iter().filter(|s| s.provider_error.is_some()).count()
    }

    /// The audit record for this document.
    pub fn audit(&self) -> serde_json::Value {
        let corrections: Vec<_> = self
            .corrections
            .iter()
            .map(|a| {
                let c = &a.correction;
                json!({
                    "sentence": a.sentence,
                    "index": a.error.word_index,
                    "original": c.original,
                    "chosen": c.chosen.word,
                    "prob": c.chosen.probability,
                    "med": c.med,
                    "candidates": c.ranked.iter().map(|r| json!({
                        "token": r.candidate.word,
                        "prob": r.candidate.probability,
                        "wx": r.wx,
                        "med": r.med,
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        let skipped: Vec<_> = self
            .skipped
            .iter()
            .map(|s| {
                let reason = match &s.reason {
                    SkipReason::NoCandidates => "NoCandidates".to_string(),
                    SkipReason::Provider(_) => "ProviderError".to_string(),
                };
                let mut v = json!({
                    "sentence": s.sentence,
                    "index": s.error.word_index,
                    "original": s.error.surface,
                    "reason": reason,
                });
                if let SkipReason::Provider(detail) = &s.reason {
                    v["detail"] = json!(detail);
                }
                v
            })
            .collect();
        json!({
            "source_digest": self.source_digest,
            "corrections": corrections,
            "skipped": skipped,
        })
    }
}

/// Loaded resources plus the candidate-list size.
#[derive(Debug, Clone)]
pub struct Pipeline {
    lexicon: Arc<Lexicon>,
    gazetteers: Arc<Gazetteers>,
    wx: Arc<WxTable>,
    top_k: usize,
}

struct SentenceResult {
    corrections: Vec<AppliedCorrection>,
    skipped: Vec<SkippedError>,
}

impl Pipeline {
    pub fn new(lexicon: Lexicon, gazetteers: Gazetteers) -> Self {
        Pipeline {
            lexicon: Arc::new(lexicon),
            gazetteers: Arc::new(gazetteers),
            wx: Arc::new(WxTable::builtin().clone()),
            top_k: crate::mlm::DEFAULT_TOP_K,
        }
    }

    /// Bundled sample lexicon and gazetteers.
    pub fn sample() -> Self {
        Self::new(Lexicon::sample(), Gazetteers::sample())
    }

    pub fn from_config(cfg: &PipelineConfig) -> Result<Self, ConfigError> {
        cfg.mlm.validate().map_err(ConfigError::Mlm)?;
        let lexicon = match &cfg.lexicon_path {
            Some(p) => Lexicon::load(p).map_err(ConfigError::Lexicon)?,
            None => Lexicon::sample(),
        };
        let gazetteers = match &cfg.gazetteer_dir {
            Some(d) => Gazetteers::load(d).map_err(ConfigError::Gazetteers)?,
            None => Gazetteers::sample(),
        };
        let mut pipeline = Pipeline::new(lexicon, gazetteers).with_top_k(cfg.mlm.top_k);
        if let Some(path) = &cfg.wx_table_path {
            pipeline.wx = Arc::new(WxTable::load(path)?);
        }
        Ok(pipeline)
    }

    pub fn with_top_k(mut self, k: usize) -> Self {
        self.top_k = k.max(1);
        self
    }

    pub fn top_k(&self) -> usize {
        self.top_k
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn gazetteers(&self) -> &Gazetteers {
        &self.gazetteers
    }

    pub fn wx_table(&self) -> &WxTable {
        &self.wx
    }

    /// Detected errors of every sentence, tagged with the sentence ordinal.
    pub fn detect(&self, text: &str) -> Vec<(usize, DetectedError)> {
        split_sentences(text)
            .iter()
            .enumerate()
            .flat_map(|(n, s)| self.detect_sentence(s).into_iter().map(move |e| (n, e)))
            .collect()
    }

    fn detect_sentence(&self, sentence: &Sentence) -> Vec<DetectedError> {
        let entities = find_entities(sentence, &self.gazetteers);
        detect_errors(sentence, &self.lexicon, &entities)
    }

    fn correct_sentence(
        &self,
        ordinal: usize,
        sentence: &Sentence,
        provider: &dyn CandidateProvider,
    ) -> SentenceResult {
        let errors = self.detect_sentence(sentence);
        let mut result = SentenceResult {
            corrections: Vec::new(),
            skipped: Vec::new(),
        };
        if errors.is_empty() {
            return result;
        }
        let masked = mask(sentence, &errors).expect("detected errors are words of the sentence");
        for error in errors {
            let skip = |reason, provider_error| SkippedError {
                sentence: ordinal,
                error: error.clone(),
                reason,
                provider_error,
            };
            match predict(provider, &masked, error.word_index, self.top_k) {
                Ok(list) => match select_correction_with(&self.wx, &error.surface, &list) {
                    Ok(correction) => result.corrections.push(AppliedCorrection {
                        sentence: ordinal,
                        error,
                        correction,
                    }),
                    Err(_) => result.skipped.push(skip(SkipReason::NoCandidates, None)),
                },
                Err(MlmError::Provider(e)) => {
                    result.skipped.push(skip(SkipReason::Provider(e.to_string()), Some(e)))
                }
                Err(e) => unreachable!("mask index and k are valid here: {e}"),
            }
        }
        result
    }

    /// Corrects `text`. Provider failures skip the affected word and never
    /// abort the document.
    pub fn correct(&self, text: &str, provider: &dyn CandidateProvider) -> CorrectedDocument {
        let sentences = split_sentences(text);
        let results = self.run_sentences(&sentences, provider);

        let mut corrections = Vec::new();
        let mut skipped = Vec::new();
        for r in results {
            corrections.extend(r.corrections);
            skipped.extend(r.skipped);
        }

        let mut out = String::with_capacity(text.len());
        let mut cursor = 0;
        for a in &corrections {
            let span = &a.error.byte_span;
            out.push_str(&text[cursor..span.start]);
            out.push_str(&a.correction.chosen.word);
            cursor = span.end;
        }
        out.push_str(&text[cursor..]);

        CorrectedDocument {
            text: out,
            corrections,
            skipped,
            source_digest: hex::encode(Sha256::digest(text.as_bytes())),
        }
    }

    #[cfg(feature = "parallel")]
    fn run_sentences(
        &self,
        sentences: &[Sentence],
        provider: &dyn CandidateProvider,
    ) -> Vec<SentenceResult> {
        use rayon::prelude::*;
        sentences
            .par_iter()
            .enumerate()
            .map(|(n, s)| self.correct_sentence(n, s, provider))
            .collect()
    }

    #[cfg(not(feature = "parallel"))]
    fn run_sentences(
        &self,
        sentences: &[Sentence],
        provider: &dyn CandidateProvider,
    ) -> Vec<SentenceResult> {
        sentences
            .iter()
            .enumerate()
            .map(|(n, s)| self.correct_sentence(n, s, provider))
            .collect()
    }
}

/// Loads the resources named by `cfg` and corrects `text`.
pub fn correct_document(
    text: &str,
    cfg: &PipelineConfig,
    provider: &dyn CandidateProvider,
) -> Result<CorrectedDocument, ConfigError> {
    Ok(Pipeline::from_config(cfg)?.correct(text, provider))
}
