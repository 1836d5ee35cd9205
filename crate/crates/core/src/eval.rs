//! Accuracy of the corrector on a gold corpus, as a function of the
//! candidate-list size k.
//!
//! A gold corpus is a TSV file of `noisy<TAB>gold` sentence pairs. Words
//! are aligned by position, so both sides must have the same number of
//! non-whitespace tokens; pairs that do not are skipped with a warning.
//!
//! Accuracy is counted per detected error: an error is correct when the
//! word finally standing at its position (the chosen candidate, or the
//! original word if nothing was chosen) equals the aligned gold word after
//! NFC normalization. A false detection left unchanged is therefore
//! correct, and one changed to something else is wrong.

use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::mlm::CandidateProvider;
use crate::pipeline::{ConfigError, Pipeline, PipelineConfig};
use crate::script::{split_sentences, tokenize, TokenKind};
use crate::wordlist::{self, nfc, WordlistError};

/// Candidate-list sizes of the reference accuracy table.
pub const REFERENCE_KS: [usize; 5] = [1, 3, 5, 10, 20];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldPair {
    pub noisy: String,
    pub gold: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldCorpus {
    pub pairs: Vec<GoldPair>,
    /// Lines dropped because their word counts differ.
    pub warnings: Vec<usize>,
}

#[derive(Debug, Error)]
pub enum GoldError {
    #[error(transparent)]
    Read(#[from] WordlistError),
    #[error("line {line}: expected 2 tab-separated fields, found {found}")]
    Format { line: usize, found: usize },
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("candidate-list sizes must be a non-empty list of positive integers")]
    InvalidKs,
}

fn words(text: &str) -> Vec<String> {
    tokenize(text)
        .into_iter()
        .filter(|t| t.kind != TokenKind::Space)
        .map(|t| t.surface)
        .collect()
}

/// Parses a gold corpus from TSV text.
pub fn parse_gold(text: &str) -> Result<GoldCorpus, GoldError> {
    let mut corpus = GoldCorpus {
        pairs: Vec::new(),
        warnings: Vec::new(),
    };
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 2 {
            return Err(GoldError::Format {
                line: line_no,
                found: fields.len(),
            });
        }
        let (noisy, gold) = (fields[0].trim(), fields[1].trim());
        if noisy.is_empty() || gold.is_empty() || words(noisy).len() != words(gold).len() {
            corpus.warnings.push(line_no);
            continue;
        }
        corpus.pairs.push(GoldPair {
            noisy: noisy.to_string(),
            gold: gold.to_string(),
        });
    }
    Ok(corpus)
}

pub fn load_gold(path: impl AsRef<Path>) -> Result<GoldCorpus, GoldError> {
    let text = wordlist::read_file(path.as_ref())?;
    parse_gold(&text)
}

/// Counts for one candidate-list size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KRow {
    pub k: usize,
    pub detected: usize,
    pub corrected: usize,
    pub wrong: usize,
    /// Errors left unchanged for lack of candidates whose original word is
    /// not the gold word.
    pub skipped: usize,
    /// `corrected / detected`; `None` when nothing was detected.
    pub accuracy: Option<f64>,
    pub sentences: usize,
    /// Sentences whose corrected text equals the gold sentence.
    pub sentences_exact: usize,
    pub sentence_accuracy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub ks: Vec<usize>,
    pub rows: Vec<KRow>,
    pub pairs: usize,
    pub warnings: usize,
}

impl EvalReport {
    pub fn accuracy(&self, k: usize) -> Option<f64> {
        self.rows.iter().find(|r| r.k == k).and_then(|r| r.accuracy)
    }

    /// `{ks, accuracy, detected, corrected, skipped, warnings, ...}`; the
    /// count fields are per-k arrays aligned with `ks`.
    pub fn to_json(&self) -> serde_json::Value {
        let col = |f: &dyn Fn(&KRow) -> serde_json::Value| {
            self.rows.iter().map(f).collect::<Vec<_>>()
        };
        serde_json::json!({
            "ks": self.ks,
            "accuracy": col(&|r| serde_json::json!(r.accuracy)),
            "sentence_accuracy": col(&|r| serde_json::json!(r.sentence_accuracy)),
            "detected": col(&|r| serde_json::json!(r.detected)),
            "corrected": col(&|r| serde_json::json!(r.corrected)),
            "wrong": col(&|r| serde_json::json!(r.wrong)),
            "skipped": col(&|r| serde_json::json!(r.skipped)),
            "pairs": self.pairs,
            "warnings": self.warnings,
        })
    }

    /// Plain-text table, one row per k. Undefined accuracies print as zero.
    pub fn to_table(&self) -> String {
        let pct = |a: Option<f64>| format!("{:.2}", a.unwrap_or(0.0) * 100.0);
        let mut out = String::new();
        out.push_str("S.No.\tCandidates (k)\tAccuracy %\tSentence accuracy %\tDetected\tCorrected\tWrong\tSkipped\n");
        for (i, r) in self.rows.iter().enumerate() {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                i + 1,
                r.k,
                pct(r.accuracy),
                pct(r.sentence_accuracy),
                r.detected,
                r.corrected,
                r.wrong,
                r.skipped
            ));
        }
        out.push_str(&format!("pairs: {}\twarnings: {}\n", self.pairs, self.warnings));
        out
    }
}

fn ratio(num: usize, den: usize) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

/// Runs `pipeline` over every pair once per k.
pub fn evaluate_with(
    pairs: &[GoldPair],
    pipeline: &Pipeline,
    provider: &dyn CandidateProvider,
    ks: &[usize],
) -> Result<Vec<KRow>, EvalError> {
    if ks.is_empty() || ks.contains(&0) {
        return Err(EvalError::InvalidKs);
    }
    let mut rows = Vec::with_capacity(ks.len());
    for &k in ks {
        let pipeline = pipeline.clone().with_top_k(k);
        let mut row = KRow {
            k,
            detected: 0,
            corrected: 0,
            wrong: 0,
            skipped: 0,
            accuracy: None,
            sentences: pairs.len(),
            sentences_exact: 0,
            sentence_accuracy: None,
        };
        for pair in pairs {
            let doc = pipeline.correct(&pair.noisy, provider);
            let gold_words = words(&pair.gold);
            // Word offsets of each sentence within the whole pair.
            let offsets: Vec<usize> = split_sentences(&pair.noisy)
                .iter()
                .scan(0, |acc, s| {
                    let start = *acc;
                    *acc += s.non_space_tokens().count();
                    Some(start)
                })
                .collect();
            let gold_at = |sentence: usize, index: usize| {
                gold_words.get(offsets[sentence] + index).map(|w| nfc(w))
            };
            for a in &doc.corrections {
                row.detected += 1;
                if gold_at(a.sentence, a.error.word_index) == Some(nfc(&a.correction.chosen.word)) {
                    row.corrected += 1;
                } else {
                    row.wrong += 1;
                }
            }
            for s in &doc.skipped {
                row.detected += 1;
                if gold_at(s.sentence, s.error.word_index) == Some(nfc(&s.error.surface)) {
                    row.corrected += 1;
                } else {
                    row.skipped += 1;
                }
            }
            if nfc(&doc.text) == nfc(&pair.gold) {
                row.sentences_exact += 1;
            }
        }
        row.accuracy = ratio(row.corrected, row.detected);
        row.sentence_accuracy = ratio(row.sentences_exact, row.sentences);
        rows.push(row);
    }
    Ok(rows)
}

/// Loads the resources named by `cfg` and evaluates every k in `ks`.
pub fn evaluate(
    corpus: &GoldCorpus,
    cfg: &PipelineConfig,
    provider: &dyn CandidateProvider,
    ks: &[usize],
) -> Result<EvalReport, EvalError> {
    let pipeline = Pipeline::from_config(cfg)?;
    let rows = evaluate_with(&corpus.pairs, &pipeline, provider, ks)?;
    Ok(EvalReport {
        ks: ks.to_vec(),
        rows,
        pairs: corpus.pairs.len(),
        warnings: corpus.warnings.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mlm::MockProvider;

    #[test]
    fn parse_valid_lines() {
        let corpus = parse_gold("# comment\nराम ने खाना रया\tराम ने खाना खाया\nक ख\tक ख\n").unwrap();
        assert_eq!(corpus.pairs.len(), 2);
        assert!(corpus.warnings.is_empty());
    }

    #[test]
    fn three_fields_is_format_error() {
        let err = parse_gold("क\tख\n\nक\tख\tग\n").unwrap_err();
        assert!(matches!(err, GoldError::Format { line: 3, found: 3 }));
    }

    #[test]
    fn misaligned_pair_is_skipped() {
        let corpus = parse_gold("क ख\tक\nक\tख\n").unwrap();
        assert_eq!(corpus.pairs.len(), 1);
        assert_eq!(corpus.warnings, [1]);
    }

    #[test]
    fn worked_example_is_correct_at_every_k() {
        let corpus = parse_gold("राम ने खाना रया\tराम ने खाना खाया\n").unwrap();
        let report = evaluate(
            &corpus,
            &PipelineConfig::default(),
            &MockProvider::worked_example(),
            &REFERENCE_KS,
        )
        .unwrap();
        assert_eq!(report.ks, REFERENCE_KS);
        for row in &report.rows {
            assert_eq!(row.detected, 1);
            assert_eq!(row.accuracy, Some(1.0));
            assert_eq!(row.sentence_accuracy, Some(1.0));
        }
    }

    #[test]
    fn half_of_four_errors() {
        // Two sentences, two errors each; the mock fixes one per sentence.
        let json = r#"{"entries":[
            {"tokens":["[MASK]","ने","[MASK]"],"mask_index":0,"candidates":[{"token":"राम","prob":0.9}]},
            {"tokens":["[MASK]","ने","[MASK]"],"mask_index":2,"candidates":[{"token":"खाया","prob":0.9}]}]}"#;
        let mock = MockProvider::from_json(json).unwrap();
        let corpus = parse_gold("रमा ने रया\tराम ने खाया\nकमा ने सया\tकाम ने किया\n").unwrap();
        let report = evaluate(&corpus, &PipelineConfig::default(), &mock, &[3]).unwrap();
        let row = &report.rows[0];
        assert_eq!(row.detected, 4);
        assert_eq!(row.corrected, 2);
        assert_eq!(row.wrong, 2);
        assert_eq!(row.accuracy, Some(0.5));
        assert_eq!(row.sentence_accuracy, Some(0.5));
    }

    #[test]
    fn false_detection_left_alone_is_correct() {
        let corpus = parse_gold("कखग ने\tकखग ने\n").unwrap();
        let report =
            evaluate(&corpus, &PipelineConfig::default(), &MockProvider::new(), &[1]).unwrap();
        assert_eq!(report.rows[0].detected, 1);
        assert_eq!(report.rows[0].corrected, 1);
        assert_eq!(report.rows[0].skipped, 0);
    }

    #[test]
    fn empty_corpus() {
        let corpus = parse_gold("").unwrap();
        let report =
            evaluate(&corpus, &PipelineConfig::default(), &MockProvider::new(), &REFERENCE_KS)
                .unwrap();
        assert!(report.rows.iter().all(|r| r.detected == 0 && r.accuracy.is_none()));
        assert_eq!(report.to_json()["accuracy"][0], serde_json::Value::Null);
    }

    #[test]
    fn bad_ks() {
        let corpus = parse_gold("").unwrap();
        let cfg = PipelineConfig::default();
        assert!(matches!(
            evaluate(&corpus, &cfg, &MockProvider::new(), &[]),
            Err(EvalError::InvalidKs)
        ));
        assert!(matches!(
            evaluate(&corpus, &cfg, &MockProvider::new(), &[0]),
            Err(EvalError::InvalidKs)
        ));
    }

    #[test]
    fn table_rows_follow_ks() {
        let corpus = parse_gold("").unwrap();
        let report =
            evaluate(&corpus, &PipelineConfig::default(), &MockProvider::new(), &REFERENCE_KS)
                .unwrap();
        let table = report.to_table();
        let ks: Vec<&str> = table
            .lines()
            .skip(1)
            .take(5)
            .map(|l| l.split('\t').nth(1).unwrap())
            .collect();
        assert_eq!(ks, ["1", "3", "5", "10", "20"]);
    }
}
