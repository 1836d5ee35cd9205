//! Levenshtein distance over WX strings and choice of the replacement word.

use serde::Serialize;
use thiserror::Error;

use crate::mlm::{Candidate, CandidateList};
use crate::script::{WxString, WxTable};

/// Unit-cost Levenshtein distance (insertion, deletion, replacement), one
/// unit per character.
///
/// Two-row dynamic programme over the shorter string, so memory is
/// `O(min(|a|, |b|))`.
pub fn edit_distance(a: impl AsRef<str>, b: impl AsRef<str>) -> usize {
    let a: Vec<char> = a.as_ref().chars().collect();
    let b: Vec<char> = b.as_ref().chars().collect();
    let (long, short) = if a.len() >= b.len() { (&a, &b) } else { (&b, &a) };
    if short.is_empty() {
        return long.len();
    }
    let mut prev: Vec<usize> = (0..=short.len()).collect();
    let mut curr = vec![0usize; short.len() + 1];
    for (i, lc) in long.iter().enumerate() {
        curr[0] = i + 1;
        for (j, sc) in short.iter().enumerate() {
            let replace = prev[j] + usize::from(lc != sc);
            let delete = prev[j + 1] + 1;
            let insert = curr[j] + 1;
            curr[j + 1] = replace.min(delete).min(insert);
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[short.len()]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedCandidate {
    pub candidate: Candidate,
    pub wx: String,
    pub med: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Correction {
    pub original: String,
    pub original_wx: String,
    pub chosen: Candidate,
    pub med: usize,
    /// Every candidate in provider order with its distance.
    pub ranked: Vec<RankedCandidate>,
    /// More than one candidate shared the minimum distance.
    pub tie_broken_by_probability: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no candidates for {0:?}")]
pub struct NoCandidates(pub String);

/// Picks the candidate closest to `oov` in WX edit distance using the
/// builtin WX table.
pub fn select_correction(oov: &str, candidates: &CandidateList) -> Result<Correction, NoCandidates> {
    select_correction_with(WxTable::builtin(), oov, candidates)
}

/// Picks the candidate with the smallest distance to `oov`. Equal distances
/// go to the higher probability, then to the earlier candidate.
pub fn select_correction_with(
    table: &WxTable,
    oov: &str,
    candidates: &CandidateList,
) -> Result<Correction, NoCandidates> {
    if candidates.is_empty() {
        return Err(NoCandidates(oov.to_string()));
    }
    let oov_wx: WxString = table.to_wx(oov);
    let ranked: Vec<RankedCandidate> = candidates
        .candidates()
        .iter()
        .map(|c| {
            let wx = table.to_wx(&c.word);
            RankedCandidate {
                med: edit_distance(&wx, &oov_wx),
                wx: wx.into_string(),
                candidate: c.clone(),
            }
        })
        .collect();

    let mut best = 0;
    for (i, r) in ranked.iter().enumerate().skip(1) {
        let b = &ranked[best];
        if r.med < b.med || (r.med == b.med && r.candidate.probability > b.candidate.probability) {
            best = i;
        }
    }
    let med = ranked[best].med;
    let at_minimum = ranked.iter().filter(|r| r.med == med).count();
    Ok(Correction {
        original: oov.to_string(),
        original_wx: oov_wx.into_string(),
        chosen: ranked[best].candidate.clone(),
        med,
        tie_broken_by_probability: at_minimum > 1,
        ranked,
    })
}
