use std::time::Duration;

use super::wire::{ErrorBody, PredictRequest, PredictResponse, PREDICT_PATH};
use super::{CandidateList, CandidateProvider, MlmConfig, ProviderCause, ProviderError};
use crate::detect::MaskedSentence;

/// HTTP client for a prediction server. One request per call; the
/// underlying agent pools connections and may be shared across threads.
#[derive(Debug, Clone)]
pub struct RemoteProvider {
    agent: ureq::Agent,
    url: String,
}

impl RemoteProvider {
    pub fn new(config: &MlmConfig) -> Result<Self, ProviderError> {
        let endpoint = config
            .endpoint
            .as_deref()
            .ok_or_else(|| ProviderError::new(ProviderCause::Connect, "no endpoint configured"))?;
        Ok(Self::with_endpoint(endpoint, config.timeout))
    }

    pub fn with_endpoint(endpoint: &str, timeout: Duration) -> Self {
        let agent = ureq::Agent::config_builder()
            .timeout_global(Some(timeout))
            .http_status_as_error(false)
            .build()
            .new_agent();
        RemoteProvider {
            agent,
            url: format!("{}{PREDICT_PATH}", endpoint.trim_end_matches('/')),
        }
    }

    pub fn url(&self) -> &str {
        &self.url
    }
}

fn transport_error(err: ureq::Error) -> ProviderError {
    let cause = match err {
        ureq::Error::Timeout(_) => ProviderCause::Timeout,
        ureq::Error::Io(ref io) if io.kind() == std::io::ErrorKind::TimedOut => {
            ProviderCause::Timeout
        }
        _ => ProviderCause::Connect,
    };
    ProviderError::new(cause, err.to_string())
}

impl CandidateProvider for RemoteProvider {
    fn candidates(
        &self,
        masked: &MaskedSentence,
        mask_index: usize,
        k: usize,
    ) -> Result<CandidateList, ProviderError> {
        let request = PredictRequest {
            tokens: masked.tokens.clone(),
            mask_index,
            top_k: k,
        };
        let payload = serde_json::to_string(&request).expect("request serializes");
        let mut response = self
            .agent
            .post(&self.url)
            .header("Content-Type", "application/json")
            .send(payload.as_str())
            .map_err(transport_error)?;
        let status = response.status().as_u16();
        let body = response
            .body_mut()
            .read_to_string()
            .map_err(transport_error)?;
        if status != 200 {
            let detail = serde_json::from_str::<ErrorBody>(&body)
                .map(|e| e.error)
                .unwrap_or(body);
            return Err(ProviderError::new(ProviderCause::Status(status), detail));
        }
        let parsed: PredictResponse = serde_json::from_str(&body)
            .map_err(|e| ProviderError::new(ProviderCause::Schema, e.to_string()))?;
        parsed
            .validate(mask_index, k)
            .map_err(|e| ProviderError::new(ProviderCause::Schema, e.to_string()))
    }
}
