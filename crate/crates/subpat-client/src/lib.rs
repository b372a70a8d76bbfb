//! Async client for the subpat service: one method per route.

use serde::de::DeserializeOwned;
use serde::Serialize;
use subpat_api::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClientError {
    /// The service answered with an error body.
    #[error("{}", .0.error)]
    Api(ApiError),
    #[error("cannot reach the service: {0}")]
    Transport(String),
    #[error("unexpected response ({status}): {body}")]
    Decode { status: u16, body: String },
}

impl ClientError {
    /// The error class, treating transport and decoding failures as internal.
    pub fn class(&self) -> ErrorClass {
        match self {
            ClientError::Api(e) => e.kind,
            _ => ErrorClass::Internal,
        }
    }
}

pub type Result<T> = std::result::Result<T, ClientError>;

#[derive(Clone, Debug)]
pub struct Client {
    base: String,
    http: reqwest::Client,
}

impl Client {
    /// `base` is the service root, e.g. `http://127.0.0.1:8787`.
    pub fn new(base: impl Into<String>) -> Self {
        Client { base: base.into().trim_end_matches('/').to_string(), http: reqwest::Client::new() }
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    async fn decode<R: DeserializeOwned>(resp: reqwest::Response) -> Result<R> {
        let status = resp.status();
        let bytes = resp.bytes().await.map_err(|e| ClientError::Transport(e.to_string()))?;
        if status.is_success() {
            return serde_json::from_slice(&bytes).map_err(|e| ClientError::Decode {
                status: status.as_u16(),
                body: format!("{e}: {}", String::from_utf8_lossy(&bytes)),
            });
        }
        match serde_json::from_slice::<ApiError>(&bytes) {
            Ok(e) => Err(ClientError::Api(e)),
            Err(_) => Err(ClientError::Decode { status: status.as_u16(), body: String::from_utf8_lossy(&bytes).into() }),
        }
    }

    async fn post<Q: Serialize, R: DeserializeOwned>(&self, route: &str, req: &Q) -> Result<R> {
        let resp = self
            .http
            .post(format!("{}{route}", self.base))
            .json(req)
            .send()
            .await
            .map_err(|e| ClientError::Transport(e.to_string()))?;
        Self::decode(resp).await
    }

    async fn get<R: DeserializeOwned>(&self, route: &str) -> Result<R> {
        let resp = self
            .http
            .get(format!("{}{route}", self.base))
            .send()
            .await
            .map_err(|e| ClientError::Transport(e.to_string()))?;
        Self::decode(resp).await
    }

    pub async fn health(&self) -> Result<Health> {
        self.get(routes::HEALTH).await
    }

    pub async fn patterns(&self) -> Result<Vec<String>> {
        self.get(routes::PATTERNS).await
    }

    pub async fn validate(&self, req: &ValidateRequest) -> Result<ValidateResponse> {
        self.post(routes::VALIDATE, req).await
    }

    pub async fn classify(&self, req: &ClassifyRequest) -> Result<ClassifyResponse> {
        self.post(routes::CLASSIFY, req).await
    }

    pub async fn check_pattern(&self, req: &CheckPatternRequest) -> Result<CheckPatternResponse> {
        self.post(routes::CHECK_PATTERN, req).await
    }

    pub async fn pattern_gen(&self, req: &PatternGenRequest) -> Result<PatternGenResponse> {
        self.post(routes::PATTERN_GEN, req).await
    }

    pub async fn monoid(&self, req: &MonoidRequest) -> Result<MonoidResponse> {
        self.post(routes::MONOID, req).await
    }

    pub async fn corpus_gen(&self, req: &CorpusRequest) -> Result<CorpusResponse> {
        self.post(routes::CORPUS_GEN, req).await
    }

    pub async fn crosscheck(&self, req: &CrosscheckRequest) -> Result<CrosscheckResponse> {
        self.post(routes::CROSSCHECK, req).await
    }

    pub async fn hardness_gen(&self, req: &HardnessRequest) -> Result<HardnessResponse> {
        self.post(routes::HARDNESS_GEN, req).await
    }
}
