//! Blocking HTTP client for chat-completions-style endpoints.
//!
//! One client drives one chat session at a time — requests are strictly
//! sequential, with a configurable minimum inter-request delay and
//! exponential backoff on transient failures (connection errors,
//! timeouts, 429 and 5xx). The API key is read from the environment
//! variable named in the config and never logged or stored in
//! transcripts. Whatever was exchanged before a failure survives as an
//! error-marked partial transcript.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use satlab_core::CnfInstance;

use crate::protocol::{build_batch_prompt, ProtocolError};
use crate::transcript::{Message, Transcript};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ModelConfig {
    /// Chat-completions URL, e.g. `https://api.openai.com/v1/chat/completions`.
    pub endpoint: String,
    pub model: String,
    /// Name of the environment variable holding the API key.
    pub api_key_env: String,
    pub timeout_secs: u64,
    pub max_retries: u32,
    pub initial_backoff_ms: u64,
    /// Lower bound on the spacing between consecutive requests.
    pub min_request_interval_ms: u64,
    /// Instances per prompt, by clause width.
    pub batch_size_per_k: BTreeMap<u32, usize>,
    /// Dotted JSON path to the reply text in the endpoint's response.
    pub reply_path: String,
    /// Optional dotted JSON path to surfaced reasoning text.
    pub reasoning_path: Option<String>,
    /// `true` opens a fresh chat per batch; `false` keeps one running
    /// history across batches.
    pub session_per_batch: bool,
}

impl Default for ModelConfig {
    fn default() -> Self {
        ModelConfig {
            endpoint: "https://api.openai.com/v1/chat/completions".to_string(),
            model: "o1-preview".to_string(),
            api_key_env: "OPENAI_API_KEY".to_string(),
            timeout_secs: 120,
            max_retries: 3,
            initial_backoff_ms: 500,
            min_request_interval_ms: 0,
            batch_size_per_k: BTreeMap::from([(2, 10), (3, 5), (4, 2)]),
            reply_path: "choices.0.message.content".to_string(),
            reasoning_path: None,
            session_per_batch: true,
        }
    }
}

impl ModelConfig {
    /// Batch size for clause width `k`; widths without an entry send one
    /// instance at a time.
    pub fn batch_size(&self, k: u32) -> usize {
        self.batch_size_per_k.get(&k).copied().unwrap_or(1)
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Ok(serde_json::from_str(&text)?)
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read model config {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("model config is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Error)]
pub enum QueryErrorKind {
    #[error("API key environment variable {0} is not set")]
    MissingApiKey(String),
    #[error("authentication rejected with HTTP {status}")]
    Auth { status: u16 },
    #[error("endpoint returned HTTP {status}")]
    BadStatus { status: u16 },
    #[error("transport failure after {attempts} attempt(s): {detail}")]
    Transport { attempts: u32, detail: String },
    #[error("no reply text at configured path {path:?}")]
    MalformedReply { path: String },
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
    #[error("failed to build HTTP client: {0}")]
    Build(String),
}

/// A failed exchange, carrying the partial transcript for persistence.
#[derive(Debug, Error)]
#[error("{kind}")]
pub struct QueryError {
    pub kind: QueryErrorKind,
    pub transcript: Transcript,
}

/// Sequential client for one model configuration. At most one request is
/// ever in flight.
pub struct ModelClient {
    config: ModelConfig,
    http: reqwest::blocking::Client,
    last_request: Option<Instant>,
    history: Vec<Message>,
}

impl ModelClient {
    pub fn new(config: ModelConfig) -> Result<Self, QueryError> {
        let http = reqwest::blocking::Client::builder()
            .timeout(Duration::from_secs(config.timeout_secs))
            .build()
            .map_err(|e| QueryError {
                kind: QueryErrorKind::Build(e.to_string()),
                transcript: Transcript::new_session(&config.model),
            })?;
        Ok(ModelClient {
            config,
            http,
            last_request: None,
            history: Vec::new(),
        })
    }

    pub fn config(&self) -> &ModelConfig {
        &self.config
    }

    /// Runs the protocol for one batch: priming exchange (on a fresh
    /// session), then the numbered batch prompt. Returns the full
    /// transcript of the session so far.
    pub fn query(&mut self, batch: &[CnfInstance]) -> Result<Transcript, QueryError> {
        let mut transcript = if self.config.session_per_batch || self.history.is_empty() {
            Transcript::new_session(&self.config.model)
        } else {
            let mut t = Transcript::new_session(&self.config.model);
            t.messages = self.history.clone();
            t
        };

        let result = self.run_protocol(batch, &mut transcript);
        match result {
            Ok(()) => {
                if !self.config.session_per_batch {
                    self.history = transcript.messages.clone();
                }
                Ok(transcript)
            }
            Err(kind) => {
                transcript.meta.error = Some(kind.to_string());
                Err(QueryError {
                    kind,
                    transcript,
                })
            }
        }
    }

    fn run_protocol(
        &mut self,
        batch: &[CnfInstance],
        transcript: &mut Transcript,
    ) -> Result<(), QueryErrorKind> {
        let k = batch.first().map(|i| i.k()).unwrap_or(0);
        let prompt = build_batch_prompt(batch, self.config.batch_size(k))?;
        let api_key = std::env::var(&self.config.api_key_env)
            .ok()
            .filter(|v| !v.is_empty())
            .ok_or_else(|| QueryErrorKind::MissingApiKey(self.config.api_key_env.clone()))?;

        // Fresh sessions send the priming message alone first and record
        // the model's acknowledgement.
        if transcript.messages.len() == 1 {
            let ack = self.post(&api_key, &transcript.messages)?;
            transcript.push(Message::assistant(ack.text));
        }
        transcript.push(Message::user(prompt));
        let reply = self.post(&api_key, &transcript.messages)?;
        transcript.push(Message::assistant(reply.text));
        if reply.reasoning.is_some() {
            transcript.reasoning_log = reply.reasoning;
        }
        Ok(())
    }

    fn post(&mut self, api_key: &str, messages: &[Message]) -> Result<Reply, QueryErrorKind> {
        let body = json!({ "model": self.config.model, "messages": messages });
        let mut attempt: u32 = 0;
        loop {
            self.respect_min_interval();
            let outcome = self
                .http
                .post(&self.config.endpoint)
                .bearer_auth(api_key)
                .json(&body)
                .send();
            self.last_request = Some(Instant::now());

            let failure = match outcome {
                Ok(resp) => {
                    let status = resp.status();
                    if status.is_success() {
                        return self.extract_reply(resp);
                    }
                    let code = status.as_u16();
                    if code == 401 || code == 403 {
                        return Err(QueryErrorKind::Auth { status: code });
                    }
                    if code != 429 && !status.is_server_error() {
                        return Err(QueryErrorKind::BadStatus { status: code });
                    }
                    QueryErrorKind::BadStatus { status: code }
                }
                Err(e) => QueryErrorKind::Transport {
                    attempts: attempt + 1,
                    detail: e.to_string(),
                },
            };

            if attempt >= self.config.max_retries {
                return Err(match failure {
                    QueryErrorKind::Transport { detail, .. } => QueryErrorKind::Transport {
                        attempts: attempt + 1,
                        detail,
                    },
                    other => other,
                });
            }
            let backoff = self.config.initial_backoff_ms.saturating_mul(1 << attempt);
            std::thread::sleep(Duration::from_millis(backoff));
            attempt += 1;
        }
    }

    fn extract_reply(&self, resp: reqwest::blocking::Response) -> Result<Reply, QueryErrorKind> {
        let value: Value = resp.json().map_err(|_| QueryErrorKind::MalformedReply {
            path: self.config.reply_path.clone(),
        })?;
        let text = json_path(&value, &self.config.reply_path)
            .and_then(Value::as_str)
            .ok_or_else(|| QueryErrorKind::MalformedReply {
                path: self.config.reply_path.clone(),
            })?
            .to_string();
        let reasoning = self
            .config
            .reasoning_path
            .as_deref()
            .and_then(|p| json_path(&value, p))
            .and_then(Value::as_str)
            .map(str::to_string);
        Ok(Reply { text, reasoning })
    }

    fn respect_min_interval(&self) {
        let min = Duration::from_millis(self.config.min_request_interval_ms);
        if min.is_zero() {
            return;
        }
        if let Some(last) = self.last_request {
            let elapsed = last.elapsed();
            if elapsed < min {
                std::thread::sleep(min - elapsed);
            }
        }
    }
}

struct Reply {
    text: String,
    reasoning: Option<String>,
}

/// One-shot form of the protocol: fresh client, fresh session.
pub fn query_model(batch: &[CnfInstance], config: &ModelConfig) -> Result<Transcript, QueryError> {
    ModelClient::new(config.clone())?.query(batch)
}

/// Walks a dotted path (`choices.0.message.content`) through JSON objects
/// and arrays.
fn json_path<'a>(value: &'a Value, path: &str) -> Option<&'a Value> {
    let mut current = value;
    for segment in path.split('.') {
        current = match current {
            Value::Object(map) => map.get(segment)?,
            Value::Array(items) => items.get(segment.parse::<usize>().ok()?)?,
            _ => return None,
        };
    }
    Some(current)
}
