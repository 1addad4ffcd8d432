//! Stored exchanges: `{ messages, reasoning_log, meta }` JSON documents.
//!
//! A transcript is the unit of replay — the whole pipeline runs from
//! stored transcripts without network access. The first outbound message
//! of every transcript is the verbatim priming text; loading enforces
//! this along with the JSON schema.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::protocol::PRIMING_MESSAGE;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Message {
    pub role: String,
    pub content: String,
}

impl Message {
    pub fn user(content: impl Into<String>) -> Self {
        Message {
            role: "user".to_string(),
            content: content.into(),
        }
    }

    pub fn assistant(content: impl Into<String>) -> Self {
        Message {
            role: "assistant".to_string(),
            content: content.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptMeta {
    pub model: String,
    pub timestamp: String,
    /// Set when the exchange aborted; the transcript then holds whatever
    /// was captured before the failure.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub messages: Vec<Message>,
    pub reasoning_log: Option<String>,
    pub meta: TranscriptMeta,
}

#[derive(Debug, Error)]
pub enum TranscriptError {
    #[error("transcript does not match the schema: {0}")]
    Schema(#[from] serde_json::Error),
    #[error("transcript has no messages")]
    NoMessages,
    #[error("transcript does not open with the priming message")]
    MissingPriming,
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Transcript {
    /// Opens a fresh session: one user message carrying the priming text.
    pub fn new_session(model: impl Into<String>) -> Self {
        Transcript {
            messages: vec![Message::user(PRIMING_MESSAGE)],
            reasoning_log: None,
            meta: TranscriptMeta {
                model: model.into(),
                timestamp: chrono::Utc::now().to_rfc3339(),
                error: None,
            },
        }
    }

    pub fn push(&mut self, message: Message) {
        self.messages.push(message);
    }

    /// Content of the last assistant message — the reply to evaluate.
    pub fn reply_text(&self) -> Option<&str> {
        self.messages
            .iter()
            .rev()
            .find(|m| m.role == "assistant")
            .map(|m| m.content.as_str())
    }

    pub fn from_json(text: &str) -> Result<Self, TranscriptError> {
        let transcript: Transcript = serde_json::from_str(text)?;
        transcript.validate()?;
        Ok(transcript)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("transcripts always serialize")
    }

    fn validate(&self) -> Result<(), TranscriptError> {
        let first = self.messages.first().ok_or(TranscriptError::NoMessages)?;
        if first.role != "user" || first.content != PRIMING_MESSAGE {
            return Err(TranscriptError::MissingPriming);
        }
        Ok(())
    }
}

impl fmt::Display for Transcript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

/// Loads a stored transcript so evaluation can run offline.
pub fn replay_transcript(path: &Path) -> Result<Transcript, TranscriptError> {
    let text = std::fs::read_to_string(path).map_err(|source| TranscriptError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Transcript::from_json(&text)
}
