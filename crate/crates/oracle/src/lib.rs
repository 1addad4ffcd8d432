//! Harness for driving a chat-style model endpoint through a fixed
//! K-SAT evaluation protocol.
//!
//! A session opens with one verbatim priming message, then sends a
//! numbered batch of DIMACS instances and expects one binary assignment
//! string per instance. Replies are parsed totally — refusals and noise
//! degrade into explicit outcomes instead of errors — and reasoning logs
//! are scanned for signs that the model delegated to an external SAT
//! solver. Whole exchanges persist as JSON transcripts so evaluation can
//! replay offline.

pub mod client;
pub mod detect;
pub mod parse;
pub mod protocol;
pub mod transcript;

pub use client::{ModelClient, ModelConfig, QueryError, QueryErrorKind};
pub use detect::{detect_solver_call, SOLVER_KEYWORDS};
pub use parse::{parse_response, parse_response_with, OracleOutcome, OracleResponse, RefusalPatterns};
pub use protocol::{build_batch_prompt, ProtocolError, PRIMING_MESSAGE};
pub use transcript::{replay_transcript, Message, Transcript, TranscriptError, TranscriptMeta};

/// Checked-in replay fixtures for the protocol.
pub mod fixtures {
    /// Golden copy of the priming message.
    pub const PRIMING: &str = include_str!("../fixtures/priming.txt");
    /// A complete K=2, α=0.1 exchange: 10 instances in, 10 assignments out.
    pub const BATCH_K2_TRANSCRIPT: &str = include_str!("../fixtures/batch_k2_alpha0.1.json");
    /// A K=4, α=8.0 exchange whose reasoning log invokes a SAT solver.
    pub const SOLVER_CALL_TRANSCRIPT: &str = include_str!("../fixtures/solver_call_k4_alpha8.json");
}
