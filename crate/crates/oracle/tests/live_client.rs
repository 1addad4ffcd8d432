//! Exercises the blocking client against a scripted local HTTP server.

mod common;

use std::time::Duration;

use common::{chat_reply, error_reply, MockServer};
use satlab_core::{parse_dimacs, CnfInstance};
use satlab_oracle::{
    parse_response, ModelClient, ModelConfig, OracleOutcome, QueryErrorKind, Transcript,
    PRIMING_MESSAGE,
};

fn test_config(url: &str, key_env: &str) -> ModelConfig {
    ModelConfig {
        endpoint: url.to_string(),
        model: "mock-model".to_string(),
        api_key_env: key_env.to_string(),
        timeout_secs: 5,
        max_retries: 2,
        initial_backoff_ms: 10,
        min_request_interval_ms: 0,
        ..ModelConfig::default()
    }
}

fn released_k2_batch() -> Vec<CnfInstance> {
    let fixture = Transcript::from_json(satlab_oracle::fixtures::BATCH_K2_TRANSCRIPT).unwrap();
    // Message 3 of the fixture is the numbered batch prompt; re-parse its
    // DIMACS blocks to get the instances.
    fixture.messages[2]
        .content
        .split("\n\n")
        .map(|block| {
            let (_, dimacs) = block.split_once(") ").unwrap();
            parse_dimacs(dimacs).unwrap()
        })
        .collect()
}

#[test]
fn full_protocol_round_trip_parses_ten_assignments() {
    let fixture = Transcript::from_json(satlab_oracle::fixtures::BATCH_K2_TRANSCRIPT).unwrap();
    let reply_text = fixture.reply_text().unwrap().to_string();
    let server = MockServer::start(vec![
        chat_reply("Yes, I can help with that."),
        chat_reply(&reply_text),
    ]);
    std::env::set_var("SATLAB_TEST_KEY_A", "sk-test");

    let mut client = ModelClient::new(test_config(&server.url, "SATLAB_TEST_KEY_A")).unwrap();
    let batch = released_k2_batch();
    let transcript = client.query(&batch).unwrap();

    assert_eq!(transcript.messages.len(), 4);
    assert_eq!(transcript.messages[0].content, PRIMING_MESSAGE);
    assert_eq!(transcript.messages[2].content, fixture.messages[2].content);
    let parsed = parse_response(transcript.reply_text().unwrap(), 10, 10);
    assert_eq!(parsed.outcomes.len(), 10);
    assert!(parsed
        .outcomes
        .iter()
        .all(|o| matches!(o, OracleOutcome::Assignment(_))));

    let requests = server.requests();
    assert_eq!(requests.len(), 2);
    // Priming goes out alone first; the API key never appears in a body.
    assert!(requests[0].body.contains("satisfiability problem"));
    assert!(!requests[0].body.contains("sk-test"));
    assert!(requests[1].body.contains("c seed=67612117"));
}

#[test]
fn http_500_exhausts_retries_and_keeps_partial_transcript() {
    let server = MockServer::start(vec![error_reply(500), error_reply(500), error_reply(500)]);
    std::env::set_var("SATLAB_TEST_KEY_B", "sk-test");

    let mut client = ModelClient::new(test_config(&server.url, "SATLAB_TEST_KEY_B")).unwrap();
    let batch = released_k2_batch();
    let err = client.query(&batch).unwrap_err();

    assert!(matches!(err.kind, QueryErrorKind::BadStatus { status: 500 }));
    assert_eq!(err.transcript.messages.len(), 1, "only the priming went out");
    assert!(err.transcript.meta.error.as_deref().unwrap().contains("500"));
    // max_retries = 2 → exactly three attempts hit the wire.
    assert_eq!(server.requests().len(), 3);
}

#[test]
fn auth_failure_is_not_retried() {
    let server = MockServer::start(vec![error_reply(401)]);
    std::env::set_var("SATLAB_TEST_KEY_C", "sk-test");

    let mut client = ModelClient::new(test_config(&server.url, "SATLAB_TEST_KEY_C")).unwrap();
    let err = client.query(&released_k2_batch()).unwrap_err();
    assert!(matches!(err.kind, QueryErrorKind::Auth { status: 401 }));
    assert_eq!(server.requests().len(), 1);
}

#[test]
fn rate_limited_endpoint_respects_min_request_interval() {
    let server = MockServer::start(vec![
        chat_reply("Yes."),
        chat_reply("0000000000"),
    ]);
    std::env::set_var("SATLAB_TEST_KEY_D", "sk-test");

    let mut config = test_config(&server.url, "SATLAB_TEST_KEY_D");
    config.min_request_interval_ms = 300;
    let mut client = ModelClient::new(config).unwrap();
    let batch = vec![parse_dimacs("p cnf 10 1\n5 -6 0\n").unwrap()];
    client.query(&batch).unwrap();

    let requests = server.requests();
    assert_eq!(requests.len(), 2);
    let gap = requests[1].at.duration_since(requests[0].at);
    assert!(
        gap >= Duration::from_millis(290),
        "requests only {gap:?} apart"
    );
}

#[test]
fn transient_429_recovers_after_backoff() {
    let server = MockServer::start(vec![
        error_reply(429),
        chat_reply("Yes."),
        chat_reply("0000000000"),
    ]);
    std::env::set_var("SATLAB_TEST_KEY_E", "sk-test");

    let mut client = ModelClient::new(test_config(&server.url, "SATLAB_TEST_KEY_E")).unwrap();
    let batch = vec![parse_dimacs("p cnf 10 1\n5 -6 0\n").unwrap()];
    let transcript = client.query(&batch).unwrap();
    assert_eq!(transcript.reply_text(), Some("0000000000"));
    assert_eq!(server.requests().len(), 3);
}

#[test]
fn malformed_reply_path_reported() {
    let server = MockServer::start(vec![common::Scripted {
        status: 200,
        body: r#"{"unexpected":"shape"}"#.to_string(),
    }]);
    std::env::set_var("SATLAB_TEST_KEY_F", "sk-test");

    let mut client = ModelClient::new(test_config(&server.url, "SATLAB_TEST_KEY_F")).unwrap();
    let err = client.query(&released_k2_batch()).unwrap_err();
    assert!(matches!(err.kind, QueryErrorKind::MalformedReply { .. }));
}

#[test]
fn reused_session_accumulates_history() {
    let server = MockServer::start(vec![
        chat_reply("Yes."),
        chat_reply("11"),
        chat_reply("00"),
    ]);
    std::env::set_var("SATLAB_TEST_KEY_G", "sk-test");

    let mut config = test_config(&server.url, "SATLAB_TEST_KEY_G");
    config.session_per_batch = false;
    let mut client = ModelClient::new(config).unwrap();
    let first = vec![parse_dimacs("p cnf 2 1\n1 2 0\n").unwrap()];
    let second = vec![parse_dimacs("p cnf 2 1\n-1 -2 0\n").unwrap()];

    let t1 = client.query(&first).unwrap();
    assert_eq!(t1.messages.len(), 4);
    let t2 = client.query(&second).unwrap();
    // Second batch extends the same chat: no second priming exchange.
    assert_eq!(t2.messages.len(), 6);
    assert_eq!(server.requests().len(), 3);
}
