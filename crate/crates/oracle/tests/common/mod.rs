//! Minimal scripted HTTP/1.1 server for exercising the blocking client.

use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpListener;
use std::sync::mpsc;
use std::thread::JoinHandle;
use std::time::Instant;

/// One scripted response: a status code and a JSON body.
#[derive(Clone)]
pub struct Scripted {
    pub status: u16,
    pub body: String,
}

pub fn chat_reply(content: &str) -> Scripted {
    Scripted {
        status: 200,
        body: serde_json::json!({
            "choices": [{ "message": { "content": content } }]
        })
        .to_string(),
    }
}

pub fn error_reply(status: u16) -> Scripted {
    Scripted {
        status,
        body: r#"{"error":"scripted failure"}"#.to_string(),
    }
}

pub struct CapturedRequest {
    pub body: String,
    pub at: Instant,
}

/// Serves the scripted responses in order, one connection each, then
/// stops. Captured request bodies and arrival times come back through
/// the receiver.
pub struct MockServer {
    pub url: String,
    handle: Option<JoinHandle<()>>,
    rx: mpsc::Receiver<CapturedRequest>,
}

impl MockServer {
    pub fn start(script: Vec<Scripted>) -> Self {
        let listener = TcpListener::bind("127.0.0.1:0").expect("bind mock server");
        let url = format!("http://{}/v1/chat/completions", listener.local_addr().unwrap());
        let (tx, rx) = mpsc::channel();
        let handle = std::thread::spawn(move || {
            for scripted in script {
                let (mut stream, _) = match listener.accept() {
                    Ok(pair) => pair,
                    Err(_) => return,
                };
                let at = Instant::now();
                let body = read_request(&mut stream);
                let _ = tx.send(CapturedRequest { body, at });
                let response = format!(
                    "HTTP/1.1 {} {}\r\ncontent-type: application/json\r\ncontent-length: {}\r\nconnection: close\r\n\r\n{}",
                    scripted.status,
                    reason(scripted.status),
                    scripted.body.len(),
                    scripted.body
                );
                let _ = stream.write_all(response.as_bytes());
                let _ = stream.flush();
            }
        });
        MockServer {
            url,
            handle: Some(handle),
            rx,
        }
    }

    pub fn requests(mut self) -> Vec<CapturedRequest> {
        if let Some(handle) = self.handle.take() {
            let _ = handle.join();
        }
        self.rx.try_iter().collect()
    }
}

fn read_request(stream: &mut std::net::TcpStream) -> String {
    let mut reader = BufReader::new(stream);
    let mut content_length = 0usize;
    loop {
        let mut line = String::new();
        if reader.read_line(&mut line).is_err() {
            return String::new();
        }
        let trimmed = line.trim_end();
        if trimmed.is_empty() {
            break;
        }
        if let Some(value) = trimmed
            .to_ascii_lowercase()
            .strip_prefix("content-length:")
            .map(str::trim)
            .and_then(|v| v.parse::<usize>().ok())
        {
            content_length = value;
        }
    }
    let mut body = vec![0u8; content_length];
    if reader.read_exact(&mut body).is_err() {
        return String::new();
    }
    String::from_utf8_lossy(&body).to_string()
}

fn reason(status: u16) -> &'static str {
    match status {
        200 => "OK",
        401 => "Unauthorized",
        429 => "Too Many Requests",
        500 => "Internal Server Error",
        _ => "Status",
    }
}
