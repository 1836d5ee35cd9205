//! The HTTP client against a throwaway in-process server.

use std::io::{BufRead, BufReader, Read, Write};
use std::net::{TcpListener, TcpStream};
use std::sync::mpsc;
use std::thread;
use std::time::Duration;

use devspell::mlm::wire::PredictRequest;
use devspell::mlm::{predict, MlmConfig, MlmError, ProviderCause, RemoteProvider};
use devspell::{MaskedSentence, Pipeline, MASK_TOKEN};

/// Serves `responses` in order, one per connection, and reports each
/// request body.
fn serve(responses: Vec<(u16, String)>) -> (String, mpsc::Receiver<(String, String)>) {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = format!("http://{}", listener.local_addr().unwrap());
    let (tx, rx) = mpsc::channel();
    thread::spawn(move || {
        for (status, body) in responses {
            let (stream, _) = listener.accept().unwrap();
            let request = handle(stream, status, &body);
            let _ = tx.send(request);
        }
    });
    (addr, rx)
}

fn handle(stream: TcpStream, status: u16, body: &str) -> (String, String) {
    let mut reader = BufReader::new(stream);
    let mut request_line = String::new();
    reader.read_line(&mut request_line).unwrap();
    let mut length = 0;
    loop {
        let mut line = String::new();
        reader.read_line(&mut line).unwrap();
        let line = line.trim_end();
        if line.is_empty() {
            break;
        }
        if let Some((name, value)) = line.split_once(':') {
            if name.eq_ignore_ascii_case("content-length") {
                length = value.trim().parse().unwrap();
            }
        }
    }
    let mut buf = vec![0u8; length];
    reader.read_exact(&mut buf).unwrap();
    let mut stream = reader.into_inner();
    write!(
        stream,
        "HTTP/1.1 {status} X\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    )
    .unwrap();
    stream.flush().unwrap();
    (request_line.trim_end().to_string(), String::from_utf8(buf).unwrap())
}

fn masked() -> MaskedSentence {
    MaskedSentence {
        tokens: ["राम", "ने", "खाना", MASK_TOKEN].map(String::from).to_vec(),
        mask_indices: vec![3],
    }
}

fn ten_candidates() -> String {
    let words = ["खाया", "बनाया", "खिलाया", "लाया", "पकाया", "गया", "आया", "पाया", "दिया", "किया"];
    let items: Vec<String> = words
        .iter()
        .enumerate()
        .map(|(i, w)| format!(r#"{{"token":"{w}","prob":{}}}"#, 0.5 / (i + 1) as f64))
        .collect();
    format!(r#"{{"candidates":[{}]}}"#, items.join(","))
}

fn provider(addr: &str) -> RemoteProvider {
    RemoteProvider::new(&MlmConfig {
        endpoint: Some(addr.to_string()),
        timeout: Duration::from_secs(5),
        ..MlmConfig::default()
    })
    .unwrap()
}

#[test]
fn well_formed_response() {
    let (addr, rx) = serve(vec![(200, ten_candidates())]);
    let list = predict(&provider(&addr), &masked(), 3, 10).unwrap();
    assert_eq!(list.len(), 10);
    assert_eq!(list.candidates()[0].word, "खाया");

    let (line, body) = rx.recv().unwrap();
    assert_eq!(line, "POST /v1/predict HTTP/1.1");
    let req: PredictRequest = serde_json::from_str(&body).unwrap();
    assert_eq!(req.tokens, masked().tokens);
    assert_eq!(req.mask_index, 3);
    assert_eq!(req.top_k, 10);
    assert_eq!(
        body,
        r#"{"tokens":["राम","ने","खाना","[MASK]"],"mask_index":3,"top_k":10}"#
    );
}

#[test]
fn zero_probability_is_schema_error() {
    let (addr, _rx) = serve(vec![(200, r#"{"candidates":[{"token":"खाया","prob":0}]}"#.into())]);
    match predict(&provider(&addr), &masked(), 3, 10) {
        Err(MlmError::Provider(e)) => assert_eq!(e.cause, ProviderCause::Schema),
        other => panic!("{other:?}"),
    }
}

#[test]
fn malformed_json_is_schema_error() {
    let (addr, _rx) = serve(vec![(200, "{\"candidates\": 3}".into())]);
    match predict(&provider(&addr), &masked(), 3, 10) {
        Err(MlmError::Provider(e)) => assert_eq!(e.cause, ProviderCause::Schema),
        other => panic!("{other:?}"),
    }
}

#[test]
fn too_many_candidates_rejected() {
    let (addr, _rx) = serve(vec![(200, ten_candidates())]);
    match predict(&provider(&addr), &masked(), 3, 5) {
        Err(MlmError::Provider(e)) => assert_eq!(e.cause, ProviderCause::Schema),
        other => panic!("{other:?}"),
    }
}

#[test]
fn error_status_carries_message() {
    let (addr, _rx) = serve(vec![(400, r#"{"error":"no [MASK] at mask_index"}"#.into())]);
    match predict(&provider(&addr), &masked(), 3, 10) {
        Err(MlmError::Provider(e)) => {
            assert_eq!(e.cause, ProviderCause::Status(400));
            assert_eq!(e.message, "no [MASK] at mask_index");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn unreachable_endpoint_is_connect_error() {
    // Bind and drop to get a port nobody listens on.
    let port = TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
    let p = provider(&format!("http://127.0.0.1:{port}"));
    match predict(&p, &masked(), 3, 10) {
        Err(MlmError::Provider(e)) => assert_eq!(e.cause, ProviderCause::Connect),
        other => panic!("{other:?}"),
    }
}

#[test]
fn slow_server_times_out() {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = format!("http://{}", listener.local_addr().unwrap());
    thread::spawn(move || {
        let (_stream, _) = listener.accept().unwrap();
        thread::sleep(Duration::from_secs(3));
    });
    let p = RemoteProvider::new(&MlmConfig {
        endpoint: Some(addr),
        timeout: Duration::from_millis(200),
        ..MlmConfig::default()
    })
    .unwrap();
    match predict(&p, &masked(), 3, 10) {
        Err(MlmError::Provider(e)) => assert_eq!(e.cause, ProviderCause::Timeout),
        other => panic!("{other:?}"),
    }
}

#[test]
fn pipeline_over_http() {
    let body = r#"{"candidates":[{"token":"खाया","prob":0.4191},{"token":"बनाया","prob":0.2359},{"token":"खिलाया","prob":0.1257},{"token":"लाया","prob":0.0124},{"token":"पकाया","prob":0.0113}]}"#;
    let (addr, _rx) = serve(vec![(200, body.into())]);
    let doc = Pipeline::sample().correct("राम ने खाना रया", &provider(&addr));
    assert_eq!(doc.text, "राम ने खाना खाया");
}

#[test]
fn missing_endpoint() {
    assert!(RemoteProvider::new(&MlmConfig::default()).is_err());
}
