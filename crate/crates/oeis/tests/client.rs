//! Remote-fetch behavior against a throwaway local HTTP server: the first
//! fetch hits the network and fills the cache, later fetches never leave
//! disk.

use std::io::{Read, Write};
use std::net::TcpListener;
use std::thread::{self, JoinHandle};

use momentgenus_oeis::{FetchSource, OeisClient, OeisError};
use num_bigint::BigInt;

/// Serves exactly one HTTP response, then shuts down. Returns the base
/// URL and a handle yielding the request's first line.
fn serve_once(status_line: &'static str, body: String) -> (String, JoinHandle<String>) {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let base = format!("http://{}", listener.local_addr().unwrap());
    let handle = thread::spawn(move || {
        let (mut stream, _) = listener.accept().unwrap();
        let mut buf = [0u8; 4096];
        let k = stream.read(&mut buf).unwrap();
        let request = String::from_utf8_lossy(&buf[..k]).to_string();
        let response = format!(
            "{status_line}\r\nContent-Length: {}\r\nContent-Type: text/plain\r\nConnection: close\r\n\r\n{body}",
            body.len()
        );
        stream.write_all(response.as_bytes()).unwrap();
        request.lines().next().unwrap_or_default().to_string()
    });
    (base, handle)
}

#[test]
fn remote_fetch_fills_the_cache_and_later_fetches_read_it() {
    let cache = tempfile::tempdir().unwrap();
    let body = "# test data\n0 0\n1 1\n2 5\n3 17\n".to_string();
    let (base, server) = serve_once("HTTP/1.1 200 OK", body);
    let client = OeisClient::from_env()
        .with_base_url(base)
        .with_cache_dir(cache.path());

    let first = client.fetch("A000337", FetchSource::Remote).unwrap();
    let request_line = server.join().unwrap();
    assert_eq!(request_line, "GET /A000337/b000337.txt HTTP/1.1");
    assert_eq!(first.terms[3], BigInt::from(17));
    assert!(cache.path().join("b000337.txt").exists());

    // The server is gone; only the cache can answer now.
    let second = client.fetch("A000337", FetchSource::Remote).unwrap();
    assert_eq!(second, first);
}

#[test]
fn http_errors_surface_as_fetch_failures() {
    let cache = tempfile::tempdir().unwrap();
    let (base, server) = serve_once("HTTP/1.1 404 Not Found", "missing\n".to_string());
    let client = OeisClient::from_env()
        .with_base_url(base)
        .with_cache_dir(cache.path());

    let err = client.fetch("A000337", FetchSource::Remote).unwrap_err();
    server.join().unwrap();
    assert!(matches!(err, OeisError::FetchFailed { .. }), "{err}");
    // Failed downloads must not leave a cache entry behind.
    assert!(!cache.path().join("b000337.txt").exists());
}

#[test]
fn unreachable_host_is_a_fetch_failure() {
    let cache = tempfile::tempdir().unwrap();
    // Port 1 on localhost: nothing listens there.
    let client = OeisClient::from_env()
        .with_base_url("http://127.0.0.1:1")
        .with_cache_dir(cache.path());
    let err = client.fetch("A000337", FetchSource::Remote).unwrap_err();
    assert!(matches!(err, OeisError::FetchFailed { .. }), "{err}");
}

#[test]
fn malformed_download_is_rejected_and_not_cached() {
    let cache = tempfile::tempdir().unwrap();
    let (base, server) = serve_once("HTTP/1.1 200 OK", "0 1\n5 9\n".to_string());
    let client = OeisClient::from_env()
        .with_base_url(base)
        .with_cache_dir(cache.path());

    let err = client.fetch("A000337", FetchSource::Remote).unwrap_err();
    server.join().unwrap();
    assert!(matches!(err, OeisError::Parse { line: 2, .. }), "{err}");
    assert!(!cache.path().join("b000337.txt").exists());
}

#[test]
fn preexisting_cache_short_circuits_the_network() {
    let cache = tempfile::tempdir().unwrap();
    std::fs::write(cache.path().join("b055580.txt"), "0 1\n1 7\n2 31\n").unwrap();
    // Unreachable base URL proves no connection is attempted.
    let client = OeisClient::from_env()
        .with_base_url("http://127.0.0.1:1")
        .with_cache_dir(cache.path());
    let seq = client.fetch("A055580", FetchSource::Remote).unwrap();
    assert_eq!(seq.terms, vec![BigInt::from(1), BigInt::from(7), BigInt::from(31)]);
}
