//! Wire protocol and transports for external simplification backends and
//! perplexity scorers.
//!
//! Both services speak one JSON object per request, `{"id", "text"}`, and
//! answer with an object carrying the same id. Replies may arrive in any
//! order. Two transports are supported: newline-delimited JSON over the
//! stdin/stdout of a child process, and HTTP POST to a fixed endpoint.
//! Built-in backends run in-process behind the same trait.

use std::collections::{HashMap, VecDeque};
use std::io::{BufRead, BufReader, Read, Write};
use std::process::{Child, ChildStdin, ChildStdout, Command, Stdio};
use std::sync::mpsc;
use std::sync::{Arc, Mutex};
use std::thread::JoinHandle;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SPLIT_SENTINEL: &str = "<::::>";
pub const SIMPLIFY_ENDPOINT: &str = "/simplify";
pub const PERPLEXITY_ENDPOINT: &str = "/perplexity";

#[derive(Debug, Error)]
pub enum TransportError {
    #[error("failed to start backend command `{command}`: {source}")]
    Spawn {
        command: String,
        source: std::io::Error,
    },
    #[error("{transport}: connection lost ({detail})")]
    Disconnected { transport: String, detail: String },
    #[error("{transport}: protocol error: {detail}")]
    Protocol { transport: String, detail: String },
    #[error("invalid transport spec `{0}`")]
    Spec(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireRequest {
    pub id: String,
    pub text: String,
}

/// Replies are matched to requests by id.
pub trait Reply: DeserializeOwned {
    fn id(&self) -> &str;
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SimplifiedField {
    List(Vec<String>),
    Joined(String),
}

#[derive(Serialize, Deserialize)]
struct RawSimplifyReply {
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    simplified: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimplifyReply {
    Simplified { id: String, sentences: Vec<String> },
    Failed { id: String, error: String },
}

/// Normalizes backend output to a list of trimmed, non-empty sentences.
/// A single string is split on the `<::::>` sentinel.
pub fn normalize_sentences(sentences: impl IntoIterator<Item = String>) -> Vec<String> {
    sentences
        .into_iter()
        .flat_map(|s| {
            s.split(SPLIT_SENTINEL)
                .map(|part| part.split_whitespace().collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
        })
        .filter(|s| !s.is_empty())
        .collect()
}

impl<'de> Deserialize<'de> for SimplifyReply {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawSimplifyReply::deserialize(d)?;
        if let Some(error) = raw.error {
            return Ok(SimplifyReply::Failed { id: raw.id, error });
        }
        let value = raw
            .simplified
            .ok_or_else(|| D::Error::custom("reply has neither `simplified` nor `error`"))?;
        let field: SimplifiedField = serde_json::from_value(value).map_err(D::Error::custom)?;
        let sentences = match field {
            SimplifiedField::List(list) => normalize_sentences(list),
            SimplifiedField::Joined(joined) => normalize_sentences([joined]),
        };
        Ok(SimplifyReply::Simplified { id: raw.id, sentences })
    }
}

impl Serialize for SimplifyReply {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let raw = match self {
            SimplifyReply::Simplified { id, sentences } => RawSimplifyReply {
                id: id.clone(),
                simplified: Some(serde_json::json!(sentences)),
                error: None,
            },
            SimplifyReply::Failed { id, error } => RawSimplifyReply {
                id: id.clone(),
                simplified: None,
                error: Some(error.clone()),
            },
        };
        raw.serialize(s)
    }
}

impl Reply for SimplifyReply {
    fn id(&self) -> &str {
        match self {
            SimplifyReply::Simplified { id, .. } | SimplifyReply::Failed { id, .. } => id,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreReply {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perplexity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ScoreReply {
    /// The perplexity if the reply carries a positive finite value.
    pub fn valid_perplexity(&self) -> Result<f64, String> {
        if let Some(error) = &self.error {
            return Err(error.clone());
        }
        match self.perplexity {
            Some(p) if p.is_finite() && p > 0.0 => Ok(p),
            Some(p) => Err(format!("invalid perplexity {p}")),
            None => Err("reply has neither `perplexity` nor `error`".to_string()),
        }
    }
}

impl Reply for ScoreReply {
    fn id(&self) -> &str {
        &self.id
    }
}

/// A bidirectional message channel to a backend. `send` must not block on
/// the backend producing a reply.
pub trait Transport: Send {
    fn describe(&self) -> String;
    fn send(&mut self, message: &str) -> Result<(), TransportError>;
    fn recv(&mut self) -> Result<String, TransportError>;
}

impl<T: Transport + ?Sized> Transport for Box<T> {
    fn describe(&self) -> String {
        (**self).describe()
    }
    fn send(&mut self, message: &str) -> Result<(), TransportError> {
        (**self).send(message)
    }
    fn recv(&mut self) -> Result<String, TransportError> {
        (**self).recv()
    }
}

/// Sends every request and hands each reply to `on_reply` with the index of
/// its request, keeping at most `in_flight_limit` requests unanswered.
///
/// Returns the first transport failure; requests without a reply at that
/// point are left to the caller.
pub fn exchange<R, F>(
    transport: &mut dyn Transport,
    requests: &[WireRequest],
    in_flight_limit: usize,
    mut on_reply: F,
) -> Result<(), TransportError>
where
    R: Reply,
    F: FnMut(usize, R),
{
    let limit = in_flight_limit.max(1);
    let mut outstanding: HashMap<&str, usize> = HashMap::new();
    let mut next = 0;
    loop {
        while next < requests.len() && outstanding.len() < limit {
            let request = &requests[next];
            let line = serde_json::to_string(request).expect("request serializes");
            transport.send(&line)?;
            outstanding.insert(request.id.as_str(), next);
            next += 1;
        }
        if outstanding.is_empty() {
            return Ok(());
        }
        let line = transport.recv()?;
        let reply: R = serde_json::from_str(&line).map_err(|e| TransportError::Protocol {
            transport: transport.describe(),
            detail: format!("unparseable reply {line:?}: {e}"),
        })?;
        let Some(index) = outstanding.remove(reply.id()) else {
            return Err(TransportError::Protocol {
                transport: transport.describe(),
                detail: format!("reply for unknown or already answered id `{}`", reply.id()),
            });
        };
        on_reply(index, reply);
    }
}

/// Runs a request handler in-process.
pub struct InProcess<F> {
    name: String,
    handler: F,
    queue: VecDeque<String>,
}

impl<F> InProcess<F>
where
    F: FnMut(&str) -> String + Send,
{
    pub fn new(name: impl Into<String>, handler: F) -> Self {
        InProcess {
            name: name.into(),
            handler,
            queue: VecDeque::new(),
        }
    }
}

impl<F> Transport for InProcess<F>
where
    F: FnMut(&str) -> String + Send,
{
    fn describe(&self) -> String {
        self.name.clone()
    }

    fn send(&mut self, message: &str) -> Result<(), TransportError> {
        self.queue.push_back(message.to_string());
        Ok(())
    }

    fn recv(&mut self) -> Result<String, TransportError> {
        let message = self.queue.pop_front().ok_or_else(|| TransportError::Protocol {
            transport: self.name.clone(),
            detail: "recv with no request outstanding".into(),
        })?;
        Ok((self.handler)(&message))
    }
}

/// Newline-delimited JSON over a child process's stdin/stdout.
pub struct Subprocess {
    command: String,
    child: Child,
    stdin: Option<ChildStdin>,
    stdout: BufReader<ChildStdout>,
}

impl Subprocess {
    /// Runs `command` through `sh -c`.
    pub fn spawn(command: &str) -> Result<Self, TransportError> {
        let mut child = Command::new("sh")
            .arg("-c")
            .arg(command)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()
            .map_err(|source| TransportError::Spawn {
                command: command.to_string(),
                source,
            })?;
        let stdin = child.stdin.take();
        let stdout = BufReader::new(child.stdout.take().expect("stdout is piped"));
        Ok(Subprocess {
            command: command.to_string(),
            child,
            stdin,
            stdout,
        })
    }

    fn lost(&self, detail: impl Into<String>) -> TransportError {
        TransportError::Disconnected {
            transport: self.describe(),
            detail: detail.into(),
        }
    }
}

impl Transport for Subprocess {
    fn describe(&self) -> String {
        format!("subprocess `{}`", self.command)
    }

    fn send(&mut self, message: &str) -> Result<(), TransportError> {
        let Some(stdin) = self.stdin.as_mut() else {
            return Err(self.lost("stdin closed"));
        };
        let written = stdin
            .write_all(message.as_bytes())
            .and_then(|_| stdin.write_all(b"\n"))
            .and_then(|_| stdin.flush());
        written.map_err(|e| self.lost(e.to_string()))
    }

    fn recv(&mut self) -> Result<String, TransportError> {
        loop {
            let mut line = String::new();
            let n = self
                .stdout
                .read_line(&mut line)
                .map_err(|e| self.lost(e.to_string()))?;
            if n == 0 {
                return Err(self.lost("backend closed its output"));
            }
            if !line.trim().is_empty() {
                return Ok(line.trim_end().to_string());
            }
        }
    }
}

impl Drop for Subprocess {
    fn drop(&mut self) {
        self.stdin.take();
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

type HttpResult = Result<String, String>;

/// HTTP POST transport; `concurrency` worker threads issue requests in
/// parallel so that several can be outstanding at once.
pub struct Http {
    url: String,
    jobs: Option<mpsc::Sender<String>>,
    results: mpsc::Receiver<HttpResult>,
    workers: Vec<JoinHandle<()>>,
}

impl Http {
    pub fn new(base_url: &str, endpoint: &str, concurrency: usize) -> Self {
        let url = format!("{}{}", base_url.trim_end_matches('/'), endpoint);
        let (job_tx, job_rx) = mpsc::channel::<String>();
        let (result_tx, results) = mpsc::channel::<HttpResult>();
        let job_rx = Arc::new(Mutex::new(job_rx));
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .http_status_as_error(false)
            .build()
            .into();
        let workers = (0..concurrency.max(1))
            .map(|_| {
                let job_rx = Arc::clone(&job_rx);
                let result_tx = result_tx.clone();
                let agent = agent.clone();
                let url = url.clone();
                std::thread::spawn(move || loop {
                    let job = match job_rx.lock() {
                        Ok(rx) => rx.recv(),
                        Err(_) => return,
                    };
                    let Ok(body) = job else { return };
                    if result_tx.send(post(&agent, &url, body)).is_err() {
                        return;
                    }
                })
            })
            .collect();
        Http {
            url,
            jobs: Some(job_tx),
            results,
            workers,
        }
    }
}

fn post(agent: &ureq::Agent, url: &str, body: String) -> HttpResult {
    let mut response = agent
        .post(url)
        .header("content-type", "application/json")
        .send(body.as_bytes())
        .map_err(|e| e.to_string())?;
    let status = response.status();
    let mut text = String::new();
    response
        .body_mut()
        .as_reader()
        .read_to_string(&mut text)
        .map_err(|e| e.to_string())?;
    if status.is_success() {
        return Ok(text);
    }
    // Error replies that still carry an id are per-request failures.
    match serde_json::from_str::<serde_json::Value>(&text) {
        Ok(v) if v.get("id").is_some() => Ok(text),
        _ => Err(format!("HTTP {status}: {}", text.trim())),
    }
}

impl Transport for Http {
    fn describe(&self) -> String {
        format!("http {}", self.url)
    }

    fn send(&mut self, message: &str) -> Result<(), TransportError> {
        let sent = self
            .jobs
            .as_ref()
            .map(|tx| tx.send(message.to_string()).is_ok())
            .unwrap_or(false);
        if sent {
            Ok(())
        } else {
            Err(TransportError::Disconnected {
                transport: self.describe(),
                detail: "worker pool stopped".into(),
            })
        }
    }

    fn recv(&mut self) -> Result<String, TransportError> {
        match self.results.recv() {
            Ok(Ok(body)) => Ok(body),
            Ok(Err(detail)) => Err(TransportError::Disconnected {
                transport: self.describe(),
                detail,
            }),
            Err(_) => Err(TransportError::Disconnected {
                transport: self.describe(),
                detail: "worker pool stopped".into(),
            }),
        }
    }
}

impl Drop for Http {
    fn drop(&mut self) {
        self.jobs.take();
        for worker in self.workers.drain(..) {
            let _ = worker.join();
        }
    }
}
