//! Scripted line-protocol backend for exercising transports: answers in
//! reverse arrival order, fails chosen requests, or dies mid-run.

use std::fs::OpenOptions;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::sync::mpsc::{self, RecvTimeoutError};
use std::time::Duration;

use clap::{Parser, ValueEnum};
use serde_json::json;
use splitqa_core::backend::{WireRequest, SPLIT_SENTINEL};
use splitqa_core::lm::UnigramModel;
use splitqa_core::simplify::rule_split;

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Simplify,
    Score,
}

#[derive(Parser)]
#[command(about = "Mock simplification or scoring backend speaking JSON lines on stdin/stdout")]
struct Opts {
    #[arg(long, value_enum, default_value = "simplify")]
    mode: Mode,
    /// Collect requests for this long, then answer the batch in reverse order.
    #[arg(long, default_value_t = 5)]
    reorder_ms: u64,
    /// Answer with an error for any text containing this substring.
    #[arg(long)]
    fail_matching: Vec<String>,
    /// Exit abruptly after reading this many requests, leaving any unanswered.
    /// Falls back to the MOCK_DIE_AFTER environment variable.
    #[arg(long)]
    die_after: Option<usize>,
    /// Append the id of every reply to this file, in reply order.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Reply with one string joined by the sentence sentinel.
    #[arg(long)]
    sentinel: bool,
}

fn answer(opts: &Opts, request: &WireRequest) -> serde_json::Value {
    if opts.fail_matching.iter().any(|s| request.text.contains(s.as_str())) {
        return json!({"id": request.id, "error": "scripted failure"});
    }
    match opts.mode {
        Mode::Simplify => {
            let parts = rule_split(&request.text);
            if opts.sentinel {
                json!({"id": request.id, "simplified": parts.join(SPLIT_SENTINEL)})
            } else {
                json!({"id": request.id, "simplified": parts})
            }
        }
        Mode::Score => match UnigramModel::bundled().perplexity(&request.text) {
            Some(p) => json!({"id": request.id, "perplexity": p}),
            None => json!({"id": request.id, "error": "empty text"}),
        },
    }
}

fn flush(opts: &Opts, batch: &mut Vec<WireRequest>, out: &mut impl Write) -> io::Result<()> {
    let mut trace = match &opts.trace {
        Some(path) if !batch.is_empty() => Some(OpenOptions::new().create(true).append(true).open(path)?),
        _ => None,
    };
    for request in batch.drain(..).rev() {
        writeln!(out, "{}", answer(opts, &request))?;
        if let Some(t) = trace.as_mut() {
            writeln!(t, "{}", request.id)?;
        }
    }
    out.flush()
}

fn main() -> io::Result<()> {
    let mut opts = Opts::parse();
    if opts.die_after.is_none() {
        opts.die_after = std::env::var("MOCK_DIE_AFTER").ok().and_then(|v| v.parse().ok());
    }
    let (tx, rx) = mpsc::channel::<String>();
    std::thread::spawn(move || {
        for line in io::stdin().lock().lines() {
            let Ok(line) = line else { break };
            if tx.send(line).is_err() {
                break;
            }
        }
    });
    let mut out = io::stdout().lock();
    let mut batch = Vec::new();
    let mut seen = 0usize;
    let window = Duration::from_millis(opts.reorder_ms);
    loop {
        match rx.recv_timeout(window) {
            Ok(line) => {
                if line.trim().is_empty() {
                    continue;
                }
                seen += 1;
                if opts.die_after.is_some_and(|n| seen > n) {
                    std::process::exit(3);
                }
                match serde_json::from_str::<WireRequest>(&line) {
                    Ok(request) => batch.push(request),
                    Err(e) => writeln!(out, "{}", json!({"id": "", "error": e.to_string()}))?,
                }
            }
            Err(RecvTimeoutError::Timeout) => flush(&opts, &mut batch, &mut out)?,
            Err(RecvTimeoutError::Disconnected) => {
                flush(&opts, &mut batch, &mut out)?;
                return Ok(());
            }
        }
    }
}
