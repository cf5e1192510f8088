//! Acceptance suite: one PASS/FAIL line per primary criterion, each with a
//! pinned runtime limit. Runs without the test harness so the lines are
//! always printed; exits nonzero if any criterion fails.
//!
//! Set SPLITQA_SQUAD_DEV to a SQuAD v1.1 dev file to run the identity
//! round trip on its first 20 articles instead of the bundled fixture.

mod common;
#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Stdio;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use splitqa_core::corpus::{validate_offsets, Corpus};
use splitqa_core::metrics::{
    fkgl, krippendorff_alpha, sari, sentence_bleu, squad_em, squad_f1, RatingMatrix, RecordScores, DEFAULT_MAX_N,
};
use splitqa_core::pipeline::{load_input, read_jsonl};
use splitqa_core::simplify::check_numeric_preservation;
use splitqa_core::threshold::{apply_gates, score_records, threshold_scored, Gate, GateConfig};
use splitqa_core::transfer::{RejectReason, Status, TransferRecord};

use common::*;
use support::gates::{all_ok, load_threshold_fixture, reason_is_sound, sizes_explained_by_ties};
use support::oracles::{brute_alpha, brute_sari, random_rating_rows, random_sari_instance};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {{
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($msg)+));
        }
    }};
}

const TOLERANCE_BLEU_WORKED: f64 = 1e-2;
const TOLERANCE_FKGL: f64 = 1e-6;
const TOLERANCE_ORACLE: f64 = 1e-9;
const ORACLE_INSTANCES: usize = 100;
const IDENTITY_ARTICLES: usize = 20;
const SQUAD_DEV_ENV: &str = "SPLITQA_SQUAD_DEV";

struct Criterion {
    name: &'static str,
    limit: Duration,
    check: fn() -> Outcome,
}

const CRITERIA: [Criterion; 7] = [
    Criterion { name: "metric golden suite", limit: Duration::from_secs(1), check: metric_golden_suite },
    Criterion { name: "oracle equivalence", limit: Duration::from_secs(30), check: oracle_equivalence },
    Criterion { name: "thresholding soundness", limit: Duration::from_secs(5), check: thresholding_soundness },
    Criterion { name: "identity round trip", limit: Duration::from_secs(60), check: identity_round_trip },
    Criterion { name: "rule-split end to end", limit: Duration::from_secs(60), check: rule_split_end_to_end },
    Criterion { name: "backend protocol conformance", limit: Duration::from_secs(120), check: backend_protocol },
    Criterion { name: "determinism", limit: Duration::from_secs(120), check: determinism },
];

fn main() {
    let mut failed = 0;
    for (i, c) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let outcome = (c.check)();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > c.limit => Err(format!("{detail}; over the time limit")),
            other => other,
        };
        let timing = format!("{:.3} s, limit {} s", took.as_secs_f64(), c.limit.as_secs());
        match outcome {
            Ok(detail) => println!("PASS  {}. {}  ({timing})  {detail}", i + 1, c.name),
            Err(reason) => {
                failed += 1;
                println!("FAIL  {}. {}  ({timing})  {reason}", i + 1, c.name);
            }
        }
    }
    println!("{}/{} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn toks(s: &str) -> Vec<String> {
    s.split_whitespace().map(String::from).collect()
}

fn metric_golden_suite() -> Outcome {
    let x = toks("the cat sat on the mat");
    ensure!(sentence_bleu(&x, &x, 4) == 100.0, "identity BLEU is not 100");
    let worked = sentence_bleu(&toks("the cat sat"), &toks("the cat sat down"), 4);
    let hand = 100.0 * (1.0f64 - 4.0 / 3.0).exp();
    ensure!((worked - hand).abs() <= TOLERANCE_BLEU_WORKED, "worked BLEU {worked} vs hand {hand}");
    ensure!((worked - 71.65).abs() <= TOLERANCE_BLEU_WORKED, "worked BLEU {worked} vs 71.65");
    let grade = fkgl("The cat sat on the mat.").map_err(|e| e.to_string())?;
    ensure!((grade + 1.45).abs() <= TOLERANCE_FKGL, "FKGL {grade} vs -1.45");
    let s = toks("the old cat sat down");
    let identity = sari(&s, &s, std::slice::from_ref(&s), DEFAULT_MAX_N).map_err(|e| e.to_string())?;
    ensure!(identity == 100.0, "identity SARI {identity}");
    let cases: [(&str, &[&str], f64, f64); 10] = [
        ("the Denver Broncos", &["Denver Broncos"], 1.0, 1.0),
        ("broncos", &["denver broncos"], 0.0, 2.0 / 3.0),
        ("Denver Broncos", &["Denver Broncos"], 1.0, 1.0),
        ("A  dog", &["dog"], 1.0, 1.0),
        ("the Eiffel Tower.", &["Eiffel Tower"], 1.0, 1.0),
        ("", &[""], 1.0, 1.0),
        ("", &["Paris"], 0.0, 0.0),
        ("Paris, France", &["London", "paris france"], 1.0, 1.0),
        ("an apple a day", &["apple day"], 1.0, 1.0),
        ("red blue green", &["blue red yellow"], 0.0, 2.0 / 3.0),
    ];
    for (pred, golds, em, f1) in cases {
        ensure!(squad_em(pred, golds) == em, "EM for {pred:?}");
        ensure!(squad_f1(pred, golds) == f1, "F1 for {pred:?}: {}", squad_f1(pred, golds));
    }
    Ok(format!("BLEU worked example {worked:.4}, FKGL {grade:.6}, 10 SQuAD cases"))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst_sari: f64 = 0.0;
    for case in 0..ORACLE_INSTANCES {
        let (input, output, refs) = random_sari_instance(&mut rng);
        let fast = sari(&input, &output, &refs, DEFAULT_MAX_N).map_err(|e| e.to_string())?;
        let slow = brute_sari(&input, &output, &refs, DEFAULT_MAX_N);
        worst_sari = worst_sari.max((fast - slow).abs());
        ensure!((fast - slow).abs() <= TOLERANCE_ORACLE, "SARI case {case}: {fast} vs {slow}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst_alpha: f64 = 0.0;
    for case in 0..ORACLE_INSTANCES {
        let rows = random_rating_rows(&mut rng);
        let fast = krippendorff_alpha(&RatingMatrix::new(rows.clone())).map_err(|e| e.to_string())?;
        let slow = brute_alpha(&rows);
        worst_alpha = worst_alpha.max((fast - slow).abs());
        ensure!((fast - slow).abs() <= TOLERANCE_ORACLE, "alpha case {case}: {fast} vs {slow}");
    }
    Ok(format!(
        "{ORACLE_INSTANCES} instances each, max deviation SARI {worst_sari:.1e}, alpha {worst_alpha:.1e}"
    ))
}

fn accepted_ids(records: &[TransferRecord]) -> BTreeSet<String> {
    records.iter().filter(|r| r.status == Status::Accepted).map(|r| r.pair_id()).collect()
}

fn permutations(items: &[Gate]) -> Vec<Vec<Gate>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn thresholding_soundness() -> Outcome {
    let config = GateConfig::default();
    let mut scored = load_threshold_fixture();
    ensure!(scored.len() >= 200, "fixture has only {} records", scored.len());
    score_records(&mut scored, &mut splitqa_core::lm::stub_scorer(), 4).map_err(|e| e.to_string())?;

    let mut records = scored.clone();
    let stats = threshold_scored(&mut records, &config);
    ensure!(stats.is_monotone(), "funnel not monotone: {stats:?}");
    let accepted = records.iter().filter(|r| r.status == Status::Accepted).count();
    let rejected = records.iter().filter(|r| r.is_rejected()).count();
    ensure!(accepted + rejected == records.len(), "accepted and rejected do not partition the input");
    ensure!(accepted == stats.after_numeric, "accepted count differs from the last funnel stage");
    let mut reasons = BTreeSet::new();
    for r in &records {
        match r.status {
            Status::Accepted => ensure!(all_ok(r, &config), "{} accepted but fails a predicate", r.pair_id()),
            Status::Rejected(reason) => {
                ensure!(reason_is_sound(r, &config, reason.as_str()), "{} wrongly rejected as {}", r.pair_id(), reason.as_str());
                reasons.insert(reason);
            }
            other => return Err(format!("{} left as {other}", r.pair_id())),
        }
    }
    ensure!(reasons.len() == 5, "not every rejection reason was exercised: {reasons:?}");
    ensure!(reasons.contains(&RejectReason::NumericLoss), "numeric gate never fired");

    let reference = accepted_ids(&records);
    let orders = permutations(&Gate::DEFAULT_ORDER);
    for order in &orders {
        let mut copy = scored.clone();
        apply_gates(&mut copy, &config, order);
        ensure!(accepted_ids(&copy) == reference, "accepted set changes under order {order:?}");
    }
    Ok(format!(
        "{} records, {accepted} accepted, funnel {}/{}/{}/{}/{}, {} gate orders agree",
        records.len(),
        stats.input_count,
        stats.after_perplexity,
        stats.after_length,
        stats.after_redundancy,
        stats.after_numeric,
        orders.len()
    ))
}

fn p(path: &Path) -> &str {
    path.to_str().expect("utf-8 path")
}

fn cli(args: &[&str]) -> Result<std::process::Output, String> {
    let out = splitqa(args).output().map_err(|e| e.to_string())?;
    if out.status.success() {
        Ok(out)
    } else {
        Err(format!("splitqa {args:?}: {}", String::from_utf8_lossy(&out.stderr).trim()))
    }
}

fn question_ids(c: &Corpus) -> BTreeSet<String> {
    c.question_ids().into_iter().map(String::from).collect()
}

fn json_file(path: &Path) -> Result<Value, String> {
    let bytes = fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_slice(&bytes).map_err(|e| format!("{}: {e}", path.display()))
}

/// The identity input: a 20-article slice of a real dev file when one is
/// configured, else the bundled fixture.
fn identity_input(work: &Path) -> Result<(PathBuf, String), String> {
    match std::env::var_os(SQUAD_DEV_ENV) {
        Some(dev) => {
            let mut doc = json_file(Path::new(&dev))?;
            let data = doc["data"].as_array_mut().ok_or("dev file has no `data` array")?;
            ensure!(data.len() >= IDENTITY_ARTICLES, "dev file has only {} articles", data.len());
            data.truncate(IDENTITY_ARTICLES);
            let path = work.join("dev_slice.json");
            fs::write(&path, serde_json::to_vec(&doc).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            Ok((path, format!("first {IDENTITY_ARTICLES} articles of {}", Path::new(&dev).display())))
        }
        None => Ok((fixture("squad_fixture.json"), "bundled 20-article fixture".into())),
    }
}

fn identity_round_trip() -> Outcome {
    let work = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (input, source) = identity_input(work.path())?;
    let out = work.path().join("out");
    cli(&["run", "--input", p(&input), "--out-dir", p(&out), "--backend", "builtin:identity"])?;

    let drops = fs::read_to_string(out.join("drops.jsonl")).map_err(|e| e.to_string())?;
    ensure!(drops.trim().is_empty(), "dropped questions: {}", drops.lines().count());
    let simple = load_input(&out.join("simple.json")).map_err(|e| e.to_string())?;
    let original = load_input(&out.join("original.json")).map_err(|e| e.to_string())?;
    for (name, corpus) in [("simple", &simple), ("original", &original)] {
        let report = validate_offsets(corpus);
        ensure!(report.is_ok(), "{name}: {} offsets fail validation", report.failures.len());
    }
    let source_ids = question_ids(&load_input(&input).map_err(|e| e.to_string())?);
    ensure!(question_ids(&simple) == question_ids(&original), "question ids differ between outputs");
    ensure!(question_ids(&simple) == source_ids, "question ids differ from the input");

    let report = json_file(&out.join("metric_report.json"))?;
    ensure!(report["bleu"]["mean"] == 100.0, "mean self-BLEU is {}", report["bleu"]["mean"]);
    let scores: Vec<RecordScores> = read_jsonl(&out.join("metrics.jsonl")).map_err(|e| e.to_string())?;
    ensure!(!scores.is_empty(), "no scored records");
    for s in &scores {
        ensure!(s.fkgl_original == s.fkgl_transferred, "{}: FKGL changed", s.pair_id);
    }
    Ok(format!("{source}: {} questions kept, {} records with equal FKGL", source_ids.len(), scores.len()))
}

fn rule_split_end_to_end() -> Outcome {
    let work = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = work.path();
    let input = fixture("squad_fixture.json");
    cli(&["run", "--input", p(&input), "--out-dir", p(out), "--backend", "builtin:rule_split", "--scorer", "builtin:stub"])?;

    for name in ["simple.json", "original.json"] {
        let corpus = load_input(&out.join(name)).map_err(|e| e.to_string())?;
        let report = validate_offsets(&corpus);
        ensure!(report.is_ok(), "{name}: {} offsets fail validation", report.failures.len());
    }
    let records: Vec<TransferRecord> = read_jsonl(&out.join("thresholded.jsonl")).map_err(|e| e.to_string())?;
    let mut accepted = 0;
    for r in records.iter().filter(|r| r.status == Status::Accepted) {
        accepted += 1;
        let candidate = r.candidate.as_deref().ok_or("accepted record without a candidate")?;
        ensure!(
            check_numeric_preservation(&r.original, candidate).passed(),
            "{} loses a number",
            r.pair_id()
        );
    }
    let stats = json_file(&out.join("stage_stats.json"))?;
    let funnel: Vec<u64> = ["input_count", "after_perplexity", "after_length", "after_redundancy", "after_numeric"]
        .iter()
        .map(|k| stats[k].as_u64().unwrap_or(u64::MAX))
        .collect();
    ensure!(funnel.windows(2).all(|w| w[0] >= w[1]), "funnel not monotone: {funnel:?}");

    let analysis = json_file(&out.join("transfer_analysis.json"))?;
    let buckets = analysis["buckets"].as_array().ok_or("analysis has no buckets")?;
    ensure!(buckets.len() == 4, "{} buckets", buckets.len());
    let sizes: Vec<usize> = buckets.iter().map(|b| b["n"].as_u64().unwrap_or(0) as usize).collect();
    let boundaries: Vec<usize> = analysis["spec"]["boundaries"]
        .as_array()
        .ok_or("analysis has no boundaries")?
        .iter()
        .map(|b| b.as_u64().unwrap_or(0) as usize)
        .collect();
    let scores: Vec<RecordScores> = read_jsonl(&out.join("metrics.jsonl")).map_err(|e| e.to_string())?;
    let lengths: Vec<usize> = scores.iter().map(|s| s.original_word_count).collect();
    ensure!(sizes.iter().sum::<usize>() == lengths.len(), "bucket sizes do not cover the scored records");
    ensure!(
        sizes_explained_by_ties(&lengths, [boundaries[0], boundaries[1], boundaries[2]], [sizes[0], sizes[1], sizes[2], sizes[3]]),
        "bucket sizes {sizes:?} at cuts {boundaries:?} are not explained by ties"
    );
    Ok(format!("{accepted} accepted, buckets {sizes:?} at cuts {boundaries:?}"))
}

fn lines(path: &Path) -> Vec<String> {
    fs::read_to_string(path).unwrap_or_default().lines().map(String::from).collect()
}

/// Mock command whose output equals the builtin rule split except for
/// sentences containing `FAIL_MARK`.
const FAIL_MARK: &str = "century";

fn backend_protocol() -> Outcome {
    let work = tempfile::tempdir().map_err(|e| e.to_string())?;
    let root = work.path();
    let input = fixture("squad_fixture.json");
    let base = |dir: &Path| vec!["run".to_string(), "--input".into(), p(&input).into(), "--out-dir".into(), p(dir).into()];

    // Reference transfer from the in-process rule split.
    let reference = root.join("reference");
    cli(&["run", "--input", p(&input), "--out-dir", p(&reference), "--backend", "builtin:rule_split"])?;
    let expected: Vec<TransferRecord> = read_jsonl(&reference.join("transfer.jsonl")).map_err(|e| e.to_string())?;

    // Reordered replies and scripted failures.
    let trace = root.join("trace.txt");
    let scripted = root.join("scripted");
    let backend = mock(&format!("--reorder-ms 3 --fail-matching {FAIL_MARK} --trace {}", p(&trace)));
    let mut args = base(&scripted);
    args.extend(["--backend".into(), backend]);
    cli(&args.iter().map(String::as_str).collect::<Vec<_>>())?;
    let order: Vec<usize> = lines(&trace).iter().filter_map(|l| l.parse().ok()).collect();
    ensure!(order.len() == expected.len(), "mock answered {} of {} requests", order.len(), expected.len());
    ensure!(order.windows(2).any(|w| w[0] > w[1]), "mock replies arrived in order; reordering not exercised");
    let got: Vec<TransferRecord> = read_jsonl(&scripted.join("transfer.jsonl")).map_err(|e| e.to_string())?;
    ensure!(got.len() == expected.len(), "{} transfer records, expected {}", got.len(), expected.len());
    let mut failures = 0;
    for (g, e) in got.iter().zip(&expected) {
        ensure!(g.pair_id() == e.pair_id() && g.original == e.original, "order broken at {}", g.pair_id());
        if g.original.contains(FAIL_MARK) {
            failures += 1;
            ensure!(
                g.status == Status::Rejected(RejectReason::BackendFailure) && g.candidate.is_none(),
                "{} should have failed",
                g.pair_id()
            );
        } else {
            ensure!(g == e, "{} differs from the in-process result", g.pair_id());
        }
    }
    ensure!(failures > 0, "no sentence contains {FAIL_MARK:?}; failure isolation not exercised");

    // Sentinel-joined replies decode to the same candidates.
    let sentinel = root.join("sentinel");
    let mut args = base(&sentinel);
    args.extend(["--backend".into(), mock(&format!("--sentinel --fail-matching {FAIL_MARK}"))]);
    cli(&args.iter().map(String::as_str).collect::<Vec<_>>())?;
    let decoded: Vec<TransferRecord> = read_jsonl(&sentinel.join("transfer.jsonl")).map_err(|e| e.to_string())?;
    ensure!(
        decoded.iter().zip(&got).all(|(a, b)| a.candidate == b.candidate),
        "sentinel replies decode differently"
    );

    // Uninterrupted run with a slow mock.
    let slow = mock(&format!("--reorder-ms 20 --fail-matching {FAIL_MARK}"));
    let whole = root.join("whole");
    let mut args = base(&whole);
    args.extend(["--backend".into(), slow.clone()]);
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    cli(&args)?;

    // Backend dies mid-run, then the same command resumes.
    let died = root.join("died");
    let mut dargs = base(&died);
    dargs.extend(["--backend".into(), slow.clone()]);
    let dargs: Vec<&str> = dargs.iter().map(String::as_str).collect();
    let first = splitqa(&dargs).env("MOCK_DIE_AFTER", "60").output().map_err(|e| e.to_string())?;
    ensure!(!first.status.success(), "run with a dying backend succeeded");
    let stderr = String::from_utf8_lossy(&first.stderr);
    ensure!(stderr.contains("mock-backend"), "error does not name the transport: {stderr}");
    let persisted = lines(&died.join("transfer.jsonl")).len();
    ensure!(persisted < expected.len(), "dying backend still persisted every record");
    let manifest = json_file(&died.join("manifest.json"))?;
    ensure!(manifest["stages"]["simplify"] == "incomplete", "manifest does not mark simplify incomplete");
    cli(&dargs)?;
    let diff = differing(&whole, &died, &ARTIFACTS);
    ensure!(diff.is_empty(), "resumed run differs after backend death: {diff:?}");

    // The pipeline process itself is killed mid-transfer.
    let killed = root.join("killed");
    let mut kargs = base(&killed);
    kargs.extend(["--backend".into(), slow]);
    let kargs: Vec<&str> = kargs.iter().map(String::as_str).collect();
    let mut child = splitqa(&kargs)
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .spawn()
        .map_err(|e| e.to_string())?;
    let deadline = Instant::now() + Duration::from_secs(30);
    let mut at_kill = 0;
    while Instant::now() < deadline {
        at_kill = lines(&killed.join("transfer.jsonl")).len();
        if at_kill >= 40 {
            break;
        }
        if child.try_wait().map_err(|e| e.to_string())?.is_some() {
            return Err("pipeline finished before it could be killed".into());
        }
        std::thread::sleep(Duration::from_millis(2));
    }
    child.kill().map_err(|e| e.to_string())?;
    child.wait().map_err(|e| e.to_string())?;
    ensure!(at_kill < expected.len(), "transfer finished before the kill");
    cli(&kargs)?;
    let diff = differing(&whole, &killed, &ARTIFACTS);
    ensure!(diff.is_empty(), "resumed run differs after kill: {diff:?}");

    Ok(format!(
        "{} replies received out of order, {failures} isolated failures, resumed after backend death at {persisted} and kill at {at_kill} records",
        order.len()
    ))
}

fn determinism() -> Outcome {
    let work = tempfile::tempdir().map_err(|e| e.to_string())?;
    let input = fixture("squad_fixture.json");
    let mut compared = 0;
    for backend in ["builtin:rule_split", "builtin:identity"] {
        let a = work.path().join(format!("{backend}-a").replace(':', "_"));
        let b = work.path().join(format!("{backend}-b").replace(':', "_"));
        for dir in [&a, &b] {
            cli(&["run", "--input", p(&input), "--out-dir", p(dir), "--backend", backend, "--seed", "13"])?;
        }
        let diff = differing(&a, &b, &ARTIFACTS);
        ensure!(diff.is_empty(), "{backend}: artifacts differ: {diff:?}");
        compared += ARTIFACTS.len();

        let before = fs::read(a.join("thresholded.jsonl")).map_err(|e| e.to_string())?;
        cli(&["threshold", "--out-dir", p(&a), "--backend", backend, "--seed", "13"])?;
        let after = fs::read(a.join("thresholded.jsonl")).map_err(|e| e.to_string())?;
        ensure!(before == after, "{backend}: rerunning threshold changed its output");
    }
    Ok(format!("{compared} artifact pairs byte-identical, threshold rerun stable"))
}
