mod support;

use std::collections::BTreeSet;

use splitqa_core::lm::stub_scorer;
use splitqa_core::threshold::{apply_gates, score_records, threshold_scored, Gate, GateConfig};
use splitqa_core::transfer::{RejectReason, Status, TransferRecord};
use support::gates::{all_ok, load_threshold_fixture, reason_is_sound};

fn scored_fixture() -> Vec<TransferRecord> {
    let mut records = load_threshold_fixture();
    score_records(&mut records, &mut stub_scorer(), 4).unwrap();
    records
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

fn accepted_ids(records: &[TransferRecord]) -> BTreeSet<String> {
    records
        .iter()
        .filter(|r| r.status == Status::Accepted)
        .map(|r| r.pair_id())
        .collect()
}

#[test]
fn fixture_exercises_every_gate() {
    let mut records = scored_fixture();
    assert!(records.len() >= 200);
    threshold_scored(&mut records, &GateConfig::default());
    let reasons: BTreeSet<RejectReason> = records
        .iter()
        .filter_map(|r| match r.status {
            Status::Rejected(reason) => Some(reason),
            _ => None,
        })
        .collect();
    assert_eq!(reasons.len(), 5, "{reasons:?}");
    assert!(records.iter().any(|r| r.status == Status::Accepted));
    // Both bounds are inclusive.
    for bound in [50.0, 600.0] {
        assert!(records
            .iter()
            .any(|r| r.perplexity == Some(bound) && r.status != Status::Rejected(RejectReason::PerplexityOutOfRange)));
    }
}

#[test]
fn partition_soundness_and_monotone_funnel() {
    let config = GateConfig::default();
    let mut records = scored_fixture();
    let stats = threshold_scored(&mut records, &config);
    assert!(stats.is_monotone());
    assert_eq!(stats.input_count, records.len());
    let accepted = records.iter().filter(|r| r.status == Status::Accepted).count();
    let rejected = records.iter().filter(|r| r.is_rejected()).count();
    assert_eq!(accepted + rejected, records.len());
    assert_eq!(accepted, stats.after_numeric);
    for r in &records {
        match r.status {
            Status::Accepted => assert!(all_ok(r, &config), "{}", r.pair_id()),
            Status::Rejected(reason) => assert!(reason_is_sound(r, &config, reason.as_str()), "{}", r.pair_id()),
            other => panic!("{} left in status {other}", r.pair_id()),
        }
    }
}

#[test]
fn accepted_set_is_order_independent() {
    let config = GateConfig::default();
    let base = scored_fixture();
    let mut reference = base.clone();
    apply_gates(&mut reference, &config, &Gate::DEFAULT_ORDER);
    let expected = accepted_ids(&reference);
    for order in permutations(&Gate::DEFAULT_ORDER) {
        let mut records = base.clone();
        let survivors = apply_gates(&mut records, &config, &order);
        assert!(survivors.windows(2).all(|w| w[0] >= w[1]));
        assert_eq!(accepted_ids(&records), expected, "order {order:?}");
    }
}

#[test]
fn regating_changes_nothing() {
    let config = GateConfig::default();
    let mut once = scored_fixture();
    threshold_scored(&mut once, &config);
    let mut twice = once.clone();
    threshold_scored(&mut twice, &config);
    assert_eq!(once, twice);
}
