use std::time::Duration;

use radiok::oracle::{exact_rn, scan_conjecture, Budget, OracleOutcome, ScanRow, ScanVerdict};
use radiok::verify::{verify_full, Provenance};

fn dist(u: u64, v: u64, n: u64) -> u64 {
    let a = u.abs_diff(v);
    a.min(n - a)
}

/// Minimum over all orderings starting at 0 of the greedy span.
fn brute_rn(n: u64, k: u64) -> u64 {
    fn go(n: u64, k: u64, order: &mut Vec<u64>, labels: &mut Vec<u64>, used: &mut [bool], best: &mut u64) {
        if order.len() as u64 == n {
            *best = (*best).min(*labels.last().unwrap());
            return;
        }
        for v in 1..n {
            if used[v as usize] {
                continue;
            }
            let i = order.len();
            let mut f = labels[i - 1] + k + 1 - dist(order[i - 1], v, n);
            if i >= 2 {
                f = f.max(labels[i - 2] + k + 1 - dist(order[i - 2], v, n));
            }
            used[v as usize] = true;
            order.push(v);
            labels.push(f);
            go(n, k, order, labels, used, best);
            order.pop();
            labels.pop();
            used[v as usize] = false;
        }
    }
    let mut best = u64::MAX;
    let mut used = vec![false; n as usize];
    used[0] = true;
    go(n, k, &mut vec![0], &mut vec![0], &mut used, &mut best);
    best
}

fn solve(n: u64, k: u64) -> (u64, radiok::verify::Labeling) {
    match exact_rn(n, k, &Budget::default()).unwrap() {
        OracleOutcome::Solved { value, witness, .. } => (value, witness),
        other => panic!("n = {n}, k = {k}: {other:?}"),
    }
}

#[test]
fn matches_exhaustive_enumeration() {
    for n in 3..=9 {
        for k in n / 2..=n + 2 {
            let (value, witness) = solve(n, k);
            assert_eq!(value, brute_rn(n, k), "n = {n}, k = {k}");
            assert_eq!(witness.span(), value);
            assert_eq!(witness.provenance(), Provenance::Oracle);
            assert!(verify_full(&witness).valid);
        }
    }
}

#[test]
fn construction_examples_are_optimal() {
    // (13, 6): gcd(13, 3) = 1 with h = 3 odd; (15, 8): h = 3 divides 15.
    assert_eq!(solve(13, 6).0, 24);
    assert_eq!(solve(15, 8).0, 43);
    assert_eq!(solve(9, 5).0, 20);
}

#[test]
fn witness_independent_of_thread_count() {
    let runs: Vec<_> = [1, 2, 4]
        .into_iter()
        .map(|t| match exact_rn(12, 7, &Budget::default().with_threads(t)).unwrap() {
            OracleOutcome::Solved { value, witness, .. } => (value, witness.order().to_vec()),
            other => panic!("{other:?}"),
        })
        .collect();
    assert!(runs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn exhausted_budgets() {
    let tiny = Budget::nodes(10);
    match exact_rn(14, 9, &tiny).unwrap() {
        OracleOutcome::BudgetExceeded { lower, nodes, .. } => {
            assert_eq!(lower, 51);
            assert!(nodes >= 10);
        }
        other => panic!("{other:?}"),
    }
    let instant = Budget {
        max_time: Duration::ZERO,
        ..Budget::default()
    };
    assert!(exact_rn(16, 11, &instant).unwrap().value().is_none());
}

#[test]
fn scan_round_trips_as_csv() {
    let rows = scan_conjecture(4..=12, &Budget::default()).unwrap();
    assert!(rows.iter().any(|r| (r.n, r.k) == (12, 7)));
    assert!(rows.iter().all(|r| r.verdict != ScanVerdict::Inconclusive));

    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &rows {
        w.serialize(r).unwrap();
    }
    let bytes = w.into_inner().unwrap();
    let back: Vec<ScanRow> = csv::Reader::from_reader(&bytes[..])
        .deserialize()
        .collect::<Result<_, _>>()
        .unwrap();
    assert_eq!(back, rows);

    let starved = scan_conjecture(4..=12, &Budget::nodes(1)).unwrap();
    assert!(starved.iter().all(|r| r.verdict == ScanVerdict::Inconclusive && r.oracle_value.is_none()));
}
