//! Acceptance gate: one PASS/FAIL line per criterion, with its time limit.
//!
//! Run with `cargo test -p radiok --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use radiok::construct::{build, CaseId};
use radiok::cyclic::{gcd_halving_classify, CycleInstance, HalvingClass};
use radiok::dispatch::{applicable_rules, diameter_plus_one_reference, resolve, Rule};
use radiok::jump::coset_bound_check;
use radiok::oracle::{exact_rn, scan_conjecture, Budget, OracleOutcome, ScanRow, ScanVerdict};
use radiok::verify::{verify_consecutive, verify_full, verify_reduced, Labeling, Provenance};

/// Every compared quantity is an integer; agreement must be exact.
const TOLERANCE: u64 = 0;

#[allow(clippy::absurd_extreme_comparisons)]
fn within_tolerance(a: u64, b: u64) -> bool {
    a.abs_diff(b) <= TOLERANCE
}

const LIMIT_EXAMPLE: Duration = Duration::from_secs(1);
const LIMIT_ORACLE_SWEEP: Duration = Duration::from_secs(300);
const LIMIT_LARGE_K: Duration = Duration::from_secs(10);
const LIMIT_SAME_PARITY: Duration = Duration::from_secs(60);
const LIMIT_DEFAULT: Duration = Duration::from_secs(120);

const ORACLE_SWEEP_MAX_N: u64 = 10;
/// Bounds-only instances first appear at n = 13; these are checked too.
const BOUNDS_EXTRA_MAX_N: u64 = 16;
const VERIFIER_SAMPLES: usize = 10_000;
const SCAN_MAX_N: u64 = 12;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn dist(u: u64, v: u64, n: u64) -> u64 {
    let a = u.abs_diff(v);
    a.min(n - a)
}

fn solve(n: u64, k: u64) -> Result<u64, String> {
    match exact_rn(n, k, &Budget::default()).map_err(|e| e.to_string())? {
        OracleOutcome::Solved { value, witness, .. } => {
            ensure(verify_full(&witness).valid && witness.span() == value, || {
                format!("oracle witness for ({n},{k}) does not certify {value}")
            })?;
            Ok(value)
        }
        OracleOutcome::BudgetExceeded { nodes, .. } => Err(format!("oracle budget exhausted on ({n},{k}) after {nodes} nodes")),
    }
}

/// Exhaustive search over orderings with plain span pruning; shares no code with the oracle.
fn brute_rn(n: u64, k: u64) -> u64 {
    fn go(n: u64, k: u64, order: &mut Vec<u64>, labels: &mut Vec<u64>, used: &mut [bool], best: &mut u64) {
        let i = order.len();
        if i as u64 == n {
            *best = (*best).min(labels[i - 1]);
            return;
        }
        for v in 1..n {
            if used[v as usize] {
                continue;
            }
            let mut f = labels[i - 1] + k + 1 - dist(order[i - 1], v, n);
            if i >= 2 {
                f = f.max(labels[i - 2] + k + 1 - dist(order[i - 2], v, n));
            }
            // Each remaining vertex needs at least k + 1 − d more.
            if f + (n - 1 - i as u64) * (k + 1 - n / 2) >= *best {
                continue;
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

fn check_built(n: u64, k: u64, want: u64) -> Result<(), String> {
    let c = build(n, k)
        .map_err(|e| e.to_string())?
        .ok_or_else(|| format!("({n},{k}) has no construction"))?;
    let lab = c.labeling();
    ensure(verify_full(lab).valid, || format!("({n},{k}) labeling fails verification"))?;
    ensure(within_tolerance(lab.span(), want), || {
        format!("({n},{k}) span {} ≠ {want}", lab.span())
    })
}

fn c1_worked_examples() -> Outcome {
    let mut slowest = Duration::ZERO;
    for (n, k, phi, span) in [(16, 10, 9, 66), (27, 19, 17, 221), (27, 20, 18, 235)] {
        let start = Instant::now();
        let inst = CycleInstance::new(n, k).map_err(|e| e.to_string())?;
        ensure(inst.phi() == phi, || format!("Φ({n},{k}) = {} ≠ {phi}", inst.phi()))?;
        check_built(n, k, span)?;
        let status = resolve(n, k).map_err(|e| e.to_string())?;
        ensure(status.exact() == Some(span), || format!("rn_{k}(C_{n}) resolves to {status:?}"))?;
        let took = start.elapsed();
        ensure(took <= LIMIT_EXAMPLE, || format!("({n},{k}) took {took:?}"))?;
        slowest = slowest.max(took);
    }
    ensure(CycleInstance::new(27, 20).unwrap().lb() + 1 == 235, || "LB(27,20) + 1 ≠ 235".into())?;
    let lab = build(27, 20).unwrap().unwrap().into_labeling();
    ensure(lab.labels()[16] == 144 && lab.labels()[18] == 163, || {
        format!("f(x_16), f(x_18) = {}, {}", lab.labels()[16], lab.labels()[18])
    })?;
    Ok(format!("66, 221, 235 reproduced; slowest {slowest:?}"))
}

fn c2_oracle_matches_exact() -> Outcome {
    let mut checked = 0;
    for n in 3..=ORACLE_SWEEP_MAX_N {
        for k in n / 2..=n + 2 {
            let status = resolve(n, k).map_err(|e| e.to_string())?;
            if let Some(exact) = status.exact() {
                let v = solve(n, k)?;
                ensure(within_tolerance(v, exact), || {
                    format!("({n},{k}): oracle {v}, {} says {exact}", status.provenance())
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} exact values confirmed for n ≤ {ORACLE_SWEEP_MAX_N}"))
}

fn c3_bounds_contain_oracle() -> Outcome {
    let (mut rules, mut bounds) = (0, 0);
    for n in 3..=BOUNDS_EXTRA_MAX_N {
        for k in n / 2..=n + 2 {
            let status = resolve(n, k).map_err(|e| e.to_string())?;
            let all_rules = n <= ORACLE_SWEEP_MAX_N;
            if !all_rules && status.exact().is_some() {
                continue;
            }
            let v = solve(n, k)?;
            ensure(status.contains(v), || format!("({n},{k}): oracle {v} outside {status:?}"))?;
            if status.exact().is_none() {
                bounds += 1;
            }
            if all_rules {
                for r in applicable_rules(n, k).map_err(|e| e.to_string())? {
                    ensure(r.contains(v), || format!("({n},{k}): oracle {v} outside {} {r:?}", r.rule))?;
                    if r.rule == Rule::MismatchLower {
                        let g = CycleInstance::new(n, k).unwrap().mismatch_gap().unwrap();
                        let offset = CycleInstance::new(n, k).unwrap().lb() + g.p.div_ceil(2) - 1;
                        ensure(r.lower == offset, || format!("({n},{k}): Prop 4.2 bound {}", r.lower))?;
                    }
                    rules += 1;
                }
            }
        }
    }
    ensure(bounds > 0, || "no Bounds instance checked".into())?;
    Ok(format!(
        "{rules} rule intervals (n ≤ {ORACLE_SWEEP_MAX_N}) and {bounds} Bounds results (n ≤ {BOUNDS_EXTRA_MAX_N}) contain the oracle value"
    ))
}

fn c4_large_k() -> Outcome {
    let mut count = 0;
    for n in 3..=50u64 {
        for k in n.saturating_sub(3).max(n / 2)..=n + 5 {
            let want = if n % 2 == 1 {
                (n - 1) / 2 * (2 * k + 3 - n)
            } else {
                (n - 2) / 2 * (2 * k + 3 - n) + k - n / 2 + 1
            };
            check_built(n, k, want)?;
            count += 1;
        }
    }
    Ok(format!("{count} instances"))
}

fn c5_same_parity() -> Outcome {
    let mut count = 0;
    for n in 3..=300u64 {
        for k in (n / 2..=n.saturating_sub(3)).filter(|k| k % 2 == n % 2) {
            let c = build(n, k).map_err(|e| e.to_string())?.ok_or(format!("({n},{k}) uncovered"))?;
            let lab = c.labeling();
            let mut seen = lab.order().to_vec();
            seen.sort_unstable();
            ensure(seen.iter().copied().eq(0..n), || format!("({n},{k}) order is not a permutation"))?;
            ensure(verify_full(lab).valid, || format!("({n},{k}) fails verification"))?;
            let lb = CycleInstance::new(n, k).unwrap().lb();
            ensure(lab.span() == lb, || format!("({n},{k}) span {} ≠ LB {lb}", lab.span()))?;
            count += 1;
        }
    }
    Ok(format!("{count} instances at LB"))
}

fn c6_mismatch() -> Outcome {
    let (mut eo, mut oec, mut oed, mut cor) = (0, 0, 0, 0);
    for n in 3..=300u64 {
        for k in (n / 2..n.saturating_sub(3)).filter(|k| k % 2 != n % 2) {
            let inst = CycleInstance::new(n, k).unwrap();
            let (lb, h) = (inst.lb(), (n - k - 1) / 2);
            let case = build(n, k).map_err(|e| e.to_string())?.map(|c| c.params().case);
            if n % 2 == 0 {
                check_built(n, k, lb + gcd(n / 2, h) - 1)?;
                ensure(case == Some(CaseId::EvenOdd), || format!("({n},{k}) built as {case:?}"))?;
                eo += 1;
                if gcd(n / 2, h) == 1 {
                    let s = resolve(n, k).map_err(|e| e.to_string())?;
                    ensure(s.exact() == Some(lb), || format!("({n},{k}) resolves to {s:?}"))?;
                    cor += 1;
                }
            } else if n % h == 0 {
                check_built(n, k, lb + (h - 1) / 2)?;
                ensure(case == Some(CaseId::OddEvenDivisor), || format!("({n},{k}) built as {case:?}"))?;
                oed += 1;
            } else if gcd(n, h) == 1 && h % 2 == 1 {
                check_built(n, k, lb)?;
                ensure(case == Some(CaseId::OddEvenCoprime), || format!("({n},{k}) built as {case:?}"))?;
                oec += 1;
            }
        }
    }
    Ok(format!(
        "even-odd {eo} (LB + p* − 1), odd-even coprime {oec} (LB), odd-even divisor {oed} (LB + (h−1)/2), {cor} exact at LB"
    ))
}

fn c7_diameter_plus_one() -> Outcome {
    for n in 4..=60u64 {
        let k = n / 2 + 1;
        let want = diameter_plus_one_reference(n).map_err(|e| e.to_string())?;
        let s = resolve(n, k).map_err(|e| e.to_string())?;
        ensure(s.exact() == Some(want), || format!("n = {n}: reference {want}, dispatcher {s:?}"))?;
        for r in applicable_rules(n, k).map_err(|e| e.to_string())? {
            ensure(r.contains(want), || format!("n = {n}: {want} outside {} {r:?}", r.rule))?;
        }
        if n <= ORACLE_SWEEP_MAX_N {
            let v = solve(n, k)?;
            ensure(v == want, || format!("n = {n}: oracle {v}, reference {want}"))?;
        }
    }
    Ok("4 ≤ n ≤ 60 agree with the dispatcher; n ≤ 10 with the oracle".into())
}

fn c8_lemmas() -> Outcome {
    let mut pairs = 0;
    for n in 3..=100u64 {
        for j0 in 1..=n / 2 {
            for j1 in 1..=n / 2 {
                let r = coset_bound_check(j0, j1, n).map_err(|e| e.to_string())?;
                let mut seen = vec![false; n as usize];
                let mut x = 0;
                for i in 0..n {
                    seen[x as usize] = true;
                    x = (x + if i % 2 == 0 { j0 } else { j1 }) % n;
                }
                let support = seen.iter().filter(|&&s| s).count() as u64;
                ensure(support == r.support && support <= r.bound, || {
                    format!("n = {n}, ({j0},{j1}): support {support}, bound {}", r.bound)
                })?;
                pairs += 1;
            }
        }
    }
    let mut halving = 0;
    for n in (4..=400u64).step_by(2) {
        for h in 1..n {
            let r = gcd_halving_classify(n, h).map_err(|e| e.to_string())?;
            let half_in = (0..n).any(|t| t * h % n == n / 2);
            let (gn, gh) = (gcd(n, h), gcd(n / 2, h));
            let ok = if half_in {
                r.class == HalvingClass::Half && gn == gh
            } else {
                r.class == HalvingClass::Double && gn == 2 * gh
            };
            ensure(ok, || format!("n = {n}, h = {h}: {r:?}"))?;
            halving += 1;
        }
    }
    Ok(format!("{pairs} two-jump sequences, {halving} halving identities"))
}

fn near_boundary(rng: &mut impl Rng, n: u64, k: u64) -> Labeling {
    let mut order: Vec<u64> = (1..n).collect();
    order.shuffle(rng);
    order.insert(0, 0);
    let mut labels = vec![0u64];
    for i in 1..n as usize {
        let mut need = k + 1 - dist(order[i - 1], order[i], n);
        if i >= 2 {
            need = need.max((labels[i - 2] + k + 1 - dist(order[i - 2], order[i], n)).saturating_sub(labels[i - 1]));
        }
        let gap = match rng.gen_range(0..10 * n) {
            0..=6 => need.saturating_sub(1),
            r if r < 2 * n => need + 1,
            _ => need,
        };
        labels.push(labels[i - 1] + gap);
    }
    Labeling::new(n, k, order, labels, Provenance::External).unwrap()
}

fn c9_verifier() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut total, mut invalid) = (0, 0);
    for n in 6..=50u64 {
        for _ in 0..VERIFIER_SAMPLES {
            let k = rng.gen_range(n / 2..=n + 2);
            let lab = near_boundary(&mut rng, n, k);
            let full = verify_full(&lab).valid;
            ensure(verify_reduced(&lab).valid == full, || format!("({n},{k}) reduced ≠ full"))?;
            if k + 3 >= n {
                ensure(verify_consecutive(&lab).valid == full, || format!("({n},{k}) consecutive ≠ full"))?;
            }
            total += 1;
            invalid += !full as u64;
        }
    }
    Ok(format!("{total} labelings ({invalid} invalid), {VERIFIER_SAMPLES} per n"))
}

fn c10_scan() -> Outcome {
    let budget = Budget::default();
    let rows = scan_conjecture(4..=SCAN_MAX_N, &budget).map_err(|e| e.to_string())?;
    ensure(!rows.is_empty(), || "no instances".into())?;
    let again = scan_conjecture(4..=SCAN_MAX_N, &budget.with_threads(1)).map_err(|e| e.to_string())?;
    ensure(rows == again, || "scan is not deterministic".into())?;
    let mut matches = 0;
    for r in &rows {
        ensure(r.verdict != ScanVerdict::Inconclusive, || format!("({},{}) inconclusive", r.n, r.k))?;
        let brute = brute_rn(r.n, r.k);
        ensure(r.oracle_value == Some(brute), || {
            format!("({},{}): oracle {:?}, exhaustive {brute}", r.n, r.k, r.oracle_value)
        })?;
        matches += (r.verdict == ScanVerdict::Match) as usize;
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &rows {
        w.serialize(r).map_err(|e| e.to_string())?;
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    let back: Vec<ScanRow> = csv::Reader::from_reader(&bytes[..])
        .deserialize()
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(back == rows, || "CSV round trip changed the rows".into())?;
    Ok(format!("{} rows, {matches} Match, {} Mismatch; CSV round-trips", rows.len(), rows.len() - matches))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "worked examples reproduce", LIMIT_EXAMPLE * 3, c1_worked_examples),
        (2, "oracle equals closed forms, n ≤ 10", LIMIT_ORACLE_SWEEP, c2_oracle_matches_exact),
        (3, "bounds contain the oracle value", LIMIT_DEFAULT, c3_bounds_contain_oracle),
        (4, "k ≥ n − 3 closed form, n ≤ 50", LIMIT_LARGE_K, c4_large_k),
        (5, "same parity at LB, n ≤ 300", LIMIT_SAME_PARITY, c5_same_parity),
        (6, "parity-mismatch constructions, n ≤ 300", LIMIT_DEFAULT, c6_mismatch),
        (7, "k = d + 1 reference", LIMIT_DEFAULT, c7_diameter_plus_one),
        (8, "coset bound and halving identity", LIMIT_DEFAULT, c8_lemmas),
        (9, "reduced verifiers equal the full check", LIMIT_DEFAULT, c9_verifier),
        (10, "conjecture scan, even n ≤ 12", LIMIT_DEFAULT, c10_scan),
    ];
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(_) if took > limit => Err(format!("took {took:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS [{id:>2}] {name} ({took:.2?}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL [{id:>2}] {name} ({took:.2?}): {why}");
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
