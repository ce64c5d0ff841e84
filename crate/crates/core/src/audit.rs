//! Cross-checks between the known results, the constructions and (for
//! small `n`) the oracle. Disagreements are collected, never raised.

use serde::{Deserialize, Serialize};

use crate::construct::build;
use crate::cyclic::CycleInstance;
use crate::dispatch::{applicable_rules, diameter_plus_one_reference, resolve, RnStatus};
use crate::error::Result;
use crate::oracle::{exact_rn, Budget, OracleOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contradiction {
    pub n: u64,
    pub k: u64,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub n_max: u64,
    pub instances: u64,
    pub constructions: u64,
    pub oracle_checked: u64,
    pub oracle_inconclusive: u64,
    pub contradictions: Vec<Contradiction>,
}

impl AuditReport {
    pub fn is_consistent(&self) -> bool {
        self.contradictions.is_empty()
    }
}

/// Oracle cross-checking for instances with `n ≤ n_max`.
#[derive(Debug, Clone, Copy)]
pub struct OracleCheck {
    pub n_max: u64,
    pub budget: Budget,
}

/// Audits every `(n, k)` with `3 ≤ n ≤ n_max` and `⌊n/2⌋ ≤ k ≤ n + 2`.
pub fn consistency_audit(n_max: u64, oracle: Option<OracleCheck>) -> Result<AuditReport> {
    let mut report = AuditReport {
        n_max,
        ..AuditReport::default()
    };
    for n in 3..=n_max {
        for k in n / 2..=n + 2 {
            audit_instance(n, k, oracle.as_ref(), &mut report)?;
        }
    }
    Ok(report)
}

fn audit_instance(n: u64, k: u64, oracle: Option<&OracleCheck>, report: &mut AuditReport) -> Result<()> {
    let mut flag = |message: String| report.contradictions.push(Contradiction { n, k, message });
    let lb = CycleInstance::new(n, k)?.lb();
    let status = resolve(n, k)?;
    let rules = applicable_rules(n, k)?;

    if status.lower() < lb {
        flag(format!("lower bound {} is below LB = {lb}", status.lower()));
    }
    if status.upper().is_some_and(|u| u < status.lower()) {
        flag(format!("empty interval [{}, {:?}]", status.lower(), status.upper()));
    }
    for r in &rules {
        let consistent = match status.exact() {
            Some(v) => r.contains(v),
            None => r.upper.is_none_or(|u| u >= status.lower()) && status.upper().is_none_or(|u| u >= r.lower),
        };
        if !consistent {
            flag(format!(
                "{} gives [{}, {:?}], inconsistent with {} from {}",
                r.rule,
                r.lower,
                r.upper,
                describe(&status),
                status.rule
            ));
        }
    }
    if k == n / 2 + 1 && n >= 4 {
        let reference = diameter_plus_one_reference(n)?;
        if status.exact() != Some(reference) {
            flag(format!("k = d + 1 reference {reference} differs from {}", describe(&status)));
        }
    }

    match build(n, k) {
        Ok(Some(c)) => {
            report.constructions += 1;
            let span = c.labeling().span();
            if !status.construction_available {
                flag("construction built but status says none is available".into());
            }
            let ok = match status.exact() {
                Some(v) => span == v,
                None => span >= status.lower() && status.upper().is_none_or(|u| span <= u),
            };
            if !ok {
                flag(format!(
                    "{} construction has span {span}, outside {}",
                    c.params().case,
                    describe(&status)
                ));
            }
        }
        Ok(None) => {
            if status.construction_available {
                flag("status claims a construction but none is built".into());
            }
        }
        Err(e) => flag(format!("construction failed: {e}")),
    }

    if let Some(check) = oracle.filter(|c| n <= c.n_max) {
        match exact_rn(n, k, &check.budget)? {
            OracleOutcome::Solved { value, .. } => {
                report.oracle_checked += 1;
                if !status.contains(value) {
                    report.contradictions.push(Contradiction {
                        n,
                        k,
                        message: format!("oracle value {value} outside {}", describe(&status)),
                    });
                }
            }
            OracleOutcome::BudgetExceeded { .. } => report.oracle_inconclusive += 1,
        }
    }
    report.instances += 1;
    Ok(())
}

fn describe(status: &RnStatus) -> String {
    match (status.exact(), status.upper()) {
        (Some(v), _) => format!("exact {v}"),
        (None, Some(u)) => format!("[{}, {u}]", status.lower()),
        (None, None) => format!("[{}, inf)", status.lower()),
    }
}
