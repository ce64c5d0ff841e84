//! What is known about `rn_k(C_n)` for a given `(n, k)`.
//!
//! [`applicable_rules`] lists every result whose hypotheses hold, each as an
//! interval `[lower, upper]` (a point for exact values). [`resolve`] reports
//! the first of them in a fixed priority order. Listing all of them lets
//! [`crate::audit`] check that overlapping results agree.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::construct::{classify, same_parity_params, CaseId};
use crate::cyclic::{CycleInstance, ParityClass, MAX_N};
use crate::error::{Error, Result};

/// A result about `rn_k(C_n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// `k ≥ n − 3`: closed form.
    LargeK,
    /// `n ≡ k`, `k ≤ n − 3`: equals `LB`. Carries the construction case.
    SameParity(CaseId),
    /// `k = ⌊n/2⌋`: equals `LB` for every `n`.
    Diameter,
    /// `k = ⌊n/2⌋ + 1`: piecewise in `n mod 4`.
    DiameterPlusOne,
    /// `n` even, `k` odd, `gcd(n/2, h) = 1`: equals `LB`.
    EvenOddCoprimeHalf,
    /// `n` even, `k` odd, `n/2 ∉ ⟨h⟩`: the lower bound `LB + ⌈p/2⌉ − 1` is attained.
    EvenOddSharp,
    /// `n` even, `k` odd: `LB + ⌈p/2⌉ − 1 ≤ rn_k ≤ LB + p − 1`.
    EvenOddBounds,
    /// `n` odd, `k` even, `gcd(n, h) = 1`, `h` odd: equals `LB`.
    OddEvenCoprime,
    /// `n` odd, `k` even, `h | n`: equals `LB + (h − 1)/2`.
    OddEvenDivisor,
    /// Parity mismatch, `k < n − 3`: `rn_k ≥ LB + ⌈p/2⌉ − 1`.
    MismatchLower,
}

impl Rule {
    pub fn tag(self) -> &'static str {
        match self {
            Rule::LargeK => "Thm 3.2",
            Rule::SameParity(case) => case.tag(),
            Rule::Diameter => "Diameter (k = d)",
            Rule::DiameterPlusOne => "Thm 5.1 (k = d+1)",
            Rule::EvenOddCoprimeHalf => "Cor 4.4",
            Rule::EvenOddSharp => "Thm 4.3 sharpness",
            Rule::EvenOddBounds => "Thm 4.3",
            Rule::OddEvenCoprime => "Thm 4.5",
            Rule::OddEvenDivisor => "Thm 4.6",
            Rule::MismatchLower => "Prop 4.2",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// One applicable result: `lower ≤ rn_k(C_n) ≤ upper` (`upper = None` means unbounded).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleBound {
    pub rule: Rule,
    pub lower: u64,
    pub upper: Option<u64>,
}

impl RuleBound {
    fn exact(rule: Rule, value: u64) -> Self {
        RuleBound {
            rule,
            lower: value,
            upper: Some(value),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.upper == Some(self.lower)
    }

    pub fn contains(&self, value: u64) -> bool {
        self.lower <= value && self.upper.is_none_or(|u| value <= u)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RnValue {
    Exact { value: u64 },
    Bounds { lower: u64, upper: Option<u64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RnStatus {
    pub n: u64,
    pub k: u64,
    pub value: RnValue,
    pub rule: Rule,
    pub construction_available: bool,
}

impl RnStatus {
    pub fn exact(&self) -> Option<u64> {
        match self.value {
            RnValue::Exact { value } => Some(value),
            RnValue::Bounds { .. } => None,
        }
    }

    pub fn lower(&self) -> u64 {
        match self.value {
            RnValue::Exact { value } => value,
            RnValue::Bounds { lower, .. } => lower,
        }
    }

    pub fn upper(&self) -> Option<u64> {
        match self.value {
            RnValue::Exact { value } => Some(value),
            RnValue::Bounds { upper, .. } => upper,
        }
    }

    pub fn provenance(&self) -> &'static str {
        self.rule.tag()
    }

    pub fn contains(&self, value: u64) -> bool {
        self.lower() <= value && self.upper().is_none_or(|u| value <= u)
    }
}

/// Closed form for `k ≥ n − 3`.
pub fn large_k_value(n: u64, k: u64) -> Result<u64> {
    CycleInstance::new(n, k)?;
    if k + 3 < n {
        return Err(Error::Precondition {
            case: Rule::LargeK.tag(),
            n,
            k,
        });
    }
    Ok(if n % 2 == 1 {
        (n - 1) / 2 * (2 * k + 3 - n)
    } else {
        (n - 2) / 2 * (2 * k + 3 - n) + k + 1 - n / 2
    })
}

/// `rn_{d+1}(C_n)` for `n = 4q + r ≥ 4`.
pub fn diameter_plus_one_reference(n: u64) -> Result<u64> {
    if n < 4 {
        return Err(Error::CycleTooSmall { n });
    }
    if n > MAX_N {
        return Err(Error::CycleTooLarge { n, max: MAX_N });
    }
    let lb = CycleInstance::new(n, n / 2 + 1)?.lb();
    let (q, r) = (n / 4, n % 4);
    let extra = match r {
        0 => q % 2,
        1 | 2 => 0,
        _ => u64::from(q == 2 || q % 3 == 0),
    };
    Ok(lb + extra)
}

/// Every known result that applies to `(n, k)`, highest priority first.
pub fn applicable_rules(n: u64, k: u64) -> Result<Vec<RuleBound>> {
    let inst = CycleInstance::new(n, k)?;
    let lb = inst.lb();
    let d = inst.diameter();
    let mut rules = Vec::new();

    if k + 3 >= n {
        rules.push(RuleBound::exact(Rule::LargeK, large_k_value(n, k)?));
    }
    if let Ok(params) = same_parity_params(n, k) {
        rules.push(RuleBound::exact(Rule::SameParity(params.case), lb));
    }
    if k == d {
        rules.push(RuleBound::exact(Rule::Diameter, lb));
    }
    if k == d + 1 && n >= 4 {
        rules.push(RuleBound::exact(
            Rule::DiameterPlusOne,
            diameter_plus_one_reference(n)?,
        ));
    }
    if let Some(gap) = inst.mismatch_gap() {
        let lower = lb + gap.p.div_ceil(2) - 1;
        match inst.parity() {
            ParityClass::EvenOdd => {
                if gap.p_star == 1 {
                    rules.push(RuleBound::exact(Rule::EvenOddCoprimeHalf, lb));
                }
                if !gap.d_in_h {
                    rules.push(RuleBound::exact(Rule::EvenOddSharp, lower));
                }
                rules.push(RuleBound {
                    rule: Rule::EvenOddBounds,
                    lower,
                    upper: Some(lb + gap.p - 1),
                });
            }
            ParityClass::OddEven => {
                if n.is_multiple_of(gap.h) {
                    rules.push(RuleBound::exact(Rule::OddEvenDivisor, lb + (gap.h - 1) / 2));
                }
                if gap.p == 1 && gap.h % 2 == 1 {
                    rules.push(RuleBound::exact(Rule::OddEvenCoprime, lb));
                }
            }
            ParityClass::Same => unreachable!("mismatch gap implies differing parity"),
        }
        rules.push(RuleBound {
            rule: Rule::MismatchLower,
            lower,
            upper: None,
        });
    }
    Ok(rules)
}

/// The best known value or bounds for `rn_k(C_n)`.
///
/// ```
/// use radiok::dispatch::{resolve, RnValue};
///
/// let s = resolve(16, 10).unwrap();
/// assert_eq!(s.value, RnValue::Exact { value: 66 });
/// assert_eq!(s.provenance(), "Thm 3.4 Case 1");
///
/// let s = resolve(21, 12).unwrap();
/// assert_eq!(s.value, RnValue::Bounds { lower: 90, upper: None });
/// ```
pub fn resolve(n: u64, k: u64) -> Result<RnStatus> {
    let rules = applicable_rules(n, k)?;
    let first = rules
        .first()
        .expect("every instance with k >= d is covered by some rule");
    let value = if first.is_exact() {
        RnValue::Exact { value: first.lower }
    } else {
        RnValue::Bounds {
            lower: first.lower,
            upper: first.upper,
        }
    };
    Ok(RnStatus {
        n,
        k,
        value,
        rule: first.rule,
        construction_available: classify(n, k)?.is_some(),
    })
}
