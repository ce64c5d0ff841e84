//! Explicit labelings of `C_n` built from coset-structured jump schedules.
//!
//! Each construction family fixes a jump schedule (one jump per step) and a
//! label-gap schedule. The walk visits the cosets of a cyclic subgroup one or
//! two at a time, switching cosets with a slightly shorter jump. Every builder
//! validates its own output before returning: the walk must be a permutation,
//! the labeling must pass the verifier, and the span must equal the value the
//! family is known to achieve.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclic::{CycleInstance, ParityClass};
use crate::error::{Error, Result};
use crate::jump::Schedule;
use crate::verify::{verify_full, verify_reduced, Labeling, Provenance};

/// Above this size builders validate with the linear-time local check
/// instead of the quadratic pairwise one.
pub const FULL_VALIDATION_MAX_N: u64 = 300;

/// The construction families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseId {
    /// `k ≥ n − 3`, `n` odd: constant jump `d`.
    LargeKOdd,
    /// `k ≥ n − 3`, `n` even: jumps alternate `d`, `d − 1`.
    LargeKEven,
    /// `n`, `k` both even, `k ≤ n − 4`: one or two cosets of `⟨q − m − 1⟩` at a time.
    SameParityEven,
    /// `n`, `k` both odd with `Φ` even: jump `z`, stepping to the next coset of `⟨z⟩` with `z + 1`.
    SameParityOddEvenPhi,
    /// `n`, `k` both odd with `Φ` odd and `gcd(n, n − 2z) = 1`: constant jump `z`.
    SameParityOddCoprime,
    /// `n`, `k` both odd with `Φ` odd and `c = gcd(n, n − 2z) > 1`: pairs of cosets, then the last coset alone.
    SameParityOddCosets,
    /// `n` even, `k` odd, `k < n − 3`.
    EvenOdd,
    /// `n` odd, `k` even, `gcd(n, h) = 1`, `h` odd: constant jump `(n − h)/2`.
    OddEvenCoprime,
    /// `n` odd, `k` even, `h | n`.
    OddEvenDivisor,
}

impl CaseId {
    /// Citation tag used in provenance fields.
    pub fn tag(self) -> &'static str {
        match self {
            CaseId::LargeKOdd | CaseId::LargeKEven => "Thm 3.2",
            CaseId::SameParityEven => "Thm 3.4 Case 1",
            CaseId::SameParityOddEvenPhi => "Thm 3.4 Case 2.1",
            CaseId::SameParityOddCoprime => "Thm 3.4 Case 2.2.1",
            CaseId::SameParityOddCosets => "Thm 3.4 Case 2.2.2",
            CaseId::EvenOdd => "Thm 4.3",
            CaseId::OddEvenCoprime => "Thm 4.5",
            CaseId::OddEvenDivisor => "Thm 4.6",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Parameters of a construction. Fields that a family does not use are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseParams {
    pub case: CaseId,
    pub n: u64,
    pub k: u64,
    pub q: Option<u64>,
    pub m: Option<u64>,
    /// `n mod 4`.
    pub t: Option<u64>,
    pub h: Option<u64>,
    pub z: Option<u64>,
    pub s: Option<u64>,
    pub c: Option<u64>,
    pub p_star: Option<u64>,
}

impl CaseParams {
    fn new(case: CaseId, n: u64, k: u64) -> Self {
        CaseParams {
            case,
            n,
            k,
            q: None,
            m: None,
            t: None,
            h: None,
            z: None,
            s: None,
            c: None,
            p_star: None,
        }
    }

    fn field(&self, name: &'static str, value: Option<u64>) -> Result<u64> {
        value.ok_or_else(|| {
            Error::InvalidArgument(format!("{} parameters lack {name}", self.case.tag()))
        })
    }

    /// The span this family's labeling attains.
    pub fn expected_span(&self) -> u64 {
        let inst = CycleInstance::new(self.n, self.k).expect("params come from a valid instance");
        let (n, k) = (self.n, self.k);
        match self.case {
            CaseId::LargeKOdd => (n - 1) / 2 * (2 * k + 3 - n),
            CaseId::LargeKEven => (n - 2) / 2 * (2 * k + 3 - n) + k + 1 - n / 2,
            CaseId::EvenOdd => inst.lb() + self.p_star.unwrap_or(1) - 1,
            CaseId::OddEvenDivisor => inst.lb() + (self.h.unwrap_or(1) - 1) / 2,
            _ => inst.lb(),
        }
    }
}

fn precondition(case: &'static str, n: u64, k: u64) -> Error {
    Error::Precondition { case, n, k }
}

/// Parameters for the `k ≥ n − 3` family.
pub fn large_k_params(n: u64, k: u64) -> Result<CaseParams> {
    let inst = CycleInstance::new(n, k)?;
    if k + 3 < n {
        return Err(precondition("Thm 3.2", n, k));
    }
    let case = if n % 2 == 1 {
        CaseId::LargeKOdd
    } else {
        CaseId::LargeKEven
    };
    Ok(CaseParams {
        q: Some(inst.diameter()),
        ..CaseParams::new(case, n, k)
    })
}

/// Parameters for the same-parity family, `⌊n/2⌋ ≤ k ≤ n − 3`, `n ≡ k (mod 2)`.
pub fn same_parity_params(n: u64, k: u64) -> Result<CaseParams> {
    let inst = CycleInstance::new(n, k)?;
    if inst.parity() != ParityClass::Same || k + 3 > n {
        return Err(precondition("Thm 3.4", n, k));
    }
    let d = inst.diameter();
    let q = n / 4;
    let t = n % 4;
    if n.is_multiple_of(2) {
        // n = 4q + t, k = 2q + 2m + t, t ∈ {0, 2}
        let m = (k - 2 * q - t) / 2;
        let h = q - m - 1;
        return Ok(CaseParams {
            q: Some(q),
            m: Some(m),
            t: Some(t),
            h: Some(h),
            p_star: Some(d.gcd(&h)),
            ..CaseParams::new(CaseId::SameParityEven, n, k)
        });
    }
    // n = 4q + t, k = 2q + 2m + 1, t ∈ {1, 3}
    let m = (k - 2 * q - 1) / 2;
    let z = (d + q + m + 1).div_ceil(2);
    let base = CaseParams {
        q: Some(q),
        m: Some(m),
        t: Some(t),
        z: Some(z),
        ..CaseParams::new(CaseId::SameParityOddEvenPhi, n, k)
    };
    if inst.phi() % 2 == 0 {
        return Ok(CaseParams {
            s: Some(n / n.gcd(&z)),
            ..base
        });
    }
    let h = n - 2 * z;
    let c = n.gcd(&h);
    let case = if c == 1 {
        CaseId::SameParityOddCoprime
    } else {
        CaseId::SameParityOddCosets
    };
    Ok(CaseParams {
        case,
        h: Some(h),
        c: Some(c),
        ..base
    })
}

/// Parameters for `n` even, `k` odd, `⌊n/2⌋ ≤ k < n − 3`.
pub fn even_odd_params(n: u64, k: u64) -> Result<CaseParams> {
    let inst = CycleInstance::new(n, k)?;
    if inst.parity() != ParityClass::EvenOdd {
        return Err(precondition("Thm 4.3", n, k));
    }
    let gap = inst
        .mismatch_gap()
        .ok_or_else(|| precondition("Thm 4.3", n, k))?;
    let q = n / 4;
    Ok(CaseParams {
        q: Some(q),
        m: Some((k - 2 * q - 1) / 2),
        t: Some(n % 4),
        h: Some(gap.h),
        c: Some(gap.p),
        p_star: Some(gap.p_star),
        ..CaseParams::new(CaseId::EvenOdd, n, k)
    })
}

/// Parameters for `n` odd, `k` even, `k < n − 3`, `gcd(n, h) = 1`, `h` odd.
pub fn odd_even_coprime_params(n: u64, k: u64) -> Result<CaseParams> {
    let inst = CycleInstance::new(n, k)?;
    let gap = match (inst.parity(), inst.mismatch_gap()) {
        (ParityClass::OddEven, Some(g)) if g.p == 1 && g.h % 2 == 1 => g,
        _ => return Err(precondition("Thm 4.5", n, k)),
    };
    Ok(CaseParams {
        h: Some(gap.h),
        c: Some(gap.p),
        ..CaseParams::new(CaseId::OddEvenCoprime, n, k)
    })
}

/// Parameters for `n = 4q + i`, `k = 2q + 2m + i − 1`, `0 ≤ m ≤ q − 2`, `h = q − m` dividing `n`.
pub fn odd_even_divisor_params(n: u64, k: u64) -> Result<CaseParams> {
    let inst = CycleInstance::new(n, k)?;
    let gap = match (inst.parity(), inst.mismatch_gap()) {
        (ParityClass::OddEven, Some(g)) if n.is_multiple_of(g.h) => g,
        _ => return Err(precondition("Thm 4.6", n, k)),
    };
    let q = n / 4;
    let i = n % 4;
    let m = (k + 1 - i - 2 * q) / 2;
    debug_assert_eq!(q - m, gap.h);
    Ok(CaseParams {
        q: Some(q),
        m: Some(m),
        t: Some(i),
        h: Some(gap.h),
        c: Some(gap.p),
        ..CaseParams::new(CaseId::OddEvenDivisor, n, k)
    })
}

/// Picks the construction family for `(n, k)`, or `None` when no explicit
/// construction is known. Families are tried in the order large-k,
/// same-parity, odd/even divisor, odd/even coprime, even/odd.
pub fn classify(n: u64, k: u64) -> Result<Option<CaseParams>> {
    let inst = CycleInstance::new(n, k)?;
    if k + 3 >= n {
        return large_k_params(n, k).map(Some);
    }
    Ok(match inst.parity() {
        ParityClass::Same => Some(same_parity_params(n, k)?),
        ParityClass::EvenOdd => Some(even_odd_params(n, k)?),
        ParityClass::OddEven => odd_even_divisor_params(n, k)
            .or_else(|_| odd_even_coprime_params(n, k))
            .ok(),
    })
}

/// A validated labeling together with the schedule that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    params: CaseParams,
    schedule: Schedule,
    labeling: Labeling,
}

impl Construction {
    pub fn params(&self) -> &CaseParams {
        &self.params
    }

    pub fn schedule(&self) -> &Schedule {
        &self.schedule
    }

    pub fn labeling(&self) -> &Labeling {
        &self.labeling
    }

    pub fn into_labeling(self) -> Labeling {
        self.labeling
    }
}

fn integrity(params: &CaseParams, reason: String, schedule: String) -> Error {
    Error::ConstructionIntegrity {
        case: params.case.tag(),
        n: params.n,
        k: params.k,
        reason,
        schedule,
    }
}

fn finish(
    params: CaseParams,
    jump: impl Fn(u64) -> u64,
    gap: impl Fn(u64) -> u64,
) -> Result<Construction> {
    let n = params.n;
    let schedule = Schedule::from_fn(n, jump).map_err(|e| integrity(&params, e.to_string(), String::new()))?;
    let walk = schedule.walk();
    if !walk.is_permutation() {
        return Err(integrity(
            &params,
            format!("walk visits only {} of {n} vertices", walk.support().len()),
            schedule.dump(),
        ));
    }
    let mut labels = Vec::with_capacity(n as usize);
    let mut acc = 0;
    labels.push(0);
    for i in 0..n - 1 {
        acc += gap(i);
        labels.push(acc);
    }
    let labeling = Labeling::new(
        n,
        params.k,
        walk.into_terms(),
        labels,
        Provenance::Construction(params.case),
    )
    .map_err(|e| integrity(&params, e.to_string(), schedule.dump()))?;
    let verdict = if n <= FULL_VALIDATION_MAX_N {
        verify_full(&labeling)
    } else {
        verify_reduced(&labeling)
    };
    if let Some(w) = verdict.witness {
        return Err(integrity(&params, w.to_string(), schedule.dump()));
    }
    let expected = params.expected_span();
    if labeling.span() != expected {
        return Err(integrity(
            &params,
            format!("span {} differs from expected {expected}", labeling.span()),
            schedule.dump(),
        ));
    }
    Ok(Construction {
        params,
        schedule,
        labeling,
    })
}

fn expect_params(params: &CaseParams, fresh: Result<CaseParams>, family: &'static str) -> Result<()> {
    match fresh {
        Ok(p) if p == *params => Ok(()),
        _ => Err(precondition(family, params.n, params.k)),
    }
}

/// Alternating floor/ceil halves of `phi`, starting with the floor at even steps.
fn half(phi: u64, i: u64) -> u64 {
    if i.is_multiple_of(2) {
        phi / 2
    } else {
        phi - phi / 2
    }
}

/// `k ≥ n − 3`.
pub fn build_large_k(n: u64, k: u64) -> Result<Construction> {
    let params = large_k_params(n, k)?;
    let d = n / 2;
    if n % 2 == 1 {
        finish(params, |_| d, |_| k + 1 - d)
    } else {
        finish(
            params,
            |i| if i % 2 == 0 { d } else { d - 1 },
            |i| if i % 2 == 0 { k + 1 - d } else { k + 2 - d },
        )
    }
}

/// `n ≡ k (mod 2)`, `⌊n/2⌋ ≤ k ≤ n − 3`. Attains `LB(n, k)`.
pub fn build_same_parity(params: &CaseParams) -> Result<Construction> {
    expect_params(params, same_parity_params(params.n, params.k), "Thm 3.4")?;
    let p = *params;
    let (n, k) = (p.n, p.k);
    let inst = CycleInstance::new(n, k)?;
    let (d, phi) = (inst.diameter(), inst.phi());
    let q = p.field("q", p.q)?;
    let m = p.field("m", p.m)?;
    match p.case {
        CaseId::SameParityEven => {
            let t = p.field("t", p.t)?;
            let h = p.field("h", p.h)?;
            // The pair (d, d − h) covers n/p* vertices before it closes up.
            let period = n / p.field("p_star", p.p_star)?;
            finish(
                p,
                |i| match (i % 2, (i + 1) % period) {
                    (0, _) => d,
                    (_, 0) => d - h - 1,
                    _ => d - h,
                },
                |i| {
                    if i % 2 == 0 {
                        2 * m + 1 + t / 2
                    } else {
                        q + m + 1 + t / 2
                    }
                },
            )
        }
        CaseId::SameParityOddEvenPhi => {
            let z = p.field("z", p.z)?;
            let s = p.field("s", p.s)?;
            finish(p, |i| if (i + 1) % s == 0 { z + 1 } else { z }, |_| phi / 2)
        }
        CaseId::SameParityOddCoprime => {
            let z = p.field("z", p.z)?;
            finish(p, |_| z, |i| half(phi, i))
        }
        CaseId::SameParityOddCosets => {
            let h = p.field("h", p.h)?;
            let coset = n / p.field("c", p.c)?;
            let first = k + 1 - d;
            finish(
                p,
                |i| {
                    if i >= n - coset {
                        (n - h) / 2
                    } else if i % 2 == 0 {
                        d
                    } else if (i + 1) % (2 * coset) == 0 {
                        d - h
                    } else {
                        d - h + 1
                    }
                },
                |i| {
                    if i >= n - coset {
                        half(phi, i)
                    } else if i % 2 == 0 {
                        first
                    } else {
                        phi - first
                    }
                },
            )
        }
        _ => Err(precondition("Thm 3.4", n, k)),
    }
}

/// `n` even, `k` odd, `⌊n/2⌋ ≤ k < n − 3`. Attains `LB(n, k) + gcd(d, h) − 1`.
pub fn build_even_odd(params: &CaseParams) -> Result<Construction> {
    expect_params(params, even_odd_params(params.n, params.k), "Thm 4.3")?;
    let p = *params;
    let (n, k) = (p.n, p.k);
    let d = n / 2;
    let h = p.field("h", p.h)?;
    let p_star = p.field("p_star", p.p_star)?;
    let period = n / p_star;
    let is_switch = move |i: u64| (i + 1).is_multiple_of(period) && (i + 1) / period < p_star;
    finish(
        p,
        |i| match i % 2 {
            0 => d,
            _ if is_switch(i) => d - h - 1,
            _ => d - h,
        },
        |i| match i % 2 {
            0 => k + 1 - d,
            _ if is_switch(i) => d - h + 1,
            _ => d - h,
        },
    )
}

/// `n` odd, `k` even, `k < n − 3`, `gcd(n, h) = 1` with `h` odd. Attains `LB(n, k)`.
pub fn build_odd_even_coprime(n: u64, k: u64) -> Result<Construction> {
    let p = odd_even_coprime_params(n, k)?;
    let h = p.field("h", p.h)?;
    let phi = CycleInstance::new(n, k)?.phi();
    finish(p, |_| (n - h) / 2, |i| half(phi, i))
}

/// `n` odd, `k` even, `h | n`. Attains `LB(n, k) + (h − 1)/2`.
pub fn build_odd_even_divisor(params: &CaseParams) -> Result<Construction> {
    expect_params(params, odd_even_divisor_params(params.n, params.k), "Thm 4.6")?;
    let p = *params;
    let (n, k) = (p.n, p.k);
    let inst = CycleInstance::new(n, k)?;
    let (d, phi) = (inst.diameter(), inst.phi());
    let h = p.field("h", p.h)?;
    let coset = n / h;
    let first = k + 1 - d;
    finish(
        p,
        |i| {
            if i >= n - coset {
                (n - h) / 2
            } else if i % 2 == 0 {
                d
            } else if (i + 1) % (2 * coset) == 0 {
                d - h
            } else {
                d - h + 1
            }
        },
        |i| {
            if i >= n - coset {
                half(phi, i)
            } else if i % 2 == 0 {
                first
            } else if (i + 1) % (2 * coset) == 0 {
                phi - first + 1
            } else {
                phi - first
            }
        },
    )
}

/// Builds with whichever family [`classify`] selects.
pub fn build_params(params: &CaseParams) -> Result<Construction> {
    match params.case {
        CaseId::LargeKOdd | CaseId::LargeKEven => build_large_k(params.n, params.k),
        CaseId::SameParityEven
        | CaseId::SameParityOddEvenPhi
        | CaseId::SameParityOddCoprime
        | CaseId::SameParityOddCosets => build_same_parity(params),
        CaseId::EvenOdd => build_even_odd(params),
        CaseId::OddEvenCoprime => build_odd_even_coprime(params.n, params.k),
        CaseId::OddEvenDivisor => build_odd_even_divisor(params),
    }
}

/// The construction for `(n, k)`, or `None` if no family covers it.
pub fn build(n: u64, k: u64) -> Result<Option<Construction>> {
    classify(n, k)?.map(|p| build_params(&p)).transpose()
}
