//! `--n` ranges and `--k` specifications for `table` and `scan`.

use std::ops::RangeInclusive;
use std::str::FromStr;

/// `a..b` (inclusive) or a single value.
pub fn parse_n_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let (lo, hi) = parse_span(s)?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

fn parse_span(s: &str) -> Result<(u64, u64), String> {
    let s = s.trim();
    match s.split_once("..") {
        Some((a, b)) => Ok((parse_int(a)?, parse_int(b)?)),
        None => {
            let v = parse_int(s)?;
            Ok((v, v))
        }
    }
}

fn parse_int(s: &str) -> Result<u64, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("expected a non-negative integer, got {s:?}"))
}

/// Which levels `k` to tabulate for each `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KSpec {
    /// `k = ⌊n/2⌋`.
    Diam,
    /// `k = ⌊n/2⌋ + 1`.
    DiamPlusOne,
    /// `⌊n/2⌋ ≤ k ≤ n + 2`.
    All,
    /// Explicit inclusive range; levels below the diameter are skipped.
    Range(u64, u64),
}

impl KSpec {
    pub fn levels(self, n: u64) -> RangeInclusive<u64> {
        let d = n / 2;
        match self {
            KSpec::Diam => d..=d,
            KSpec::DiamPlusOne => d + 1..=d + 1,
            KSpec::All => d..=n + 2,
            KSpec::Range(a, b) => a.max(d)..=b,
        }
    }
}

impl FromStr for KSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "diam" => Ok(KSpec::Diam),
            "diam+1" => Ok(KSpec::DiamPlusOne),
            "all" => Ok(KSpec::All),
            other => {
                let (a, b) = parse_span(other)
                    .map_err(|e| format!("{e}; expected diam, diam+1, all or a..b"))?;
                if a > b {
                    return Err(format!("empty range {other:?}"));
                }
                Ok(KSpec::Range(a, b))
            }
        }
    }
}
