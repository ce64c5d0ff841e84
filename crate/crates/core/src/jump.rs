//! Jump sequences on `Z_n`.
//!
//! A vertex ordering `x_0, x_1, …` of `C_n` is described by clockwise
//! jumps: `x_{i+1} = x_i + j_i (mod n)`. A periodic sequence
//! `(j_0, …, j_{t−1})` is repeated; a [`Schedule`] instead fixes one jump per
//! step and is how the piecewise constructions are expressed.

use std::fmt::Write as _;

use num_integer::Integer;

use crate::cyclic::{subgroup, MAX_N};
use crate::error::{Error, Result};

/// A periodic jump sequence with every jump in `[1, ⌊n/2⌋]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpSequence {
    n: u64,
    jumps: Vec<u64>,
}

impl JumpSequence {
    pub fn new(n: u64, jumps: Vec<u64>) -> Result<Self> {
        check_modulus(n)?;
        if jumps.is_empty() {
            return Err(Error::InvalidArgument("empty jump sequence".into()));
        }
        for &j in &jumps {
            check_jump(j, n)?;
        }
        Ok(JumpSequence { n, jumps })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn jumps(&self) -> &[u64] {
        &self.jumps
    }
}

fn check_modulus(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::CycleTooSmall { n });
    }
    if n > MAX_N {
        return Err(Error::CycleTooLarge { n, max: MAX_N });
    }
    Ok(())
}

fn check_jump(j: u64, n: u64) -> Result<()> {
    if j == 0 || j > n / 2 {
        return Err(Error::OutOfRange {
            what: "jump",
            value: j,
            n,
        });
    }
    Ok(())
}

/// The `n` terms `a_0 = 0, a_1, …, a_{n−1}` of a walk, and the set of
/// residues it visits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedWalk {
    terms: Vec<u64>,
    support: Vec<u64>,
}

impl GeneratedWalk {
    fn from_jumps(n: u64, jumps: impl Iterator<Item = u64>) -> Self {
        let mut terms = Vec::with_capacity(n as usize);
        let mut seen = vec![false; n as usize];
        let mut x = 0u64;
        terms.push(0);
        seen[0] = true;
        for j in jumps.take(n as usize - 1) {
            x = (x + j) % n;
            terms.push(x);
            seen[x as usize] = true;
        }
        let support = (0..n).filter(|&v| seen[v as usize]).collect();
        GeneratedWalk { terms, support }
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    /// Distinct residues visited, ascending.
    pub fn support(&self) -> &[u64] {
        &self.support
    }

    pub fn is_permutation(&self) -> bool {
        self.support.len() == self.terms.len()
    }

    pub fn into_terms(self) -> Vec<u64> {
        self.terms
    }
}

/// Walks `n` terms of the periodic sequence `j` starting from 0.
pub fn generate(j: &JumpSequence) -> GeneratedWalk {
    GeneratedWalk::from_jumps(j.n, j.jumps.iter().copied().cycle())
}

/// Size bound on the set generated by a two-jump sequence `(j0, j1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CosetBound {
    /// `|H|` if `j0 ∈ H`, else `2|H|`, where `H = ⟨n − (j0 + j1)⟩`.
    pub bound: u64,
    /// The actual number of residues visited by the walk.
    pub support: u64,
    pub attained: bool,
}

pub fn coset_bound_check(j0: u64, j1: u64, n: u64) -> Result<CosetBound> {
    let seq = JumpSequence::new(n, vec![j0, j1])?;
    let h = (n - (j0 + j1) % n) % n;
    let group = subgroup(n, h)?;
    let bound = if group.contains(j0 % n) {
        group.order()
    } else {
        2 * group.order()
    };
    let support = generate(&seq).support().len() as u64;
    Ok(CosetBound {
        bound,
        support,
        attained: support == bound,
    })
}

/// A materialized jump schedule: one jump for each step `i ∈ [0, n − 2]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    n: u64,
    jumps: Vec<u64>,
}

impl Schedule {
    /// Evaluates `rule` at every step and checks each jump lies in `[1, ⌊n/2⌋]`.
    pub fn from_fn(n: u64, rule: impl Fn(u64) -> u64) -> Result<Self> {
        check_modulus(n)?;
        let jumps: Vec<u64> = (0..n - 1).map(rule).collect();
        for &j in &jumps {
            check_jump(j, n)?;
        }
        Ok(Schedule { n, jumps })
    }

    pub fn from_jumps(n: u64, jumps: Vec<u64>) -> Result<Self> {
        check_modulus(n)?;
        if jumps.len() as u64 != n - 1 {
            return Err(Error::InvalidArgument(format!(
                "schedule for n = {n} needs {} jumps, got {}",
                n - 1,
                jumps.len()
            )));
        }
        for &j in &jumps {
            check_jump(j, n)?;
        }
        Ok(Schedule { n, jumps })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn jumps(&self) -> &[u64] {
        &self.jumps
    }

    pub fn walk(&self) -> GeneratedWalk {
        GeneratedWalk::from_jumps(self.n, self.jumps.iter().copied())
    }

    /// Comma-separated jumps, as printed by `--trace`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, j) in self.jumps.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{j}");
        }
        out
    }
}

/// Walks the per-step rule `rule` on `Z_n`.
pub fn explicit_order(n: u64, rule: impl Fn(u64) -> u64) -> Result<GeneratedWalk> {
    Ok(Schedule::from_fn(n, rule)?.walk())
}

/// Whether a constant jump `c` visits every vertex, i.e. `gcd(n, c) = 1`.
pub fn constant_jump_is_permutation(n: u64, c: u64) -> bool {
    n.gcd(&c) == 1
}
