//! Arithmetic on `Z_n`: cycle distance, cyclic subgroups, and the
//! two-step gap `Φ(n, k)` together with the lower bound `LB(n, k)` it
//! induces on the radio-k-number of `C_n`.
//!
//! Vertices of `C_n` are the residues `0..n`. All arithmetic is exact
//! integer arithmetic on `u64`; `n` is capped at [`MAX_N`] and `k` at
//! [`MAX_K`] so that no intermediate product can overflow.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_N: u64 = 1_000_000;
pub const MAX_K: u64 = 1_000_000_000_000;

/// Parities of `(n, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParityClass {
    /// `n ≡ k (mod 2)`.
    Same,
    /// `n` even, `k` odd.
    EvenOdd,
    /// `n` odd, `k` even.
    OddEven,
}

impl ParityClass {
    pub fn of(n: u64, k: u64) -> Self {
        match (n % 2, k % 2) {
            (a, b) if a == b => ParityClass::Same,
            (0, _) => ParityClass::EvenOdd,
            _ => ParityClass::OddEven,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ParityClass::Same => "same",
            ParityClass::EvenOdd => "even-odd",
            ParityClass::OddEven => "odd-even",
        }
    }
}

/// A validated problem instance: the cycle `C_n` and the level `k ≥ ⌊n/2⌋`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CycleInstance {
    n: u64,
    k: u64,
}

impl CycleInstance {
    pub fn new(n: u64, k: u64) -> Result<Self> {
        if n < 3 {
            return Err(Error::CycleTooSmall { n });
        }
        if n > MAX_N {
            return Err(Error::CycleTooLarge { n, max: MAX_N });
        }
        if k > MAX_K {
            return Err(Error::LevelTooLarge { k, max: MAX_K });
        }
        if k < n / 2 {
            return Err(Error::LevelBelowDiameter { n, k, d: n / 2 });
        }
        Ok(CycleInstance { n, k })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// The diameter `⌊n/2⌋`.
    pub fn diameter(&self) -> u64 {
        self.n / 2
    }

    pub fn parity(&self) -> ParityClass {
        ParityClass::of(self.n, self.k)
    }

    /// `⌈(3k + 3 − n) / 2⌉`. The numerator is positive whenever `k ≥ ⌊n/2⌋`.
    pub fn phi(&self) -> u64 {
        (3 * self.k + 3 - self.n).div_ceil(2)
    }

    pub fn lb(&self) -> u64 {
        let (n, k, phi) = (self.n, self.k, self.phi());
        if n % 2 == 0 {
            phi * (n - 2) / 2 + k + 1 - n / 2
        } else {
            phi * (n - 1) / 2
        }
    }

    /// The smallest admissible single label gap, `k + 1 − d`.
    pub fn min_gap(&self) -> u64 {
        self.k + 1 - self.diameter()
    }

    /// Gap data for the parity-mismatch regime `n ≢ k`, `k < n − 3`.
    pub fn mismatch_gap(&self) -> Option<MismatchGap> {
        if self.parity() == ParityClass::Same || self.k + 3 >= self.n {
            return None;
        }
        let h = (self.n - self.k - 1) / 2;
        let d = self.diameter();
        let p = self.n.gcd(&h);
        Some(MismatchGap {
            h,
            p,
            p_star: d.gcd(&h),
            d_in_h: d.is_multiple_of(p),
        })
    }
}

/// The forced distance `h = (n − k − 1)/2` between `x_i` and `x_{i+2}` when
/// two consecutive gaps sum to exactly `Φ` and `n`, `k` differ in parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchGap {
    pub h: u64,
    /// `gcd(n, h)`.
    pub p: u64,
    /// `gcd(⌊n/2⌋, h)`.
    pub p_star: u64,
    /// Whether `⌊n/2⌋ ∈ ⟨h⟩`.
    pub d_in_h: bool,
}

pub fn cycle_distance(u: u64, v: u64, n: u64) -> Result<u64> {
    if u >= n {
        return Err(Error::OutOfRange { what: "u", value: u, n });
    }
    if v >= n {
        return Err(Error::OutOfRange { what: "v", value: v, n });
    }
    Ok(distance_unchecked(u, v, n))
}

#[inline]
pub(crate) fn distance_unchecked(u: u64, v: u64, n: u64) -> u64 {
    let a = u.abs_diff(v);
    a.min(n - a)
}

pub fn phi(n: u64, k: u64) -> Result<u64> {
    Ok(CycleInstance::new(n, k)?.phi())
}

pub fn lb(n: u64, k: u64) -> Result<u64> {
    Ok(CycleInstance::new(n, k)?.lb())
}

/// The cyclic subgroup `⟨g⟩ ≤ Z_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    n: u64,
    generator: u64,
    elements: Vec<u64>,
    members: Vec<bool>,
}

impl Subgroup {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    /// Elements in generation order `0, g, 2g, …`.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, x: u64) -> bool {
        self.members.get(x as usize).copied().unwrap_or(false)
    }

    /// Index of the coset `x + ⟨g⟩` among the `gcd(n, g)` cosets.
    pub fn coset_of(&self, x: u64) -> u64 {
        x % self.n.gcd(&self.generator)
    }
}

pub fn subgroup(n: u64, g: u64) -> Result<Subgroup> {
    if n == 0 || n > MAX_N {
        return Err(Error::InvalidArgument(format!("modulus {n} out of range")));
    }
    if g >= n {
        return Err(Error::OutOfRange { what: "generator", value: g, n });
    }
    let mut members = vec![false; n as usize];
    let mut elements = Vec::new();
    let mut x = 0;
    while !members[x as usize] {
        members[x as usize] = true;
        elements.push(x);
        x = (x + g) % n;
    }
    Ok(Subgroup {
        n,
        generator: g,
        elements,
        members,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HalvingClass {
    /// `n/2 ∈ ⟨h⟩` and `gcd(n, h) = gcd(n/2, h)`.
    Half,
    /// `n/2 ∉ ⟨h⟩` and `gcd(n, h) = 2·gcd(n/2, h)`.
    Double,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalvingGcd {
    pub class: HalvingClass,
    pub gcd_n: u64,
    pub gcd_half: u64,
}

/// Relates `gcd(n, h)` to `gcd(n/2, h)` for even `n`, according to whether
/// `n/2` lies in `⟨h⟩`.
pub fn gcd_halving_classify(n: u64, h: u64) -> Result<HalvingGcd> {
    if !n.is_multiple_of(2) || n == 0 {
        return Err(Error::InvalidArgument(format!("modulus {n} must be even")));
    }
    if h == 0 || h >= n {
        return Err(Error::OutOfRange { what: "h", value: h, n });
    }
    let gcd_n = n.gcd(&h);
    let gcd_half = (n / 2).gcd(&h);
    // ⟨h⟩ is exactly the multiples of gcd(n, h).
    let class = if (n / 2).is_multiple_of(gcd_n) {
        HalvingClass::Half
    } else {
        HalvingClass::Double
    };
    Ok(HalvingGcd {
        class,
        gcd_n,
        gcd_half,
    })
}
