//! Radio-k-labelings of `C_n` and their verification.
//!
//! A labeling is stored in ordered form: a vertex ordering `x_0, …, x_{n−1}`
//! and labels `f(x_0) = 0 ≤ f(x_1) ≤ … ≤ f(x_{n−1})`. For `k ≥ ⌊n/2⌋` every
//! valid labeling is injective, so the ordered form loses nothing.
//!
//! Validity is `|f(u) − f(v)| ≥ k + 1 − d(u, v)` for all pairs. For `k ≥ d`
//! it suffices to check the pairs at distance one and two in the ordering
//! ([`verify_reduced`]); for `k ≥ n − 3` consecutive pairs alone suffice
//! ([`verify_consecutive`]).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::construct::CaseId;
use crate::cyclic::{distance_unchecked, CycleInstance};
use crate::error::{Error, Result};

/// Where a labeling came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Construction(CaseId),
    Oracle,
    External,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Construction(case) => f.write_str(case.tag()),
            Provenance::Oracle => f.write_str("oracle"),
            Provenance::External => f.write_str("external"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    instance: CycleInstance,
    order: Vec<u64>,
    labels: Vec<u64>,
    provenance: Provenance,
}

impl Labeling {
    /// Checks the shape of the labeling: `order` is a permutation of `Z_n`,
    /// labels are non-decreasing and start at 0. Radio validity is not
    /// checked here.
    pub fn new(
        n: u64,
        k: u64,
        order: Vec<u64>,
        labels: Vec<u64>,
        provenance: Provenance,
    ) -> Result<Self> {
        let instance = CycleInstance::new(n, k)?;
        check_order(n, &order)?;
        if labels.len() != order.len() {
            return Err(Error::MalformedLabeling(format!(
                "{} labels for {} vertices",
                labels.len(),
                order.len()
            )));
        }
        if labels[0] != 0 {
            return Err(Error::MalformedLabeling(format!(
                "first label is {}, expected 0",
                labels[0]
            )));
        }
        if let Some(i) = labels.windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::MalformedLabeling(format!(
                "labels decrease at position {}",
                i + 1
            )));
        }
        Ok(Labeling {
            instance,
            order,
            labels,
            provenance,
        })
    }

    /// Builds a labeling from a vertex → label assignment by sorting the
    /// vertices by label (ties by vertex) and shifting the smallest label to 0.
    pub fn from_assignment(
        n: u64,
        k: u64,
        assignment: &[u64],
        provenance: Provenance,
    ) -> Result<Self> {
        if assignment.len() as u64 != n {
            return Err(Error::MalformedLabeling(format!(
                "{} labels for {} vertices",
                assignment.len(),
                n
            )));
        }
        let mut order: Vec<u64> = (0..n).collect();
        order.sort_by_key(|&v| (assignment[v as usize], v));
        let base = assignment[order[0] as usize];
        let labels = order
            .iter()
            .map(|&v| assignment[v as usize] - base)
            .collect();
        Labeling::new(n, k, order, labels, provenance)
    }

    pub fn instance(&self) -> CycleInstance {
        self.instance
    }

    pub fn n(&self) -> u64 {
        self.instance.n()
    }

    pub fn k(&self) -> u64 {
        self.instance.k()
    }

    pub fn order(&self) -> &[u64] {
        &self.order
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn span(&self) -> u64 {
        *self.labels.last().expect("labeling is nonempty")
    }

    /// Label gaps `f_i = f(x_{i+1}) − f(x_i)`.
    pub fn gaps(&self) -> Vec<u64> {
        self.labels.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// The label of each vertex, indexed by vertex.
    pub fn assignment(&self) -> Vec<u64> {
        let mut out = vec![0; self.order.len()];
        for (&v, &f) in self.order.iter().zip(&self.labels) {
            out[v as usize] = f;
        }
        out
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }
}

fn check_order(n: u64, order: &[u64]) -> Result<()> {
    if order.len() as u64 != n {
        return Err(Error::MalformedLabeling(format!(
            "ordering has {} vertices, expected {n}",
            order.len()
        )));
    }
    let mut seen = vec![false; n as usize];
    for &v in order {
        if v >= n {
            return Err(Error::MalformedLabeling(format!(
                "vertex {v} is not in Z_{n}"
            )));
        }
        if std::mem::replace(&mut seen[v as usize], true) {
            return Err(Error::MalformedLabeling(format!("duplicate vertex {v}")));
        }
    }
    Ok(())
}

/// A pair violating the radio condition. `i < j` are positions in the
/// ordering, `u = x_i` and `v = x_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub u: u64,
    pub v: u64,
    pub required: u64,
    pub actual: u64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "vertices {} and {} (positions {}, {}) need a label gap of {} but have {}",
            self.u, self.v, self.i, self.j, self.required, self.actual
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub valid: bool,
    pub witness: Option<Violation>,
}

impl Verdict {
    fn from_witness(witness: Option<Violation>) -> Self {
        Verdict {
            valid: witness.is_none(),
            witness,
        }
    }
}

fn check_pair(lab: &Labeling, i: usize, j: usize) -> Option<Violation> {
    let (n, k) = (lab.n(), lab.k());
    let (u, v) = (lab.order[i], lab.order[j]);
    let required = k + 1 - distance_unchecked(u, v, n);
    let actual = lab.labels[j] - lab.labels[i];
    (actual < required).then_some(Violation {
        i,
        j,
        u,
        v,
        required,
        actual,
    })
}

/// Checks every pair. The witness is the violating pair with the smallest
/// positions `(i, j)` in lexicographic order.
pub fn verify_full(lab: &Labeling) -> Verdict {
    let len = lab.order.len();
    let witness = (0..len)
        .flat_map(|i| (i + 1..len).map(move |j| (i, j)))
        .find_map(|(i, j)| check_pair(lab, i, j));
    Verdict::from_witness(witness)
}

/// Checks only pairs one and two apart in the ordering, which decides
/// validity whenever `k ≥ ⌊n/2⌋`.
pub fn verify_reduced(lab: &Labeling) -> Verdict {
    let len = lab.order.len();
    let witness = (0..len - 1).find_map(|i| {
        check_pair(lab, i, i + 1).or_else(|| (i + 2 < len).then(|| check_pair(lab, i, i + 2)).flatten())
    });
    Verdict::from_witness(witness)
}

/// Checks only consecutive pairs. Decides validity when `k ≥ n − 3`.
pub fn verify_consecutive(lab: &Labeling) -> Verdict {
    let witness = (0..lab.order.len() - 1).find_map(|i| check_pair(lab, i, i + 1));
    Verdict::from_witness(witness)
}

/// The pointwise smallest labels compatible with `order`: each label is the
/// least value meeting the constraints against the previous two vertices.
pub fn minimal_labels_for_order(
    order: &[u64],
    n: u64,
    k: u64,
    provenance: Provenance,
) -> Result<Labeling> {
    CycleInstance::new(n, k)?;
    check_order(n, order)?;
    let labels = minimal_labels_unchecked(order, n, k);
    Labeling::new(n, k, order.to_vec(), labels, provenance)
}

pub(crate) fn minimal_labels_unchecked(order: &[u64], n: u64, k: u64) -> Vec<u64> {
    let mut labels: Vec<u64> = Vec::with_capacity(order.len());
    labels.push(0);
    for i in 1..order.len() {
        let mut f = labels[i - 1] + k + 1 - distance_unchecked(order[i - 1], order[i], n);
        if i >= 2 {
            f = f.max(labels[i - 2] + k + 1 - distance_unchecked(order[i - 2], order[i], n));
        }
        labels.push(f);
    }
    labels
}
