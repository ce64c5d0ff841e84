//! Radio-k-numbers of cycles.
//!
//! A radio-k-labeling of a graph assigns non-negative integers to vertices
//! so that `|f(u) − f(v)| ≥ k + 1 − d(u, v)` for every pair; its span is the
//! largest label, and `rn_k(G)` is the smallest possible span. This crate
//! works with the cycle `C_n` for `k ≥ ⌊n/2⌋`:
//!
//! - [`cyclic`]: distance on `Z_n`, subgroups, `Φ(n, k)` and the lower bound `LB(n, k)`.
//! - [`jump`]: jump sequences and the walks they generate.
//! - [`construct`]: explicit labelings for every family with a known construction.
//! - [`verify`]: labelings and their verification.
//! - [`dispatch`]: the exact value or best bounds known for each `(n, k)`.
//! - [`oracle`]: exact values for small `n` by branch and bound.
//! - [`audit`]: cross-checks between all of the above.
//!
//! ```
//! use radiok::construct::build;
//! use radiok::verify::verify_full;
//!
//! let c = build(16, 10).unwrap().expect("covered");
//! assert_eq!(c.labeling().span(), 66);
//! assert!(verify_full(c.labeling()).valid);
//! ```

pub mod audit;
pub mod construct;
pub mod cyclic;
pub mod dispatch;
pub mod error;
pub mod jump;
pub mod oracle;
pub mod verify;

pub use error::{Error, Result};
