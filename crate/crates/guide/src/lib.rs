//! Runs the book's code snippets as doc-tests. One module per chapter, so a
//! failure names the chapter it came from.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/cycles-and-bounds.md")]
pub mod cycles_and_bounds {}
#[doc = include_str!("../../../book/src/jump-sequences.md")]
pub mod jump_sequences {}
#[doc = include_str!("../../../book/src/constructions.md")]
pub mod constructions {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
#[doc = include_str!("../../../book/src/known-values.md")]
pub mod known_values {}
#[doc = include_str!("../../../book/src/oracle.md")]
pub mod oracle {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
