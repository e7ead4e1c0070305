//! Multi-indices, `A_n^+`, the Weyl algebra `K_n^+`, the Witt algebra
//! `W_n^+`, the semidirect product `W_n^+ ⋉ A_n^+` and the Lie algebra
//! `A_n^+ · W_n^+`.
//!
//! Directions are 0-based in the API and 1-based in every text or JSON form.

mod awlie;
mod multi_index;
mod parse;
mod poly_a;
mod tilde;
mod vector_field;
mod weyl;

use thiserror::Error;

pub use awlie::{build_x, AWLieElem, AwKey};
pub use multi_index::MultiIndex;
pub use parse::parse_witt;
pub use poly_a::PolyA;
pub use tilde::TildeElem;
pub use vector_field::{Grading, WittElem, WittGen};
pub use weyl::WeylElem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WittError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("element is not in m·Delta: term {0} has |alpha| = 0")]
    NotInMDelta(String),
    #[error("parse error: {0}")]
    Parse(String),
}
