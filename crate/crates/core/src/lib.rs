//! Exact computer algebra for bounded weight modules over the Lie algebra
//! `W_n^+` of polynomial vector fields on `C^n`.
//!
//! Every construction is exact: scalars are rationals, and free parameters
//! (such as the `a`, `b` of the intermediate series) are formal polynomial
//! indeterminates, so an identity that vanishes here vanishes for every
//! complex value.

pub mod cover;
pub mod exact;
pub mod glnmod;
pub mod kweight;
pub mod lincomb;
pub mod par;
pub mod report;
pub mod series;
pub mod tensormod;
pub mod uea;
pub mod witt;
