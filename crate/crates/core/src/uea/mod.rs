//! PBW normal ordering in `U(W_n^+)` and in `A_n^+ · U(W_n^+)`, the
//! quadratic elements `omega`/`Omega`, operator-identity checks, and the
//! bridge that lets enveloping-algebra elements act on modules.

mod action;
mod identities;
mod omega;
mod pbw;
mod ubar;

use thiserror::Error;

use crate::witt::WittError;

pub use action::{
    act_gen_on_vec, act_on_module, act_ubar_on_module, AwModule, TrivialModule, WeightBox,
    WittModule,
};
pub use identities::{
    big_omega_identity_residue, centralizer_residues, check_basis_change, check_big_omega_identity,
    check_big_omega_recursion, check_omega_identification, check_omega_recursion,
    check_pi2_homomorphism, check_propagation_steps, check_t_centralizer,
    propagation_expansion_residue, IdentityReport, PropagationIndices,
};
pub use omega::{build_omega, OmegaSpec};
pub use pbw::{NormalOrderer, PbwWord, UElem, DEFAULT_BUDGET};
pub use ubar::{UbarElem, UbarFactor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UeaError {
    #[error("normal ordering exceeded the budget of {budget} monomials")]
    BudgetExceeded { budget: usize },
    #[error("negative exponent: {0}")]
    NegativeExponent(String),
    #[error("bad index: {0}")]
    BadIndex(String),
    #[error("weight offset {0:?} lies outside the materialized window")]
    WindowExceeded(Vec<i64>),
    #[error(transparent)]
    Witt(#[from] WittError),
}
