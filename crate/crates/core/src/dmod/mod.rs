//! Graded model of `B_{f,+} = R_f[s] f^s` for `f = x^n` and `f = x^n y^m`.
//!
//! The module is free over `Q[s]` with basis `x^a f^s`, `a` in `Z^k`. Every
//! operator letter is homogeneous, so a submodule generated by homogeneous
//! elements is a direct sum of principal ideals, one per degree.

mod bfun;
mod closure;
mod config;
mod element;
mod suite;

pub use bfun::{
    bernstein_sato_monomial, functional_equation_bfunction, generalized_bfunction, level, v_membership,
    BFunctionJson, BFunctionResult, MAX_WINDOW_DOUBLINGS,
};
pub use closure::{generate_submodule, GradedSubmodule, MAX_ENLARGEMENTS};
pub use config::{EngineConfig, Factor, DEFAULT_MARGIN, DEFAULT_MAX_WORD_LENGTH, DEFAULT_WINDOW};
pub use element::{
    apply_operator, element_from_ast, parse_graded_element, tensor_element, Degree, GradedElement, Letter,
    OperatorWord,
};
pub use suite::{paper_example_suite, verify_theorem_monomials, DERIVED_PRODUCT_EXAMPLE};

use crate::parse::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DmodError {
    #[error("engine configuration: {0}")]
    Config(String),
    #[error("unknown operator letter '{0}' for this engine")]
    UnknownLetter(String),
    #[error("degree {degree:?} lies outside the window (limit {limit}); enlarge the window")]
    WindowOverflow { degree: Degree, limit: i64 },
    #[error("element is not homogeneous ({0} degrees in its support)")]
    NonHomogeneous(usize),
    #[error("element is zero")]
    ZeroElement,
    #[error("ideals inside window {window} did not stabilize after {enlargements} enlargements")]
    NotStable { window: i64, enlargements: usize },
    #[error("generation did not close within {rounds} rounds ({nonzero} nonzero degrees so far)")]
    RoundsExceeded { rounds: usize, nonzero: usize },
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Parse(#[from] ParseError),
}
