//! Exact computer algebra for Bernstein-Sato annihilator computations.
//!
//! * [`arith`]: rationals, univariate polynomials, separated products.
//! * [`snf`]: matrices over `Z` and `Q[s]`, Smith normal form, annihilators
//!   of elements in finitely presented modules.
//! * [`ts`]: annihilators of tensor products of cyclic torsion elements,
//!   with independent computation routes and a randomized harness.
//! * [`dmod`]: a graded model of `R_f[s] f^s` for monomials `f`, its
//!   operator actions, b-functions and V-filtration membership.
//! * [`parse`]: polynomial and operator-word text syntax.
//! * [`report`]: named checks rendered as text or JSON lines.

pub mod arith;
pub mod dmod;
pub mod parse;
pub mod par;
pub mod report;
pub mod snf;
pub mod ts;

extern crate self as bspid;
