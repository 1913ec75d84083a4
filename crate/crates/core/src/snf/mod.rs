//! Matrices over Euclidean domains, Smith normal form with recorded
//! transforms, and element annihilators in finitely presented modules.

mod io;
mod matrix;
mod module;
mod smith;

pub use io::{parse_int, AnyMatrix, FormatError, MatrixJson, ModuleJson, RingTag, SnfJson};
pub use matrix::Matrix;
pub use module::{is_basis_extendable, FinPresModule};
pub use smith::{smith_normal_form, SnfResult};

#[cfg(test)]
#[path = "../../tests/common/oracle.rs"]
pub(crate) mod test_support;
