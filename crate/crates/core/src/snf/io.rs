use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{Euclidean, Poly, Var};
use crate::parse::{parse_poly, parse_poly_in, ParseError};

use super::{FinPresModule, Matrix, SnfResult};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("unknown ring tag '{0}' (expected ZZ or QS:<var>)")]
    Ring(String),
    #[error("{0}")]
    Shape(String),
    #[error("entry '{0}' is not an integer")]
    NotInteger(String),
}

/// The two Euclidean domains the library works over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingTag {
    Integers,
    Univariate(Var),
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::Integers => write!(f, "ZZ"),
            RingTag::Univariate(v) => write!(f, "QS:{v}"),
        }
    }
}

impl FromStr for RingTag {
    type Err = FormatError;

    fn from_str(text: &str) -> Result<RingTag, FormatError> {
        if text == "ZZ" {
            return Ok(RingTag::Integers);
        }
        text.strip_prefix("QS:")
            .and_then(|v| v.parse::<Var>().ok())
            .map(RingTag::Univariate)
            .ok_or_else(|| FormatError::Ring(text.to_string()))
    }
}

/// On-disk matrix: entries are strings in the polynomial grammar.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub ring: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

/// Relations matrix plus one element of the ambient free module.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub relations: MatrixJson,
    pub element: Vec<String>,
}

/// Output of the `snf` command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SnfJson {
    pub ring: String,
    pub rank: usize,
    pub d: Vec<String>,
    pub u: Vec<Vec<String>>,
    pub v: Vec<Vec<String>>,
}

/// A matrix over whichever ring its tag names.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMatrix {
    Integers(Matrix<BigInt>),
    Univariate(Var, Matrix<Poly>),
}

pub fn parse_int(text: &str) -> Result<BigInt, FormatError> {
    let p = parse_poly(text, &[])?.to_poly(Var::S)?;
    let c = p.coeff(0);
    if !p.is_constant() || !c.is_integer() {
        return Err(FormatError::NotInteger(text.to_string()));
    }
    Ok(c.to_integer())
}

fn parse_entry_vec<T>(
    texts: &[String],
    parse: &impl Fn(&str) -> Result<T, FormatError>,
) -> Result<Vec<T>, FormatError> {
    texts.iter().map(|t| parse(t)).collect()
}

fn rows_of<R: Euclidean>(m: &Matrix<R>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|e| e.to_string()).collect()).collect()
}

impl MatrixJson {
    fn build<T: Euclidean>(&self, parse: impl Fn(&str) -> Result<T, FormatError>) -> Result<Matrix<T>, FormatError> {
        if self.entries.len() != self.rows {
            return Err(FormatError::Shape(format!("expected {} rows, found {}", self.rows, self.entries.len())));
        }
        let mut rows = Vec::with_capacity(self.rows);
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != self.cols {
                return Err(FormatError::Shape(format!("row {i} has {} entries, expected {}", row.len(), self.cols)));
            }
            rows.push(parse_entry_vec(row, &parse)?);
        }
        Ok(Matrix::from_rows(rows, self.cols))
    }

    pub fn to_matrix(&self) -> Result<AnyMatrix, FormatError> {
        match self.ring.parse::<RingTag>()? {
            RingTag::Integers => Ok(AnyMatrix::Integers(self.build(parse_int)?)),
            RingTag::Univariate(var) => {
                Ok(AnyMatrix::Univariate(var, self.build(|t| Ok(parse_poly_in(t, var)?))?))
            }
        }
    }
}

impl AnyMatrix {
    pub fn ring(&self) -> RingTag {
        match self {
            AnyMatrix::Integers(_) => RingTag::Integers,
            AnyMatrix::Univariate(v, _) => RingTag::Univariate(*v),
        }
    }

    pub fn to_json(&self) -> MatrixJson {
        let (rows, cols, entries) = match self {
            AnyMatrix::Integers(m) => (m.rows(), m.cols(), rows_of(m)),
            AnyMatrix::Univariate(_, m) => (m.rows(), m.cols(), rows_of(m)),
        };
        MatrixJson { ring: self.ring().to_string(), rows, cols, entries }
    }

    pub fn snf_json(&self) -> SnfJson {
        fn pack<R: Euclidean>(ring: String, snf: SnfResult<R>) -> SnfJson {
            SnfJson {
                ring,
                rank: snf.rank,
                d: snf.d.iter().map(|x| x.to_string()).collect(),
                u: rows_of(&snf.u),
                v: rows_of(&snf.v),
            }
        }
        let ring = self.ring().to_string();
        match self {
            AnyMatrix::Integers(m) => pack(ring, super::smith_normal_form(m)),
            AnyMatrix::Univariate(_, m) => pack(ring, super::smith_normal_form(m)),
        }
    }
}

impl ModuleJson {
    /// Canonical annihilator of the element, printed in the module's ring.
    pub fn annihilator(&self) -> Result<String, FormatError> {
        fn run<R: Euclidean>(m: Matrix<R>, delta: Vec<R>) -> Result<String, FormatError> {
            if delta.len() != m.rows() {
                return Err(FormatError::Shape(format!(
                    "element has {} coordinates, ambient rank is {}",
                    delta.len(),
                    m.rows()
                )));
            }
            Ok(FinPresModule::new(m).element_annihilator(&delta).to_string())
        }
        match self.relations.to_matrix()? {
            AnyMatrix::Integers(m) => run(m, parse_entry_vec(&self.element, &parse_int)?),
            AnyMatrix::Univariate(var, m) => {
                run(m, parse_entry_vec(&self.element, &|t: &str| Ok(parse_poly_in(t, var)?))?)
            }
        }
    }
}
