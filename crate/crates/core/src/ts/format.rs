use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::lemma::{FactorData, Instance, LemmaRing, Mode, RawInclusion, TsError, TsInstance};
use crate::arith::{Euclidean, Poly, SepPoly, Var};
use crate::parse::parse_poly_in;
use crate::snf::{parse_int, AnyMatrix, FormatError, Matrix, MatrixJson, RingTag};

/// Instance file: every factor is either already Smith-aligned or a raw
/// inclusion with an element.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceJson {
    pub mode: Mode,
    pub factors: Vec<FactorJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FactorJson {
    Raw {
        relations: MatrixJson,
        element: Vec<String>,
    },
    Aligned {
        a: Vec<String>,
        c: Vec<String>,
        #[serde(default)]
        free_padding: usize,
    },
}

/// One line of `ts-verify` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialReport {
    pub trial: u64,
    pub seed: u64,
    pub mode: Mode,
    pub b: String,
    pub l: String,
    pub bruteforce: String,
    pub snf: Option<String>,
    pub pass: bool,
}

trait EntryFormat: Euclidean {
    fn parse_entry(text: &str, var: Var) -> Result<Self, FormatError>;
    fn ring(var: Var) -> RingTag;
    fn take(m: AnyMatrix) -> Option<Matrix<Self>>;
}

impl EntryFormat for BigInt {
    fn parse_entry(text: &str, _: Var) -> Result<BigInt, FormatError> {
        parse_int(text)
    }

    fn ring(_: Var) -> RingTag {
        RingTag::Integers
    }

    fn take(m: AnyMatrix) -> Option<Matrix<BigInt>> {
        match m {
            AnyMatrix::Integers(m) => Some(m),
            AnyMatrix::Univariate(..) => None,
        }
    }
}

impl EntryFormat for Poly {
    fn parse_entry(text: &str, var: Var) -> Result<Poly, FormatError> {
        Ok(parse_poly_in(text, var)?)
    }

    fn ring(var: Var) -> RingTag {
        RingTag::Univariate(var)
    }

    fn take(m: AnyMatrix) -> Option<Matrix<Poly>> {
        match m {
            AnyMatrix::Univariate(_, m) => Some(m),
            AnyMatrix::Integers(_) => None,
        }
    }
}

fn input_error(e: FormatError) -> TsError {
    TsError::Input(e.to_string())
}

fn parse_all<E: EntryFormat>(texts: &[String], var: Var) -> Result<Vec<E>, TsError> {
    texts.iter().map(|t| E::parse_entry(t, var).map_err(input_error)).collect()
}

fn instance_from<R>(factors: &[FactorJson]) -> Result<Instance<R>, TsError>
where
    R: LemmaRing,
    R::Entry: EntryFormat,
{
    let all_raw = factors.iter().all(|f| matches!(f, FactorJson::Raw { .. }));
    let all_aligned = factors.iter().all(|f| matches!(f, FactorJson::Aligned { .. }));
    if !all_raw && !all_aligned {
        return Err(TsError::Input("factors must be all raw or all aligned".into()));
    }
    if all_raw {
        let mut raw = Vec::with_capacity(factors.len());
        for (i, f) in factors.iter().enumerate() {
            let FactorJson::Raw { relations, element } = f else { unreachable!() };
            let var = R::factor_var(i);
            let expected = R::Entry::ring(var).to_string();
            if relations.ring != expected {
                return Err(TsError::Input(format!("factor {i}: ring {} but this mode needs {expected}", relations.ring)));
            }
            let m = R::Entry::take(relations.to_matrix().map_err(input_error)?).expect("ring tag checked");
            raw.push(RawInclusion { relations: m, delta: parse_all(element, var)? });
        }
        return Instance::from_raw(raw);
    }
    let mut out = Vec::with_capacity(factors.len());
    for (i, f) in factors.iter().enumerate() {
        let FactorJson::Aligned { a, c, free_padding } = f else { unreachable!() };
        let var = R::factor_var(i);
        let lift = |v: Vec<R::Entry>| v.iter().map(|x| R::lift(x, i)).collect();
        out.push(FactorData {
            index: i,
            a: lift(parse_all(a, var)?),
            c: lift(parse_all(c, var)?),
            free_padding: *free_padding,
        });
    }
    Instance::new(out)
}

fn factors_to_json<R: LemmaRing>(inst: &Instance<R>) -> Vec<FactorJson>
where
    R::Entry: EntryFormat,
{
    let print = |v: &[R], i: usize| v.iter().map(|x| x.unlift(i).to_string()).collect();
    match &inst.raw {
        Some(raw) => raw
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let entries =
                    (0..r.relations.rows()).map(|p| r.relations.row(p).iter().map(|e| e.to_string()).collect()).collect();
                FactorJson::Raw {
                    relations: MatrixJson {
                        ring: R::Entry::ring(R::factor_var(i)).to_string(),
                        rows: r.relations.rows(),
                        cols: r.relations.cols(),
                        entries,
                    },
                    element: r.delta.iter().map(|e| e.to_string()).collect(),
                }
            })
            .collect(),
        None => inst
            .factors
            .iter()
            .enumerate()
            .map(|(i, f)| FactorJson::Aligned { a: print(&f.a, i), c: print(&f.c, i), free_padding: f.free_padding })
            .collect(),
    }
}

impl InstanceJson {
    pub fn to_instance(&self) -> Result<TsInstance, TsError> {
        if self.mode == Mode::Theorem && self.factors.len() != 2 {
            return Err(TsError::Input("theorem mode takes exactly two factors".into()));
        }
        Ok(match self.mode {
            Mode::Theorem => TsInstance::Theorem(instance_from::<Poly>(&self.factors)?),
            Mode::Ideal => TsInstance::Ideal(instance_from::<SepPoly>(&self.factors)?),
            Mode::Integer => TsInstance::Integer(instance_from::<BigInt>(&self.factors)?),
        })
    }

    pub fn from_instance(inst: &TsInstance) -> InstanceJson {
        let factors = match inst {
            TsInstance::Theorem(i) => factors_to_json(i),
            TsInstance::Ideal(i) => factors_to_json(i),
            TsInstance::Integer(i) => factors_to_json(i),
        };
        InstanceJson { mode: inst.mode(), factors }
    }
}
