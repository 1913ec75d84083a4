use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{Domain, Euclidean, Poly, SepPoly, Var};
use crate::snf::{is_basis_extendable, smith_normal_form, FinPresModule, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TsError {
    #[error("instance has no factors")]
    Empty,
    #[error("factor {0}: every coordinate of the element is zero")]
    ZeroElement(usize),
    #[error("factor {factor}: coordinate {index} is nonzero over a zero invariant factor")]
    NotTorsion { factor: usize, index: usize },
    #[error("factor {0}: the element is not part of a basis (coordinate gcd is not a unit)")]
    NotBasis(usize),
    #[error("factor {0}: {1}")]
    Shape(usize, String),
    #[error("{0}")]
    Input(String),
    #[error("exponent table violates the hypothesis: {0}")]
    Hypothesis(String),
}

/// Which instantiation of the lemma an instance lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Base ring and every factor ring are `Q[s]`, two factors.
    Theorem,
    /// Base ring `Q`, factor `i` over `Q[s_i]`.
    Ideal,
    /// Base ring and factor rings are `Z`.
    Integer,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Theorem, Mode::Ideal, Mode::Integer];
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Theorem => "theorem",
            Mode::Ideal => "ideal",
            Mode::Integer => "integer",
        })
    }
}

impl FromStr for Mode {
    type Err = TsError;

    fn from_str(text: &str) -> Result<Mode, TsError> {
        match text {
            "theorem" => Ok(Mode::Theorem),
            "ideal" => Ok(Mode::Ideal),
            "integer" => Ok(Mode::Integer),
            _ => Err(TsError::Input(format!("unknown mode '{text}' (expected theorem, ideal or integer)"))),
        }
    }
}

/// One factor in Smith-aligned coordinates: `P_i / Q_i` is
/// `(+)_p R/a_p (+) R^free_padding` and the element has coordinates
/// `(c_1, ..., c_n, 0, ..., 0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorData<R> {
    pub index: usize,
    pub a: Vec<R>,
    pub c: Vec<R>,
    pub free_padding: usize,
}

impl<R: Domain> FactorData<R> {
    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn ambient_rank(&self) -> usize {
        self.a.len() + self.free_padding
    }

    /// Shape, nonzero element and torsion; the basis hypothesis is
    /// checked separately by [`FactorData::validate`].
    pub fn check_torsion(&self) -> Result<(), TsError> {
        if self.a.len() != self.c.len() {
            return Err(TsError::Shape(self.index, format!("{} invariant factors but {} coordinates", self.a.len(), self.c.len())));
        }
        if self.c.iter().all(|c| c.is_zero()) {
            return Err(TsError::ZeroElement(self.index));
        }
        if let Some(p) = (0..self.a.len()).find(|&p| self.a[p].is_zero() && !self.c[p].is_zero()) {
            return Err(TsError::NotTorsion { factor: self.index, index: p });
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), TsError> {
        self.check_torsion()?;
        if !is_basis_extendable(&self.c) {
            return Err(TsError::NotBasis(self.index));
        }
        Ok(())
    }
}

/// An inclusion `Q_i -> P_i` given by an `m_i x n_i` matrix, with the
/// element in the original coordinates of `P_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct RawInclusion<E> {
    pub relations: Matrix<E>,
    pub delta: Vec<E>,
}

/// The ring the tensor product lives in, with the way factor entries embed
/// into it and the Smith-normal-form route to the annihilator.
pub trait LemmaRing: Domain {
    type Entry: Euclidean;

    /// Variable the `factor`-th inclusion is written in.
    fn factor_var(factor: usize) -> Var;

    fn lift(entry: &Self::Entry, factor: usize) -> Self;

    /// Inverse of [`LemmaRing::lift`] on lifted values.
    fn unlift(&self, factor: usize) -> Self::Entry;

    /// Annihilator of the product element computed from the raw
    /// inclusions by Smith normal form.
    fn snf_annihilator(raw: &[RawInclusion<Self::Entry>]) -> Self;
}

fn kronecker_annihilator<E: Euclidean>(raw: &[RawInclusion<E>]) -> E {
    let mut m = Matrix::<E>::identity(1);
    let mut delta = vec![E::one()];
    for f in raw {
        m = m.kronecker(&f.relations);
        delta = delta.iter().flat_map(|x| f.delta.iter().map(move |y| x.mul(y))).collect();
    }
    FinPresModule::new(m).element_annihilator(&delta)
}

impl LemmaRing for BigInt {
    type Entry = BigInt;

    fn factor_var(_: usize) -> Var {
        Var::S
    }

    fn lift(entry: &BigInt, _: usize) -> BigInt {
        entry.clone()
    }

    fn unlift(&self, _: usize) -> BigInt {
        self.clone()
    }

    fn snf_annihilator(raw: &[RawInclusion<BigInt>]) -> BigInt {
        kronecker_annihilator(raw)
    }
}

impl LemmaRing for Poly {
    type Entry = Poly;

    fn factor_var(_: usize) -> Var {
        Var::S
    }

    fn lift(entry: &Poly, _: usize) -> Poly {
        entry.clone()
    }

    fn unlift(&self, _: usize) -> Poly {
        self.clone()
    }

    fn snf_annihilator(raw: &[RawInclusion<Poly>]) -> Poly {
        kronecker_annihilator(raw)
    }
}

impl LemmaRing for SepPoly {
    type Entry = Poly;

    fn factor_var(factor: usize) -> Var {
        Var::indexed(factor as u8 + 1)
    }

    fn lift(entry: &Poly, factor: usize) -> SepPoly {
        SepPoly::from_poly(&entry.clone().with_var(Self::factor_var(factor)))
    }

    fn unlift(&self, factor: usize) -> Poly {
        let var = Self::factor_var(factor);
        let base = self.factor(var).cloned().unwrap_or_else(|| Poly::one().with_var(var));
        base.scale(self.constant_part())
    }

    /// The multivariate ring has no Smith form, but the Kronecker product
    /// of the per-factor transforms diagonalizes the Kronecker product of
    /// the relations: `(U_1 (x) U_2) (M_1 (x) M_2) (V_1 (x) V_2) = D_1 (x) D_2`,
    /// and moves the element to `U_1 delta_1 (x) U_2 delta_2`.
    fn snf_annihilator(raw: &[RawInclusion<Poly>]) -> SepPoly {
        let mut diag = vec![SepPoly::one()];
        let mut coords = vec![SepPoly::one()];
        for (i, f) in raw.iter().enumerate() {
            let snf = smith_normal_form(&f.relations);
            let moved = snf.u.mul_vec(&f.delta);
            let d: Vec<SepPoly> = (0..f.relations.rows())
                .map(|p| snf.d.get(p).map_or(SepPoly::zero(), |x| SepPoly::lift(x, i)))
                .collect();
            let x: Vec<SepPoly> = moved.iter().map(|e| SepPoly::lift(e, i)).collect();
            diag = diag.iter().flat_map(|u| d.iter().map(move |v| u.mul(v))).collect();
            coords = coords.iter().flat_map(|u| x.iter().map(move |v| u.mul(v))).collect();
        }
        let mut ann = SepPoly::one();
        for (d, x) in diag.iter().zip(&coords) {
            if d.is_zero() {
                if x.is_zero() {
                    continue;
                }
                return SepPoly::zero();
            }
            let colon = d.div_exact(&d.gcd(x)).expect("gcd divides");
            ann = Domain::lcm(&ann, &colon);
        }
        ann.normalized()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instance<R: LemmaRing> {
    pub factors: Vec<FactorData<R>>,
    pub raw: Option<Vec<RawInclusion<R::Entry>>>,
}

impl<R: LemmaRing> Instance<R> {
    pub fn new(factors: Vec<FactorData<R>>) -> Result<Instance<R>, TsError> {
        let inst = Instance { factors, raw: None };
        inst.validate()?;
        Ok(inst)
    }

    /// Derive the aligned data from raw inclusions by Smith normal form.
    pub fn from_raw(raw: Vec<RawInclusion<R::Entry>>) -> Result<Instance<R>, TsError> {
        let mut factors = Vec::with_capacity(raw.len());
        for (i, f) in raw.iter().enumerate() {
            let m = f.relations.rows();
            if f.delta.len() != m {
                return Err(TsError::Shape(i, format!("element has {} coordinates, ambient rank is {m}", f.delta.len())));
            }
            let snf = smith_normal_form(&f.relations);
            let moved = snf.u.mul_vec(&f.delta);
            if let Some(p) = (snf.rank..m).find(|&p| !moved[p].is_zero()) {
                return Err(TsError::NotTorsion { factor: i, index: p });
            }
            factors.push(FactorData {
                index: i,
                a: snf.d.iter().map(|x| R::lift(x, i)).collect(),
                c: moved[..snf.rank].iter().map(|x| R::lift(x, i)).collect(),
                free_padding: m - snf.rank,
            });
        }
        let inst = Instance { factors, raw: Some(raw) };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<(), TsError> {
        if self.factors.is_empty() {
            return Err(TsError::Empty);
        }
        for (i, f) in self.factors.iter().enumerate() {
            if f.index != i {
                return Err(TsError::Shape(i, format!("factor carries index {}", f.index)));
            }
            f.validate()?;
        }
        if let Some(raw) = &self.raw {
            if raw.len() != self.factors.len() {
                return Err(TsError::Input("raw inclusions do not match the factor count".into()));
            }
        }
        Ok(())
    }
}

/// Every index tuple of a box with the given side lengths, last index
/// fastest (Kronecker order).
pub fn index_tuples(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &d in dims {
        out = out.into_iter().flat_map(|t| (0..d).map(move |p| [t.as_slice(), &[p]].concat())).collect();
    }
    out
}

/// `lcm_p ( lcm(c_p, a_p) / c_p )` over the nonzero coordinates.
///
/// The formula is the annihilator of the element whether or not it is part
/// of a basis, so only torsion is required here.
pub fn factor_b<R: Domain>(f: &FactorData<R>) -> Result<R, TsError> {
    f.check_torsion()?;
    let mut b = R::one();
    for (a, c) in f.a.iter().zip(&f.c) {
        if c.is_zero() {
            continue;
        }
        let q = c.lcm(a).div_exact(c).expect("lcm is a multiple");
        b = b.lcm(&q);
    }
    Ok(b.canonical())
}

/// The product of the factor annihilators, `b_1 (x) ... (x) b_r`.
pub fn product_of_factor_bs<R: LemmaRing>(inst: &Instance<R>) -> Result<R, TsError> {
    let mut b = R::one();
    for f in &inst.factors {
        b = b.mul(&factor_b(f)?);
    }
    Ok(b.canonical())
}

/// `lcm over tuples of lcm(c_prod, a_prod) / c_prod`, skipping tuples with
/// a zero coordinate.
pub fn tensor_annihilator_formula<R: LemmaRing>(inst: &Instance<R>) -> Result<R, TsError> {
    inst.validate()?;
    let dims: Vec<usize> = inst.factors.iter().map(|f| f.rank()).collect();
    let mut l = R::one();
    for tuple in index_tuples(&dims) {
        let mut c_prod = R::one();
        let mut a_prod = R::one();
        for (f, &p) in inst.factors.iter().zip(&tuple) {
            c_prod = c_prod.mul(&f.c[p]);
            a_prod = a_prod.mul(&f.a[p]);
        }
        if c_prod.is_zero() {
            continue;
        }
        let term = c_prod.lcm(&a_prod).div_exact(&c_prod).expect("lcm is a multiple");
        l = l.lcm(&term);
    }
    Ok(l.canonical())
}

/// The tensor product quotient written out summand by summand: one
/// cyclic summand `R / diagonal[k]` per ambient coordinate (a zero diagonal
/// entry is a free summand) and the element's coordinate in it.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalPresentation<R> {
    pub diagonal: Vec<R>,
    pub delta: Vec<R>,
}

impl<R: LemmaRing> DiagonalPresentation<R> {
    pub fn of(inst: &Instance<R>) -> DiagonalPresentation<R> {
        let dims: Vec<usize> = inst.factors.iter().map(|f| f.ambient_rank()).collect();
        let mut diagonal = Vec::new();
        let mut delta = Vec::new();
        for tuple in index_tuples(&dims) {
            let mut d = R::one();
            let mut x = R::one();
            for (f, &p) in inst.factors.iter().zip(&tuple) {
                if p < f.rank() {
                    d = d.mul(&f.a[p]);
                    x = x.mul(&f.c[p]);
                } else {
                    d = R::zero();
                    x = R::zero();
                }
            }
            diagonal.push(d);
            delta.push(x);
        }
        DiagonalPresentation { diagonal, delta }
    }

    /// Intersection of the per-summand colon ideals `(d) : (x) = (d / gcd(d, x))`.
    pub fn annihilator(&self) -> R {
        let mut ann = R::one();
        for (d, x) in self.diagonal.iter().zip(&self.delta) {
            if d.is_zero() {
                if x.is_zero() {
                    continue;
                }
                return R::zero();
            }
            let colon = d.div_exact(&d.gcd(x)).expect("gcd divides");
            let common = ann.gcd(&colon);
            ann = ann.mul(&colon.div_exact(&common).expect("gcd divides"));
        }
        ann.canonical()
    }
}

pub fn tensor_annihilator_bruteforce<R: LemmaRing>(inst: &Instance<R>) -> Result<R, TsError> {
    inst.validate()?;
    Ok(DiagonalPresentation::of(inst).annihilator())
}

/// The values produced by each route, printed canonically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub b: String,
    pub l: String,
    pub bruteforce: String,
    pub snf: Option<String>,
    pub pass: bool,
}

pub fn verify_main_lemma<R: LemmaRing>(inst: &Instance<R>) -> Result<LemmaReport, TsError> {
    let b = product_of_factor_bs(inst)?;
    let l = tensor_annihilator_formula(inst)?;
    let brute = tensor_annihilator_bruteforce(inst)?;
    let snf = inst.raw.as_ref().map(|raw| R::snf_annihilator(raw).canonical());
    let pass = l.associate(&b) && brute.associate(&b) && snf.as_ref().is_none_or(|x| x.associate(&b));
    Ok(LemmaReport {
        b: b.to_string(),
        l: l.to_string(),
        bruteforce: brute.to_string(),
        snf: snf.map(|x| x.to_string()),
        pass,
    })
}

/// An instance in one of the three modes.
#[derive(Clone, Debug, PartialEq)]
pub enum TsInstance {
    Theorem(Instance<Poly>),
    Ideal(Instance<SepPoly>),
    Integer(Instance<BigInt>),
}

impl TsInstance {
    pub fn mode(&self) -> Mode {
        match self {
            TsInstance::Theorem(_) => Mode::Theorem,
            TsInstance::Ideal(_) => Mode::Ideal,
            TsInstance::Integer(_) => Mode::Integer,
        }
    }

    pub fn verify(&self) -> Result<LemmaReport, TsError> {
        match self {
            TsInstance::Theorem(i) => verify_main_lemma(i),
            TsInstance::Ideal(i) => verify_main_lemma(i),
            TsInstance::Integer(i) => verify_main_lemma(i),
        }
    }
}
