use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{DmodError, EngineConfig};
use crate::arith::{Poly, Rat, Var};
use crate::parse::{parse_element, ElementAst, LetterAst};

/// Multidegree: one exponent of `x` (and of `y`) per factor.
pub type Degree = Vec<i64>;

/// A generator of the operator algebra acting on `B_{f,+}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    /// Multiplication by the `i`-th variable.
    Mul(usize),
    /// Derivative in the `i`-th variable.
    Diff(usize),
    T,
    TInv,
    Dt,
    S,
    Scalar(Rat),
}

impl Letter {
    pub fn name(&self, cfg: &EngineConfig) -> String {
        match self {
            Letter::Mul(i) => cfg.factors[*i].name.clone(),
            Letter::Diff(i) => format!("d{}", cfg.factors[*i].name),
            Letter::T => "t".into(),
            Letter::TInv => "tinv".into(),
            Letter::Dt => "dt".into(),
            Letter::S => "s".into(),
            Letter::Scalar(c) => crate::parse::print_rat(c),
        }
    }

    pub fn from_name(name: &str, cfg: &EngineConfig) -> Result<Letter, DmodError> {
        let unknown = || DmodError::UnknownLetter(name.to_string());
        Ok(match name {
            "t" => Letter::T,
            "tinv" => Letter::TInv,
            "dt" => Letter::Dt,
            "s" => Letter::S,
            _ => match name.strip_prefix('d') {
                Some(var) => Letter::Diff(cfg.factor_index(var).ok_or_else(unknown)?),
                None => Letter::Mul(cfg.factor_index(name).ok_or_else(unknown)?),
            },
        })
    }

    /// The letters of `D_X[s]`: every `x_i`, every `d x_i`, and `s`.
    pub fn differential(cfg: &EngineConfig) -> Vec<Letter> {
        let mut out: Vec<Letter> = (0..cfg.dims()).flat_map(|i| [Letter::Mul(i), Letter::Diff(i)]).collect();
        out.push(Letter::S);
        out
    }

    /// The letters of `V^0 D = D_X<t, s>`.
    pub fn v0(cfg: &EngineConfig) -> Vec<Letter> {
        let mut out = Letter::differential(cfg);
        out.push(Letter::T);
        out
    }
}

/// Letters as written, leftmost first; applied right to left.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OperatorWord(pub Vec<Letter>);

impl OperatorWord {
    /// `"x*dt^2"`: letters or rationals joined by `*`, each with an optional
    /// `^k`.
    pub fn parse(text: &str, cfg: &EngineConfig) -> Result<OperatorWord, DmodError> {
        let mut letters = Vec::new();
        for part in text.split('*') {
            let part = part.trim();
            let (base, power) = match part.split_once('^') {
                Some((b, k)) => {
                    let k = k.trim().parse::<usize>().map_err(|_| DmodError::Config(format!("bad power in '{part}'")))?;
                    (b.trim(), k)
                }
                None => (part, 1),
            };
            let letter = match base.parse::<Rat>() {
                Ok(c) => Letter::Scalar(c),
                Err(_) => Letter::from_name(base, cfg)?,
            };
            letters.extend(std::iter::repeat_n(letter, power));
        }
        Ok(OperatorWord(letters))
    }

    pub fn from_letters(letters: &[LetterAst], cfg: &EngineConfig) -> Result<OperatorWord, DmodError> {
        letters
            .iter()
            .map(|l| match l {
                LetterAst::Named(n) => Letter::from_name(n, cfg),
                LetterAst::Scalar(c) => Ok(Letter::Scalar(c.clone())),
            })
            .collect::<Result<_, _>>()
            .map(OperatorWord)
    }
}

/// `sum_a p_a(s) x^a f^s` with finitely many nonzero `p_a`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedElement {
    support: BTreeMap<Degree, Poly>,
}

impl GradedElement {
    pub fn zero() -> GradedElement {
        GradedElement::default()
    }

    /// `p(s) x^a f^s`.
    pub fn monomial(degree: Degree, p: Poly) -> GradedElement {
        let mut e = GradedElement::zero();
        e.add_term(degree, p);
        e
    }

    /// The generator `f^s` of an engine with `dims` factors.
    pub fn fs(dims: usize) -> GradedElement {
        GradedElement::monomial(vec![0; dims], Poly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.support.len() <= 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Degree, &Poly)> {
        self.support.iter()
    }

    pub fn coeff(&self, degree: &[i64]) -> Poly {
        self.support.get(degree).cloned().unwrap_or_else(Poly::zero)
    }

    /// The single term of a nonzero homogeneous element.
    pub fn homogeneous_term(&self) -> Result<(&Degree, &Poly), DmodError> {
        if !self.is_homogeneous() {
            return Err(DmodError::NonHomogeneous(self.support.len()));
        }
        self.support.iter().next().ok_or(DmodError::ZeroElement)
    }

    fn add_term(&mut self, degree: Degree, p: Poly) {
        if p.is_zero() {
            return;
        }
        let sum = &self.coeff(&degree) + &p;
        if sum.is_zero() {
            self.support.remove(&degree);
        } else {
            self.support.insert(degree, sum.with_var(Var::S));
        }
    }

    pub fn add(&self, other: &GradedElement) -> GradedElement {
        let mut out = self.clone();
        for (d, p) in &other.support {
            out.add_term(d.clone(), p.clone());
        }
        out
    }

    /// Multiply every coefficient by `q(s)` on the left.
    pub fn scale(&self, q: &Poly) -> GradedElement {
        let mut out = GradedElement::zero();
        for (d, p) in &self.support {
            out.add_term(d.clone(), q * p);
        }
        out
    }

    fn map_terms(&self, f: impl Fn(&Degree, &Poly) -> (Degree, Poly)) -> GradedElement {
        let mut out = GradedElement::zero();
        for (d, p) in &self.support {
            let (d2, p2) = f(d, p);
            out.add_term(d2, p2);
        }
        out
    }

    /// One letter, with no window check.
    pub fn apply_letter(&self, letter: &Letter, cfg: &EngineConfig) -> GradedElement {
        let n = cfg.exponents();
        let one = Rat::one();
        let s = Poly::var_poly(Var::S);
        match letter {
            Letter::Mul(i) => self.map_terms(|d, p| (bump(d, *i, 1), p.clone())),
            Letter::Diff(i) => self.map_terms(|d, p| {
                let lin = Poly::from_ints(Var::S, &[d[*i], n[*i]]);
                (bump(d, *i, -1), &lin * p)
            }),
            Letter::T => self.map_terms(|d, p| (offset(d, &n, 1), p.shift(&one))),
            Letter::TInv => self.map_terms(|d, p| (offset(d, &n, -1), p.shift(&-&one))),
            Letter::Dt => self.map_terms(|d, p| (offset(d, &n, -1), -&(&s * &p.shift(&-&one)))),
            Letter::S => self.scale(&s),
            Letter::Scalar(c) => self.scale(&Poly::constant(c.clone())),
        }
    }

    pub fn max_abs_degree(&self) -> i64 {
        self.support.keys().flat_map(|d| d.iter().map(|x| x.abs())).max().unwrap_or(0)
    }
}

fn bump(d: &[i64], i: usize, by: i64) -> Degree {
    let mut out = d.to_vec();
    out[i] += by;
    out
}

fn offset(d: &[i64], n: &[i64], sign: i64) -> Degree {
    d.iter().zip(n).map(|(a, k)| a + sign * k).collect()
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .support
            .iter()
            .map(|(d, p)| {
                let deg: Vec<String> = d.iter().map(|x| x.to_string()).collect();
                format!("({p}) at ({})", deg.join(", "))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Apply a word right to left; any intermediate degree beyond
/// `window + margin` is an overflow.
pub fn apply_operator(e: &GradedElement, w: &OperatorWord, cfg: &EngineConfig) -> Result<GradedElement, DmodError> {
    let limit = cfg.window + cfg.margin;
    let check = |e: &GradedElement| -> Result<(), DmodError> {
        match e.terms().find(|(d, _)| d.iter().any(|x| x.abs() > limit)) {
            Some((d, _)) => Err(DmodError::WindowOverflow { degree: d.clone(), limit }),
            None => Ok(()),
        }
    };
    check(e)?;
    let mut cur = e.clone();
    for letter in w.0.iter().rev() {
        cur = cur.apply_letter(letter, cfg);
        check(&cur)?;
    }
    Ok(cur)
}

/// Evaluate a parsed element `sum_k q_k(s) * w_k @ fs` on the engine.
pub fn element_from_ast(ast: &ElementAst, cfg: &EngineConfig) -> Result<GradedElement, DmodError> {
    let mut out = GradedElement::zero();
    for term in &ast.terms {
        let word = OperatorWord::from_letters(&term.word, cfg)?;
        let value = apply_operator(&GradedElement::fs(cfg.dims()), &word, cfg)?;
        out = out.add(&value.scale(&term.coeff.clone().with_var(Var::S)));
    }
    Ok(out)
}

pub fn parse_graded_element(text: &str, cfg: &EngineConfig) -> Result<GradedElement, DmodError> {
    element_from_ast(&parse_element(text)?, cfg)
}

/// `u (x) v` for homogeneous `u` on the first engine and `v` on the second:
/// degrees concatenate and coefficients multiply.
pub fn tensor_element(u: &GradedElement, v: &GradedElement) -> Result<GradedElement, DmodError> {
    if !u.is_homogeneous() || !v.is_homogeneous() {
        return Err(DmodError::NonHomogeneous(u.support.len().max(v.support.len())));
    }
    let mut out = GradedElement::zero();
    for (du, pu) in u.terms() {
        for (dv, pv) in v.terms() {
            out.add_term([du.as_slice(), dv.as_slice()].concat(), pu * pv);
        }
    }
    Ok(out)
}

impl Zero for GradedElement {
    fn zero() -> GradedElement {
        GradedElement::default()
    }

    fn is_zero(&self) -> bool {
        self.support.is_empty()
    }
}

impl std::ops::Add for GradedElement {
    type Output = GradedElement;

    fn add(self, rhs: GradedElement) -> GradedElement {
        GradedElement::add(&self, &rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn sp(c: &[i64]) -> Poly {
        Poly::from_ints(Var::S, c)
    }

    fn word(text: &str, cfg: &EngineConfig) -> OperatorWord {
        OperatorWord::parse(text, cfg).unwrap()
    }

    #[test]
    fn dt_on_fs() {
        let cfg = EngineConfig::single(1);
        let out = apply_operator(&GradedElement::fs(1), &word("dt", &cfg), &cfg).unwrap();
        assert_eq!(out, GradedElement::monomial(vec![-1], sp(&[0, -1])));
    }

    #[test]
    fn t_then_tinv_is_identity() {
        let cfg = EngineConfig::pair(2, 1);
        let e = GradedElement::monomial(vec![1, -2], sp(&[3, 0, 1])).add(&GradedElement::monomial(vec![0, 0], sp(&[1, 1])));
        assert_eq!(apply_operator(&e, &word("t*tinv", &cfg), &cfg).unwrap(), e);
        assert_eq!(apply_operator(&e, &word("tinv*t", &cfg), &cfg).unwrap(), e);
    }

    #[test]
    fn product_rule() {
        let cfg = EngineConfig::single(1);
        let e = GradedElement::monomial(vec![1], Poly::one());
        assert_eq!(apply_operator(&e, &word("dx", &cfg), &cfg).unwrap(), GradedElement::monomial(vec![0], sp(&[1, 1])));
    }

    #[test]
    fn paper_example_elements() {
        let cfg = EngineConfig::single(1);
        let u = parse_graded_element("x*dt^2 @ fs", &cfg).unwrap();
        assert_eq!(u, GradedElement::monomial(vec![-1], sp(&[0, -1, 1])));
        let cfg_y = EngineConfig::named(&[("y", 1)]);
        let v = parse_graded_element("tinv^2 @ fs", &cfg_y).unwrap();
        assert_eq!(v, GradedElement::monomial(vec![-2], Poly::one()));
        let both = EngineConfig::pair(1, 1);
        let uv = parse_graded_element("x*dt^2 @ fs", &both).unwrap();
        assert_eq!(tensor_element(&u, &v).unwrap(), uv);
    }

    #[test]
    fn coefficients_apply_after_the_word() {
        let cfg = EngineConfig::single(1);
        // s * t @ fs = s at degree 1, while t applied to s fs is (s + 1)
        let e = parse_graded_element("s*t @ fs", &cfg).unwrap();
        assert_eq!(e, GradedElement::monomial(vec![1], sp(&[0, 1])));
        let e = parse_graded_element("t*s @ fs", &cfg).unwrap();
        assert_eq!(e, GradedElement::monomial(vec![1], sp(&[1, 1])));
        let e = parse_graded_element("fs - 1/2*x @ fs", &cfg).unwrap();
        assert_eq!(e.coeff(&[1]), Poly::constant(-crate::arith::rat(1, 2)));
        assert!(!e.is_homogeneous());
    }

    #[test]
    fn overflow_and_unknown_letters() {
        let cfg = EngineConfig::single(1);
        let far = OperatorWord(vec![Letter::Mul(0); 16]);
        assert!(matches!(apply_operator(&GradedElement::fs(1), &far, &cfg), Err(DmodError::WindowOverflow { .. })));
        assert!(matches!(parse_graded_element("dy @ fs", &cfg), Err(DmodError::UnknownLetter(_))));
        assert_eq!(Letter::from_name("dx", &cfg).unwrap(), Letter::Diff(0));
        let _ = int(0);
    }
}
