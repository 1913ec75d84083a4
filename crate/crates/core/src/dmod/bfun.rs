use std::fmt;

use serde::Serialize;

use super::{apply_operator, generate_submodule, DmodError, EngineConfig, GradedElement, GradedSubmodule, Letter, OperatorWord};
use crate::arith::{Factored, Poly, Rat};
use crate::parse::{print_poly, print_rat};

/// Retries after a window overflow, doubling the window each time.
pub const MAX_WINDOW_DOUBLINGS: usize = 3;

/// A monic b-function split into rational roots and a residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFunctionResult {
    pub poly: Poly,
    /// Ascending, with multiplicity.
    pub roots: Vec<Rat>,
    /// Monic factor without rational roots.
    pub residual: Poly,
    pub window_used: i64,
}

/// JSON shape shared by the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BFunctionJson {
    pub input: String,
    pub bfunction: String,
    pub roots: Vec<String>,
    pub residual: String,
    pub window: i64,
    pub stable: bool,
}

impl BFunctionResult {
    fn from_factored(f: &Factored, window_used: i64) -> BFunctionResult {
        BFunctionResult { poly: f.to_poly(), roots: f.roots(), residual: f.residual().clone(), window_used }
    }

    pub fn factored(&self) -> Factored {
        Factored::from_poly(&self.poly)
    }

    pub fn to_json(&self, input: &str) -> BFunctionJson {
        BFunctionJson {
            input: input.to_string(),
            bfunction: print_poly(&self.poly),
            roots: self.roots.iter().map(print_rat).collect(),
            residual: print_poly(&self.residual),
            window: self.window_used,
            stable: true,
        }
    }
}

impl fmt::Display for BFunctionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_poly(&self.poly))
    }
}

fn with_doubling<T>(cfg: &EngineConfig, run: impl Fn(&EngineConfig) -> Result<T, DmodError>) -> Result<T, DmodError> {
    let mut cfg = cfg.clone();
    let mut doublings = 0;
    loop {
        match run(&cfg) {
            Err(DmodError::WindowOverflow { .. }) if doublings < MAX_WINDOW_DOUBLINGS => {
                cfg.window *= 2;
                doublings += 1;
            }
            other => return other,
        }
    }
}

/// Lcm over the window of `j_a / i_a` for `inner` contained in `outer`.
fn quotient_lcm(outer: &GradedSubmodule, inner: &GradedSubmodule) -> Result<Factored, DmodError> {
    let mut acc = Factored::one();
    for (d, i) in outer.ideals() {
        let j = inner.ideal_factored(d);
        if j.is_zero() {
            return Err(DmodError::Inconsistent(format!("degree {d:?}: smaller submodule vanishes, larger does not")));
        }
        let q = j
            .div_exact(i)
            .ok_or_else(|| DmodError::Inconsistent(format!("degree {d:?}: ideals are not nested")))?;
        acc = acc.lcm(&q);
    }
    if let Some((d, _)) = inner.ideals().find(|(d, _)| outer.ideal_factored(d).is_zero()) {
        return Err(DmodError::Inconsistent(format!("degree {d:?}: smaller submodule is not contained in the larger")));
    }
    Ok(acc)
}

/// `b_f` for the engine's monomial: the degree-0 ideal of `D[s] f^(s+1)`,
/// cross-checked against the lcm of per-degree quotients.
pub fn bernstein_sato_monomial(cfg: &EngineConfig) -> Result<BFunctionResult, DmodError> {
    with_doubling(cfg, |cfg| {
        let letters = Letter::differential(cfg);
        let origin = vec![0; cfg.dims()];
        let whole = generate_submodule(&[GradedElement::fs(cfg.dims())], &letters, cfg)?;
        let next = generate_submodule(&[GradedElement::monomial(cfg.f_degree(), Poly::one())], &letters, cfg)?;
        if !whole.ideal_factored(&origin).is_one() {
            return Err(DmodError::Inconsistent("f^s does not generate its own degree".into()));
        }
        let primary = next.ideal_factored(&origin);
        let cross = quotient_lcm(&whole, &next)?;
        if primary != cross {
            return Err(DmodError::Inconsistent(format!(
                "degree-0 generator {} differs from the quotient lcm {}",
                primary.to_poly(),
                cross.to_poly()
            )));
        }
        Ok(BFunctionResult::from_factored(&primary, cfg.window))
    })
}

/// Oracle for monomials: `prod_i dx_i^(n_i)` applied to `f^(s+1)` lands on
/// `c * b_f(s) f^s`; returns the monic coefficient.
pub fn functional_equation_bfunction(cfg: &EngineConfig) -> Result<Poly, DmodError> {
    let cfg = cfg.clone().with_window(cfg.window.max(cfg.exponents().into_iter().max().unwrap_or(0)))?;
    let mut word = Vec::new();
    for (i, n) in cfg.exponents().into_iter().enumerate() {
        word.extend(std::iter::repeat_n(Letter::Diff(i), n as usize));
    }
    let lifted = GradedElement::monomial(cfg.f_degree(), Poly::one());
    let out = apply_operator(&lifted, &OperatorWord(word), &cfg)?;
    let (d, p) = out.homogeneous_term()?;
    if d.iter().any(|a| *a != 0) {
        return Err(DmodError::Inconsistent(format!("functional equation landed in degree {d:?}")));
    }
    Ok(p.monic())
}

/// Minimal polynomial of `s` on `V^0 D u / V^0 D (t u)`.
pub fn generalized_bfunction(u: &GradedElement, cfg: &EngineConfig) -> Result<BFunctionResult, DmodError> {
    u.homogeneous_term()?;
    with_doubling(cfg, |cfg| {
        let letters = Letter::v0(cfg);
        let tu = apply_operator(u, &OperatorWord(vec![Letter::T]), cfg)?;
        let m0 = generate_submodule(std::slice::from_ref(u), &letters, cfg)?;
        let m1 = generate_submodule(&[tu], &letters, cfg)?;
        Ok(BFunctionResult::from_factored(&quotient_lcm(&m0, &m1)?, cfg.window))
    })
}

/// `min(-root)` over the roots; `None` for a b-function without roots.
pub fn level(b: &BFunctionResult) -> Result<Option<Rat>, DmodError> {
    if !b.residual.is_one() {
        return Err(DmodError::Unsupported(format!("b-function has the irrational residual {}", b.residual)));
    }
    Ok(b.roots.iter().map(|r| -r).min())
}

/// Whether `u` lies in `V^alpha`: every root `rho` of `b_u` has `-rho >= alpha`.
pub fn v_membership(u: &GradedElement, alpha: &Rat, cfg: &EngineConfig) -> Result<bool, DmodError> {
    let b = generalized_bfunction(u, cfg)?;
    Ok(level(&b)?.is_none_or(|l| l >= *alpha))
}

impl BFunctionResult {
    /// `b(s + m)`, monic.
    pub fn shifted(&self, m: i64) -> Poly {
        self.poly.shift(&Rat::from_integer(m.into())).monic()
    }

    pub fn is_one(&self) -> bool {
        self.poly.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}
