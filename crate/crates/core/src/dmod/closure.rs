use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;

use super::{Degree, DmodError, EngineConfig, GradedElement, Letter};
use crate::arith::{int, rat, Factored, Poly, Rat};

/// How many times the outer radius may grow by the margin before
/// generation gives up on stabilizing.
pub const MAX_ENLARGEMENTS: usize = 8;

/// Per-degree ideals of a homogeneously generated submodule, reported on
/// the inner window `|a_i| <= window`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubmodule {
    ideals: BTreeMap<Degree, Factored>,
    /// Half-width of the reported box.
    pub window: i64,
    /// Outer radius whose result matched the next enlargement.
    pub radius: i64,
}

impl GradedSubmodule {
    /// Monic generator of the ideal at `degree`; zero when the piece is zero
    /// or outside the window.
    pub fn ideal(&self, degree: &[i64]) -> Poly {
        self.ideal_factored(degree).to_poly()
    }

    pub fn ideal_factored(&self, degree: &[i64]) -> Factored {
        self.ideals.get(degree).cloned().unwrap_or_else(Factored::zero)
    }

    /// Nonzero ideals in degree order.
    pub fn ideals(&self) -> impl Iterator<Item = (&Degree, &Factored)> {
        self.ideals.iter()
    }

    pub fn contains_degree(&self, degree: &[i64]) -> bool {
        degree.iter().all(|a| a.abs() <= self.window)
    }

    /// Whether both submodules report the same ideals on the smaller of the
    /// two windows.
    pub fn agrees_with(&self, other: &GradedSubmodule) -> bool {
        let w = self.window.min(other.window);
        let inside = |d: &Degree| d.iter().all(|a| a.abs() <= w);
        let mine: Vec<_> = self.ideals.iter().filter(|(d, _)| inside(d)).collect();
        let theirs: Vec<_> = other.ideals.iter().filter(|(d, _)| inside(d)).collect();
        mine == theirs
    }
}

/// Dense box `|a_i| <= radius` of ideal generators; zero marks a zero piece.
struct Grid {
    dims: usize,
    radius: i64,
    cells: Vec<Factored>,
}

impl Grid {
    fn new(dims: usize, radius: i64) -> Grid {
        let side = (2 * radius + 1) as usize;
        Grid { dims, radius, cells: vec![Factored::zero(); side.pow(dims as u32)] }
    }

    fn side(&self) -> i64 {
        2 * self.radius + 1
    }

    fn index(&self, degree: &[i64]) -> Option<usize> {
        let mut idx = 0i64;
        for &a in degree {
            if a.abs() > self.radius {
                return None;
            }
            idx = idx * self.side() + (a + self.radius);
        }
        Some(idx as usize)
    }

    fn degree(&self, mut idx: usize) -> Degree {
        let side = self.side() as usize;
        let mut out = vec![0; self.dims];
        for slot in out.iter_mut().rev() {
            *slot = (idx % side) as i64 - self.radius;
            idx /= side;
        }
        out
    }

    fn restrict(&self, window: i64) -> BTreeMap<Degree, Factored> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .map(|(i, g)| (self.degree(i), g))
            .filter(|(d, _)| d.iter().all(|a| a.abs() <= window))
            .map(|(d, g)| (d, g.clone()))
            .collect()
    }
}

/// Image of the ideal `(g)` at degree `a` under one letter. Letters that only
/// multiply by `Q[s]` leave ideals unchanged and return `None`.
fn step(letter: &Letter, a: &[i64], g: &Factored, n: &[i64]) -> Option<(Degree, Factored)> {
    let moved = |sign: i64| -> Degree { a.iter().zip(n).map(|(x, k)| x + sign * k).collect() };
    match letter {
        Letter::Mul(i) => {
            let mut b = a.to_vec();
            b[*i] += 1;
            Some((b, g.clone()))
        }
        Letter::Diff(i) => {
            let mut b = a.to_vec();
            b[*i] -= 1;
            // a_i + n_i s = n_i (s + a_i / n_i)
            Some((b, g.mul_linear(rat(-a[*i], n[*i]))))
        }
        Letter::T => Some((moved(1), g.shift(&Rat::one()))),
        Letter::TInv => Some((moved(-1), g.shift(&-Rat::one()))),
        Letter::Dt => Some((moved(-1), g.shift(&-Rat::one()).mul_linear(int(0)))),
        Letter::S | Letter::Scalar(_) => None,
    }
}

/// Gcd closure on one box, run in rounds; each round extends every word by
/// one letter.
fn close(seeds: &[(Degree, Factored)], letters: &[Letter], cfg: &EngineConfig, radius: i64) -> Result<Grid, DmodError> {
    let n = cfg.exponents();
    let mut grid = Grid::new(cfg.dims(), radius);
    let mut frontier = BTreeSet::new();
    for (d, g) in seeds {
        let idx = grid.index(d).expect("seeds are checked against the window");
        grid.cells[idx] = grid.cells[idx].gcd(g);
        frontier.insert(idx);
    }
    let mut rounds = 0;
    while !frontier.is_empty() {
        rounds += 1;
        if rounds > cfg.max_word_length {
            let nonzero = grid.cells.iter().filter(|g| !g.is_zero()).count();
            return Err(DmodError::RoundsExceeded { rounds: cfg.max_word_length, nonzero });
        }
        let mut next = BTreeSet::new();
        for idx in frontier {
            let a = grid.degree(idx);
            let g = grid.cells[idx].clone();
            for letter in letters {
                let Some((b, h)) = step(letter, &a, &g, &n) else { continue };
                let Some(j) = grid.index(&b) else { continue };
                let merged = grid.cells[j].gcd(&h);
                if merged != grid.cells[j] {
                    grid.cells[j] = merged;
                    next.insert(j);
                }
            }
        }
        frontier = next;
    }
    Ok(grid)
}

/// The `Q[s]`-module generated by `gens` under `letters` (`s` is always
/// included), certified on the window by enlarging the outer radius until
/// two consecutive radii agree inside it.
pub fn generate_submodule(
    gens: &[GradedElement],
    letters: &[Letter],
    cfg: &EngineConfig,
) -> Result<GradedSubmodule, DmodError> {
    let limit = cfg.window + cfg.margin;
    let mut seeds = Vec::with_capacity(gens.len());
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let (d, p) = g.homogeneous_term()?;
        if d.len() != cfg.dims() {
            return Err(DmodError::Config(format!("generator degree {d:?} has the wrong number of factors")));
        }
        if d.iter().any(|a| a.abs() > limit) {
            return Err(DmodError::WindowOverflow { degree: d.clone(), limit });
        }
        seeds.push((d.clone(), Factored::from_poly(p)));
    }
    let mut radius = limit;
    let mut prev = close(&seeds, letters, cfg, radius)?.restrict(cfg.window);
    for _ in 0..MAX_ENLARGEMENTS {
        let cur = close(&seeds, letters, cfg, radius + cfg.margin)?.restrict(cfg.window);
        if cur == prev {
            return Ok(GradedSubmodule { ideals: cur, window: cfg.window, radius });
        }
        prev = cur;
        radius += cfg.margin;
    }
    Err(DmodError::NotStable { window: cfg.window, enlargements: MAX_ENLARGEMENTS })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Var;
    use crate::dmod::{apply_operator, OperatorWord};

    fn falling(k: i64, n: i64) -> Poly {
        // prod_{j<k} (n s - j), monic
        (0..k).fold(Poly::one(), |acc, j| &acc * &Poly::from_ints(Var::S, &[-j, n])).monic()
    }

    #[test]
    fn orbit_of_x_to_the_s() {
        let cfg = EngineConfig::single(1).with_window(6).unwrap();
        let m = generate_submodule(&[GradedElement::fs(1)], &Letter::differential(&cfg), &cfg).unwrap();
        for a in 0..=6 {
            assert!(m.ideal(&[a]).is_one());
        }
        for k in 1..=6 {
            assert_eq!(m.ideal(&[-k]), falling(k, 1));
        }
    }

    #[test]
    fn orbit_of_x_squared() {
        let cfg = EngineConfig::single(2);
        let m = generate_submodule(&[GradedElement::fs(1)], &Letter::differential(&cfg), &cfg).unwrap();
        assert!(m.ideal(&[0]).is_one());
        assert_eq!(m.ideal(&[-1]), Poly::from_ints(Var::S, &[0, 1]));
        assert_eq!(m.ideal(&[-2]), falling(2, 2));
    }

    #[test]
    fn shifted_generator_shifts_the_table() {
        let cfg = EngineConfig::single(1).with_window(6).unwrap();
        let letters = Letter::differential(&cfg);
        let base = generate_submodule(&[GradedElement::fs(1)], &letters, &cfg).unwrap();
        let tu = GradedElement::monomial(vec![1], Poly::one());
        let shifted = generate_submodule(&[tu], &letters, &cfg).unwrap();
        for a in -5..=6 {
            assert_eq!(shifted.ideal(&[a]), base.ideal(&[a - 1]).shift(&int(1)).monic(), "degree {a}");
        }
    }

    /// Independent oracle: enumerate every word up to a length and take the
    /// gcd of the resulting coefficients per degree.
    #[test]
    fn closure_matches_word_enumeration() {
        let cfg = EngineConfig::single(1).with_window(4).unwrap();
        let letters = [Letter::Mul(0), Letter::Diff(0)];
        let m = generate_submodule(&[GradedElement::fs(1)], &letters, &cfg).unwrap();
        let mut by_degree: BTreeMap<i64, Poly> = BTreeMap::new();
        let mut words = vec![OperatorWord::default()];
        for _ in 0..9 {
            let mut longer = Vec::new();
            for w in &words {
                if let Ok(e) = apply_operator(&GradedElement::fs(1), w, &cfg) {
                    for (d, p) in e.terms() {
                        let g = by_degree.entry(d[0]).or_insert_with(Poly::zero);
                        *g = g.gcd(p);
                    }
                }
                for l in &letters {
                    let mut v = w.0.clone();
                    v.insert(0, l.clone());
                    longer.push(OperatorWord(v));
                }
            }
            words = longer;
        }
        for a in -3..=3 {
            assert_eq!(m.ideal(&[a]), by_degree[&a], "degree {a}");
        }
    }

    #[test]
    fn unit_multiples_and_monotonicity() {
        let cfg = EngineConfig::pair(1, 2);
        let letters = Letter::v0(&cfg);
        let u = GradedElement::monomial(vec![-1, 0], Poly::from_ints(Var::S, &[0, -1, 1]));
        let a = generate_submodule(std::slice::from_ref(&u), &letters, &cfg).unwrap();
        let b = generate_submodule(&[u.scale(&Poly::constant(crate::arith::rat(-3, 2)))], &letters, &cfg).unwrap();
        assert_eq!(a, b);
        let more = generate_submodule(&[u, GradedElement::fs(2)], &letters, &cfg).unwrap();
        for (d, g) in a.ideals() {
            assert!(more.ideal_factored(d).divides(g));
        }
    }

    #[test]
    fn rejects_non_homogeneous() {
        let cfg = EngineConfig::single(1);
        let e = GradedElement::fs(1).add(&GradedElement::monomial(vec![1], Poly::one()));
        assert!(matches!(generate_submodule(&[e], &[Letter::Mul(0)], &cfg), Err(DmodError::NonHomogeneous(2))));
    }

    #[test]
    fn doubled_window_agrees() {
        let cfg = EngineConfig::pair(2, 1);
        let letters = Letter::v0(&cfg);
        let small = generate_submodule(&[GradedElement::fs(2)], &letters, &cfg).unwrap();
        let big = generate_submodule(&[GradedElement::fs(2)], &letters, &cfg.clone().with_window(24).unwrap()).unwrap();
        assert!(small.agrees_with(&big));
    }
}
