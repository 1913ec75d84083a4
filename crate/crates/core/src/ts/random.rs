//! Seeded random instances: invariant-factor chains, element coordinates
//! with unit gcd, and raw inclusions scrambled by unimodular matrices.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::lemma::{FactorData, Instance, LemmaRing, Mode, RawInclusion, TsInstance};
use crate::arith::{rat, Euclidean, Poly, Rat, SepPoly, Var};
use crate::snf::{is_basis_extendable, Matrix};

/// The stream for one trial: the seed picks the key, the trial index the
/// stream, so trials can run in any order.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_factors: usize,
    /// Largest number of cyclic torsion summands per factor.
    pub max_rank: usize,
    /// Largest ambient rank per factor.
    pub max_ambient: usize,
    /// Largest degree of a generated invariant factor or coordinate.
    pub max_degree: usize,
    /// Largest absolute value of a generated integer.
    pub max_entry: i64,
}

impl Bounds {
    /// Defaults keep every Kronecker presentation at most 64 x 64.
    pub fn for_mode(mode: Mode) -> Bounds {
        match mode {
            Mode::Theorem => Bounds { max_factors: 2, max_rank: 4, max_ambient: 4, max_degree: 3, max_entry: 50 },
            Mode::Ideal => Bounds { max_factors: 3, max_rank: 4, max_ambient: 4, max_degree: 3, max_entry: 50 },
            Mode::Integer => Bounds { max_factors: 3, max_rank: 4, max_ambient: 4, max_degree: 3, max_entry: 50 },
        }
    }
}

/// Ring-specific sampling.
trait Sample: Euclidean {
    fn chain<G: Rng>(rng: &mut G, n: usize, var: Var, b: &Bounds) -> Vec<Self>;
    fn coordinate<G: Rng>(rng: &mut G, var: Var, b: &Bounds) -> Self;
    fn unit<G: Rng>(rng: &mut G) -> Self;
    fn multiplier<G: Rng>(rng: &mut G, var: Var) -> Self;
}

impl Sample for BigInt {
    fn chain<G: Rng>(rng: &mut G, n: usize, _: Var, b: &Bounds) -> Vec<BigInt> {
        let mut cur: i64 = rng.gen_range(1..=5);
        let mut out = Vec::with_capacity(n);
        for p in 0..n {
            if p > 0 {
                let k: i64 = rng.gen_range(1..=3);
                if cur * k <= b.max_entry {
                    cur *= k;
                }
            }
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            out.push(BigInt::from(sign * cur));
        }
        out
    }

    fn coordinate<G: Rng>(rng: &mut G, _: Var, _: &Bounds) -> BigInt {
        if rng.gen_bool(0.25) {
            BigInt::from(0)
        } else {
            BigInt::from(rng.gen_range(-9..=9))
        }
    }

    fn unit<G: Rng>(rng: &mut G) -> BigInt {
        BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 })
    }

    fn multiplier<G: Rng>(rng: &mut G, _: Var) -> BigInt {
        BigInt::from(rng.gen_range(-2..=2))
    }
}

fn atom<G: Rng>(rng: &mut G, var: Var, budget: usize) -> Poly {
    const ROOTS: [(i64, i64); 10] = [(0, 1), (1, 1), (-1, 1), (2, 1), (-2, 1), (3, 1), (-3, 1), (-1, 2), (1, 2), (-1, 3)];
    const QUADRATICS: [[i64; 3]; 3] = [[1, 0, 1], [-2, 0, 1], [1, 1, 1]];
    if budget >= 2 && rng.gen_bool(0.2) {
        return Poly::from_ints(var, QUADRATICS.choose(rng).expect("nonempty"));
    }
    let (n, d) = *ROOTS.choose(rng).expect("nonempty");
    Poly::linear(var, &rat(n, d))
}

fn small_unit_scalar<G: Rng>(rng: &mut G) -> Rat {
    const SCALARS: [(i64, i64); 5] = [(1, 1), (1, 1), (-1, 1), (2, 1), (-1, 2)];
    let (n, d) = *SCALARS.choose(rng).expect("nonempty");
    rat(n, d)
}

impl Sample for Poly {
    fn chain<G: Rng>(rng: &mut G, n: usize, var: Var, b: &Bounds) -> Vec<Poly> {
        let mut cur = Poly::one().with_var(var);
        let mut out = Vec::with_capacity(n);
        for p in 0..n {
            let deg = cur.degree().unwrap_or(0);
            let last = p + 1 == n;
            if deg < b.max_degree && (rng.gen_bool(0.5) || (last && deg == 0)) {
                cur = &cur * &atom(rng, var, b.max_degree - deg);
            }
            out.push(cur.scale(&small_unit_scalar(rng)));
        }
        out
    }

    fn coordinate<G: Rng>(rng: &mut G, var: Var, b: &Bounds) -> Poly {
        if rng.gen_bool(0.25) {
            return Poly::zero().with_var(var);
        }
        let deg = rng.gen_range(0..=b.max_degree.min(2));
        let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-3..=3)).collect();
        Poly::from_ints(var, &coeffs)
    }

    fn unit<G: Rng>(rng: &mut G) -> Poly {
        Poly::constant(small_unit_scalar(rng))
    }

    fn multiplier<G: Rng>(rng: &mut G, var: Var) -> Poly {
        if rng.gen_bool(0.3) {
            Poly::from_ints(var, &[rng.gen_range(-2..=2), if rng.gen_bool(0.5) { 1 } else { -1 }])
        } else {
            Poly::from_ints(var, &[rng.gen_range(-2..=2)])
        }
    }
}

/// A unimodular `n x n` matrix: a permutation, unit scalings and a few
/// elementary row operations.
fn unimodular<E: Sample, G: Rng>(rng: &mut G, n: usize, var: Var) -> Matrix<E> {
    let mut m = Matrix::<E>::identity(n);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    for (i, &p) in perm.iter().enumerate() {
        if i < p {
            m.swap_rows(i, p);
        }
    }
    for i in 0..n {
        m.scale_row(i, &E::unit(rng));
    }
    if n >= 2 {
        for _ in 0..n {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            m.add_row_multiple(i, j, &E::multiplier(rng, var));
        }
    }
    m
}

fn random_factor<E: Sample, G: Rng>(rng: &mut G, var: Var, b: &Bounds) -> (Vec<E>, Vec<E>, RawInclusion<E>) {
    let ambient = rng.gen_range(1..=b.max_ambient);
    let n = rng.gen_range(1..=ambient.min(b.max_rank));
    let a = E::chain(rng, n, var, b);
    let mut c: Vec<E> = (0..n).map(|_| E::coordinate(rng, var, b)).collect();
    if !is_basis_extendable(&c) {
        let p = rng.gen_range(0..n);
        c[p] = E::unit(rng);
    }
    let mut delta = c.clone();
    delta.resize(ambient, E::zero());

    let left: Matrix<E> = unimodular(rng, ambient, var);
    let right: Matrix<E> = unimodular(rng, n, var);
    let relations = left.mul(&Matrix::diagonal(ambient, n, &a)).mul(&right);
    (a, c, RawInclusion { relations, delta: left.mul_vec(&delta) })
}

fn build<R, G>(rng: &mut G, r: usize, b: &Bounds) -> Instance<R>
where
    R: LemmaRing,
    R::Entry: Sample,
    G: Rng,
{
    let mut factors = Vec::with_capacity(r);
    let mut raw = Vec::with_capacity(r);
    for i in 0..r {
        let (a, c, inclusion) = random_factor::<R::Entry, G>(rng, R::factor_var(i), b);
        let free_padding = inclusion.relations.rows() - a.len();
        factors.push(FactorData {
            index: i,
            a: a.iter().map(|x| R::lift(x, i)).collect(),
            c: c.iter().map(|x| R::lift(x, i)).collect(),
            free_padding,
        });
        raw.push(inclusion);
    }
    let inst = Instance { factors, raw: Some(raw) };
    inst.validate().expect("generated instances satisfy the hypotheses");
    inst
}

pub fn random_instance_with(seed: u64, trial: u64, mode: Mode, bounds: &Bounds) -> TsInstance {
    let mut rng = trial_rng(seed, trial);
    match mode {
        Mode::Theorem => TsInstance::Theorem(build::<Poly, _>(&mut rng, 2, bounds)),
        Mode::Ideal => {
            let r = rng.gen_range(1..=bounds.max_factors);
            TsInstance::Ideal(build::<SepPoly, _>(&mut rng, r, bounds))
        }
        Mode::Integer => {
            let r = rng.gen_range(1..=bounds.max_factors);
            TsInstance::Integer(build::<BigInt, _>(&mut rng, r, bounds))
        }
    }
}

pub fn random_instance(seed: u64, trial: u64, mode: Mode) -> TsInstance {
    random_instance_with(seed, trial, mode, &Bounds::for_mode(mode))
}
