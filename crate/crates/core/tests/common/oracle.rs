//! Independent oracles and random generators shared by unit and
//! integration tests. Nothing here calls the Smith normal form code.

#![allow(dead_code)]

use bspid::arith::{Domain, Euclidean, Poly, Rat, Ring, Var};
use bspid::snf::Matrix;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;

pub fn zmat(rows: &[&[i64]]) -> Matrix<BigInt> {
    let cols = rows.first().map_or(0, |r| r.len());
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(), cols)
}

pub fn random_int_matrix_shape<G: Rng>(rng: &mut G, rows: usize, cols: usize, bound: i64) -> Matrix<BigInt> {
    let data = (0..rows * cols)
        .map(|_| if rng.gen_bool(0.25) { <BigInt as Domain>::zero() } else { BigInt::from(rng.gen_range(-bound..=bound)) })
        .collect();
    Matrix::new(rows, cols, data)
}

pub fn random_int_matrix<G: Rng>(rng: &mut G, max_dim: usize, bound: i64) -> Matrix<BigInt> {
    let rows = rng.gen_range(1..=max_dim);
    let cols = rng.gen_range(1..=max_dim);
    random_int_matrix_shape(rng, rows, cols, bound)
}

pub fn random_poly<G: Rng>(rng: &mut G, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-3..=3)).collect();
    Poly::from_ints(Var::S, &coeffs)
}

pub fn random_poly_matrix_shape<G: Rng>(rng: &mut G, rows: usize, cols: usize, max_deg: usize) -> Matrix<Poly> {
    let data = (0..rows * cols)
        .map(|_| if rng.gen_bool(0.3) { Poly::zero() } else { random_poly(rng, max_deg) })
        .collect();
    Matrix::new(rows, cols, data)
}

pub fn random_poly_matrix<G: Rng>(rng: &mut G, max_dim: usize, max_deg: usize) -> Matrix<Poly> {
    let rows = rng.gen_range(1..=max_dim);
    let cols = rng.gen_range(1..=max_dim);
    random_poly_matrix_shape(rng, rows, cols, max_deg)
}

/// Laplace expansion along the first row.
pub fn cofactor_det<R: Ring>(m: &Matrix<R>) -> R {
    let n = m.rows();
    if n == 0 {
        return R::one();
    }
    if n == 1 {
        return m[(0, 0)].clone();
    }
    let mut acc = R::zero();
    for j in 0..n {
        if m[(0, j)].is_zero() {
            continue;
        }
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let term = m[(0, j)].mul(&cofactor_det(&m.submatrix(&rows, &cols)));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for mut rest in combinations(n, k - 1).into_iter().filter(|r| r.first().is_none_or(|&x| x > first)) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `d_k = D_k / D_(k-1)` with `D_k` the gcd of all k x k minors.
pub fn invariant_factors_by_minors<R: Euclidean>(m: &Matrix<R>) -> Vec<R> {
    let mut out = Vec::new();
    let mut prev = R::one();
    for k in 1..=m.rows().min(m.cols()) {
        let mut dk = R::zero();
        for rows in combinations(m.rows(), k) {
            for cols in combinations(m.cols(), k) {
                dk = dk.gcd(&cofactor_det(&m.submatrix(&rows, &cols)));
            }
        }
        if dk.is_zero() {
            break;
        }
        let dk = dk.canonical();
        out.push(dk.div_exact(&prev).expect("determinantal divisors form a chain").canonical());
        prev = dk;
    }
    out
}

pub fn random_nonsingular_int_matrix<G: Rng>(rng: &mut G, n: usize, bound: i64) -> Matrix<BigInt> {
    loop {
        let m = random_int_matrix_shape(rng, n, n, bound);
        if !Domain::is_zero(&cofactor_det(&m)) {
            return m;
        }
    }
}

/// Solve `m x = v` over the rationals by Gauss-Jordan; `m` nonsingular.
fn rational_solve(m: &Matrix<BigInt>, v: &[BigInt]) -> Vec<Rat> {
    let n = m.rows();
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = m.row(i).iter().map(|x| Rat::from_integer(x.clone())).collect();
            row.push(Rat::from_integer(v[i].clone()));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("nonsingular");
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let pivot = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n].clone()).collect()
}

/// Smallest `b >= 1` with `b * delta` in the integer column span of the
/// nonsingular square matrix `m`; found by trying `b = 1..=|det m|`.
pub fn exhaustive_int_annihilator(m: &Matrix<BigInt>, delta: &[BigInt]) -> BigInt {
    let det = cofactor_det(m).abs();
    let x = rational_solve(m, delta);
    let mut b = <BigInt as Domain>::one();
    while b <= det {
        let scaled = Rat::from_integer(b.clone());
        if x.iter().all(|xi| (xi * &scaled).is_integer()) {
            return b;
        }
        b += 1;
    }
    panic!("the exponent of Z^n / M Z^n divides |det M|")
}

/// A random unimodular integer matrix together with its inverse, built
/// from elementary row operations.
pub fn random_unimodular_int<G: Rng>(rng: &mut G, n: usize) -> (Matrix<BigInt>, Matrix<BigInt>) {
    let mut l = Matrix::<BigInt>::identity(n);
    let mut inv = Matrix::<BigInt>::identity(n);
    for _ in 0..2 * n {
        if n < 2 {
            break;
        }
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let f = BigInt::from(rng.gen_range(-2..=2));
        l.add_row_multiple(i, j, &f);
        // the inverse operation applied on the right of the inverse
        inv.add_col_multiple(j, i, &(-&f));
    }
    (l, inv)
}
