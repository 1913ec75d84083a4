use crate::arith::Euclidean;

use super::Matrix;

/// Smith normal form `U * M * V = diag(d_1, ..., d_rank, 0, ...)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SnfResult<R> {
    /// Canonical invariant factors, `d_1 | d_2 | ... | d_rank`, all nonzero.
    pub d: Vec<R>,
    /// Unimodular, `rows x rows`.
    pub u: Matrix<R>,
    /// Unimodular, `cols x cols`.
    pub v: Matrix<R>,
    pub rank: usize,
}

impl<R: Euclidean> SnfResult<R> {
    /// The diagonal form as a matrix of the original shape.
    pub fn diagonal(&self, rows: usize, cols: usize) -> Matrix<R> {
        Matrix::diagonal(rows, cols, &self.d)
    }
}

/// Smallest nonzero entry (by Euclidean size) of the trailing block,
/// ties broken by row then column.
fn pick_pivot<R: Euclidean>(a: &Matrix<R>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(R::Size, usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let e = &a[(i, j)];
            if e.is_zero() {
                continue;
            }
            let size = e.size();
            if best.as_ref().is_none_or(|(b, _, _)| size < *b) {
                best = Some((size, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

pub fn smith_normal_form<R: Euclidean>(m: &Matrix<R>) -> SnfResult<R> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = Matrix::identity(rows);
    let mut v = Matrix::identity(cols);
    let mut rank = 0;

    for t in 0..rows.min(cols) {
        while let Some((pi, pj)) = pick_pivot(&a, t) {
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            // keep the pivot row canonical to limit coefficient growth
            let unit = a[(t, t)].normalizing_unit();
            a.scale_row(t, &unit);
            u.scale_row(t, &unit);

            let pivot = a[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let (q, r) = a[(i, t)].div_rem(&pivot);
                let f = q.neg();
                a.add_row_multiple(i, t, &f);
                u.add_row_multiple(i, t, &f);
                dirty |= !r.is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let (q, r) = a[(t, j)].div_rem(&pivot);
                let f = q.neg();
                a.add_col_multiple(j, t, &f);
                v.add_col_multiple(j, t, &f);
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }

            // the pivot must divide the whole trailing block
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_zero() && a[(i, j)].div_exact(&pivot).is_none());
            match offender {
                Some((i, _)) => {
                    a.add_row_multiple(t, i, &R::one());
                    u.add_row_multiple(t, i, &R::one());
                }
                None => break,
            }
        }
        if a[(t, t)].is_zero() {
            break;
        }
        rank = t + 1;
    }

    let d = (0..rank).map(|i| a[(i, i)].clone()).collect();
    SnfResult { d, u, v, rank }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Poly, Ring, Var};
    use crate::snf::test_support::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn check<R: Euclidean>(m: &Matrix<R>) -> SnfResult<R> {
        let snf = smith_normal_form(m);
        let prod = snf.u.mul(m).mul(&snf.v);
        assert_eq!(prod, snf.diagonal(m.rows(), m.cols()), "U M V is not the diagonal form");
        assert!(snf.u.det().is_unit() && snf.v.det().is_unit());
        for w in snf.d.windows(2) {
            assert!(w[0].divides(&w[1]), "divisibility chain broken");
        }
        for d in &snf.d {
            assert_eq!(*d, d.canonical());
        }
        snf
    }

    #[test]
    fn integer_example() {
        let snf = check(&zmat(&[&[2, 4], &[6, 8]]));
        assert_eq!(snf.d, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn identity_and_already_diagonal() {
        let snf = check(&Matrix::<BigInt>::identity(3));
        assert_eq!(snf.d, vec![BigInt::from(1); 3]);

        let s = Poly::var_poly(Var::S);
        let s2s = Poly::from_ints(Var::S, &[0, 1, 1]);
        let m = Matrix::diagonal(2, 2, &[s.clone(), s2s.clone()]);
        let snf = check(&m);
        assert_eq!(snf.d, vec![s, s2s]);
    }

    #[test]
    fn degenerate_shapes() {
        let snf = check(&Matrix::<BigInt>::zeros(0, 3));
        assert_eq!(snf.rank, 0);
        let snf = check(&Matrix::<BigInt>::zeros(3, 2));
        assert_eq!(snf.rank, 0);
        assert_eq!(snf.u, Matrix::identity(3));
        let snf = check(&zmat(&[&[0, 0], &[0, 6], &[0, 4]]));
        assert_eq!(snf.d, vec![BigInt::from(2)]);
    }

    #[test]
    fn determinantal_divisors_match_on_random_integer_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let m = random_int_matrix(&mut rng, 5, 20);
            let snf = check(&m);
            assert_eq!(snf.d, invariant_factors_by_minors(&m));
        }
    }

    #[test]
    fn determinantal_divisors_match_on_random_poly_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..60 {
            let m = random_poly_matrix(&mut rng, 4, 2);
            let snf = check(&m);
            assert_eq!(snf.d, invariant_factors_by_minors(&m));
        }
    }

    proptest! {
        #[test]
        fn small_integer_matrices(rows in 0usize..4, cols in 0usize..4,
                                  seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_int_matrix_shape(&mut rng, rows, cols, 9);
            let snf = check(&m);
            prop_assert_eq!(snf.d, invariant_factors_by_minors(&m));
        }
    }

    #[test]
    fn negated_pivots_are_normalized() {
        let m = zmat(&[&[-3, 0], &[0, -6]]);
        let snf = check(&m);
        assert_eq!(snf.d, vec![BigInt::from(3), BigInt::from(6)]);
        assert_eq!(BigInt::from(-1).neg(), BigInt::from(1));
    }
}
