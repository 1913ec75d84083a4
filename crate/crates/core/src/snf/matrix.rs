use std::fmt;
use std::ops::{Index, IndexMut};

use crate::arith::Ring;

/// Dense row-major matrix over a commutative ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;

    fn index(&self, (i, j): (usize, usize)) -> &R {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<R: Ring> Matrix<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>) -> Matrix<R> {
        assert_eq!(data.len(), rows * cols, "entry count must be rows * cols");
        Matrix { rows, cols, data }
    }

    /// Rows of equal length; `cols` disambiguates the empty case.
    pub fn from_rows(rows: Vec<Vec<R>>, cols: usize) -> Matrix<R> {
        let n = rows.len();
        let data: Vec<R> = rows.into_iter().inspect(|r| assert_eq!(r.len(), cols)).flatten().collect();
        Matrix::new(n, cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Matrix<R> {
        Matrix::new(rows, cols, vec![R::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Matrix<R> {
        Matrix::diagonal(n, n, &vec![R::one(); n])
    }

    /// `rows x cols` with `diag` on the main diagonal, zero elsewhere.
    pub fn diagonal(rows: usize, cols: usize, diag: &[R]) -> Matrix<R> {
        assert!(diag.len() <= rows.min(cols));
        let mut m = Matrix::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out: Matrix<R> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(R::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix<R> {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn kronecker(&self, other: &Matrix<R>) -> Matrix<R> {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Matrix::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a.mul(&other[(k, l)]);
                    }
                }
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix<R> {
        let data = rows.iter().flat_map(|&i| cols.iter().map(move |&j| self[(i, j)].clone())).collect();
        Matrix::new(rows.len(), cols.len(), data)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += factor * row[source]`.
    pub fn add_row_multiple(&mut self, target: usize, source: usize, factor: &R) {
        for j in 0..self.cols {
            let s = &self[(source, j)];
            if !s.is_zero() {
                let v = self[(target, j)].add(&factor.mul(s));
                self[(target, j)] = v;
            }
        }
    }

    /// `col[target] += factor * col[source]`.
    pub fn add_col_multiple(&mut self, target: usize, source: usize, factor: &R) {
        for i in 0..self.rows {
            let s = &self[(i, source)];
            if !s.is_zero() {
                let v = self[(i, target)].add(&factor.mul(s));
                self[(i, target)] = v;
            }
        }
    }

    pub fn scale_row(&mut self, i: usize, factor: &R) {
        for j in 0..self.cols {
            let v = self[(i, j)].mul(factor);
            self[(i, j)] = v;
        }
    }

    pub fn scale_col(&mut self, j: usize, factor: &R) {
        for i in 0..self.rows {
            let v = self[(i, j)].mul(factor);
            self[(i, j)] = v;
        }
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> R {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return R::one();
        }
        let mut a = self.clone();
        let mut negate = false;
        let mut prev = R::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        negate = !negate;
                    }
                    None => return R::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[(i, j)].mul(&a[(k, k)]).sub(&a[(i, k)].mul(&a[(k, j)]));
                    a[(i, j)] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                a[(i, k)] = R::zero();
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if negate {
            d.neg()
        } else {
            d
        }
    }
}

impl<R: fmt::Display> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.data[i * self.cols + j].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn zm(rows: &[&[i64]]) -> Matrix<BigInt> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(), cols)
    }

    #[test]
    fn determinant() {
        assert_eq!(zm(&[&[2, 4], &[6, 8]]).det(), BigInt::from(-8));
        assert_eq!(zm(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]).det(), BigInt::from(-2));
        assert_eq!(zm(&[&[1, 2], &[2, 4]]).det(), BigInt::from(0));
    }

    #[test]
    fn kronecker_shape_and_entries() {
        let a = zm(&[&[1, 2], &[3, 4]]);
        let b = zm(&[&[0, 5]]);
        let k = a.kronecker(&b);
        assert_eq!((k.rows(), k.cols()), (2, 4));
        assert_eq!(k.row(1), &[0, 15, 0, 20].map(BigInt::from));
    }
}
