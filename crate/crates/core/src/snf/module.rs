use crate::arith::{Domain, Euclidean};

use super::{smith_normal_form, Matrix, SnfResult};

/// `P / Q` with `P = R^m` and `Q` the column span of `relations` (m rows).
#[derive(Clone, Debug)]
pub struct FinPresModule<R: Euclidean> {
    relations: Matrix<R>,
    snf: SnfResult<R>,
}

impl<R: Euclidean> FinPresModule<R> {
    pub fn new(relations: Matrix<R>) -> FinPresModule<R> {
        let snf = smith_normal_form(&relations);
        FinPresModule { relations, snf }
    }

    pub fn ambient_rank(&self) -> usize {
        self.relations.rows()
    }

    pub fn relations(&self) -> &Matrix<R> {
        &self.relations
    }

    pub fn snf(&self) -> &SnfResult<R> {
        &self.snf
    }

    fn check_len(&self, v: &[R]) {
        assert_eq!(v.len(), self.ambient_rank(), "element length must match the ambient rank");
    }

    /// Canonical generator of `{b : b * delta in Q}`, zero when the class
    /// of `delta` is not torsion.
    ///
    /// In the SNF basis the quotient is `(+) R/d_p (+) R^(m - rank)`; the
    /// colon ideal of the component `delta'_p` in `R/d_p` is
    /// `d_p / gcd(d_p, delta'_p)`.
    pub fn element_annihilator(&self, delta: &[R]) -> R {
        self.check_len(delta);
        let transformed = self.snf.u.mul_vec(delta);
        let mut ann = R::one();
        for (p, coord) in transformed.iter().enumerate() {
            if p >= self.snf.rank {
                if !coord.is_zero() {
                    return R::zero();
                }
                continue;
            }
            let d = &self.snf.d[p];
            let colon = d.div_exact(&d.gcd(coord)).expect("gcd divides");
            ann = ann.lcm(&colon);
        }
        ann.canonical()
    }

    /// `x` with `relations * x = v`, if one exists over the ring.
    pub fn membership_solve(&self, v: &[R]) -> Option<Vec<R>> {
        self.check_len(v);
        let transformed = self.snf.u.mul_vec(v);
        let cols = self.relations.cols();
        let mut y = vec![R::zero(); cols];
        for (p, coord) in transformed.iter().enumerate() {
            if p < self.snf.rank {
                y[p] = coord.div_exact(&self.snf.d[p])?;
            } else if !coord.is_zero() {
                return None;
            }
        }
        Some(self.snf.v.mul_vec(&y))
    }
}

/// Whether the coordinates generate the unit ideal, i.e. the vector is
/// part of a basis of the free module.
pub fn is_basis_extendable<R: Domain>(delta: &[R]) -> bool {
    delta.iter().fold(R::zero(), |g, c| g.gcd(c)).is_unit()
}
