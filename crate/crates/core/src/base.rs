//! The interface shared by every commutative base ring that forms and
//! algebras can live over.

use std::fmt::Debug;

use crate::numeric::linalg::{self, QMatrix};
use crate::numeric::{OrderedField, Rational, Ring, Sign};

/// A finite étale ℚ-algebra together with its finitely many orderings.
///
/// Orderings are addressed by index into a canonical, deterministic list.
/// Each ordering comes with a real residue field (a real number field
/// with a chosen embedding) and the residue map into it.
pub trait BaseRing: Ring + Clone + PartialEq + Send + Sync + Debug {
    type Residue: OrderedField + Clone + Send + Sync;

    fn num_orderings(&self) -> usize;
    fn residue_field(&self, ordering: usize) -> &Self::Residue;
    fn residue(&self, ordering: usize, a: &Self::Elem) -> <Self::Residue as Ring>::Elem;
    /// Short human-readable description of an ordering.
    fn ordering_label(&self, ordering: usize) -> String;

    /// Dimension as a ℚ-vector space, and coordinates in a fixed basis.
    fn q_dim(&self) -> usize;
    fn q_coords(&self, a: &Self::Elem) -> Vec<Rational>;
    fn from_q_coords(&self, c: &[Rational]) -> Self::Elem;

    fn q_basis(&self) -> Vec<Self::Elem> {
        let n = self.q_dim();
        (0..n)
            .map(|i| {
                let mut c = vec![Rational::from_integer(0.into()); n];
                c[i] = Rational::from_integer(1.into());
                self.from_q_coords(&c)
            })
            .collect()
    }

    fn sign_at(&self, ordering: usize, a: &Self::Elem) -> Sign {
        let f = self.residue_field(ordering);
        f.sign(&self.residue(ordering, a))
    }

    /// Inverse, or `None` for zero divisors.
    fn try_inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let m = regular_matrix(self, a);
        let one = self.q_coords(&self.one());
        linalg::solve(&m, &one).map(|x| self.from_q_coords(&x))
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.try_inverse(a).is_some()
    }
}

/// Matrix of multiplication by `a` on the ℚ-basis (columns are images).
pub fn regular_matrix<R: BaseRing>(r: &R, a: &R::Elem) -> QMatrix {
    let n = r.q_dim();
    let cols: Vec<Vec<Rational>> = r.q_basis().iter().map(|b| r.q_coords(&r.mul(a, b))).collect();
    (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
}

/// Regular representation of a square matrix over `R`: a block matrix
/// over ℚ. The matrix is invertible over `R` iff this is nonsingular.
pub fn regular_block_matrix<R: BaseRing>(r: &R, m: &[Vec<R::Elem>]) -> QMatrix {
    let n = r.q_dim();
    let size = m.len() * n;
    let mut out = vec![vec![Rational::from_integer(0.into()); size]; size];
    for (i, row) in m.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if r.is_zero(e) {
                continue;
            }
            let block = regular_matrix(r, e);
            for (bi, brow) in block.into_iter().enumerate() {
                for (bj, v) in brow.into_iter().enumerate() {
                    out[i * n + bi][j * n + bj] = v;
                }
            }
        }
    }
    out
}
