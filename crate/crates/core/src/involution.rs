//! Matrix algebras `M_n(D)` with involutions `σ(X) = u⁻¹·θ(X)ᵀ·u`, where
//! `θ` is the identity (transpose) or the canonical involution of `D`
//! (conjugate transpose) and `u` is a unit with `θ(u)ᵀ = ±u`.

use std::fmt;
use std::sync::Arc;

use crate::base::BaseRing;
use crate::division::{DElem, Division, DivisionKind};
use crate::error::{Error, Result};
use crate::etale::EtaleAlgebra;
use crate::matrix::{self, Matrix, MatrixRing};
use crate::numeric::linalg::{self, QMatrix};
use crate::numeric::{Rational, Ring, Sign};
use crate::relative::RelativeEtale;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Standard {
    Transpose,
    ConjTranspose,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvolutionType {
    Orthogonal,
    Symplectic,
    Unitary,
    UnitarySplit,
}

impl fmt::Display for InvolutionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvolutionType::Orthogonal => "orthogonal",
            InvolutionType::Symplectic => "symplectic",
            InvolutionType::Unitary => "unitary",
            InvolutionType::UnitarySplit => "unitary-split",
        })
    }
}

/// An `n×n` matrix over `D`.
pub type AlgElement<E> = Matrix<DElem<E>>;

#[derive(Clone, Debug)]
pub struct InvolutiveAlgebra<R: BaseRing> {
    d: Division<Arc<R>>,
    n: usize,
    standard: Standard,
    twist: AlgElement<R::Elem>,
    twist_inv: AlgElement<R::Elem>,
    /// `s` with `θ(u)ᵀ = s·u`.
    twist_sign: i64,
}

impl<R: BaseRing> InvolutiveAlgebra<R> {
    /// `twist = None` means `u = I`.
    ///
    /// Supported pairs: the base kind with either standard (they agree),
    /// quadratic and quaternion kinds with the conjugate transpose.
    pub fn new(
        base: Arc<R>,
        n: usize,
        kind: DivisionKind,
        params: Vec<R::Elem>,
        standard: Standard,
        twist: Option<AlgElement<R::Elem>>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("matrix size must be positive".into()));
        }
        if params.len() != kind.num_params() {
            return Err(Error::Shape(format!(
                "{kind} division algebra takes {} parameters",
                kind.num_params()
            )));
        }
        if kind != DivisionKind::Base && standard == Standard::Transpose {
            return Err(Error::Unsupported(format!(
                "plain transpose over the {kind} kind is not an involution of the first kind here; use conj-transpose"
            )));
        }
        for p in &params {
            if !base.is_unit(p) {
                return Err(Error::NotUnit(format!("division parameter {p:?}")));
            }
        }
        let d = Division::new(base, kind, params);
        let twist = match twist {
            Some(u) => u,
            None => matrix::identity(&d, n),
        };
        if twist.len() != n
            || twist
                .iter()
                .any(|r| r.len() != n || r.iter().any(|e| e.len() != kind.dim()))
        {
            return Err(Error::Shape(format!("twist must be {n}×{n} over D")));
        }
        let twist_inv =
            d_matrix_inverse(&d, &twist).ok_or_else(|| Error::NotUnit("twist matrix is not invertible".into()))?;
        let mut alg = InvolutiveAlgebra {
            d,
            n,
            standard,
            twist,
            twist_inv,
            twist_sign: 1,
        };
        let tu = alg.theta_t(&alg.twist);
        let ring = alg.ring();
        alg.twist_sign = if ring.is_zero(&ring.sub(&tu, &alg.twist)) {
            1
        } else if ring.is_zero(&ring.add(&tu, &alg.twist)) {
            -1
        } else {
            return Err(Error::Domain("twist u must satisfy θ(u)ᵀ = ±u".into()));
        };
        for g in alg.generators() {
            if !ring.is_zero(&ring.sub(&alg.sigma(&alg.sigma(&g)), &g)) {
                return Err(Error::Domain("σ is not an involution".into()));
            }
        }
        Ok(alg)
    }

    pub fn base(&self) -> &Arc<R> {
        self.d.scalars()
    }

    pub fn division(&self) -> &Division<Arc<R>> {
        &self.d
    }

    pub fn kind(&self) -> DivisionKind {
        self.d.kind()
    }

    pub fn params(&self) -> &[R::Elem] {
        self.d.params()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn standard(&self) -> Standard {
        self.standard
    }

    pub fn twist(&self) -> &AlgElement<R::Elem> {
        &self.twist
    }

    pub fn twist_inv(&self) -> &AlgElement<R::Elem> {
        &self.twist_inv
    }

    pub fn twist_sign(&self) -> i64 {
        self.twist_sign
    }

    /// The ring `M_n(D)` as a context.
    pub fn ring(&self) -> MatrixRing<Division<Arc<R>>> {
        MatrixRing {
            ring: self.d.clone(),
            n: self.n,
        }
    }

    pub fn same_as(&self, other: &Self) -> bool {
        self.n == other.n
            && self.standard == other.standard
            && self.kind() == other.kind()
            && self.base() == other.base()
            && self.params() == other.params()
            && self.twist == other.twist
    }

    pub fn theta(&self, x: &DElem<R::Elem>) -> DElem<R::Elem> {
        match self.standard {
            Standard::Transpose => x.clone(),
            Standard::ConjTranspose => self.d.conj(x),
        }
    }

    /// `θ(X)ᵀ` for a rectangular matrix over `D`.
    pub fn theta_t(&self, x: &Matrix<DElem<R::Elem>>) -> Matrix<DElem<R::Elem>> {
        matrix::transpose(&matrix::map(x, |e| self.theta(e)))
    }

    pub fn sigma(&self, x: &AlgElement<R::Elem>) -> AlgElement<R::Elem> {
        let d = &self.d;
        matrix::mul(d, &matrix::mul(d, &self.twist_inv, &self.theta_t(x)), &self.twist)
    }

    /// `r·I` for a base scalar.
    pub fn scalar(&self, r: &R::Elem) -> AlgElement<R::Elem> {
        matrix::scale(&self.d, &self.d.scalar(r.clone()), &matrix::identity(&self.d, self.n))
    }

    /// `x·I` for `x ∈ D`.
    pub fn d_scalar(&self, x: &DElem<R::Elem>) -> AlgElement<R::Elem> {
        matrix::scale(&self.d, x, &matrix::identity(&self.d, self.n))
    }

    pub fn is_symmetric(&self, x: &AlgElement<R::Elem>) -> bool {
        let ring = self.ring();
        ring.is_zero(&ring.sub(&self.sigma(x), x))
    }

    /// `E_ij ⊗ basis_k ⊗ b` for a ℚ-basis `b` of the base: spans `M_n(D)`
    /// over ℚ.
    pub fn generators(&self) -> Vec<AlgElement<R::Elem>> {
        let mut out = Vec::new();
        let zero = self.ring().zero();
        for b in self.base().q_basis() {
            for i in 0..self.n {
                for j in 0..self.n {
                    for k in 0..self.d.dim() {
                        let mut x = zero.clone();
                        x[i][j] = self.d.scale(&b, &self.d.basis(k));
                        out.push(x);
                    }
                }
            }
        }
        out
    }

    /// The division algebra at an ordering's real residue field.
    pub fn residue_division(&self, ordering: usize) -> Division<R::Residue> {
        let base = self.base().clone();
        let f = base.residue_field(ordering).clone();
        self.d.map(f, |p| base.residue(ordering, p))
    }

    /// Whether `D ⊗ k(α)` is split.
    pub fn is_split_at(&self, ordering: usize) -> bool {
        self.residue_division(ordering).is_split()
    }

    pub fn type_at(&self, ordering: usize) -> InvolutionType {
        match self.kind() {
            DivisionKind::Base => {
                if self.twist_sign == 1 {
                    InvolutionType::Orthogonal
                } else {
                    InvolutionType::Symplectic
                }
            }
            DivisionKind::Quadratic => {
                if self.base().sign_at(ordering, &self.params()[0]) == Sign::Negative {
                    InvolutionType::Unitary
                } else {
                    InvolutionType::UnitarySplit
                }
            }
            // the canonical quaternion involution is symplectic; a skew
            // twist flips the type
            DivisionKind::Quaternion => {
                if self.twist_sign == 1 {
                    InvolutionType::Symplectic
                } else {
                    InvolutionType::Orthogonal
                }
            }
        }
    }

    /// Orderings at which every hermitian form has signature zero.
    pub fn in_nil(&self, ordering: usize) -> bool {
        match self.type_at(ordering) {
            InvolutionType::UnitarySplit => true,
            InvolutionType::Unitary => false,
            InvolutionType::Symplectic => self.is_split_at(ordering),
            InvolutionType::Orthogonal => !self.is_split_at(ordering),
        }
    }

    pub fn nil_set(&self) -> Vec<usize> {
        (0..self.base().num_orderings()).filter(|&a| self.in_nil(a)).collect()
    }

    /// Degree over the center.
    pub fn degree(&self) -> usize {
        match self.kind() {
            DivisionKind::Quaternion => 2 * self.n,
            _ => self.n,
        }
    }

    pub fn center_label(&self) -> &'static str {
        match self.kind() {
            DivisionKind::Quadratic => "quadratic extension of the base",
            _ => "base",
        }
    }

    /// The largest signature of a rank-one form at a non-nil ordering.
    pub fn n_alpha(&self, ordering: usize) -> usize {
        match self.kind() {
            DivisionKind::Quaternion if self.is_split_at(ordering) => 2 * self.n,
            _ => self.n,
        }
    }
}

/// Matrix over ℚ of `x ↦ u·x` on column vectors `D^n`.
pub fn left_mult_qmatrix<R: BaseRing>(d: &Division<Arc<R>>, u: &Matrix<DElem<R::Elem>>) -> QMatrix {
    let base = d.scalars();
    let rows = u.len();
    let cols = u.first().map_or(0, |r| r.len());
    let qb = base.q_basis();
    let mut columns: Vec<Vec<Rational>> = Vec::new();
    for j in 0..cols {
        for k in 0..d.dim() {
            for b in &qb {
                let e = d.scale(b, &d.basis(k));
                let image: Vec<DElem<R::Elem>> = (0..rows).map(|i| d.mul(&u[i][j], &e)).collect();
                columns.push(
                    image
                        .iter()
                        .flat_map(|x| x.iter().flat_map(|c| base.q_coords(c)))
                        .collect(),
                );
            }
        }
    }
    let n = columns.first().map_or(0, |c| c.len());
    (0..n).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect()
}

pub fn d_matrix_is_invertible<R: BaseRing>(d: &Division<Arc<R>>, u: &Matrix<DElem<R::Elem>>) -> bool {
    matrix::is_square(u) && linalg::is_nonsingular(&left_mult_qmatrix(d, u))
}

/// Inverse of a square matrix over `D`, through its ℚ-linear left
/// multiplication map. Works even when the base has zero divisors.
pub fn d_matrix_inverse<R: BaseRing>(
    d: &Division<Arc<R>>,
    u: &Matrix<DElem<R::Elem>>,
) -> Option<Matrix<DElem<R::Elem>>> {
    let n = u.len();
    let base = d.scalars();
    let l = left_mult_qmatrix(d, u);
    let qd = base.q_dim();
    let one = base.q_coords(&base.one());
    let mut inv = matrix::zeros(d, n, n);
    for j in 0..n {
        // right-hand side: coordinates of the column e_j
        let mut rhs = vec![Rational::from_integer(0.into()); n * d.dim() * qd];
        let at = j * d.dim() * qd;
        rhs[at..at + qd].clone_from_slice(&one);
        let x = linalg::solve(&l, &rhs)?;
        for i in 0..n {
            let mut e = Vec::with_capacity(d.dim());
            for k in 0..d.dim() {
                let s = (i * d.dim() + k) * qd;
                e.push(base.from_q_coords(&x[s..s + qd]));
            }
            inv[i][j] = e;
        }
    }
    Some(inv)
}

impl InvolutiveAlgebra<EtaleAlgebra> {
    /// `A ⊗_K T` with the involution extended by the identity on `T`.
    pub fn extend_scalars(&self, e: &Arc<RelativeEtale>) -> InvolutiveAlgebra<RelativeEtale> {
        let embed = |x: &DElem<_>| x.iter().map(|c| e.embed(c)).collect::<Vec<_>>();
        let d = self.d.map(e.clone(), |p| e.embed(p));
        InvolutiveAlgebra {
            d,
            n: self.n,
            standard: self.standard,
            twist: matrix::map(&self.twist, embed),
            twist_inv: matrix::map(&self.twist_inv, embed),
            twist_sign: self.twist_sign,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::UniPoly;

    fn q() -> Arc<EtaleAlgebra> {
        Arc::new(EtaleAlgebra::rationals())
    }

    fn qm(base: &Arc<EtaleAlgebra>, rows: &[&[i64]]) -> AlgElement<crate::etale::EtaleElement> {
        rows.iter()
            .map(|r| r.iter().map(|&x| vec![base.from_int(x)]).collect())
            .collect()
    }

    #[test]
    fn transpose_involution() {
        let base = q();
        let a = InvolutiveAlgebra::new(base.clone(), 2, DivisionKind::Base, vec![], Standard::Transpose, None).unwrap();
        let x = qm(&base, &[&[1, 2], &[3, 4]]);
        assert_eq!(a.sigma(&x), qm(&base, &[&[1, 3], &[2, 4]]));
        assert_eq!(a.type_at(0), InvolutionType::Orthogonal);
        assert!(a.nil_set().is_empty());
        assert_eq!(a.degree(), 2);
    }

    #[test]
    fn symplectic_twist() {
        let base = q();
        let u = qm(&base, &[&[0, 1], &[-1, 0]]);
        let a = InvolutiveAlgebra::new(base, 2, DivisionKind::Base, vec![], Standard::Transpose, Some(u)).unwrap();
        assert_eq!(a.twist_sign(), -1);
        assert_eq!(a.type_at(0), InvolutionType::Symplectic);
        assert_eq!(a.nil_set(), vec![0]);
    }

    #[test]
    fn hamilton_quaternions() {
        let base = q();
        let a = InvolutiveAlgebra::new(
            base.clone(),
            1,
            DivisionKind::Quaternion,
            vec![base.from_int(-1), base.from_int(-1)],
            Standard::ConjTranspose,
            None,
        )
        .unwrap();
        assert_eq!(a.type_at(0), InvolutionType::Symplectic);
        assert!(!a.is_split_at(0));
        assert!(a.nil_set().is_empty());
        assert_eq!(a.degree(), 2);
    }

    #[test]
    fn unitary_type_follows_sign_of_d() {
        let k = Arc::new(EtaleAlgebra::new(vec![UniPoly::from_ints(&[-2, 0, 1])]).unwrap());
        let a = InvolutiveAlgebra::new(
            k.clone(),
            1,
            DivisionKind::Quadratic,
            vec![k.neg(&k.x())],
            Standard::ConjTranspose,
            None,
        )
        .unwrap();
        // ordering 0: x = -√2, so d = √2 > 0
        assert_eq!(a.type_at(0), InvolutionType::UnitarySplit);
        assert_eq!(a.type_at(1), InvolutionType::Unitary);
        assert_eq!(a.nil_set(), vec![0]);
    }

    #[test]
    fn rejects_bad_twists() {
        let base = q();
        let singular = qm(&base, &[&[1, 1], &[1, 1]]);
        assert!(InvolutiveAlgebra::new(
            base.clone(),
            2,
            DivisionKind::Base,
            vec![],
            Standard::Transpose,
            Some(singular)
        )
        .is_err());
        let neither = qm(&base, &[&[1, 2], &[0, 1]]);
        assert!(
            InvolutiveAlgebra::new(base, 2, DivisionKind::Base, vec![], Standard::Transpose, Some(neither)).is_err()
        );
    }

    #[test]
    fn quaternion_twist_inverse() {
        let base = q();
        let d = Division::new(
            base.clone(),
            DivisionKind::Quaternion,
            vec![base.from_int(-1), base.from_int(-3)],
        );
        let i = d.basis(1);
        let u = vec![vec![d.one(), i.clone()], vec![d.neg(&i), d.from_int(5)]];
        let inv = d_matrix_inverse(&d, &u).unwrap();
        let prod = matrix::mul(&d, &u, &inv);
        assert!(matrix::equal(&d, &prod, &matrix::identity(&d, 2)));
    }
}
