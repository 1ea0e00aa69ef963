//! Symmetric bilinear forms over an étale base.

use std::sync::Arc;

use crate::base::{regular_block_matrix, BaseRing};
use crate::error::{Error, Result};
use crate::etale::{EtaleAlgebra, EtaleElement};
use crate::matrix::{self, Matrix};
use crate::numeric::linalg;
use crate::numeric::{Field, OrderedField, Ring, UniPoly};
use crate::relative::RelativeEtale;

#[derive(Clone, Debug)]
pub struct QuadForm<R: BaseRing> {
    base: Arc<R>,
    gram: Matrix<R::Elem>,
}

impl<R: BaseRing> QuadForm<R> {
    pub fn new(base: Arc<R>, gram: Matrix<R::Elem>) -> Result<Self> {
        if !matrix::is_square(&gram) {
            return Err(Error::Shape("Gram matrix is not square".into()));
        }
        if !matrix::equal(base.as_ref(), &gram, &matrix::transpose(&gram)) {
            return Err(Error::NotSymmetric("Gram matrix is not symmetric".into()));
        }
        Ok(QuadForm { base, gram })
    }

    pub fn diagonal(base: Arc<R>, entries: Vec<R::Elem>) -> Self {
        let n = entries.len();
        let mut gram = matrix::zeros(base.as_ref(), n, n);
        for (i, e) in entries.into_iter().enumerate() {
            gram[i][i] = e;
        }
        QuadForm { base, gram }
    }

    /// `⟨1, -1⟩^n`.
    pub fn hyperbolic(base: Arc<R>, n: usize) -> Self {
        let r = base.clone();
        let entries = (0..n).flat_map(|_| [r.one(), r.from_int(-1)]).collect();
        QuadForm::diagonal(base, entries)
    }

    /// `⟨1, b_1⟩ ⊗ ... ⊗ ⟨1, b_k⟩`; every `b_i` must be a unit.
    pub fn pfister(base: Arc<R>, b: &[R::Elem]) -> Result<Self> {
        let mut form = QuadForm::diagonal(base.clone(), vec![base.one()]);
        for bi in b {
            if !base.is_unit(bi) {
                return Err(Error::NotUnit(format!("Pfister slot {bi:?}")));
            }
            let factor = QuadForm::diagonal(base.clone(), vec![base.one(), bi.clone()]);
            form = form.tensor(&factor)?;
        }
        Ok(form)
    }

    pub fn base(&self) -> &Arc<R> {
        &self.base
    }

    pub fn gram(&self) -> &Matrix<R::Elem> {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn is_diagonal(&self) -> bool {
        let r = self.base.as_ref();
        (0..self.dim()).all(|i| (0..self.dim()).all(|j| i == j || r.is_zero(&self.gram[i][j])))
    }

    fn check_base(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.base, &other.base) || self.base == other.base {
            Ok(())
        } else {
            Err(Error::Mismatch("forms live over different bases".into()))
        }
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_base(other)?;
        Ok(QuadForm {
            base: self.base.clone(),
            gram: matrix::block_diag(&self.base.zero(), &self.gram, &other.gram),
        })
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.check_base(other)?;
        Ok(QuadForm {
            base: self.base.clone(),
            gram: matrix::kron(self.base.as_ref(), &self.gram, &other.gram),
        })
    }

    /// `λ·q`; `λ` must be a unit.
    pub fn scale(&self, lambda: &R::Elem) -> Result<Self> {
        if !self.base.is_unit(lambda) {
            return Err(Error::NotUnit(format!("scale factor {lambda:?}")));
        }
        Ok(QuadForm {
            base: self.base.clone(),
            gram: matrix::scale(self.base.as_ref(), lambda, &self.gram),
        })
    }

    pub fn negate(&self) -> Self {
        QuadForm {
            base: self.base.clone(),
            gram: matrix::neg(self.base.as_ref(), &self.gram),
        }
    }

    /// `Pᵀ·G·P`.
    pub fn congruent(&self, p: &Matrix<R::Elem>) -> Self {
        let r = self.base.as_ref();
        let gram = matrix::mul(r, &matrix::mul(r, &matrix::transpose(p), &self.gram), p);
        QuadForm {
            base: self.base.clone(),
            gram,
        }
    }

    pub fn is_nonsingular(&self) -> bool {
        linalg::is_nonsingular(&regular_block_matrix(self.base.as_ref(), &self.gram))
    }

    /// Sylvester signature at an ordering of the base.
    pub fn signature_at(&self, ordering: usize) -> i64 {
        let f = self.base.residue_field(ordering);
        let g = matrix::map(&self.gram, |e| self.base.residue(ordering, e));
        sylvester_signature(f, g)
    }

    pub fn signatures(&self) -> Vec<i64> {
        (0..self.base.num_orderings()).map(|a| self.signature_at(a)).collect()
    }
}

/// Symmetric Gaussian elimination: returns the diagonal `D` and a witness
/// `P` with `Pᵀ·G·P = D`.
///
/// Pivots on the first nonzero remaining diagonal entry. When every
/// remaining diagonal entry vanishes, the first nonzero off-diagonal
/// `g_ij` is moved onto the diagonal with `e_i ← e_i + e_j`, which gives
/// `2·g_ij` there.
pub fn diagonalize_symmetric<F: Field>(f: &F, mut g: Matrix<F::Elem>) -> (Vec<F::Elem>, Matrix<F::Elem>) {
    let n = g.len();
    let mut p = matrix::identity(f, n);
    for k in 0..n {
        let pivot = (k..n).find(|&i| !f.is_zero(&g[i][i]));
        let pivot = match pivot {
            Some(i) => i,
            None => {
                let pair = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !f.is_zero(&g[i][j]));
                let Some((i, j)) = pair else {
                    break;
                };
                add_multiple(f, &mut g, &mut p, i, j, &f.one());
                i
            }
        };
        if pivot != k {
            g.swap(pivot, k);
            for row in g.iter_mut() {
                row.swap(pivot, k);
            }
            for row in p.iter_mut() {
                row.swap(pivot, k);
            }
        }
        let inv = f.inv(&g[k][k]).expect("pivot is nonzero");
        for r in k + 1..n {
            if f.is_zero(&g[r][k]) {
                continue;
            }
            let c = f.neg(&f.mul(&g[r][k], &inv));
            add_multiple(f, &mut g, &mut p, r, k, &c);
        }
    }
    let diag = (0..n).map(|i| g[i][i].clone()).collect();
    (diag, p)
}

/// Basis move `e_i ← e_i + c·e_j` on a symmetric Gram matrix.
fn add_multiple<F: Ring>(f: &F, g: &mut Matrix<F::Elem>, p: &mut Matrix<F::Elem>, i: usize, j: usize, c: &F::Elem) {
    let n = g.len();
    for row in g.iter_mut() {
        row[i] = f.add(&row[i], &f.mul(c, &row[j]));
    }
    for l in 0..n {
        let t = f.mul(c, &g[j][l]);
        g[i][l] = f.add(&g[i][l], &t);
    }
    for row in p.iter_mut() {
        row[i] = f.add(&row[i], &f.mul(c, &row[j]));
    }
}

/// Number of positive minus number of negative diagonal entries after
/// diagonalization; zero entries count 0.
pub fn sylvester_signature<F: OrderedField>(f: &F, g: Matrix<F::Elem>) -> i64 {
    let (diag, _) = diagonalize_symmetric(f, g);
    diag.iter().map(|d| f.sign(d).to_i64()).sum()
}

/// Counts signs of a diagonal list directly.
pub fn sign_sum<F: OrderedField>(f: &F, entries: &[F::Elem]) -> i64 {
    entries.iter().map(|d| f.sign(d).to_i64()).sum()
}

/// A diagonal form congruent to `q`, with the change of basis.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub diagonal: QuadForm<EtaleAlgebra>,
    /// `Pᵀ·gram·P = diagonal`, factor by factor.
    pub witness: Matrix<EtaleElement>,
}

impl QuadForm<EtaleAlgebra> {
    /// Diagonalizes over each factor field separately.
    ///
    /// Fails only if a factor turns out not to be a field (a pivot is a
    /// zero divisor), i.e. the irreducibility assertion was false.
    pub fn diagonalize(&self) -> Result<Diagonalization> {
        let t = self.base.as_ref();
        let n = self.dim();
        let mut diag_parts: Vec<Vec<Vec<_>>> = Vec::new();
        let mut wit_parts: Vec<Matrix<Vec<_>>> = Vec::new();
        for i in 0..t.factors().len() {
            let field = t.factor_field(i);
            let g = matrix::map(&self.gram, |e| e.parts[i].coeffs().to_vec());
            let (d, p) = diagonalize_symmetric(&field, g.clone());
            let check = matrix::mul(&field, &matrix::mul(&field, &matrix::transpose(&p), &g), &p);
            let mut want = matrix::zeros(&field, n, n);
            for (k, dk) in d.iter().enumerate() {
                want[k][k] = dk.clone();
            }
            if !matrix::equal(&field, &check, &want) {
                return Err(Error::Domain(format!("factor {i} is not a field")));
            }
            diag_parts.push(d);
            wit_parts.push(p);
        }
        let nf = t.factors().len();
        let assemble = |get: &dyn Fn(usize) -> Vec<_>| EtaleElement {
            parts: (0..nf).map(|i| UniPoly::new(get(i))).collect(),
        };
        let diag = (0..n).map(|k| assemble(&|i| diag_parts[i][k].clone())).collect();
        let witness = (0..n)
            .map(|r| (0..n).map(|c| assemble(&|i| wit_parts[i][r][c].clone())).collect())
            .collect();
        Ok(Diagonalization {
            diagonal: QuadForm::diagonal(self.base.clone(), diag),
            witness,
        })
    }
}

/// The trace form `(a, b) ↦ Tr(ab)` of an étale algebra, as a form over ℚ
/// on the concatenated power basis.
pub fn trace_form(t: &EtaleAlgebra) -> QuadForm<EtaleAlgebra> {
    let q = Arc::new(EtaleAlgebra::rationals());
    let basis = t.q_basis();
    let gram = basis
        .iter()
        .map(|u| basis.iter().map(|v| q.from_rational(&t.trace(&t.mul(u, v)))).collect())
        .collect();
    QuadForm { base: q, gram }
}

/// Scharlau transfer along `Tr_{T/K}`: the form
/// `((k,u),(l,v)) ↦ Tr(y^u · q_kl · y^v)` on the free `K`-module with
/// basis `m_k ⊗ y^u`, module index major.
pub fn transfer_quadratic(e: &RelativeEtale, q: &QuadForm<RelativeEtale>) -> QuadForm<EtaleAlgebra> {
    let d = e.degree();
    let m = q.dim();
    let powers: Vec<_> = (0..2 * d - 1).map(|k| e.y_pow(k)).collect();
    let mut gram = matrix::zeros(e.base().as_ref(), m * d, m * d);
    for k in 0..m {
        for l in 0..m {
            for u in 0..d {
                for v in 0..d {
                    let x = e.mul(&powers[u + v], &q.gram[k][l]);
                    gram[k * d + u][l * d + v] = e.trace(&x);
                }
            }
        }
    }
    QuadForm {
        base: e.base().clone(),
        gram,
    }
}

/// Scalar extension of a form along `K → T`.
pub fn extend_quadratic(e: &Arc<RelativeEtale>, q: &QuadForm<EtaleAlgebra>) -> QuadForm<RelativeEtale> {
    QuadForm {
        base: e.clone(),
        gram: matrix::map(&q.gram, |x| e.embed(x)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ratio;

    fn q() -> Arc<EtaleAlgebra> {
        Arc::new(EtaleAlgebra::rationals())
    }

    fn sqrt2() -> Arc<EtaleAlgebra> {
        Arc::new(EtaleAlgebra::new(vec![UniPoly::from_ints(&[-2, 0, 1])]).unwrap())
    }

    fn form(base: &Arc<EtaleAlgebra>, g: &[&[i64]]) -> QuadForm<EtaleAlgebra> {
        let gram = g
            .iter()
            .map(|r| r.iter().map(|&x| base.from_int(x)).collect())
            .collect();
        QuadForm::new(base.clone(), gram).unwrap()
    }

    #[test]
    fn hyperbolic_plane_diagonalizes_with_pivot_trick() {
        let base = q();
        let h = form(&base, &[&[0, 1], &[1, 0]]);
        let d = h.diagonalize().unwrap();
        let g = d.diagonal.gram();
        assert_eq!(g[0][0], base.from_int(2));
        assert_eq!(g[1][1], base.from_rational(&ratio(-1, 2)));
        let back = h.congruent(&d.witness);
        assert!(matrix::equal(base.as_ref(), back.gram(), g));
    }

    #[test]
    fn diagonal_input_keeps_identity_witness() {
        let base = q();
        let f = form(&base, &[&[3, 0], &[0, 5]]);
        let d = f.diagonalize().unwrap();
        assert!(matrix::equal(base.as_ref(), d.diagonal.gram(), f.gram()));
        assert!(matrix::equal(
            base.as_ref(),
            &d.witness,
            &matrix::identity(base.as_ref(), 2)
        ));
    }

    #[test]
    fn signature_examples() {
        let base = q();
        let f = QuadForm::diagonal(
            base.clone(),
            vec![base.from_int(1), base.from_int(1), base.from_int(-1)],
        );
        assert_eq!(f.signature_at(0), 1);
        let k = sqrt2();
        let f = QuadForm::diagonal(k.clone(), vec![k.one(), k.x()]);
        assert_eq!(f.signatures(), vec![0, 2]);
    }

    #[test]
    fn trace_form_examples() {
        let t = EtaleAlgebra::new(vec![UniPoly::from_ints(&[-2, 0, 1])]).unwrap();
        let tf = trace_form(&t);
        let base = tf.base().clone();
        assert!(matrix::equal(
            base.as_ref(),
            tf.gram(),
            form(&base, &[&[2, 0], &[0, 4]]).gram()
        ));
        assert_eq!(tf.signature_at(0), 2);
        let c = EtaleAlgebra::new(vec![UniPoly::from_ints(&[0, -1, 0, 1])]).unwrap();
        let tf = trace_form(&c);
        let want = form(&base, &[&[3, 0, 2], &[0, 2, 0], &[2, 0, 2]]);
        assert!(matrix::equal(base.as_ref(), tf.gram(), want.gram()));
        assert!(tf.is_nonsingular());
    }

    #[test]
    fn pfister_examples() {
        let base = q();
        assert_eq!(
            QuadForm::pfister(base.clone(), &[base.from_int(2)])
                .unwrap()
                .signature_at(0),
            2
        );
        assert_eq!(
            QuadForm::pfister(base.clone(), &[base.from_int(-1)])
                .unwrap()
                .signature_at(0),
            0
        );
        assert!(QuadForm::pfister(base.clone(), &[base.zero()]).is_err());
        let k = sqrt2();
        let p = QuadForm::pfister(k.clone(), &[k.x(), k.x()]).unwrap();
        assert_eq!(p.signatures(), vec![0, 4]);
    }

    #[test]
    fn transfer_examples() {
        let qq = q();
        let e = Arc::new(RelativeEtale::new(qq.clone(), vec![qq.from_int(-2), qq.zero(), qq.one()]).unwrap());
        let one = QuadForm::diagonal(e.clone(), vec![e.one()]);
        let t1 = transfer_quadratic(&e, &one);
        assert!(matrix::equal(
            qq.as_ref(),
            t1.gram(),
            form(&qq, &[&[2, 0], &[0, 4]]).gram()
        ));
        let sq = QuadForm::diagonal(e.clone(), vec![e.y()]);
        let t2 = transfer_quadratic(&e, &sq);
        assert!(matrix::equal(
            qq.as_ref(),
            t2.gram(),
            form(&qq, &[&[0, 4], &[4, 0]]).gram()
        ));
        assert_eq!(t2.signature_at(0), 0);
    }

    #[test]
    fn scale_and_sum() {
        let base = q();
        let f = QuadForm::diagonal(base.clone(), vec![base.from_int(1), base.from_int(2)]);
        let s = f.scale(&base.from_int(3)).unwrap();
        assert_eq!(s.gram()[1][1], base.from_int(6));
        assert_eq!(s.signature_at(0), f.signature_at(0));
        let h = QuadForm::diagonal(base.clone(), vec![base.one()])
            .sum(&QuadForm::diagonal(base.clone(), vec![base.from_int(-1)]))
            .unwrap();
        assert_eq!(h.signature_at(0), 0);
        let k = sqrt2();
        assert!(f.sum(&QuadForm::diagonal(k.clone(), vec![k.one()])).is_err());
    }
}
