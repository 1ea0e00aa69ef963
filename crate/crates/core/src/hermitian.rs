//! ε-hermitian forms on free modules over an algebra with involution.

use std::sync::Arc;

use crate::base::BaseRing;
use crate::division::DElem;
use crate::error::{Error, Result};
use crate::etale::{EtaleAlgebra, EtaleElement};
use crate::involution::{d_matrix_is_invertible, AlgElement, InvolutiveAlgebra};
use crate::matrix::{self, Matrix};
use crate::numeric::{Ring, UniPoly};
use crate::quadratic::QuadForm;
use crate::relative::RelativeEtale;

/// `h(x, y) = σ(x)ᵀ·G·y` on `A^m`, with `σ(G_ji) = ε·G_ij`.
#[derive(Clone, Debug)]
pub struct HermForm<R: BaseRing> {
    alg: Arc<InvolutiveAlgebra<R>>,
    epsilon: i64,
    gram: Matrix<AlgElement<R::Elem>>,
}

impl<R: BaseRing> HermForm<R> {
    pub fn new(alg: Arc<InvolutiveAlgebra<R>>, epsilon: i64, gram: Matrix<AlgElement<R::Elem>>) -> Result<Self> {
        if epsilon != 1 && epsilon != -1 {
            return Err(Error::Domain(format!("epsilon must be ±1, got {epsilon}")));
        }
        if !matrix::is_square(&gram) {
            return Err(Error::Shape("Gram matrix is not square".into()));
        }
        let n = alg.n();
        let dim = alg.division().dim();
        let well_shaped = |e: &AlgElement<R::Elem>| {
            e.len() == n && e.iter().all(|r| r.len() == n && r.iter().all(|x| x.len() == dim))
        };
        if !gram.iter().flatten().all(well_shaped) {
            return Err(Error::Shape(format!("Gram entries must be {n}×{n} matrices over D")));
        }
        let form = HermForm { alg, epsilon, gram };
        if !form.is_epsilon_hermitian() {
            return Err(Error::NotSymmetric(format!(
                "Gram matrix is not ({epsilon:+})-hermitian"
            )));
        }
        Ok(form)
    }

    /// `⟨a_1, ..., a_m⟩` with every `a_i` σ-symmetric.
    pub fn diagonal(alg: Arc<InvolutiveAlgebra<R>>, entries: Vec<AlgElement<R::Elem>>) -> Result<Self> {
        for (i, a) in entries.iter().enumerate() {
            if !alg.is_symmetric(a) {
                return Err(Error::NotSymmetric(format!("diagonal entry {i} is not σ-symmetric")));
            }
        }
        let m = entries.len();
        let ring = alg.ring();
        let mut gram = vec![vec![ring.zero(); m]; m];
        for (i, a) in entries.into_iter().enumerate() {
            gram[i][i] = a;
        }
        HermForm::new(alg, 1, gram)
    }

    /// Diagonal form with base scalars `r_i·I`.
    pub fn diagonal_scalars(alg: Arc<InvolutiveAlgebra<R>>, entries: &[R::Elem]) -> Result<Self> {
        let e = entries.iter().map(|r| alg.scalar(r)).collect();
        HermForm::diagonal(alg, e)
    }

    /// `m` copies of the hyperbolic plane `[[0, 1], [ε, 0]]`.
    pub fn hyperbolic(alg: Arc<InvolutiveAlgebra<R>>, m: usize, epsilon: i64) -> Result<Self> {
        let ring = alg.ring();
        let eps = alg.scalar(&alg.base().from_int(epsilon));
        let mut gram = vec![vec![ring.zero(); 2 * m]; 2 * m];
        for p in 0..m {
            gram[2 * p][2 * p + 1] = ring.one();
            gram[2 * p + 1][2 * p] = eps.clone();
        }
        HermForm::new(alg, epsilon, gram)
    }

    /// The zero form of rank `m`.
    pub fn zero(alg: Arc<InvolutiveAlgebra<R>>, m: usize, epsilon: i64) -> Self {
        let ring = alg.ring();
        HermForm {
            gram: vec![vec![ring.zero(); m]; m],
            alg,
            epsilon,
        }
    }

    pub fn algebra(&self) -> &Arc<InvolutiveAlgebra<R>> {
        &self.alg
    }

    pub fn epsilon(&self) -> i64 {
        self.epsilon
    }

    pub fn gram(&self) -> &Matrix<AlgElement<R::Elem>> {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn is_epsilon_hermitian(&self) -> bool {
        let ring = self.alg.ring();
        let eps = self.alg.scalar(&self.alg.base().from_int(self.epsilon));
        let m = self.rank();
        (0..m).all(|i| {
            (0..m).all(|j| {
                let lhs = self.alg.sigma(&self.gram[j][i]);
                let rhs = ring.mul(&eps, &self.gram[i][j]);
                ring.is_zero(&ring.sub(&lhs, &rhs))
            })
        })
    }

    fn check_algebra(&self, other: &Self) -> Result<()> {
        if !(Arc::ptr_eq(&self.alg, &other.alg) || self.alg.same_as(&other.alg)) {
            return Err(Error::Mismatch("forms live over different algebras".into()));
        }
        if self.epsilon != other.epsilon {
            return Err(Error::Mismatch("forms have different ε".into()));
        }
        Ok(())
    }

    pub fn orth_sum(&self, other: &Self) -> Result<Self> {
        self.check_algebra(other)?;
        Ok(HermForm {
            alg: self.alg.clone(),
            epsilon: self.epsilon,
            gram: matrix::block_diag(&self.alg.ring().zero(), &self.gram, &other.gram),
        })
    }

    /// `q ⊗ h`: Gram entries `q_ab·h_kl`, index `(a, k)` with `a` major.
    pub fn q_tensor_h(q: &QuadForm<R>, h: &Self) -> Result<Self> {
        if !(Arc::ptr_eq(q.base(), h.alg.base()) || q.base() == h.alg.base()) {
            return Err(Error::Mismatch("quadratic form lives over another base".into()));
        }
        let ring = h.alg.ring();
        let qs = matrix::map(q.gram(), |x| h.alg.scalar(x));
        Ok(HermForm {
            alg: h.alg.clone(),
            epsilon: h.epsilon,
            gram: matrix::kron(&ring, &qs, &h.gram),
        })
    }

    pub fn negate(&self) -> Self {
        HermForm {
            alg: self.alg.clone(),
            epsilon: self.epsilon,
            gram: matrix::neg(&self.alg.ring(), &self.gram),
        }
    }

    /// `r·h` for a base scalar `r`.
    pub fn scale(&self, r: &R::Elem) -> Self {
        let s = self.alg.scalar(r);
        HermForm {
            alg: self.alg.clone(),
            epsilon: self.epsilon,
            gram: matrix::scale(&self.alg.ring(), &s, &self.gram),
        }
    }

    /// The `mn × mn` matrix over `D` with block `(i, j)` equal to `G_ij`.
    pub fn flatten(&self) -> Matrix<DElem<R::Elem>> {
        flatten_blocks(&self.alg.division().zero(), &self.gram, self.alg.n())
    }

    /// The form over `(D, θ)` on `D^{mn}` corresponding to `h` under the
    /// Morita equivalence `M_n(D) ~ D`: block `(i, j)` is `u·G_ij`. The
    /// result is `ε'`-hermitian with `ε' = ε·s`, `θ(u)ᵀ = s·u`.
    pub fn reduce_to_division(&self) -> (Matrix<DElem<R::Elem>>, i64) {
        let d = self.alg.division();
        let u = self.alg.twist();
        let blocks = matrix::map(&self.gram, |g| matrix::mul(d, u, g));
        (
            flatten_blocks(&d.zero(), &blocks, self.alg.n()),
            self.epsilon * self.alg.twist_sign(),
        )
    }

    pub fn is_nonsingular(&self) -> bool {
        d_matrix_is_invertible(self.alg.division(), &self.flatten())
    }

    /// Constructive hyperbolicity: nonsingular, and for some width `b` the
    /// `D`-coordinates in even-numbered runs of `b` span a totally
    /// isotropic submodule of half rank. `b = N/2` is the first half;
    /// orthogonal sums of hyperbolic planes and their transfers use
    /// smaller widths.
    pub fn has_lagrangian_witness(&self) -> bool {
        let g = self.flatten();
        let n = g.len();
        if n == 0 {
            return true;
        }
        if n % 2 == 1 || !self.is_nonsingular() {
            return false;
        }
        let d = self.alg.division();
        (1..=n / 2).filter(|b| n.is_multiple_of(2 * b)).any(|b| {
            let half: Vec<usize> = (0..n).filter(|i| (i / b) % 2 == 0).collect();
            half.iter().all(|&i| half.iter().all(|&j| d.is_zero(&g[i][j])))
        })
    }
}

pub fn flatten_blocks<E: Clone>(zero: &E, blocks: &Matrix<Matrix<E>>, n: usize) -> Matrix<E> {
    let m = blocks.len();
    let mut out = vec![vec![zero.clone(); m * n]; m * n];
    for (i, row) in blocks.iter().enumerate() {
        for (j, b) in row.iter().enumerate() {
            for (k, brow) in b.iter().enumerate() {
                for (l, x) in brow.iter().enumerate() {
                    out[i * n + k][j * n + l] = x.clone();
                }
            }
        }
    }
    out
}

/// Inverse of [`flatten_blocks`] for block size `n`.
pub fn unflatten_blocks<E: Clone>(g: &Matrix<E>, n: usize) -> Matrix<Matrix<E>> {
    let m = g.len() / n;
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..n)
                        .map(|k| (0..n).map(|l| g[i * n + k][j * n + l].clone()).collect())
                        .collect()
                })
                .collect()
        })
        .collect()
}

impl HermForm<EtaleAlgebra> {
    /// The same Gram matrix over `A ⊗ T`.
    pub fn scalar_extend(&self, e: &Arc<RelativeEtale>) -> HermForm<RelativeEtale> {
        let alg = Arc::new(self.alg.extend_scalars(e));
        self.scalar_extend_into(e, &alg)
    }

    /// As [`scalar_extend`](Self::scalar_extend), reusing an already
    /// extended algebra.
    pub fn scalar_extend_into(
        &self,
        e: &Arc<RelativeEtale>,
        alg: &Arc<InvolutiveAlgebra<RelativeEtale>>,
    ) -> HermForm<RelativeEtale> {
        let gram = matrix::map(&self.gram, |a| {
            matrix::map(a, |x| x.iter().map(|c| e.embed(c)).collect::<Vec<_>>())
        });
        HermForm {
            alg: alg.clone(),
            epsilon: self.epsilon,
            gram,
        }
    }

    /// Glues forms over the factors of a product base into one form over
    /// the product. All components must share rank, `ε`, matrix size,
    /// division kind and standard involution.
    pub fn direct_product(components: &[HermForm<EtaleAlgebra>]) -> Result<HermForm<EtaleAlgebra>> {
        let first = components
            .first()
            .ok_or_else(|| Error::Shape("empty direct product".into()))?;
        let a0 = &first.alg;
        for h in components {
            let a = &h.alg;
            if h.rank() != first.rank()
                || h.epsilon != first.epsilon
                || a.n() != a0.n()
                || a.kind() != a0.kind()
                || a.standard() != a0.standard()
            {
                return Err(Error::Shape("direct product components differ in shape".into()));
            }
        }
        let factors: Vec<UniPoly> = components
            .iter()
            .flat_map(|h| h.alg.base().factors().to_vec())
            .collect();
        let base = Arc::new(EtaleAlgebra::new(factors)?);
        let glue = |pick: &dyn Fn(&HermForm<EtaleAlgebra>) -> EtaleElement| EtaleElement {
            parts: components.iter().flat_map(|h| pick(h).parts).collect(),
        };
        let nparams = a0.kind().num_params();
        let params = (0..nparams).map(|p| glue(&|h| h.alg.params()[p].clone())).collect();
        let n = a0.n();
        let dim = a0.division().dim();
        let glue_matrix = |get: &dyn Fn(&HermForm<EtaleAlgebra>) -> AlgElement<EtaleElement>| {
            let mats: Vec<_> = components.iter().map(get).collect();
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            (0..dim)
                                .map(|k| EtaleElement {
                                    parts: mats.iter().flat_map(|m| m[i][j][k].parts.clone()).collect(),
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect::<AlgElement<EtaleElement>>()
        };
        let twist = glue_matrix(&|h| h.alg.twist().clone());
        let alg = Arc::new(InvolutiveAlgebra::new(
            base,
            n,
            a0.kind(),
            params,
            a0.standard(),
            Some(twist),
        )?);
        let m = first.rank();
        let gram = (0..m)
            .map(|i| (0..m).map(|j| glue_matrix(&|h| h.gram[i][j].clone())).collect())
            .collect();
        HermForm::new(alg, first.epsilon, gram)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::division::DivisionKind;
    use crate::involution::Standard;

    fn q() -> Arc<EtaleAlgebra> {
        Arc::new(EtaleAlgebra::rationals())
    }

    fn hamilton() -> Arc<InvolutiveAlgebra<EtaleAlgebra>> {
        let b = q();
        Arc::new(
            InvolutiveAlgebra::new(
                b.clone(),
                1,
                DivisionKind::Quaternion,
                vec![b.from_int(-1), b.from_int(-1)],
                Standard::ConjTranspose,
                None,
            )
            .unwrap(),
        )
    }

    fn m2() -> Arc<InvolutiveAlgebra<EtaleAlgebra>> {
        Arc::new(InvolutiveAlgebra::new(q(), 2, DivisionKind::Base, vec![], Standard::Transpose, None).unwrap())
    }

    #[test]
    fn diagonal_requires_symmetric_entries() {
        let a = hamilton();
        assert!(HermForm::diagonal(a.clone(), vec![a.ring().one()]).is_ok());
        let i = a.d_scalar(&a.division().basis(1));
        assert!(matches!(HermForm::diagonal(a, vec![i]), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn hyperbolic_shape() {
        let a = m2();
        let h = HermForm::hyperbolic(a.clone(), 1, 1).unwrap();
        assert!(h.is_nonsingular());
        assert!(h.has_lagrangian_witness());
        let h2 = HermForm::hyperbolic(a, 2, 1).unwrap();
        assert_eq!(h2.gram(), h.orth_sum(&h).unwrap().gram());
    }

    #[test]
    fn nonsingularity() {
        let a = m2();
        let b = a.base().clone();
        assert!(HermForm::diagonal_scalars(a.clone(), &[b.from_int(1), b.from_int(2)])
            .unwrap()
            .is_nonsingular());
        assert!(!HermForm::diagonal_scalars(a, &[b.zero()]).unwrap().is_nonsingular());
    }

    #[test]
    fn reduction_of_symplectic_identity_is_alternating() {
        let b = q();
        let u: AlgElement<EtaleElement> = vec![
            vec![vec![b.zero()], vec![b.one()]],
            vec![vec![b.from_int(-1)], vec![b.zero()]],
        ];
        let a = Arc::new(
            InvolutiveAlgebra::new(b.clone(), 2, DivisionKind::Base, vec![], Standard::Transpose, Some(u)).unwrap(),
        );
        let h = HermForm::diagonal(a.clone(), vec![a.ring().one()]).unwrap();
        let (g, eps) = h.reduce_to_division();
        assert_eq!(eps, -1);
        assert_eq!(g[0][1], vec![b.one()]);
        assert_eq!(g[1][0], vec![b.from_int(-1)]);
    }

    #[test]
    fn direct_product_nonsingularity() {
        let k1 = q();
        let k2 = Arc::new(EtaleAlgebra::new(vec![UniPoly::from_ints(&[-2, 0, 1])]).unwrap());
        let a1 = Arc::new(
            InvolutiveAlgebra::new(k1.clone(), 1, DivisionKind::Base, vec![], Standard::Transpose, None).unwrap(),
        );
        let a2 = Arc::new(
            InvolutiveAlgebra::new(k2.clone(), 1, DivisionKind::Base, vec![], Standard::Transpose, None).unwrap(),
        );
        let h1 = HermForm::diagonal_scalars(a1.clone(), &[k1.one()]).unwrap();
        let h2 = HermForm::diagonal_scalars(a2.clone(), &[k2.one()]).unwrap();
        let p = HermForm::direct_product(&[h1.clone(), h2]).unwrap();
        assert!(p.is_nonsingular());
        assert_eq!(p.algebra().base().factors().len(), 2);
        let z = HermForm::diagonal_scalars(a2, &[k2.zero()]).unwrap();
        assert!(!HermForm::direct_product(&[h1, z]).unwrap().is_nonsingular());
    }
}
