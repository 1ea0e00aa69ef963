//! Hermitian Morita equivalence between matrix algebras over a common `D`.
//!
//! Forms move between `(M_k(D), σ)` and `(M_ℓ(D), τ)` by reducing to
//! `(D, θ)` and inflating with the target twist; `ε` is multiplied by
//! `δ`. The product `φ•ψ` of a form `φ` with a form over its adjoint
//! algebra is also provided.

use std::sync::Arc;

use crate::base::BaseRing;
use crate::division::DivisionKind;
use crate::error::{Error, Result};
use crate::etale::EtaleAlgebra;
use crate::hermitian::{flatten_blocks, unflatten_blocks, HermForm};
use crate::involution::{d_matrix_inverse, AlgElement, InvolutiveAlgebra};
use crate::matrix;
use crate::numeric::Ring;
use crate::relative::RelativeEtale;
use crate::signature::{eta_signature, ReferenceForm};

#[derive(Clone, Debug)]
pub struct MoritaContext<R: BaseRing> {
    source: Arc<InvolutiveAlgebra<R>>,
    target: Arc<InvolutiveAlgebra<R>>,
    delta: i64,
}

impl<R: BaseRing> MoritaContext<R> {
    /// `δ = +1` when both involutions have the same type (first kind) and
    /// always `+1` in the unitary case.
    pub fn new(source: Arc<InvolutiveAlgebra<R>>, target: Arc<InvolutiveAlgebra<R>>) -> Result<Self> {
        if source.base() != target.base()
            || source.kind() != target.kind()
            || source.standard() != target.standard()
            || !source
                .params()
                .iter()
                .zip(target.params())
                .all(|(a, b)| source.base().is_zero(&source.base().sub(a, b)))
        {
            return Err(Error::Mismatch("Morita context needs the same base, D and θ".into()));
        }
        let delta = match source.kind() {
            DivisionKind::Quadratic => 1,
            _ => source.twist_sign() * target.twist_sign(),
        };
        Ok(MoritaContext { source, target, delta })
    }

    pub fn source(&self) -> &Arc<InvolutiveAlgebra<R>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<InvolutiveAlgebra<R>> {
        &self.target
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    pub fn reverse(&self) -> Self {
        MoritaContext {
            source: self.target.clone(),
            target: self.source.clone(),
            delta: self.delta,
        }
    }

    /// The form over the target with the same reduction to `(D, θ)`
    /// (up to the central unit `√d` in the unitary case). Its rank is
    /// `m·k/ℓ`, so `ℓ` must divide `m·k`.
    pub fn apply(&self, h: &HermForm<R>) -> Result<HermForm<R>> {
        if !(Arc::ptr_eq(h.algebra(), &self.source) || h.algebra().same_as(&self.source)) {
            return Err(Error::Mismatch("form does not live over the context source".into()));
        }
        let (mut g, eps_reduced) = h.reduce_to_division();
        let d = self.target.division();
        let l = self.target.n();
        let size = g.len();
        if size % l != 0 {
            return Err(Error::Shape(format!(
                "rank {} over M_{}(D) does not inflate to M_{l}(D)",
                h.rank(),
                self.source.n()
            )));
        }
        let s_t = self.target.twist_sign();
        let mut eps = eps_reduced * s_t;
        if self.source.kind() == DivisionKind::Quadratic && eps != h.epsilon() {
            // multiply by the skew central unit to keep ε; w going into a
            // skew twist and w⁻¹ coming out of one, so reverse() inverts
            let base = self.target.base();
            let w = if s_t < 0 {
                d.basis(1)
            } else {
                d.try_inv(&d.basis(1), |c| base.try_inverse(c)).expect("w is a unit")
            };
            g = matrix::map(&g, |x| d.mul(&w, x));
            eps = -eps;
        }
        let winv = self.target.twist_inv();
        let blocks = unflatten_blocks(&g, l);
        let gram = matrix::map(&blocks, |b: &AlgElement<R::Elem>| matrix::mul(d, winv, b));
        HermForm::new(self.target.clone(), eps, gram)
    }

    /// `η ⊥ ... ⊥ η` with enough copies for the rank to inflate to the
    /// target. The copies have the same signs as `η`, so the sum is again a
    /// reference form and fixes the same signatures.
    pub fn transportable(&self, eta: &HermForm<R>) -> Result<HermForm<R>> {
        let l = self.target.n();
        let size = eta.rank() * self.source.n();
        let copies = l / num_integer::gcd(l, size);
        let mut out = eta.clone();
        for _ in 1..copies {
            out = out.orth_sum(eta)?;
        }
        Ok(out)
    }

    /// `η`-signature of `h` next to the `F(η)`-signature of `F(h)`, per
    /// ordering.
    pub fn signature_pairs(&self, h: &HermForm<R>, eta: &ReferenceForm<R>) -> Result<Vec<(i64, i64)>> {
        let fh = self.apply(h)?;
        let feta = ReferenceForm::new(self.apply(&self.transportable(eta.form())?)?)?;
        Ok((0..self.source.base().num_orderings())
            .map(|a| (eta_signature(h, a, eta), eta_signature(&fh, a, &feta)))
            .collect())
    }
}

impl MoritaContext<EtaleAlgebra> {
    pub fn extend_scalars(&self, e: &Arc<RelativeEtale>) -> MoritaContext<RelativeEtale> {
        MoritaContext {
            source: Arc::new(self.source.extend_scalars(e)),
            target: Arc::new(self.target.extend_scalars(e)),
            delta: self.delta,
        }
    }
}

/// The two routes around the square formed by the Morita functor and
/// scalar extension, compared at every ordering of the total algebra.
#[derive(Clone, Debug)]
pub struct SquareReport {
    /// `sign^{F(η)⊗T}_γ (F(h)⊗T)`.
    pub morita_then_extend: Vec<i64>,
    /// `sign^{F_T(η⊗T)}_γ F_T(h⊗T)`.
    pub extend_then_morita: Vec<i64>,
}

impl SquareReport {
    pub fn disagreements(&self) -> Vec<usize> {
        (0..self.morita_then_extend.len())
            .filter(|&g| self.morita_then_extend[g] != self.extend_then_morita[g])
            .collect()
    }

    pub fn commutes(&self) -> bool {
        self.disagreements().is_empty()
    }
}

pub fn check_square(
    ctx: &MoritaContext<EtaleAlgebra>,
    e: &Arc<RelativeEtale>,
    h: &HermForm<EtaleAlgebra>,
    eta: &ReferenceForm<EtaleAlgebra>,
) -> Result<SquareReport> {
    // route one: F over the base, then extend
    let fh = ctx.apply(h)?;
    let eta_form = ctx.transportable(eta.form())?;
    let feta = ctx.apply(&eta_form)?;
    let target_t = Arc::new(ctx.target().extend_scalars(e));
    let ref1 = ReferenceForm::new(feta.scalar_extend_into(e, &target_t))?;
    let h1 = fh.scalar_extend_into(e, &target_t);
    // route two: extend, then F over the total algebra
    let ctx_t = ctx.extend_scalars(e);
    let source_t = ctx_t.source().clone();
    let h2 = ctx_t.apply(&h.scalar_extend_into(e, &source_t))?;
    let ref2 = ReferenceForm::new(ctx_t.apply(&eta_form.scalar_extend_into(e, &source_t))?)?;
    let n = e.num_orderings();
    Ok(SquareReport {
        morita_then_extend: (0..n).map(|g| eta_signature(&h1, g, &ref1)).collect(),
        extend_then_morita: (0..n).map(|g| eta_signature(&h2, g, &ref2)).collect(),
    })
}

/// `(M_{rn}(D), τ)` with `τ` adjoint to the nonsingular form `φ` on
/// `A^r`: twist `diag(u, ..., u)·Φ`.
pub fn adjoint_algebra<R: BaseRing>(phi: &HermForm<R>) -> Result<Arc<InvolutiveAlgebra<R>>> {
    let a = phi.algebra();
    let d = a.division();
    let r = phi.rank();
    let block_u = flatten_blocks(&d.zero(), &diag_blocks(a.twist(), &a.ring().zero(), r), a.n());
    let twist = matrix::mul(d, &block_u, &phi.flatten());
    if d_matrix_inverse(d, &twist).is_none() {
        return Err(Error::NotUnit("φ is singular, it has no adjoint involution".into()));
    }
    Ok(Arc::new(InvolutiveAlgebra::new(
        a.base().clone(),
        r * a.n(),
        a.kind(),
        a.params().to_vec(),
        a.standard(),
        Some(twist),
    )?))
}

fn diag_blocks<E: Clone>(x: &E, zero: &E, r: usize) -> Vec<Vec<E>> {
    (0..r)
        .map(|i| (0..r).map(|j| if i == j { x.clone() } else { zero.clone() }).collect())
        .collect()
}

/// `φ•ψ(m⊗n, m'⊗n') = φ(n, ψ(m, m')·n')` on `A^{rp}`: block `(k, l)` of
/// the Gram matrix is `Φ·Ψ_kl`. `ψ` must live over an algebra whose
/// involution is adjoint to `φ`, checked on generators.
pub fn product_of_forms<R: BaseRing>(phi: &HermForm<R>, psi: &HermForm<R>) -> Result<HermForm<R>> {
    let a = phi.algebra();
    let b = psi.algebra();
    let d = a.division();
    let big = flatten_blocks(&d.zero(), phi.gram(), a.n());
    if b.n() != big.len() || b.kind() != a.kind() || b.base() != a.base() || b.standard() != a.standard() {
        return Err(Error::Admittance(format!(
            "ψ must live over M_{}(D) for a rank-{} φ",
            big.len(),
            phi.rank()
        )));
    }
    // Φ·τ(x) = σ*(x)·Φ, with σ* entrywise σ followed by transpose
    let sigma_star = |x: &AlgElement<R::Elem>| {
        let blocks = unflatten_blocks(x, a.n());
        let t = matrix::transpose(&matrix::map(&blocks, |e| a.sigma(e)));
        flatten_blocks(&d.zero(), &t, a.n())
    };
    let ring_b = b.ring();
    for x in b.generators() {
        let lhs = matrix::mul(d, &big, &b.sigma(&x));
        let rhs = matrix::mul(d, &sigma_star(&x), &big);
        if !ring_b.is_zero(&ring_b.sub(&lhs, &rhs)) {
            return Err(Error::Admittance("ψ's involution is not adjoint to φ".into()));
        }
    }
    let blocks = matrix::map(psi.gram(), |p| matrix::mul(d, &big, p));
    let flat = flatten_blocks(&d.zero(), &blocks, big.len());
    HermForm::new(a.clone(), phi.epsilon() * psi.epsilon(), unflatten_blocks(&flat, a.n()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::etale::EtaleElement;
    use crate::involution::Standard;
    use crate::signature::{find_reference_form, m_signature, SearchBudget};

    fn q() -> Arc<EtaleAlgebra> {
        Arc::new(EtaleAlgebra::rationals())
    }

    fn mat(
        base: &Arc<EtaleAlgebra>,
        n: usize,
        twist: Option<AlgElement<EtaleElement>>,
    ) -> Arc<InvolutiveAlgebra<EtaleAlgebra>> {
        Arc::new(
            InvolutiveAlgebra::new(base.clone(), n, DivisionKind::Base, vec![], Standard::Transpose, twist).unwrap(),
        )
    }

    fn symplectic(base: &Arc<EtaleAlgebra>) -> Arc<InvolutiveAlgebra<EtaleAlgebra>> {
        let u = vec![
            vec![vec![base.zero()], vec![base.one()]],
            vec![vec![base.from_int(-1)], vec![base.zero()]],
        ];
        mat(base, 2, Some(u))
    }

    #[test]
    fn reduce_m2_identity_to_quadratic() {
        let b = q();
        let a = mat(&b, 2, None);
        let h = HermForm::diagonal(a.clone(), vec![a.ring().one()]).unwrap();
        let ctx = MoritaContext::new(a, mat(&b, 1, None)).unwrap();
        assert_eq!(ctx.delta(), 1);
        let f = ctx.apply(&h).unwrap();
        assert_eq!(f.rank(), 2);
        assert_eq!(
            f.flatten(),
            vec![vec![vec![b.one()], vec![b.zero()]], vec![vec![b.zero()], vec![b.one()]]]
        );
        assert_eq!(m_signature(&f, 0), 2);
    }

    #[test]
    fn mixed_types_flip_epsilon() {
        let b = q();
        let ctx = MoritaContext::new(mat(&b, 2, None), symplectic(&b)).unwrap();
        assert_eq!(ctx.delta(), -1);
        let src = ctx.source().clone();
        let h = HermForm::diagonal_scalars(src, &[b.one(), b.from_int(3)]).unwrap();
        let f = ctx.apply(&h).unwrap();
        assert_eq!(f.epsilon(), -1);
        assert_eq!(m_signature(&f, 0), m_signature(&h, 0));
        let back = ctx.reverse().apply(&f).unwrap();
        assert_eq!(back.gram(), h.gram());
    }

    #[test]
    fn indivisible_rank_is_rejected() {
        let b = q();
        let ctx = MoritaContext::new(mat(&b, 1, None), mat(&b, 2, None)).unwrap();
        let h = HermForm::diagonal_scalars(ctx.source().clone(), &[b.one()]).unwrap();
        assert!(matches!(ctx.apply(&h), Err(Error::Shape(_))));
    }

    #[test]
    fn product_with_unit_form() {
        let b = q();
        let a = mat(&b, 1, None);
        let phi = HermForm::diagonal_scalars(a.clone(), &[b.one()]).unwrap();
        let adj = adjoint_algebra(&phi).unwrap();
        let psi = HermForm::diagonal_scalars(adj, &[b.one()]).unwrap();
        let p = product_of_forms(&phi, &psi).unwrap();
        assert_eq!(p.gram(), phi.gram());
        // ⟨1, 2⟩ is adjoint to Int(diag(1, 2)⁻¹)∘transpose, not to transpose
        let phi2 = HermForm::diagonal_scalars(a, &[b.one(), b.from_int(2)]).unwrap();
        let m2 = mat(&b, 2, None);
        let wrong = HermForm::diagonal(m2.clone(), vec![m2.ring().one()]).unwrap();
        assert!(matches!(product_of_forms(&phi2, &wrong), Err(Error::Admittance(_))));
        let right = HermForm::diagonal_scalars(adjoint_algebra(&phi2).unwrap(), &[b.one()]).unwrap();
        let p2 = product_of_forms(&phi2, &right).unwrap();
        assert_eq!(m_signature(&p2, 0), 2);
    }

    #[test]
    fn square_commutes_for_identity_context() {
        let b = q();
        let a = mat(&b, 2, None);
        let e = Arc::new(RelativeEtale::new(b.clone(), vec![b.from_int(-2), b.zero(), b.one()]).unwrap());
        let ctx = MoritaContext::new(a.clone(), a.clone()).unwrap();
        let eta = find_reference_form(&a, &SearchBudget::default()).unwrap();
        let h = HermForm::diagonal_scalars(a, &[b.one(), b.from_int(-5)]).unwrap();
        let rep = check_square(&ctx, &e, &h, &eta).unwrap();
        assert!(rep.commutes());
        assert_eq!(rep.morita_then_extend, vec![0, 0]);
    }
}
