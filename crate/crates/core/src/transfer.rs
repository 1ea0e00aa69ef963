//! Trace transfer of hermitian forms along `A ⊗_K T → A` and checks of
//! the trace formulas relating signatures on both sides.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::etale::EtaleAlgebra;
use crate::hermitian::HermForm;
use crate::involution::InvolutiveAlgebra;
use crate::matrix;
use crate::numeric::Ring;
use crate::quadratic::{transfer_quadratic, QuadForm};
use crate::relative::RelativeEtale;
use crate::signature::{eta_signature, ReferenceForm};

#[derive(Clone, Debug)]
pub struct TransferContext {
    algebra: Arc<InvolutiveAlgebra<EtaleAlgebra>>,
    extension: Arc<RelativeEtale>,
    extended: Arc<InvolutiveAlgebra<RelativeEtale>>,
}

/// How a base ordering splits in the extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    pub alpha: usize,
    /// Number of real extensions.
    pub r: usize,
    /// Degree of the extension.
    pub t: usize,
    pub extensions: Vec<usize>,
}

/// Both sides of a trace formula at one base ordering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KtfReport {
    pub alpha: usize,
    pub lhs: i64,
    pub rhs: i64,
    pub r: usize,
    pub t: usize,
    /// `(γ, signature at γ)` for each real extension.
    pub per_gamma: Vec<(usize, i64)>,
}

impl KtfReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtendNilReport {
    pub alpha: usize,
    /// Signature of the transferred unit form.
    pub trace_signature: i64,
    pub r: usize,
    pub alpha_in_nil: bool,
    /// Nil membership at each real extension.
    pub gamma_in_nil: Vec<bool>,
    /// For each sample form, its η-signature at α and the `η⊗T`-signatures
    /// of its extension at each γ.
    pub restrictions: Vec<(i64, Vec<i64>)>,
}

impl ExtendNilReport {
    pub fn counting_holds(&self) -> bool {
        self.trace_signature == self.r as i64
    }

    pub fn nil_holds(&self) -> bool {
        self.gamma_in_nil.iter().all(|&g| g == self.alpha_in_nil)
    }

    pub fn restriction_holds(&self) -> bool {
        self.restrictions.iter().all(|(a, gs)| gs.iter().all(|g| g == a))
    }

    pub fn holds(&self) -> bool {
        self.counting_holds() && self.nil_holds() && self.restriction_holds()
    }
}

/// Non-real roots of the extension at an ordering, which the trace
/// formula leaves out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexContribution {
    pub alpha: usize,
    pub r: usize,
    pub t: usize,
    pub lhs: i64,
    pub real_sum: i64,
}

impl ComplexContribution {
    /// Non-real roots pair up, and counting them at zero leaves the sum
    /// over real extensions equal to the transferred signature.
    pub fn holds(&self) -> bool {
        (self.t - self.r).is_multiple_of(2) && self.lhs == self.real_sum
    }
}

impl TransferContext {
    pub fn new(algebra: Arc<InvolutiveAlgebra<EtaleAlgebra>>, extension: Arc<RelativeEtale>) -> Result<Self> {
        if extension.base() != algebra.base() {
            return Err(Error::Mismatch("extension is over a different base".into()));
        }
        let extended = Arc::new(algebra.extend_scalars(&extension));
        Ok(TransferContext {
            algebra,
            extension,
            extended,
        })
    }

    pub fn algebra(&self) -> &Arc<InvolutiveAlgebra<EtaleAlgebra>> {
        &self.algebra
    }

    pub fn extension(&self) -> &Arc<RelativeEtale> {
        &self.extension
    }

    pub fn extended_algebra(&self) -> &Arc<InvolutiveAlgebra<RelativeEtale>> {
        &self.extended
    }

    pub fn extend(&self, h: &HermForm<EtaleAlgebra>) -> HermForm<RelativeEtale> {
        h.scalar_extend_into(&self.extension, &self.extended)
    }

    /// `η ⊗ T`, revalidated as a reference form on the extension.
    pub fn extend_reference(&self, eta: &ReferenceForm<EtaleAlgebra>) -> Result<ReferenceForm<RelativeEtale>> {
        ReferenceForm::new(self.extend(eta.form()))
    }

    /// `Tr*(h)` on the free `A`-module with basis `m_k ⊗ y^u`, module
    /// index major: entry `((k,u),(l,v))` is `Tr(y^{u+v}·h_kl)` with the
    /// trace applied to every coordinate.
    pub fn transfer(&self, h: &HermForm<RelativeEtale>) -> Result<HermForm<EtaleAlgebra>> {
        if !(Arc::ptr_eq(h.algebra(), &self.extended) || h.algebra().same_as(&self.extended)) {
            return Err(Error::Mismatch("form does not live over the extended algebra".into()));
        }
        let e = &self.extension;
        let d = e.degree();
        let m = h.rank();
        let powers: Vec<_> = (0..2 * d - 1).map(|k| e.y_pow(k)).collect();
        let ring = self.algebra.ring();
        let mut gram = vec![vec![ring.zero(); m * d]; m * d];
        for k in 0..m {
            for l in 0..m {
                for u in 0..d {
                    for v in 0..d {
                        let p = &powers[u + v];
                        gram[k * d + u][l * d + v] = matrix::map(&h.gram()[k][l], |x| {
                            x.iter().map(|c| e.trace(&e.mul(p, c))).collect::<Vec<_>>()
                        });
                    }
                }
            }
        }
        HermForm::new(self.algebra.clone(), h.epsilon(), gram)
    }

    pub fn split_at(&self, alpha: usize) -> SplitReport {
        let extensions = self.extension.extensions_of_ordering(alpha);
        SplitReport {
            alpha,
            r: extensions.len(),
            t: self.extension.degree(),
            extensions,
        }
    }

    /// `sign^η_α Tr*(h)` against `Σ_γ sign^{η⊗T}_γ h`.
    pub fn verify_hermitian(
        &self,
        h: &HermForm<RelativeEtale>,
        alpha: usize,
        eta: &ReferenceForm<EtaleAlgebra>,
        eta_t: &ReferenceForm<RelativeEtale>,
    ) -> Result<KtfReport> {
        let lhs = eta_signature(&self.transfer(h)?, alpha, eta);
        let split = self.split_at(alpha);
        let per_gamma: Vec<(usize, i64)> = split
            .extensions
            .iter()
            .map(|&g| (g, eta_signature(h, g, eta_t)))
            .collect();
        Ok(KtfReport {
            alpha,
            lhs,
            rhs: per_gamma.iter().map(|p| p.1).sum(),
            r: split.r,
            t: split.t,
            per_gamma,
        })
    }

    pub fn verify_extend_nil(
        &self,
        alpha: usize,
        eta: &ReferenceForm<EtaleAlgebra>,
        eta_t: &ReferenceForm<RelativeEtale>,
        samples: &[HermForm<EtaleAlgebra>],
    ) -> ExtendNilReport {
        let split = self.split_at(alpha);
        let e = &self.extension;
        let unit = QuadForm::diagonal(e.clone(), vec![e.one()]);
        let trace_signature = transfer_quadratic(e, &unit).signature_at(alpha);
        let restrictions = samples
            .iter()
            .map(|h| {
                let ht = self.extend(h);
                (
                    eta_signature(h, alpha, eta),
                    split.extensions.iter().map(|&g| eta_signature(&ht, g, eta_t)).collect(),
                )
            })
            .collect();
        ExtendNilReport {
            alpha,
            trace_signature,
            r: split.r,
            alpha_in_nil: self.algebra.in_nil(alpha),
            gamma_in_nil: split.extensions.iter().map(|&g| self.extended.in_nil(g)).collect(),
            restrictions,
        }
    }

    pub fn complex_contribution(
        &self,
        h: &HermForm<RelativeEtale>,
        alpha: usize,
        eta: &ReferenceForm<EtaleAlgebra>,
        eta_t: &ReferenceForm<RelativeEtale>,
    ) -> Result<ComplexContribution> {
        let rep = self.verify_hermitian(h, alpha, eta, eta_t)?;
        Ok(ComplexContribution {
            alpha,
            r: rep.r,
            t: rep.t,
            lhs: rep.lhs,
            real_sum: rep.rhs,
        })
    }
}

/// The trace formula for quadratic forms: `sign_α Tr*(q)` against the sum
/// of `sign_γ q` over the real extensions `γ` of `α`, each counted once.
pub fn verify_ktf_commutative(e: &RelativeEtale, q: &QuadForm<RelativeEtale>, alpha: usize) -> KtfReport {
    let lhs = transfer_quadratic(e, q).signature_at(alpha);
    let extensions = e.extensions_of_ordering(alpha);
    let per_gamma: Vec<(usize, i64)> = extensions.iter().map(|&g| (g, q.signature_at(g))).collect();
    KtfReport {
        alpha,
        lhs,
        rhs: per_gamma.iter().map(|p| p.1).sum(),
        r: extensions.len(),
        t: e.degree(),
        per_gamma,
    }
}
