//! Signatures of hermitian forms at orderings of the base.
//!
//! The M-signature reduces a form over `M_n(D)` to an `ε'`-hermitian
//! form over `(D, θ)`, moves it to the real residue field of the
//! ordering, and reads off a Sylvester count. The η-signature fixes the
//! sign ambiguity with a reference form.

use std::sync::Arc;

use crate::base::BaseRing;
use crate::division::{DElem, Division, DivisionKind};
use crate::error::{Error, Result};
use crate::etale::{EtaleAlgebra, EtaleElement};
use crate::hermitian::HermForm;
use crate::involution::{d_matrix_is_invertible, AlgElement, InvolutiveAlgebra};
use crate::matrix::{self, Matrix};
use crate::numeric::{rat, simplest_between, OrderedField, Rational, Rationals, Ring, Sign};
use crate::quadratic::{sign_sum, sylvester_signature, QuadForm};

/// Per-ordering values of a signature function.
pub type TotalSignature = Vec<i64>;

/// Limits for the deterministic searches below.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Largest numerator or denominator allowed in searched base units.
    pub height: i64,
    pub pfister_len: usize,
    pub max_m: u32,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            height: 8,
            pfister_len: 3,
            max_m: 6,
        }
    }
}

/// Whether every `ε'`-hermitian form over `(D, θ)` has signature zero at
/// a real closed field where `D` is split (`split`) or not.
pub fn reduced_is_nil(kind: DivisionKind, epsilon: i64, split: bool) -> bool {
    match kind {
        DivisionKind::Base => epsilon == -1,
        DivisionKind::Quadratic => split,
        DivisionKind::Quaternion => (epsilon == 1) == split,
    }
}

/// Nil test for `ε`-hermitian forms over `alg`. For `ε = 1` this is
/// [`InvolutiveAlgebra::in_nil`].
pub fn is_nil_for<R: BaseRing>(alg: &InvolutiveAlgebra<R>, epsilon: i64, ordering: usize) -> bool {
    reduced_is_nil(alg.kind(), epsilon * alg.twist_sign(), alg.is_split_at(ordering))
}

pub fn m_signature<R: BaseRing>(h: &HermForm<R>, ordering: usize) -> i64 {
    let alg = h.algebra();
    let (g, eps) = h.reduce_to_division();
    let d = alg.residue_division(ordering);
    if reduced_is_nil(alg.kind(), eps, d.is_split()) {
        return 0;
    }
    let base = alg.base();
    let g: Matrix<DElem<_>> = matrix::map(&g, |x| x.iter().map(|c| base.residue(ordering, c)).collect());
    match (alg.kind(), eps) {
        (DivisionKind::Base, _) => {
            let f = d.scalars();
            sylvester_signature(f, matrix::map(&g, |x| x[0].clone()))
        }
        (DivisionKind::Quadratic, 1) | (DivisionKind::Quaternion, 1) => hermitian_signature(&d, g),
        (DivisionKind::Quadratic, _) => {
            // w·G is hermitian when G is skew and w̄ = -w
            let w = d.basis(1);
            let g = matrix::map(&g, |x| d.mul(&w, x));
            hermitian_signature(&d, g)
        }
        (DivisionKind::Quaternion, _) => skew_trace_signature(&d, &g),
    }
}

/// Signature of a hermitian matrix over `D` with its canonical
/// involution, by congruence diagonalization. Diagonal entries of a
/// hermitian matrix are central, so the count is over scalars.
pub fn hermitian_signature<F: OrderedField>(d: &Division<F>, mut g: Matrix<DElem<F::Elem>>) -> i64 {
    let f = d.scalars();
    let n = g.len();
    let mut pivots = Vec::new();
    for k in 0..n {
        let found = (k..n).find(|&i| !d.is_zero(&g[i][i]));
        let p = match found {
            Some(i) => i,
            None => {
                let pair = (k..n)
                    .flat_map(|i| (k..n).map(move |j| (i, j)))
                    .find(|&(i, j)| i != j && !d.is_zero(&g[i][j]));
                let Some((i, j)) = pair else {
                    break;
                };
                // e_i ← e_i + e_j·c puts trd(g_ij·c) on the diagonal
                let c = (0..d.dim())
                    .map(|b| d.basis(b))
                    .find(|c| !f.is_zero(&d.trd(&d.mul(&g[i][j], c))))
                    .expect("reduced trace pairing is nondegenerate");
                for row in g.iter_mut() {
                    let t = d.mul(&row[j], &c);
                    row[i] = d.add(&row[i], &t);
                }
                let cc = d.conj(&c);
                for l in 0..n {
                    let t = d.mul(&cc, &g[j][l]);
                    g[i][l] = d.add(&g[i][l], &t);
                }
                i
            }
        };
        if p != k {
            g.swap(p, k);
            for row in g.iter_mut() {
                row.swap(p, k);
            }
        }
        let pinv = d.inv(&g[k][k]).expect("nonzero pivot in a division algebra");
        for a in k + 1..n {
            let left = d.mul(&g[a][k], &pinv);
            for b in k + 1..n {
                let t = d.mul(&left, &g[k][b]);
                g[a][b] = d.sub(&g[a][b], &t);
            }
        }
        for a in k + 1..n {
            g[a][k] = d.zero();
            g[k][a] = d.zero();
        }
        pivots.push(g[k][k][0].clone());
    }
    sign_sum(f, &pivots)
}

/// Signature of a skew-hermitian matrix over a split quaternion algebra
/// with its canonical involution: half the signature of the symmetric
/// scalar form `Trd(μ·x̄ᵀ·G·y)` on the underlying `4N`-dimensional space,
/// with `μ ∈ {i, j, k}` the first pure basis element with `μ² < 0`.
pub fn skew_trace_signature<F: OrderedField>(d: &Division<F>, g: &Matrix<DElem<F::Elem>>) -> i64 {
    let f = d.scalars();
    let (a, b) = (&d.params()[0], &d.params()[1]);
    let mu = if f.sign(a) == Sign::Negative {
        d.basis(1)
    } else if f.sign(b) == Sign::Negative {
        d.basis(2)
    } else {
        d.basis(3)
    };
    let n = g.len();
    let dim = d.dim();
    let left: Vec<_> = (0..dim).map(|s| d.mul(&mu, &d.conj(&d.basis(s)))).collect();
    let mut q = vec![vec![f.zero(); n * dim]; n * dim];
    for r in 0..n {
        for s in 0..dim {
            for r2 in 0..n {
                let gy: Vec<_> = (0..dim).map(|s2| d.mul(&g[r][r2], &d.basis(s2))).collect();
                for (s2, gy) in gy.iter().enumerate() {
                    q[r * dim + s][r2 * dim + s2] = d.trd(&d.mul(&left[s], gy));
                }
            }
        }
    }
    let sig = sylvester_signature(f, q);
    debug_assert!(sig % 2 == 0, "trace form signature is even");
    sig / 2
}

/// A form with nonzero M-signature at every ordering outside the Nil set
/// for its `ε`, with the signs cached.
#[derive(Clone, Debug)]
pub struct ReferenceForm<R: BaseRing> {
    form: HermForm<R>,
    signs: Vec<i64>,
}

impl<R: BaseRing> ReferenceForm<R> {
    pub fn new(form: HermForm<R>) -> Result<Self> {
        let alg = form.algebra().clone();
        let mut signs = Vec::new();
        for a in 0..alg.base().num_orderings() {
            let s = m_signature(&form, a).signum();
            if s == 0 && !is_nil_for(&alg, form.epsilon(), a) {
                return Err(Error::Domain(format!(
                    "signature vanishes at ordering {a} ({}) outside Nil",
                    alg.base().ordering_label(a)
                )));
            }
            signs.push(s);
        }
        Ok(ReferenceForm { form, signs })
    }

    pub fn form(&self) -> &HermForm<R> {
        &self.form
    }

    /// `sgn sign^M_α η`, zero on Nil.
    pub fn signs(&self) -> &[i64] {
        &self.signs
    }

    /// Orderings outside Nil.
    pub fn support(&self) -> Vec<usize> {
        (0..self.signs.len()).filter(|&a| self.signs[a] != 0).collect()
    }
}

pub fn eta_signature<R: BaseRing>(h: &HermForm<R>, ordering: usize, eta: &ReferenceForm<R>) -> i64 {
    let s = eta.signs[ordering];
    if s == 0 {
        0
    } else {
        s * m_signature(h, ordering)
    }
}

pub fn total_signature<R: BaseRing>(h: &HermForm<R>, eta: &ReferenceForm<R>) -> TotalSignature {
    (0..eta.signs.len()).map(|a| eta_signature(h, a, eta)).collect()
}

type Alg = Arc<InvolutiveAlgebra<EtaleAlgebra>>;

/// σ-symmetric units of `M_n(D)` tried by the searches, in a fixed order:
/// `1`, small base scalars, diagonal sign patterns, then symmetrized
/// generators.
pub fn symmetric_unit_candidates(alg: &Alg, budget: &SearchBudget) -> Vec<AlgElement<EtaleElement>> {
    const CAP: usize = 200;
    let base = alg.base();
    let ring = alg.ring();
    let mut out = vec![ring.one()];
    let qb = base.q_basis();
    let qd = qb.len();
    let top = budget.height.clamp(1, 2);
    if qd <= 4 {
        for h in 1..=top {
            let mut coeffs = vec![-h; qd];
            loop {
                if coeffs.iter().any(|c| c.abs() == h) {
                    let e = base.from_q_coords(&coeffs.iter().map(|&c| rat(c)).collect::<Vec<_>>());
                    if base.is_unit(&e) && !(coeffs.iter().all(|&c| c == 0)) {
                        out.push(alg.scalar(&e));
                    }
                }
                let mut i = 0;
                while i < qd && coeffs[i] == h {
                    coeffs[i] = -h;
                    i += 1;
                }
                if i == qd {
                    break;
                }
                coeffs[i] += 1;
            }
        }
    }
    let n = alg.n();
    if n > 1 && n <= 4 {
        for mask in 1..(1u32 << (n - 1)) {
            let mut x = ring.zero();
            for i in 0..n {
                let s = if i > 0 && mask & (1 << (i - 1)) != 0 { -1 } else { 1 };
                x[i][i] = alg.division().from_int(s);
            }
            out.push(x);
        }
    }
    for g in alg.generators() {
        out.push(ring.add(&g, &alg.sigma(&g)));
    }
    out.retain(|x| alg.is_symmetric(x) && d_matrix_is_invertible(alg.division(), x));
    out.truncate(CAP);
    out
}

/// A unit of the base positive at `a` and negative at `b`.
pub fn separating_unit(base: &EtaleAlgebra, a: usize, b: usize, height: i64) -> Option<EtaleElement> {
    let (oa, ob) = (&base.orderings()[a], &base.orderings()[b]);
    if oa.factor_index != ob.factor_index {
        let parts = (0..base.factors().len())
            .map(|i| vec![rat(if i == oa.factor_index { 1 } else { -1 })])
            .collect();
        return base.element(parts).ok();
    }
    let (mut ra, mut rb) = (oa.root.clone(), ob.root.clone());
    let upper_is_a = {
        let mut w = rat(1);
        loop {
            ra.refine_to(&Rationals, &w);
            rb.refine_to(&Rationals, &w);
            if ra.hi < rb.lo || rb.hi < ra.lo {
                break rb.hi < ra.lo;
            }
            w /= rat(2);
        }
    };
    let gap = if upper_is_a { &ra.lo - &rb.hi } else { &rb.lo - &ra.hi };
    let w = gap / rat(4);
    ra.refine_to(&Rationals, &w);
    rb.refine_to(&Rationals, &w);
    let (lower, upper) = if upper_is_a { (&rb, &ra) } else { (&ra, &rb) };
    let (lo, hi) = (&lower.hi, &upper.lo);
    // simplest rationals in the gap first; skip roots of other factors
    let mut cands = vec![simplest_between(lo, hi)];
    for den in 1..=height {
        for num in -height..=height {
            let c = Rational::new(num.into(), den.into());
            if &c > lo && &c < hi {
                cands.push(c);
            }
        }
    }
    cands.sort_by_key(|c| (height_of(c), c.clone()));
    let sign = if upper_is_a { 1 } else { -1 };
    cands
        .into_iter()
        .filter(|c| height_of(c) <= height)
        .map(|c| base.from_poly(&[-c * rat(sign), rat(sign)]))
        .find(|e| base.is_unit(e))
}

fn height_of(q: &Rational) -> i64 {
    let h = q.numer().magnitude().max(q.denom().magnitude()).clone();
    i64::try_from(h).unwrap_or(i64::MAX)
}

/// A Pfister form with signature `2^k` at `target` and `0` at every other
/// ordering in `others`; returns it with `k`.
pub fn localizer(
    base: &Arc<EtaleAlgebra>,
    target: usize,
    others: &[usize],
    budget: &SearchBudget,
) -> Result<(QuadForm<EtaleAlgebra>, usize)> {
    let mut slots: Vec<EtaleElement> = Vec::new();
    for &b in others {
        if b == target || slots.iter().any(|s| base.sign_at(b, s) == Sign::Negative) {
            continue;
        }
        let u = separating_unit(base, target, b, budget.height).ok_or_else(|| {
            Error::SearchExhausted(format!(
                "no unit of height ≤ {} separates orderings {target} and {b}",
                budget.height
            ))
        })?;
        slots.push(u);
    }
    if slots.len() > budget.pfister_len {
        return Err(Error::SearchExhausted(format!(
            "localizing at ordering {target} needs a {}-fold Pfister form (budget {})",
            slots.len(),
            budget.pfister_len
        )));
    }
    let k = slots.len();
    Ok((QuadForm::pfister(base.clone(), &slots)?, k))
}

/// Searches for a reference form: a single symmetric unit if one has
/// nonzero signature off Nil, else a sum of Pfister-localized rank-one
/// forms, one per ordering.
pub fn find_reference_form(alg: &Alg, budget: &SearchBudget) -> Result<ReferenceForm<EtaleAlgebra>> {
    let base = alg.base();
    let support: Vec<usize> = (0..base.num_orderings()).filter(|&a| !alg.in_nil(a)).collect();
    let cands = symmetric_unit_candidates(alg, budget);
    let mut per_ordering: Vec<Option<usize>> = vec![None; support.len()];
    for (ci, c) in cands.iter().enumerate() {
        let h = HermForm::diagonal(alg.clone(), vec![c.clone()])?;
        let sig: Vec<i64> = support.iter().map(|&a| m_signature(&h, a)).collect();
        if sig.iter().all(|&s| s != 0) {
            return ReferenceForm::new(h);
        }
        for (slot, s) in per_ordering.iter_mut().zip(&sig) {
            if slot.is_none() && *s != 0 {
                *slot = Some(ci);
            }
        }
    }
    let mut acc: Option<HermForm<EtaleAlgebra>> = None;
    for (i, &a) in support.iter().enumerate() {
        let ci = per_ordering[i].ok_or_else(|| {
            Error::SearchExhausted(format!("no candidate unit has nonzero signature at ordering {a}"))
        })?;
        let (p, _) = localizer(base, a, &support, budget)?;
        let piece = HermForm::q_tensor_h(&p, &HermForm::diagonal(alg.clone(), vec![cands[ci].clone()])?)?;
        acc = Some(match acc {
            None => piece,
            Some(h) => h.orth_sum(&piece)?,
        });
    }
    let h = acc.ok_or_else(|| Error::SearchExhausted("no candidate units".into()))?;
    ReferenceForm::new(h)
}

fn exponent_of_two(v: i64) -> Option<u32> {
    let v = v.unsigned_abs();
    (v.is_power_of_two()).then(|| v.trailing_zeros())
}

/// `⟨1,1⟩^{⊗e}`, signature `2^e` everywhere.
fn two_power_scalar(base: &Arc<EtaleAlgebra>, e: u32) -> Result<QuadForm<EtaleAlgebra>> {
    QuadForm::pfister(base.clone(), &vec![base.one(); e as usize])
}

#[derive(Clone, Debug)]
pub struct TwoPowerForm {
    pub form: HermForm<EtaleAlgebra>,
    pub m: u32,
}

/// A nonsingular form whose η-signature has absolute value `2^m` at every
/// ordering off Nil, with `m` as small as the search finds.
pub fn find_two_power_form(eta: &ReferenceForm<EtaleAlgebra>, budget: &SearchBudget) -> Result<TwoPowerForm> {
    let alg = eta.form().algebra().clone();
    let base = alg.base().clone();
    let support = eta.support();
    if eta.form().epsilon() != 1 {
        return Err(Error::Unsupported(
            "two-power search runs on hermitian (ε = 1) reference forms".into(),
        ));
    }
    let cands = symmetric_unit_candidates(&alg, budget);
    let mut best: Option<TwoPowerForm> = None;
    let consider = |best: &mut Option<TwoPowerForm>, form: HermForm<EtaleAlgebra>| {
        let tot: Vec<i64> = support.iter().map(|&a| eta_signature(&form, a, eta)).collect();
        let Some(&first) = tot.first() else {
            return;
        };
        if tot.iter().any(|t| t.abs() != first.abs()) || !form.is_nonsingular() {
            return;
        }
        if let Some(m) = exponent_of_two(first) {
            if best.as_ref().is_none_or(|b| m < b.m) {
                *best = Some(TwoPowerForm { form, m });
            }
        }
    };
    if support.is_empty() {
        return Ok(TwoPowerForm {
            form: HermForm::diagonal(alg.clone(), vec![alg.ring().one()])?,
            m: 0,
        });
    }
    consider(&mut best, eta.form().clone());
    for c in &cands {
        consider(&mut best, HermForm::diagonal(alg.clone(), vec![c.clone()])?);
        if best.as_ref().is_some_and(|b| b.m == 0) {
            break;
        }
    }
    if best.is_none() {
        // localize one rank-one form with 2-power signature at each ordering
        let mut pieces = Vec::new();
        for &a in &support {
            let mut choice: Option<(u32, &AlgElement<EtaleElement>)> = None;
            for c in &cands {
                let h = HermForm::diagonal(alg.clone(), vec![c.clone()])?;
                if let Some(j) = exponent_of_two(m_signature(&h, a)).filter(|_| m_signature(&h, a) != 0) {
                    if choice.is_none_or(|(jj, _)| j < jj) {
                        choice = Some((j, c));
                    }
                }
            }
            let (j, c) = choice.ok_or_else(|| {
                Error::SearchExhausted(format!("no rank-one form has 2-power signature at ordering {a}"))
            })?;
            let (p, k) = localizer(&base, a, &support, budget)?;
            pieces.push((p, k as u32 + j, c.clone()));
        }
        let m = pieces.iter().map(|p| p.1).max().unwrap_or(0);
        let mut acc: Option<HermForm<EtaleAlgebra>> = None;
        for (p, e, c) in pieces {
            let q = p.tensor(&two_power_scalar(&base, m - e)?)?;
            let piece = HermForm::q_tensor_h(&q, &HermForm::diagonal(alg.clone(), vec![c])?)?;
            acc = Some(match acc {
                None => piece,
                Some(h) => h.orth_sum(&piece)?,
            });
        }
        if let Some(h) = acc {
            consider(&mut best, h);
        }
    }
    match best {
        Some(b) if b.m <= budget.max_m => Ok(b),
        Some(b) => Err(Error::SearchExhausted(format!(
            "smallest exponent found is {} > {}",
            b.m, budget.max_m
        ))),
        None => Err(Error::SearchExhausted("no two-power form found".into())),
    }
}

#[derive(Clone, Debug)]
pub enum MatchOutcome {
    Found {
        m: u32,
        form: HermForm<EtaleAlgebra>,
    },
    /// `residual` is `2^max_m·f` minus the best total reached.
    NotFound {
        residual: TotalSignature,
    },
}

/// Searches `m ≤ budget.max_m` and a form `h` with `sign^η h = 2^m·f`.
pub fn two_power_multiple_match(
    f: &[i64],
    eta: &ReferenceForm<EtaleAlgebra>,
    budget: &SearchBudget,
) -> Result<MatchOutcome> {
    let alg = eta.form().algebra().clone();
    let base = alg.base().clone();
    let n_ord = eta.signs().len();
    if f.len() != n_ord {
        return Err(Error::Shape(format!("{} values for {n_ord} orderings", f.len())));
    }
    let support = eta.support();
    if (0..n_ord).any(|a| eta.signs()[a] == 0 && f[a] != 0) {
        return Err(Error::Domain("target is nonzero on Nil".into()));
    }
    let eps = eta.form().epsilon();
    if f.iter().all(|&v| v == 0) {
        return Ok(MatchOutcome::Found {
            m: 0,
            form: HermForm::hyperbolic(alg, 1, eps)?,
        });
    }
    let mut singles: Vec<HermForm<EtaleAlgebra>> = vec![eta.form().clone()];
    for c in symmetric_unit_candidates(&alg, budget) {
        if eps == 1 {
            singles.push(HermForm::diagonal(alg.clone(), vec![c])?);
        }
    }
    let totals: Vec<TotalSignature> = singles.iter().map(|h| total_signature(h, eta)).collect();
    let mut localizers = Vec::new();
    for &a in &support {
        localizers.push(if f[a] == 0 {
            None
        } else {
            Some(localizer(&base, a, &support, budget)?)
        });
    }
    let mut best_residual: TotalSignature = f.iter().map(|v| v << budget.max_m).collect();
    for m in 0..=budget.max_m {
        let target: Vec<i64> = f.iter().map(|v| v << m).collect();
        for (h, t) in singles.iter().zip(&totals) {
            if *t == target {
                return Ok(MatchOutcome::Found { m, form: h.clone() });
            }
            let neg: Vec<i64> = t.iter().map(|v| -v).collect();
            if neg == target {
                return Ok(MatchOutcome::Found { m, form: h.negate() });
            }
        }
        let mut acc: Option<HermForm<EtaleAlgebra>> = None;
        let mut complete = true;
        for (i, &a) in support.iter().enumerate() {
            let Some((p, k)) = &localizers[i] else {
                continue;
            };
            let need = target[a];
            if (m as usize) < *k || need % (1 << k) != 0 {
                complete = false;
                continue;
            }
            let need = need >> k;
            // the single with the largest value dividing what is needed
            let pick = singles
                .iter()
                .zip(&totals)
                .filter(|(_, t)| t[a] != 0 && need % t[a] == 0)
                .max_by_key(|(_, t)| t[a].abs());
            let Some((g, t)) = pick else {
                complete = false;
                continue;
            };
            let copies = need / t[a];
            let g = if copies < 0 { g.negate() } else { g.clone() };
            let ones = QuadForm::diagonal(base.clone(), vec![base.one(); copies.unsigned_abs() as usize]);
            let piece = HermForm::q_tensor_h(&p.tensor(&ones)?, &g)?;
            acc = Some(match acc {
                None => piece,
                Some(h) => h.orth_sum(&piece)?,
            });
        }
        if let Some(h) = acc {
            let t = total_signature(&h, eta);
            if complete && t == target {
                return Ok(MatchOutcome::Found { m, form: h });
            }
            if m == budget.max_m {
                best_residual = target.iter().zip(&t).map(|(x, y)| x - y).collect();
            }
        }
    }
    Ok(MatchOutcome::NotFound {
        residual: best_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involution::Standard;
    use crate::numeric::UniPoly;

    fn q() -> Arc<EtaleAlgebra> {
        Arc::new(EtaleAlgebra::rationals())
    }

    fn sqrt2() -> Arc<EtaleAlgebra> {
        Arc::new(EtaleAlgebra::new(vec![UniPoly::from_ints(&[-2, 0, 1])]).unwrap())
    }

    fn alg(
        base: Arc<EtaleAlgebra>,
        n: usize,
        kind: DivisionKind,
        params: &[i64],
        twist: Option<AlgElement<EtaleElement>>,
    ) -> Alg {
        let p = params.iter().map(|&v| base.from_int(v)).collect();
        let std = if kind == DivisionKind::Base {
            Standard::Transpose
        } else {
            Standard::ConjTranspose
        };
        Arc::new(InvolutiveAlgebra::new(base, n, kind, p, std, twist).unwrap())
    }

    #[test]
    fn rank_one_examples() {
        let h = alg(q(), 1, DivisionKind::Quaternion, &[-1, -1], None);
        let one = HermForm::diagonal(h.clone(), vec![h.ring().one()]).unwrap();
        assert_eq!(m_signature(&one, 0), 1);
        let m2 = alg(q(), 2, DivisionKind::Base, &[], None);
        let i2 = HermForm::diagonal(m2.clone(), vec![m2.ring().one()]).unwrap();
        assert_eq!(m_signature(&i2, 0), 2);
        assert_eq!(m_signature(&HermForm::hyperbolic(m2, 1, 1).unwrap(), 0), 0);
    }

    #[test]
    fn split_quaternion_with_orthogonal_twist_reaches_n_alpha() {
        let b = q();
        let a = {
            let d = crate::division::Division::new(b.clone(), DivisionKind::Quaternion, vec![b.one(), b.one()]);
            // k² = -1: the adjoint of a definite form, unlike i² = 1
            let k = d.basis(3);
            alg(b.clone(), 1, DivisionKind::Quaternion, &[1, 1], Some(vec![vec![k]]))
        };
        assert_eq!(a.type_at(0), crate::involution::InvolutionType::Orthogonal);
        let one = HermForm::diagonal(a.clone(), vec![a.ring().one()]).unwrap();
        assert_eq!(m_signature(&one, 0).abs(), a.n_alpha(0) as i64);
    }

    #[test]
    fn nil_orderings_give_zero() {
        let b = q();
        let u = vec![
            vec![vec![b.zero()], vec![b.one()]],
            vec![vec![b.from_int(-1)], vec![b.zero()]],
        ];
        let a = alg(b, 2, DivisionKind::Base, &[], Some(u));
        assert!(a.in_nil(0));
        let h = HermForm::diagonal(a.clone(), vec![a.ring().one()]).unwrap();
        assert_eq!(m_signature(&h, 0), 0);
    }

    #[test]
    fn unitary_skew_forms_are_rotated() {
        let a = alg(q(), 1, DivisionKind::Quadratic, &[-1], None);
        let w = a.d_scalar(&a.division().basis(1));
        let h = HermForm::new(a, -1, vec![vec![w]]).unwrap();
        assert_eq!(m_signature(&h, 0).abs(), 1);
    }

    #[test]
    fn eta_signature_examples() {
        let base = sqrt2();
        let a = alg(base.clone(), 1, DivisionKind::Base, &[], None);
        let eta = find_reference_form(&a, &SearchBudget::default()).unwrap();
        let h = HermForm::diagonal_scalars(a.clone(), &[base.one(), base.x()]).unwrap();
        // orderings are sorted by root: -√2 first
        assert_eq!(total_signature(&h, &eta), vec![0, 2]);
        assert!(total_signature(eta.form(), &eta).iter().all(|&v| v > 0));
    }

    #[test]
    fn two_power_and_matching_over_sqrt2() {
        let base = sqrt2();
        let a = alg(base.clone(), 1, DivisionKind::Base, &[], None);
        let budget = SearchBudget::default();
        let eta = find_reference_form(&a, &budget).unwrap();
        let t = find_two_power_form(&eta, &budget).unwrap();
        let tot = total_signature(&t.form, &eta);
        assert!(tot.iter().all(|v| v.abs() == 1 << t.m));
        match two_power_multiple_match(&[0, 1], &eta, &budget).unwrap() {
            MatchOutcome::Found { m, form } => {
                assert!(m <= 1);
                assert_eq!(total_signature(&form, &eta), vec![0, 1 << m]);
            }
            MatchOutcome::NotFound { residual } => panic!("no match, residual {residual:?}"),
        }
    }

    #[test]
    fn separating_units() {
        let base = Arc::new(EtaleAlgebra::new(vec![UniPoly::from_ints(&[0, -1, 0, 1])]).unwrap());
        for a in 0..3 {
            for b in 0..3 {
                if a != b {
                    let u = separating_unit(&base, a, b, 8).unwrap();
                    assert_eq!(base.sign_at(a, &u), Sign::Positive);
                    assert_eq!(base.sign_at(b, &u), Sign::Negative);
                }
            }
        }
    }
}
