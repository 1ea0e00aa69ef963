//! Monogenic étale extensions `T = K[y]/(f)` of an étale base `K`, and the
//! orderings of `T` lying over each ordering of `K`.

use std::sync::Arc;

use crate::base::BaseRing;
use crate::error::{Error, Result};
use crate::etale::{EtaleAlgebra, EtaleElement};
use crate::numeric::linalg;
use crate::numeric::poly;
use crate::numeric::{format_decimal, rat, Rational, Rationals, RealPlace, RealRoot, Ring, Sign};

/// Coefficients in `y`, always exactly `deg f` of them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelElement {
    pub coeffs: Vec<EtaleElement>,
}

/// An ordering of the total algebra: a base ordering and a real root of
/// `f` with coefficients sent to that ordering's residue field.
#[derive(Clone, Debug, PartialEq)]
pub struct RelOrdering {
    pub base_ordering: usize,
    pub root: RealRoot<Vec<Rational>>,
}

pub type TotalResidue = RealPlace<RealPlace<Rationals>>;

#[derive(Clone, Debug)]
pub struct RelativeEtale {
    base: Arc<EtaleAlgebra>,
    poly: Vec<EtaleElement>,
    traces: Vec<EtaleElement>,
    orderings: Vec<RelOrdering>,
    places: Vec<TotalResidue>,
}

impl PartialEq for RelativeEtale {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.poly == other.poly
    }
}

impl RelativeEtale {
    /// `poly` lists the coefficients of `f`, lowest first; `f` must be
    /// monic of degree ≥ 1 and the extension étale.
    pub fn new(base: Arc<EtaleAlgebra>, poly: Vec<EtaleElement>) -> Result<RelativeEtale> {
        if poly.len() < 2 {
            return Err(Error::Domain("extension polynomial needs degree ≥ 1".into()));
        }
        if poly.iter().any(|c| c.parts.len() != base.factors().len()) {
            return Err(Error::Shape("coefficient does not belong to the base".into()));
        }
        if *poly.last().unwrap() != base.one() {
            return Err(Error::Domain("extension polynomial is not monic".into()));
        }
        let d = poly.len() - 1;
        let traces = poly::power_sums(base.as_ref(), &poly, d);
        let mut ext = RelativeEtale {
            base,
            poly,
            traces,
            orderings: Vec::new(),
            places: Vec::new(),
        };
        if !ext.is_etale() {
            return Err(Error::Domain(
                "extension is not étale (relative trace form is degenerate)".into(),
            ));
        }
        for a in 0..ext.base.num_orderings() {
            let k = ext.base.place(a).clone();
            let f_a: Vec<Vec<Rational>> = ext.poly.iter().map(|c| ext.base.residue(a, c)).collect();
            for place in RealPlace::all(&k, &f_a) {
                ext.orderings.push(RelOrdering {
                    base_ordering: a,
                    root: place.root().clone(),
                });
                ext.places.push(place);
            }
        }
        Ok(ext)
    }

    /// Étale iff `Tr_{K/ℚ} ∘ Tr_{T/K}` is a nondegenerate ℚ-bilinear form.
    fn is_etale(&self) -> bool {
        let basis = self.q_basis();
        let gram: Vec<Vec<Rational>> = basis
            .iter()
            .map(|u| {
                basis
                    .iter()
                    .map(|v| self.base.trace(&self.trace(&self.mul(u, v))))
                    .collect()
            })
            .collect();
        linalg::is_nonsingular(&gram)
    }

    pub fn base(&self) -> &Arc<EtaleAlgebra> {
        &self.base
    }

    pub fn poly(&self) -> &[EtaleElement] {
        &self.poly
    }

    /// Rank `t = deg f` over the base.
    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn orderings(&self) -> &[RelOrdering] {
        &self.orderings
    }

    /// Indices of the orderings of `T` restricting to base ordering `a`.
    pub fn extensions_of_ordering(&self, a: usize) -> Vec<usize> {
        (0..self.orderings.len())
            .filter(|&g| self.orderings[g].base_ordering == a)
            .collect()
    }

    /// Whether ordering `g` of `T` restricts to ordering `a` of the base:
    /// the image of `x` at `g` must be a root of `a`'s factor lying in
    /// `a`'s isolating interval.
    pub fn pullback_check(&self, g: usize, a: usize) -> bool {
        let alpha = &self.base.orderings()[a];
        let gamma_base = &self.base.orderings()[self.orderings[g].base_ordering];
        if gamma_base.factor_index != alpha.factor_index {
            return false;
        }
        let x = self.embed(&self.base.x());
        let above_lo = self.sign_at(g, &self.sub(&x, &self.embed(&self.base.from_rational(&alpha.root.lo))));
        let below_hi = self.sign_at(g, &self.sub(&x, &self.embed(&self.base.from_rational(&alpha.root.hi))));
        above_lo == Sign::Positive && below_hi != Sign::Positive
    }

    /// The structure map `K → T`.
    pub fn embed(&self, a: &EtaleElement) -> RelElement {
        let mut coeffs = vec![self.base.zero(); self.degree()];
        coeffs[0] = a.clone();
        RelElement { coeffs }
    }

    pub fn y(&self) -> RelElement {
        self.y_pow(1)
    }

    pub fn y_pow(&self, k: usize) -> RelElement {
        let mut p = vec![self.base.zero(); k + 1];
        p[k] = self.base.one();
        self.reduce(p)
    }

    /// Builds an element from a polynomial in `y` of any degree.
    pub fn reduce(&self, mut p: Vec<EtaleElement>) -> RelElement {
        let k = self.base.as_ref();
        let d = self.degree();
        // f is monic, so long division needs no inverses
        while p.len() > d {
            let c = p.pop().unwrap();
            if k.is_zero(&c) {
                continue;
            }
            let shift = p.len() - d;
            for (j, fj) in self.poly[..d].iter().enumerate() {
                p[shift + j] = k.sub(&p[shift + j], &k.mul(&c, fj));
            }
        }
        p.resize(d, k.zero());
        RelElement { coeffs: p }
    }

    /// Relative trace `Tr_{T/K}`.
    pub fn trace(&self, a: &RelElement) -> EtaleElement {
        let k = self.base.as_ref();
        a.coeffs
            .iter()
            .zip(&self.traces)
            .fold(k.zero(), |acc, (c, t)| k.add(&acc, &k.mul(c, t)))
    }

    pub fn display(&self, a: &RelElement) -> String {
        let parts: Vec<String> = a.coeffs.iter().map(|c| self.base.display(c)).collect();
        format!("[{}]", parts.join(", "))
    }
}

impl Ring for RelativeEtale {
    type Elem = RelElement;

    fn zero(&self) -> RelElement {
        RelElement {
            coeffs: vec![self.base.zero(); self.degree()],
        }
    }
    fn one(&self) -> RelElement {
        self.embed(&self.base.one())
    }
    fn from_rational(&self, q: &Rational) -> RelElement {
        self.embed(&self.base.from_rational(q))
    }
    fn add(&self, a: &RelElement, b: &RelElement) -> RelElement {
        let k = self.base.as_ref();
        RelElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| k.add(x, y)).collect(),
        }
    }
    fn sub(&self, a: &RelElement, b: &RelElement) -> RelElement {
        let k = self.base.as_ref();
        RelElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| k.sub(x, y)).collect(),
        }
    }
    fn mul(&self, a: &RelElement, b: &RelElement) -> RelElement {
        let k = self.base.as_ref();
        let d = self.degree();
        let mut p = vec![k.zero(); 2 * d - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if k.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                p[i + j] = k.add(&p[i + j], &k.mul(x, y));
            }
        }
        self.reduce(p)
    }
    fn neg(&self, a: &RelElement) -> RelElement {
        let k = self.base.as_ref();
        RelElement {
            coeffs: a.coeffs.iter().map(|x| k.neg(x)).collect(),
        }
    }
    fn is_zero(&self, a: &RelElement) -> bool {
        a.coeffs.iter().all(|c| self.base.is_zero(c))
    }
}

impl BaseRing for RelativeEtale {
    type Residue = TotalResidue;

    fn num_orderings(&self) -> usize {
        self.orderings.len()
    }

    fn residue_field(&self, ordering: usize) -> &TotalResidue {
        &self.places[ordering]
    }

    fn residue(&self, ordering: usize, a: &RelElement) -> Vec<Vec<Rational>> {
        let base_ord = self.orderings[ordering].base_ordering;
        let p: Vec<Vec<Rational>> = a.coeffs.iter().map(|c| self.base.residue(base_ord, c)).collect();
        self.places[ordering].reduce(&p)
    }

    fn ordering_label(&self, ordering: usize) -> String {
        let o = &self.orderings[ordering];
        let mut root = o.root.clone();
        let k = self.base.place(o.base_ordering);
        root.refine_to(k, &crate::numeric::ratio(1, 1_000_000));
        let mid = (&root.lo + &root.hi) / rat(2);
        format!(
            "{}/y≈{}",
            self.base.ordering_label(o.base_ordering),
            format_decimal(&mid, 5)
        )
    }

    fn q_dim(&self) -> usize {
        self.base.q_dim() * self.degree()
    }

    fn q_coords(&self, a: &RelElement) -> Vec<Rational> {
        a.coeffs.iter().flat_map(|c| self.base.q_coords(c)).collect()
    }

    fn from_q_coords(&self, c: &[Rational]) -> RelElement {
        let n = self.base.q_dim();
        RelElement {
            coeffs: c.chunks(n).map(|ch| self.base.from_q_coords(ch)).collect(),
        }
    }
}
