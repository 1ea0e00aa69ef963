//! Finite étale ℚ-algebras `ℚ[x]/(f_1) × ... × ℚ[x]/(f_r)`.

use std::fmt;

use crate::base::BaseRing;
use crate::error::{Error, Result};
use crate::numeric::poly;
use crate::numeric::{
    format_decimal, format_rational, rat, Field, Rational, Rationals, RealAlgebraic, RealPlace, Ring, UniPoly,
};

/// An element of an étale algebra: one residue per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EtaleElement {
    pub parts: Vec<UniPoly>,
}

/// A real root of one factor, i.e. an ordering of the algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct Ordering {
    pub factor_index: usize,
    pub root: RealAlgebraic,
}

#[derive(Clone, Debug)]
pub struct EtaleAlgebra {
    factors: Vec<UniPoly>,
    orderings: Vec<Ordering>,
    places: Vec<RealPlace<Rationals>>,
    /// Per factor, `Tr(x^j)` for `j < deg f_i`.
    power_sums: Vec<Vec<Rational>>,
}

impl PartialEq for EtaleAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl EtaleAlgebra {
    /// Factors must be monic and squarefree; irreducibility is the
    /// caller's assertion and is not checked.
    pub fn new(factors: Vec<UniPoly>) -> Result<EtaleAlgebra> {
        if factors.is_empty() {
            return Err(Error::Domain("an étale algebra needs at least one factor".into()));
        }
        for (i, f) in factors.iter().enumerate() {
            if f.degree().unwrap_or(0) == 0 {
                return Err(Error::Domain(format!("factor {i} has degree < 1")));
            }
            if !f.is_monic() {
                return Err(Error::Domain(format!("factor {i} = {f} is not monic")));
            }
            if !f.squarefree_check()? {
                return Err(Error::Domain(format!("factor {i} = {f} is not squarefree")));
            }
        }
        let mut orderings = Vec::new();
        let mut places = Vec::new();
        for (i, f) in factors.iter().enumerate() {
            for place in RealPlace::all(&Rationals, f.coeffs()) {
                orderings.push(Ordering {
                    factor_index: i,
                    root: place.root().clone(),
                });
                places.push(place);
            }
        }
        let power_sums = factors
            .iter()
            .map(|f| poly::power_sums(&Rationals, f.coeffs(), f.coeffs().len() - 1))
            .collect();
        Ok(EtaleAlgebra {
            factors,
            orderings,
            places,
            power_sums,
        })
    }

    /// ℚ itself, presented as `ℚ[x]/(x)`.
    pub fn rationals() -> EtaleAlgebra {
        EtaleAlgebra::new(vec![UniPoly::from_ints(&[0, 1])]).expect("x is squarefree")
    }

    pub fn factors(&self) -> &[UniPoly] {
        &self.factors
    }

    pub fn factor_degree(&self, i: usize) -> usize {
        self.factors[i].degree().unwrap()
    }

    pub fn rank(&self) -> usize {
        (0..self.factors.len()).map(|i| self.factor_degree(i)).sum()
    }

    pub fn orderings(&self) -> &[Ordering] {
        &self.orderings
    }

    pub fn place(&self, ordering: usize) -> &RealPlace<Rationals> {
        &self.places[ordering]
    }

    /// Builds an element from per-factor coefficient lists, reducing each.
    pub fn element(&self, parts: Vec<Vec<Rational>>) -> Result<EtaleElement> {
        if parts.len() != self.factors.len() {
            return Err(Error::Shape(format!(
                "{} parts for {} factors",
                parts.len(),
                self.factors.len()
            )));
        }
        Ok(EtaleElement {
            parts: parts
                .into_iter()
                .zip(&self.factors)
                .map(|(p, f)| UniPoly::new(poly::rem(&Rationals, &p, f.coeffs())))
                .collect(),
        })
    }

    /// The same polynomial in `x` in every factor.
    pub fn from_poly(&self, p: &[Rational]) -> EtaleElement {
        self.element(vec![p.to_vec(); self.factors.len()]).unwrap()
    }

    /// The class of `x`.
    pub fn x(&self) -> EtaleElement {
        self.from_poly(&[rat(0), rat(1)])
    }

    pub fn inv(&self, a: &EtaleElement) -> Result<EtaleElement> {
        self.try_inverse(a)
            .ok_or_else(|| Error::NotUnit(format!("{} is a zero divisor", self.display(a))))
    }

    /// Absolute trace to ℚ.
    pub fn trace(&self, a: &EtaleElement) -> Rational {
        let mut t = rat(0);
        for (part, ps) in a.parts.iter().zip(&self.power_sums) {
            for (c, p) in part.coeffs().iter().zip(ps) {
                t += c * p;
            }
        }
        t
    }

    pub fn factor_field(&self, i: usize) -> FactorField {
        FactorField {
            modulus: self.factors[i].coeffs().to_vec(),
        }
    }

    pub fn display(&self, a: &EtaleElement) -> String {
        if a.parts.len() == 1 {
            a.parts[0].to_string()
        } else {
            let parts: Vec<String> = a.parts.iter().map(|p| p.to_string()).collect();
            format!("[{}]", parts.join(", "))
        }
    }

    /// Whether `a` is a rational constant, and which.
    pub fn as_rational(&self, a: &EtaleElement) -> Option<Rational> {
        let first = a.parts[0].coeffs().first().cloned().unwrap_or_else(|| rat(0));
        let all_const = a.parts.iter().all(|p| p.coeffs().len() <= 1);
        let same = a
            .parts
            .iter()
            .all(|p| p.coeffs().first().cloned().unwrap_or_else(|| rat(0)) == first);
        (all_const && same).then_some(first)
    }
}

impl fmt::Display for EtaleAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|p| format!("Q[x]/{p}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl Ring for EtaleAlgebra {
    type Elem = EtaleElement;

    fn zero(&self) -> EtaleElement {
        EtaleElement {
            parts: vec![UniPoly::zero(); self.factors.len()],
        }
    }
    fn one(&self) -> EtaleElement {
        self.from_rational(&rat(1))
    }
    fn from_rational(&self, q: &Rational) -> EtaleElement {
        EtaleElement {
            parts: vec![UniPoly::new(vec![q.clone()]); self.factors.len()],
        }
    }
    fn add(&self, a: &EtaleElement, b: &EtaleElement) -> EtaleElement {
        zip_parts(a, b, |x, y| poly::add(&Rationals, x, y))
    }
    fn sub(&self, a: &EtaleElement, b: &EtaleElement) -> EtaleElement {
        zip_parts(a, b, |x, y| poly::sub(&Rationals, x, y))
    }
    fn mul(&self, a: &EtaleElement, b: &EtaleElement) -> EtaleElement {
        EtaleElement {
            parts: a
                .parts
                .iter()
                .zip(&b.parts)
                .zip(&self.factors)
                .map(|((x, y), f)| {
                    let prod = poly::mul(&Rationals, x.coeffs(), y.coeffs());
                    UniPoly::new(poly::rem(&Rationals, &prod, f.coeffs()))
                })
                .collect(),
        }
    }
    fn neg(&self, a: &EtaleElement) -> EtaleElement {
        EtaleElement {
            parts: a
                .parts
                .iter()
                .map(|p| UniPoly::new(poly::neg(&Rationals, p.coeffs())))
                .collect(),
        }
    }
    fn is_zero(&self, a: &EtaleElement) -> bool {
        a.parts.iter().all(|p| p.is_zero())
    }
}

fn zip_parts(
    a: &EtaleElement,
    b: &EtaleElement,
    op: impl Fn(&[Rational], &[Rational]) -> Vec<Rational>,
) -> EtaleElement {
    EtaleElement {
        parts: a
            .parts
            .iter()
            .zip(&b.parts)
            .map(|(x, y)| UniPoly::new(op(x.coeffs(), y.coeffs())))
            .collect(),
    }
}

impl BaseRing for EtaleAlgebra {
    type Residue = RealPlace<Rationals>;

    fn num_orderings(&self) -> usize {
        self.orderings.len()
    }

    fn residue_field(&self, ordering: usize) -> &RealPlace<Rationals> {
        &self.places[ordering]
    }

    fn residue(&self, ordering: usize, a: &EtaleElement) -> Vec<Rational> {
        a.parts[self.orderings[ordering].factor_index].coeffs().to_vec()
    }

    fn ordering_label(&self, ordering: usize) -> String {
        let o = &self.orderings[ordering];
        let mut root = o.root.clone();
        root.refine_to(&Rationals, &crate::numeric::ratio(1, 1_000_000));
        let mid = (&root.lo + &root.hi) / rat(2);
        if self.factors.len() == 1 {
            format!("x≈{}", format_decimal(&mid, 5))
        } else {
            format!("f{}:x≈{}", o.factor_index, format_decimal(&mid, 5))
        }
    }

    fn q_dim(&self) -> usize {
        self.rank()
    }

    fn q_coords(&self, a: &EtaleElement) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.rank());
        for (i, p) in a.parts.iter().enumerate() {
            let d = self.factor_degree(i);
            for k in 0..d {
                out.push(p.coeffs().get(k).cloned().unwrap_or_else(|| rat(0)));
            }
        }
        out
    }

    fn from_q_coords(&self, c: &[Rational]) -> EtaleElement {
        let mut parts = Vec::with_capacity(self.factors.len());
        let mut at = 0;
        for i in 0..self.factors.len() {
            let d = self.factor_degree(i);
            parts.push(UniPoly::new(c[at..at + d].to_vec()));
            at += d;
        }
        EtaleElement { parts }
    }

    fn try_inverse(&self, a: &EtaleElement) -> Option<EtaleElement> {
        let mut parts = Vec::with_capacity(self.factors.len());
        for (p, f) in a.parts.iter().zip(&self.factors) {
            let (g, s, _) = poly::ext_gcd(&Rationals, p.coeffs(), f.coeffs());
            if g.len() != 1 {
                return None;
            }
            parts.push(UniPoly::new(poly::rem(&Rationals, &s, f.coeffs())));
        }
        Some(EtaleElement { parts })
    }
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "factor {} root in ({}, {}]",
            self.factor_index,
            format_rational(&self.root.lo),
            format_rational(&self.root.hi)
        )
    }
}

/// The residue ring `ℚ[x]/(f)` of one factor, with syntactic zero test.
/// A field when `f` is irreducible, which is the caller's assertion.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorField {
    modulus: Vec<Rational>,
}

impl Ring for FactorField {
    type Elem = Vec<Rational>;

    fn zero(&self) -> Vec<Rational> {
        Vec::new()
    }
    fn one(&self) -> Vec<Rational> {
        vec![rat(1)]
    }
    fn from_rational(&self, q: &Rational) -> Vec<Rational> {
        poly::constant(&Rationals, q.clone())
    }
    fn add(&self, a: &Vec<Rational>, b: &Vec<Rational>) -> Vec<Rational> {
        poly::add(&Rationals, a, b)
    }
    fn sub(&self, a: &Vec<Rational>, b: &Vec<Rational>) -> Vec<Rational> {
        poly::sub(&Rationals, a, b)
    }
    fn mul(&self, a: &Vec<Rational>, b: &Vec<Rational>) -> Vec<Rational> {
        poly::rem(&Rationals, &poly::mul(&Rationals, a, b), &self.modulus)
    }
    fn neg(&self, a: &Vec<Rational>) -> Vec<Rational> {
        poly::neg(&Rationals, a)
    }
    fn is_zero(&self, a: &Vec<Rational>) -> bool {
        poly::is_zero(&Rationals, a)
    }
}

impl Field for FactorField {
    /// `None` for zero and for zero divisors (possible only when the
    /// factor is in fact reducible).
    fn inv(&self, a: &Vec<Rational>) -> Option<Vec<Rational>> {
        let (g, s, _) = poly::ext_gcd(&Rationals, a, &self.modulus);
        (g.len() == 1).then(|| poly::rem(&Rationals, &s, &self.modulus))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{ratio, Sign};

    fn alg(fs: &[&[i64]]) -> EtaleAlgebra {
        EtaleAlgebra::new(fs.iter().map(|f| UniPoly::from_ints(f)).collect()).unwrap()
    }

    #[test]
    fn arithmetic_in_sqrt2() {
        let t = alg(&[&[-2, 0, 1]]);
        let x = t.x();
        assert_eq!(t.mul(&x, &x), t.from_int(2));
        let inv = t.inv(&x).unwrap();
        assert_eq!(inv, t.from_poly(&[rat(0), ratio(1, 2)]));
    }

    #[test]
    fn zero_divisor_is_reported() {
        let t = alg(&[&[0, -1, 0, 1]]);
        assert!(matches!(t.inv(&t.x()), Err(Error::NotUnit(_))));
    }

    #[test]
    fn traces() {
        let t = alg(&[&[-2, 0, 1]]);
        assert_eq!(t.trace(&t.one()), rat(2));
        assert_eq!(t.trace(&t.x()), rat(0));
        let c = alg(&[&[1, 0, 1]]);
        assert_eq!(c.trace(&c.mul(&c.x(), &c.x())), rat(-2));
    }

    #[test]
    fn ordering_counts() {
        assert_eq!(alg(&[&[-2, 0, 1]]).num_orderings(), 2);
        assert_eq!(alg(&[&[1, 0, 1]]).num_orderings(), 0);
        assert_eq!(alg(&[&[-2, 0, 1], &[-1, 1]]).num_orderings(), 3);
    }

    #[test]
    fn rejects_bad_factors() {
        assert!(EtaleAlgebra::new(vec![UniPoly::from_ints(&[0, 0, 1])]).is_err());
        assert!(EtaleAlgebra::new(vec![UniPoly::from_ints(&[-2, 0, 2])]).is_err());
    }

    #[test]
    fn signs_at_orderings() {
        let t = alg(&[&[-2, 0, 1]]);
        assert_eq!(t.sign_at(0, &t.x()), Sign::Negative);
        assert_eq!(t.sign_at(1, &t.x()), Sign::Positive);
        let q = t.q_coords(&t.x());
        assert_eq!(t.from_q_coords(&q), t.x());
    }

    #[test]
    fn generic_inverse_agrees() {
        let t = alg(&[&[-2, 0, 1], &[-1, 1]]);
        let a = t.element(vec![vec![rat(1), rat(1)], vec![rat(3)]]).unwrap();
        let via_gcd = t.try_inverse(&a).unwrap();
        let m = crate::base::regular_matrix(&t, &a);
        let via_q = crate::numeric::linalg::solve(&m, &t.q_coords(&t.one())).unwrap();
        assert_eq!(t.q_coords(&via_gcd), via_q);
    }
}
