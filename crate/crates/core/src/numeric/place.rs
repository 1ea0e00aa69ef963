//! Residue fields at real places: `F[y]/(m)` evaluated at one real root
//! of `m`.
//!
//! Elements are polynomials of degree `< deg m`. Equality to zero is
//! semantic (the value at the chosen root vanishes), so the context
//! behaves as the real field `F(θ)` even when `m` is reducible.

use num_traits::{One, Zero};

use super::poly::{self, Poly};
use super::sturm::{self, RealRoot};
use super::{Field, Interval, OrderedField, Rational, Ring, Sign};

/// Width to which the root is refined at construction; enclosures of
/// moderate-size elements then decide most signs without exact work.
const PRE_REFINE_BITS: u32 = 40;

#[derive(Clone, Debug)]
pub struct RealPlace<F: OrderedField> {
    base: F,
    modulus: Poly<F::Elem>,
    root: RealRoot<F::Elem>,
}

impl<F: OrderedField + Clone> RealPlace<F> {
    /// `root` must be a root of the monic squarefree `modulus`.
    pub fn new(base: F, modulus: Poly<F::Elem>, mut root: RealRoot<F::Elem>) -> Self {
        let w = Rational::new(1.into(), num_bigint::BigInt::one() << PRE_REFINE_BITS);
        root.refine_to(&base, &w);
        RealPlace { base, modulus, root }
    }

    /// One place per real root of `modulus`, ascending.
    pub fn all(base: &F, modulus: &[F::Elem]) -> Vec<Self> {
        let m = poly::monic(base, modulus);
        sturm::isolate(base, &m)
            .into_iter()
            .map(|r| RealPlace::new(base.clone(), m.clone(), r))
            .collect()
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn modulus(&self) -> &[F::Elem] {
        &self.modulus
    }

    pub fn root(&self) -> &RealRoot<F::Elem> {
        &self.root
    }

    /// The class of the generator `y`.
    pub fn generator(&self) -> Poly<F::Elem> {
        self.reduce(&[self.base.zero(), self.base.one()])
    }

    /// Reduces an arbitrary polynomial modulo `m`.
    pub fn reduce(&self, p: &[F::Elem]) -> Poly<F::Elem> {
        poly::rem(&self.base, p, &self.modulus)
    }

    pub fn from_base(&self, c: &F::Elem) -> Poly<F::Elem> {
        poly::constant(&self.base, c.clone())
    }

    fn enclose_poly(&self, p: &[F::Elem]) -> Interval {
        let x = self.root.enclosure();
        p.iter().rev().fold(Interval::point(Rational::zero()), |acc, c| {
            acc.mul(&x).add(&self.base.enclose(c))
        })
    }
}

impl<F: OrderedField + Clone> Ring for RealPlace<F> {
    type Elem = Poly<F::Elem>;

    fn zero(&self) -> Self::Elem {
        Vec::new()
    }
    fn one(&self) -> Self::Elem {
        vec![self.base.one()]
    }
    fn from_rational(&self, q: &Rational) -> Self::Elem {
        poly::constant(&self.base, self.base.from_rational(q))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        poly::add(&self.base, a, b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        poly::sub(&self.base, a, b)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.reduce(&poly::mul(&self.base, a, b))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        poly::neg(&self.base, a)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.sign(a) == Sign::Zero
    }
}

impl<F: OrderedField + Clone> Field for RealPlace<F> {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let (g, s, _) = poly::ext_gcd(&self.base, a, &self.modulus);
        if g.len() <= 1 {
            return Some(self.reduce(&s));
        }
        // `a` shares a factor with the modulus; invert modulo the cofactor
        // that still vanishes at the root
        if self.root.sign_of(&self.base, &g) == Sign::Zero {
            return None;
        }
        let cof = poly::divrem(&self.base, &self.modulus, &g).0;
        let (g2, s2, _) = poly::ext_gcd(&self.base, a, &cof);
        debug_assert!(g2.len() <= 1);
        Some(self.reduce(&s2))
    }
}

impl<F: OrderedField + Clone> OrderedField for RealPlace<F> {
    fn sign(&self, a: &Self::Elem) -> Sign {
        let a = poly::trim(&self.base, a.clone());
        match a.len() {
            0 => return Sign::Zero,
            1 => return self.base.sign(&a[0]),
            _ => {}
        }
        if let Some(s) = self.enclose_poly(&a).sign() {
            return s;
        }
        self.root.sign_of(&self.base, &a)
    }

    fn enclose(&self, a: &Self::Elem) -> Interval {
        self.enclose_poly(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, Rationals};

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn sqrt2_places() {
        let places = RealPlace::all(&Rationals, &q(&[-2, 0, 1]));
        assert_eq!(places.len(), 2);
        let (neg, pos) = (&places[0], &places[1]);
        let y = pos.generator();
        assert_eq!(pos.sign(&y), Sign::Positive);
        assert_eq!(neg.sign(&neg.generator()), Sign::Negative);
        // y² - 2 = 0
        assert!(pos.is_zero(&pos.sub(&pos.mul(&y, &y), &pos.from_int(2))));
        let inv = pos.inv(&y).unwrap();
        assert_eq!(pos.mul(&inv, &y), pos.one());
    }

    #[test]
    fn reducible_modulus() {
        // (y-1)(y²-2): at y = 1 the element y-1 is zero, y+1 is invertible
        let m = poly::mul(&Rationals, &q(&[-1, 1]), &q(&[-2, 0, 1]));
        let places = RealPlace::all(&Rationals, &m);
        assert_eq!(places.len(), 3);
        let at_one = &places[1];
        assert!(at_one.is_zero(&q(&[-1, 1])));
        assert!(at_one.inv(&q(&[-1, 1])).is_none());
        let e = q(&[0, 0, 1]); // y² ↦ 1
        let inv = at_one.inv(&e).unwrap();
        assert!(at_one.is_zero(&at_one.sub(&at_one.mul(&inv, &e), &at_one.one())));
    }

    #[test]
    fn tower_of_places() {
        // ℚ(√2)(√(1+√2)) at the positive roots
        let k = RealPlace::all(&Rationals, &q(&[-2, 0, 1])).pop().unwrap();
        let s = k.generator();
        let m = vec![k.neg(&k.add(&k.one(), &s)), k.zero(), k.one()];
        let top = RealPlace::all(&k, &m);
        assert_eq!(top.len(), 2);
        let t = &top[1];
        let z = t.generator();
        assert_eq!(t.sign(&z), Sign::Positive);
        // z² - 1 - √2 = 0, and z ≈ 1.5538 > 3/2
        let lifted_s = t.from_base(&s);
        assert!(t.is_zero(&t.sub(&t.mul(&z, &z), &t.add(&t.one(), &lifted_s))));
        let d = t.sub(&z, &t.from_rational(&crate::numeric::ratio(3, 2)));
        assert_eq!(t.sign(&d), Sign::Positive);
    }
}
