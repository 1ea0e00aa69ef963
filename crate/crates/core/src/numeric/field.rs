//! Ring and field contexts.
//!
//! Arithmetic is driven through a context object rather than operator
//! traits on the element type: an element of `ℚ[x]/(f)` is just a
//! coefficient vector, and only the context knows `f` (and, for ordered
//! fields, which real root the element is evaluated at).

use std::fmt::Debug;

use num_traits::{One, Signed, Zero};

use super::Rational;

/// Sign of an exact real quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_rational(q: &Rational) -> Sign {
        if q.is_zero() {
            Sign::Zero
        } else if q.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn from_i64(v: i64) -> Sign {
        match v.signum() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn mul(self, other: Sign) -> Sign {
        Sign::from_i64(self.to_i64() * other.to_i64())
    }
}

/// A ring with 1 that contains ℚ in its center. Commutative except for
/// the division-algebra contexts, which say so.
pub trait Ring: Debug {
    type Elem: Clone + Debug + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_rational(&self, q: &Rational) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_rational(&Rational::from_integer(n.into()))
    }

    fn scale(&self, q: &Rational, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.from_rational(q), a)
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl<R: Ring> Ring for std::sync::Arc<R> {
    type Elem = R::Elem;

    fn zero(&self) -> Self::Elem {
        self.as_ref().zero()
    }
    fn one(&self) -> Self::Elem {
        self.as_ref().one()
    }
    fn from_rational(&self, q: &Rational) -> Self::Elem {
        self.as_ref().from_rational(q)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.as_ref().add(a, b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.as_ref().sub(a, b)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.as_ref().mul(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.as_ref().neg(a)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.as_ref().is_zero(a)
    }
}

/// A field: every element that tests nonzero has an inverse.
pub trait Field: Ring {
    /// `None` exactly when `a` is zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// A subfield of the real numbers with exact sign determination.
pub trait OrderedField: Field {
    fn sign(&self, a: &Self::Elem) -> Sign;

    /// A rational interval guaranteed to contain the value of `a`.
    fn enclose(&self, a: &Self::Elem) -> Interval;
}

/// The field ℚ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_rational(&self, q: &Rational) -> Rational {
        q.clone()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
}

impl Field for Rationals {
    fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
}

impl OrderedField for Rationals {
    fn sign(&self, a: &Rational) -> Sign {
        Sign::of_rational(a)
    }

    fn enclose(&self, a: &Rational) -> Interval {
        Interval::point(a.clone())
    }
}

/// Closed rational interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Interval {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(q: Rational) -> Interval {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn neg(&self) -> Interval {
        Interval::new(-&self.hi, -&self.lo)
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if *v < lo {
                lo = v.clone();
            }
            if *v > hi {
                hi = v.clone();
            }
        }
        Interval::new(lo, hi)
    }

    /// The sign shared by every point of the interval, if there is one.
    pub fn sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Positive)
        } else if self.hi.is_negative() {
            Some(Sign::Negative)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Sign::Zero)
        } else {
            None
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Largest absolute value attained on the interval.
    pub fn magnitude(&self) -> Rational {
        let (a, b) = (self.lo.abs(), self.hi.abs());
        if a > b {
            a
        } else {
            b
        }
    }
}
