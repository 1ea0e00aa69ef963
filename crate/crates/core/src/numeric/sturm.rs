//! Sturm chains and isolated real roots over an ordered field.
//!
//! Everything here is generic in the coefficient field, so the same code
//! isolates roots of `f ∈ ℚ[x]` and of a relative polynomial whose
//! coefficients live in a real number field. Evaluation points are always
//! rational.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::poly::{self, Poly};
use super::{Interval, OrderedField, Rational, Sign};

/// `p, p', -rem(p, p'), ...` down to the last nonzero remainder.
#[derive(Clone, Debug)]
pub struct SturmChain<E> {
    pub polys: Vec<Poly<E>>,
}

/// Evaluation point for sign variations, with the two infinities.
#[derive(Clone, Debug)]
pub enum Bound {
    NegInf,
    At(Rational),
    PosInf,
}

impl<E: Clone> SturmChain<E> {
    /// The standard chain of `p` (no squarefree reduction).
    pub fn new<F: OrderedField<Elem = E>>(f: &F, p: &[E]) -> SturmChain<E> {
        let p0 = poly::trim(f, p.to_vec());
        let mut polys = vec![p0.clone()];
        if p0.is_empty() {
            return SturmChain { polys };
        }
        let mut prev = p0;
        let mut cur = poly::derivative(f, &prev);
        while !cur.is_empty() {
            let next = poly::neg(f, &poly::rem(f, &prev, &cur));
            polys.push(cur.clone());
            prev = cur;
            cur = next;
        }
        SturmChain { polys }
    }

    pub fn variations<F: OrderedField<Elem = E>>(&self, f: &F, at: &Bound) -> usize {
        let mut count = 0;
        let mut last = Sign::Zero;
        for p in &self.polys {
            let s = sign_at_bound(f, p, at);
            if s == Sign::Zero {
                continue;
            }
            if last != Sign::Zero && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count<F: OrderedField<Elem = E>>(&self, f: &F, lo: &Bound, hi: &Bound) -> usize {
        self.variations(f, lo).saturating_sub(self.variations(f, hi))
    }
}

fn sign_at_bound<F: OrderedField>(f: &F, p: &[F::Elem], at: &Bound) -> Sign {
    let Some(lead) = p.last() else {
        return Sign::Zero;
    };
    match at {
        Bound::At(x) => f.sign(&poly::eval_rational(f, p, x)),
        Bound::PosInf => f.sign(lead),
        Bound::NegInf => {
            let s = f.sign(lead);
            if (p.len() - 1) % 2 == 1 {
                s.negate()
            } else {
                s
            }
        }
    }
}

/// Evaluates `p` at a rational point and returns its sign.
pub fn sign_at_rational<F: OrderedField>(f: &F, p: &[F::Elem], x: &Rational) -> Sign {
    f.sign(&poly::eval_rational(f, p, x))
}

/// Cauchy bound `1 + max|c_i / lead|`, with coefficient magnitudes taken
/// from rational enclosures.
pub fn cauchy_bound<F: OrderedField>(f: &F, p: &[F::Elem]) -> Rational {
    let p = poly::trim(f, p.to_vec());
    let Some(lead) = p.last() else {
        return Rational::one();
    };
    let li = f.inv(lead).expect("nonzero leading coefficient");
    let mut max = Rational::zero();
    for c in &p[..p.len() - 1] {
        let m = f.enclose(&f.mul(c, &li)).magnitude();
        if m > max {
            max = m;
        }
    }
    Rational::one() + max
}

/// A real root of a squarefree polynomial, isolated in `(lo, hi]`.
///
/// The root is the only root of `defining` in the closed interval as
/// well: isolation and refinement never leave another root on `lo`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealRoot<E> {
    pub defining: Poly<E>,
    pub lo: Rational,
    pub hi: Rational,
}

impl<E: Clone + std::fmt::Debug + PartialEq> RealRoot<E> {
    pub fn enclosure(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// One bisection step.
    pub fn bisect<F: OrderedField<Elem = E>>(&mut self, f: &F, chain: &SturmChain<E>) {
        let mid = (&self.lo + &self.hi) / Rational::from_integer(2.into());
        let left = chain.count(f, &Bound::At(self.lo.clone()), &Bound::At(mid.clone()));
        if left > 0 {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    /// Bisects until the interval is no wider than `width`.
    pub fn refine_to<F: OrderedField<Elem = E>>(&mut self, f: &F, width: &Rational) {
        if self.width() <= *width {
            return;
        }
        let chain = SturmChain::new(f, &self.defining);
        while self.width() > *width {
            self.bisect(f, &chain);
        }
    }

    /// Exact sign of `g` at the root.
    ///
    /// Zero is decided symbolically: the root is a zero of `g` exactly
    /// when `gcd(g, defining)` has a root in the isolating interval.
    /// Otherwise a private copy of the interval is narrowed until `g` has
    /// no root in it, and `g` is evaluated at the right endpoint.
    pub fn sign_of<F: OrderedField<Elem = E>>(&self, f: &F, g: &[E]) -> Sign {
        let g = poly::trim(f, g.to_vec());
        match g.len() {
            0 => return Sign::Zero,
            1 => return f.sign(&g[0]),
            _ => {}
        }
        let lo = Bound::At(self.lo.clone());
        let hi = Bound::At(self.hi.clone());
        let common = poly::gcd(f, &g, &self.defining);
        if common.len() > 1 && SturmChain::new(f, &common).count(f, &lo, &hi) > 0 {
            return Sign::Zero;
        }
        let g_chain = SturmChain::new(f, &poly::squarefree_part(f, &g));
        let mut local = self.clone();
        let mut def_chain = None;
        loop {
            let lo = Bound::At(local.lo.clone());
            let hi = Bound::At(local.hi.clone());
            if g_chain.count(f, &lo, &hi) == 0 {
                return sign_at_rational(f, &g, &local.hi);
            }
            let chain = def_chain.get_or_insert_with(|| SturmChain::new(f, &local.defining));
            local.bisect(f, chain);
        }
    }
}

/// Isolates every real root of `p` (taken squarefree), ascending.
pub fn isolate<F: OrderedField>(f: &F, p: &[F::Elem]) -> Vec<RealRoot<F::Elem>> {
    let sq = poly::squarefree_part(f, p);
    if sq.len() <= 1 {
        return Vec::new();
    }
    let chain = SturmChain::new(f, &sq);
    let b = cauchy_bound(f, &sq);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = chain.count(f, &Bound::At(lo.clone()), &Bound::At(hi.clone()));
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(RealRoot {
                defining: sq.clone(),
                lo,
                hi,
            });
            continue;
        }
        let mid = (&lo + &hi) / Rational::from_integer(2.into());
        // right half first so the left half is popped first
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    for r in &mut out {
        // a neighbouring root may sit exactly on the open end
        while f.sign(&poly::eval_rational(f, &r.defining, &r.lo)) == Sign::Zero {
            r.bisect(f, &chain);
        }
    }
    out
}

/// Orders two roots known to be distinct, refining copies until their
/// intervals separate.
pub fn compare_distinct<F: OrderedField>(f: &F, a: &RealRoot<F::Elem>, b: &RealRoot<F::Elem>) -> Ordering {
    let mut a = a.clone();
    let mut b = b.clone();
    let ca = SturmChain::new(f, &a.defining);
    let cb = SturmChain::new(f, &b.defining);
    loop {
        if a.hi < b.lo {
            return Ordering::Less;
        }
        if b.hi < a.lo {
            return Ordering::Greater;
        }
        if a.width() >= b.width() {
            a.bisect(f, &ca);
        } else {
            b.bisect(f, &cb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, ratio, Rationals};

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn chain_of_x2_minus_2() {
        let c = SturmChain::new(&Rationals, &q(&[-2, 0, 1]));
        assert_eq!(c.polys, vec![q(&[-2, 0, 1]), q(&[0, 2]), q(&[2])]);
    }

    #[test]
    fn isolation_of_rational_roots() {
        let f = Rationals;
        let roots = isolate(&f, &q(&[0, -1, 0, 1]));
        assert_eq!(roots.len(), 3);
        for (r, want) in roots.iter().zip([-1, 0, 1]) {
            assert!(r.lo < rat(want) && rat(want) <= r.hi);
            // the closed interval holds no other root
            for other in [-1, 0, 1] {
                if other != want {
                    assert!(rat(other) < r.lo || r.hi < rat(other));
                }
            }
        }
    }

    #[test]
    fn sign_determination() {
        let f = Rationals;
        let roots = isolate(&f, &q(&[-2, 0, 1]));
        let pos = &roots[1];
        assert_eq!(pos.sign_of(&f, &q(&[0, 1])), Sign::Positive);
        assert_eq!(pos.sign_of(&f, &q(&[-2, 1])), Sign::Negative);
        assert_eq!(pos.sign_of(&f, &q(&[-4, 0, 2])), Sign::Zero);
        // 1.4142 vs 99/70 = 1.41428...
        assert_eq!(pos.sign_of(&f, &[ratio(-99, 70), rat(1)]), Sign::Negative);
        assert_eq!(pos.sign_of(&f, &[ratio(-140, 99), rat(1)]), Sign::Positive);
    }

    #[test]
    fn compare_roots_of_different_polys() {
        let f = Rationals;
        let s2 = isolate(&f, &q(&[-2, 0, 1])).pop().unwrap();
        let s3 = isolate(&f, &q(&[-3, 0, 1])).pop().unwrap();
        assert_eq!(compare_distinct(&f, &s2, &s3), Ordering::Less);
    }
}
