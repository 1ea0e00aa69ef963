//! Dense univariate polynomials over a field context, lowest degree first.
//!
//! A polynomial is a plain `Vec` of coefficients. Every function that
//! returns a polynomial returns it trimmed: the last coefficient tests
//! nonzero in the field, or the vector is empty.

use super::{Field, Rational, Ring};

pub type Poly<E> = Vec<E>;

pub fn trim<F: Ring>(f: &F, mut p: Poly<F::Elem>) -> Poly<F::Elem> {
    while let Some(last) = p.last() {
        if f.is_zero(last) {
            p.pop();
        } else {
            break;
        }
    }
    p
}

pub fn is_zero<F: Ring>(f: &F, p: &[F::Elem]) -> bool {
    p.iter().all(|c| f.is_zero(c))
}

pub fn degree<E>(p: &[E]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn constant<F: Ring>(f: &F, c: F::Elem) -> Poly<F::Elem> {
    trim(f, vec![c])
}

pub fn add<F: Ring>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => f.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(f, out)
}

pub fn neg<F: Ring>(f: &F, a: &[F::Elem]) -> Poly<F::Elem> {
    a.iter().map(|c| f.neg(c)).collect()
}

pub fn sub<F: Ring>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    add(f, a, &neg(f, b))
}

pub fn mul<F: Ring>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, out)
}

pub fn scale<F: Ring>(f: &F, c: &F::Elem, a: &[F::Elem]) -> Poly<F::Elem> {
    trim(f, a.iter().map(|x| f.mul(c, x)).collect())
}

pub fn derivative<F: Ring>(f: &F, a: &[F::Elem]) -> Poly<F::Elem> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(&f.from_int(i as i64), c))
        .collect();
    trim(f, out)
}

/// Euclidean division `a = q·b + r`, `deg r < deg b`.
///
/// Panics if `b` is zero.
pub fn divrem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Poly<F::Elem>, Poly<F::Elem>) {
    let b = trim(f, b.to_vec());
    let lead_inv = f
        .inv(b.last().expect("division by the zero polynomial"))
        .expect("trimmed leading coefficient is invertible");
    let mut r = trim(f, a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![f.zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = f.mul(r.last().unwrap(), &lead_inv);
        for (j, bj) in b.iter().enumerate() {
            let t = f.mul(&c, bj);
            r[shift + j] = f.sub(&r[shift + j], &t);
        }
        q[shift] = c;
        // the leading term cancels exactly; drop it even if the field's
        // zero test would need work to see that
        r.pop();
        r = trim(f, r);
    }
    (trim(f, q), r)
}

pub fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    divrem(f, a, b).1
}

pub fn monic<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F::Elem> {
    let a = trim(f, a.to_vec());
    match a.last() {
        None => a,
        Some(l) => {
            let li = f.inv(l).expect("nonzero leading coefficient");
            scale(f, &li, &a)
        }
    }
}

/// Monic gcd; the gcd of two zero polynomials is zero.
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let mut x = trim(f, a.to_vec());
    let mut y = trim(f, b.to_vec());
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// Extended Euclid: returns `(g, s, t)` with `s·a + t·b = g`, `g` monic.
pub fn ext_gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
    let (mut r0, mut r1) = (trim(f, a.to_vec()), trim(f, b.to_vec()));
    let (mut s0, mut s1) = (vec![f.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    match r0.last() {
        None => (r0, s0, t0),
        Some(l) => {
            let li = f.inv(l).expect("nonzero leading coefficient");
            (scale(f, &li, &r0), scale(f, &li, &s0), scale(f, &li, &t0))
        }
    }
}

pub fn eval<F: Ring>(f: &F, p: &[F::Elem], x: &F::Elem) -> F::Elem {
    p.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

pub fn eval_rational<F: Ring>(f: &F, p: &[F::Elem], x: &Rational) -> F::Elem {
    eval(f, p, &f.from_rational(x))
}

/// `p / gcd(p, p')`.
pub fn squarefree_part<F: Field>(f: &F, p: &[F::Elem]) -> Poly<F::Elem> {
    let g = gcd(f, p, &derivative(f, p));
    if g.len() <= 1 {
        monic(f, p)
    } else {
        monic(f, &divrem(f, p, &g).0)
    }
}

pub fn is_squarefree<F: Field>(f: &F, p: &[F::Elem]) -> bool {
    gcd(f, p, &derivative(f, p)).len() <= 1
}

/// Power sums `p_0, ..., p_{count-1}` of the roots of a monic polynomial,
/// by Newton's identities. Works over any ring containing ℚ.
pub fn power_sums<F: Ring>(f: &F, monic: &[F::Elem], count: usize) -> Vec<F::Elem> {
    let d = monic.len() - 1;
    let a = |k: usize| &monic[k];
    let mut p: Vec<F::Elem> = Vec::with_capacity(count);
    for k in 0..count {
        if k == 0 {
            p.push(f.from_int(d as i64));
            continue;
        }
        let mut acc = if k <= d {
            f.mul(&f.from_int(k as i64), a(d - k))
        } else {
            f.zero()
        };
        for i in 1..=d.min(k - 1) {
            acc = f.add(&acc, &f.mul(a(d - i), &p[k - i]));
        }
        p.push(f.neg(&acc));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, Rationals};

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn division_identity() {
        let f = Rationals;
        let a = q(&[1, 2, 0, 3, 1]);
        let b = q(&[-1, 0, 2]);
        let (qq, r) = divrem(&f, &a, &b);
        assert!(r.len() < b.len());
        assert_eq!(add(&f, &mul(&f, &qq, &b), &r), a);
    }

    #[test]
    fn gcd_and_bezout() {
        let f = Rationals;
        // (x-1)(x+2) and (x-1)(x-3)
        let a = mul(&f, &q(&[-1, 1]), &q(&[2, 1]));
        let b = mul(&f, &q(&[-1, 1]), &q(&[-3, 1]));
        assert_eq!(gcd(&f, &a, &b), q(&[-1, 1]));
        let (g, s, t) = ext_gcd(&f, &a, &b);
        assert_eq!(add(&f, &mul(&f, &s, &a), &mul(&f, &t, &b)), g);
    }

    #[test]
    fn newton_power_sums() {
        let f = Rationals;
        // x³ - x: roots -1, 0, 1
        assert_eq!(power_sums(&f, &q(&[0, -1, 0, 1]), 5), q(&[3, 0, 2, 0, 2]));
        // x² - 2
        assert_eq!(power_sums(&f, &q(&[-2, 0, 1]), 4), q(&[2, 0, 4, 0]));
    }

    #[test]
    fn squarefree() {
        let f = Rationals;
        assert!(is_squarefree(&f, &q(&[-2, 0, 1])));
        assert!(!is_squarefree(&f, &q(&[0, 0, 1])));
        let p = mul(&f, &q(&[0, 0, 1]), &q(&[1, 1]));
        assert_eq!(squarefree_part(&f, &p), q(&[0, 1, 1]));
    }
}
