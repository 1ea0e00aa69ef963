//! The three kinds of coefficient algebra `D`: the base itself, a
//! quadratic extension `C[w]/(w² - d)`, and a quaternion algebra
//! `(a, b)_C` with basis `1, i, j, k`, `i² = a`, `j² = b`, `k = ij`.
//!
//! `Division<C>` is a ring context over any scalar context `C`, so the
//! same code runs over the étale base and over each real residue field.

use std::fmt;

use crate::numeric::{Field, OrderedField, Rational, Ring, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DivisionKind {
    Base,
    Quadratic,
    Quaternion,
}

impl DivisionKind {
    pub fn dim(self) -> usize {
        match self {
            DivisionKind::Base => 1,
            DivisionKind::Quadratic => 2,
            DivisionKind::Quaternion => 4,
        }
    }

    pub fn num_params(self) -> usize {
        match self {
            DivisionKind::Base => 0,
            DivisionKind::Quadratic => 1,
            DivisionKind::Quaternion => 2,
        }
    }
}

impl fmt::Display for DivisionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DivisionKind::Base => "base",
            DivisionKind::Quadratic => "quadratic",
            DivisionKind::Quaternion => "quaternion",
        })
    }
}

/// Coordinates of a `D`-element over the scalars, `dim` of them.
pub type DElem<E> = Vec<E>;

#[derive(Clone, Debug)]
pub struct Division<C: Ring> {
    scalars: C,
    kind: DivisionKind,
    params: Vec<C::Elem>,
}

impl<C: Ring> Division<C> {
    pub fn new(scalars: C, kind: DivisionKind, params: Vec<C::Elem>) -> Self {
        assert_eq!(params.len(), kind.num_params(), "wrong parameter count for {kind}");
        Division { scalars, kind, params }
    }

    pub fn scalars(&self) -> &C {
        &self.scalars
    }

    pub fn kind(&self) -> DivisionKind {
        self.kind
    }

    pub fn params(&self) -> &[C::Elem] {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.kind.dim()
    }

    pub fn scalar(&self, c: C::Elem) -> DElem<C::Elem> {
        let mut v = vec![self.scalars.zero(); self.dim()];
        v[0] = c;
        v
    }

    /// The `k`-th basis element (`1, w` or `1, i, j, k`).
    pub fn basis(&self, k: usize) -> DElem<C::Elem> {
        let mut v = vec![self.scalars.zero(); self.dim()];
        v[k] = self.scalars.one();
        v
    }

    /// Scalar multiple `c·x` for central `c`.
    pub fn scale(&self, c: &C::Elem, x: &DElem<C::Elem>) -> DElem<C::Elem> {
        x.iter().map(|xi| self.scalars.mul(c, xi)).collect()
    }

    /// The canonical involution (identity on the base kind).
    pub fn conj(&self, x: &DElem<C::Elem>) -> DElem<C::Elem> {
        let s = &self.scalars;
        x.iter()
            .enumerate()
            .map(|(k, c)| if k == 0 { c.clone() } else { s.neg(c) })
            .collect()
    }

    /// `x + conj(x)`, a scalar.
    pub fn trd(&self, x: &DElem<C::Elem>) -> C::Elem {
        self.scalars.add(&x[0], &x[0])
    }

    /// `x·conj(x)`, a scalar.
    pub fn nrd(&self, x: &DElem<C::Elem>) -> C::Elem {
        let s = &self.scalars;
        let sq = |v: &C::Elem| s.mul(v, v);
        match self.kind {
            DivisionKind::Base => sq(&x[0]),
            DivisionKind::Quadratic => s.sub(&sq(&x[0]), &s.mul(&self.params[0], &sq(&x[1]))),
            DivisionKind::Quaternion => {
                let (a, b) = (&self.params[0], &self.params[1]);
                let ab = s.mul(a, b);
                let t = s.sub(&sq(&x[0]), &s.mul(a, &sq(&x[1])));
                let t = s.sub(&t, &s.mul(b, &sq(&x[2])));
                s.add(&t, &s.mul(&ab, &sq(&x[3])))
            }
        }
    }

    /// Whether `x` lies in the scalars.
    pub fn is_central_scalar(&self, x: &DElem<C::Elem>) -> bool {
        x[1..].iter().all(|c| self.scalars.is_zero(c))
    }

    /// `conj(x) / nrd(x)`, given an inverse for scalars.
    pub fn try_inv(
        &self,
        x: &DElem<C::Elem>,
        scalar_inv: impl Fn(&C::Elem) -> Option<C::Elem>,
    ) -> Option<DElem<C::Elem>> {
        let n = scalar_inv(&self.nrd(x))?;
        Some(self.scale(&n, &self.conj(x)))
    }

    /// Moves the context onto another scalar ring.
    pub fn map<C2: Ring>(&self, scalars: C2, f: impl Fn(&C::Elem) -> C2::Elem) -> Division<C2> {
        Division {
            scalars,
            kind: self.kind,
            params: self.params.iter().map(f).collect(),
        }
    }
}

impl<C: Field> Division<C> {
    pub fn inv(&self, x: &DElem<C::Elem>) -> Option<DElem<C::Elem>> {
        self.try_inv(x, |c| self.scalars.inv(c))
    }
}

impl<C: OrderedField> Division<C> {
    /// Whether `D` is split at this real field: always for the base
    /// kind; `d > 0` for the quadratic kind; `a > 0` or `b > 0` for
    /// quaternions.
    pub fn is_split(&self) -> bool {
        let s = &self.scalars;
        match self.kind {
            DivisionKind::Base => true,
            DivisionKind::Quadratic => s.sign(&self.params[0]) == Sign::Positive,
            DivisionKind::Quaternion => self.params.iter().any(|p| s.sign(p) == Sign::Positive),
        }
    }
}

impl<C: Ring> Ring for Division<C> {
    type Elem = DElem<C::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.scalars.zero(); self.dim()]
    }
    fn one(&self) -> Self::Elem {
        self.scalar(self.scalars.one())
    }
    fn from_rational(&self, q: &Rational) -> Self::Elem {
        self.scalar(self.scalars.from_rational(q))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.scalars.add(x, y)).collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.scalars.sub(x, y)).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.scalars.neg(x)).collect()
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| self.scalars.is_zero(x))
    }

    /// Not commutative for quaternions.
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let s = &self.scalars;
        let m = |p: &C::Elem, q: &C::Elem| s.mul(p, q);
        match self.kind {
            DivisionKind::Base => vec![m(&x[0], &y[0])],
            DivisionKind::Quadratic => {
                let d = &self.params[0];
                vec![
                    s.add(&m(&x[0], &y[0]), &m(d, &m(&x[1], &y[1]))),
                    s.add(&m(&x[0], &y[1]), &m(&x[1], &y[0])),
                ]
            }
            DivisionKind::Quaternion => {
                let (a, b) = (&self.params[0], &self.params[1]);
                let ab = m(a, b);
                let r = s.add(&m(&x[0], &y[0]), &m(a, &m(&x[1], &y[1])));
                let r = s.add(&r, &m(b, &m(&x[2], &y[2])));
                let r = s.sub(&r, &m(&ab, &m(&x[3], &y[3])));
                let i = s.add(&m(&x[0], &y[1]), &m(&x[1], &y[0]));
                let i = s.sub(&i, &m(b, &m(&x[2], &y[3])));
                let i = s.add(&i, &m(b, &m(&x[3], &y[2])));
                let j = s.add(&m(&x[0], &y[2]), &m(&x[2], &y[0]));
                let j = s.add(&j, &m(a, &m(&x[1], &y[3])));
                let j = s.sub(&j, &m(a, &m(&x[3], &y[1])));
                let k = s.add(&m(&x[0], &y[3]), &m(&x[3], &y[0]));
                let k = s.add(&k, &m(&x[1], &y[2]));
                let k = s.sub(&k, &m(&x[2], &y[1]));
                vec![r, i, j, k]
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, Rationals};

    fn hamilton() -> Division<Rationals> {
        Division::new(Rationals, DivisionKind::Quaternion, vec![rat(-1), rat(-1)])
    }

    #[test]
    fn hamilton_relations() {
        let h = hamilton();
        let (i, j, k) = (h.basis(1), h.basis(2), h.basis(3));
        assert_eq!(h.mul(&i, &j), k);
        assert_eq!(h.mul(&j, &i), h.neg(&k));
        assert_eq!(h.mul(&k, &k), h.from_int(-1));
        assert_eq!(h.conj(&k), h.neg(&k));
    }

    #[test]
    fn general_quaternion_relations() {
        let q = Division::new(Rationals, DivisionKind::Quaternion, vec![rat(2), rat(-3)]);
        let (i, j, k) = (q.basis(1), q.basis(2), q.basis(3));
        assert_eq!(q.mul(&i, &i), q.from_int(2));
        assert_eq!(q.mul(&j, &j), q.from_int(-3));
        assert_eq!(q.mul(&k, &k), q.from_int(6));
        assert_eq!(q.mul(&i, &k), q.scale(&rat(2), &j));
        assert_eq!(q.mul(&k, &j), q.scale(&rat(-3), &i));
        let x = vec![rat(1), rat(2), rat(-1), rat(3)];
        assert_eq!(q.mul(&x, &q.conj(&x)), q.scalar(q.nrd(&x)));
        let xi = q.inv(&x).unwrap();
        assert_eq!(q.mul(&x, &xi), q.one());
    }

    #[test]
    fn conj_reverses_products() {
        let q = Division::new(Rationals, DivisionKind::Quaternion, vec![rat(2), rat(5)]);
        let x = vec![rat(1), rat(2), rat(-1), rat(3)];
        let y = vec![rat(0), rat(-4), rat(7), rat(1)];
        assert_eq!(q.conj(&q.mul(&x, &y)), q.mul(&q.conj(&y), &q.conj(&x)));
    }

    #[test]
    fn quadratic_arithmetic() {
        let c = Division::new(Rationals, DivisionKind::Quadratic, vec![rat(-1)]);
        let w = c.basis(1);
        assert_eq!(c.mul(&w, &w), c.from_int(-1));
        assert_eq!(c.nrd(&vec![rat(3), rat(4)]), rat(25));
    }
}
