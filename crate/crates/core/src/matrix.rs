//! Dense matrices over a ring context.

use crate::numeric::Ring;

pub type Matrix<E> = Vec<Vec<E>>;

pub fn zeros<C: Ring>(c: &C, rows: usize, cols: usize) -> Matrix<C::Elem> {
    vec![vec![c.zero(); cols]; rows]
}

pub fn identity<C: Ring>(c: &C, n: usize) -> Matrix<C::Elem> {
    let mut m = zeros(c, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = c.one();
    }
    m
}

pub fn is_square<E>(m: &Matrix<E>) -> bool {
    m.iter().all(|r| r.len() == m.len())
}

pub fn transpose<E: Clone>(m: &Matrix<E>) -> Matrix<E> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn map<E, F>(m: &Matrix<E>, f: impl Fn(&E) -> F) -> Matrix<F> {
    m.iter().map(|r| r.iter().map(&f).collect()).collect()
}

pub fn mul<C: Ring>(c: &C, a: &Matrix<C::Elem>, b: &Matrix<C::Elem>) -> Matrix<C::Elem> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter().zip(b).fold(c.zero(), |acc, (x, brow)| {
                        if c.is_zero(x) {
                            acc
                        } else {
                            c.add(&acc, &c.mul(x, &brow[j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn add<C: Ring>(c: &C, a: &Matrix<C::Elem>, b: &Matrix<C::Elem>) -> Matrix<C::Elem> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| c.add(p, q)).collect())
        .collect()
}

pub fn sub<C: Ring>(c: &C, a: &Matrix<C::Elem>, b: &Matrix<C::Elem>) -> Matrix<C::Elem> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| c.sub(p, q)).collect())
        .collect()
}

pub fn neg<C: Ring>(c: &C, a: &Matrix<C::Elem>) -> Matrix<C::Elem> {
    map(a, |x| c.neg(x))
}

/// `s·a` with the scalar on the left.
pub fn scale<C: Ring>(c: &C, s: &C::Elem, a: &Matrix<C::Elem>) -> Matrix<C::Elem> {
    map(a, |x| c.mul(s, x))
}

pub fn is_zero<C: Ring>(c: &C, a: &Matrix<C::Elem>) -> bool {
    a.iter().flatten().all(|x| c.is_zero(x))
}

pub fn equal<C: Ring>(c: &C, a: &Matrix<C::Elem>, b: &Matrix<C::Elem>) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.len() == y.len()) && is_zero(c, &sub(c, a, b))
}

pub fn block_diag<E: Clone>(zero: &E, a: &Matrix<E>, b: &Matrix<E>) -> Matrix<E> {
    let n = a.len() + b.len();
    let mut m = vec![vec![zero.clone(); n]; n];
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            m[i][j] = x.clone();
        }
    }
    for (i, row) in b.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            m[a.len() + i][a.len() + j] = x.clone();
        }
    }
    m
}

/// Kronecker product with `a`'s entries multiplied on the left.
pub fn kron<C: Ring>(c: &C, a: &Matrix<C::Elem>, b: &Matrix<C::Elem>) -> Matrix<C::Elem> {
    let (p, q) = (b.len(), b.first().map_or(0, |r| r.len()));
    let cols = a.first().map_or(0, |r| r.len()) * q;
    let mut m = zeros(c, a.len() * p, cols);
    for (i, arow) in a.iter().enumerate() {
        for (j, x) in arow.iter().enumerate() {
            for (k, brow) in b.iter().enumerate() {
                for (l, y) in brow.iter().enumerate() {
                    m[i * p + k][j * q + l] = c.mul(x, y);
                }
            }
        }
    }
    m
}

/// The ring of `n×n` matrices over a ring context.
#[derive(Clone, Debug)]
pub struct MatrixRing<C: Ring> {
    pub ring: C,
    pub n: usize,
}

impl<C: Ring> Ring for MatrixRing<C> {
    type Elem = Matrix<C::Elem>;

    fn zero(&self) -> Self::Elem {
        zeros(&self.ring, self.n, self.n)
    }
    fn one(&self) -> Self::Elem {
        identity(&self.ring, self.n)
    }
    fn from_rational(&self, q: &crate::numeric::Rational) -> Self::Elem {
        scale(&self.ring, &self.ring.from_rational(q), &self.one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        add(&self.ring, a, b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        sub(&self.ring, a, b)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        mul(&self.ring, a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        neg(&self.ring, a)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        is_zero(&self.ring, a)
    }
}
