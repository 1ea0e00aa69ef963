// Oracles written independently of the library's linear algebra.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Characteristic polynomial det(xI - A), lowest coefficient first,
/// by Faddeev-LeVerrier.
pub fn char_poly(a: &[Vec<Q>]) -> Vec<Q> {
    let n = a.len();
    let mut c = vec![Q::zero(); n + 1];
    c[n] = Q::one();
    let mut m = vec![vec![Q::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1}·I
        let mut next = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Q::zero();
                for l in 0..n {
                    s += &a[i][l] * &m[l][j];
                }
                if i == j {
                    s += &c[n - k + 1];
                }
                next[i][j] = s;
            }
        }
        m = next;
        let mut tr = Q::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &a[i][l] * &m[l][i];
            }
        }
        c[n - k] = -tr / q(k as i64);
    }
    c
}

fn sign_changes(c: &[Q]) -> usize {
    let signs: Vec<bool> = c.iter().filter(|v| !v.is_zero()).map(|v| v.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Signature of a rational symmetric matrix: its characteristic
/// polynomial is real-rooted, so Descartes' rule counts exactly.
pub fn symmetric_signature(a: &[Vec<Q>]) -> i64 {
    let c = char_poly(a);
    let z = c.iter().position(|v| !v.is_zero()).unwrap_or(0);
    let c = &c[z..];
    let pos = sign_changes(c);
    let neg_coeffs: Vec<Q> = c
        .iter()
        .enumerate()
        .map(|(i, v)| if (i + z) % 2 == 1 { -v.clone() } else { v.clone() })
        .collect();
    let neg = sign_changes(&neg_coeffs);
    pos as i64 - neg as i64
}

/// Number of distinct real roots of a squarefree integer polynomial
/// (lowest coefficient first): signature of the Hankel matrix of power
/// sums of the roots.
pub fn hermite_real_roots(f: &[i64]) -> usize {
    let d = f.len() - 1;
    let lead = q(f[d]);
    let a: Vec<Q> = f.iter().map(|&c| q(c) / &lead).collect();
    let mut s = vec![Q::zero(); 2 * d - 1];
    s[0] = q(d as i64);
    for k in 1..2 * d - 1 {
        let mut acc = Q::zero();
        for i in 1..=k.min(d) {
            if i < k {
                acc += &a[d - i] * &s[k - i];
            } else {
                acc += &a[d - i] * q(k as i64);
            }
        }
        s[k] = -acc;
    }
    let h: Vec<Vec<Q>> = (0..d).map(|i| (0..d).map(|j| s[i + j].clone()).collect()).collect();
    symmetric_signature(&h) as usize
}
