//! Dense linear algebra over ℚ, used for exact unit and nonsingularity
//! tests through regular representations.

use num_traits::{One, Zero};

use super::Rational;

pub type QMatrix = Vec<Vec<Rational>>;

/// Row-reduces in place and returns the pivot columns.
fn echelon(m: &mut QMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] = &m[i][j] - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &QMatrix) -> usize {
    echelon(&mut m.clone()).len()
}

pub fn is_nonsingular(m: &QMatrix) -> bool {
    m.len() == m.first().map_or(0, |r| r.len()) && rank(m) == m.len()
}

/// Solves `m·x = b` for square nonsingular `m`.
pub fn solve(m: &QMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let n = m.len();
    let mut aug: QMatrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = echelon(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

pub fn determinant(m: &QMatrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det = &det * &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] = &a[i][j] - t;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    fn m(v: &[&[i64]]) -> QMatrix {
        v.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn rank_det_solve() {
        let a = m(&[&[2, 1], &[4, 3]]);
        assert_eq!(determinant(&a), rat(2));
        assert!(is_nonsingular(&a));
        assert_eq!(solve(&a, &[rat(3), rat(7)]).unwrap(), vec![rat(1), rat(1)]);
        let s = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(rank(&s), 1);
        assert!(solve(&s, &[rat(1), rat(0)]).is_none());
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), rat(-1));
    }
}
