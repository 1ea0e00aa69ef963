//! Exact numerics: rationals, univariate polynomials over exact fields,
//! Sturm chains, real root isolation and sign determination.

mod field;
pub mod linalg;
pub mod place;
pub mod poly;
pub mod sturm;
pub mod unipoly;

pub use field::{Field, Interval, OrderedField, Rationals, Ring, Sign};
pub use place::RealPlace;
pub use sturm::{RealRoot, SturmChain};
pub use unipoly::UniPoly;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always normalized (positive denominator,
/// coprime numerator and denominator).
pub type Rational = num_rational::BigRational;

/// A real algebraic number over ℚ: squarefree defining polynomial plus an
/// isolating interval.
pub type RealAlgebraic = RealRoot<Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// `p` for integers and `p/q` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Decimal rendering with `digits` places after the point, truncated
/// toward zero. Display only.
pub fn format_decimal(q: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10).pow(digits);
    let scaled = (q * Rational::from_integer(scale.clone())).trunc().to_integer();
    let neg = scaled.is_negative() || (scaled.is_zero() && q.is_negative());
    let abs = scaled.abs();
    let int = &abs / &scale;
    let frac = (&abs % &scale).to_string();
    let pad = "0".repeat(digits as usize - frac.len());
    format!("{}{}.{}{}", if neg { "-" } else { "" }, int, pad, frac)
}

/// The rational with smallest denominator (then smallest absolute
/// numerator) in the open interval `(lo, hi)`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo < hi, "empty interval");
    if lo.is_negative() && hi.is_positive() {
        return Rational::zero();
    }
    if !lo.is_negative() {
        simplest_positive(lo, hi)
    } else {
        -simplest_positive(&-hi, &-lo)
    }
}

// Continued-fraction descent for 0 <= lo < hi.
fn simplest_positive(lo: &Rational, hi: &Rational) -> Rational {
    let fl = lo.floor();
    let next = &fl + Rational::one();
    if next < *hi {
        return next;
    }
    let frac_lo = lo - &fl;
    let frac_hi = hi - &fl;
    let inv_lo = Rational::one() / frac_hi;
    let inner = if frac_lo.is_zero() {
        inv_lo.floor() + Rational::one()
    } else {
        simplest_positive(&inv_lo, &(Rational::one() / frac_lo))
    };
    fl + Rational::one() / inner
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-3/6"), Some(ratio(-1, 2)));
        assert_eq!(parse_rational("7"), Some(rat(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(format_rational(&ratio(4, -6)), "-2/3");
        assert_eq!(format_rational(&rat(5)), "5");
    }

    #[test]
    fn decimals() {
        assert_eq!(format_decimal(&ratio(-1, 8), 3), "-0.125");
        assert_eq!(format_decimal(&ratio(141421, 100000), 2), "1.41");
        assert_eq!(format_decimal(&rat(3), 1), "3.0");
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_between(&ratio(-1, 3), &ratio(1, 2)), rat(0));
        assert_eq!(simplest_between(&ratio(1, 3), &ratio(1, 2)), ratio(2, 5));
        assert_eq!(simplest_between(&rat(1), &rat(3)), rat(2));
        assert_eq!(simplest_between(&ratio(14, 10), &ratio(15, 10)), ratio(10, 7));
        assert_eq!(simplest_between(&rat(0), &ratio(1, 3)), ratio(1, 4));
        let s = simplest_between(&ratio(-17, 10), &ratio(-16, 10));
        assert!(s > ratio(-17, 10) && s < ratio(-16, 10));
        assert_eq!(s, ratio(-5, 3));
    }
}
