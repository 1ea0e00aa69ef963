//! Polynomials over ℚ, with the root-finding operations bundled as
//! methods.

use std::fmt;

use super::poly;
use super::sturm::{self, Bound, SturmChain};
use super::{format_rational, rat, Rational, Rationals, RealAlgebraic, Sign};
use crate::error::{Error, Result};

/// Normalized polynomial over ℚ, lowest degree first; empty for zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly(Vec<Rational>);

impl UniPoly {
    pub fn new(coeffs: Vec<Rational>) -> UniPoly {
        UniPoly(poly::trim(&Rationals, coeffs))
    }

    pub fn from_ints(coeffs: &[i64]) -> UniPoly {
        UniPoly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> UniPoly {
        UniPoly(Vec::new())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        poly::degree(&self.0)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        poly::eval(&Rationals, &self.0, x)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly(poly::derivative(&Rationals, &self.0))
    }

    pub fn is_monic(&self) -> bool {
        self.0.last().is_some_and(|c| *c == rat(1))
    }

    pub fn squarefree_check(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::Domain("zero polynomial".into()));
        }
        Ok(poly::is_squarefree(&Rationals, &self.0))
    }

    pub fn sturm_chain(&self) -> Result<SturmChain<Rational>> {
        if !self.squarefree_check()? {
            return Err(Error::Domain(format!("{self} is not squarefree")));
        }
        Ok(SturmChain::new(&Rationals, &self.0))
    }

    /// Real roots in `(lo, hi]`; `None` stands for the matching infinity.
    pub fn count_real_roots(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> Result<usize> {
        let chain = self.sturm_chain()?;
        let lo = lo.map_or(Bound::NegInf, |x| Bound::At(x.clone()));
        let hi = hi.map_or(Bound::PosInf, |x| Bound::At(x.clone()));
        Ok(chain.count(&Rationals, &lo, &hi))
    }

    pub fn isolate_real_roots(&self) -> Result<Vec<RealAlgebraic>> {
        if !self.squarefree_check()? {
            return Err(Error::Domain(format!("{self} is not squarefree")));
        }
        Ok(sturm::isolate(&Rationals, &self.0))
    }

    pub fn sign_at(&self, root: &RealAlgebraic) -> Sign {
        root.sign_of(&Rationals, &self.0)
    }
}

/// Refined copy of `root` with width at most `width`.
pub fn refine(root: &RealAlgebraic, width: &Rational) -> RealAlgebraic {
    let mut r = root.clone();
    r.refine_to(&Rationals, width);
    r
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}
