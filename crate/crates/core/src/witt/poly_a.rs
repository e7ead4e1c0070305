use std::fmt;

use num_traits::One;

use super::MultiIndex;
use crate::exact::Rational;
use crate::lincomb::LinComb;

/// Element of the polynomial algebra `A_n^+ = C[t_1, ..., t_n]`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyA {
    rank: usize,
    terms: LinComb<MultiIndex>,
}

impl PolyA {
    pub fn zero(n: usize) -> Self {
        PolyA {
            rank: n,
            terms: LinComb::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        PolyA::monomial(MultiIndex::zero(n), Rational::one())
    }

    pub fn monomial(alpha: MultiIndex, c: Rational) -> Self {
        PolyA {
            rank: alpha.rank(),
            terms: LinComb::single(alpha, c),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &LinComb<MultiIndex> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: Rational) {
        debug_assert_eq!(alpha.rank(), self.rank);
        self.terms.add_term(alpha, c);
    }

    pub fn plus(&self, other: &PolyA) -> PolyA {
        PolyA {
            rank: self.rank,
            terms: self.terms.plus(&other.terms),
        }
    }

    pub fn minus(&self, other: &PolyA) -> PolyA {
        PolyA {
            rank: self.rank,
            terms: self.terms.minus(&other.terms),
        }
    }

    pub fn scaled(&self, c: &Rational) -> PolyA {
        PolyA {
            rank: self.rank,
            terms: self.terms.scaled(c),
        }
    }

    pub fn mul(&self, other: &PolyA) -> PolyA {
        let mut out = PolyA::zero(self.rank);
        for (a, c) in self.terms.iter() {
            for (b, d) in other.terms.iter() {
                out.add_term(a.add(b), c * d);
            }
        }
        out
    }
}

impl fmt::Display for PolyA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return write!(f, "0");
        }
        for (i, (alpha, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c} t^{alpha}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
