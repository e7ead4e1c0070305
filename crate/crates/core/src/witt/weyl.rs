use std::fmt;

use num_traits::One;

use super::{MultiIndex, WittError};
use crate::exact::Rational;
use crate::lincomb::LinComb;

/// Element of the Weyl algebra `K_n^+` in normal form `sum c t^alpha d^beta`
/// (all `t` to the left of all `d`).
#[derive(Clone, PartialEq, Eq)]
pub struct WeylElem {
    rank: usize,
    terms: LinComb<(MultiIndex, MultiIndex)>,
}

impl WeylElem {
    pub fn zero(n: usize) -> Self {
        WeylElem {
            rank: n,
            terms: LinComb::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        WeylElem::monomial(MultiIndex::zero(n), MultiIndex::zero(n), Rational::one())
    }

    /// `c * t^alpha d^beta`.
    pub fn monomial(alpha: MultiIndex, beta: MultiIndex, c: Rational) -> Self {
        assert_eq!(alpha.rank(), beta.rank());
        WeylElem {
            rank: alpha.rank(),
            terms: LinComb::single((alpha, beta), c),
        }
    }

    /// The generator `t_i`.
    pub fn t(n: usize, i: usize) -> Self {
        WeylElem::monomial(MultiIndex::unit(n, i), MultiIndex::zero(n), Rational::one())
    }

    /// The generator `d_i`.
    pub fn d(n: usize, i: usize) -> Self {
        WeylElem::monomial(MultiIndex::zero(n), MultiIndex::unit(n, i), Rational::one())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &LinComb<(MultiIndex, MultiIndex)> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn plus(&self, other: &WeylElem) -> WeylElem {
        WeylElem {
            rank: self.rank,
            terms: self.terms.plus(&other.terms),
        }
    }

    pub fn minus(&self, other: &WeylElem) -> WeylElem {
        WeylElem {
            rank: self.rank,
            terms: self.terms.minus(&other.terms),
        }
    }

    pub fn scaled(&self, c: &Rational) -> WeylElem {
        WeylElem {
            rank: self.rank,
            terms: self.terms.scaled(c),
        }
    }

    /// Normal-ordered product.
    pub fn mul(&self, other: &WeylElem) -> Result<WeylElem, WittError> {
        if self.rank != other.rank {
            return Err(WittError::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let mut out = LinComb::new();
        for ((a, b), c) in self.terms.iter() {
            for ((g, d), e) in other.terms.iter() {
                let ce = c * e;
                for (k, coeff) in commute_d_past_t(b, g) {
                    // t^a (t^{g-k} d^{b-k}) d^d
                    let t_exp = a.add(&g.checked_sub(&k).expect("k <= g"));
                    let d_exp = b.checked_sub(&k).expect("k <= b").add(d);
                    out.add_term((t_exp, d_exp), &ce * &coeff);
                }
            }
        }
        Ok(WeylElem {
            rank: self.rank,
            terms: out,
        })
    }
}

/// `d^b t^g = sum_k prod_i C(b_i, k_i) g_i!/(g_i-k_i)! t^{g-k} d^{b-k}`;
/// returns the pairs `(k, coefficient)`.
fn commute_d_past_t(b: &MultiIndex, g: &MultiIndex) -> Vec<(MultiIndex, Rational)> {
    let n = b.rank();
    let bound: Vec<u32> = (0..n).map(|i| b.get(i).min(g.get(i))).collect();
    MultiIndex::from_slice(&bound)
        .lower_set()
        .into_iter()
        .map(|k| {
            let coeff: Rational = (0..n)
                .map(|i| {
                    let (bi, gi, ki) = (b.get(i) as u64, g.get(i) as u64, k.get(i) as u64);
                    let falling: Rational =
                        (0..ki).map(|j| Rational::from((gi - j) as i64)).product();
                    Rational::binomial(bi, ki) * falling
                })
                .product();
            (k, coeff)
        })
        .collect()
}

impl fmt::Display for WeylElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return write!(f, "0");
        }
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c} t^{a} d^{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for WeylElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
