use std::fmt;

use num_traits::One;

use super::pbw::{straighten, PbwWord};
use super::{NormalOrderer, UeaError};
use crate::exact::Rational;
use crate::lincomb::LinComb;
use crate::witt::{AWLieElem, MultiIndex, WittError, WittGen};

/// A factor in a mixed product: a function `t^gamma` or a generator `t^alpha d_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum UbarFactor {
    Function(MultiIndex),
    Field(WittGen),
}

impl UbarFactor {
    fn rank(&self) -> usize {
        match self {
            UbarFactor::Function(g) => g.rank(),
            UbarFactor::Field(g) => g.rank(),
        }
    }
}

/// Element `sum c * t^gamma * w` of `A_n^+ · U(W_n^+)` with the A-part on the left.
#[derive(Clone, PartialEq, Eq)]
pub struct UbarElem {
    rank: usize,
    terms: LinComb<(MultiIndex, PbwWord)>,
}

impl UbarElem {
    pub fn zero(n: usize) -> Self {
        UbarElem {
            rank: n,
            terms: LinComb::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::function(MultiIndex::zero(n))
    }

    pub fn function(gamma: MultiIndex) -> Self {
        UbarElem {
            rank: gamma.rank(),
            terms: LinComb::basis((gamma, PbwWord::unit())),
        }
    }

    pub fn generator(g: WittGen) -> Self {
        let n = g.rank();
        UbarElem {
            rank: n,
            terms: LinComb::basis((MultiIndex::zero(n), PbwWord(vec![g]))),
        }
    }

    pub fn from_awlie(x: &AWLieElem) -> Self {
        UbarElem {
            rank: x.rank(),
            terms: x
                .terms()
                .map_keys(|k| (k.a_part.clone(), PbwWord(vec![k.field.clone()]))),
        }
    }

    /// Inverse of [`UbarElem::from_awlie`] when every word has length one.
    pub fn to_awlie(&self) -> Option<AWLieElem> {
        let mut out = AWLieElem::zero(self.rank);
        for ((gamma, w), c) in self.terms.iter() {
            if w.len() != 1 {
                return None;
            }
            out = out.plus(&AWLieElem::monomial(
                gamma.clone(),
                w.0[0].clone(),
                c.clone(),
            ));
        }
        Some(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &LinComb<(MultiIndex, PbwWord)> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn plus(&self, other: &UbarElem) -> UbarElem {
        UbarElem {
            rank: self.rank,
            terms: self.terms.plus(&other.terms),
        }
    }

    pub fn minus(&self, other: &UbarElem) -> UbarElem {
        UbarElem {
            rank: self.rank,
            terms: self.terms.minus(&other.terms),
        }
    }

    pub fn scaled(&self, c: &Rational) -> UbarElem {
        UbarElem {
            rank: self.rank,
            terms: self.terms.scaled(c),
        }
    }

    /// Left multiplication by `t^delta`; no reordering is needed.
    pub fn times_function(&self, delta: &MultiIndex) -> UbarElem {
        UbarElem {
            rank: self.rank,
            terms: self.terms.map_keys(|(g, w)| (g.add(delta), w.clone())),
        }
    }
}

/// `w · t^delta = sum c * t^eps · w'` with each `w'` a subsequence of `w`.
fn move_function_left(
    word: &[WittGen],
    delta: &MultiIndex,
) -> Vec<(MultiIndex, Vec<WittGen>, Rational)> {
    let Some((last, rest)) = word.split_last() else {
        return vec![(delta.clone(), Vec::new(), Rational::one())];
    };
    let mut out = Vec::new();
    for (eps, mut w, c) in move_function_left(rest, delta) {
        w.push(last.clone());
        out.push((eps, w, c));
    }
    if let Some((exp, f)) = last.apply_to_monomial(delta) {
        out.extend(
            move_function_left(rest, &exp)
                .into_iter()
                .map(|(eps, w, c)| (eps, w, c * &f)),
        );
    }
    out
}

impl NormalOrderer {
    pub fn mul_ubar(&self, a: &UbarElem, b: &UbarElem) -> Result<UbarElem, UeaError> {
        if a.rank != b.rank {
            return Err(UeaError::Witt(WittError::RankMismatch {
                left: a.rank,
                right: b.rank,
            }));
        }
        let mut input = Vec::new();
        for ((ga, wa), ca) in a.terms.iter() {
            for ((gb, wb), cb) in b.terms.iter() {
                let c = ca * cb;
                for (eps, mut w, k) in move_function_left(&wa.0, gb) {
                    w.extend_from_slice(&wb.0);
                    input.push(((ga.add(&eps), w), &c * &k));
                }
            }
        }
        Ok(UbarElem {
            rank: a.rank,
            terms: straighten(input, self.budget)?,
        })
    }

    pub fn commutator_ubar(&self, a: &UbarElem, b: &UbarElem) -> Result<UbarElem, UeaError> {
        Ok(self.mul_ubar(a, b)?.minus(&self.mul_ubar(b, a)?))
    }

    /// Canonical form of a mixed product, read left to right.
    pub fn normal_order_ubar(
        &self,
        n: usize,
        factors: &[UbarFactor],
    ) -> Result<UbarElem, UeaError> {
        let mut acc = UbarElem::one(n);
        for f in factors {
            if f.rank() != n {
                return Err(UeaError::Witt(WittError::RankMismatch {
                    left: n,
                    right: f.rank(),
                }));
            }
            let rhs = match f {
                UbarFactor::Function(g) => UbarElem::function(g.clone()),
                UbarFactor::Field(g) => UbarElem::generator(g.clone()),
            };
            acc = self.mul_ubar(&acc, &rhs)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for UbarElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return write!(f, "0");
        }
        for (i, ((g, w), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) t^{g}·{w:?}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for UbarElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
