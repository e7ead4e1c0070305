use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{MultiIndex, WittElem, WittError, WittGen};
use crate::exact::Rational;
use crate::lincomb::LinComb;

/// Basis element `t^gamma · t^alpha d_i` of `A_n^+ · W_n^+`.
///
/// The A-part `gamma` is kept apart from the vector field: inside the
/// quotient algebra these are distinct basis elements for different splits
/// of the same total exponent.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct AwKey {
    pub a_part: MultiIndex,
    pub field: WittGen,
}

/// Element of the Lie algebra `A_n^+ · W_n^+`.
#[derive(Clone, PartialEq, Eq)]
pub struct AWLieElem {
    rank: usize,
    terms: LinComb<AwKey>,
}

impl AWLieElem {
    pub fn zero(n: usize) -> Self {
        AWLieElem {
            rank: n,
            terms: LinComb::new(),
        }
    }

    /// `c * t^gamma · t^alpha d_i`.
    pub fn monomial(a_part: MultiIndex, field: WittGen, c: Rational) -> Self {
        AWLieElem {
            rank: a_part.rank(),
            terms: LinComb::single(AwKey { a_part, field }, c),
        }
    }

    /// Embeds a vector field with A-part 1.
    pub fn from_witt(x: &WittElem) -> Self {
        let n = x.rank();
        AWLieElem {
            rank: n,
            terms: x.terms().map_keys(|g| AwKey {
                a_part: MultiIndex::zero(n),
                field: g.clone(),
            }),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &LinComb<AwKey> {
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

    pub fn plus(&self, other: &AWLieElem) -> AWLieElem {
        AWLieElem {
            rank: self.rank,
            terms: self.terms.plus(&other.terms),
        }
    }

    pub fn minus(&self, other: &AWLieElem) -> AWLieElem {
        AWLieElem {
            rank: self.rank,
            terms: self.terms.minus(&other.terms),
        }
    }

    pub fn scaled(&self, c: &Rational) -> AWLieElem {
        AWLieElem {
            rank: self.rank,
            terms: self.terms.scaled(c),
        }
    }

    /// Left multiplication by the function `t^delta` (acts on the A-part only).
    pub fn times_function(&self, delta: &MultiIndex) -> AWLieElem {
        AWLieElem {
            rank: self.rank,
            terms: self.terms.map_keys(|k| AwKey {
                a_part: k.a_part.add(delta),
                field: k.field.clone(),
            }),
        }
    }

    /// `[a·x, b·y] = (a·x(b))·y - (b·y(a))·x + ab·[x, y]`.
    pub fn bracket(&self, other: &AWLieElem) -> Result<AWLieElem, WittError> {
        if self.rank != other.rank {
            return Err(WittError::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let mut out = LinComb::new();
        for (k1, c1) in self.terms.iter() {
            for (k2, c2) in other.terms.iter() {
                let c = c1 * c2;
                if let Some((exp, f)) = k1.field.apply_to_monomial(&k2.a_part) {
                    let key = AwKey {
                        a_part: k1.a_part.add(&exp),
                        field: k2.field.clone(),
                    };
                    out.add_term(key, &c * &f);
                }
                if let Some((exp, f)) = k2.field.apply_to_monomial(&k1.a_part) {
                    let key = AwKey {
                        a_part: k2.a_part.add(&exp),
                        field: k1.field.clone(),
                    };
                    out.add_term(key, -(&c * &f));
                }
                let ab = k1.a_part.add(&k2.a_part);
                for (g, f) in k1.field.bracket(&k2.field) {
                    out.add_term(
                        AwKey {
                            a_part: ab.clone(),
                            field: g,
                        },
                        &c * &f,
                    );
                }
            }
        }
        Ok(AWLieElem {
            rank: self.rank,
            terms: out,
        })
    }

    /// Collapses `t^gamma · t^alpha d_i` to `t^{gamma+alpha} d_i` (the
    /// multiplication map into `W_n^+`).
    pub fn collapse(&self) -> WittElem {
        WittElem::from_terms(
            self.rank,
            self.terms.iter().map(|(k, c)| {
                (
                    WittGen {
                        alpha: k.a_part.add(&k.field.alpha),
                        dir: k.field.dir,
                    },
                    c.clone(),
                )
            }),
        )
    }
}

/// `X_{alpha,i} = sum_{0 <= beta <= alpha} (-1)^{|beta|} C(alpha, beta) t^beta · t^{alpha-beta} d_i`.
pub fn build_x(alpha: &MultiIndex, dir: usize) -> AWLieElem {
    let n = alpha.rank();
    let mut out = AWLieElem::zero(n);
    for beta in alpha.lower_set() {
        let sign = if beta.total() % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        let rest = alpha.checked_sub(&beta).expect("beta <= alpha");
        out.terms.add_term(
            AwKey {
                a_part: beta.clone(),
                field: WittGen::new(rest, dir),
            },
            sign * alpha.binomial(&beta),
        );
    }
    out
}

impl fmt::Display for AWLieElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) t^{}·{}", k.a_part, k.field)?;
        }
        Ok(())
    }
}

impl fmt::Debug for AWLieElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::from_slice(v)
    }

    fn aw(a: &[u32], f: &[u32], dir: usize) -> AWLieElem {
        AWLieElem::monomial(mi(a), WittGen::new(mi(f), dir), Rational::one())
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(
            aw(&[0], &[0], 0).bracket(&aw(&[0], &[1], 0)).unwrap(),
            aw(&[0], &[0], 0)
        );
        assert_eq!(
            aw(&[1], &[0], 0).bracket(&aw(&[0], &[0], 0)).unwrap(),
            aw(&[0], &[0], 0).scaled(&-Rational::one())
        );
        let lhs = aw(&[1, 0], &[0, 0], 1)
            .bracket(&aw(&[0, 1], &[0, 0], 0))
            .unwrap();
        assert_eq!(lhs, aw(&[1, 0], &[0, 0], 0).minus(&aw(&[0, 1], &[0, 0], 1)));
    }

    #[test]
    fn agrees_with_witt_on_unit_a_part() {
        let x = WittElem::monomial(mi(&[1, 0]), 1, Rational::one());
        let y = WittElem::monomial(mi(&[2, 1]), 0, Rational::from(3));
        let lhs = AWLieElem::from_witt(&x)
            .bracket(&AWLieElem::from_witt(&y))
            .unwrap();
        assert_eq!(lhs, AWLieElem::from_witt(&x.bracket(&y).unwrap()));
    }

    #[test]
    fn x_examples() {
        assert_eq!(build_x(&mi(&[0, 0]), 1), aw(&[0, 0], &[0, 0], 1));
        assert_eq!(
            build_x(&mi(&[1]), 0),
            aw(&[0], &[1], 0).minus(&aw(&[1], &[0], 0))
        );
        let x2 = build_x(&mi(&[2]), 0);
        let coeffs: Vec<Rational> = x2.terms().iter().map(|(_, c)| c.clone()).collect();
        assert_eq!(coeffs.len(), 3);
        let mut sorted: Vec<i64> = coeffs.iter().map(|c| c.to_i64().unwrap()).collect();
        sorted.sort();
        assert_eq!(sorted, vec![-2, 1, 1]);
    }
}
