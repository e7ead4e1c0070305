use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{MultiIndex, PolyA, WittError};
use crate::exact::{RatMatrix, Rational};
use crate::lincomb::LinComb;

/// Basis vector field `t^alpha d_dir` of `W_n^+` (direction is 0-based).
///
/// Ordered graded-lexicographically on `alpha`, ties broken by direction;
/// this is the PBW generator order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WittGen {
    pub alpha: MultiIndex,
    pub dir: usize,
}

impl WittGen {
    pub fn new(alpha: MultiIndex, dir: usize) -> Self {
        assert!(
            dir < alpha.rank(),
            "direction {dir} out of range for rank {}",
            alpha.rank()
        );
        WittGen { alpha, dir }
    }

    /// `d_i` itself.
    pub fn partial(n: usize, dir: usize) -> Self {
        WittGen::new(MultiIndex::zero(n), dir)
    }

    pub fn rank(&self) -> usize {
        self.alpha.rank()
    }

    /// Eigenvalue of `ad d` on this generator: `|alpha| - 1`.
    pub fn degree(&self) -> i64 {
        self.alpha.total() as i64 - 1
    }

    /// Weight under `ad d_1, ..., ad d_n`: `alpha - e_dir`.
    pub fn weight(&self) -> Vec<i64> {
        let mut w = self.alpha.to_i64();
        w[self.dir] -= 1;
        w
    }

    /// `[self, other]` expanded in the basis; at most two terms.
    pub fn bracket(&self, other: &WittGen) -> Vec<(WittGen, Rational)> {
        // [t^a d_i, t^b d_j] = b_i t^{a+b-e_i} d_j - a_j t^{a+b-e_j} d_i
        let mut out = Vec::with_capacity(2);
        let sum = self.alpha.add(&other.alpha);
        let bi = other.alpha.get(self.dir);
        if bi > 0 {
            let exp = sum.minus_unit(self.dir).expect("b_i > 0");
            out.push((
                WittGen {
                    alpha: exp,
                    dir: other.dir,
                },
                Rational::from(bi),
            ));
        }
        let aj = self.alpha.get(other.dir);
        if aj > 0 {
            let exp = sum.minus_unit(other.dir).expect("a_j > 0");
            let g = WittGen {
                alpha: exp,
                dir: self.dir,
            };
            if let Some(pos) = out.iter().position(|(h, _)| *h == g) {
                out[pos].1 -= Rational::from(aj);
                if out[pos].1.is_zero() {
                    out.remove(pos);
                }
            } else {
                out.push((g, -Rational::from(aj)));
            }
        }
        out
    }

    /// Derivation action on a monomial: `t^alpha d_i (t^beta) = beta_i t^{alpha+beta-e_i}`.
    pub fn apply_to_monomial(&self, beta: &MultiIndex) -> Option<(MultiIndex, Rational)> {
        let bi = beta.get(self.dir);
        if bi == 0 {
            return None;
        }
        let exp = self
            .alpha
            .add(beta)
            .minus_unit(self.dir)
            .expect("beta_i > 0");
        Some((exp, Rational::from(bi)))
    }
}

impl PartialOrd for WittGen {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WittGen {
    fn cmp(&self, other: &Self) -> Ordering {
        self.alpha
            .graded_cmp(&other.alpha)
            .then(self.dir.cmp(&other.dir))
    }
}

impl fmt::Display for WittGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alpha.is_zero() {
            write!(f, "d_{}", self.dir + 1)
        } else {
            write!(f, "t^{} d_{}", self.alpha, self.dir + 1)
        }
    }
}

impl fmt::Debug for WittGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Result of [`WittElem::grading_degree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    Homogeneous(i64),
    Mixed,
    Zero,
}

/// Element of `W_n^+ = sum_i A_n^+ d_i`.
#[derive(Clone, PartialEq, Eq)]
pub struct WittElem {
    rank: usize,
    terms: LinComb<WittGen>,
}

impl WittElem {
    pub fn zero(n: usize) -> Self {
        WittElem {
            rank: n,
            terms: LinComb::new(),
        }
    }

    pub fn generator(g: WittGen) -> Self {
        WittElem {
            rank: g.rank(),
            terms: LinComb::basis(g),
        }
    }

    /// `c * t^alpha d_dir`.
    pub fn monomial(alpha: MultiIndex, dir: usize, c: Rational) -> Self {
        let g = WittGen::new(alpha, dir);
        WittElem {
            rank: g.rank(),
            terms: LinComb::single(g, c),
        }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (WittGen, Rational)>) -> Self {
        let terms: LinComb<WittGen> = terms.into_iter().collect();
        assert!(terms.keys().all(|g| g.rank() == n), "term of wrong rank");
        WittElem { rank: n, terms }
    }

    /// Euler field `d_i = t_i d_i`.
    pub fn euler(n: usize, i: usize) -> Self {
        WittElem::monomial(MultiIndex::unit(n, i), i, Rational::one())
    }

    /// `d = d_1 + ... + d_n`.
    pub fn total_euler(n: usize) -> Self {
        (0..n).fold(WittElem::zero(n), |acc, i| acc.plus(&WittElem::euler(n, i)))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &LinComb<WittGen> {
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

    pub fn plus(&self, other: &WittElem) -> WittElem {
        WittElem {
            rank: self.rank,
            terms: self.terms.plus(&other.terms),
        }
    }

    pub fn minus(&self, other: &WittElem) -> WittElem {
        WittElem {
            rank: self.rank,
            terms: self.terms.minus(&other.terms),
        }
    }

    pub fn scaled(&self, c: &Rational) -> WittElem {
        WittElem {
            rank: self.rank,
            terms: self.terms.scaled(c),
        }
    }

    fn check_rank(&self, other: usize) -> Result<(), WittError> {
        if self.rank == other {
            Ok(())
        } else {
            Err(WittError::RankMismatch {
                left: self.rank,
                right: other,
            })
        }
    }

    /// Lie bracket `[self, other]`.
    pub fn bracket(&self, other: &WittElem) -> Result<WittElem, WittError> {
        self.check_rank(other.rank)?;
        let mut out = LinComb::new();
        for (g, c) in self.terms.iter() {
            for (h, d) in other.terms.iter() {
                let cd = c * d;
                for (k, e) in g.bracket(h) {
                    out.add_term(k, &cd * &e);
                }
            }
        }
        Ok(WittElem {
            rank: self.rank,
            terms: out,
        })
    }

    /// Apply as a derivation of `A_n^+`.
    pub fn apply(&self, f: &PolyA) -> Result<PolyA, WittError> {
        self.check_rank(f.rank())?;
        let mut out = PolyA::zero(self.rank);
        for (g, c) in self.terms.iter() {
            for (beta, d) in f.terms().iter() {
                if let Some((exp, k)) = g.apply_to_monomial(beta) {
                    out.add_term(exp, c * d * k);
                }
            }
        }
        Ok(out)
    }

    /// `k - 1` when every term has `|alpha| = k`.
    pub fn grading_degree(&self) -> Grading {
        let mut degrees = self.terms.keys().map(WittGen::degree);
        let Some(first) = degrees.next() else {
            return Grading::Zero;
        };
        if degrees.all(|d| d == first) {
            Grading::Homogeneous(first)
        } else {
            Grading::Mixed
        }
    }

    /// Image in `gl_n` of an element of `m Delta`, modulo `m^2 Delta`:
    /// the coefficient of `t_i d_j` becomes the `(i, j)` entry.
    pub fn pi_gl3(&self) -> Result<RatMatrix, WittError> {
        if let Some(bad) = self.terms.keys().find(|g| g.alpha.is_zero()) {
            return Err(WittError::NotInMDelta(bad.to_string()));
        }
        let mut m = RatMatrix::zeros(self.rank, self.rank);
        for (g, c) in self.terms.iter() {
            if g.alpha.total() == 1 {
                let i = g
                    .alpha
                    .entries()
                    .iter()
                    .position(|&x| x == 1)
                    .expect("unit index");
                m.add_to(i, g.dir, c);
            }
        }
        Ok(m)
    }
}

impl fmt::Display for WittElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::parse::write_terms(f, self.terms.iter())
    }
}

impl fmt::Debug for WittElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
