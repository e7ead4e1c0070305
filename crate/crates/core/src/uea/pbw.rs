use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use num_traits::{One, Zero};

use super::UeaError;
use crate::exact::Rational;
use crate::lincomb::LinComb;
use crate::witt::{WittElem, WittGen};

/// Default cap on the number of monomials a single normal-ordering call may
/// produce before giving up.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Ordered PBW monomial; in normal form the factors are nondecreasing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PbwWord(pub Vec<WittGen>);

impl PbwWord {
    pub fn unit() -> Self {
        PbwWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn factors(&self) -> &[WittGen] {
        &self.0
    }

    /// Total weight (sum of `alpha - e_dir` over factors).
    pub fn weight(&self, n: usize) -> Vec<i64> {
        let mut w = vec![0i64; n];
        for g in &self.0 {
            for (x, y) in w.iter_mut().zip(g.weight()) {
                *x += y;
            }
        }
        w
    }
}

impl fmt::Debug for PbwWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|g| format!("[{g}]")).collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// Straightens `(tag, word)` pairs into normal form, carrying `tag` along.
///
/// Each pass swaps the first descent of every pending word, adding the
/// bracket term; the process terminates because brackets lower the word
/// length and swaps lower the inversion count.
pub(crate) fn straighten<T: Clone + Ord + Hash>(
    input: impl IntoIterator<Item = ((T, Vec<WittGen>), Rational)>,
    budget: usize,
) -> Result<LinComb<(T, PbwWord)>, UeaError> {
    let mut result: LinComb<(T, PbwWord)> = LinComb::new();
    let mut pending: HashMap<(T, Vec<WittGen>), Rational> = HashMap::new();
    for (k, c) in input {
        accumulate(&mut pending, k, c);
    }
    let mut work = 0usize;
    while !pending.is_empty() {
        let mut next: HashMap<(T, Vec<WittGen>), Rational> = HashMap::new();
        for ((tag, word), c) in pending {
            if c.is_zero() {
                continue;
            }
            match word.windows(2).position(|w| w[0] > w[1]) {
                None => result.add_term((tag, PbwWord(word)), c),
                Some(i) => {
                    for (g, k) in word[i].bracket(&word[i + 1]) {
                        let mut w = Vec::with_capacity(word.len() - 1);
                        w.extend_from_slice(&word[..i]);
                        w.push(g);
                        w.extend_from_slice(&word[i + 2..]);
                        accumulate(&mut next, (tag.clone(), w), &c * &k);
                    }
                    let mut swapped = word;
                    swapped.swap(i, i + 1);
                    accumulate(&mut next, (tag, swapped), c);
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        work += next.len();
        if work + result.len() > budget {
            return Err(UeaError::BudgetExceeded { budget });
        }
        pending = next;
    }
    Ok(result)
}

fn accumulate<K: Hash + Eq>(map: &mut HashMap<K, Rational>, key: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    *map.entry(key).or_insert_with(Rational::zero) += c;
}

/// Element of `U(W_n^+)` in PBW normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct UElem {
    rank: usize,
    terms: LinComb<PbwWord>,
}

impl UElem {
    pub fn zero(n: usize) -> Self {
        UElem {
            rank: n,
            terms: LinComb::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        UElem {
            rank: n,
            terms: LinComb::basis(PbwWord::unit()),
        }
    }

    /// Degree-one element from a vector field.
    pub fn from_witt(x: &WittElem) -> Self {
        UElem {
            rank: x.rank(),
            terms: x.terms().map_keys(|g| PbwWord(vec![g.clone()])),
        }
    }

    pub fn generator(g: WittGen) -> Self {
        let n = g.rank();
        UElem {
            rank: n,
            terms: LinComb::basis(PbwWord(vec![g])),
        }
    }

    pub(crate) fn from_normal_terms(n: usize, terms: LinComb<PbwWord>) -> Self {
        debug_assert!(terms.keys().all(PbwWord::is_sorted));
        UElem { rank: n, terms }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &LinComb<PbwWord> {
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

    pub fn plus(&self, other: &UElem) -> UElem {
        UElem {
            rank: self.rank,
            terms: self.terms.plus(&other.terms),
        }
    }

    pub fn minus(&self, other: &UElem) -> UElem {
        UElem {
            rank: self.rank,
            terms: self.terms.minus(&other.terms),
        }
    }

    pub fn scaled(&self, c: &Rational) -> UElem {
        UElem {
            rank: self.rank,
            terms: self.terms.scaled(c),
        }
    }

    pub fn add_scaled(&mut self, other: &UElem, c: &Rational) {
        self.terms.add_scaled_rational(&other.terms, c);
    }

    /// Largest weight excursion `(down, up)` per coordinate over all words,
    /// applying factors right to left.
    pub fn weight_reach(&self) -> (Vec<i64>, Vec<i64>) {
        let n = self.rank;
        let mut down = vec![0i64; n];
        let mut up = vec![0i64; n];
        for word in self.terms.keys() {
            let mut cur = vec![0i64; n];
            for g in word.0.iter().rev() {
                for (i, w) in g.weight().into_iter().enumerate() {
                    cur[i] += w;
                    down[i] = down[i].max(-cur[i]);
                    up[i] = up[i].max(cur[i]);
                }
            }
        }
        (down, up)
    }
}

impl fmt::Display for UElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){w:?}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for UElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Normal-ordering engine for `U(W_n^+)` with a monomial budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NormalOrderer {
    pub budget: usize,
}

impl Default for NormalOrderer {
    fn default() -> Self {
        NormalOrderer {
            budget: DEFAULT_BUDGET,
        }
    }
}

impl NormalOrderer {
    pub fn with_budget(budget: usize) -> Self {
        NormalOrderer { budget }
    }

    /// Normal form of the product of the listed generators, left to right.
    pub fn normal_order_u(&self, n: usize, factors: &[WittGen]) -> Result<UElem, UeaError> {
        if let Some(g) = factors.iter().find(|g| g.rank() != n) {
            return Err(UeaError::Witt(crate::witt::WittError::RankMismatch {
                left: n,
                right: g.rank(),
            }));
        }
        let terms = straighten([(((), factors.to_vec()), Rational::one())], self.budget)?;
        Ok(UElem {
            rank: n,
            terms: terms.map_keys(|(_, w)| w.clone()),
        })
    }

    pub fn mul(&self, a: &UElem, b: &UElem) -> Result<UElem, UeaError> {
        if a.rank != b.rank {
            return Err(UeaError::Witt(crate::witt::WittError::RankMismatch {
                left: a.rank,
                right: b.rank,
            }));
        }
        let mut input = Vec::with_capacity(a.len() * b.len());
        for (wa, ca) in a.terms.iter() {
            for (wb, cb) in b.terms.iter() {
                let mut w = wa.0.clone();
                w.extend_from_slice(&wb.0);
                input.push((((), w), ca * cb));
            }
        }
        let terms = straighten(input, self.budget)?;
        Ok(UElem {
            rank: a.rank,
            terms: terms.map_keys(|(_, w)| w.clone()),
        })
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(&self, a: &UElem, b: &UElem) -> Result<UElem, UeaError> {
        Ok(self.mul(a, b)?.minus(&self.mul(b, a)?))
    }

    /// `{a, b} = ab + ba`.
    pub fn anticommutator(&self, a: &UElem, b: &UElem) -> Result<UElem, UeaError> {
        Ok(self.mul(a, b)?.plus(&self.mul(b, a)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witt::MultiIndex;

    fn g1(k: u32) -> WittGen {
        WittGen::new(MultiIndex::from_slice(&[k]), 0)
    }

    fn word(gs: &[u32]) -> UElem {
        UElem::from_normal_terms(
            1,
            LinComb::basis(PbwWord(gs.iter().map(|&k| g1(k)).collect())),
        )
    }

    #[test]
    fn already_sorted_word_is_unchanged() {
        let u = NormalOrderer::default()
            .normal_order_u(1, &[g1(0), g1(1)])
            .unwrap();
        assert_eq!(u, word(&[0, 1]));
    }

    #[test]
    fn one_swap() {
        let u = NormalOrderer::default()
            .normal_order_u(1, &[g1(1), g1(0)])
            .unwrap();
        assert_eq!(u, word(&[0, 1]).minus(&word(&[0])));
    }

    #[test]
    fn associativity_instance() {
        let o = NormalOrderer::default();
        let a = UElem::generator(g1(2));
        let b = UElem::generator(g1(1));
        let c = UElem::generator(g1(0));
        let left = o.mul(&o.mul(&a, &b).unwrap(), &c).unwrap();
        let right = o.mul(&a, &o.mul(&b, &c).unwrap()).unwrap();
        assert_eq!(left, right);
        assert_eq!(left, o.normal_order_u(1, &[g1(2), g1(1), g1(0)]).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let o = NormalOrderer::with_budget(3);
        let gens: Vec<WittGen> = (0..6).rev().map(g1).collect();
        assert!(matches!(
            o.normal_order_u(1, &gens),
            Err(UeaError::BudgetExceeded { budget: 3 })
        ));
    }

    #[test]
    fn weight_reach_tracks_suffixes() {
        // d · t^3 d : t^3 d raises by 2 first, then d lowers by 1
        let u = NormalOrderer::default()
            .normal_order_u(1, &[g1(0), g1(3)])
            .unwrap();
        let (down, up) = u.weight_reach();
        assert_eq!((down[0], up[0]), (0, 2));
    }
}
