use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::exact::Rational;

/// Exponent vector in `Z_+^n`.
///
/// The derived `Ord` is plain lexicographic; use [`MultiIndex::graded_cmp`]
/// for the graded order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(SmallVec<[u32; 4]>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(SmallVec::from_elem(0, n))
    }

    /// The unit vector `e_i` (0-based `i`).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut m = Self::zero(n);
        m.0[i] = 1;
        m
    }

    pub fn from_slice(entries: &[u32]) -> Self {
        MultiIndex(SmallVec::from_slice(entries))
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// `|alpha|`
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Entrywise partial order `self <= other`.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.rank(), other.rank());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` when it stays in `Z_+^n`.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<SmallVec<_>>>()
            .map(MultiIndex)
    }

    pub fn plus_unit(&self, i: usize, k: u32) -> MultiIndex {
        let mut m = self.clone();
        m.0[i] += k;
        m
    }

    pub fn minus_unit(&self, i: usize) -> Option<MultiIndex> {
        let mut m = self.clone();
        m.0[i] = m.0[i].checked_sub(1)?;
        Some(m)
    }

    /// Adds an integer offset to every entry; `None` if any entry would go negative.
    pub fn offset(&self, delta: &[i64]) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(delta)
            .map(|(&a, &d)| u32::try_from(a as i64 + d).ok())
            .collect::<Option<SmallVec<_>>>()
            .map(MultiIndex)
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&x| x as i64).collect()
    }

    /// Product of entrywise binomials `C(self, beta)`, with `C(0,0) = 1`.
    pub fn binomial(&self, beta: &MultiIndex) -> Rational {
        self.0
            .iter()
            .zip(&beta.0)
            .map(|(&a, &b)| Rational::binomial(a as u64, b as u64))
            .product()
    }

    /// Every `beta` with `0 <= beta <= self`, in lexicographic order.
    pub fn lower_set(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex::zero(0)];
        for &a in self.0.iter() {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=a).map(move |x| {
                        let mut p = prefix.clone();
                        p.0.push(x);
                        p
                    })
                })
                .collect();
        }
        out
    }

    /// Every multi-index of rank `n` with `|alpha| <= max_total`.
    pub fn all_up_to(n: usize, max_total: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if pos == cur.len() {
                out.push(MultiIndex::from_slice(cur));
                return;
            }
            for x in 0..=left {
                cur[pos] = x;
                rec(pos + 1, left - x, cur, out);
            }
            cur[pos] = 0;
        }
        rec(0, max_total, &mut cur, &mut out);
        out.sort_by(MultiIndex::graded_cmp);
        out
    }

    /// Every multi-index of rank `n` with each entry at most `max_entry`.
    pub fn box_up_to(n: usize, max_entry: u32) -> Vec<MultiIndex> {
        MultiIndex::from_slice(&vec![max_entry; n]).lower_set()
    }

    /// Graded order: total degree first, then lexicographic.
    pub fn graded_cmp(&self, other: &MultiIndex) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
