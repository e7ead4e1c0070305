//! Sparse finite linear combinations keyed by an ordered basis.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use num_traits::Zero;

use crate::exact::{Rational, Scalar};

/// `sum c_k * k` with no zero coefficient ever stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord, S = Rational> {
    terms: BTreeMap<K, S>,
}

impl<K: Ord, S> Default for LinComb<K, S> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone, S: Scalar> LinComb<K, S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(key: K, coeff: S) -> Self {
        let mut c = Self::new();
        c.add_term(key, coeff);
        c
    }

    pub fn basis(key: K) -> Self {
        Self::single(key, S::one())
    }

    pub fn add_term(&mut self, key: K, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb<K, S>, factor: &S) {
        if factor.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone() * factor);
        }
    }

    pub fn add_scaled_rational(&mut self, other: &LinComb<K, S>, factor: &Rational) {
        if factor.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.scale(factor));
        }
    }

    pub fn add_assign(&mut self, other: &LinComb<K, S>) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &LinComb<K, S>) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), -c.clone());
        }
    }

    pub fn plus(&self, other: &LinComb<K, S>) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn minus(&self, other: &LinComb<K, S>) -> Self {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        let mut out = Self::new();
        out.add_scaled_rational(self, factor);
        out
    }

    pub fn scaled_by(&self, factor: &S) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, factor);
        out
    }

    pub fn negated(&self) -> Self {
        LinComb {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn get(&self, key: &K) -> S {
        self.terms.get(key).cloned().unwrap_or_else(S::zero)
    }

    pub fn coeff(&self, key: &K) -> Option<&S> {
        self.terms.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &S)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total number of monomials across all coefficients.
    pub fn term_count(&self) -> usize {
        self.terms.values().map(Scalar::term_count).sum()
    }

    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> LinComb<K2, S> {
        let mut out = LinComb::new();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    pub fn retain(&mut self, mut f: impl FnMut(&K, &S) -> bool) {
        self.terms.retain(|k, c| f(k, c));
    }
}

impl<K: Ord + Clone, S: Scalar> FromIterator<(K, S)> for LinComb<K, S> {
    fn from_iter<I: IntoIterator<Item = (K, S)>>(iter: I) -> Self {
        let mut out = Self::new();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord + Clone, S: Scalar> IntoIterator for LinComb<K, S> {
    type Item = (K, S);
    type IntoIter = btree_map::IntoIter<K, S>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<K: Ord + fmt::Debug, S: fmt::Display> fmt::Debug for LinComb<K, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c}){k:?}")?;
        }
        Ok(())
    }
}

impl<K: Ord + Clone, S: Scalar> Zero for LinComb<K, S> {
    fn zero() -> Self {
        Self::new()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<K: Ord + Clone, S: Scalar> std::ops::Add for LinComb<K, S> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.add_assign(&rhs);
        self
    }
}
