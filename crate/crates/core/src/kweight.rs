//! Simple weight modules over the Weyl algebra `K_n^+ = C[t_i, d_i]`.
//!
//! Each coordinate is one of `t^lambda C[t, t^-1]` (lambda not an integer),
//! `C[t]`, or `C[t, t^-1] / C[t]`. A basis vector is stored by its integer
//! offset `k`; its exponent is `k + lambda` (`lambda = 0` unless Laurent).

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::Rational;
use crate::witt::MultiIndex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KWeightError {
    #[error("shift {0} is an integer; use `poly` or `torsion`")]
    IntegralShift(Rational),
    #[error("unknown factor `{0}` (expected laurent:<p/q>, poly or torsion)")]
    UnknownFactor(String),
    #[error("offset {0:?} is outside the support")]
    OutsideSupport(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "shift", rename_all = "lowercase")]
pub enum Rank1Type {
    Laurent(Rational),
    Poly,
    Torsion,
}

impl Rank1Type {
    pub fn laurent(lambda: Rational) -> Result<Self, KWeightError> {
        if lambda.is_integer() {
            return Err(KWeightError::IntegralShift(lambda));
        }
        Ok(Rank1Type::Laurent(lambda))
    }

    pub fn shift(&self) -> Rational {
        match self {
            Rank1Type::Laurent(l) => l.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn contains(&self, k: i64) -> bool {
        match self {
            Rank1Type::Laurent(_) => true,
            Rank1Type::Poly => k >= 0,
            Rank1Type::Torsion => k <= -1,
        }
    }
}

impl fmt::Display for Rank1Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank1Type::Laurent(l) => write!(f, "laurent:{l}"),
            Rank1Type::Poly => write!(f, "poly"),
            Rank1Type::Torsion => write!(f, "torsion"),
        }
    }
}

impl FromStr for Rank1Type {
    type Err = KWeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "poly" => Ok(Rank1Type::Poly),
            "torsion" => Ok(Rank1Type::Torsion),
            _ => {
                let lam = s
                    .strip_prefix("laurent:")
                    .and_then(|x| x.parse::<Rational>().ok())
                    .ok_or_else(|| KWeightError::UnknownFactor(s.to_string()))?;
                Rank1Type::laurent(lam)
            }
        }
    }
}

/// `V_1 ⊗ ... ⊗ V_n` with every weight space one-dimensional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KWeightModule {
    pub factors: Vec<Rank1Type>,
}

/// Generators of `K_n^+`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KGen {
    T(usize),
    D(usize),
}

impl KWeightModule {
    pub fn new(factors: Vec<Rank1Type>) -> Self {
        KWeightModule { factors }
    }

    pub fn polynomial(n: usize) -> Self {
        KWeightModule {
            factors: vec![Rank1Type::Poly; n],
        }
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn shifts(&self) -> Vec<Rational> {
        self.factors.iter().map(Rank1Type::shift).collect()
    }

    pub fn in_support(&self, k: &[i64]) -> bool {
        k.len() == self.rank() && self.factors.iter().zip(k).all(|(f, &x)| f.contains(x))
    }

    /// Exponent (equivalently, weight) of the basis vector at offset `k`.
    pub fn exponent(&self, k: &[i64]) -> Vec<Rational> {
        self.factors
            .iter()
            .zip(k)
            .map(|(f, &x)| &Rational::from(x) + &f.shift())
            .collect()
    }

    /// A canonical support point: 0 where allowed, -1 for torsion factors.
    pub fn anchor(&self) -> Vec<i64> {
        self.factors
            .iter()
            .map(|f| if *f == Rank1Type::Torsion { -1 } else { 0 })
            .collect()
    }

    /// `g · t^{k+lambda}` as `(offset, coefficient)`, or `None` for zero.
    pub fn act_generator(
        &self,
        g: KGen,
        k: &[i64],
    ) -> Result<Option<(Vec<i64>, Rational)>, KWeightError> {
        if !self.in_support(k) {
            return Err(KWeightError::OutsideSupport(k.to_vec()));
        }
        let mut out = k.to_vec();
        Ok(match g {
            KGen::T(i) => {
                out[i] += 1;
                self.factors[i]
                    .contains(out[i])
                    .then(|| (out, Rational::one()))
            }
            KGen::D(i) => {
                let c = &Rational::from(k[i]) + &self.factors[i].shift();
                out[i] -= 1;
                (!c.is_zero()).then_some((out, c))
            }
        })
    }

    /// `t^alpha d^beta · t^{k+lambda}` (derivatives first).
    pub fn act_monomial(
        &self,
        alpha: &MultiIndex,
        beta: &MultiIndex,
        k: &[i64],
    ) -> Option<(Vec<i64>, Rational)> {
        if !self.in_support(k) {
            return None;
        }
        let mut cur = k.to_vec();
        let mut c = Rational::one();
        for (i, f) in self.factors.iter().enumerate() {
            let shift = f.shift();
            for _ in 0..beta.get(i) {
                let x = &Rational::from(cur[i]) + &shift;
                if x.is_zero() {
                    return None;
                }
                c *= x;
                cur[i] -= 1;
            }
            cur[i] += i64::from(alpha.get(i));
            if !f.contains(cur[i]) {
                return None;
            }
        }
        Some((cur, c))
    }

    /// Support offsets in the box `|k_i - center_i| <= radius`.
    pub fn support_offsets(&self, center: &[i64], radius: i64) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for (i, f) in self.factors.iter().enumerate() {
            let range: Vec<i64> = (center[i] - radius..=center[i] + radius)
                .filter(|&x| f.contains(x))
                .collect();
            out = out
                .into_iter()
                .flat_map(|p| {
                    range.iter().map(move |&x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        out
    }

    /// Support exponents within `radius` of a rational `center`.
    pub fn support_window(&self, center: &[Rational], radius: i64) -> Vec<Vec<Rational>> {
        let mut out = vec![Vec::new()];
        for (i, f) in self.factors.iter().enumerate() {
            let shift = f.shift();
            let lo = (&center[i] - &shift - Rational::from(radius)).ceil_i64();
            let hi = (&center[i] - &shift + Rational::from(radius)).floor_i64();
            let vals: Vec<Rational> = (lo..=hi)
                .filter(|&x| f.contains(x))
                .map(|x| &Rational::from(x) + &shift)
                .collect();
            out = out
                .into_iter()
                .flat_map(|p| {
                    vals.iter().map(move |x| {
                        let mut q = p.clone();
                        q.push(x.clone());
                        q
                    })
                })
                .collect();
        }
        out
    }

    /// Offsets in the box reachable from `start` by at most `max_len`
    /// generators with nonzero coefficient, never leaving the box.
    pub fn reachable(
        &self,
        start: &[i64],
        center: &[i64],
        radius: i64,
        max_len: usize,
    ) -> BTreeSet<Vec<i64>> {
        let in_box = |k: &[i64]| k.iter().zip(center).all(|(x, c)| (x - c).abs() <= radius);
        let mut seen = BTreeSet::from([start.to_vec()]);
        let mut queue = VecDeque::from([(start.to_vec(), 0usize)]);
        while let Some((k, d)) = queue.pop_front() {
            if d == max_len {
                continue;
            }
            for i in 0..self.rank() {
                for g in [KGen::T(i), KGen::D(i)] {
                    if let Ok(Some((k2, _))) = self.act_generator(g, &k) {
                        if in_box(&k2) && seen.insert(k2.clone()) {
                            queue.push_back((k2, d + 1));
                        }
                    }
                }
            }
        }
        seen
    }
}

impl fmt::Display for KWeightModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for KWeightModule {
    type Err = KWeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let factors = s
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(KWeightModule { factors })
    }
}
