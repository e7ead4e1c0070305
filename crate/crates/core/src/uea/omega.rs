use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::pbw::straighten;
use super::{NormalOrderer, UElem, UeaError};
use crate::exact::Rational;
use crate::witt::{MultiIndex, WittGen};

/// Index data for the quadratic elements `omega` and `Omega`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum OmegaSpec {
    /// `sum (-1)^i C(m,i) t^{m+k-i} d · t^{s+i} d` in `U(W_1^+)`.
    Omega1 { k: u32, s: u32, m: u32 },
    /// `sum (-1)^i C(m,i) t^{alpha+(m-i)e_j} d_l · t^{beta+i e_j} d_p`.
    OmegaN {
        alpha: MultiIndex,
        beta: MultiIndex,
        m: u32,
        j: usize,
        l: usize,
        p: usize,
    },
    /// `sum (-1)^i C(m,i) t^{k-i} d_1 · t^{s+i} d_1` with `d_1 = t d`; only the
    /// range where no negative exponent appears is representable.
    BigOmega { k: i64, s: i64, m: u32 },
}

impl OmegaSpec {
    pub fn rank(&self) -> usize {
        match self {
            OmegaSpec::OmegaN { alpha, .. } => alpha.rank(),
            _ => 1,
        }
    }

    /// The equivalent `Omega1` for a `BigOmega` in range.
    pub fn as_omega1(&self) -> Result<OmegaSpec, UeaError> {
        match *self {
            OmegaSpec::BigOmega { k, s, m } => {
                let k1 = k + 1 - i64::from(m);
                let s1 = s + 1;
                if k1 < 0 || s1 < 0 {
                    return Err(UeaError::NegativeExponent(format!(
                        "Omega^({m})_{{{k},{s}}} needs t-exponents below zero"
                    )));
                }
                Ok(OmegaSpec::Omega1 {
                    k: k1 as u32,
                    s: s1 as u32,
                    m,
                })
            }
            ref other => Ok(other.clone()),
        }
    }

    /// Unordered two-factor expansion `sum c · g1 · g2`.
    pub fn pairs(&self) -> Result<Vec<(Rational, WittGen, WittGen)>, UeaError> {
        match self {
            OmegaSpec::Omega1 { k, s, m } => Ok(omega_pairs(
                &MultiIndex::from_slice(&[*k]),
                &MultiIndex::from_slice(&[*s]),
                *m,
                0,
                0,
                0,
            )),
            OmegaSpec::OmegaN {
                alpha,
                beta,
                m,
                j,
                l,
                p,
            } => {
                let n = alpha.rank();
                if beta.rank() != n || *j >= n || *l >= n || *p >= n {
                    return Err(UeaError::BadIndex(format!("{self:?}")));
                }
                Ok(omega_pairs(alpha, beta, *m, *j, *l, *p))
            }
            OmegaSpec::BigOmega { k, s, m } => {
                self.as_omega1()?;
                // t^{k-i} d_1 = t^{k-i+1} d
                Ok((0..=*m)
                    .map(|i| {
                        let sign = if i % 2 == 0 {
                            Rational::from(1)
                        } else {
                            Rational::from(-1)
                        };
                        let a = (k - i64::from(i) + 1) as u32;
                        let b = (s + i64::from(i) + 1) as u32;
                        (
                            sign * Rational::binomial(u64::from(*m), u64::from(i)),
                            WittGen::new(MultiIndex::from_slice(&[a]), 0),
                            WittGen::new(MultiIndex::from_slice(&[b]), 0),
                        )
                    })
                    .collect())
            }
        }
    }
}

pub(crate) fn omega_pairs(
    alpha: &MultiIndex,
    beta: &MultiIndex,
    m: u32,
    j: usize,
    l: usize,
    p: usize,
) -> Vec<(Rational, WittGen, WittGen)> {
    (0..=m)
        .map(|i| {
            let sign = if i % 2 == 0 {
                Rational::from(1)
            } else {
                Rational::from(-1)
            };
            (
                sign * Rational::binomial(u64::from(m), u64::from(i)),
                WittGen::new(alpha.plus_unit(j, m - i), l),
                WittGen::new(beta.plus_unit(j, i), p),
            )
        })
        .collect()
}

/// Normal-ordered sum of two-factor products.
pub(crate) fn order_pairs(
    n: usize,
    pairs: impl IntoIterator<Item = (Rational, WittGen, WittGen)>,
    orderer: &NormalOrderer,
) -> Result<UElem, UeaError> {
    let input = pairs
        .into_iter()
        .filter(|(c, _, _)| !c.is_zero())
        .map(|(c, a, b)| (((), vec![a, b]), c));
    let terms = straighten(input, orderer.budget)?;
    Ok(UElem::from_normal_terms(
        n,
        terms.map_keys(|(_, w)| w.clone()),
    ))
}

pub fn build_omega(spec: &OmegaSpec, orderer: &NormalOrderer) -> Result<UElem, UeaError> {
    order_pairs(spec.rank(), spec.pairs()?, orderer)
}
