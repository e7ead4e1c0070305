//! Harish-Chandra criterion for `F(P, M)` at `n = 2` with `M` infinite-dimensional.
//!
//! `supp P = lambda + Q1 x Q2` and `supp M = mu + {(i, -i) : i in Q3}`; the
//! weight space at `lambda + mu + (k', l')` counts the `i in Q3` with
//! `k' - i in Q1` and `l' + i in Q2`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::TensorError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QSet {
    #[serde(rename = "Z")]
    Z,
    #[serde(rename = "Z+")]
    ZPlus,
    #[serde(rename = "Z-")]
    ZMinus,
}

impl QSet {
    pub const ALL: [QSet; 3] = [QSet::Z, QSet::ZPlus, QSet::ZMinus];

    pub fn contains(self, x: i64) -> bool {
        match self {
            QSet::Z => true,
            QSet::ZPlus => x >= 0,
            QSet::ZMinus => x <= 0,
        }
    }

    pub fn negated(self) -> QSet {
        match self {
            QSet::Z => QSet::Z,
            QSet::ZPlus => QSet::ZMinus,
            QSet::ZMinus => QSet::ZPlus,
        }
    }
}

impl fmt::Display for QSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QSet::Z => "Z",
            QSet::ZPlus => "Z+",
            QSet::ZMinus => "Z-",
        })
    }
}

impl FromStr for QSet {
    type Err = TensorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "Z" => Ok(QSet::Z),
            "Z+" => Ok(QSet::ZPlus),
            "Z-" => Ok(QSet::ZMinus),
            other => Err(TensorError::BadSpec(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HcVerdict {
    HarishChandra,
    UnboundedMultiplicity,
}

/// Interval analysis: the solution set in `i` is finite for every `(k', l')`
/// iff the constraints bound `i` from both sides.
pub fn hc_classify_n2(q1: QSet, q2: QSet, q3: QSet) -> HcVerdict {
    // (lower, upper) bounds on i contributed by each constraint
    let from_q3 = (q3 == QSet::ZPlus, q3 == QSet::ZMinus);
    let from_q1 = (q1 == QSet::ZMinus, q1 == QSet::ZPlus);
    let from_q2 = (q2 == QSet::ZPlus, q2 == QSet::ZMinus);
    let lower = from_q3.0 || from_q1.0 || from_q2.0;
    let upper = from_q3.1 || from_q1.1 || from_q2.1;
    if lower && upper {
        HcVerdict::HarishChandra
    } else {
        HcVerdict::UnboundedMultiplicity
    }
}

fn count(q1: QSet, q2: QSet, q3: QSet, k: i64, l: i64, bound: i64) -> usize {
    (-bound..=bound)
        .filter(|&i| q3.contains(i) && q1.contains(k - i) && q2.contains(l + i))
        .count()
}

/// Window count: for every `(k', l')` with `|k'|, |l'| <= r`, the solutions with
/// `|i| <= 2r` and with `|i| <= 4r` must agree.
pub fn hc_brute_force(q1: QSet, q2: QSet, q3: QSet, r: i64) -> HcVerdict {
    for k in -r..=r {
        for l in -r..=r {
            if count(q1, q2, q3, k, l, 2 * r) != count(q1, q2, q3, k, l, 4 * r) {
                return HcVerdict::UnboundedMultiplicity;
            }
        }
    }
    HcVerdict::HarishChandra
}

/// Pairs `Q1 x Q2` admitted after interchanging `t_1, t_2` if necessary.
const CANONICAL_PAIRS: [(QSet, QSet); 6] = [
    (QSet::Z, QSet::Z),
    (QSet::Z, QSet::ZPlus),
    (QSet::Z, QSet::ZMinus),
    (QSet::ZPlus, QSet::ZPlus),
    (QSet::ZPlus, QSet::ZMinus),
    (QSet::ZMinus, QSet::ZMinus),
];

/// The published list, applied after the interchange `(Q1, Q2, Q3) -> (Q2, Q1, -Q3)`
/// when `Q1 x Q2` is not one of the admitted pairs.
pub fn published_list_verdict(q1: QSet, q2: QSet, q3: QSet) -> HcVerdict {
    let (a, b, c) = if CANONICAL_PAIRS.contains(&(q1, q2)) {
        (q1, q2, q3)
    } else {
        (q2, q1, q3.negated())
    };
    use QSet::*;
    let listed = matches!((a, b), (ZPlus, ZPlus) | (ZMinus, ZMinus))
        || matches!(
            (a, b, c),
            (Z, ZPlus, ZMinus) | (ZPlus, ZMinus, ZPlus) | (Z, ZMinus, ZPlus)
        );
    if listed {
        HcVerdict::HarishChandra
    } else {
        HcVerdict::UnboundedMultiplicity
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use QSet::*;

    #[test]
    fn published_examples() {
        for q3 in QSet::ALL {
            assert_eq!(hc_classify_n2(ZPlus, ZPlus, q3), HcVerdict::HarishChandra);
        }
        assert_eq!(hc_classify_n2(Z, ZPlus, ZMinus), HcVerdict::HarishChandra);
        assert_eq!(hc_classify_n2(Z, Z, Z), HcVerdict::UnboundedMultiplicity);
    }

    #[test]
    fn interval_analysis_matches_counting() {
        for q1 in QSet::ALL {
            for q2 in QSet::ALL {
                for q3 in QSet::ALL {
                    let v = hc_classify_n2(q1, q2, q3);
                    assert_eq!(v, hc_brute_force(q1, q2, q3, 6), "{q1} {q2} {q3}");
                    assert_eq!(v, hc_classify_n2(q2, q1, q3.negated()));
                }
            }
        }
    }

    #[test]
    fn parse_round_trip() {
        for q in QSet::ALL {
            assert_eq!(q.to_string().parse::<QSet>().unwrap(), q);
        }
        assert!("N".parse::<QSet>().is_err());
    }
}
