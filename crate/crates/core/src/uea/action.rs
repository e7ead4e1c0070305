use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use super::{UElem, UbarElem, UeaError};
use crate::exact::{Rational, Scalar};
use crate::lincomb::LinComb;
use crate::witt::{MultiIndex, WittGen};

/// A weight module over `W_n^+` presented by an explicit weight basis.
///
/// Weights are integer offsets from a fixed reference weight of the module,
/// so windows and weight bookkeeping stay exact.
pub trait WittModule: Sync {
    type Basis: Clone + Ord + Hash + Debug + Send + Sync;
    type Scalar: Scalar;

    fn rank(&self) -> usize;

    fn act_gen(&self, g: &WittGen, b: &Self::Basis) -> LinComb<Self::Basis, Self::Scalar>;

    fn weight_offset(&self, b: &Self::Basis) -> Vec<i64>;

    /// Basis of the weight space at `offset` (empty outside the support).
    fn weight_basis(&self, offset: &[i64]) -> Vec<Self::Basis>;
}

/// A `W_n^+` module that also carries an associative `A_n^+` action.
pub trait AwModule: WittModule {
    fn act_function(
        &self,
        gamma: &MultiIndex,
        b: &Self::Basis,
    ) -> LinComb<Self::Basis, Self::Scalar>;
}

/// Axis-aligned box of weight offsets `|offset_i - center_i| <= radius`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightBox {
    pub center: Vec<i64>,
    pub radius: i64,
}

impl WeightBox {
    pub fn new(center: Vec<i64>, radius: i64) -> Self {
        WeightBox { center, radius }
    }

    pub fn rank(&self) -> usize {
        self.center.len()
    }

    pub fn contains(&self, offset: &[i64]) -> bool {
        offset.len() == self.center.len()
            && offset
                .iter()
                .zip(&self.center)
                .all(|(x, c)| (x - c).abs() <= self.radius)
    }

    /// The box shrunk by `margin`, or `None` if nothing is left.
    pub fn inner(&self, margin: i64) -> Option<WeightBox> {
        (self.radius >= margin).then(|| WeightBox {
            center: self.center.clone(),
            radius: self.radius - margin,
        })
    }

    /// Every offset in the box, lexicographically.
    pub fn points(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for &c in &self.center {
            let mut next = Vec::with_capacity(out.len() * (2 * self.radius as usize + 1));
            for p in &out {
                for x in c - self.radius..=c + self.radius {
                    let mut q = p.clone();
                    q.push(x);
                    next.push(q);
                }
            }
            out = next;
        }
        if self.radius < 0 {
            out.clear();
        }
        out
    }
}

/// 1-dimensional module with zero action.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrivialModule {
    pub n: usize,
}

impl WittModule for TrivialModule {
    type Basis = ();
    type Scalar = Rational;

    fn rank(&self) -> usize {
        self.n
    }

    fn act_gen(&self, _g: &WittGen, _b: &()) -> LinComb<(), Rational> {
        LinComb::new()
    }

    fn weight_offset(&self, _b: &()) -> Vec<i64> {
        vec![0; self.n]
    }

    fn weight_basis(&self, offset: &[i64]) -> Vec<()> {
        if offset.iter().all(|&x| x == 0) {
            vec![()]
        } else {
            Vec::new()
        }
    }
}

fn check_window<M: WittModule>(
    module: &M,
    v: &LinComb<M::Basis, M::Scalar>,
    window: Option<&WeightBox>,
) -> Result<(), UeaError> {
    if let Some(w) = window {
        for b in v.keys() {
            let off = module.weight_offset(b);
            if !w.contains(&off) {
                return Err(UeaError::WindowExceeded(off));
            }
        }
    }
    Ok(())
}

pub fn act_gen_on_vec<M: WittModule>(
    module: &M,
    g: &WittGen,
    v: &LinComb<M::Basis, M::Scalar>,
) -> LinComb<M::Basis, M::Scalar> {
    let mut out = LinComb::new();
    for (b, c) in v.iter() {
        out.add_scaled(&module.act_gen(g, b), c);
    }
    out
}

fn act_function_on_vec<M: AwModule>(
    module: &M,
    gamma: &MultiIndex,
    v: &LinComb<M::Basis, M::Scalar>,
) -> LinComb<M::Basis, M::Scalar> {
    let mut out = LinComb::new();
    for (b, c) in v.iter() {
        out.add_scaled(&module.act_function(gamma, b), c);
    }
    out
}

/// Left action of `x`, applying each word factor by factor from the right.
///
/// With a window, every intermediate vector must stay inside it.
pub fn act_on_module<M: WittModule>(
    x: &UElem,
    module: &M,
    v: &LinComb<M::Basis, M::Scalar>,
    window: Option<&WeightBox>,
) -> Result<LinComb<M::Basis, M::Scalar>, UeaError> {
    if x.rank() != module.rank() {
        return Err(UeaError::Witt(crate::witt::WittError::RankMismatch {
            left: x.rank(),
            right: module.rank(),
        }));
    }
    check_window(module, v, window)?;
    let mut out = LinComb::new();
    for (word, c) in x.terms().iter() {
        let mut cur = v.clone();
        for g in word.factors().iter().rev() {
            if cur.is_zero() {
                break;
            }
            cur = act_gen_on_vec(module, g, &cur);
            check_window(module, &cur, window)?;
        }
        out.add_scaled_rational(&cur, c);
    }
    Ok(out)
}

/// Action of `sum c t^gamma w` on an AW-module: the word first, then `t^gamma`.
pub fn act_ubar_on_module<M: AwModule>(
    x: &UbarElem,
    module: &M,
    v: &LinComb<M::Basis, M::Scalar>,
    window: Option<&WeightBox>,
) -> Result<LinComb<M::Basis, M::Scalar>, UeaError> {
    check_window(module, v, window)?;
    let mut out = LinComb::new();
    for ((gamma, word), c) in x.terms().iter() {
        let mut cur = v.clone();
        for g in word.factors().iter().rev() {
            cur = act_gen_on_vec(module, g, &cur);
            check_window(module, &cur, window)?;
        }
        if !gamma.is_zero() {
            cur = act_function_on_vec(module, gamma, &cur);
            check_window(module, &cur, window)?;
        }
        out.add_scaled_rational(&cur, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    /// `C[t]` with the standard action, basis = exponent.
    struct PolyLine;

    impl WittModule for PolyLine {
        type Basis = i64;
        type Scalar = Rational;

        fn rank(&self) -> usize {
            1
        }

        fn act_gen(&self, g: &WittGen, b: &i64) -> LinComb<i64, Rational> {
            let a = i64::from(g.alpha.get(0));
            LinComb::single(b + a - 1, Rational::from(*b))
        }

        fn weight_offset(&self, b: &i64) -> Vec<i64> {
            vec![*b]
        }

        fn weight_basis(&self, offset: &[i64]) -> Vec<i64> {
            if offset[0] >= 0 {
                vec![offset[0]]
            } else {
                Vec::new()
            }
        }
    }

    #[test]
    fn unit_acts_as_identity() {
        let v = LinComb::basis(3i64);
        assert_eq!(
            act_on_module(&UElem::one(1), &PolyLine, &v, None).unwrap(),
            v
        );
    }

    #[test]
    fn word_acts_from_the_right() {
        let o = super::super::NormalOrderer::default();
        let td = WittGen::new(MultiIndex::from_slice(&[1]), 0);
        let d = WittGen::partial(1, 0);
        let x = o.normal_order_u(1, &[td, d]).unwrap();
        let r = act_on_module(&x, &PolyLine, &LinComb::basis(2i64), None).unwrap();
        assert_eq!(r, LinComb::single(1i64, Rational::from(2)));
    }

    #[test]
    fn window_is_enforced() {
        let up = UElem::generator(WittGen::new(MultiIndex::from_slice(&[3]), 0));
        let w = WeightBox::new(vec![0], 2);
        let r = act_on_module(&up, &PolyLine, &LinComb::basis(1i64), Some(&w));
        assert_eq!(r, Err(UeaError::WindowExceeded(vec![3])));
        assert_eq!(w.points().len(), 5);
        assert_eq!(WeightBox::new(vec![0, 0], 1).points().len(), 9);
        assert!(w.inner(3).is_none());
    }

    #[test]
    fn trivial_module_kills_everything() {
        let x = UElem::generator(WittGen::partial(2, 1));
        let r = act_on_module(&x, &TrivialModule { n: 2 }, &LinComb::basis(()), None).unwrap();
        assert!(r.is_zero());
    }
}
