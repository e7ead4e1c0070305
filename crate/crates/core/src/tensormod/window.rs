use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Value};

use super::{GlnSpec, TBasis, TensorError, TensorModule};
use crate::exact::{Rational, Subspace};
use crate::glnmod::subsets;
use crate::kweight::{KGen, KWeightModule};
use crate::lincomb::LinComb;
use crate::par::Exec;
use crate::report::CheckReport;
use crate::uea::{act_gen_on_vec, WeightBox, WittModule};
use crate::witt::{MultiIndex, WittGen};

/// Weight spaces of a tensor module over a box of weight offsets.
#[derive(Clone, Debug)]
pub struct Window {
    bbox: WeightBox,
    spaces: BTreeMap<Vec<i64>, Vec<TBasis>>,
}

impl Window {
    pub fn materialize(f: &TensorModule, bbox: WeightBox) -> Self {
        let spaces = bbox
            .points()
            .into_iter()
            .filter_map(|nu| {
                let b = f.weight_basis(&nu);
                (!b.is_empty()).then_some((nu, b))
            })
            .collect();
        Window { bbox, spaces }
    }

    /// Window of `radius` around the anchor of `f`.
    pub fn around_anchor(f: &TensorModule, radius: i64) -> Self {
        Self::materialize(f, WeightBox::new(f.anchor(), radius))
    }

    pub fn bbox(&self) -> &WeightBox {
        &self.bbox
    }

    /// Weights with a nonzero weight space.
    pub fn weights(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.spaces.keys()
    }

    pub fn basis(&self, nu: &[i64]) -> &[TBasis] {
        self.spaces.get(nu).map_or(&[], Vec::as_slice)
    }

    pub fn all_basis(&self) -> Vec<TBasis> {
        self.spaces.values().flatten().cloned().collect()
    }

    pub fn weight_space_dim(&self, nu: &[i64]) -> Result<usize, TensorError> {
        if !self.bbox.contains(nu) {
            return Err(TensorError::OutsideWindow(nu.to_vec()));
        }
        Ok(self.basis(nu).len())
    }

    pub fn max_dim(&self) -> usize {
        self.spaces.values().map(Vec::len).max().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.values().map(Vec::len).sum()
    }

    /// Coordinates of `v` (which must lie in the weight space `nu`).
    pub fn coords(&self, nu: &[i64], v: &LinComb<TBasis>) -> Vec<Rational> {
        let basis = self.basis(nu);
        let mut out = vec![Rational::zero(); basis.len()];
        for (b, c) in v.iter() {
            let i = basis
                .binary_search(b)
                .unwrap_or_else(|_| panic!("{b:?} is not in weight space {nu:?}"));
            out[i] = c.clone();
        }
        out
    }

    pub fn vector(&self, nu: &[i64], coords: &[Rational]) -> LinComb<TBasis> {
        self.basis(nu)
            .iter()
            .cloned()
            .zip(coords.iter().cloned())
            .collect()
    }

    /// `[{weight, dim}]` over the nonzero weight spaces, with absolute weights.
    pub fn dim_table(&self, f: &TensorModule) -> Value {
        let rows: Vec<Value> = self
            .spaces
            .iter()
            .map(|(nu, b)| json!({ "weight": f.absolute_weight(nu), "dim": b.len() }))
            .collect();
        Value::Array(rows)
    }
}

/// `sum_a dim P_{nu - a} * dim M_a`, counted from the factors alone.
pub fn convolution_dim(f: &TensorModule, nu: &[i64]) -> usize {
    let mut by_offset: BTreeMap<&[i64], usize> = BTreeMap::new();
    for u in 0..f.m().dim() {
        *by_offset.entry(f.m().offset(u)).or_default() += 1;
    }
    by_offset
        .into_iter()
        .filter(|(a, _)| {
            let k: Vec<i64> = nu.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
            f.p().in_support(&k)
        })
        .map(|(_, d)| d)
        .sum()
}

/// A subspace of every weight space of a window, in window coordinates.
#[derive(Clone, Debug, Default)]
pub struct SubspaceByWeight {
    spaces: BTreeMap<Vec<i64>, Subspace>,
}

impl SubspaceByWeight {
    pub fn zero(window: &Window) -> Self {
        let spaces = window
            .spaces
            .iter()
            .map(|(nu, b)| (nu.clone(), Subspace::new(b.len())))
            .collect();
        SubspaceByWeight { spaces }
    }

    pub fn full(window: &Window) -> Self {
        let spaces = window
            .spaces
            .iter()
            .map(|(nu, b)| (nu.clone(), Subspace::full(b.len())))
            .collect();
        SubspaceByWeight { spaces }
    }

    pub fn get(&self, nu: &[i64]) -> Option<&Subspace> {
        self.spaces.get(nu)
    }

    pub fn insert(&mut self, nu: &[i64], coords: Vec<Rational>) -> bool {
        self.spaces.get_mut(nu).is_some_and(|s| s.insert(coords))
    }

    pub fn contains(&self, window: &Window, nu: &[i64], v: &LinComb<TBasis>) -> bool {
        if v.is_zero() {
            return true;
        }
        match self.spaces.get(nu) {
            Some(s) => s.contains(&window.coords(nu, v)),
            None => false,
        }
    }

    pub fn dim(&self, nu: &[i64]) -> usize {
        self.spaces.get(nu).map_or(0, Subspace::dim)
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.values().map(Subspace::dim).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &Subspace)> {
        self.spaces.iter()
    }
}

/// `t^{k+lambda} ⊗ u  ->  sum_i (d_i t^{k+lambda}) ⊗ (e_i ∧ u)` for a sorted subset `u`.
pub fn exterior_differential(p: &KWeightModule, k: &[i64], u: &[usize]) -> LinComb<TBasis> {
    let n = p.rank();
    let target = subsets(n, u.len() + 1);
    let mut out = LinComb::new();
    for i in (0..n).filter(|i| !u.contains(i)) {
        let Ok(Some((ki, c))) = p.act_generator(KGen::D(i), k) else {
            continue;
        };
        let below = u.iter().filter(|&&s| s < i).count();
        let mut w = u.to_vec();
        w.insert(below, i);
        let idx = target.binary_search(&w).expect("subsets are sorted");
        out.add_term(
            TBasis { k: ki, m: idx },
            if below % 2 == 0 { c } else { -c },
        );
    }
    out
}

fn exterior_degree(f: &TensorModule) -> Result<usize, TensorError> {
    match f.m_spec() {
        Some(GlnSpec::Ext { k }) if *k >= 1 => Ok(*k),
        other => Err(TensorError::NotExterior(
            other.map_or_else(|| "unnamed".into(), ToString::to_string),
        )),
    }
}

/// The submodule `L_n(P, l)` of `F(P, V(delta_l, l))`, weight by weight.
pub fn build_l(f: &TensorModule, window: &Window) -> Result<SubspaceByWeight, TensorError> {
    let l = exterior_degree(f)?;
    let n = f.rank();
    let lower = subsets(n, l - 1);
    let upper = subsets(n, l);
    let mut out = SubspaceByWeight::zero(window);
    for nu in window.spaces.keys() {
        for u in &lower {
            let i0 = (0..n).find(|i| !u.contains(i)).expect("l <= n");
            let mut w = u.clone();
            w.push(i0);
            w.sort_unstable();
            let idx = upper.binary_search(&w).expect("subsets are sorted");
            let k: Vec<i64> = nu
                .iter()
                .zip(f.m().offset(idx))
                .enumerate()
                .map(|(i, (x, y))| x - y + i64::from(i == i0))
                .collect();
            if !f.p().in_support(&k) {
                continue;
            }
            let v = exterior_differential(f.p(), &k, u);
            if !v.is_zero() {
                out.insert(nu, window.coords(nu, &v));
            }
        }
    }
    Ok(out)
}

pub(crate) fn field_generators(n: usize, d: u32) -> Vec<WittGen> {
    MultiIndex::all_up_to(n, d)
        .into_iter()
        .flat_map(|a| (0..n).map(move |j| WittGen::new(a.clone(), j)))
        .collect()
}

pub(crate) fn shifted(nu: &[i64], g: &WittGen) -> Vec<i64> {
    nu.iter().zip(g.weight()).map(|(x, y)| x + y).collect()
}

pub(crate) fn inner_box(window: &Window, margin: i64) -> Result<WeightBox, TensorError> {
    window
        .bbox
        .inner(margin)
        .ok_or(TensorError::WindowTooSmall {
            radius: window.bbox.radius,
            margin,
        })
}

pub(crate) fn window_params(f: &TensorModule, window: &Window, degree: u32) -> Value {
    json!({
        "module": f.label(),
        "center": f.absolute_weight(&window.bbox.center),
        "radius": window.bbox.radius,
        "degree": degree,
    })
}

/// Whether `s` is stable under every `t^a d_j` with `|a| <= d`, checked on the
/// weights at distance `max(d, 1)` from the window boundary.
pub fn check_closure(
    f: &TensorModule,
    window: &Window,
    s: &SubspaceByWeight,
    d: u32,
    exec: Exec,
) -> Result<CheckReport, TensorError> {
    let inner = inner_box(window, i64::from(d.max(1)))?;
    let gens = field_generators(f.rank(), d);
    let weights: Vec<Vec<i64>> = window
        .spaces
        .keys()
        .filter(|nu| inner.contains(nu))
        .cloned()
        .collect();
    let outcomes = exec.map(&weights, |nu| {
        let mut checked = 0;
        let mut fails = Vec::new();
        let Some(sub) = s.get(nu) else {
            return (0, fails);
        };
        for b in sub.basis() {
            let v = window.vector(nu, b);
            for g in &gens {
                checked += 1;
                let image = act_gen_on_vec(f, g, &v);
                let target = shifted(nu, g);
                if !s.contains(window, &target, &image) {
                    fails.push(format!(
                        "{g} maps a vector of weight {nu:?} out of the subspace"
                    ));
                }
            }
        }
        (checked, fails)
    });
    let mut report = CheckReport::new("closure", window_params(f, window, d));
    report.absorb(outcomes);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kweight::Rank1Type;

    fn module(p: KWeightModule, spec: &str) -> TensorModule {
        TensorModule::from_spec(p, &spec.parse().unwrap()).unwrap()
    }

    #[test]
    fn weight_space_dims() {
        let f = module(KWeightModule::polynomial(2), "ext:1");
        let w = Window::around_anchor(&f, 3);
        let nu = f
            .offset_of(&[Rational::from(1), Rational::from(1)])
            .unwrap();
        assert_eq!(w.weight_space_dim(&nu).unwrap(), 2);
        assert!(w.weight_space_dim(&[9, 9]).is_err());
        for p in w.bbox().points() {
            assert_eq!(w.weight_space_dim(&p).unwrap(), convolution_dim(&f, &p));
        }
    }

    #[test]
    fn torsion_natural_zero_weight() {
        let f = module(KWeightModule::new(vec![Rank1Type::Torsion]), "hw:1");
        let w = Window::around_anchor(&f, 2);
        let nu = f.offset_of(&[Rational::zero()]).unwrap();
        assert_eq!(w.basis(&nu), &[TBasis { k: vec![-1], m: 0 }]);
    }

    #[test]
    fn l_rank_one_is_everything_nonnegative() {
        let f = module(KWeightModule::polynomial(1), "ext:1");
        let w = Window::around_anchor(&f, 4);
        let l = build_l(&f, &w).unwrap();
        for nu in w.weights() {
            assert_eq!(l.dim(nu), 1, "weight {nu:?}");
        }
    }

    #[test]
    fn l_rank_two_degree_zero_is_full() {
        let f = module(KWeightModule::polynomial(2), "ext:1");
        let w = Window::around_anchor(&f, 3);
        let l = build_l(&f, &w).unwrap();
        // degree zero: 1 ⊗ e_1 and 1 ⊗ e_2, both in L
        let degree_zero: usize = [[1, 0], [0, 1]]
            .iter()
            .map(|w| l.dim(&f.offset_of(&w.map(Rational::from)).unwrap()))
            .sum();
        assert_eq!(degree_zero, 2);
        let nu = f
            .offset_of(&[Rational::from(1), Rational::from(1)])
            .unwrap();
        assert_eq!((l.dim(&nu), w.basis(&nu).len()), (1, 2));
        let top = module(KWeightModule::polynomial(2), "ext:2");
        let wt = Window::around_anchor(&top, 3);
        let lt = build_l(&top, &wt).unwrap();
        // top forms: every polynomial 2-form is exact
        for nu in wt.weights() {
            assert_eq!(lt.dim(nu), wt.basis(nu).len());
        }
    }

    #[test]
    fn closure_of_l_and_failure_of_a_line() {
        let f = module(KWeightModule::polynomial(2), "ext:1");
        let w = Window::materialize(&f, WeightBox::new(vec![2, 2], 4));
        let l = build_l(&f, &w).unwrap();
        assert!(check_closure(&f, &w, &l, 2, Exec::Sequential).unwrap().pass);
        assert!(
            check_closure(&f, &w, &SubspaceByWeight::full(&w), 2, Exec::Parallel)
                .unwrap()
                .pass
        );
        let mut bad = SubspaceByWeight::zero(&w);
        bad.insert(&[2, 2], vec![Rational::from(1), Rational::from(3)]);
        assert!(
            !check_closure(&f, &w, &bad, 2, Exec::Sequential)
                .unwrap()
                .pass
        );
        assert!(build_l(&module(KWeightModule::polynomial(2), "hw:2:1"), &w).is_err());
        assert!(check_closure(&f, &Window::around_anchor(&f, 1), &l, 3, Exec::Sequential).is_err());
    }
}
