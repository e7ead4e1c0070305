use std::collections::VecDeque;

use num_traits::Zero;
use serde_json::json;

use super::window::{exterior_differential, field_generators, inner_box, shifted, window_params};
use super::{GlnSpec, SubspaceByWeight, TBasis, TensorError, TensorModule, Window};
use crate::exact::Rational;
use crate::glnmod::{classify_case, subsets, Classification};
use crate::lincomb::LinComb;
use crate::par::Exec;
use crate::report::CheckReport;
use crate::uea::{act_gen_on_vec, WittModule};
use crate::witt::WittGen;

/// Smallest family of weight subspaces containing `start` (of weight `nu`)
/// and stable under every `t^a d_j` with `|a| <= d` whose image stays in the window.
pub fn cyclic_closure(
    f: &TensorModule,
    window: &Window,
    d: u32,
    nu: &[i64],
    start: &LinComb<TBasis>,
) -> SubspaceByWeight {
    let gens = field_generators(f.rank(), d);
    closure_with(f, window, &gens, nu, start)
}

fn closure_with(
    f: &TensorModule,
    window: &Window,
    gens: &[WittGen],
    nu: &[i64],
    start: &LinComb<TBasis>,
) -> SubspaceByWeight {
    let mut s = SubspaceByWeight::zero(window);
    let mut queue = VecDeque::new();
    if !start.is_zero() && s.insert(nu, window.coords(nu, start)) {
        queue.push_back((nu.to_vec(), start.clone()));
    }
    while let Some((w, v)) = queue.pop_front() {
        for g in gens {
            let img = act_gen_on_vec(f, g, &v);
            if img.is_zero() {
                continue;
            }
            let t = shifted(&w, g);
            if !window.bbox().contains(&t) {
                continue;
            }
            if s.insert(&t, window.coords(&t, &img)) {
                queue.push_back((t, img));
            }
        }
    }
    s
}

/// From every basis vector of the inner box (margin 1), generate with
/// `t^a d_j`, `|a| <= d`, inside the window and ask for every inner weight
/// space in full. Finite evidence only: a pass means no obstruction was found.
pub fn simplicity_probe(
    f: &TensorModule,
    window: &Window,
    d: u32,
    exec: Exec,
) -> Result<CheckReport, TensorError> {
    let inner = inner_box(window, 1)?;
    let params = window_params(f, window, d);
    if window.total_dim() <= 1 {
        let mut r = CheckReport::new("simplicity_probe", params);
        r.record(true, String::new);
        return Ok(r.with_note("at most one basis vector in the window: vacuous"));
    }
    let gens = field_generators(f.rank(), d);
    let inner_weights: Vec<&Vec<i64>> = window.weights().filter(|nu| inner.contains(nu)).collect();
    let starts: Vec<TBasis> = inner_weights
        .iter()
        .flat_map(|nu| window.basis(nu).iter().cloned())
        .collect();
    let outcomes = exec.map(&starts, |b| {
        let nu = f.weight_offset(b);
        let s = closure_with(f, window, &gens, &nu, &LinComb::basis(b.clone()));
        let gap = inner_weights
            .iter()
            .find(|w| s.dim(w) < window.basis(w).len());
        let fails = gap
            .map(|w| {
                vec![format!(
                    "from {b:?}: weight {w:?} spanned {} of {}",
                    s.dim(w),
                    window.basis(w).len()
                )]
            })
            .unwrap_or_default();
        (1, fails)
    });
    let mut report = CheckReport::new("simplicity_probe", params);
    report.absorb(outcomes);
    let (r, dd) = (window.bbox().radius, d);
    Ok(match classify_case(f.m()) {
        Classification::Generic if report.pass => {
            report.with_note(format!("no obstruction found at (R={r}, D={dd})"))
        }
        Classification::Generic => report,
        Classification::TrivialOrExterior(l) => {
            let found = match report.examples.first() {
                Some(e) => format!("obstruction found, {e}"),
                None => format!("no obstruction found at (R={r}, D={dd})"),
            };
            CheckReport {
                failures: 0,
                examples: Vec::new(),
                pass: true,
                ..report
            }
            .with_note(format!(
                "expected reducible: M is the exterior power of degree {l}; {found}"
            ))
        }
    })
}

/// The map `F(P, ext^{l-1}) -> F(P, ext^l)`, `v ⊗ u -> sum_i (d_i v) ⊗ (e_i ∧ u)`,
/// commutes with every `t^a d_j`, `|a| <= d`, on the window basis of the source.
pub fn check_differential(
    target: &TensorModule,
    window: &Window,
    d: u32,
    exec: Exec,
) -> Result<CheckReport, TensorError> {
    let l = match target.m_spec() {
        Some(GlnSpec::Ext { k }) if *k >= 1 => *k,
        other => {
            return Err(TensorError::NotExterior(
                other.map_or_else(|| "unnamed".into(), ToString::to_string),
            ))
        }
    };
    let source = TensorModule::from_spec(target.p().clone(), &GlnSpec::Ext { k: l - 1 })?;
    let src_window = Window::materialize(&source, window.bbox().clone());
    let lower = subsets(target.rank(), l - 1);
    let diff = |v: &LinComb<TBasis>| {
        let mut out = LinComb::new();
        for (b, c) in v.iter() {
            out.add_scaled(&exterior_differential(target.p(), &b.k, &lower[b.m]), c);
        }
        out
    };
    let gens = field_generators(target.rank(), d);
    let vectors = src_window.all_basis();
    let outcomes = exec.map(&vectors, |b| {
        let v = LinComb::basis(b.clone());
        let dv = diff(&v);
        let fails = gens
            .iter()
            .filter(|g| diff(&act_gen_on_vec(&source, g, &v)) != act_gen_on_vec(target, g, &dv))
            .map(|g| format!("{g} on {b:?}"))
            .collect();
        (gens.len(), fails)
    });
    let mut report = CheckReport::new(
        "differential_equivariance",
        window_params(target, window, d),
    );
    report.absorb(outcomes);
    Ok(report)
}

/// Every `t^a d_j`, `|a| <= d`, maps `F_nu` into `S` plus the weight-zero space,
/// for `nu` in the inner box at margin `max(d, 1)`.
pub fn check_quotient_containment(
    f: &TensorModule,
    window: &Window,
    s: &SubspaceByWeight,
    d: u32,
    exec: Exec,
) -> Result<CheckReport, TensorError> {
    let inner = inner_box(window, i64::from(d.max(1)))?;
    let gens = field_generators(f.rank(), d);
    let weights: Vec<Vec<i64>> = window
        .weights()
        .filter(|nu| inner.contains(nu))
        .cloned()
        .collect();
    let outcomes = exec.map(&weights, |nu| {
        let mut checked = 0;
        let mut fails = Vec::new();
        for b in window.basis(nu) {
            let v = LinComb::basis(b.clone());
            for g in &gens {
                checked += 1;
                let t = shifted(nu, g);
                let at_zero = f.absolute_weight(&t).iter().all(Rational::is_zero);
                if !at_zero && !s.contains(window, &t, &act_gen_on_vec(f, g, &v)) {
                    fails.push(format!("{g} on {b:?}"));
                }
            }
        }
        (checked, fails)
    });
    let mut params = window_params(f, window, d);
    params["complement"] = json!("weight zero");
    let mut report = CheckReport::new("quotient_containment", params);
    report.absorb(outcomes);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kweight::{KWeightModule, Rank1Type};
    use crate::tensormod::build_l;
    use crate::uea::WeightBox;

    fn module(p: KWeightModule, spec: &str) -> TensorModule {
        TensorModule::from_spec(p, &spec.parse().unwrap()).unwrap()
    }

    #[test]
    fn generic_module_has_no_obstruction() {
        let f = module(KWeightModule::polynomial(2), "hw:2:1");
        let w = Window::around_anchor(&f, 3);
        let r = simplicity_probe(&f, &w, 4, Exec::Parallel).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.note.unwrap().starts_with("no obstruction"));
    }

    #[test]
    fn natural_module_is_flagged_reducible() {
        let f = module(KWeightModule::polynomial(2), "ext:1");
        let w = Window::around_anchor(&f, 3);
        let r = simplicity_probe(&f, &w, 3, Exec::Parallel).unwrap();
        assert!(r.note.unwrap().contains("obstruction found,"));
        // a vector of L generates nothing outside L
        let l = build_l(&f, &w).unwrap();
        let nu = vec![1, 1];
        let v = w.vector(&nu, &l.get(&nu).unwrap().basis()[0]);
        let s = cyclic_closure(&f, &w, 3, &nu, &v);
        for (x, sub) in s.iter() {
            assert!(sub.dim() <= l.dim(x));
        }
    }

    #[test]
    fn trivial_probe_is_vacuous() {
        let f = module(KWeightModule::polynomial(1), "triv");
        let w = Window::materialize(&f, WeightBox::new(vec![-1], 1));
        let r = simplicity_probe(&f, &w, 2, Exec::Sequential).unwrap();
        assert!(r.pass);
        assert!(r.note.unwrap().contains("vacuous"));
    }

    #[test]
    fn differential_is_equivariant() {
        for l in 1..=2 {
            let p = KWeightModule::new(vec![
                Rank1Type::Poly,
                Rank1Type::Laurent(Rational::new(1, 2)),
            ]);
            let f = module(p, &format!("ext:{l}"));
            let w = Window::around_anchor(&f, 2);
            assert!(check_differential(&f, &w, 3, Exec::Parallel).unwrap().pass);
        }
    }

    #[test]
    fn top_degree_quotient_containment() {
        let f = module(KWeightModule::polynomial(2), "ext:2");
        let w = Window::materialize(&f, WeightBox::new(vec![2, 2], 4));
        let l = build_l(&f, &w).unwrap();
        assert!(
            check_quotient_containment(&f, &w, &l, 3, Exec::Parallel)
                .unwrap()
                .pass
        );
        let empty = SubspaceByWeight::zero(&w);
        assert!(
            !check_quotient_containment(&f, &w, &empty, 3, Exec::Parallel)
                .unwrap()
                .pass
        );
    }
}
