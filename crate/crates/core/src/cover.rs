//! The `A`-cover of a weight module `V`: `W_n^+ ⊗ V` with
//! `y · (g ⊗ v) = [y, g] ⊗ v + g ⊗ y v` and `t^a · (t^b d_i ⊗ v) = t^{a+b} d_i ⊗ v`,
//! the map `theta(g ⊗ v) = g v`, generators of `K(V)`, and the rewriting of
//! any `t^a d_l ⊗ t^b d_p v` into the box `a_j <= m` modulo `K(V)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::exact::{Rational, Scalar};
use crate::lincomb::LinComb;
use crate::par::Exec;
use crate::report::CheckReport;
use crate::series::{find_ann_degree, AnnFamily, SeriesError};
use crate::uea::{act_gen_on_vec, NormalOrderer, WeightBox, WittModule};
use crate::witt::{MultiIndex, WittGen};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("no annihilation certificate for m = {0}")]
    CertificateMissing(u32),
    #[error("generator needs alpha_j >= m, got alpha = {alpha}, j = {j}, m = {m}")]
    ShortExponent { alpha: MultiIndex, j: usize, m: u32 },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `sum c · g ⊗ v`.
#[derive(Clone, PartialEq, Eq)]
pub struct CoverElement<B: Ord, S = Rational> {
    pub terms: LinComb<(WittGen, B), S>,
}

impl<B: Ord + std::fmt::Debug, S: std::fmt::Display> std::fmt::Debug for CoverElement<B, S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.terms.fmt(f)
    }
}

impl<B: Ord + Clone, S: Scalar> Default for CoverElement<B, S> {
    fn default() -> Self {
        CoverElement {
            terms: LinComb::new(),
        }
    }
}

impl<B: Ord + Clone, S: Scalar> CoverElement<B, S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(g: WittGen, v: B) -> Self {
        CoverElement {
            terms: LinComb::basis((g, v)),
        }
    }

    /// `g ⊗ w` for a vector `w`.
    pub fn tensor(g: &WittGen, w: &LinComb<B, S>) -> Self {
        CoverElement {
            terms: w.map_keys(|b| (g.clone(), b.clone())),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn plus(&self, other: &Self) -> Self {
        CoverElement {
            terms: self.terms.plus(&other.terms),
        }
    }

    pub fn minus(&self, other: &Self) -> Self {
        CoverElement {
            terms: self.terms.minus(&other.terms),
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        self.terms.add_scaled_rational(&other.terms, c);
    }

    /// `t^gamma · x`.
    pub fn times_function(&self, gamma: &MultiIndex) -> Self {
        CoverElement {
            terms: self
                .terms
                .map_keys(|(g, b)| (WittGen::new(g.alpha.add(gamma), g.dir), b.clone())),
        }
    }
}

impl<B: Ord + Clone + std::fmt::Debug, S: Scalar> CoverElement<B, S> {
    /// `y · x` for a vector field `y`.
    pub fn act_field<M: WittModule<Basis = B, Scalar = S>>(&self, module: &M, y: &WittGen) -> Self {
        let mut out = LinComb::new();
        for ((g, b), c) in self.terms.iter() {
            for (h, k) in y.bracket(g) {
                out.add_term((h, b.clone()), c.scale(&k));
            }
            for (b2, c2) in module.act_gen(y, b).iter() {
                out.add_term((g.clone(), b2.clone()), c.clone() * c2);
            }
        }
        CoverElement { terms: out }
    }

    /// Weight offsets of the terms (`weight(g) + weight(v)`).
    pub fn weights<M: WittModule<Basis = B, Scalar = S>>(&self, module: &M) -> Vec<Vec<i64>> {
        let mut w: Vec<Vec<i64>> = self
            .terms
            .keys()
            .map(|(g, b)| {
                g.weight()
                    .iter()
                    .zip(module.weight_offset(b))
                    .map(|(x, y)| x + y)
                    .collect()
            })
            .collect();
        w.sort();
        w.dedup();
        w
    }
}

/// `theta(g ⊗ v) = g · v`.
pub fn theta<M: WittModule>(
    module: &M,
    x: &CoverElement<M::Basis, M::Scalar>,
) -> LinComb<M::Basis, M::Scalar> {
    let mut out = LinComb::new();
    for ((g, b), c) in x.terms.iter() {
        out.add_scaled(&module.act_gen(g, b), c);
    }
    out
}

/// Evidence that every `omega^{m,j,l,p}` of a family annihilates `V` on a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub m: u32,
    pub family: AnnFamily,
    pub window: WeightBox,
}

impl Certificate {
    pub fn search<M: WittModule>(
        module: &M,
        family: &AnnFamily,
        window: &WeightBox,
        m_max: u32,
        orderer: &NormalOrderer,
        exec: Exec,
    ) -> Result<Certificate, CoverError> {
        let r = find_ann_degree(module, family, window, m_max, orderer, exec)?;
        Ok(Certificate {
            m: r.m,
            family: family.clone(),
            window: window.clone(),
        })
    }
}

/// Indices of `sum_i (-1)^i C(m,i) t^{alpha - i e_j} d_l ⊗ t^{beta + i e_j} d_p v`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct KvIndex {
    pub alpha: MultiIndex,
    pub beta: MultiIndex,
    pub j: usize,
    pub l: usize,
    pub p: usize,
}

impl KvIndex {
    fn term(&self, i: u32) -> (WittGen, WittGen) {
        let n = self.alpha.rank();
        let mut down = vec![0i64; n];
        down[self.j] = -i64::from(i);
        let a = self.alpha.offset(&down).expect("alpha_j >= m");
        (
            WittGen::new(a, self.l),
            WittGen::new(self.beta.plus_unit(self.j, i), self.p),
        )
    }
}

fn binomial_signs(m: u32) -> Vec<Rational> {
    (0..=m)
        .map(|i| {
            let c = Rational::binomial(u64::from(m), u64::from(i));
            if i % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect()
}

/// The generator with arbitrary coefficients `coeffs[i]` in place of `(-1)^i C(m,i)`.
pub fn kv_element_with<M: WittModule>(
    module: &M,
    idx: &KvIndex,
    coeffs: &[Rational],
    v: &M::Basis,
) -> Result<CoverElement<M::Basis, M::Scalar>, CoverError> {
    let m = coeffs.len().saturating_sub(1) as u32;
    if idx.alpha.get(idx.j) < m {
        return Err(CoverError::ShortExponent {
            alpha: idx.alpha.clone(),
            j: idx.j,
            m,
        });
    }
    let base = LinComb::basis(v.clone());
    let mut out = CoverElement::zero();
    for (i, c) in coeffs.iter().enumerate() {
        let (left, right) = idx.term(i as u32);
        out.add_scaled(
            &CoverElement::tensor(&left, &act_gen_on_vec(module, &right, &base)),
            c,
        );
    }
    Ok(out)
}

/// `theta(t^gamma · x) = 0` for every `|gamma| <= margin`.
pub fn theta_kernel_report<M: WittModule>(
    module: &M,
    x: &CoverElement<M::Basis, M::Scalar>,
    margin: u32,
) -> CheckReport {
    let n = module.rank();
    let mut report = CheckReport::new("theta_kernel", json!({ "margin": margin }));
    for gamma in MultiIndex::all_up_to(n, margin) {
        let r = theta(module, &x.times_function(&gamma));
        report.record(r.is_zero(), || {
            format!("t^{gamma}: {} terms survive", r.len())
        });
    }
    report
}

#[derive(Clone)]
pub struct KvGenerator<B: Ord, S> {
    pub index: KvIndex,
    pub element: CoverElement<B, S>,
    pub validation: CheckReport,
}

/// The `K(V)` generator for `idx` and `v`, validated by `theta` to `margin`.
pub fn kv_generators<M: WittModule>(
    module: &M,
    cert: Option<&Certificate>,
    m: u32,
    idx: &KvIndex,
    v: &M::Basis,
    margin: u32,
) -> Result<KvGenerator<M::Basis, M::Scalar>, CoverError> {
    match cert {
        Some(c) if c.m <= m => {}
        _ => return Err(CoverError::CertificateMissing(m)),
    }
    let element = kv_element_with(module, idx, &binomial_signs(m), v)?;
    let mut validation = theta_kernel_report(module, &element, margin);
    validation.check = "kv_generator".into();
    validation.params = json!({ "index": idx, "m": m, "margin": margin });
    Ok(KvGenerator {
        index: idx.clone(),
        element,
        validation,
    })
}

/// One use of `t^a d_l ⊗ t^b d_p v = G - sum_{i>=1} (-1)^i C(m,i) t^{a-ie_j} d_l ⊗ t^{b+ie_j} d_p v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteStep {
    pub generator: KvIndex,
    pub coefficient: Rational,
}

/// `t^a d_l ⊗ t^b d_p v` as box terms plus `K(V)` generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expansion {
    pub m: u32,
    pub input: (WittGen, WittGen),
    /// `(t^a d_l, t^b d_p) -> c` with every `a_j <= m`.
    pub box_terms: Vec<((WittGen, WittGen), Rational)>,
    pub trace: Vec<RewriteStep>,
}

/// Repeatedly rewrites the lowest direction `j` with `a_j > m`; terminates
/// because `|a|` drops at every step.
pub fn reduce_to_box(
    alpha: &MultiIndex,
    l: usize,
    beta: &MultiIndex,
    p: usize,
    m: u32,
) -> Expansion {
    let signs = binomial_signs(m);
    let input = (
        WittGen::new(alpha.clone(), l),
        WittGen::new(beta.clone(), p),
    );
    let mut pending: BTreeMap<(MultiIndex, MultiIndex), Rational> = BTreeMap::new();
    pending.insert((alpha.clone(), beta.clone()), Rational::one());
    let mut box_terms = LinComb::new();
    let mut trace = Vec::new();
    // largest |a| first, so each pair is rewritten once with its full coefficient
    while let Some(key) = pending
        .keys()
        .max_by_key(|(a, b)| (a.total(), a.clone(), b.clone()))
        .cloned()
    {
        let c = pending.remove(&key).expect("present");
        if c.is_zero() {
            continue;
        }
        let (a, b) = key;
        match (0..a.rank()).find(|&j| a.get(j) > m) {
            None => box_terms.add_term((a, b), c),
            Some(j) => {
                let idx = KvIndex {
                    alpha: a.clone(),
                    beta: b.clone(),
                    j,
                    l,
                    p,
                };
                trace.push(RewriteStep {
                    generator: idx.clone(),
                    coefficient: c.clone(),
                });
                for (i, s) in signs.iter().enumerate().skip(1) {
                    let (left, right) = idx.term(i as u32);
                    let e = pending
                        .entry((left.alpha, right.alpha))
                        .or_insert_with(Rational::zero);
                    *e -= &(&c * s);
                }
            }
        }
    }
    let box_terms = box_terms
        .into_iter()
        .map(|((a, b), c)| ((WittGen::new(a, l), WittGen::new(b, p)), c))
        .collect();
    Expansion {
        m,
        input,
        box_terms,
        trace,
    }
}

impl Expansion {
    pub fn generators_used(&self) -> usize {
        self.trace.len()
    }

    /// `input = box + sum c G` in `W ⊗ V` and `theta(input) = theta(box)`, for `v`.
    pub fn check_consistency<M: WittModule>(
        &self,
        module: &M,
        cert: Option<&Certificate>,
        v: &M::Basis,
    ) -> Result<(bool, bool), CoverError> {
        match cert {
            Some(c) if c.m <= self.m => {}
            _ => return Err(CoverError::CertificateMissing(self.m)),
        }
        let base = LinComb::basis(v.clone());
        let lift =
            |g: &WittGen, h: &WittGen| CoverElement::tensor(g, &act_gen_on_vec(module, h, &base));
        let input = lift(&self.input.0, &self.input.1);
        let mut boxed = CoverElement::zero();
        for ((g, h), c) in &self.box_terms {
            boxed.add_scaled(&lift(g, h), c);
        }
        let mut rebuilt = boxed.clone();
        let signs = binomial_signs(self.m);
        for step in &self.trace {
            rebuilt.add_scaled(
                &kv_element_with(module, &step.generator, &signs, v)?,
                &step.coefficient,
            );
        }
        Ok((
            rebuilt == input,
            theta(module, &input) == theta(module, &boxed),
        ))
    }
}

/// `S = span{t^a d_i : every a_j <= m}`.
pub fn box_basis(n: usize, m: u32) -> Vec<WittGen> {
    MultiIndex::box_up_to(n, m)
        .into_iter()
        .flat_map(|a| (0..n).map(move |i| WittGen::new(a.clone(), i)))
        .collect()
}

/// Largest `dim (S ⊗ V)_mu` over the window against the stated bound
/// `n^2 (m+1) r` (`r` = largest weight multiplicity of `V` on the window).
/// The count `|S| r = n (m+1)^n r` is reported alongside.
pub fn cover_bound_report<M: WittModule>(module: &M, m: u32, window: &WeightBox) -> CheckReport {
    let n = module.rank();
    let points = window.points();
    let r = points
        .iter()
        .map(|p| module.weight_basis(p).len())
        .max()
        .unwrap_or(0);
    let s = box_basis(n, m);
    let trivial = points.iter().flat_map(|p| module.weight_basis(p)).all(|b| {
        MultiIndex::all_up_to(n, 2)
            .into_iter()
            .flat_map(|a| (0..n).map(move |i| WittGen::new(a.clone(), i)))
            .all(|g| module.act_gen(&g, &b).is_zero())
    });
    let observed = if trivial {
        0
    } else {
        points
            .iter()
            .map(|mu| {
                s.iter()
                    .map(|g| {
                        let w: Vec<i64> = mu.iter().zip(g.weight()).map(|(x, y)| x - y).collect();
                        module.weight_basis(&w).len()
                    })
                    .sum::<usize>()
            })
            .max()
            .unwrap_or(0)
    };
    let stated = n * n * (m as usize + 1) * r;
    let counted = s.len() * r;
    let mut report = CheckReport::new(
        "cover_bound",
        json!({
            "n": n, "m": m, "r": r, "center": window.center, "radius": window.radius,
            "observed": observed, "stated_bound": stated, "box_bound": counted, "box_size": s.len(),
        }),
    );
    report.record(observed <= stated, || {
        format!("observed {observed} exceeds n^2(m+1)r = {stated}")
    });
    let note = if trivial {
        "V is trivial on the window, so K(V) is everything and the cover vanishes".to_string()
    } else {
        format!(
            "|S| = n(m+1)^n = {}; observed <= |S| r = {counted}: {}",
            s.len(),
            observed <= counted
        )
    };
    report.with_note(note)
}

/// `theta(y · x) = y · theta(x)` for `x = g ⊗ v`, `g`, `y` of degree at most `d`,
/// and `t^a (t^b x) = t^{a+b} x`.
pub fn check_theta_equivariance<M: WittModule>(
    module: &M,
    window: &WeightBox,
    d: u32,
    exec: Exec,
) -> CheckReport {
    let n = module.rank();
    let gens: Vec<WittGen> = MultiIndex::all_up_to(n, d)
        .into_iter()
        .flat_map(|a| (0..n).map(move |i| WittGen::new(a.clone(), i)))
        .collect();
    let funcs = MultiIndex::all_up_to(n, d);
    let vectors: Vec<M::Basis> = window
        .points()
        .iter()
        .flat_map(|p| module.weight_basis(p))
        .collect();
    let outcomes = exec.map(&vectors, |b| {
        let mut checked = 0;
        let mut fails = Vec::new();
        for g in &gens {
            let x = CoverElement::single(g.clone(), b.clone());
            let tx = theta(module, &x);
            for y in &gens {
                checked += 1;
                if theta(module, &x.act_field(module, y)) != act_gen_on_vec(module, y, &tx) {
                    fails.push(format!("{y} on {g} ⊗ {b:?}"));
                }
            }
            for a in &funcs {
                for c in &funcs {
                    checked += 1;
                    if x.times_function(c).times_function(a) != x.times_function(&a.add(c)) {
                        fails.push(format!("t^{a} t^{c} on {g} ⊗ {b:?}"));
                    }
                }
            }
        }
        (checked, fails)
    });
    let mut report = CheckReport::new(
        "theta_equivariance",
        json!({ "degree": d, "center": window.center, "radius": window.radius }),
    );
    report.absorb(outcomes);
    report
}
