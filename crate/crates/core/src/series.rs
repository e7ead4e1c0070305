//! The intermediate series `V_{a,b}` of `W_1^+` with formal `a`, `b`, and
//! searches for the least `m` at which an `omega` family annihilates a module.
//!
//! `t^k d · v_{a+s} = (a+s+kb) v_{a+s+k}` with `d = t d/dt`, so
//! `t^m d/dt · v_{a+s} = (a+s+(m-1)b) v_{a+s+m-1}`. Every identity is checked
//! in `Q[a, b]`, hence for all complex `a`, `b`.

use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::exact::{ParamPoly, Rational};
use crate::lincomb::LinComb;
use crate::par::Exec;
use crate::report::CheckReport;
use crate::uea::{
    act_on_module, build_omega, NormalOrderer, OmegaSpec, UElem, UeaError, WeightBox, WittModule,
};
use crate::witt::{MultiIndex, WittGen};

/// How the target index of the series action is read.
pub const SUBSCRIPT_NOTE: &str =
    "the series action is taken as t^k d . v_{a+s} = (a+s+kb) v_{a+s+k}; a printed target subscript b+k+s is read as a+s+k";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("window radius {radius} is smaller than the required margin {margin}")]
    WindowTooSmall { radius: i64, margin: i64 },
    #[error("no m <= {m_max} annihilates the window")]
    NotFound { m_max: u32, witness: String },
    #[error(transparent)]
    Uea(#[from] UeaError),
}

/// `V_{a,b}` restricted to `W_1^+`; basis vector `s` is `v_{a+s}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VabModule {
    a: ParamPoly,
    b: ParamPoly,
}

impl Default for VabModule {
    fn default() -> Self {
        VabModule::generic()
    }
}

impl VabModule {
    pub fn generic() -> Self {
        VabModule {
            a: ParamPoly::var("a"),
            b: ParamPoly::var("b"),
        }
    }

    pub fn specialized(a: Rational, b: Rational) -> Self {
        VabModule {
            a: ParamPoly::constant(a),
            b: ParamPoly::constant(b),
        }
    }

    /// Eigenvalue of `d = t d/dt` on `v_{a+s}`.
    pub fn weight(&self, s: i64) -> ParamPoly {
        self.a.clone() + &ParamPoly::constant(Rational::from(s))
    }
}

impl WittModule for VabModule {
    type Basis = i64;
    type Scalar = ParamPoly;

    fn rank(&self) -> usize {
        1
    }

    fn act_gen(&self, g: &WittGen, s: &i64) -> LinComb<i64, ParamPoly> {
        let k = i64::from(g.alpha.get(0)) - 1;
        let c = self.weight(*s) + &self.b.scale(&Rational::from(k));
        LinComb::single(s + k, c)
    }

    fn weight_offset(&self, s: &i64) -> Vec<i64> {
        vec![*s]
    }

    fn weight_basis(&self, offset: &[i64]) -> Vec<i64> {
        vec![offset[0]]
    }
}

/// `x · v_{a+s}`, with every intermediate index inside `window`.
pub fn act_vab(
    x: &UElem,
    s: i64,
    window: &WeightBox,
) -> Result<LinComb<i64, ParamPoly>, SeriesError> {
    Ok(act_on_module(
        x,
        &VabModule::generic(),
        &LinComb::basis(s),
        Some(window),
    )?)
}

fn margin_of(x: &UElem) -> i64 {
    let (down, up) = x.weight_reach();
    down.into_iter().chain(up).max().unwrap_or(0)
}

fn test_vectors<M: WittModule>(
    module: &M,
    window: &WeightBox,
    margin: i64,
) -> Result<Vec<M::Basis>, SeriesError> {
    let inner = window.inner(margin).ok_or(SeriesError::WindowTooSmall {
        radius: window.radius,
        margin,
    })?;
    Ok(inner
        .points()
        .iter()
        .flat_map(|p| module.weight_basis(p))
        .collect())
}

/// `omega^{(m)}_{k,s} · v_{a+s'} = 0` in `Q[a, b]` for every `s'` whose whole
/// orbit under the words of the element stays in the window.
pub fn check_vab_annihilation(
    m: u32,
    k: u32,
    s: u32,
    window: &WeightBox,
    orderer: &NormalOrderer,
) -> Result<CheckReport, SeriesError> {
    let x = build_omega(&OmegaSpec::Omega1 { k, s, m }, orderer)?;
    let module = VabModule::generic();
    let mut report = CheckReport::new(
        "series_annihilation",
        json!({ "m": m, "k": k, "s": s, "center": window.center, "radius": window.radius }),
    );
    for v in test_vectors(&module, window, margin_of(&x))? {
        let r = act_on_module(&x, &module, &LinComb::basis(v), Some(window))?;
        report.record(r.is_zero(), || format!("v_(a+{v}) -> {r:?}"));
    }
    Ok(report.with_note(SUBSCRIPT_NOTE))
}

/// A family of `omega` elements at a fixed `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "camelCase")]
pub enum AnnFamily {
    /// `omega^{(m)}_{k,s}`, `k <= max_k`, `s <= max_s`.
    Omega1 { max_k: u32, max_s: u32 },
    /// `omega^{m,j,l,p}_{alpha,beta}` over all directions, `|alpha|, |beta| <= max_index`.
    OmegaN { n: usize, max_index: u32 },
}

impl AnnFamily {
    pub fn rank(&self) -> usize {
        match self {
            AnnFamily::Omega1 { .. } => 1,
            AnnFamily::OmegaN { n, .. } => *n,
        }
    }

    pub fn members(&self, m: u32) -> Vec<OmegaSpec> {
        match *self {
            AnnFamily::Omega1 { max_k, max_s } => (0..=max_k)
                .flat_map(|k| (0..=max_s).map(move |s| OmegaSpec::Omega1 { k, s, m }))
                .collect(),
            AnnFamily::OmegaN { n, max_index } => {
                let idx = MultiIndex::all_up_to(n, max_index);
                let mut out = Vec::new();
                for alpha in &idx {
                    for beta in &idx {
                        for j in 0..n {
                            for l in 0..n {
                                for p in 0..n {
                                    out.push(OmegaSpec::OmegaN {
                                        alpha: alpha.clone(),
                                        beta: beta.clone(),
                                        m,
                                        j,
                                        l,
                                        p,
                                    });
                                }
                            }
                        }
                    }
                }
                out
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnResult {
    pub family: AnnFamily,
    pub m: u32,
    pub members: usize,
    pub vectors_checked: usize,
    /// Why `m - 1` fails, when `m > 0`.
    pub witness: Option<String>,
}

/// Least `m <= m_max` such that every member of `family` kills every basis
/// vector whose orbit stays in `window`.
pub fn find_ann_degree<M: WittModule>(
    module: &M,
    family: &AnnFamily,
    window: &WeightBox,
    m_max: u32,
    orderer: &NormalOrderer,
    exec: Exec,
) -> Result<AnnResult, SeriesError> {
    let mut witness = None;
    for m in 0..=m_max {
        let specs = family.members(m);
        let outcomes = exec.try_map(
            &specs,
            |spec| -> Result<(usize, Option<String>), SeriesError> {
                let x = build_omega(spec, orderer)?;
                let vectors = test_vectors(module, window, margin_of(&x))?;
                for v in &vectors {
                    let r = act_on_module(&x, module, &LinComb::basis(v.clone()), Some(window))?;
                    if !r.is_zero() {
                        return Ok((
                            vectors.len(),
                            Some(format!(
                                "{} on {v:?} gives {} terms",
                                spec_label(spec),
                                r.len()
                            )),
                        ));
                    }
                }
                Ok((vectors.len(), None))
            },
        )?;
        let checked = outcomes.iter().map(|o| o.0).sum();
        match outcomes.into_iter().find_map(|o| o.1) {
            None => {
                return Ok(AnnResult {
                    family: family.clone(),
                    m,
                    members: specs.len(),
                    vectors_checked: checked,
                    witness,
                })
            }
            Some(w) => witness = Some(w),
        }
    }
    Err(SeriesError::NotFound {
        m_max,
        witness: witness.unwrap_or_default(),
    })
}

fn spec_label(spec: &OmegaSpec) -> String {
    serde_json::to_string(spec).unwrap_or_else(|_| format!("{spec:?}"))
}

/// Evaluates every coefficient at the given parameter values.
pub fn specialize<K: Ord + Clone>(
    v: &LinComb<K, ParamPoly>,
    values: &std::collections::BTreeMap<String, Rational>,
) -> LinComb<K, Rational> {
    v.iter()
        .filter_map(|(k, c)| c.evaluate(values).map(|x| (k.clone(), x)))
        .collect()
}
