//! Tensor modules `F(P, M)` for a simple weight `K_n^+`-module `P` and a
//! finite-dimensional `gl_n`-module `M`.
//!
//! `t^a d_j (g ⊗ v) = (t^a d_j g) ⊗ v + sum_i (d_i(t^a) g) ⊗ E_ij v` and
//! `t^a (g ⊗ v) = (t^a g) ⊗ v`.

mod axioms;
mod hc;
mod probe;
mod window;

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::Rational;
use crate::glnmod::{
    exterior_power, highest_weight_module, GlnError, GlnModule, HighestWeightSpec,
};
use crate::kweight::{KWeightError, KWeightModule};
use crate::lincomb::LinComb;
use crate::uea::{AwModule, WittModule};
use crate::witt::{MultiIndex, WittGen};

pub use axioms::{check_module_axiom, TensorGen};
pub use hc::{hc_brute_force, hc_classify_n2, published_list_verdict, HcVerdict, QSet};
pub use probe::{check_differential, check_quotient_containment, cyclic_closure, simplicity_probe};
pub use window::{
    build_l, check_closure, convolution_dim, exterior_differential, SubspaceByWeight, Window,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("rank mismatch: P has rank {p}, M has rank {m}")]
    RankMismatch { p: usize, m: usize },
    #[error("weight {0:?} is outside the window")]
    OutsideWindow(Vec<i64>),
    #[error("window radius {radius} is smaller than the required margin {margin}")]
    WindowTooSmall { radius: i64, margin: i64 },
    #[error("M must be an exterior power, found `{0}`")]
    NotExterior(String),
    #[error("bad module spec `{0}`")]
    BadSpec(String),
    #[error(transparent)]
    Gln(#[from] GlnError),
    #[error(transparent)]
    KWeight(#[from] KWeightError),
}

/// Text form of a `gl_n` module: `triv`, `ext:k`, or `hw:psi_1,..,psi_{n-1}:b`
/// (`hw:b` when `n = 1`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GlnSpec {
    Ext { k: usize },
    Hw { psi: Vec<u32>, b: Rational },
}

impl GlnSpec {
    pub fn build(&self, n: usize) -> Result<GlnModule, TensorError> {
        Ok(match self {
            GlnSpec::Ext { k } => exterior_power(n, *k)?,
            GlnSpec::Hw { psi, b } => highest_weight_module(&HighestWeightSpec {
                n,
                psi: psi.clone(),
                b: b.clone(),
            })?,
        })
    }
}

impl fmt::Display for GlnSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GlnSpec::Ext { k } => write!(f, "ext:{k}"),
            GlnSpec::Hw { psi, b } if psi.is_empty() => write!(f, "hw:{b}"),
            GlnSpec::Hw { psi, b } => {
                let p: Vec<String> = psi.iter().map(u32::to_string).collect();
                write!(f, "hw:{}:{b}", p.join(","))
            }
        }
    }
}

impl FromStr for GlnSpec {
    type Err = TensorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TensorError::BadSpec(s.to_string());
        let s = s.trim();
        if s == "triv" {
            return Ok(GlnSpec::Ext { k: 0 });
        }
        if let Some(k) = s.strip_prefix("ext:") {
            return Ok(GlnSpec::Ext {
                k: k.parse().map_err(|_| bad())?,
            });
        }
        let rest = s.strip_prefix("hw:").ok_or_else(bad)?;
        let (psi, b) = match rest.rsplit_once(':') {
            Some((p, b)) => {
                let psi = p
                    .split(',')
                    .map(|x| x.trim().parse::<u32>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| bad())?;
                (psi, b)
            }
            None => (Vec::new(), rest),
        };
        Ok(GlnSpec::Hw {
            psi,
            b: b.parse().map_err(|_| bad())?,
        })
    }
}

/// Basis vector `t^{k+lambda} ⊗ u_m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TBasis {
    pub k: Vec<i64>,
    pub m: usize,
}

#[derive(Clone, Debug)]
pub struct TensorModule {
    p: KWeightModule,
    m: GlnModule,
    m_spec: Option<GlnSpec>,
    e_term_shift: Rational,
}

impl TensorModule {
    pub fn new(p: KWeightModule, m: GlnModule) -> Result<Self, TensorError> {
        if p.rank() != m.rank() {
            return Err(TensorError::RankMismatch {
                p: p.rank(),
                m: m.rank(),
            });
        }
        Ok(TensorModule {
            p,
            m,
            m_spec: None,
            e_term_shift: Rational::zero(),
        })
    }

    pub fn from_spec(p: KWeightModule, spec: &GlnSpec) -> Result<Self, TensorError> {
        let m = spec.build(p.rank())?;
        let mut f = Self::new(p, m)?;
        f.m_spec = Some(spec.clone());
        Ok(f)
    }

    /// Replaces `d_i(t^a)` by `(a_i + delta) t^{a - e_i}` in the `E`-terms.
    /// Only meaningful as a negative control: for `delta != 0` this is not a module.
    pub fn with_e_term_shift(mut self, delta: Rational) -> Self {
        self.e_term_shift = delta;
        self
    }

    pub fn p(&self) -> &KWeightModule {
        &self.p
    }

    pub fn m(&self) -> &GlnModule {
        &self.m
    }

    pub fn m_spec(&self) -> Option<&GlnSpec> {
        self.m_spec.as_ref()
    }

    /// Absolute weight of offset zero.
    pub fn base_weight(&self) -> Vec<Rational> {
        self.p
            .shifts()
            .iter()
            .zip(self.m.base_weight())
            .map(|(a, b)| a + b)
            .collect()
    }

    /// Absolute weight of a weight offset.
    pub fn absolute_weight(&self, offset: &[i64]) -> Vec<Rational> {
        self.base_weight()
            .iter()
            .zip(offset)
            .map(|(w, &x)| w + &Rational::from(x))
            .collect()
    }

    /// Weight offset of an absolute weight, if it differs from the base by integers.
    pub fn offset_of(&self, weight: &[Rational]) -> Option<Vec<i64>> {
        weight
            .iter()
            .zip(self.base_weight())
            .map(|(w, b)| (w - &b).to_i64())
            .collect()
    }

    /// Offset whose window covers the support near its canonical anchor.
    pub fn anchor(&self) -> Vec<i64> {
        self.p.anchor()
    }

    pub fn label(&self) -> String {
        let m = self
            .m_spec
            .as_ref()
            .map_or_else(|| format!("dim {}", self.m.dim()), ToString::to_string);
        format!("F({}, {m})", self.p)
    }

    fn act_field(&self, g: &WittGen, b: &TBasis) -> LinComb<TBasis> {
        let n = self.rank();
        let j = g.dir;
        let mut out = LinComb::new();
        if let Some((k, c)) = self.p.act_monomial(&g.alpha, &MultiIndex::unit(n, j), &b.k) {
            out.add_term(TBasis { k, m: b.m }, c);
        }
        for i in 0..n {
            let Some(lower) = g.alpha.minus_unit(i) else {
                continue;
            };
            let coeff = &Rational::from(i64::from(g.alpha.get(i))) + &self.e_term_shift;
            if coeff.is_zero() {
                continue;
            }
            let Some((k, c)) = self.p.act_monomial(&lower, &MultiIndex::zero(n), &b.k) else {
                continue;
            };
            let c = &c * &coeff;
            for (r, v) in self.m.act(i, j, b.m) {
                out.add_term(TBasis { k: k.clone(), m: r }, &c * &v);
            }
        }
        out
    }
}

impl WittModule for TensorModule {
    type Basis = TBasis;
    type Scalar = Rational;

    fn rank(&self) -> usize {
        self.p.rank()
    }

    fn act_gen(&self, g: &WittGen, b: &TBasis) -> LinComb<TBasis> {
        self.act_field(g, b)
    }

    fn weight_offset(&self, b: &TBasis) -> Vec<i64> {
        b.k.iter()
            .zip(self.m.offset(b.m))
            .map(|(x, y)| x + y)
            .collect()
    }

    fn weight_basis(&self, offset: &[i64]) -> Vec<TBasis> {
        let mut out: Vec<TBasis> = (0..self.m.dim())
            .filter_map(|m| {
                let k: Vec<i64> = offset
                    .iter()
                    .zip(self.m.offset(m))
                    .map(|(x, y)| x - y)
                    .collect();
                self.p.in_support(&k).then_some(TBasis { k, m })
            })
            .collect();
        out.sort();
        out
    }
}

impl AwModule for TensorModule {
    fn act_function(&self, gamma: &MultiIndex, b: &TBasis) -> LinComb<TBasis> {
        match self
            .p
            .act_monomial(gamma, &MultiIndex::zero(self.rank()), &b.k)
        {
            Some((k, c)) => LinComb::single(TBasis { k, m: b.m }, c),
            None => LinComb::new(),
        }
    }
}

/// Every `K_n^+` factor combination over `{laurent:lambda, poly, torsion}`.
pub fn factor_combinations(n: usize, lambda: &Rational) -> Vec<KWeightModule> {
    use crate::kweight::Rank1Type;
    let choices = [
        Rank1Type::Laurent(lambda.clone()),
        Rank1Type::Poly,
        Rank1Type::Torsion,
    ];
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Rank1Type>| {
                choices.iter().map(move |c| {
                    let mut q = p.clone();
                    q.push(c.clone());
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(KWeightModule::new).collect()
}
