//! Finite-dimensional weight modules over `gl_n`.
//!
//! Basis vectors are weight vectors; `e[i][j]` is the matrix of `E_{ij}`.
//! Indices are 0-based.

use std::collections::{BTreeMap, VecDeque};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{RatMatrix, Rational, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlnError {
    #[error("exterior power degree {k} out of range for n = {n}")]
    DegreeOutOfRange { n: usize, k: usize },
    #[error("highest weight needs {expected} entries, got {found}")]
    BadHighestWeight { expected: usize, found: usize },
    #[error("rank must be positive")]
    ZeroRank,
    #[error("internal: vector left its weight space during construction")]
    WeightLeak,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlnModule {
    n: usize,
    e: Vec<Vec<RatMatrix>>,
    weights: Vec<Vec<Rational>>,
    offsets: Vec<Vec<i64>>,
}

/// `V(psi, b)`: `psi[i] = psi(h_{i+1})` for `i < n-1`, and `I` acts by `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HighestWeightSpec {
    pub n: usize,
    pub psi: Vec<u32>,
    pub b: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    /// Isomorphic to the `l`-th exterior power of the natural module.
    TrivialOrExterior(usize),
    Generic,
}

impl GlnModule {
    fn from_parts(n: usize, e: Vec<Vec<RatMatrix>>, weights: Vec<Vec<Rational>>) -> Self {
        let offsets = weights
            .iter()
            .map(|w| {
                w.iter()
                    .zip(&weights[0])
                    .map(|(x, y)| {
                        let d = x - y;
                        d.to_i64()
                            .expect("weights of a simple module differ by integers")
                    })
                    .collect()
            })
            .collect();
        GlnModule {
            n,
            e,
            weights,
            offsets,
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn e(&self, i: usize, j: usize) -> &RatMatrix {
        &self.e[i][j]
    }

    pub fn weights(&self) -> &[Vec<Rational>] {
        &self.weights
    }

    /// Weight of basis vector `idx` minus the weight of basis vector 0.
    pub fn offset(&self, idx: usize) -> &[i64] {
        &self.offsets[idx]
    }

    pub fn base_weight(&self) -> &[Rational] {
        &self.weights[0]
    }

    /// Basis indices whose weight offset equals `offset`.
    pub fn basis_at_offset(&self, offset: &[i64]) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.offsets[i] == offset)
            .collect()
    }

    /// `E_{ij} e_b` as a sparse column.
    pub fn act(&self, i: usize, j: usize, b: usize) -> Vec<(usize, Rational)> {
        self.e[i][j]
            .entries()
            .filter(|(_, c, _)| *c == b)
            .map(|(r, _, v)| (r, v.clone()))
            .collect()
    }

    /// Number of nonzero entries in `[E_ij, E_kl] - (d_jk E_il - d_li E_kj)`, summed.
    pub fn relation_residue(&self) -> usize {
        let n = self.n;
        let mut total = 0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut r = self.e[i][j].commutator(&self.e[k][l]);
                        if j == k {
                            r = r.sub(&self.e[i][l]);
                        }
                        if l == i {
                            r = r.sub(&self.e[k][j].scale(&-Rational::one()));
                        }
                        total += r.nnz();
                    }
                }
            }
        }
        total
    }

    /// Number of basis vectors that are not eigenvectors of all `E_ii` with
    /// their recorded weight.
    pub fn weight_residue(&self) -> usize {
        let mut bad = 0;
        for b in 0..self.dim() {
            for i in 0..self.n {
                let col = self.act(i, i, b);
                let ok = match col.as_slice() {
                    [] => self.weights[b][i].is_zero(),
                    [(r, v)] => *r == b && *v == self.weights[b][i],
                    _ => false,
                };
                bad += usize::from(!ok);
            }
        }
        bad
    }

    /// Sorted multiset of weights.
    pub fn weight_multiset(&self) -> Vec<Vec<Rational>> {
        let mut w = self.weights.clone();
        w.sort();
        w
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut triples = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                for (r, c, v) in self.e[i][j].entries() {
                    triples.push(serde_json::json!({
                        "i": i + 1, "j": j + 1, "row": r, "col": c, "value": v,
                    }));
                }
            }
        }
        serde_json::json!({
            "n": self.n,
            "dim": self.dim(),
            "weights": self.weights,
            "E": triples,
        })
    }
}

pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// `k`-th exterior power of the natural module; basis = sorted `k`-subsets.
pub fn exterior_power(n: usize, k: usize) -> Result<GlnModule, GlnError> {
    if n == 0 {
        return Err(GlnError::ZeroRank);
    }
    if k > n {
        return Err(GlnError::DegreeOutOfRange { n, k });
    }
    let basis = subsets(n, k);
    let index: BTreeMap<&[usize], usize> = basis
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let dim = basis.len();
    let mut e = vec![vec![RatMatrix::zeros(dim, dim); n]; n];
    for (col, s) in basis.iter().enumerate() {
        for (i, row) in e.iter_mut().enumerate() {
            for (j, m) in row.iter_mut().enumerate() {
                let Some(pos) = s.iter().position(|&x| x == j) else {
                    continue;
                };
                if i == j {
                    m.set(col, col, Rational::one());
                    continue;
                }
                if s.contains(&i) {
                    continue;
                }
                // replace e_j by e_i, then sort back
                let mut t = s.clone();
                t[pos] = i;
                let inversions = t
                    .iter()
                    .enumerate()
                    .filter(|&(q, &x)| q != pos && ((q < pos) == (x > i)))
                    .count();
                t.sort_unstable();
                let sign = if inversions % 2 == 0 {
                    Rational::one()
                } else {
                    -Rational::one()
                };
                m.set(index[t.as_slice()], col, sign);
            }
        }
    }
    let weights = basis
        .iter()
        .map(|s| {
            (0..n)
                .map(|i| Rational::from(i64::from(s.contains(&i))))
                .collect()
        })
        .collect();
    Ok(GlnModule::from_parts(n, e, weights))
}

/// Weyl dimension formula for the `sl_n` module with Dynkin labels `psi`.
pub fn weyl_dimension(n: usize, psi: &[u32]) -> Rational {
    // partition lambda_i = psi_i + ... + psi_{n-1}
    let lambda: Vec<i64> = (0..n)
        .map(|i| psi.iter().skip(i).map(|&x| i64::from(x)).sum())
        .collect();
    let mut d = Rational::one();
    for i in 0..n {
        for j in i + 1..n {
            let num = lambda[i] - lambda[j] + (j - i) as i64;
            d *= Rational::new(num, (j - i) as i64);
        }
    }
    d
}

/// Simple module `V(psi, b)`, built as the cyclic span of the highest weight
/// vector inside a tensor product of fundamental modules.
pub fn highest_weight_module(spec: &HighestWeightSpec) -> Result<GlnModule, GlnError> {
    let n = spec.n;
    if n == 0 {
        return Err(GlnError::ZeroRank);
    }
    if spec.psi.len() != n - 1 {
        return Err(GlnError::BadHighestWeight {
            expected: n - 1,
            found: spec.psi.len(),
        });
    }
    if n == 1 {
        let e = vec![vec![RatMatrix::from_rows(&[vec![spec.b.clone()]])]];
        return Ok(GlnModule::from_parts(1, e, vec![vec![spec.b.clone()]]));
    }

    let mut factors = Vec::new();
    let mut c = 0i64;
    for (i, &mult) in spec.psi.iter().enumerate() {
        for _ in 0..mult {
            factors.push(exterior_power(n, i + 1)?);
            c += (i + 1) as i64;
        }
    }
    let shift = (&spec.b - &Rational::from(c)) * Rational::new(1, n as i64);

    // Tensor basis: tuples of factor indices, grouped by integer weight.
    let tuples: Vec<Vec<usize>> = factors.iter().fold(vec![Vec::new()], |acc, f| {
        acc.into_iter()
            .flat_map(|t| {
                (0..f.dim()).map(move |b| {
                    let mut t2 = t.clone();
                    t2.push(b);
                    t2
                })
            })
            .collect()
    });
    let weight_of = |t: &[usize]| -> Vec<i64> {
        let mut w = vec![0i64; n];
        for (f, &b) in factors.iter().zip(t) {
            for (x, y) in w.iter_mut().zip(&f.weights[b]) {
                *x += y.to_i64().expect("fundamental weights are integral");
            }
        }
        w
    };
    let mut by_weight: BTreeMap<Vec<i64>, Vec<Vec<usize>>> = BTreeMap::new();
    for t in tuples {
        by_weight.entry(weight_of(&t)).or_default().push(t);
    }
    let position: BTreeMap<Vec<usize>, usize> = by_weight
        .values()
        .flat_map(|ts| ts.iter().enumerate().map(|(i, t)| (t.clone(), i)))
        .collect();

    // E_ij on a weight-space vector (dense in its weight space).
    let apply = |i: usize, j: usize, w: &[i64], v: &[Rational]| -> (Vec<i64>, Vec<Rational>) {
        let mut target = w.to_vec();
        target[i] += 1;
        target[j] -= 1;
        let dim = by_weight.get(&target).map_or(0, Vec::len);
        let mut out = vec![Rational::zero(); dim];
        for (t, c) in by_weight[w].iter().zip(v) {
            if c.is_zero() {
                continue;
            }
            for (slot, f) in factors.iter().enumerate() {
                for (b2, coeff) in f.act(i, j, t[slot]) {
                    let mut t2 = t.clone();
                    t2[slot] = b2;
                    out[position[&t2]] += c * &coeff;
                }
            }
        }
        (target, out)
    };

    let top: Vec<usize> = vec![0; factors.len()];
    let top_w = weight_of(&top);
    let mut spaces: BTreeMap<Vec<i64>, Subspace> = BTreeMap::new();
    let mut v0 = vec![Rational::zero(); by_weight[&top_w].len()];
    v0[position[&top]] = Rational::one();
    spaces
        .entry(top_w.clone())
        .or_insert_with(|| Subspace::new(v0.len()))
        .insert(v0.clone());
    let mut queue = VecDeque::from([(top_w, v0)]);
    while let Some((w, v)) = queue.pop_front() {
        for i in 0..n - 1 {
            let (tw, u) = apply(i + 1, i, &w, &v);
            if u.iter().all(Zero::is_zero) {
                continue;
            }
            let space = spaces
                .entry(tw.clone())
                .or_insert_with(|| Subspace::new(u.len()));
            if space.insert(u.clone()) {
                queue.push_back((tw, u));
            }
        }
    }

    // Basis ordered by weight, highest first.
    let mut order: Vec<(&Vec<i64>, &Subspace)> = spaces.iter().collect();
    order.sort_by(|a, b| b.0.cmp(a.0));
    let mut basis: Vec<(Vec<i64>, Vec<Rational>)> = Vec::new();
    let mut start: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for (w, s) in &order {
        start.insert((*w).clone(), basis.len());
        for v in s.basis() {
            basis.push(((*w).clone(), v.clone()));
        }
    }
    let dim = basis.len();
    let mut e = vec![vec![RatMatrix::zeros(dim, dim); n]; n];
    for (col, (w, v)) in basis.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let (tw, u) = apply(i, j, w, v);
                if u.iter().all(Zero::is_zero) {
                    continue;
                }
                let space = spaces.get(&tw).ok_or(GlnError::WeightLeak)?;
                let coords = space.coordinates(&u).ok_or(GlnError::WeightLeak)?;
                let s0 = start[&tw];
                for (r, x) in coords.into_iter().enumerate() {
                    if !x.is_zero() {
                        e[i][j].set(s0 + r, col, x);
                    }
                }
            }
        }
        for i in 0..n {
            e[i][i].add_to(col, col, &shift);
        }
    }
    let weights = basis
        .iter()
        .map(|(w, _)| w.iter().map(|&x| &Rational::from(x) + &shift).collect())
        .collect();
    Ok(GlnModule::from_parts(n, e, weights))
}

/// Whether `m` is an exterior power `V(delta_l, l)` (including the trivial module).
pub fn classify_case(m: &GlnModule) -> Classification {
    let ws = m.weight_multiset();
    for l in 0..=m.n {
        if let Ok(x) = exterior_power(m.n, l) {
            if x.dim() == m.dim() && x.weight_multiset() == ws {
                return Classification::TrivialOrExterior(l);
            }
        }
    }
    Classification::Generic
}
