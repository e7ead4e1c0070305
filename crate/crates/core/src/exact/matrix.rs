use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{LinAlgError, Rational};

/// Sparse matrix over the rationals. Only nonzero entries are stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = RatMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Rational) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut d = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            d[i][j] = v.clone();
        }
        d
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![Rational::zero(); self.rows];
        for (&(i, j), a) in &self.entries {
            if !v[j].is_zero() {
                out[i] += a * &v[j];
            }
        }
        out
    }

    pub fn matmul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut by_row: BTreeMap<usize, Vec<(usize, &Rational)>> = BTreeMap::new();
        for (&(k, j), b) in &other.entries {
            by_row.entry(k).or_default().push((j, b));
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for (&(i, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    out.add_to(i, j, &(a * b));
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (&(i, j), v) in &other.entries {
            out.add_to(i, j, &-v);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        let mut out = RatMatrix::zeros(self.rows, self.cols);
        for (&(i, j), v) in &self.entries {
            out.set(i, j, v * c);
        }
        out
    }

    /// `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &RatMatrix) -> RatMatrix {
        self.matmul(other).sub(&other.matmul(self))
    }

    pub fn rank(&self) -> usize {
        let (_, pivots) = rref(self.to_dense());
        pivots.len()
    }

    /// Basis of the right null space `{x : self * x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        kernel_basis(self)
    }
}

/// Reduced row echelon form; returns the reduced rows and pivot columns.
fn rref(mut a: Vec<Vec<Rational>>) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Basis of the right null space of `m`; `rank(m) + basis.len() == cols(m)`.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let cols = m.cols();
    let (reduced, pivots) = rref(m.to_dense());
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&reduced[row][f];
            }
            v
        })
        .collect()
}

/// Coefficients `c` with `sum c_i v_i = target`, `Ok(None)` when the target
/// is not in the span.
pub fn solve_in_span(
    vectors: &[Vec<Rational>],
    target: &[Rational],
) -> Result<Option<Vec<Rational>>, LinAlgError> {
    let len = target.len();
    if let Some(bad) = vectors.iter().find(|v| v.len() != len) {
        return Err(LinAlgError::DimensionMismatch {
            expected: len,
            found: bad.len(),
        });
    }
    let k = vectors.len();
    // augmented [v_1 ... v_k | target]
    let aug: Vec<Vec<Rational>> = (0..len)
        .map(|i| {
            let mut row: Vec<Rational> = vectors.iter().map(|v| v[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let (reduced, pivots) = rref(aug);
    if pivots.contains(&k) {
        return Ok(None);
    }
    let mut coeffs = vec![Rational::zero(); k];
    for (row, &pc) in pivots.iter().enumerate() {
        coeffs[pc] = reduced[row][k].clone();
    }
    Ok(Some(coeffs))
}

/// Subspace of `Q^dim` held as a fully reduced echelon basis.
///
/// Each basis vector has a 1 at its pivot and 0 at every other pivot, so the
/// coordinates of a member are simply its entries at the pivot positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    dim: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(ambient_dim: usize) -> Self {
        Subspace {
            dim: ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn spanned_by<'a>(
        ambient_dim: usize,
        vectors: impl IntoIterator<Item = &'a Vec<Rational>>,
    ) -> Self {
        let mut s = Subspace::new(ambient_dim);
        for v in vectors {
            s.insert(v.clone());
        }
        s
    }

    pub fn full(ambient_dim: usize) -> Self {
        let mut s = Subspace::new(ambient_dim);
        for i in 0..ambient_dim {
            let mut v = vec![Rational::zero(); ambient_dim];
            v[i] = Rational::one();
            s.insert(v);
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of `v` after eliminating every pivot; zero iff `v` is a member.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.dim, "ambient dimension mismatch");
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Coordinates with respect to `basis()`, or `None` when not a member.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<Rational>) -> bool {
        let mut r = self.reduce(&v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for b in self.basis.iter_mut() {
            if b[p].is_zero() {
                continue;
            }
            let f = b[p].clone();
            for (x, y) in b.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, r);
        true
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.dim
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::integer(x)).collect()
    }

    #[test]
    fn kernel_examples() {
        assert!(RatMatrix::identity(3).kernel_basis().is_empty());
        assert_eq!(RatMatrix::zeros(2, 3).kernel_basis().len(), 3);
        let m = RatMatrix::from_rows(&[q(&[1, 2]), q(&[2, 4])]);
        let k = m.kernel_basis();
        assert_eq!(k, vec![q(&[-2, 1])]);
        assert!(m.mul_vec(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn span_examples() {
        assert_eq!(
            solve_in_span(&[q(&[1, 0])], &q(&[2, 0])).unwrap(),
            Some(q(&[2]))
        );
        assert_eq!(solve_in_span(&[q(&[1, 0])], &q(&[0, 1])).unwrap(), None);
        assert_eq!(
            solve_in_span(&[q(&[1, 1]), q(&[1, -1])], &q(&[3, 1])).unwrap(),
            Some(q(&[2, 1]))
        );
        assert!(matches!(
            solve_in_span(&[q(&[1, 0, 0])], &q(&[1, 0])),
            Err(LinAlgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn subspace_coordinates() {
        let mut s = Subspace::new(3);
        assert!(s.insert(q(&[2, 2, 0])));
        assert!(s.insert(q(&[0, 1, 1])));
        assert!(!s.insert(q(&[1, 2, 1])));
        assert_eq!(s.dim(), 2);
        let c = s.coordinates(&q(&[1, 3, 2])).unwrap();
        let rebuilt: Vec<Rational> = (0..3)
            .map(|i| s.basis().iter().zip(&c).map(|(b, x)| &b[i] * x).sum())
            .collect();
        assert_eq!(rebuilt, q(&[1, 3, 2]));
        assert!(s.coordinates(&q(&[0, 0, 1])).is_none());
    }
}
