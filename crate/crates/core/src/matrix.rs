//! Reciprocal matrices, positive vectors and monomial similarity.
//!
//! A reciprocal matrix is stored densely in row-major order. Only the strict
//! upper triangle is trusted on construction; the diagonal is forced to one and
//! the lower triangle is rewritten as the entrywise reciprocal of the upper one,
//! so every `ReciprocalMatrix` satisfies `a_ji == 1.0 / a_ij` bit for bit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical tolerances shared by every operation in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Relative tolerance for equality of ratios.
    pub rtol: f64,
    /// Relative slack used when deciding digraph edges and strict inequalities.
    pub edge_rtol: f64,
    /// Power iteration stops once the relative sup-norm change drops below this.
    pub power_tol: f64,
    pub max_iters: usize,
    /// Initial perturbation size of the witness search.
    pub eps0: f64,
    /// Multiplicative shrink factor applied between witness attempts.
    pub eps_shrink: f64,
    pub eps_max_steps: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            rtol: 1e-9,
            edge_rtol: 1e-9,
            power_tol: 1e-12,
            max_iters: 10_000,
            eps0: 0.5,
            eps_shrink: 0.5,
            eps_max_steps: 60,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let open_unit = [
            ("rtol", self.rtol),
            ("edge_rtol", self.edge_rtol),
            ("power_tol", self.power_tol),
            ("eps0", self.eps0),
            ("eps_shrink", self.eps_shrink),
        ];
        for (name, value) in open_unit {
            if !(value > 0.0 && value < 1.0) {
                return Err(Error::InvalidConfig(format!(
                    "{name} = {value} must lie in (0, 1)"
                )));
            }
        }
        if self.max_iters < 1 {
            return Err(Error::InvalidConfig("max_iters must be at least 1".into()));
        }
        if self.eps_max_steps < 1 {
            return Err(Error::InvalidConfig(
                "eps_max_steps must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// `x <= y`, allowing `x` to exceed `y` by a relative margin `tol`.
#[inline]
pub(crate) fn le_tol(x: f64, y: f64, tol: f64) -> bool {
    x * (1.0 - tol) <= y
}

/// `x < y` by at least a relative margin `tol`.
#[inline]
pub(crate) fn lt_strict(x: f64, y: f64, tol: f64) -> bool {
    x < y * (1.0 - tol)
}

#[inline]
pub(crate) fn approx_eq(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * x.abs().max(y.abs())
}

/// A vector with strictly positive, finite entries.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct PositiveVector(Vec<f64>);

impl PositiveVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::DimensionTooSmall { n: 0, min: 1 });
        }
        if let Some((i, &v)) = entries
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v > 0.0))
        {
            return Err(Error::NonPositiveVector {
                index: i + 1,
                value: v,
            });
        }
        Ok(PositiveVector(entries))
    }

    /// The all-ones vector `e_n`.
    pub fn ones(n: usize) -> Self {
        assert!(n >= 1, "dimension must be positive");
        PositiveVector(vec![1.0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        PositiveVector::new(self.0.iter().map(|v| v * c).collect())
    }

    /// Rescaled to unit entry sum.
    pub fn normalized(&self) -> Self {
        let s: f64 = self.0.iter().sum();
        PositiveVector(self.0.iter().map(|v| v / s).collect())
    }

    /// `w(K)`: the vector with the entries at `indices` removed.
    pub fn without(&self, indices: &[usize]) -> Result<Self> {
        let n = self.len();
        for &i in indices {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i + 1, n });
            }
        }
        let kept: Vec<f64> = (0..n)
            .filter(|i| !indices.contains(i))
            .map(|i| self.0[i])
            .collect();
        if kept.is_empty() {
            return Err(Error::EmptyResult);
        }
        Ok(PositiveVector(kept))
    }
}

impl std::ops::Index<usize> for PositiveVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Whether a principal submatrix keeps or drops the given index set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubmatrixMode {
    /// `A[K]`
    Retain,
    /// `A(K)`
    Delete,
}

/// A positive square matrix with unit diagonal and `a_ji = 1 / a_ij`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReciprocalMatrix {
    n: usize,
    data: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    n: usize,
    rows: Vec<Vec<f64>>,
}

impl Serialize for ReciprocalMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            n: self.n,
            rows: self.to_rows(),
        }
        .serialize(s)
    }
}

/// Validate a raw square matrix and turn it into a reciprocal matrix.
///
/// The lower triangle is checked against the upper one with relative
/// tolerance `cfg.rtol` and then overwritten with exact reciprocals.
pub fn validate_reciprocal(raw: &[Vec<f64>], cfg: &ToleranceConfig) -> Result<ReciprocalMatrix> {
    let n = raw.len();
    if n == 0 {
        return Err(Error::DimensionTooSmall { n: 0, min: 1 });
    }
    for (i, row) in raw.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NonSquare {
                row: i + 1,
                len: row.len(),
                expected: n,
            });
        }
        for (j, &v) in row.iter().enumerate() {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::NonPositiveEntry {
                    row: i + 1,
                    col: j + 1,
                    value: v,
                });
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let residual = (raw[i][j] * raw[j][i] - 1.0).abs();
            if residual > cfg.rtol {
                return Err(Error::NotReciprocal {
                    row: j + 1,
                    col: i + 1,
                    residual,
                });
            }
        }
    }
    ReciprocalMatrix::from_upper_fn(n, |i, j| raw[i][j])
}

impl ReciprocalMatrix {
    /// Build from the strict upper triangle given by `upper(i, j)` for `i < j`.
    pub fn from_upper_fn(n: usize, upper: impl Fn(usize, usize) -> f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionTooSmall { n: 0, min: 1 });
        }
        let mut data = vec![1.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = upper(i, j);
                if !(v.is_finite() && v > 0.0) {
                    return Err(Error::NonPositiveEntry {
                        row: i + 1,
                        col: j + 1,
                        value: v,
                    });
                }
                data[i * n + j] = v;
                data[j * n + i] = 1.0 / v;
            }
        }
        Ok(ReciprocalMatrix { n, data })
    }

    /// `J_n`, the all-ones matrix.
    pub fn ones(n: usize) -> Self {
        assert!(n >= 1, "dimension must be positive");
        ReciprocalMatrix {
            n,
            data: vec![1.0; n * n],
        }
    }

    /// The consistent matrix `[w_i / w_j]`.
    pub fn consistent_from_weights(w: &PositiveVector) -> Self {
        let w = w.as_slice();
        ReciprocalMatrix::from_upper_fn(w.len(), |i, j| w[i] / w[j])
            .expect("ratios of positive numbers are positive")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    /// Column `j` as a positive vector.
    pub fn column_vector(&self, j: usize) -> PositiveVector {
        PositiveVector(self.column(j))
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// `A x` for an arbitrary real vector.
    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok((0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// True iff `a_ij a_jk / a_ik` is within `rtol` of one for all triples.
    pub fn is_consistent(&self, cfg: &ToleranceConfig) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let aij = self.get(i, j);
                for k in 0..n {
                    if (aij * self.get(j, k) / self.get(i, k) - 1.0).abs() > cfg.rtol {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `A[K]` or `A(K)` for a 0-based index set `K`.
    pub fn principal_submatrix(&self, indices: &[usize], mode: SubmatrixMode) -> Result<Self> {
        let n = self.n;
        let mut marked = vec![false; n];
        for &i in indices {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i + 1, n });
            }
            marked[i] = true;
        }
        let keep: Vec<usize> = (0..n)
            .filter(|&i| match mode {
                SubmatrixMode::Retain => marked[i],
                SubmatrixMode::Delete => !marked[i],
            })
            .collect();
        if keep.is_empty() {
            return Err(Error::EmptyResult);
        }
        Ok(self.select(&keep))
    }

    /// The matrix `[a_{keep[i], keep[j]}]`; `keep` must hold distinct valid indices.
    pub(crate) fn select(&self, keep: &[usize]) -> Self {
        let m = keep.len();
        let mut data = Vec::with_capacity(m * m);
        for &i in keep {
            for &j in keep {
                data.push(self.get(i, j));
            }
        }
        ReciprocalMatrix { n: m, data }
    }

    /// `S A S^{-1}` for the monomial matrix `S` described by `t`.
    pub fn monomial_similarity(&self, t: &MonomialTransform) -> Result<Self> {
        if t.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: t.len(),
            });
        }
        let p = &t.perm;
        let s = t.scale.as_slice();
        ReciprocalMatrix::from_upper_fn(self.n, |i, j| {
            s[p[i]] * self.get(p[i], p[j]) / s[p[j]]
        })
    }

    /// Largest relative entrywise difference to `other`.
    pub fn max_rel_diff(&self, other: &ReciprocalMatrix) -> f64 {
        assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs() / a.abs().max(b.abs()))
            .fold(0.0, f64::max)
    }
}

/// A monomial matrix `S = P diag(scale)`.
///
/// `(S x)_i = scale[perm[i]] * x[perm[i]]`, i.e. `perm[i]` is the original
/// index that lands in position `i`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonomialTransform {
    perm: Vec<usize>,
    scale: PositiveVector,
}

impl MonomialTransform {
    pub fn new(perm: Vec<usize>, scale: PositiveVector) -> Result<Self> {
        let n = perm.len();
        if scale.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: scale.len(),
            });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidPermutation(format!(
                    "{perm:?} is not a bijection on 0..{n}"
                )));
            }
            seen[p] = true;
        }
        Ok(MonomialTransform { perm, scale })
    }

    pub fn identity(n: usize) -> Self {
        MonomialTransform {
            perm: (0..n).collect(),
            scale: PositiveVector::ones(n),
        }
    }

    pub fn permutation(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        MonomialTransform::new(perm, PositiveVector::ones(n))
    }

    /// `S = diag(d)`.
    pub fn diagonal(d: PositiveVector) -> Self {
        MonomialTransform {
            perm: (0..d.len()).collect(),
            scale: d,
        }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn scale(&self) -> &PositiveVector {
        &self.scale
    }

    pub fn inverse(&self) -> Self {
        let n = self.len();
        let mut inv = vec![0; n];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        let scale = (0..n).map(|m| 1.0 / self.scale[self.perm[m]]).collect();
        MonomialTransform {
            perm: inv,
            scale: PositiveVector(scale),
        }
    }

    /// The transform that applies `self` first and then `next`, i.e. `S_next S_self`.
    pub fn then(&self, next: &MonomialTransform) -> Result<Self> {
        let n = self.len();
        if next.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: next.len(),
            });
        }
        let mut perm = vec![0; n];
        let mut scale = vec![0.0; n];
        for i in 0..n {
            let k = self.perm[next.perm[i]];
            perm[i] = k;
            scale[k] = self.scale[k] * next.scale[next.perm[i]];
        }
        Ok(MonomialTransform {
            perm,
            scale: PositiveVector(scale),
        })
    }

    /// `S w`.
    pub fn apply_to_vector(&self, w: &PositiveVector) -> Result<PositiveVector> {
        if w.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: w.len(),
            });
        }
        Ok(PositiveVector(
            self.perm.iter().map(|&p| self.scale[p] * w[p]).collect(),
        ))
    }

    /// `S x` for an arbitrary real vector (used for cone coefficients).
    pub fn apply_to_slice(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.len());
        self.perm.iter().map(|&p| self.scale[p] * x[p]).collect()
    }
}
