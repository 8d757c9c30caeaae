//! Candidate weight vectors derived from the columns of a reciprocal matrix.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{PositiveVector, ReciprocalMatrix, ToleranceConfig};

/// Nonnegative coefficients summing to one.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    /// Validates nonnegativity and renormalizes to unit sum.
    pub fn new(alpha: Vec<f64>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::InvalidWeights("empty coefficient vector".into()));
        }
        if let Some(v) = alpha.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::InvalidWeights(format!(
                "coefficient {v} is negative or not finite"
            )));
        }
        let sum: f64 = alpha.iter().sum();
        if sum <= 0.0 {
            return Err(Error::InvalidWeights("all coefficients are zero".into()));
        }
        Ok(WeightVector(alpha.into_iter().map(|v| v / sum).collect()))
    }

    pub fn uniform(n: usize) -> Self {
        WeightVector(vec![1.0 / n as f64; n])
    }

    /// The `j`-th coordinate vector.
    pub fn unit(n: usize, j: usize) -> Self {
        let mut alpha = vec![0.0; n];
        alpha[j] = 1.0;
        WeightVector(alpha)
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

    pub fn nonzero_count(&self) -> usize {
        self.0.iter().filter(|v| **v > 0.0).count()
    }
}

fn check_len(a: &ReciprocalMatrix, len: usize) -> Result<()> {
    if a.n() != len {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            found: len,
        });
    }
    Ok(())
}

/// `A alpha`, a point of the cone generated by the columns.
pub fn convex_combination(a: &ReciprocalMatrix, alpha: &WeightVector) -> Result<PositiveVector> {
    check_len(a, alpha.len())?;
    PositiveVector::new(a.mul_vec(alpha.as_slice())?)
}

/// Entrywise `prod_j a_ij^alpha_j`, evaluated as `exp(sum_j alpha_j ln a_ij)`.
pub fn weighted_geometric_mean(a: &ReciprocalMatrix, alpha: &WeightVector) -> Result<PositiveVector> {
    check_len(a, alpha.len())?;
    let alpha = alpha.as_slice();
    let out = (0..a.n())
        .map(|i| {
            a.row(i)
                .iter()
                .zip(alpha)
                .filter(|(_, &c)| c > 0.0)
                .map(|(x, c)| c * x.ln())
                .sum::<f64>()
                .exp()
        })
        .collect();
    PositiveVector::new(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerronResult {
    /// Unit entry sum.
    pub vector: PositiveVector,
    pub rho: f64,
    pub iterations: usize,
    /// Relative sup-norm change of the last step.
    pub residual: f64,
}

/// Power iteration on a dense row-major positive matrix, started from the
/// uniform vector and renormalized to unit sum every step.
fn power_iteration(data: &[f64], n: usize, cfg: &ToleranceConfig) -> Result<PerronResult> {
    let mut v = vec![1.0 / n as f64; n];
    let mut next = vec![0.0; n];
    for iter in 1..=cfg.max_iters {
        for (i, out) in next.iter_mut().enumerate() {
            *out = data[i * n..(i + 1) * n]
                .iter()
                .zip(&v)
                .map(|(a, b)| a * b)
                .sum();
        }
        let sum: f64 = next.iter().sum();
        next.iter_mut().for_each(|x| *x /= sum);
        let change = next
            .iter()
            .zip(&v)
            .map(|(x, y)| (x - y).abs() / x)
            .fold(0.0, f64::max);
        std::mem::swap(&mut v, &mut next);
        if change < cfg.power_tol {
            // Rayleigh quotient v^T A v / v^T v
            let av: Vec<f64> = (0..n)
                .map(|i| data[i * n..(i + 1) * n].iter().zip(&v).map(|(a, b)| a * b).sum())
                .collect();
            let num: f64 = v.iter().zip(&av).map(|(a, b)| a * b).sum();
            let den: f64 = v.iter().map(|a| a * a).sum();
            return Ok(PerronResult {
                vector: PositiveVector::new(v)?,
                rho: num / den,
                iterations: iter,
                residual: change,
            });
        }
    }
    Err(Error::NoConvergence {
        max_iters: cfg.max_iters,
    })
}

/// Right Perron eigenvector of `A`, unit sum.
pub fn perron_vector(a: &ReciprocalMatrix, cfg: &ToleranceConfig) -> Result<PerronResult> {
    power_iteration(a.as_slice(), a.n(), cfg)
}

/// `A A^T`, row-major.
pub fn gram(a: &ReciprocalMatrix) -> Vec<f64> {
    let n = a.n();
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let v: f64 = a.row(i).iter().zip(a.row(j)).map(|(x, y)| x * y).sum();
            out[i * n + j] = v;
            out[j * n + i] = v;
        }
    }
    out
}

/// Perron vector of `A A^T` (right singular vector of `A`), unit sum.
pub fn singular_vector(a: &ReciprocalMatrix, cfg: &ToleranceConfig) -> Result<PositiveVector> {
    Ok(power_iteration(&gram(a), a.n(), cfg)?.vector)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeanKind {
    Arithmetic,
    Geometric,
}

/// Uniform-coefficient mean of all columns.
pub fn mean_columns(a: &ReciprocalMatrix, kind: MeanKind) -> PositiveVector {
    let alpha = WeightVector::uniform(a.n());
    match kind {
        MeanKind::Arithmetic => convex_combination(a, &alpha),
        MeanKind::Geometric => weighted_geometric_mean(a, &alpha),
    }
    .expect("dimensions agree by construction")
}
