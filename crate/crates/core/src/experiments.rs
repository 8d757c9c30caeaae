//! Seeded Monte Carlo experiments on the three-block family.
//!
//! Every trial draws its coefficients from its own ChaCha8 stream: the
//! generator is seeded with `seed` and the stream number is
//! `(cell << 32) | trial`, where `cell` indexes the parameter cell. Results
//! are therefore identical whether trials run serially or in parallel.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::efficiency::efficient;
use crate::error::{Error, Result};
use crate::generators::{
    convex_combination, mean_columns, perron_vector, singular_vector, weighted_geometric_mean,
    MeanKind, WeightVector,
};
use crate::matrix::{PositiveVector, ReciprocalMatrix, ToleranceConfig};
use crate::perturbed::three_block_matrix;

/// Generator for trial `trial` of parameter cell `cell`.
pub fn trial_rng(seed: u64, cell: u32, trial: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((u64::from(cell) << 32) | u64::from(trial));
    rng
}

/// `n` independent uniform(0, 1) draws normalized to unit sum.
pub fn sample_simplex<R: Rng + ?Sized>(n: usize, rng: &mut R) -> WeightVector {
    loop {
        let draws: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        // all-zero draws have probability 2^-53n; redraw rather than fail
        if let Ok(w) = WeightVector::new(draws) {
            return w;
        }
    }
}

/// Frobenius norm of `[w_i / w_j - a_ij]`.
pub fn divergence(a: &ReciprocalMatrix, w: &PositiveVector) -> Result<f64> {
    let n = a.n();
    if w.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: w.len(),
        });
    }
    let w = w.as_slice();
    let mut sum = 0.0;
    for i in 0..n {
        let row = a.row(i);
        for j in 0..n {
            let d = w[i] / w[j] - row[j];
            sum += d * d;
        }
    }
    Ok(sum.sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub alpha: WeightVector,
    pub norm_convex: f64,
    pub norm_geometric: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceNorms {
    pub geometric_mean: f64,
    pub perron: f64,
    pub singular: f64,
    pub column_sum: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub matrix: ReciprocalMatrix,
    pub seed: u64,
    pub trials: Vec<TrialRecord>,
    pub reference: ReferenceNorms,
}

pub fn reference_norms(a: &ReciprocalMatrix, cfg: &ToleranceConfig) -> Result<ReferenceNorms> {
    Ok(ReferenceNorms {
        geometric_mean: divergence(a, &mean_columns(a, MeanKind::Geometric))?,
        perron: divergence(a, &perron_vector(a, cfg)?.vector)?,
        singular: divergence(a, &singular_vector(a, cfg)?)?,
        column_sum: divergence(a, &mean_columns(a, MeanKind::Arithmetic))?,
    })
}

/// Divergence of `A alpha` and of the `alpha`-weighted geometric mean for
/// `trials` random `alpha`. The coefficient streams depend only on the seed
/// and the trial index, so runs on different matrices of the same order with
/// the same seed share their `alpha` vectors.
pub fn compare_run(a: &ReciprocalMatrix, trials: usize, seed: u64, cfg: &ToleranceConfig) -> Result<ComparisonReport> {
    if trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    let n = a.n();
    let records = (0..trials)
        .into_par_iter()
        .map(|t| {
            let alpha = sample_simplex(n, &mut trial_rng(seed, 0, t as u32));
            let convex = convex_combination(a, &alpha)?;
            let geometric = weighted_geometric_mean(a, &alpha)?;
            if !efficient(a, &geometric, cfg)? {
                return Err(Error::InvariantViolated(format!(
                    "weighted geometric mean of trial {t} is inefficient"
                )));
            }
            Ok(TrialRecord {
                trial: t,
                norm_convex: divergence(a, &convex)?,
                norm_geometric: divergence(a, &geometric)?,
                alpha,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ComparisonReport {
        matrix: a.clone(),
        seed,
        trials: records,
        reference: reference_norms(a, cfg)?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountEntry {
    pub a13: f64,
    pub trials: usize,
    pub inefficient_count: usize,
    pub perron_efficient: bool,
    pub singular_efficient: bool,
    pub arith_mean_efficient: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountReport {
    pub n: usize,
    pub a12: f64,
    pub a23: f64,
    pub seed: u64,
    pub entries: Vec<CountEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReferenceVerdicts {
    pub perron_efficient: bool,
    pub singular_efficient: bool,
    pub arith_mean_efficient: bool,
}

pub fn reference_verdicts(a: &ReciprocalMatrix, cfg: &ToleranceConfig) -> Result<ReferenceVerdicts> {
    Ok(ReferenceVerdicts {
        perron_efficient: efficient(a, &perron_vector(a, cfg)?.vector, cfg)?,
        singular_efficient: efficient(a, &singular_vector(a, cfg)?, cfg)?,
        arith_mean_efficient: efficient(a, &mean_columns(a, MeanKind::Arithmetic), cfg)?,
    })
}

/// Number of inefficient `A alpha` among `trials` random `alpha`, for the
/// three-block matrix of order `n` and each `a13` in the list.
pub fn inefficiency_count(
    n: usize,
    a12: f64,
    a23: f64,
    a13_list: &[f64],
    trials: usize,
    seed: u64,
    cfg: &ToleranceConfig,
) -> Result<CountReport> {
    let entries = a13_list
        .iter()
        .enumerate()
        .map(|(cell, &a13)| {
            let a = three_block_matrix(n, a12, a13, a23)?;
            let inefficient_count = (0..trials)
                .into_par_iter()
                .map(|t| {
                    let alpha = sample_simplex(n, &mut trial_rng(seed, cell as u32, t as u32));
                    let w = convex_combination(&a, &alpha)?;
                    Ok(usize::from(!efficient(&a, &w, cfg)?))
                })
                .sum::<Result<usize>>()?;
            let refs = reference_verdicts(&a, cfg)?;
            Ok(CountEntry {
                a13,
                trials,
                inefficient_count,
                perron_efficient: refs.perron_efficient,
                singular_efficient: refs.singular_efficient,
                arith_mean_efficient: refs.arith_mean_efficient,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CountReport {
        n,
        a12,
        a23,
        seed,
        entries,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridCell {
    pub n: usize,
    pub a13: f64,
    #[serde(flatten)]
    pub verdicts: ReferenceVerdicts,
}

/// Perron, singular and arithmetic-mean verdicts over an `(n, a13)` grid.
pub fn perron_efficiency_grid(
    n_list: &[usize],
    a12: f64,
    a23: f64,
    a13_list: &[f64],
    cfg: &ToleranceConfig,
) -> Result<Vec<GridCell>> {
    let cells: Vec<(usize, f64)> = n_list
        .iter()
        .flat_map(|&n| a13_list.iter().map(move |&a13| (n, a13)))
        .collect();
    cells
        .into_par_iter()
        .map(|(n, a13)| {
            let a = three_block_matrix(n, a12, a13, a23)?;
            Ok(GridCell {
                n,
                a13,
                verdicts: reference_verdicts(&a, cfg)?,
            })
        })
        .collect()
}
