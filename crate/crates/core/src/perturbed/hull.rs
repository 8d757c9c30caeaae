use serde::Serialize;

use super::classify::{cond11, detect_block_structure, BlockClassification, BlockKind, Cond11};
use super::{three_block_matrix, triangular_matrix};
use crate::efficiency::{efficient, efficient_3x3};
use crate::error::{Error, Result};
use crate::generators::WeightVector;
use crate::matrix::{approx_eq, le_tol, lt_strict, PositiveVector, ReciprocalMatrix, ToleranceConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Containment {
    Yes,
    No,
    Unknown,
}

/// A point `w = A u` of the cone generated by the columns, with `u >= 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HullWitness {
    pub coefficients: Vec<f64>,
    pub vector: PositiveVector,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HullVerdict {
    pub contained: Containment,
    pub reason: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<BlockClassification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<HullWitness>,
}

/// The two parameter orderings of the four-block triangular form (`a14 >= 1`)
/// under which the cone leaves the efficient set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TriangularCondition {
    /// `1 < a24 < a14 < a13`
    Increasing,
    /// `a24 < 1 < a13 < a14`
    Straddling,
}

/// Which of the two obstructing orderings holds, all inequalities strict with
/// margin `edge_rtol`.
pub fn triangular_conditions(a13: f64, a14: f64, a24: f64, cfg: &ToleranceConfig) -> Option<TriangularCondition> {
    let lt = |x: f64, y: f64| lt_strict(x, y, cfg.edge_rtol);
    if lt(1.0, a24) && lt(a24, a14) && lt(a14, a13) {
        Some(TriangularCondition::Increasing)
    } else if lt(a24, 1.0) && lt(1.0, a13) && lt(a13, a14) {
        Some(TriangularCondition::Straddling)
    } else {
        None
    }
}

/// Cone containment for a three-block matrix in canonical parameters:
/// `a13 <= a12 a23`, boundary included.
pub fn hull_in_efficient_3block(a12: f64, a13: f64, a23: f64, cfg: &ToleranceConfig) -> Result<bool> {
    if cond11(a12, a13, a23, cfg).is_none() {
        return Err(Error::ConditionViolated(a12, a13, a23));
    }
    Ok(le_tol(a13, a12 * a23, cfg.rtol))
}

/// Cone containment for the four-block triangular form with `a14 >= 1`.
pub fn hull_in_efficient_triangular(a13: f64, a14: f64, a24: f64, cfg: &ToleranceConfig) -> Result<bool> {
    if a14 < 1.0 && !approx_eq(a14, 1.0, cfg.rtol) {
        return Err(Error::PreconditionViolated(format!(
            "a14 = {a14} must be at least 1"
        )));
    }
    Ok(triangular_conditions(a13, a14, a24, cfg).is_none())
}

/// Shrink `eps` geometrically and return the first candidate that `verify`
/// accepts.
fn shrink_search<T>(
    cfg: &ToleranceConfig,
    mut candidates: impl FnMut(f64) -> Vec<Vec<f64>>,
    mut verify: impl FnMut(&[f64]) -> Result<Option<T>>,
) -> Result<T> {
    let mut eps = cfg.eps0;
    for _ in 0..cfg.eps_max_steps {
        for u in candidates(eps) {
            if u.iter().all(|v| *v >= 0.0) {
                if let Some(found) = verify(&u)? {
                    return Ok(found);
                }
            }
        }
        eps *= cfg.eps_shrink;
    }
    Err(Error::SearchExhausted {
        steps: cfg.eps_max_steps,
    })
}

/// Accepts `u` when `A u` is an inefficient vector for `a`.
fn verify_in(a: &ReciprocalMatrix, u: &[f64], cfg: &ToleranceConfig) -> Result<Option<HullWitness>> {
    let w = PositiveVector::new(a.mul_vec(u)?)?;
    if efficient(a, &w, cfg)? {
        Ok(None)
    } else {
        Ok(Some(HullWitness {
            coefficients: u.to_vec(),
            vector: w,
        }))
    }
}

fn three_block_candidates(a12: f64, a13: f64, a23: f64, cfg: &ToleranceConfig) -> Result<impl Fn(f64) -> Vec<Vec<f64>>> {
    let case_i = match cond11(a12, a13, a23, cfg) {
        None => return Err(Error::ConditionViolated(a12, a13, a23)),
        Some(Cond11::IV) => false,
        Some(Cond11::I) if !le_tol(a13, a12 * a23, cfg.rtol) => true,
        Some(_) => return Err(Error::HullContained),
    };
    Ok(move |eps: f64| {
        let u = if case_i {
            let d = a13 - a12 * a23;
            vec![
                a12 * (a23 - 1.0) / d + eps,
                1.0,
                (a12 - 1.0) / d + eps * (a12 - 1.0) / (2.0 * a12 * (a23 - 1.0)),
                1.0,
            ]
        } else {
            vec![
                a13 * (a23 - 1.0) / (a23 * (a12 - 1.0)) - eps,
                (a13 - 1.0) / (1.0 - a12) - eps * a23 * (a13 - 1.0) / (2.0 * a13 * (1.0 - a23)),
                1.0,
                1.0,
            ]
        };
        vec![u]
    })
}

fn triangular_candidates(a13: f64, a14: f64, a24: f64, cfg: &ToleranceConfig) -> Result<impl Fn(f64) -> Vec<Vec<f64>>> {
    hull_in_efficient_triangular(a13, a14, a24, cfg)?;
    let cond = triangular_conditions(a13, a14, a24, cfg).ok_or(Error::HullContained)?;
    Ok(move |eps: f64| {
        // the second perturbation has to dominate the first
        [(eps * eps, eps), (eps, eps)]
            .into_iter()
            .map(|(e1, e2)| match cond {
                TriangularCondition::Increasing => {
                    let d = a13 * a14 * (a24 - 1.0);
                    vec![
                        1.0,
                        a24 * (a13 - a14) / d + e1,
                        (a14 - a24) / d + e2,
                        1.0,
                        0.0,
                    ]
                }
                TriangularCondition::Straddling => vec![
                    a13 * (1.0 - a24) / (a13 - 1.0) + e1,
                    a24 * (a14 - a13) / (a14 * (a13 - 1.0)) + e2,
                    1.0,
                    1.0,
                    0.0,
                ],
            })
            .collect()
    })
}

/// Nonnegative `u` with `A_4 u` inefficient for the canonical three-block
/// matrix `A_4`, when `a13 > a12 a23`.
pub fn witness_3block(a12: f64, a13: f64, a23: f64, cfg: &ToleranceConfig) -> Result<HullWitness> {
    let candidates = three_block_candidates(a12, a13, a23, cfg)?;
    let a = three_block_matrix(4, a12, a13, a23)?;
    shrink_search(cfg, candidates, |u| verify_in(&a, u, cfg))
}

/// Nonnegative `u` (with `u5 = 0`) such that `A_5 u` is inefficient for the
/// canonical 5x5 triangular matrix, when one of the obstructing orderings holds.
pub fn witness_triangular(a13: f64, a14: f64, a24: f64, cfg: &ToleranceConfig) -> Result<HullWitness> {
    let candidates = triangular_candidates(a13, a14, a24, cfg)?;
    let a = triangular_matrix(5, a13, a14, a24)?;
    shrink_search(cfg, candidates, |u| verify_in(&a, u, cfg))
}

/// Run a canonical witness search against the original matrix: the canonical
/// coefficients are padded with zeros (every trailing entry of the combination
/// then equals the coefficient sum) and mapped back through the inverse
/// transform before verification.
fn lifted_witness(
    a: &ReciprocalMatrix,
    class: &BlockClassification,
    candidates: impl Fn(f64) -> Vec<Vec<f64>>,
    cfg: &ToleranceConfig,
) -> Result<HullWitness> {
    let n = a.n();
    let back = class.transform.inverse();
    shrink_search(
        cfg,
        |eps| {
            candidates(eps)
                .into_iter()
                .map(|mut u| {
                    u.resize(n, 0.0);
                    back.apply_to_slice(&u)
                })
                .collect()
        },
        |u| verify_in(a, u, cfg),
    )
}

fn verdict(contained: Containment, reason: impl Into<String>, class: BlockClassification) -> HullVerdict {
    HullVerdict {
        contained,
        reason: reason.into(),
        classification: Some(class),
        witness: None,
    }
}

/// Decide whether every nonnegative combination of the columns is efficient.
///
/// Known-good families answer yes outright; three-block and four-block
/// triangular matrices are decided from their canonical parameters, with a
/// verified witness attached on a no. Anything else is unknown.
pub fn hull_subset_efficient(a: &ReciprocalMatrix, cfg: &ToleranceConfig) -> Result<HullVerdict> {
    let class = detect_block_structure(a, cfg)?;
    if a.n() <= 3 {
        return Ok(verdict(
            Containment::Yes,
            "order at most 3: the efficient set is the column cone",
            class,
        ));
    }
    match class.kind.clone() {
        BlockKind::Consistent => Ok(verdict(Containment::Yes, "consistent", class)),
        BlockKind::Simple { .. } => Ok(verdict(
            Containment::Yes,
            "simple perturbed consistent",
            class,
        )),
        BlockKind::ColumnPerturbed => Ok(verdict(
            Containment::Yes,
            "column perturbed consistent",
            class,
        )),
        BlockKind::ThreeBlock { a12, a13, a23, .. } => {
            if hull_in_efficient_3block(a12, a13, a23, cfg)? {
                return Ok(verdict(
                    Containment::Yes,
                    "three-block perturbed consistent with a13 <= a12*a23",
                    class,
                ));
            }
            let candidates = three_block_candidates(a12, a13, a23, cfg)?;
            let witness = lifted_witness(a, &class, candidates, cfg)?;
            Ok(HullVerdict {
                witness: Some(witness),
                ..verdict(
                    Containment::No,
                    "three-block perturbed consistent with a13 > a12*a23",
                    class,
                )
            })
        }
        BlockKind::FourBlockTriangular { a13, a14, a24 } => {
            if hull_in_efficient_triangular(a13, a14, a24, cfg)? {
                return Ok(verdict(
                    Containment::Yes,
                    "four-block triangular with neither obstructing ordering",
                    class,
                ));
            }
            let reason = match triangular_conditions(a13, a14, a24, cfg) {
                Some(TriangularCondition::Increasing) => "four-block triangular with 1 < a24 < a14 < a13",
                _ => "four-block triangular with a24 < 1 < a13 < a14",
            };
            let candidates = triangular_candidates(a13, a14, a24, cfg)?;
            let witness = lifted_witness(a, &class, candidates, cfg)?;
            Ok(HullVerdict {
                witness: Some(witness),
                ..verdict(Containment::No, reason, class)
            })
        }
        BlockKind::GeneralSBlock { .. } | BlockKind::Unstructured => Ok(verdict(
            Containment::Unknown,
            "outside classified families",
            class,
        )),
    }
}

/// For `A` whose last row and column are all ones and `y` over the first
/// `n - 1` coordinates: if `B y` is strictly above or strictly below the ones
/// vector (`B` the leading block), `A [y; 0]` is inefficient and is returned.
/// Vectors `y` with fewer than three nonzero entries never qualify.
pub fn rowsum_witness(a: &ReciprocalMatrix, y: &WeightVector, cfg: &ToleranceConfig) -> Result<Option<PositiveVector>> {
    let n = a.n();
    if n < 2 {
        return Err(Error::DimensionTooSmall { n, min: 2 });
    }
    if y.len() != n - 1 {
        return Err(Error::DimensionMismatch {
            expected: n - 1,
            found: y.len(),
        });
    }
    let last = n - 1;
    for k in 0..n {
        if !approx_eq(a.get(last, k), 1.0, cfg.rtol) {
            return Err(Error::FormViolated(format!(
                "entry ({}, {}) = {} should be 1",
                n,
                k + 1,
                a.get(last, k)
            )));
        }
    }
    if y.nonzero_count() < 3 {
        return Ok(None);
    }
    let mut padded = y.as_slice().to_vec();
    padded.push(0.0);
    let w = a.mul_vec(&padded)?;
    let by = &w[..last];
    let tol = cfg.edge_rtol;
    let above = by.iter().all(|&v| lt_strict(1.0, v, tol));
    let below = by.iter().all(|&v| lt_strict(v, 1.0, tol));
    if above || below {
        Ok(Some(PositiveVector::new(w)?))
    } else {
        Ok(None)
    }
}

/// `y = [x(w2 - w3), x w3 - w1, w1 - w2] / (x - 1)`, the unique solution of
/// `A y = w` for `A = [[1, 1, x], [1, 1, 1], [1/x, 1, 1]]`, `x != 1`.
pub fn cone_coefficients_3x3(x: f64, w: &[f64]) -> [f64; 3] {
    let (w1, w2, w3) = (w[0], w[1], w[2]);
    let d = x - 1.0;
    [x * (w2 - w3) / d, (x * w3 - w1) / d, (w1 - w2) / d]
}

/// Nonnegative coefficients expressing an efficient `w` for
/// `[[1, 1, x], [1, 1, 1], [1/x, 1, 1]]` as a combination of its columns.
pub fn decompose_3x3(x: f64, w: &PositiveVector, cfg: &ToleranceConfig) -> Result<[f64; 3]> {
    if w.len() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: w.len(),
        });
    }
    if x < 1.0 && !approx_eq(x, 1.0, cfg.rtol) {
        return Err(Error::PreconditionViolated(format!("x = {x} must be at least 1")));
    }
    let w = w.as_slice();
    if approx_eq(x, 1.0, cfg.rtol) {
        let constant = w.iter().all(|&v| approx_eq(v, w[0], cfg.rtol));
        return if constant {
            Ok([w[0], 0.0, 0.0])
        } else {
            Err(Error::DegenerateX)
        };
    }
    let a = ReciprocalMatrix::from_upper_fn(3, |i, j| if (i, j) == (0, 2) { x } else { 1.0 })?;
    if !efficient_3x3(&a, &PositiveVector::new(w.to_vec())?, cfg)? {
        return Err(Error::NotEfficient);
    }
    // the chain holds up to tolerance, so any negative part is rounding noise
    Ok(cone_coefficients_3x3(x, w).map(|v| v.max(0.0)))
}
