use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{approx_eq, MonomialTransform, PositiveVector, ReciprocalMatrix, ToleranceConfig};

/// Which of the four admissible orderings of a three-block holds.
///
/// - `I`:   `a13 >= 1` and `a12, a23 > 1`
/// - `II`:  `a12 >= a13 >= a23 = 1`
/// - `III`: `a23 >= a13 >= a12 = 1`
/// - `IV`:  `a13 > 1` and `a12, a23 < 1`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Cond11 {
    I,
    II,
    III,
    IV,
}

/// First admissible ordering satisfied by the parameters, if any.
pub fn cond11(a12: f64, a13: f64, a23: f64, cfg: &ToleranceConfig) -> Option<Cond11> {
    let tol = cfg.rtol;
    let one = |x: f64| approx_eq(x, 1.0, tol);
    let gt1 = |x: f64| x > 1.0 && !one(x);
    let lt1 = |x: f64| x < 1.0 && !one(x);
    let ge = |x: f64, y: f64| x >= y * (1.0 - tol);
    if ge(a13, 1.0) && gt1(a12) && gt1(a23) {
        Some(Cond11::I)
    } else if one(a23) && ge(a12, a13) && ge(a13, 1.0) {
        Some(Cond11::II)
    } else if one(a12) && ge(a23, a13) && ge(a13, 1.0) {
        Some(Cond11::III)
    } else if gt1(a13) && lt1(a12) && lt1(a23) {
        Some(Cond11::IV)
    } else {
        None
    }
}

/// Block permutation (new position -> old position), permuted
/// `(a12, a13, a23)` and the ordering they satisfy.
pub type Canonical3 = ([usize; 3], (f64, f64, f64), Cond11);

/// The six orderings of three indices in lexicographic order.
const PERMS3: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Reorder the 3x3 reciprocal block with upper entries `(a12, a13, a23)` by
/// the lexicographically first permutation whose parameters are admissible.
pub fn canonical_3block_params(
    a12: f64,
    a13: f64,
    a23: f64,
    cfg: &ToleranceConfig,
) -> Result<Canonical3> {
    let b = [
        [1.0, a12, a13],
        [1.0 / a12, 1.0, a23],
        [1.0 / a13, 1.0 / a23, 1.0],
    ];
    for p in PERMS3 {
        let (x12, x13, x23) = (b[p[0]][p[1]], b[p[0]][p[2]], b[p[1]][p[2]]);
        if let Some(c) = cond11(x12, x13, x23, cfg) {
            return Ok((p, (x12, x13, x23), c));
        }
    }
    Err(Error::CanonicalizationFailed(format!(
        "no ordering of ({a12}, {a13}, {a23}) is admissible"
    )))
}

/// The orientation-reversing relabelling of the four-block triangular form.
pub fn reverse_triangular_params(a13: f64, a14: f64, a24: f64) -> (f64, f64, f64) {
    (1.0 / a24, 1.0 / a14, 1.0 / a13)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BlockKind {
    Consistent,
    Simple { x: f64 },
    ColumnPerturbed,
    ThreeBlock {
        a12: f64,
        a13: f64,
        a23: f64,
        condition: Cond11,
    },
    FourBlockTriangular { a13: f64, a14: f64, a24: f64 },
    GeneralSBlock { s: usize },
    Unstructured,
}

fn one_based<S: Serializer>(v: &[usize], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|i| i + 1))
}

fn one_based_pairs<S: Serializer>(v: &[(usize, usize)], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|(i, j)| [i + 1, j + 1]))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockClassification {
    #[serde(flatten)]
    pub kind: BlockKind,
    /// Indices of the minimal perturbed principal block (0-based, serialized
    /// 1-based), in the order they occupy in the canonical form.
    #[serde(serialize_with = "one_based")]
    pub block_indices: Vec<usize>,
    /// Perturbed above-diagonal positions after normalization by the
    /// reference column (0-based, serialized 1-based).
    #[serde(serialize_with = "one_based_pairs")]
    pub perturbed_pairs: Vec<(usize, usize)>,
    /// Column used for the diagonal normalization (0-based, serialized 1-based).
    #[serde(serialize_with = "serialize_one_based_scalar")]
    pub reference_column: usize,
    /// Maps the input to `canonical`.
    pub transform: MonomialTransform,
    pub canonical: ReciprocalMatrix,
}

fn serialize_one_based_scalar<S: Serializer>(v: &usize, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(*v as u64 + 1)
}

impl BlockClassification {
    pub fn block_size(&self) -> usize {
        self.block_indices.len()
    }
}

struct Normalized {
    column: usize,
    transform: MonomialTransform,
    matrix: ReciprocalMatrix,
    pairs: Vec<(usize, usize)>,
    cover: Vec<usize>,
}

/// `D_j^{-1} A D_j` with `D_j = diag(column j)`: row and column `j` become ones
/// and, when column `j` lies outside the perturbed block, every unperturbed
/// entry becomes one as well.
fn normalize_by_column(a: &ReciprocalMatrix, j: usize, cfg: &ToleranceConfig) -> Normalized {
    let n = a.n();
    let inv = PositiveVector::new(a.column(j).iter().map(|v| 1.0 / v).collect())
        .expect("columns are positive");
    let transform = MonomialTransform::diagonal(inv);
    let matrix = a
        .monomial_similarity(&transform)
        .expect("dimensions agree");
    let mut pairs = Vec::new();
    let mut in_cover = vec![false; n];
    for i in 0..n {
        for k in i + 1..n {
            if (matrix.get(i, k) - 1.0).abs() > cfg.rtol {
                pairs.push((i, k));
                in_cover[i] = true;
                in_cover[k] = true;
            }
        }
    }
    let cover = (0..n).filter(|&i| in_cover[i]).collect();
    Normalized {
        column: j,
        transform,
        matrix,
        pairs,
        cover,
    }
}

fn common_vertex(pairs: &[(usize, usize)]) -> Option<usize> {
    let (a, b) = pairs[0];
    [a, b]
        .into_iter()
        .find(|&c| pairs.iter().all(|&(i, k)| i == c || k == c))
}

/// Vertices of a path on four vertices given by three edges, end to end.
fn path_order(pairs: &[(usize, usize)], cover: &[usize]) -> Option<[usize; 4]> {
    if pairs.len() != 3 || cover.len() != 4 {
        return None;
    }
    let degree = |v: usize| pairs.iter().filter(|&&(i, k)| i == v || k == v).count();
    let start = *cover.iter().find(|&&v| degree(v) == 1)?;
    let mut order = vec![start];
    let mut used = [false; 3];
    while order.len() < 4 {
        let last = *order.last().unwrap();
        let (e, next) = pairs
            .iter()
            .enumerate()
            .filter(|(e, _)| !used[*e])
            .find_map(|(e, &(i, k))| {
                if i == last {
                    Some((e, k))
                } else if k == last {
                    Some((e, i))
                } else {
                    None
                }
            })?;
        used[e] = true;
        order.push(next);
    }
    Some([order[0], order[1], order[2], order[3]])
}

/// Permutation putting `block` first (in the given order), then the rest ascending.
fn block_first(n: usize, block: &[usize]) -> Vec<usize> {
    let mut perm = block.to_vec();
    perm.extend((0..n).filter(|i| !block.contains(i)));
    perm
}

fn finish(
    norm: &Normalized,
    order: &[usize],
    kind_of: impl FnOnce(&ReciprocalMatrix) -> Result<BlockKind>,
) -> Result<BlockClassification> {
    let n = norm.matrix.n();
    let perm = MonomialTransform::permutation(block_first(n, order))?;
    let transform = norm.transform.then(&perm)?;
    let canonical = norm.matrix.monomial_similarity(&perm)?;
    let kind = kind_of(&canonical)?;
    Ok(BlockClassification {
        kind,
        block_indices: order.to_vec(),
        perturbed_pairs: norm.pairs.clone(),
        reference_column: norm.column,
        transform,
        canonical,
    })
}

fn check_pattern(c: &ReciprocalMatrix, allowed: &[(usize, usize)], cfg: &ToleranceConfig) -> Result<()> {
    let n = c.n();
    for i in 0..n {
        for k in i + 1..n {
            if !allowed.contains(&(i, k)) && !approx_eq(c.get(i, k), 1.0, cfg.rtol) {
                return Err(Error::CanonicalizationFailed(format!(
                    "canonical entry ({}, {}) = {} should be 1",
                    i + 1,
                    k + 1,
                    c.get(i, k)
                )));
            }
        }
    }
    Ok(())
}

fn three_block(norm: &Normalized, cfg: &ToleranceConfig) -> Result<BlockClassification> {
    let blk = &norm.cover;
    let m = &norm.matrix;
    let (a12, a13, a23) = (m.get(blk[0], blk[1]), m.get(blk[0], blk[2]), m.get(blk[1], blk[2]));
    let (p, _, _) = canonical_3block_params(a12, a13, a23, cfg)?;
    let order = [blk[p[0]], blk[p[1]], blk[p[2]]];
    finish(norm, &order, |c| {
        check_pattern(c, &[(0, 1), (0, 2), (1, 2)], cfg)?;
        let (a12, a13, a23) = (c.get(0, 1), c.get(0, 2), c.get(1, 2));
        let condition = cond11(a12, a13, a23, cfg).ok_or_else(|| {
            Error::CanonicalizationFailed("permuted block lost its admissible ordering".into())
        })?;
        Ok(BlockKind::ThreeBlock {
            a12,
            a13,
            a23,
            condition,
        })
    })
}

fn four_block_triangular(norm: &Normalized, cfg: &ToleranceConfig) -> Result<BlockClassification> {
    let m = &norm.matrix;
    // end-to-end path p0 - p1 - p2 - p3 whose edges sit at (1,3), (1,4), (2,4)
    // once relabelled as p1 -> 1, p3 -> 2, p0 -> 3, p2 -> 4
    let path = if norm.pairs.len() == 2 {
        let (i, k) = norm.pairs[0];
        let (l, q) = norm.pairs[1];
        [i, k, l, q]
    } else {
        path_order(&norm.pairs, &norm.cover).ok_or_else(|| {
            Error::CanonicalizationFailed("perturbed pairs do not form a path".into())
        })?
    };
    let [p0, p1, p2, p3] = path;
    let a14 = m.get(p1, p2);
    let order = if a14 < 1.0 && !approx_eq(a14, 1.0, cfg.rtol) {
        [p2, p0, p3, p1]
    } else {
        [p1, p3, p0, p2]
    };
    finish(norm, &order, |c| {
        check_pattern(c, &[(0, 2), (0, 3), (1, 3)], cfg)?;
        Ok(BlockKind::FourBlockTriangular {
            a13: c.get(0, 2),
            a14: c.get(0, 3),
            a24: c.get(1, 3),
        })
    })
}

/// Find the smallest perturbed principal block.
///
/// Every column `j` is tried as the reference for a diagonal normalization;
/// the one with the smallest perturbed block wins, then the fewest perturbed
/// pairs, then the smallest `j`. The block is classified by the shape of its
/// perturbed pairs and, for the three-block and four-block triangular
/// families, brought to canonical form.
pub fn detect_block_structure(a: &ReciprocalMatrix, cfg: &ToleranceConfig) -> Result<BlockClassification> {
    let n = a.n();
    let best = (0..n)
        .map(|j| normalize_by_column(a, j, cfg))
        .min_by_key(|nm| (nm.cover.len(), nm.pairs.len(), nm.column))
        .expect("n >= 1");

    let s = best.cover.len();
    let pairs = &best.pairs;
    match s {
        0 => finish(&best, &[], |_| Ok(BlockKind::Consistent)),
        2 => finish(&best, &best.cover, |c| Ok(BlockKind::Simple { x: c.get(0, 1) })),
        3 => three_block(&best, cfg),
        4 if pairs.len() == 2 || path_order(pairs, &best.cover).is_some() => {
            four_block_triangular(&best, cfg)
        }
        _ => {
            if let Some(center) = common_vertex(pairs) {
                let mut order = vec![center];
                order.extend(best.cover.iter().copied().filter(|&v| v != center));
                finish(&best, &order, |_| Ok(BlockKind::ColumnPerturbed))
            } else if s + 1 < n {
                finish(&best, &best.cover, |_| Ok(BlockKind::GeneralSBlock { s }))
            } else {
                finish(&best, &best.cover, |_| Ok(BlockKind::Unstructured))
            }
        }
    }
}

/// Classify a matrix whose perturbation touches at most three reciprocal
/// pairs inside a 4x4 principal block as column perturbed, three-block or
/// four-block triangular.
pub fn classify_triple(a: &ReciprocalMatrix, cfg: &ToleranceConfig) -> Result<BlockClassification> {
    let c = detect_block_structure(a, cfg)?;
    if c.perturbed_pairs.len() > 3 || c.block_size() > 4 {
        return Err(Error::NotTriplePerturbed);
    }
    Ok(c)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThreeBlockCanonical {
    pub a12: f64,
    pub a13: f64,
    pub a23: f64,
    pub condition: Cond11,
    pub transform: MonomialTransform,
}

/// Canonical three-block parameters satisfying one of the admissible
/// orderings, with the transform that realizes them.
pub fn canonicalize_3block(a: &ReciprocalMatrix, cfg: &ToleranceConfig) -> Result<ThreeBlockCanonical> {
    let c = detect_block_structure(a, cfg)?;
    match c.kind {
        BlockKind::ThreeBlock {
            a12,
            a13,
            a23,
            condition,
        } => Ok(ThreeBlockCanonical {
            a12,
            a13,
            a23,
            condition,
            transform: c.transform,
        }),
        other => Err(Error::PreconditionViolated(format!(
            "matrix is not a three-block perturbed consistent matrix ({other:?})"
        ))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangularCanonical {
    pub a13: f64,
    pub a14: f64,
    pub a24: f64,
    pub transform: MonomialTransform,
}

/// Canonical four-block triangular parameters with `a14 >= 1`.
pub fn canonicalize_4block_triangular(
    a: &ReciprocalMatrix,
    cfg: &ToleranceConfig,
) -> Result<TriangularCanonical> {
    let c = detect_block_structure(a, cfg)?;
    match c.kind {
        BlockKind::FourBlockTriangular { a13, a14, a24 } => Ok(TriangularCanonical {
            a13,
            a14,
            a24,
            transform: c.transform,
        }),
        other => Err(Error::PreconditionViolated(format!(
            "matrix is not a four-block triangular perturbed consistent matrix ({other:?})"
        ))),
    }
}
