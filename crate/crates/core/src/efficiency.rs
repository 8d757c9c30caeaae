//! Pareto efficiency of a positive vector for a reciprocal matrix.
//!
//! `w` is efficient for `A` iff the digraph with an edge `i -> j` whenever
//! `w_i >= a_ij w_j` is strongly connected. For `n >= 4` this is equivalent
//! to finding two distinct deletions `i != j` such that `w(i)` is efficient for
//! `A(i)` and `w(j)` for `A(j)`, which gives an independent recursive test.

use std::collections::HashMap;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{approx_eq, le_tol, PositiveVector, ReciprocalMatrix, SubmatrixMode, ToleranceConfig};

/// Largest dimension accepted by the recursive test.
pub const MAX_RECURSIVE_N: usize = 12;

/// The digraph `G(A, w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EfficiencyDigraph {
    n: usize,
    adj: Vec<bool>,
}

impl EfficiencyDigraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.n + j]
    }

    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.has_edge(i, j))
    }

    pub fn predecessors(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&i| self.has_edge(i, j))
    }

    fn reaches_all(&self, reverse: bool) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for u in 0..self.n {
                let edge = if reverse {
                    self.has_edge(u, v)
                } else {
                    self.has_edge(v, u)
                };
                if edge && !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    /// Forward and backward reachability from vertex 0.
    pub fn is_strongly_connected(&self) -> bool {
        self.reaches_all(false) && self.reaches_all(true)
    }

    /// Strongly connected components in reverse topological order: the first
    /// component has no edge leaving it.
    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        tarjan(self)
    }
}

/// Iterative Tarjan; components are emitted sinks first.
fn tarjan(g: &EfficiencyDigraph) -> Vec<Vec<usize>> {
    let n = g.n;
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next = 0;
    // (vertex, next neighbour to scan)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&(v, start)) = call.last() {
            let mut descend = None;
            let mut cursor = start;
            while cursor < n {
                let u = cursor;
                cursor += 1;
                if !g.has_edge(v, u) {
                    continue;
                }
                if index[u] == usize::MAX {
                    descend = Some(u);
                    break;
                } else if on_stack[u] {
                    low[v] = low[v].min(index[u]);
                }
            }
            if let Some(u) = descend {
                if let Some(top) = call.last_mut() {
                    top.1 = cursor;
                }
                index[u] = next;
                low[u] = next;
                next += 1;
                stack.push(u);
                on_stack[u] = true;
                call.push((u, 0));
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let u = stack.pop().expect("tarjan stack underflow");
                    on_stack[u] = false;
                    comp.push(u);
                    if u == v {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }
    comps
}

fn check_dims(a: &ReciprocalMatrix, w: &PositiveVector) -> Result<()> {
    if a.n() != w.len() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            found: w.len(),
        });
    }
    Ok(())
}

/// Build `G(A, w)`: edge `i -> j` iff `w_i >= a_ij w_j (1 - edge_rtol)`.
pub fn build_digraph(
    a: &ReciprocalMatrix,
    w: &PositiveVector,
    cfg: &ToleranceConfig,
) -> Result<EfficiencyDigraph> {
    check_dims(a, w)?;
    let n = a.n();
    let w = w.as_slice();
    let mut adj = vec![false; n * n];
    for i in 0..n {
        let row = a.row(i);
        for j in 0..n {
            if i != j {
                adj[i * n + j] = le_tol(row[j] * w[j], w[i], cfg.edge_rtol);
            }
        }
    }
    Ok(EfficiencyDigraph { n, adj })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Efficient,
    Inefficient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Digraph,
    Recursive,
    ClosedForm,
}

/// Whether the witness set has no outgoing (sink) or no incoming (source) edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    Sink,
    Source,
}

fn one_based<S: Serializer>(v: &[usize], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|i| i + 1))
}

/// A vertex set that no edge leaves (sink) or enters (source).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutWitness {
    /// 0-based; serialized 1-based.
    #[serde(serialize_with = "one_based")]
    pub vertices: Vec<usize>,
    pub kind: WitnessKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EfficiencyCertificate {
    pub verdict: Verdict,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<CutWitness>,
}

impl EfficiencyCertificate {
    pub fn is_efficient(&self) -> bool {
        self.verdict == Verdict::Efficient
    }
}

/// Check that the witness set really is closed in the stated direction.
pub fn witness_holds(g: &EfficiencyDigraph, witness: &CutWitness) -> bool {
    let n = g.n();
    let mut inside = vec![false; n];
    for &v in &witness.vertices {
        inside[v] = true;
    }
    if witness.vertices.is_empty() || witness.vertices.len() == n {
        return false;
    }
    (0..n).filter(|&i| inside[i]).all(|i| {
        (0..n).filter(|&j| !inside[j]).all(|j| match witness.kind {
            WitnessKind::Sink => !g.has_edge(i, j),
            WitnessKind::Source => !g.has_edge(j, i),
        })
    })
}

/// Digraph efficiency test with a certificate. An inefficient verdict carries
/// the terminal strongly connected component as a sink witness.
pub fn is_efficient(
    a: &ReciprocalMatrix,
    w: &PositiveVector,
    cfg: &ToleranceConfig,
) -> Result<EfficiencyCertificate> {
    let g = build_digraph(a, w, cfg)?;
    let comps = g.strongly_connected_components();
    if comps.len() == 1 {
        return Ok(EfficiencyCertificate {
            verdict: Verdict::Efficient,
            method: Method::Digraph,
            witness: None,
        });
    }
    let sink = comps.into_iter().next().expect("at least two components");
    Ok(EfficiencyCertificate {
        verdict: Verdict::Inefficient,
        method: Method::Digraph,
        witness: Some(CutWitness {
            vertices: sink,
            kind: WitnessKind::Sink,
        }),
    })
}

/// Boolean digraph test without certificate construction.
pub fn efficient(a: &ReciprocalMatrix, w: &PositiveVector, cfg: &ToleranceConfig) -> Result<bool> {
    Ok(build_digraph(a, w, cfg)?.is_strongly_connected())
}

/// Closed form for `n = 3`:
/// `a23 w3 <= w2 <= w1/a12 <= (a13/a12) w3` or the reversed chain.
pub fn efficient_3x3(a: &ReciprocalMatrix, w: &PositiveVector, cfg: &ToleranceConfig) -> Result<bool> {
    if a.n() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: a.n(),
        });
    }
    check_dims(a, w)?;
    Ok(chain_3x3(a.get(0, 1), a.get(0, 2), a.get(1, 2), w.as_slice(), cfg.edge_rtol))
}

fn chain_3x3(a12: f64, a13: f64, a23: f64, w: &[f64], tol: f64) -> bool {
    let (w1, w2, w3) = (w[0], w[1], w[2]);
    let forward = le_tol(a23 * w3, w2, tol)
        && le_tol(a12 * w2, w1, tol)
        && le_tol(w1, a13 * w3, tol);
    let backward = le_tol(w2, a23 * w3, tol)
        && le_tol(w1, a12 * w2, tol)
        && le_tol(a13 * w3, w1, tol);
    forward || backward
}

/// Closed form for `S_n(x)` (only `a_12 = x` perturbed):
/// `w2 <= wk <= w1 <= x w2` for all `k >= 3`, or the reversed chain.
pub fn efficient_simple_perturbed(x: f64, w: &PositiveVector, cfg: &ToleranceConfig) -> Result<bool> {
    let n = w.len();
    if n < 3 {
        return Err(Error::DimensionTooSmall { n, min: 3 });
    }
    let tol = cfg.edge_rtol;
    let w = w.as_slice();
    let (w1, w2) = (w[0], w[1]);
    let forward = le_tol(w1, x * w2, tol)
        && w[2..]
            .iter()
            .all(|&wk| le_tol(w2, wk, tol) && le_tol(wk, w1, tol));
    let backward = le_tol(x * w2, w1, tol)
        && w[2..]
            .iter()
            .all(|&wk| le_tol(wk, w2, tol) && le_tol(w1, wk, tol));
    Ok(forward || backward)
}

/// Recursive test by successive deletion of single indices, memoized on the
/// remaining index subset. Offered only for `3 <= n <= MAX_RECURSIVE_N`.
pub fn is_efficient_recursive(
    a: &ReciprocalMatrix,
    w: &PositiveVector,
    cfg: &ToleranceConfig,
) -> Result<bool> {
    check_dims(a, w)?;
    let n = a.n();
    if n < 3 {
        return Err(Error::DimensionTooSmall { n, min: 3 });
    }
    if n > MAX_RECURSIVE_N {
        return Err(Error::PreconditionViolated(format!(
            "recursive test is limited to n <= {MAX_RECURSIVE_N}, got {n}"
        )));
    }
    let full: u32 = (1 << n) - 1;
    let mut memo = HashMap::new();
    Ok(recurse(a, w.as_slice(), full, cfg.edge_rtol, &mut memo))
}

fn recurse(
    a: &ReciprocalMatrix,
    w: &[f64],
    subset: u32,
    tol: f64,
    memo: &mut HashMap<u32, bool>,
) -> bool {
    if let Some(&v) = memo.get(&subset) {
        return v;
    }
    let idx: Vec<usize> = (0..a.n()).filter(|i| subset & (1 << i) != 0).collect();
    let result = if idx.len() == 3 {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        chain_3x3(a.get(i, j), a.get(i, k), a.get(j, k), &[w[i], w[j], w[k]], tol)
    } else {
        let mut found = 0;
        for &i in &idx {
            if recurse(a, w, subset & !(1 << i), tol, memo) {
                found += 1;
                if found == 2 {
                    break;
                }
            }
        }
        found >= 2
    };
    memo.insert(subset, result);
    result
}

/// `true` iff every entry outside the leading `s x s` block is one within `rtol`.
pub fn is_block_form(a: &ReciprocalMatrix, s: usize, cfg: &ToleranceConfig) -> bool {
    let n = a.n();
    (0..n).all(|i| (0..n).all(|j| (i < s && j < s) || approx_eq(a.get(i, j), 1.0, cfg.rtol)))
}

/// For `A = A_n(B)` with an `s x s` block and `w_p = w_q` for two tail indices
/// `p != q`, return `(A(p), w(p))`; `w` is efficient for `A` iff `w(p)` is
/// efficient for `A(p)`.
pub fn reduce_equal_tail(
    a: &ReciprocalMatrix,
    s: usize,
    w: &PositiveVector,
    p: usize,
    q: usize,
    cfg: &ToleranceConfig,
) -> Result<(ReciprocalMatrix, PositiveVector)> {
    check_dims(a, w)?;
    let n = a.n();
    if n <= s + 1 {
        return Err(Error::PreconditionViolated(format!(
            "need n > s + 1, got n = {n}, s = {s}"
        )));
    }
    if p < s || q < s || p >= n || q >= n || p == q {
        return Err(Error::PreconditionViolated(format!(
            "indices {} and {} must be distinct and lie in {}..={n}",
            p + 1,
            q + 1,
            s + 1
        )));
    }
    if !is_block_form(a, s, cfg) {
        return Err(Error::PreconditionViolated(format!(
            "matrix is not ones outside its leading {s}x{s} block"
        )));
    }
    if !approx_eq(w[p], w[q], cfg.rtol) {
        return Err(Error::PreconditionViolated(format!(
            "tail entries w_{} = {} and w_{} = {} differ",
            p + 1,
            w[p],
            q + 1,
            w[q]
        )));
    }
    Ok((
        a.principal_submatrix(&[p], SubmatrixMode::Delete)?,
        w.without(&[p])?,
    ))
}
