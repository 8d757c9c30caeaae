//! Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. All tolerances are fixed below.

mod common;

use std::time::{Duration, Instant};

use common::*;
use effhull::efficiency::{efficient, is_efficient, is_efficient_recursive, reduce_equal_tail, WitnessKind};
use effhull::experiments::{compare_run, inefficiency_count, perron_efficiency_grid};
use effhull::generators::{
    convex_combination, mean_columns, perron_vector, singular_vector, weighted_geometric_mean, MeanKind,
    WeightVector,
};
use effhull::matrix::{MonomialTransform, PositiveVector, ReciprocalMatrix};
use effhull::perturbed::{
    cone_coefficients_3x3, detect_block_structure, hull_in_efficient_3block, hull_subset_efficient,
    three_block_matrix, triangular_conditions, triangular_matrix, witness_3block, witness_triangular,
    BlockKind, Containment,
};
use effhull::efficiency::efficient_3x3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20240611;

// criterion 1
const EXACT_RTOL: f64 = 1e-12;
const C1_BUDGET: Duration = Duration::from_millis(1);
// criteria 2 and 3
const TRIPLES: usize = 500;
const DRAWS: usize = 200;
// criterion 4: (n, a13, reference count, allowed deviation)
const COUNT_CHECKS: [(usize, f64, usize, usize); 4] = [
    (4, 12.0, 1098, 125),
    (4, 10000.0, 3099, 185),
    (8, 50.0, 2170, 165),
    (20, 100.0, 1476, 143),
];
const COUNT_TRIALS: usize = 10_000;
const ZERO_CELL_MAX: usize = 10;
const A13: [f64; 8] = [8.2, 9.0, 12.0, 20.0, 50.0, 100.0, 1000.0, 10000.0];
const NS: [usize; 4] = [4, 8, 20, 100];
const REFERENCE_COUNTS: [[usize; 8]; 4] = [
    [60, 250, 1098, 2205, 2913, 3058, 3150, 3099],
    [0, 0, 2, 249, 2170, 2978, 3605, 3684],
    [0, 0, 0, 0, 167, 1476, 3553, 3699],
    [0, 0, 0, 0, 0, 0, 2369, 3553],
];
// criterion 5: true where the Perron vector is inefficient
const REFERENCE_PERRON: [[bool; 8]; 4] = [
    [false, false, false, true, true, false, false, false],
    [false, false, false, false, true, true, true, false],
    [false, false, false, false, false, true, true, true],
    [false, false, false, false, false, false, true, true],
];
// criterion 6
const CANONICAL_RTOL: f64 = 1e-9;
const COMPARE_TRIALS: usize = 100;
// criterion 7
const ORACLE_PAIRS: usize = 1000;
// criterion 8
const PROPERTY_INSTANCES: usize = 200;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion1() -> Check {
    let a = worked_example();
    let exact = [31.0 / 6.0, 25.0 / 4.0, 36.0 / 5.0, 3.0];
    let start = Instant::now();
    let w = PositiveVector::new(a.mul_vec(&[1.0, 1.0, 1.0, 0.0]).unwrap()).unwrap();
    let cert = is_efficient(&a, &w, &cfg()).unwrap();
    let elapsed = start.elapsed();
    for (x, y) in w.as_slice().iter().zip(exact) {
        ensure(((x - y) / y).abs() <= EXACT_RTOL, || format!("A e' = {:?}", w.as_slice()))?;
    }
    let cut = cert.witness.ok_or("no witness")?;
    ensure(!cert.verdict.eq(&effhull::efficiency::Verdict::Efficient), || "efficient".into())?;
    ensure(cut.vertices == vec![3] && cut.kind == WitnessKind::Sink, || format!("witness {cut:?}"))?;
    ensure(elapsed < C1_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("sink witness {{4}}, {elapsed:?}"))
}

/// A triple satisfying one of the admissible orderings, contained or not.
fn three_block_triple(rng: &mut ChaCha8Rng, contained: bool) -> (f64, f64, f64) {
    if contained {
        match rng.gen_range(0..3) {
            0 => {
                let (a12, a23) = (log_uniform(rng, 1.01, 30.0), log_uniform(rng, 1.01, 30.0));
                (a12, log_uniform(rng, 1.0, a12 * a23), a23)
            }
            1 => {
                let a12 = log_uniform(rng, 1.0, 50.0);
                (a12, log_uniform(rng, 1.0, a12), 1.0)
            }
            _ => {
                let a23 = log_uniform(rng, 1.0, 50.0);
                (1.0, log_uniform(rng, 1.0, a23), a23)
            }
        }
    } else if rng.gen_bool(0.5) {
        let (a12, a23) = (log_uniform(rng, 1.01, 30.0), log_uniform(rng, 1.01, 30.0));
        (a12, a12 * a23 * log_uniform(rng, 1.01, 100.0), a23)
    } else {
        (log_uniform(rng, 0.02, 0.99), log_uniform(rng, 1.01, 50.0), log_uniform(rng, 0.02, 0.99))
    }
}

fn criterion2() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let start = Instant::now();
    for _ in 0..TRIPLES {
        let (a12, a13, a23) = three_block_triple(&mut rng, true);
        ensure(hull_in_efficient_3block(a12, a13, a23, &cfg()).unwrap(), || {
            format!("({a12}, {a13}, {a23}) judged not contained")
        })?;
        let a = three_block_matrix(4, a12, a13, a23).unwrap();
        ensure(all_combinations_efficient(&mut rng, &a, DRAWS), || {
            format!("inefficient combination for ({a12}, {a13}, {a23})")
        })?;
    }
    for _ in 0..TRIPLES {
        let (a12, a13, a23) = three_block_triple(&mut rng, false);
        let h = witness_3block(a12, a13, a23, &cfg()).map_err(|e| format!("({a12}, {a13}, {a23}): {e}"))?;
        let a = three_block_matrix(4, a12, a13, a23).unwrap();
        ensure(h.coefficients.iter().all(|u| *u >= 0.0), || "negative coefficient".into())?;
        ensure(!is_efficient(&a, &h.vector, &cfg()).unwrap().is_efficient(), || {
            format!("witness for ({a12}, {a13}, {a23}) is efficient")
        })?;
    }
    Ok(format!("{TRIPLES}x{DRAWS} contained draws efficient, {TRIPLES} witnesses verified, {:?}", start.elapsed()))
}

fn criterion3() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let start = Instant::now();
    let mut absent = 0;
    while absent < TRIPLES {
        let (a13, a14, a24) = (log_uniform(&mut rng, 0.05, 20.0), log_uniform(&mut rng, 1.0, 20.0), log_uniform(&mut rng, 0.05, 20.0));
        if triangular_conditions(a13, a14, a24, &cfg()).is_some() {
            continue;
        }
        absent += 1;
        let a = triangular_matrix(5, a13, a14, a24).unwrap();
        ensure(all_combinations_efficient(&mut rng, &a, DRAWS), || {
            format!("inefficient combination for ({a13}, {a14}, {a24})")
        })?;
    }
    for k in 0..TRIPLES {
        let (a13, a14, a24) = if k % 2 == 0 {
            let a24 = log_uniform(&mut rng, 1.01, 10.0);
            let a14 = a24 * log_uniform(&mut rng, 1.01, 10.0);
            (a14 * log_uniform(&mut rng, 1.01, 10.0), a14, a24)
        } else {
            let a13 = log_uniform(&mut rng, 1.01, 10.0);
            (a13, a13 * log_uniform(&mut rng, 1.01, 10.0), log_uniform(&mut rng, 0.05, 0.99))
        };
        let h = witness_triangular(a13, a14, a24, &cfg()).map_err(|e| format!("({a13}, {a14}, {a24}): {e}"))?;
        let a = triangular_matrix(5, a13, a14, a24).unwrap();
        ensure(!is_efficient(&a, &h.vector, &cfg()).unwrap().is_efficient(), || {
            format!("witness for ({a13}, {a14}, {a24}) is efficient")
        })?;
    }
    Ok(format!("{TRIPLES}x{DRAWS} contained draws efficient, {TRIPLES} witnesses verified, {:?}", start.elapsed()))
}

fn criterion4() -> Check {
    let start = Instant::now();
    let mut table = Vec::new();
    for n in NS {
        let r = inefficiency_count(n, 4.0, 2.0, &A13, COUNT_TRIALS, SEED, &cfg()).map_err(|e| e.to_string())?;
        table.push(r.entries.iter().map(|e| e.inefficient_count).collect::<Vec<_>>());
    }
    for (n, a13, expected, dev) in COUNT_CHECKS {
        let row = NS.iter().position(|&m| m == n).unwrap();
        let col = A13.iter().position(|&x| x == a13).unwrap();
        let got = table[row][col];
        ensure(got.abs_diff(expected) <= dev, || format!("n={n}, a13={a13}: {got} vs {expected} +- {dev}"))?;
    }
    for (row, ref_row) in REFERENCE_COUNTS.iter().enumerate() {
        for (col, &expected) in ref_row.iter().enumerate() {
            if expected == 0 {
                let got = table[row][col];
                ensure(got <= ZERO_CELL_MAX, || format!("n={}, a13={}: {got} where the reference has 0", NS[row], A13[col]))?;
            }
        }
    }
    Ok(format!("counts {table:?}, {:?}", start.elapsed()))
}

fn criterion5() -> Check {
    let start = Instant::now();
    let grid = perron_efficiency_grid(&NS, 4.0, 2.0, &A13, &cfg()).map_err(|e| e.to_string())?;
    for cell in &grid {
        let row = NS.iter().position(|&m| m == cell.n).unwrap();
        let col = A13.iter().position(|&x| x == cell.a13).unwrap();
        ensure(cell.verdicts.perron_efficient != REFERENCE_PERRON[row][col], || {
            format!("Perron verdict differs at n={}, a13={}", cell.n, cell.a13)
        })?;
        ensure(cell.verdicts.singular_efficient && cell.verdicts.arith_mean_efficient, || {
            format!("singular or arithmetic mean inefficient at n={}, a13={}", cell.n, cell.a13)
        })?;
    }
    Ok(format!("all {} cells match, {:?}", grid.len(), start.elapsed()))
}

fn disguise(a: &ReciprocalMatrix, d: [f64; 3]) -> ReciprocalMatrix {
    let mut inv = vec![1.0; a.n()];
    for (x, y) in inv.iter_mut().zip(d) {
        *x = 1.0 / y;
    }
    a.monomial_similarity(&MonomialTransform::diagonal(PositiveVector::new(inv).unwrap())).unwrap()
}

fn criterion6() -> Check {
    let a = three_block_matrix(8, 4.0, 3.0, 2.0).unwrap();
    let variants = [("A", a.clone()), ("D1", disguise(&a, [1.5, 4.0, 0.5])), ("D2", disguise(&a, [0.3, 0.4, 0.7]))];
    for (name, m) in &variants {
        let c = detect_block_structure(m, &cfg()).unwrap();
        match c.kind {
            BlockKind::ThreeBlock { a12, a13, a23, .. } => ensure(
                [(a12, 4.0), (a13, 3.0), (a23, 2.0)].iter().all(|(x, y)| ((x - y) / y).abs() < CANONICAL_RTOL),
                || format!("{name}: parameters ({a12}, {a13}, {a23})"),
            )?,
            other => return Err(format!("{name}: classified as {other:?}")),
        }
        let v = hull_subset_efficient(m, &cfg()).unwrap();
        ensure(v.contained == Containment::Yes, || format!("{name}: hull verdict {:?}", v.contained))?;
        let vectors = [
            perron_vector(m, &cfg()).unwrap().vector,
            singular_vector(m, &cfg()).unwrap(),
            mean_columns(m, MeanKind::Geometric),
            mean_columns(m, MeanKind::Arithmetic),
        ];
        ensure(vectors.iter().all(|w| efficient(m, w, &cfg()).unwrap()), || format!("{name}: inefficient reference vector"))?;

        let report = compare_run(m, COMPARE_TRIALS, SEED, &cfg()).map_err(|e| format!("{name}: {e}"))?;
        for t in &report.trials {
            let convex = convex_combination(m, &t.alpha).unwrap();
            let geometric = weighted_geometric_mean(m, &t.alpha).unwrap();
            ensure(efficient(m, &convex, &cfg()).unwrap() && efficient(m, &geometric, &cfg()).unwrap(), || {
                format!("{name}: trial {} emitted an inefficient vector", t.trial)
            })?;
        }
        let r = &report.reference;
        ensure(
            [r.geometric_mean, r.perron, r.singular, r.column_sum].iter().all(|x| x.is_finite() && *x > 0.0),
            || format!("{name}: reference norms {r:?}"),
        )?;
    }
    Ok("A, D1 and D2 are three-block (4, 3, 2), contained, reference vectors efficient".into())
}

fn criterion7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let start = Instant::now();
    let mut efficient_seen = 0;
    for n in 3..=6 {
        for _ in 0..ORACLE_PAIRS {
            let a = random_matrix(&mut rng, n, 9.0);
            let w = mixed_vector(&mut rng, &a);
            let d = efficient(&a, &w, &cfg()).unwrap();
            let r = is_efficient_recursive(&a, &w, &cfg()).unwrap();
            ensure(d == r, || format!("disagreement on n={n}: {:?} {:?}", a.to_rows(), w.as_slice()))?;
            efficient_seen += usize::from(d);
        }
    }
    Ok(format!("{} pairs agree ({efficient_seen} efficient), {:?}", 4 * ORACLE_PAIRS, start.elapsed()))
}

fn criterion8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let c = cfg();
    for _ in 0..PROPERTY_INSTANCES {
        let n = rng.gen_range(3..=8);
        let a = random_matrix(&mut rng, n, 9.0);
        let w = mixed_vector(&mut rng, &a);
        let s = random_transform(&mut rng, n);
        let b = a.monomial_similarity(&s).unwrap();
        ensure(efficient(&a, &w, &c).unwrap() == efficient(&b, &s.apply_to_vector(&w).unwrap(), &c).unwrap(), || {
            "similarity changed a verdict".into()
        })?;
        ensure((0..n).all(|j| efficient(&a, &a.column_vector(j), &c).unwrap()), || "inefficient column".into())?;
        let alpha = random_simplex(&mut rng, n);
        ensure(efficient(&a, &weighted_geometric_mean(&a, &alpha).unwrap(), &c).unwrap(), || {
            "inefficient weighted geometric mean".into()
        })?;
    }
    for _ in 0..PROPERTY_INSTANCES {
        let s = rng.gen_range(2..=4);
        let n = s + rng.gen_range(2..=4);
        let blk = random_matrix(&mut rng, s, 6.0);
        let a = ReciprocalMatrix::from_upper_fn(n, |i, j| if j < s { blk.get(i, j) } else { 1.0 }).unwrap();
        let mut w = mixed_vector(&mut rng, &a).into_vec();
        w[n - 1] = w[s];
        let w = PositiveVector::new(w).unwrap();
        let (ar, wr) = reduce_equal_tail(&a, s, &w, s, n - 1, &c).unwrap();
        ensure(efficient(&a, &w, &c).unwrap() == efficient(&ar, &wr, &c).unwrap(), || "reduction changed a verdict".into())?;
    }
    for case in 0..7 {
        for _ in 0..PROPERTY_INSTANCES {
            ensure(sign_violations(&mut rng, case) == 0, || format!("sign table violated in case {}", case + 1))?;
        }
    }
    for _ in 0..PROPERTY_INSTANCES {
        let x = log_uniform(&mut rng, 1.01, 20.0);
        let a = ReciprocalMatrix::from_upper_fn(3, |i, j| if (i, j) == (0, 2) { x } else { 1.0 }).unwrap();
        // half from the cone (efficient), half arbitrary
        let w = if rng.gen_bool(0.5) {
            convex_combination(&a, &WeightVector::new((0..3).map(|_| rng.gen::<f64>()).collect()).unwrap()).unwrap()
        } else {
            random_positive(&mut rng, 3, 3.0)
        };
        let scale = w.as_slice().iter().fold(0.0f64, |m, v| m.max(*v)) * x;
        let nonneg = cone_coefficients_3x3(x, w.as_slice()).iter().all(|v| *v >= -1e-9 * scale);
        ensure(nonneg == efficient_3x3(&a, &w, &c).unwrap(), || format!("decomposition mismatch x={x}, w={:?}", w.as_slice()))?;
    }
    Ok(format!("{PROPERTY_INSTANCES} instances per suite, zero failures"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("worked 4x4 example", criterion1),
        ("three-block theorem, both directions", criterion2),
        ("triangular theorem, both directions", criterion3),
        ("inefficiency counts", criterion4),
        ("Perron verdict grid", criterion5),
        ("three-block example and similar variants", criterion6),
        ("digraph vs recursive oracle", criterion7),
        ("property suites", criterion8),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
