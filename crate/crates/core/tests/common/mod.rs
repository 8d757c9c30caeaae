#![allow(dead_code)]

use effhull::efficiency::efficient;
use effhull::generators::{convex_combination, WeightVector};
use effhull::matrix::{validate_reciprocal, MonomialTransform, PositiveVector, ReciprocalMatrix, ToleranceConfig};
use effhull::perturbed::triangular_matrix;
use rand::Rng;

pub fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

pub fn worked_example() -> ReciprocalMatrix {
    validate_reciprocal(
        &[
            vec![1.0, 4.0, 1.0 / 6.0, 1.0],
            vec![0.25, 1.0, 5.0, 1.0],
            vec![6.0, 0.2, 1.0, 1.0],
            vec![1.0, 1.0, 1.0, 1.0],
        ],
        &cfg(),
    )
    .unwrap()
}

/// `exp(uniform(ln lo, ln hi))`.
pub fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..=hi.ln()).exp()
}

pub fn random_matrix<R: Rng>(rng: &mut R, n: usize, spread: f64) -> ReciprocalMatrix {
    let upper: Vec<f64> = (0..n * n).map(|_| log_uniform(rng, 1.0 / spread, spread)).collect();
    ReciprocalMatrix::from_upper_fn(n, |i, j| upper[i * n + j]).unwrap()
}

pub fn random_positive<R: Rng>(rng: &mut R, n: usize, spread: f64) -> PositiveVector {
    PositiveVector::new((0..n).map(|_| log_uniform(rng, 1.0 / spread, spread)).collect()).unwrap()
}

pub fn random_simplex<R: Rng>(rng: &mut R, n: usize) -> WeightVector {
    WeightVector::new((0..n).map(|_| rng.gen::<f64>() + 1e-12).collect()).unwrap()
}

pub fn random_transform<R: Rng>(rng: &mut R, n: usize) -> MonomialTransform {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    MonomialTransform::new(perm, random_positive(rng, n, 10.0)).unwrap()
}

/// Either a convex combination of the columns (often efficient) or a random
/// positive vector (usually not).
pub fn mixed_vector<R: Rng>(rng: &mut R, a: &ReciprocalMatrix) -> PositiveVector {
    if rng.gen_bool(0.5) {
        convex_combination(a, &random_simplex(rng, a.n())).unwrap()
    } else {
        random_positive(rng, a.n(), 5.0)
    }
}

/// Sign pattern of the ten expressions in the sufficiency argument for the
/// 5x5 triangular form, per parameter case i)..vii): `1` for `>= 0`, `-1` for
/// `<= 0`, `0` when the sign is not determined.
pub const SIGN_TABLE: [[i8; 7]; 10] = [
    [1, 0, 0, 0, 0, -1, 1],     // w1 - w2
    [1, 1, 1, -1, 0, 0, 0],     // w2 - w3
    [1, 0, 1, 0, 1, 1, -1],     // w3 - w4
    [-1, -1, -1, 0, -1, -1, 0], // w4 - w5
    [-1, -1, -1, 1, -1, -1, 1], // w5 - w2
    [-1, -1, -1, 0, 0, 0, -1],  // w5 - w1
    [-1, -1, -1, 1, 1, 1, -1],  // w3 - w5
    [-1, 0, 0, -1, -1, 0, 0],   // w1 - a14 w4
    [0, -1, 0, 1, 1, 1, -1],    // w1 - a13 w3
    [0, -1, -1, 1, 0, -1, 1],   // w2 - a24 w4
];

pub fn sign_expressions(w: &[f64], a13: f64, a14: f64, a24: f64) -> [f64; 10] {
    let (w1, w2, w3, w4, w5) = (w[0], w[1], w[2], w[3], w[4]);
    [
        w1 - w2,
        w2 - w3,
        w3 - w4,
        w4 - w5,
        w5 - w2,
        w5 - w1,
        w3 - w5,
        w1 - a14 * w4,
        w1 - a13 * w3,
        w2 - a24 * w4,
    ]
}

/// Parameters `(a13, a14, a24)` drawn inside case `case` (0-based i..vii).
pub fn sample_sign_case<R: Rng>(rng: &mut R, case: usize) -> (f64, f64, f64) {
    let big = 50.0;
    let mut lu = |lo: f64, hi: f64| log_uniform(rng, lo, hi);
    match case {
        0 => {
            let a14 = lu(1.0, big);
            (lu(1.0, a14), a14, lu(1.0, a14))
        }
        1 => {
            let a14 = lu(1.0, 20.0);
            (lu(a14, big), a14, lu(a14, big))
        }
        2 => {
            let a13 = lu(1.0, 20.0);
            let a14 = lu(a13, 30.0);
            (a13, a14, lu(a14, big))
        }
        3 => (lu(1.0 / big, 1.0), lu(1.0, big), lu(1.0 / big, 1.0)),
        4 => {
            let a14 = lu(1.0, big);
            (lu(1.0 / big, 1.0), a14, lu(1.0, a14))
        }
        5 => {
            let a14 = lu(1.0, 20.0);
            (lu(1.0 / big, 1.0), a14, lu(a14, big))
        }
        _ => {
            let a14 = lu(1.0, 20.0);
            (lu(a14, big), a14, lu(1.0 / big, 1.0))
        }
    }
}

/// Number of table entries contradicted by one random instance of `case`.
pub fn sign_violations<R: Rng>(rng: &mut R, case: usize) -> usize {
    let (a13, a14, a24) = sample_sign_case(rng, case);
    let a = triangular_matrix(5, a13, a14, a24).unwrap();
    let w = convex_combination(&a, &random_simplex(rng, 5)).unwrap();
    let scale = w.as_slice().iter().fold(0.0f64, |m, x| m.max(*x)) * a13.max(a14).max(a24);
    let tol = 1e-12 * scale;
    sign_expressions(w.as_slice(), a13, a14, a24)
        .iter()
        .zip(SIGN_TABLE.iter())
        .filter(|(value, row)| match row[case] {
            1 => **value < -tol,
            -1 => **value > tol,
            _ => false,
        })
        .count()
}

/// `true` when every sampled convex combination of the columns is efficient.
pub fn all_combinations_efficient<R: Rng>(rng: &mut R, a: &ReciprocalMatrix, draws: usize) -> bool {
    (0..draws).all(|_| {
        let w = convex_combination(a, &random_simplex(rng, a.n())).unwrap();
        efficient(a, &w, &cfg()).unwrap()
    })
}
