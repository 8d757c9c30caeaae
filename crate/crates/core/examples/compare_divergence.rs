//! Divergence of convex combinations versus weighted geometric means over
//! random coefficient vectors, as CSV suitable for plotting. The same seed
//! gives the same coefficients for all three matrices.
//!
//! Run: `cargo run --release --example compare_divergence -- [trials] [seed] > trials.csv`

use effhull::experiments::compare_run;
use effhull::io::format_number;
use effhull::matrix::{MonomialTransform, PositiveVector, ToleranceConfig};
use effhull::perturbed::three_block_matrix;

fn main() -> effhull::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials = args.next().and_then(|s| s.parse().ok()).unwrap_or(100);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);
    let cfg = ToleranceConfig::default();

    let a = three_block_matrix(8, 4.0, 3.0, 2.0)?;
    let similar = |d: [f64; 3]| {
        let mut inv = vec![1.0; 8];
        for (x, y) in inv.iter_mut().zip(d) {
            *x = 1.0 / y;
        }
        a.monomial_similarity(&MonomialTransform::diagonal(PositiveVector::new(inv)?))
    };
    let matrices = [("A", a.clone()), ("D1", similar([1.5, 4.0, 0.5])?), ("D2", similar([0.3, 0.4, 0.7])?)];

    println!("matrix,trial,norm_convex,norm_geometric");
    for (name, m) in &matrices {
        let report = compare_run(m, trials, seed, &cfg)?;
        for t in &report.trials {
            println!("{name},{},{},{}", t.trial, format_number(t.norm_convex), format_number(t.norm_geometric));
        }
        let r = &report.reference;
        eprintln!(
            "{name}: w_gm {:.6}  w_P {:.6}  w_s {:.6}  w_sum {:.6}",
            r.geometric_mean, r.perron, r.singular, r.column_sum
        );
    }
    Ok(())
}
