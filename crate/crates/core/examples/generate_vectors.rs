//! Candidate weight vectors for a 3-block perturbed consistent matrix and
//! their efficiency and divergence.
//!
//! Run: `cargo run --example generate_vectors`

use effhull::efficiency::efficient;
use effhull::experiments::divergence;
use effhull::generators::{
    convex_combination, mean_columns, perron_vector, singular_vector, weighted_geometric_mean,
    MeanKind, WeightVector,
};
use effhull::matrix::{PositiveVector, ToleranceConfig};
use effhull::perturbed::three_block_matrix;

fn main() -> effhull::Result<()> {
    let cfg = ToleranceConfig::default();
    let a = three_block_matrix(8, 4.0, 3.0, 2.0)?;
    let alpha = WeightVector::new(vec![0.3, 0.1, 0.05, 0.2, 0.1, 0.05, 0.15, 0.05])?;

    let perron = perron_vector(&a, &cfg)?;
    println!("spectral radius {:.6} after {} iterations", perron.rho, perron.iterations);

    let vectors: Vec<(&str, PositiveVector)> = vec![
        ("perron", perron.vector),
        ("singular", singular_vector(&a, &cfg)?),
        ("geometric mean", mean_columns(&a, MeanKind::Geometric)),
        ("arithmetic mean", mean_columns(&a, MeanKind::Arithmetic)),
        ("convex(alpha)", convex_combination(&a, &alpha)?),
        ("wgm(alpha)", weighted_geometric_mean(&a, &alpha)?),
    ];
    for (name, w) in &vectors {
        let w = w.normalized();
        println!(
            "{name:>16}: efficient={} divergence={:.6} w={:.4?}",
            efficient(&a, &w, &cfg)?,
            divergence(&a, &w)?,
            w.as_slice()
        );
    }
    Ok(())
}
