//! For 3x3 matrices the efficient vectors are exactly the nonnegative
//! combinations of the columns; this recovers the coefficients.
//!
//! Run: `cargo run --example small_matrices`

use effhull::efficiency::efficient_simple_perturbed;
use effhull::matrix::{PositiveVector, ToleranceConfig};
use effhull::perturbed::{decompose_3x3, rowsum_witness};
use effhull::generators::WeightVector;
use effhull::io::parse_matrix;

fn main() -> effhull::Result<()> {
    let cfg = ToleranceConfig::default();
    for w in [[1.5, 1.2, 1.0], [2.0, 1.0, 1.0], [1.0, 2.0, 1.0]] {
        let v = PositiveVector::new(w.to_vec())?;
        match decompose_3x3(2.0, &v, &cfg) {
            Ok(y) => println!("w = {w:?}: y = {y:.4?}"),
            Err(e) => println!("w = {w:?}: {e}"),
        }
    }

    let w = PositiveVector::new(vec![3.0, 1.0, 2.0, 2.5, 1.5])?;
    println!("simple perturbed x = 3, w = {:?}: efficient = {}", w.as_slice(), efficient_simple_perturbed(3.0, &w, &cfg)?);

    let a = parse_matrix("1,4,1/6,1\n1/4,1,5,1\n6,1/5,1,1\n1,1,1,1\n", &cfg)?;
    for y in [vec![1.0, 1.0, 1.0], vec![0.6, 0.3, 0.1], vec![1.0, 1.0, 0.0]] {
        let found = rowsum_witness(&a, &WeightVector::new(y.clone())?, &cfg)?;
        println!("y = {y:?}: inefficient witness {:?}", found.map(|w| w.into_vec()));
    }
    Ok(())
}
