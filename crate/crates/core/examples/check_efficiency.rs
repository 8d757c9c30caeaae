//! Efficiency of the row sums of the first three columns of a 4x4 matrix.
//!
//! Run: `cargo run --example check_efficiency`

use effhull::efficiency::{build_digraph, is_efficient, is_efficient_recursive};
use effhull::generators::{convex_combination, WeightVector};
use effhull::io::{parse_matrix, to_json_string};
use effhull::matrix::ToleranceConfig;

fn main() -> effhull::Result<()> {
    let cfg = ToleranceConfig::default();
    let a = parse_matrix("1,4,1/6,1\n1/4,1,5,1\n6,1/5,1,1\n1,1,1,1\n", &cfg)?;

    let w = convex_combination(&a, &WeightVector::new(vec![1.0, 1.0, 1.0, 0.0])?)?.scaled(3.0)?;
    println!("w = {:?}", w.as_slice());

    let g = build_digraph(&a, &w, &cfg)?;
    for i in 0..a.n() {
        let succ: Vec<usize> = g.successors(i).map(|j| j + 1).collect();
        println!("{} -> {:?}", i + 1, succ);
    }

    let cert = is_efficient(&a, &w, &cfg)?;
    println!("{}", to_json_string(&cert)?);
    println!("recursive test agrees: {}", is_efficient_recursive(&a, &w, &cfg)? == cert.is_efficient());
    Ok(())
}
