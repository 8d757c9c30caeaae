//! Cone containment verdicts and inefficient witnesses for the 3-block and
//! 4-block triangular families.
//!
//! Run: `cargo run --example hull_witness`

use effhull::efficiency::is_efficient;
use effhull::io::to_json_string;
use effhull::matrix::ToleranceConfig;
use effhull::perturbed::{
    hull_in_efficient_3block, hull_in_efficient_triangular, hull_subset_efficient,
    three_block_matrix, witness_3block, witness_triangular,
};

fn main() -> effhull::Result<()> {
    let cfg = ToleranceConfig::default();

    for (a12, a13, a23) in [(4.0, 3.0, 2.0), (4.0, 8.0, 2.0), (4.0, 8.2, 2.0), (0.5, 2.0, 0.5)] {
        let contained = hull_in_efficient_3block(a12, a13, a23, &cfg)?;
        print!("3-block ({a12}, {a13}, {a23}): contained={contained}");
        match witness_3block(a12, a13, a23, &cfg) {
            Ok(h) => println!("  u={:.4?}", h.coefficients),
            Err(e) => println!("  ({e})"),
        }
    }

    for (a13, a14, a24) in [(5.0, 4.0, 2.0), (3.0, 5.0, 0.5), (5.0, 5.0, 2.0)] {
        let contained = hull_in_efficient_triangular(a13, a14, a24, &cfg)?;
        print!("triangular ({a13}, {a14}, {a24}): contained={contained}");
        match witness_triangular(a13, a14, a24, &cfg) {
            Ok(h) => println!("  u={:.4?}", h.coefficients),
            Err(e) => println!("  ({e})"),
        }
    }

    let a = three_block_matrix(8, 4.0, 12.0, 2.0)?;
    let verdict = hull_subset_efficient(&a, &cfg)?;
    println!("{}", to_json_string(&verdict.witness)?);
    if let Some(h) = &verdict.witness {
        println!("certificate: {}", to_json_string(&is_efficient(&a, &h.vector, &cfg)?)?);
    }
    Ok(())
}
