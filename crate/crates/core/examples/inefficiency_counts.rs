//! Number of inefficient random convex combinations of the columns of the
//! 3-block matrix with a12 = 4, a23 = 2.
//!
//! Run: `cargo run --release --example inefficiency_counts -- [trials] [seed]`

use effhull::experiments::inefficiency_count;
use effhull::matrix::ToleranceConfig;

const A13: [f64; 8] = [8.2, 9.0, 12.0, 20.0, 50.0, 100.0, 1000.0, 10000.0];

fn main() -> effhull::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials = args.next().and_then(|s| s.parse().ok()).unwrap_or(10_000);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(2024);
    let cfg = ToleranceConfig::default();

    print!("{:>5}", "n");
    for a13 in A13 {
        print!("{a13:>8}");
    }
    println!();
    for n in [4, 8, 20, 100] {
        let report = inefficiency_count(n, 4.0, 2.0, &A13, trials, seed, &cfg)?;
        print!("{n:>5}");
        for e in &report.entries {
            print!("{:>8}", e.inefficient_count);
        }
        println!();
    }
    Ok(())
}
