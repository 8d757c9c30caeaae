//! Where the Perron vector of the 3-block matrix (a12 = 4, a23 = 2) is
//! inefficient; singular and arithmetic-mean vectors are checked alongside.
//!
//! Run: `cargo run --release --example perron_grid`

use effhull::experiments::perron_efficiency_grid;
use effhull::matrix::ToleranceConfig;

fn main() -> effhull::Result<()> {
    let cfg = ToleranceConfig::default();
    let ns = [4, 8, 20, 100];
    let a13s = [8.2, 9.0, 12.0, 20.0, 50.0, 100.0, 1000.0, 10000.0];
    let grid = perron_efficiency_grid(&ns, 4.0, 2.0, &a13s, &cfg)?;

    print!("{:>5}", "n");
    for a13 in a13s {
        print!("{a13:>7}");
    }
    println!();
    for chunk in grid.chunks(a13s.len()) {
        print!("{:>5}", chunk[0].n);
        for cell in chunk {
            print!("{:>7}", if cell.verdicts.perron_efficient { "" } else { "x" });
        }
        println!();
    }
    let others_ok = grid
        .iter()
        .all(|c| c.verdicts.singular_efficient && c.verdicts.arith_mean_efficient);
    println!("singular and arithmetic-mean vectors efficient everywhere: {others_ok}");
    Ok(())
}
