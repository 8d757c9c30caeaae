//! Recover the perturbed block and its canonical parameters from matrices
//! disguised by a diagonal similarity and a permutation.
//!
//! Run: `cargo run --example classify_blocks`

use effhull::matrix::{MonomialTransform, PositiveVector, ReciprocalMatrix, ToleranceConfig};
use effhull::perturbed::{detect_block_structure, three_block_matrix, triangular_matrix};

fn show(label: &str, a: &ReciprocalMatrix, cfg: &ToleranceConfig) -> effhull::Result<()> {
    let c = detect_block_structure(a, cfg)?;
    let block: Vec<usize> = c.block_indices.iter().map(|i| i + 1).collect();
    println!("{label}: {:?} on block {block:?}", c.kind);
    let roundtrip = a.monomial_similarity(&c.transform)?.max_rel_diff(&c.canonical);
    println!("    transform reproduces canonical form to {roundtrip:.1e}");
    Ok(())
}

fn main() -> effhull::Result<()> {
    let cfg = ToleranceConfig::default();
    let a = three_block_matrix(8, 4.0, 3.0, 2.0)?;
    show("three-block", &a, &cfg)?;

    for d in [[1.5, 4.0, 0.5], [0.3, 0.4, 0.7]] {
        let mut diag = [1.0; 8];
        diag[..3].copy_from_slice(&d);
        // D^{-1} A D is the similarity by diag(1/d)
        let s = MonomialTransform::diagonal(PositiveVector::new(diag.iter().map(|x| 1.0 / x).collect())?);
        show(&format!("D = diag({d:?}) + I"), &a.monomial_similarity(&s)?, &cfg)?;
    }

    let scramble = MonomialTransform::new(
        vec![4, 0, 5, 2, 1, 3],
        PositiveVector::new(vec![2.0, 0.5, 3.0, 1.0, 0.25, 7.0])?,
    )?;
    let t = triangular_matrix(6, 2.0, 1.0 / 3.0, 5.0)?;
    show("scrambled triangular", &t.monomial_similarity(&scramble)?, &cfg)?;

    let col = ReciprocalMatrix::from_upper_fn(6, |i, j| if i == 0 && j < 4 { (j + 1) as f64 } else { 1.0 })?;
    show("column perturbed", &col, &cfg)?;
    Ok(())
}
