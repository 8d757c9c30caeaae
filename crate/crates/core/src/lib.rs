//! Pareto efficiency of weight vectors for reciprocal (pairwise comparison)
//! matrices.
//!
//! - [`matrix`]: reciprocal matrices, positive vectors, monomial similarity.
//! - [`efficiency`]: the digraph test with cut certificates, closed forms for
//!   small and simple perturbed matrices, and a recursive test used as an oracle.
//! - [`generators`]: Perron and singular vectors, column means, convex and
//!   weighted geometric combinations of columns.
//! - [`perturbed`]: block structure detection, canonical forms, cone
//!   containment verdicts and verified inefficient witnesses.
//! - [`experiments`]: seeded Monte Carlo runs (inefficiency counts,
//!   Perron grid, divergence comparison).
//! - [`io`] and [`cli`]: file formats and the `effhull` binary.
//!
//! The `examples/` directory has one runnable program per capability:
//! `check_efficiency`, `generate_vectors`, `classify_blocks`, `hull_witness`,
//! `small_matrices`, `inefficiency_counts`, `perron_grid` and
//! `compare_divergence`.
//!
//! ```
//! use effhull::efficiency::is_efficient;
//! use effhull::matrix::{PositiveVector, ToleranceConfig};
//! use effhull::perturbed::three_block_matrix;
//!
//! let cfg = ToleranceConfig::default();
//! let a = three_block_matrix(5, 4.0, 3.0, 2.0).unwrap();
//! let w = PositiveVector::new(a.column(0)).unwrap();
//! assert!(is_efficient(&a, &w, &cfg).unwrap().is_efficient());
//! ```

pub mod cli;
pub mod efficiency;
pub mod error;
pub mod experiments;
pub mod generators;
pub mod io;
pub mod matrix;
pub mod perturbed;

pub use error::{Error, Result};
