//! Kemeny's constant of weighted, connected, undirected graphs.
//!
//! The crate computes the constant through several independent routes
//! (normalized-Laplacian spectrum, Laplacian group inverse, mean first
//! passage times), brackets it with degree-based and interlacing bounds, and
//! approximates it on sparsified graphs obtained by effective-resistance
//! sampling, together with the certified error envelopes of each
//! approximation.
//!
//! Everything here is `no_std` + `alloc`; file formats, tables and the
//! command-line harness live in the `kemeny-bench` crate.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`graph`] | [`WeightedGraph`], degree profiles, connectivity |
//! | [`generators`] | complete, bipartite, path, windmill, join and Erdős–Rényi graphs |
//! | [`linalg`] | dense matrices, symmetric eigensolver, Cholesky and LU |
//! | [`spectral`] | Laplacians, spectra, group inverse, effective resistance |
//! | [`kemeny`] | exact formulas, degree bounds, slightly-regular networks, K** |
//! | [`sparsify`] | resistance sampling, ε-approximation checks, K′/K″/K‴ |
//! | [`interlace`] | submatrix, quotient and edge-deletion bounds |
//!
//! ```
//! use kemeny_core::{generators, Analysis};
//!
//! let g = generators::complete_bipartite(10, 15).unwrap();
//! let analysis = Analysis::new(&g).unwrap();
//! assert!((analysis.kemeny() - 23.5).abs() < 1e-9);
//! ```
#![no_std]
// `!(x > 0.0)` style comparisons deliberately reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod analysis;
mod error;
pub mod generators;
pub mod graph;
pub mod interlace;
mod interval;
pub mod kemeny;
pub mod linalg;
pub mod rng;
pub mod sparsify;
pub mod spectral;

pub use analysis::Analysis;
pub use error::{Error, Result};
pub use graph::{DegreeProfile, Edge, WeightedGraph};
pub use interval::{BoundInterval, BoundSource};
