//! Continuous-time quantum walks on barbell graphs and stars of cliques:
//! closed-form spectra, a Jacobi oracle, limiting distributions and
//! inverse participation ratios.

pub mod analytic;
pub mod dynamics;
pub mod error;
pub mod graph;
pub mod ipr;
pub mod jacobi;
pub mod matrix;
pub mod reference;
pub mod report;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{build_graph, normalized_adjacency, ClassTag, Family, GraphInstance, Hamiltonian, VertexClass};
pub use spectrum::{EigenSpace, EigenSystem, Mode, ModeLabel, SpectralPath};

use std::sync::Arc;

/// Eigensystem of `g` from the closed forms or from the Jacobi oracle.
pub fn solve(g: &GraphInstance, path: SpectralPath) -> Result<EigenSystem> {
    match path {
        SpectralPath::Analytic => analytic::analytic_spectrum(g),
        SpectralPath::Numeric => jacobi::numeric_spectrum(Arc::new(normalized_adjacency(g))),
    }
}
