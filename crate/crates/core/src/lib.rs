//! Spectral graph-structure toolkit: threshold spectral sums, Hadamard
//! subspace calculus, surplus certificates, clique densification,
//! clique-union decomposition and Cayley-graph cosine sums.

pub mod error;
pub mod cuts;
pub mod densify;
pub mod graphs;
pub mod report;
pub mod chowla;
pub mod spectral;
pub mod structure;

pub use error::{Error, Result};
pub use graphs::{generate, Family, Graph, GraphStats};
pub use report::{InequalityReport, Record, Verdict};
pub use spectral::{spectrum, Spectrum};
