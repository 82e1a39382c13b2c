//! Continuous-time quantum walks on integer-weighted graphs.
//!
//! The walk on a graph `G` with integer Hamiltonian `M` evolves by
//! `U(t) = exp(itM)`. A vertex `a` is *periodic* when `|U(τ)_{aa}| = 1` for
//! some `τ > 0`, and two vertices admit *perfect state transfer* (PST) when
//! `|U(τ)_{ab}| = 1`. This crate
//!
//! * builds graphs, their standard Hamiltonians and Cartesian powers
//!   ([`graph`], [`hamiltonian`]),
//! * decomposes `M` into spectral idempotents and certifies integer and
//!   quadratic eigenvalues against the exact characteristic polynomial
//!   ([`spectral`]),
//! * classifies eigenvalue supports and computes minimal periods
//!   ([`periodicity`]),
//! * evaluates the propagator and searches for PST ([`evolution`]),
//! * checks the eccentricity lower bounds on the number of edges that a
//!   periodic vertex forces ([`bounds`]).
//!
//! ```
//! use qwalk_core::{graph, Hamiltonian, HamiltonianKind, Tolerances};
//! use qwalk_core::evolution::detect_pst;
//!
//! let p3 = graph::path(3).unwrap();
//! let h = Hamiltonian::build(&p3, HamiltonianKind::Adjacency).unwrap();
//! let report = detect_pst(&h, 0, 2, &Tolerances::default()).unwrap();
//! assert!(report.is_pst());
//! assert!((report.time - std::f64::consts::PI / 2f64.sqrt()).abs() < 1e-12);
//! ```

pub mod bounds;
pub mod enumerate;
pub mod evolution;
pub mod graph;
pub mod hamiltonian;
pub mod periodicity;
pub mod spectral;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use graph::{Graph, GraphError};
pub use hamiltonian::{Hamiltonian, HamiltonianError, HamiltonianKind, IntMatrix};
pub use periodicity::{Periodicity, PeriodicityCertificate, SupportClass, SupportClassification};
pub use spectral::{CharPoly, EigenvalueSupport, SpectralDecomposition, SpectralError};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Hamiltonian(#[from] HamiltonianError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("expected a {expected} certificate, got {found}")]
    ModelMismatch {
        expected: HamiltonianKind,
        found: HamiltonianKind,
    },
    /// A Laplacian vertex support classified as quadratic. Laplacians are
    /// positive semidefinite with 0 in every support, so this indicates a
    /// bug or a numerical breakdown.
    #[error("Laplacian support of vertex {vertex} classified as quadratic (Δ = {delta})")]
    LaplacianCorollary { vertex: usize, delta: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Numerical thresholds shared by the whole pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative eigenvalue gap below which eigenvalues are merged.
    pub cluster: f64,
    /// `‖E_r e_a‖` above this puts `θ_r` in the support of `a`.
    pub support: f64,
    /// Max-norm tolerance for matrix identities.
    pub matrix: f64,
    /// Relative tolerance for `|cp(θ)|` at numerical eigenvalues.
    pub charpoly: f64,
    /// A certificate needs `|U(τ)_{aa}| > 1 - period`.
    pub period: f64,
    /// PST needs fidelity `> 1 - pst`.
    pub pst: f64,
    /// Points in the fallback PST scan over `(0, 2π]`.
    pub pst_grid: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            cluster: 1e-9,
            support: 1e-8,
            matrix: 1e-8,
            charpoly: 1e-6,
            period: 1e-6,
            pst: 1e-6,
            pst_grid: 4096,
        }
    }
}
