//! Steklov spectra on simplicial meshes.
//!
//! `steklab` computes the spectrum of the Dirichlet-to-Neumann operator
//! (the Steklov problem `Δf = 0` in `Ω`, `∂ₙf = σ δ f` on `Σ = ∂Ω`) for
//! 2D and 3D simplicial meshes carrying a conformal metric `g = ρ·g_euclid`
//! and a boundary density `δ`. The discrete operator is obtained as the
//! boundary Schur complement of the P1 stiffness matrix; the spectrum comes
//! from a dense generalized symmetric eigensolve against the δ-weighted
//! boundary mass.
//!
//! Alongside the finite-element path the crate carries independent
//! closed-form spectra (disk, ball, circle, sphere, product cylinders) and
//! a harness that sweeps domain families, evaluates normalized eigenvalues
//! `σ̄ₖ = σₖ · m(Σ,δ) · |Σ|^{1/n}`, and checks the eigenvalue bounds that
//! admit explicit constants.
//!
//! Entry points:
//! - [`mesh`]: generators (disk, star, annulus, flat cylinder, ball),
//!   OFF/JSON import, midpoint refinement with boundary projection.
//! - [`assembly`]: conformally weighted stiffness / mass operators.
//! - [`eigensolve`]: Schur DtN reduction, generalized eigensolver,
//!   Rayleigh quotients and plateau test functions.
//! - [`analytic`]: closed-form oracles, cylinder spectra, normalizations.
//! - [`harness`]: experiments, reports, bound verdicts, CLI backend.

pub mod analytic;
pub mod assembly;
pub mod eigensolve;
pub mod harness;
pub mod linsolve;
pub mod mesh;
pub mod metric;
pub mod sparse;

pub use assembly::{assemble, lb_operators, OperatorBundle};
pub use eigensolve::{
    build_plateau, generalized_sym_eig, laplace_spectrum, minmax_upper_bound, rayleigh_quotient,
    schur_dtn, steklov_spectrum, SpectrumKind, SpectrumResult,
};
pub use mesh::{make_domain, DomainSpec, MeshFormat, SimplicialMesh};
pub use metric::{BoundaryDensity, MetricField};

use thiserror::Error;

/// Crate-wide error type. Variants map one-to-one onto the failure modes of
/// the public operations so callers (and the CLI exit paths) can distinguish
/// them.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid domain spec: {0}")]
    InvalidSpec(String),

    #[error("degenerate mesh: {0}")]
    DegenerateMesh(String),

    #[error("mesh parse failure: {0}")]
    ParseFailure(String),

    #[error("orientation inconsistency: {0}")]
    Orientation(String),

    #[error("non-manifold facet: {0}")]
    NonManifold(String),

    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    #[error("invalid density: {0}")]
    InvalidDensity(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("solver failure: {0}")]
    SolverFailure(String),

    #[error("undefined Rayleigh quotient: {0}")]
    UndefinedQuotient(String),

    #[error("invalid annulus: {0}")]
    InvalidAnnulus(String),

    #[error("invalid plateau family: {0}")]
    InvalidFamily(String),

    #[error("cross-spectrum too short: {0}")]
    Truncation(String),

    #[error("out of regime: {0}")]
    OutOfRegime(String),

    #[error("incomplete report: {0}")]
    IncompleteReport(String),

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
