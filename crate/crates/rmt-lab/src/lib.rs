//! Deformed Gaussian random-matrix ensembles (`H = A + λV` with `V` from
//! GOE/GUE) and deterministic parallel Monte Carlo estimation of the
//! spectral regularity statistics of `H`: resolvent tail curves, density
//! of states, eigenvalue counting bounds, and the quadratic-form ratio
//! tails that drive them.
//!
//! The crate is organized as:
//!
//! * [`matrix`] / [`eigen`] / [`linalg`]: dense Hermitian linear algebra
//!   (storage, eigendecomposition, inverse application, subspace
//!   restriction, complex-to-real embedding).
//! * [`rng`]: counter-based reproducible random streams.
//! * [`ensembles`]: GOE / GUE / Bernoulli-Wigner samplers and the
//!   deterministic base matrices they deform.
//! * [`estimators`]: parallel Monte Carlo tail curves, density-of-states
//!   and factorial-moment estimators with exact binomial confidence
//!   intervals.
//! * [`lemmas`]: executable forms of the structural identities behind
//!   the bounds: Schur column inversion, small-ball and
//!   ratio-of-quadratic-forms tails, and the analytic characteristic
//!   function of the associated Gaussian quadratic forms.
//! * [`experiments`]: end-to-end scans: sharpness regimes, DOS scaling,
//!   the Bernoulli counterexample, and the weak-disorder sweep.
//! * [`report`]: the JSON/CSV result schema shared by the CLI.
//! * [`acceptance`]: the self-checking acceptance suite.

pub mod acceptance;
pub mod eigen;
pub mod ensembles;
pub mod estimators;
pub mod experiments;
pub mod lemmas;
pub mod linalg;
pub mod matrix;
pub mod report;
pub mod rng;

mod error;

pub use error::Error;
pub use num_complex::Complex64;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
