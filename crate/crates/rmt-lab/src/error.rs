use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied value violated a precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The spectrum is too close to singular for inverse-based statistics.
    #[error("matrix is numerically singular: min |eigenvalue| = {min_abs_eigenvalue:.3e}")]
    NearSingular { min_abs_eigenvalue: f64 },

    /// The trailing block of a Schur inversion failed the singularity tolerance.
    #[error("Schur block is numerically singular: min |eigenvalue| = {min_abs_eigenvalue:.3e}")]
    BlockSingular { min_abs_eigenvalue: f64 },

    /// The iterative eigensolver hit its sweep cap.
    #[error(
        "eigensolver failed to converge on a {dim}x{dim} matrix: \
         off-diagonal residual {residual:.3e} after iteration cap"
    )]
    NonConvergence { dim: usize, residual: f64 },

    /// File I/O while loading or storing a matrix.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
