use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("parameter out of domain: {0}")]
    Domain(String),

    /// The carrier wave number coincides with a resonant wave number `k_N`,
    /// where the fundamental and the `N`-th harmonic travel at the same speed.
    #[error("wave number {k} is resonant with harmonic {harmonic} (k_{harmonic} = {resonant_k})")]
    Resonance {
        k: f64,
        harmonic: usize,
        resonant_k: f64,
    },

    /// A root could not be bracketed on the scanned grid.
    #[error("bracketing failed: {0}")]
    Bracketing(String),

    /// Newton iteration stalled or diverged.
    #[error("Newton iteration failed after {iterations} steps (residual {residual:e})")]
    Convergence { iterations: usize, residual: f64 },

    /// Fourier truncation too small for the wave it has to represent.
    #[error("truncation N_F = {n_f} cannot hold harmonics up to {required}")]
    Truncation { n_f: usize, required: usize },

    /// Dense eigensolver did not converge.
    #[error("eigensolver did not converge for a {0}x{0} matrix")]
    Eigensolver(usize),

    /// Operation is not defined for the requested model family.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// `true` for failures of a numerical method, as opposed to bad input
    /// (a resonant wave number counts as bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Bracketing(_) | Error::Convergence { .. } | Error::Eigensolver(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
