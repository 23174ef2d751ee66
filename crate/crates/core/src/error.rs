use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max defect {defect:.3e})")]
    NotHermitian { defect: f64 },

    #[error("matrix is not unitary (max defect {defect:.3e})")]
    NotUnitary { defect: f64 },

    #[error("matrix is not a proper rotation (defect {defect:.3e})")]
    NotARotation { defect: f64 },

    #[error("matrices do not commute (max defect {defect:.3e})")]
    NotCommuting { defect: f64 },

    #[error("matrix is not a tensor product of one-qubit gates (second singular value {sigma2:.3e})")]
    NotAProduct { sigma2: f64 },

    #[error("gates are not locally equivalent")]
    NotEquivalent,

    #[error("local factorization failed: {0}")]
    FactorizationFailure(String),

    #[error("state is not normalized (norm {norm:.12})")]
    NotNormalized { norm: f64 },

    #[error("density matrix trace is {trace:.12}, expected 1")]
    BadTrace { trace: f64 },

    #[error("density matrix is not positive (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("no minimality fixture for invariant index {0} (expected 10..=18)")]
    BadIndex(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
