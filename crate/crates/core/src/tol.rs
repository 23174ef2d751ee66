//! Numerical tolerances shared by every module.
//!
//! Operations read their thresholds from [`TOLERANCES`]; the few entry points
//! that take an explicit `tol` argument default to the matching field here.

/// Named thresholds used across the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Max-entry defect of `M†M - 1` accepted for a unitary input.
    pub unitary: f64,
    /// Max-entry defect of `H - H†` accepted by the Hermitian eigensolver.
    pub hermitian: f64,
    /// Max-entry defect of `OᵀO - 1` and `|det O - 1|` for a 3×3 rotation.
    pub rotation: f64,
    /// Max-entry defect of `xy - yx` accepted by simultaneous diagonalization.
    pub commuting: f64,
    /// Eigenvalue gap below which two eigenvalues of `x` share a cluster.
    pub eigen_cluster: f64,
    /// Largest admissible second singular value in Kronecker factoring.
    pub kron_rank_one: f64,
    /// Real-orthogonality threshold of the Bell-basis locality test.
    pub local_gate: f64,
    /// Default tolerance for comparing gate invariants.
    pub gate_equivalence: f64,
    /// Multiset pairing tolerance for spectra of `m` during witness synthesis.
    pub spectrum_pairing: f64,
    /// Reconstruction residual accepted for a gate equivalence witness.
    pub witness_residual: f64,
    /// Slack on the perfect-entangler boundary (circular gap and inequalities).
    pub entangler_boundary: f64,
    /// Norm defect of a pure state passed to the entanglement form.
    pub normalization: f64,
    /// Hermiticity and trace defect accepted for a density matrix.
    pub density: f64,
    /// Most negative eigenvalue tolerated in strict positivity mode.
    pub positivity: f64,
    /// Degeneracy threshold on singular values of the correlation matrix.
    pub degeneracy: f64,
    /// Mismatch below which a pulse time counts as a solution.
    pub root_mismatch: f64,
}

/// Crate-wide defaults.
pub const TOLERANCES: Tolerances = Tolerances {
    unitary: 1e-8,
    hermitian: 1e-8,
    rotation: 1e-10,
    commuting: 1e-7,
    eigen_cluster: 1e-6,
    kron_rank_one: 1e-6,
    local_gate: 1e-7,
    gate_equivalence: 1e-6,
    spectrum_pairing: 1e-6,
    witness_residual: 1e-7,
    entangler_boundary: 1e-9,
    normalization: 1e-10,
    density: 1e-8,
    positivity: 1e-8,
    degeneracy: 1e-7,
    root_mismatch: 1e-10,
};

impl Default for Tolerances {
    fn default() -> Self {
        TOLERANCES
    }
}
