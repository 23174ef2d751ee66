//! Two-qubit density matrices up to local unitaries.
//!
//! A state is written as `ρ = ¼·1 + ½ s·σ¹ + ½ p·σ² + β_ij σ_i¹σ_j²`, where `s`
//! and `p` are the average spins of the two qubits and `β_ij = ⟨S¹_i S²_j⟩` is
//! the spin-spin correlator. A local gate `W1⊗W2` acts through a pair of
//! rotations `(O, P)` as `s → Os`, `p → Pp`, `β → OβPᵀ`.

mod canonical;
mod fixtures;
mod invariants;

pub use canonical::{canonicalize_state, CaseTag, Canonical, StateWitness};
pub use fixtures::{fixture_pair, FIXTURE_INDICES, FIXTURE_TOL};
pub use invariants::{invariants18, states_equivalent, StateInvariants, SIGN_INDICES, VALUE_INDICES};

use nalgebra::{Rotation3, UnitQuaternion, Vector3};

use crate::error::{Error, Result};
use crate::gates::paulis;
use crate::linalg::{
    c64, eig_hermitian, hermiticity_defect, kron, leading_entry_positive, rotation_defect,
    ComplexMatrix2, ComplexMatrix4, RealMatrix3,
};
use crate::tol::TOLERANCES;

/// Bloch vectors and correlation matrix of a two-qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliForm {
    pub s: Vector3<f64>,
    pub p: Vector3<f64>,
    pub beta: RealMatrix3,
}

impl PauliForm {
    pub fn new(s: Vector3<f64>, p: Vector3<f64>, beta: RealMatrix3) -> Self {
        Self { s, p, beta }
    }

    /// The maximally mixed state.
    pub fn zero() -> Self {
        Self::new(Vector3::zeros(), Vector3::zeros(), RealMatrix3::zeros())
    }

    /// Applies the local rotation pair `(o, p_rot)`.
    pub fn rotated(&self, o: &RealMatrix3, p_rot: &RealMatrix3) -> Self {
        Self {
            s: o * self.s,
            p: p_rot * self.p,
            beta: o * self.beta * p_rot.transpose(),
        }
    }

    /// Multiplies `s`, `p` and `β` by `factor`, i.e. mixes with the maximally mixed state.
    pub fn scaled(&self, factor: f64) -> Self {
        Self::new(self.s * factor, self.p * factor, self.beta * factor)
    }

    /// Largest absolute difference over all 15 parameters.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.s - other.s)
            .amax()
            .max((self.p - other.p).amax())
            .max((self.beta - other.beta).amax())
    }

    /// Smallest eigenvalue of the composed density matrix.
    pub fn min_eigenvalue(&self) -> f64 {
        let (values, _) = eig_hermitian(&pauli_compose(self)).expect("composed matrix is Hermitian");
        values[0]
    }
}

fn one_qubit_ops() -> ([ComplexMatrix4; 3], [ComplexMatrix4; 3]) {
    let id = ComplexMatrix2::identity();
    let sig = paulis();
    (sig.map(|s| kron(&s, &id)), sig.map(|s| kron(&id, &s)))
}

fn decompose_unchecked(rho: &ComplexMatrix4) -> PauliForm {
    let sig = paulis();
    let (first, second) = one_qubit_ops();
    let s = Vector3::from_fn(|i, _| 0.5 * (rho * first[i]).trace().re);
    let p = Vector3::from_fn(|j, _| 0.5 * (rho * second[j]).trace().re);
    let beta = RealMatrix3::from_fn(|i, j| 0.25 * (rho * kron(&sig[i], &sig[j])).trace().re);
    PauliForm { s, p, beta }
}

fn check_density(rho: &ComplexMatrix4) -> Result<()> {
    let defect = hermiticity_defect(rho);
    if defect > TOLERANCES.density || !defect.is_finite() {
        return Err(Error::NotHermitian { defect });
    }
    let trace = rho.trace().re;
    if (trace - 1.0).abs() > TOLERANCES.density {
        return Err(Error::BadTrace { trace });
    }
    Ok(())
}

/// Pauli decomposition of a Hermitian unit-trace matrix. Positivity is not
/// required; see [`pauli_decompose_strict`].
pub fn pauli_decompose(rho: &ComplexMatrix4) -> Result<PauliForm> {
    check_density(rho)?;
    Ok(decompose_unchecked(rho))
}

/// As [`pauli_decompose`], additionally rejecting eigenvalues below `-1e-8`.
pub fn pauli_decompose_strict(rho: &ComplexMatrix4) -> Result<PauliForm> {
    check_density(rho)?;
    let (values, _) = eig_hermitian(rho)?;
    if values[0] < -TOLERANCES.positivity {
        return Err(Error::NotPositive { min_eigenvalue: values[0] });
    }
    Ok(decompose_unchecked(rho))
}

/// Inverse of [`pauli_decompose`].
pub fn pauli_compose(f: &PauliForm) -> ComplexMatrix4 {
    let sig = paulis();
    let (first, second) = one_qubit_ops();
    let mut rho = ComplexMatrix4::identity() * c64(0.25, 0.0);
    for i in 0..3 {
        rho += first[i] * c64(0.5 * f.s[i], 0.0);
        rho += second[i] * c64(0.5 * f.p[i], 0.0);
        for j in 0..3 {
            rho += kron(&sig[i], &sig[j]) * c64(f.beta[(i, j)], 0.0);
        }
    }
    rho
}

/// SU(2) preimage of a rotation: `W†σ_iW = Σ_j o_ij σ_j`.
///
/// Conjugating a state by `W1⊗W2` with `W1 = lift(O)`, `W2 = lift(P)` moves
/// its Pauli form by `(O, P)`. The sign of `W` is fixed so its largest-modulus
/// entry has nonnegative real part.
pub fn lift_rotation_to_qubit(o: &RealMatrix3) -> Result<ComplexMatrix2> {
    let defect = rotation_defect(o);
    if defect > TOLERANCES.rotation || !defect.is_finite() {
        return Err(Error::NotARotation { defect });
    }
    let q = UnitQuaternion::from_rotation_matrix(&Rotation3::from_matrix_unchecked(*o));
    let (w, x, y, z) = (q.w, q.i, q.j, q.k);
    // w·1 - i(xσx + yσy + zσz)
    let mut u = ComplexMatrix2::new(c64(w, -z), c64(-y, -x), c64(y, -x), c64(w, z));
    if !leading_entry_positive(&u) {
        u = -u;
    }
    Ok(u)
}
