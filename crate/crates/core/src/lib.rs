//! Local-unitary invariants of two-qubit gates and mixed states.
//!
//! * [`gate_invariants`]: Bell-basis transform, the local invariants `G1`, `G2`,
//!   equivalence decisions with explicit single-qubit witnesses, perfect
//!   entangler tests and the pure-state entanglement form.
//! * [`state`]: Pauli decomposition of density matrices, the complete set of 18
//!   polynomial invariants, canonical forms with witness rotations, and the
//!   fixtures showing none of the sign-type invariants can be dropped.
//! * [`pulse`]: one-step synthesis of target gates from `exp(iHt)` for common
//!   coupling Hamiltonians, Josephson parameter solving and perfect-entangler
//!   windows.
//! * [`linalg`]: the fixed-size kernels underneath.
//!
//! All matrices use the standard basis order |00⟩, |01⟩, |10⟩, |11⟩.

pub mod error;
pub mod gate_invariants;
pub mod gates;
pub mod linalg;
pub mod pulse;
pub mod sample;
pub mod state;
pub mod tol;

pub use error::{Error, Result};
pub use gate_invariants::{
    ent_form, g1_g2, gates_equivalent, is_local_gate, is_perfect_entangler, makhlin_invariants,
    perfect_entangler_inequality, synthesize_witness, to_bell, EquivalenceWitness, GateInvariants,
};
pub use linalg::{
    eig_hermitian, expm_i_hermitian, kron, kron_factor, simdiag_commuting_symmetric, svd3_proper,
    ComplexMatrix2, ComplexMatrix4, LocalGatePair, RealMatrix3, RealMatrix4,
};
pub use pulse::{
    entangler_windows, evolve, invariant_curve, josephson_alpha, josephson_condition, josephson_time,
    solve_time, FamilyKind, HamiltonianFamily, JosephsonSolution, SynthesisResult, Verdict,
};
pub use state::{
    canonicalize_state, fixture_pair, invariants18, lift_rotation_to_qubit, pauli_compose,
    pauli_decompose, pauli_decompose_strict, states_equivalent, CaseTag, Canonical, PauliForm, StateInvariants,
    StateWitness,
};
pub use tol::{Tolerances, TOLERANCES};
