//! Pauli matrices, coupling Hamiltonians and the named two-qubit gates.
//!
//! Basis order is |00⟩, |01⟩, |10⟩, |11⟩ with the first qubit most significant.

use crate::linalg::{c64, kron, ComplexMatrix2, ComplexMatrix4};

pub fn pauli_x() -> ComplexMatrix2 {
    ComplexMatrix2::new(c64(0.0, 0.0), c64(1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0))
}

pub fn pauli_y() -> ComplexMatrix2 {
    ComplexMatrix2::new(c64(0.0, 0.0), c64(0.0, -1.0), c64(0.0, 1.0), c64(0.0, 0.0))
}

pub fn pauli_z() -> ComplexMatrix2 {
    ComplexMatrix2::new(c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(-1.0, 0.0))
}

/// σx, σy, σz in that order.
pub fn paulis() -> [ComplexMatrix2; 3] {
    [pauli_x(), pauli_y(), pauli_z()]
}

pub fn identity() -> ComplexMatrix4 {
    ComplexMatrix4::identity()
}

/// Controlled-NOT with the first qubit as control.
pub fn cnot() -> ComplexMatrix4 {
    permutation(&[0, 1, 3, 2])
}

pub fn swap() -> ComplexMatrix4 {
    permutation(&[0, 2, 1, 3])
}

/// The square root of SWAP with invariant `G1 = i/4`, i.e. `e^{iπ/4}·exp(iπ/4·SWAP)`
/// up to phase: `((1-i)/2)·1 + ((1+i)/2)·SWAP`.
///
/// The other root, `((1+i)/2)·1 + ((1-i)/2)·SWAP`, is its inverse and has `G1 = -i/4`.
pub fn sqrt_swap() -> ComplexMatrix4 {
    let a = c64(0.5, -0.5);
    let b = c64(0.5, 0.5);
    identity() * a + swap() * b
}

/// Looks up one of the built-in gate names: `identity`, `cnot`, `swap`, `sqrt-swap`.
pub fn named(name: &str) -> Option<ComplexMatrix4> {
    match name {
        "identity" => Some(identity()),
        "cnot" => Some(cnot()),
        "swap" => Some(swap()),
        "sqrt-swap" => Some(sqrt_swap()),
        _ => None,
    }
}

pub const NAMED_GATES: [&str; 4] = ["identity", "cnot", "swap", "sqrt-swap"];

fn permutation(image: &[usize; 4]) -> ComplexMatrix4 {
    let mut m = ComplexMatrix4::zeros();
    for (col, &row) in image.iter().enumerate() {
        m[(row, col)] = c64(1.0, 0.0);
    }
    m
}

/// `¼ σ¹·σ²`.
pub fn heisenberg_coupling() -> ComplexMatrix4 {
    let [x, y, z] = paulis();
    (kron(&x, &x) + kron(&y, &y) + kron(&z, &z)) * c64(0.25, 0.0)
}

/// `¼ (σx¹σx² + σy¹σy²)`.
pub fn xy_coupling() -> ComplexMatrix4 {
    let [x, y, _] = paulis();
    (kron(&x, &x) + kron(&y, &y)) * c64(0.25, 0.0)
}

/// `¼ σy¹σy²`.
pub fn yy_coupling() -> ComplexMatrix4 {
    let y = pauli_y();
    kron(&y, &y) * c64(0.25, 0.0)
}

/// Two Josephson charge qubits with `E_L = 1` and `E_J = alpha`:
/// `-½ α (σx¹ + σx²) + α² σy¹σy²`.
pub fn josephson_coupling(alpha: f64) -> ComplexMatrix4 {
    let one = ComplexMatrix2::identity();
    let x = pauli_x();
    let y = pauli_y();
    (kron(&x, &one) + kron(&one, &x)) * c64(-0.5 * alpha, 0.0) + kron(&y, &y) * c64(alpha * alpha, 0.0)
}
