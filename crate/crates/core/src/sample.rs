//! Random samplers for tests, benchmarks and desk-scale property checks.

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{c64, kron, ComplexMatrix2, ComplexMatrix4, RealMatrix3};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Haar-random element of SU(2) from a uniformly random unit quaternion.
pub fn random_su2<R: Rng + ?Sized>(rng: &mut R) -> ComplexMatrix2 {
    let q: [f64; 4] = std::array::from_fn(|_| gaussian(rng));
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let [a, b, c, d] = q.map(|x| x / n);
    ComplexMatrix2::new(c64(a, b), c64(c, d), c64(-c, d), c64(a, -b))
}

/// Haar-random local gate `W1⊗W2` with unit determinant.
pub fn random_local<R: Rng + ?Sized>(rng: &mut R) -> ComplexMatrix4 {
    kron(&random_su2(rng), &random_su2(rng))
}

/// Haar-random element of U(4) (QR of a complex Ginibre matrix with phase fix).
pub fn random_unitary4<R: Rng + ?Sized>(rng: &mut R) -> ComplexMatrix4 {
    let g = ComplexMatrix4::from_fn(|_, _| c64(gaussian(rng), gaussian(rng)));
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    let phases = ComplexMatrix4::from_diagonal(&r.diagonal().map(|z| {
        if z.norm() > 0.0 {
            z / z.norm()
        } else {
            Complex64::new(1.0, 0.0)
        }
    }));
    q * phases
}

/// Uniformly random proper rotation of R³.
pub fn random_rotation3<R: Rng + ?Sized>(rng: &mut R) -> RealMatrix3 {
    let q: [f64; 4] = std::array::from_fn(|_| gaussian(rng));
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let [w, x, y, z] = q.map(|v| v / n);
    Matrix3::new(
        1.0 - 2.0 * (y * y + z * z),
        2.0 * (x * y - w * z),
        2.0 * (x * z + w * y),
        2.0 * (x * y + w * z),
        1.0 - 2.0 * (x * x + z * z),
        2.0 * (y * z - w * x),
        2.0 * (x * z - w * y),
        2.0 * (y * z + w * x),
        1.0 - 2.0 * (x * x + y * y),
    )
}

/// Random Hermitian matrix with Gaussian entries.
pub fn random_hermitian4<R: Rng + ?Sized>(rng: &mut R) -> ComplexMatrix4 {
    let g = ComplexMatrix4::from_fn(|_, _| c64(gaussian(rng), gaussian(rng)));
    (g + g.adjoint()) * c64(0.5, 0.0)
}

/// Vector with independent entries uniform in `[-scale, scale]`.
pub fn random_vector3<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Vector3<f64> {
    Vector3::from_fn(|_, _| rng.random_range(-scale..=scale))
}

/// Normalized random pure state of two qubits.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R) -> [Complex64; 4] {
    let v: [Complex64; 4] = std::array::from_fn(|_| c64(gaussian(rng), gaussian(rng)));
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.map(|z| z / n)
}
