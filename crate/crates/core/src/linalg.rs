//! Fixed-size dense kernels over 2×2 / 4×4 complex and 3×3 / 4×4 real matrices.
//!
//! Storage and the raw eigen/singular-value routines come from `nalgebra`; this
//! module adds the conventions the rest of the crate depends on (ascending
//! spectra, proper rotations with sign-fixed singular values, clustered
//! simultaneous diagonalization, phase-fixed Kronecker factoring).

use nalgebra::{DMatrix, Matrix2, Matrix3, Matrix4, SymmetricEigen, Vector3, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol::TOLERANCES;

pub type ComplexMatrix2 = Matrix2<Complex64>;
pub type ComplexMatrix4 = Matrix4<Complex64>;
pub type RealMatrix3 = Matrix3<f64>;
pub type RealMatrix4 = Matrix4<f64>;

/// Mixing weight of `x` into `y` when splitting an eigenvalue cluster of `x`.
/// Any irrational-looking constant works; it only has to avoid accidental
/// degeneracies of the combination.
const CLUSTER_MIX: f64 = 0.618_033_988_749_894_9;

#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Largest entry modulus of a complex 4×4 matrix.
pub fn max_abs4(m: &ComplexMatrix4) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs2(m: &ComplexMatrix2) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn unitarity_defect(u: &ComplexMatrix4) -> f64 {
    max_abs4(&(u.adjoint() * u - ComplexMatrix4::identity()))
}

pub fn hermiticity_defect(h: &ComplexMatrix4) -> f64 {
    max_abs4(&(h - h.adjoint()))
}

/// `OᵀO - 1` max entry combined with `|det O - 1|`.
pub fn rotation_defect(o: &RealMatrix3) -> f64 {
    let ortho = (o.transpose() * o - RealMatrix3::identity()).amax();
    ortho.max((o.determinant() - 1.0).abs())
}

pub fn ensure_unitary(u: &ComplexMatrix4) -> Result<()> {
    let defect = unitarity_defect(u);
    if defect > TOLERANCES.unitary || !defect.is_finite() {
        return Err(Error::NotUnitary { defect });
    }
    Ok(())
}

pub fn real_part(m: &ComplexMatrix4) -> RealMatrix4 {
    m.map(|z| z.re)
}

pub fn imag_part(m: &ComplexMatrix4) -> RealMatrix4 {
    m.map(|z| z.im)
}

pub fn complexify(m: &RealMatrix4) -> ComplexMatrix4 {
    m.map(|x| c64(x, 0.0))
}

/// Kronecker product; block `(i, j)` of the result is `a[(i, j)] * b`.
pub fn kron(a: &ComplexMatrix2, b: &ComplexMatrix2) -> ComplexMatrix4 {
    ComplexMatrix4::from_fn(|r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

/// Eigendecomposition of a Hermitian 4×4 matrix with eigenvalues ascending.
///
/// Returns `(λ, V)` with `h·V = V·diag(λ)` and `V` unitary.
pub fn eig_hermitian(h: &ComplexMatrix4) -> Result<(Vector4<f64>, ComplexMatrix4)> {
    let defect = hermiticity_defect(h);
    if defect > TOLERANCES.hermitian || !defect.is_finite() {
        return Err(Error::NotHermitian { defect });
    }
    let sym = (h + h.adjoint()) * c64(0.5, 0.0);
    let eig = SymmetricEigen::new(sym);
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = Vector4::from_fn(|i, _| eig.eigenvalues[order[i]]);
    let vectors = ComplexMatrix4::from_fn(|r, c| eig.eigenvectors[(r, order[c])]);
    Ok((values, vectors))
}

/// `exp(i·h·t)` for Hermitian `h`, computed spectrally.
pub fn expm_i_hermitian(h: &ComplexMatrix4, t: f64) -> Result<ComplexMatrix4> {
    let (values, vectors) = eig_hermitian(h)?;
    let phases = ComplexMatrix4::from_diagonal(&values.map(|l| Complex64::from_polar(1.0, l * t)));
    Ok(vectors * phases * vectors.adjoint())
}

/// Singular value decomposition `b = o·diag(d)·pᵀ` with `o`, `p` proper rotations.
#[derive(Debug, Clone, PartialEq)]
pub struct ProperSvd {
    pub o: RealMatrix3,
    pub d: Vector3<f64>,
    pub p: RealMatrix3,
}

impl ProperSvd {
    pub fn reconstruct(&self) -> RealMatrix3 {
        self.o * RealMatrix3::from_diagonal(&self.d) * self.p.transpose()
    }
}

/// SVD of a real 3×3 matrix restricted to proper rotations.
///
/// `|d1| ≥ |d2| ≥ |d3|`; all entries are nonnegative when `det b ≥ 0` and all are
/// nonpositive when `det b < 0`.
pub fn svd3_proper(b: &RealMatrix3) -> ProperSvd {
    if b.iter().all(|&x| x == 0.0) {
        return ProperSvd {
            o: RealMatrix3::identity(),
            d: Vector3::zeros(),
            p: RealMatrix3::identity(),
        };
    }
    let svd = b.svd(true, true);
    let u = svd.u.expect("requested U");
    let v = svd.v_t.expect("requested Vᵀ").transpose();
    let sv = svd.singular_values;

    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| sv[b].total_cmp(&sv[a]));
    let mut o = RealMatrix3::from_fn(|r, c| u[(r, order[c])]);
    let mut p = RealMatrix3::from_fn(|r, c| v[(r, order[c])]);
    let mut d = Vector3::from_fn(|i, _| sv[order[i]]);

    if o.determinant() < 0.0 {
        o.column_mut(2).neg_mut();
        d[2] = -d[2];
    }
    if p.determinant() < 0.0 {
        p.column_mut(2).neg_mut();
        d[2] = -d[2];
    }
    // det b < 0 shows up as a negative smallest entry; move the sign onto all three.
    if d[2] < 0.0 {
        o.column_mut(0).neg_mut();
        o.column_mut(1).neg_mut();
        d[0] = -d[0];
        d[1] = -d[1];
    }
    ProperSvd { o, d, p }
}

/// Common real orthogonal eigenbasis of two commuting real symmetric matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct SimultaneousDiagonalization {
    /// Columns are the shared eigenvectors; `det = +1`.
    pub basis: RealMatrix4,
    pub dx: Vector4<f64>,
    pub dy: Vector4<f64>,
}

/// Diagonalizes `x` and `y` in one real orthogonal basis.
///
/// `x` is diagonalized first; inside each cluster of nearly equal eigenvalues of
/// `x` the restriction of `y` (lightly mixed with the restriction of `x`) is
/// diagonalized to pick the basis.
pub fn simdiag_commuting_symmetric(
    x: &RealMatrix4,
    y: &RealMatrix4,
) -> Result<SimultaneousDiagonalization> {
    let defect = (x * y - y * x).amax();
    if defect > TOLERANCES.commuting || !defect.is_finite() {
        return Err(Error::NotCommuting { defect });
    }
    let xs = (x + x.transpose()) * 0.5;
    let ys = (y + y.transpose()) * 0.5;

    let eig = SymmetricEigen::new(xs);
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut basis = RealMatrix4::from_fn(|r, c| eig.eigenvectors[(r, order[c])]);
    let sorted: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();

    let mut start = 0;
    while start < 4 {
        let mut end = start + 1;
        while end < 4 && sorted[end] - sorted[end - 1] <= TOLERANCES.eigen_cluster {
            end += 1;
        }
        if end - start > 1 {
            let k = end - start;
            let vc = DMatrix::from_fn(4, k, |r, c| basis[(r, start + c)]);
            let yc = vc.transpose() * DMatrix::from_fn(4, 4, |r, c| ys[(r, c)]) * &vc;
            let xc = vc.transpose() * DMatrix::from_fn(4, 4, |r, c| xs[(r, c)]) * &vc;
            let mixed = &yc + &xc * CLUSTER_MIX;
            let mixed = (&mixed + mixed.transpose()) * 0.5;
            let inner = SymmetricEigen::new(mixed);
            let mut inner_order: Vec<usize> = (0..k).collect();
            inner_order.sort_by(|&a, &b| inner.eigenvalues[a].total_cmp(&inner.eigenvalues[b]));
            let rotated = &vc * &inner.eigenvectors;
            for (c, &src) in inner_order.iter().enumerate() {
                for r in 0..4 {
                    basis[(r, start + c)] = rotated[(r, src)];
                }
            }
        }
        start = end;
    }

    if basis.determinant() < 0.0 {
        basis.column_mut(3).neg_mut();
    }
    let dx = (basis.transpose() * xs * basis).diagonal();
    let dy = (basis.transpose() * ys * basis).diagonal();
    Ok(SimultaneousDiagonalization { basis, dx, dy })
}

/// A local two-qubit operation `e^{iφ}·W1⊗W2` with `W1, W2 ∈ SU(2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalGatePair {
    pub w1: ComplexMatrix2,
    pub w2: ComplexMatrix2,
    pub phase: f64,
}

impl LocalGatePair {
    pub fn identity() -> Self {
        Self {
            w1: ComplexMatrix2::identity(),
            w2: ComplexMatrix2::identity(),
            phase: 0.0,
        }
    }

    /// `e^{iφ}·W1⊗W2`.
    pub fn to_matrix(&self) -> ComplexMatrix4 {
        kron(&self.w1, &self.w2) * Complex64::from_polar(1.0, self.phase)
    }

    /// `W1⊗W2` without the phase.
    pub fn product(&self) -> ComplexMatrix4 {
        kron(&self.w1, &self.w2)
    }
}

/// True when the largest-modulus entry lies in the right half-plane
/// (or on the positive imaginary axis).
pub(crate) fn leading_entry_positive(w: &ComplexMatrix2) -> bool {
    let lead = w
        .iter()
        .copied()
        .fold(c64(0.0, 0.0), |best, z| if z.norm() > best.norm() + 1e-12 { z } else { best });
    lead.re > 1e-12 || (lead.re.abs() <= 1e-12 && lead.im >= 0.0)
}

/// Normalizes a 2×2 matrix proportional to an SU(2) element so its determinant is one.
fn to_special(a: &ComplexMatrix2) -> ComplexMatrix2 {
    let det = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
    a / det.sqrt()
}

/// Factors a unitary into `e^{iφ}·W1⊗W2` through the rank-one approximation of
/// its block rearrangement.
///
/// Conventions: the largest-modulus entry of `W1` has nonnegative real part,
/// and `φ ∈ [0, π)` with any remaining sign carried by `W2`.
pub fn kron_factor(u: &ComplexMatrix4) -> Result<LocalGatePair> {
    ensure_unitary(u)?;
    // Row index: entry (i1, j1) of the first factor; column: entry (i2, j2) of the second.
    let rearranged = ComplexMatrix4::from_fn(|row, col| {
        let (i1, j1) = (row / 2, row % 2);
        let (i2, j2) = (col / 2, col % 2);
        u[(2 * i1 + i2, 2 * j1 + j2)]
    });
    // Leading left singular vector from R·Rᴴ; the complex SVD routine is not
    // reliable on these exactly rank-one inputs.
    let gram = rearranged * rearranged.adjoint();
    let (values, vectors) = eig_hermitian(&gram)?;
    let sigma2 = values[2].max(0.0).sqrt();
    if sigma2 > TOLERANCES.kron_rank_one {
        return Err(Error::NotAProduct { sigma2 });
    }
    let x = vectors.column(3).into_owned();
    let y = x.adjoint() * rearranged;
    let sigma1 = y.norm();
    let scale = c64(sigma1.sqrt(), 0.0);
    let a = ComplexMatrix2::from_fn(|i, j| x[2 * i + j] * scale);
    let b = ComplexMatrix2::from_fn(|i, j| y[2 * i + j] / scale);
    let mut w1 = to_special(&a);
    let mut w2 = to_special(&b);
    if !leading_entry_positive(&w1) {
        w1 = -w1;
        w2 = -w2;
    }

    let overlap = (kron(&w1, &w2).adjoint() * u).trace() / c64(4.0, 0.0);
    let mut phase = overlap.arg();
    // Bring φ into [0, π); a shift by π flips the sign of W2.
    let eps = 1e-12;
    if phase < -eps {
        phase += std::f64::consts::PI;
        w2 = -w2;
    } else if phase > std::f64::consts::PI - eps {
        phase -= std::f64::consts::PI;
        w2 = -w2;
    }
    let phase = phase.max(0.0);

    let pair = LocalGatePair { w1, w2, phase };
    let residual = max_abs4(&(pair.to_matrix() - u));
    if residual > TOLERANCES.unitary {
        return Err(Error::FactorizationFailure(format!(
            "rank-one residual {residual:.3e} exceeds {:.1e}",
            TOLERANCES.unitary
        )));
    }
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates;
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let id = ComplexMatrix2::identity();
        assert_eq!(kron(&id, &id), ComplexMatrix4::identity());
    }

    #[test]
    fn kron_of_sigma_x_is_antidiagonal() {
        let x = gates::pauli_x();
        let k = kron(&x, &x);
        for r in 0..4 {
            for c in 0..4 {
                let expected = if r + c == 3 { 1.0 } else { 0.0 };
                assert_eq!(k[(r, c)], c64(expected, 0.0));
            }
        }
    }

    #[test]
    fn kron_of_special_unitaries_is_special_unitary() {
        let mut rng = rng();
        for _ in 0..100 {
            let k = kron(&sample::random_su2(&mut rng), &sample::random_su2(&mut rng));
            assert!(unitarity_defect(&k) < 1e-12);
            assert!((k.determinant() - c64(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn eig_of_diagonal_and_zero() {
        let z1 = kron(&gates::pauli_z(), &ComplexMatrix2::identity());
        let (vals, _) = eig_hermitian(&z1).unwrap();
        assert_eq!(vals, Vector4::new(-1.0, -1.0, 1.0, 1.0));

        let (vals, vecs) = eig_hermitian(&ComplexMatrix4::zeros()).unwrap();
        assert_eq!(vals, Vector4::zeros());
        assert!(unitarity_defect(&vecs) < 1e-14);
    }

    #[test]
    fn eig_of_heisenberg_splits_singlet_and_triplet() {
        let h = gates::heisenberg_coupling();
        let (vals, vecs) = eig_hermitian(&h).unwrap();
        let expected = [-0.75, 0.25, 0.25, 0.25];
        for i in 0..4 {
            assert!((vals[i] - expected[i]).abs() < 1e-14);
        }
        let residual = h * vecs - vecs * ComplexMatrix4::from_diagonal(&vals.map(|l| c64(l, 0.0)));
        assert!(max_abs4(&residual) < 1e-14);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let mut m = ComplexMatrix4::zeros();
        m[(0, 1)] = c64(1.0, 0.0);
        assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn expm_basic_cases() {
        let h = gates::heisenberg_coupling();
        assert!(max_abs4(&(expm_i_hermitian(&h, 0.0).unwrap() - ComplexMatrix4::identity())) < 1e-14);

        let t = 0.37;
        let z1 = kron(&gates::pauli_z(), &ComplexMatrix2::identity());
        let u = expm_i_hermitian(&z1, t).unwrap();
        let e = Complex64::from_polar(1.0, t);
        let expected = ComplexMatrix4::from_diagonal(&Vector4::new(e, e, e.conj(), e.conj()));
        assert!(max_abs4(&(u - expected)) < 1e-14);
    }

    #[test]
    fn expm_output_is_unitary() {
        let mut rng = rng();
        for _ in 0..100 {
            let h = sample::random_hermitian4(&mut rng);
            let u = expm_i_hermitian(&h, 2.3).unwrap();
            assert!(unitarity_defect(&u) < 1e-9);
        }
    }

    #[test]
    fn svd3_zero_and_diagonal_cases() {
        let zero = svd3_proper(&RealMatrix3::zeros());
        assert_eq!(zero.d, Vector3::zeros());
        assert_eq!(zero.o, RealMatrix3::identity());
        assert_eq!(zero.p, RealMatrix3::identity());

        let b = RealMatrix3::from_diagonal(&Vector3::new(1.0, 2.0, 3.0));
        let s = svd3_proper(&b);
        assert!((s.d - Vector3::new(3.0, 2.0, 1.0)).amax() < 1e-12);
        assert!((s.reconstruct() - b).amax() < 1e-12);

        let b = RealMatrix3::from_diagonal(&Vector3::new(1.0, 2.0, -3.0));
        let s = svd3_proper(&b);
        assert!((s.d - Vector3::new(-3.0, -2.0, -1.0)).amax() < 1e-12);
        assert!((s.reconstruct() - b).amax() < 1e-12);
        assert!(rotation_defect(&s.o) < 1e-12 && rotation_defect(&s.p) < 1e-12);
    }

    #[test]
    fn simdiag_of_diagonal_pair_is_identity() {
        let x = RealMatrix4::from_diagonal(&Vector4::new(1.0, 2.0, 3.0, 4.0));
        let y = RealMatrix4::from_diagonal(&Vector4::new(-1.0, 0.5, 0.0, 2.0));
        let sd = simdiag_commuting_symmetric(&x, &y).unwrap();
        assert!((sd.basis.abs() - RealMatrix4::identity()).amax() < 1e-14);
        assert!((sd.dx - Vector4::new(1.0, 2.0, 3.0, 4.0)).amax() < 1e-14);
    }

    #[test]
    fn simdiag_of_sigma_x_blocks() {
        // Two σx-like blocks: eigenvectors at ±45 degrees inside each block.
        let mut x = RealMatrix4::zeros();
        x[(0, 1)] = 1.0;
        x[(1, 0)] = 1.0;
        x[(2, 3)] = 2.0;
        x[(3, 2)] = 2.0;
        let y = RealMatrix4::zeros();
        let sd = simdiag_commuting_symmetric(&x, &y).unwrap();
        let conj = sd.basis.transpose() * x * sd.basis;
        assert!((conj - RealMatrix4::from_diagonal(&sd.dx)).amax() < 1e-12);
        assert!((sd.dx - Vector4::new(-2.0, -1.0, 1.0, 2.0)).amax() < 1e-12);
        for v in sd.basis.column_iter() {
            let nonzero: Vec<f64> = v.iter().copied().filter(|a| a.abs() > 1e-9).collect();
            assert_eq!(nonzero.len(), 2);
            assert!(nonzero.iter().all(|a| (a.abs() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12));
        }
        assert!((sd.basis.determinant() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn simdiag_of_symmetric_unitary_has_unit_modulus_spectrum() {
        let mut rng = rng();
        for _ in 0..200 {
            let u = sample::random_unitary4(&mut rng);
            let u = u / u.determinant().powf(0.25);
            let b = crate::gate_invariants::to_bell(&u);
            let m = b.transpose() * b;
            let sd = simdiag_commuting_symmetric(&real_part(&m), &imag_part(&m)).unwrap();
            for i in 0..4 {
                assert!((sd.dx[i].powi(2) + sd.dy[i].powi(2) - 1.0).abs() < 1e-9);
            }
            let rx = sd.basis.transpose() * real_part(&m) * sd.basis;
            let ry = sd.basis.transpose() * imag_part(&m) * sd.basis;
            assert!((rx - RealMatrix4::from_diagonal(&sd.dx)).amax() < 1e-8);
            assert!((ry - RealMatrix4::from_diagonal(&sd.dy)).amax() < 1e-8);
        }
    }

    #[test]
    fn simdiag_rejects_noncommuting() {
        let mut x = RealMatrix4::zeros();
        x[(0, 1)] = 1.0;
        x[(1, 0)] = 1.0;
        let y = RealMatrix4::from_diagonal(&Vector4::new(1.0, 0.0, 0.0, 0.0));
        assert!(matches!(
            simdiag_commuting_symmetric(&x, &y),
            Err(Error::NotCommuting { .. })
        ));
    }

    #[test]
    fn kron_factor_identity() {
        let pair = kron_factor(&ComplexMatrix4::identity()).unwrap();
        assert!(max_abs2(&(pair.w1 - ComplexMatrix2::identity())) < 1e-12);
        assert!(max_abs2(&(pair.w2 - ComplexMatrix2::identity())) < 1e-12);
        assert!(pair.phase.abs() < 1e-12);
    }

    #[test]
    fn kron_factor_rejects_cnot() {
        assert!(matches!(kron_factor(&gates::cnot()), Err(Error::NotAProduct { .. })));
    }

    #[test]
    fn kron_factor_recovers_factors_up_to_joint_sign() {
        let mut rng = rng();
        for _ in 0..500 {
            let w1 = sample::random_su2(&mut rng);
            let w2 = sample::random_su2(&mut rng);
            let pair = kron_factor(&kron(&w1, &w2)).unwrap();
            assert!(pair.phase.abs() < 1e-9, "phase {}", pair.phase);
            let same = max_abs2(&(pair.w1 - w1)).max(max_abs2(&(pair.w2 - w2)));
            let flipped = max_abs2(&(pair.w1 + w1)).max(max_abs2(&(pair.w2 + w2)));
            assert!(same.min(flipped) < 1e-9);
        }
    }
}
