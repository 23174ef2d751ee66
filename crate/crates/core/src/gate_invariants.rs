//! Local-equivalence classification of two-qubit gates.
//!
//! In the Bell basis below, local gates with unit determinant are exactly the
//! real orthogonal matrices of SO(4). For a gate `M` with Bell form `M_B` the
//! symmetric unitary `m = M_Bᵀ M_B` changes only by orthogonal similarity under
//! local operations, so its spectrum (equivalently the pair `G1`, `G2`) labels
//! the local equivalence class.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    c64, complexify, ensure_unitary, imag_part, kron_factor, max_abs4, real_part,
    simdiag_commuting_symmetric, ComplexMatrix4, LocalGatePair, RealMatrix4,
};
use crate::tol::TOLERANCES;

/// Change-of-basis matrix whose columns are the Bell states
/// `(|00⟩+|11⟩)/√2`, `i(|01⟩+|10⟩)/√2`, `(|01⟩-|10⟩)/√2`, `i(|00⟩-|11⟩)/√2`.
pub fn bell_basis() -> ComplexMatrix4 {
    let s = FRAC_1_SQRT_2;
    let (o, r, i) = (c64(0.0, 0.0), c64(s, 0.0), c64(0.0, s));
    ComplexMatrix4::new(
        r, o, o, i, //
        o, i, r, o, //
        o, i, -r, o, //
        r, o, o, -i,
    )
}

/// `Q†·m·Q`.
pub fn to_bell(m: &ComplexMatrix4) -> ComplexMatrix4 {
    let q = bell_basis();
    q.adjoint() * m * q
}

/// `Q·m·Q†`, the inverse of [`to_bell`].
pub fn from_bell(m: &ComplexMatrix4) -> ComplexMatrix4 {
    let q = bell_basis();
    q * m * q.adjoint()
}

/// `M_Bᵀ·M_B`.
pub fn m_matrix(m: &ComplexMatrix4) -> ComplexMatrix4 {
    let b = to_bell(m);
    b.transpose() * b
}

/// Divides by the principal fourth root of the determinant.
pub fn normalize_determinant(m: &ComplexMatrix4) -> ComplexMatrix4 {
    m / m.determinant().powf(0.25)
}

/// Complete local-invariant label of a two-qubit gate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateInvariants {
    /// `tr²m / (16 det M)`.
    pub g1: Complex64,
    /// `(tr²m - tr m²) / (4 det M)`; real for every unitary.
    pub g2: f64,
    /// Eigenvalues of the determinant-normalized `m`, ordered by phase in `[0, 2π)`.
    pub spectrum: [Complex64; 4],
}

impl GateInvariants {
    pub fn phases(&self) -> [f64; 4] {
        self.spectrum.map(|z| z.arg().rem_euclid(TAU))
    }

    /// Largest circular gap between consecutive eigenphases of `m`.
    pub fn max_phase_gap(&self) -> f64 {
        max_circular_gap(&self.phases())
    }

    /// Zero lies in the convex hull of the spectrum of `m`.
    pub fn hull_contains_zero(&self) -> bool {
        self.max_phase_gap() <= PI + TOLERANCES.entangler_boundary
    }
}

pub(crate) fn max_circular_gap(phases: &[f64; 4]) -> f64 {
    let mut sorted = *phases;
    sorted.sort_by(f64::total_cmp);
    let wrap = sorted[0] + TAU - sorted[3];
    sorted.windows(2).map(|w| w[1] - w[0]).fold(wrap, f64::max)
}

/// Spectrum of a symmetric unitary, ordered by phase in `[0, 2π)`, together with
/// the real orthogonal eigenbasis (columns in the same order).
fn symmetric_unitary_eigen(m: &ComplexMatrix4) -> Result<([Complex64; 4], RealMatrix4)> {
    let sd = simdiag_commuting_symmetric(&real_part(m), &imag_part(m))?;
    let values: [Complex64; 4] = std::array::from_fn(|i| c64(sd.dx[i], sd.dy[i]));
    let mut order = [0usize, 1, 2, 3];
    let phase = |z: Complex64| z.arg().rem_euclid(TAU);
    order.sort_by(|&a, &b| phase(values[a]).total_cmp(&phase(values[b])));
    let spectrum = order.map(|i| values[i]);
    let basis = RealMatrix4::from_fn(|r, c| sd.basis[(r, order[c])]);
    Ok((spectrum, basis))
}

/// `G1` and `G2` alone, without the unitarity check.
pub fn g1_g2(m: &ComplexMatrix4) -> (Complex64, f64) {
    let det = m.determinant();
    let mm = m_matrix(m);
    let tr = mm.trace();
    let tr_sq = (mm * mm).trace();
    (tr * tr / (det * 16.0), ((tr * tr - tr_sq) / (det * 4.0)).re)
}

/// Local invariants `G1`, `G2` and the normalized spectrum of `m`.
pub fn makhlin_invariants(m: &ComplexMatrix4) -> Result<GateInvariants> {
    ensure_unitary(m)?;
    let (g1, g2) = g1_g2(m);
    let (spectrum, _) = symmetric_unitary_eigen(&m_matrix(&normalize_determinant(m)))?;
    Ok(GateInvariants { g1, g2, spectrum })
}

/// Local equivalence test: `|ΔG1| ≤ tol` and `|ΔG2| ≤ tol`.
pub fn gates_equivalent(a: &ComplexMatrix4, b: &ComplexMatrix4, tol: f64) -> Result<bool> {
    let ia = makhlin_invariants(a)?;
    let ib = makhlin_invariants(b)?;
    Ok((ia.g1 - ib.g1).norm() <= tol && (ia.g2 - ib.g2).abs() <= tol)
}

/// Unit-determinant local gates are real orthogonal in the Bell basis.
///
/// The global phase is removed using the phase of the largest Bell-basis entry.
pub fn is_local_gate(m: &ComplexMatrix4) -> Result<bool> {
    ensure_unitary(m)?;
    let b = to_bell(m);
    let lead = b
        .iter()
        .copied()
        .fold(c64(0.0, 0.0), |best, z| if z.norm() > best.norm() { z } else { best });
    let b = b * Complex64::from_polar(1.0, -lead.arg());
    let tol = TOLERANCES.local_gate;
    if imag_part(&b).amax() > tol {
        return Ok(false);
    }
    let o = real_part(&b);
    let ortho = (o.transpose() * o - RealMatrix4::identity()).amax();
    Ok(ortho <= tol && (o.determinant() - 1.0).abs() <= tol)
}

/// Single-qubit gates relating two locally equivalent gates:
/// `L = e^{i·phase} · left · M · right`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceWitness {
    /// Applied after `M`. Its own `phase` field is zero.
    pub left: LocalGatePair,
    /// Applied before `M`. Its own `phase` field is zero.
    pub right: LocalGatePair,
    /// Global phase in `[0, 2π)`.
    pub phase: f64,
}

impl EquivalenceWitness {
    pub fn apply(&self, m: &ComplexMatrix4) -> ComplexMatrix4 {
        self.left.product() * m * self.right.product() * Complex64::from_polar(1.0, self.phase)
    }

    pub fn residual(&self, m: &ComplexMatrix4, l: &ComplexMatrix4) -> f64 {
        max_abs4(&(self.apply(m) - l))
    }
}

/// Greedy pairing of two spectra: `perm[j]` is the index in `target` matched to `source[j]`.
fn pair_spectra(source: &[Complex64; 4], target: &[Complex64; 4], tol: f64) -> Option<[usize; 4]> {
    let mut used = [false; 4];
    let mut perm = [0usize; 4];
    for (j, z) in source.iter().enumerate() {
        let best = (0..4)
            .filter(|&i| !used[i])
            .min_by(|&a, &b| (target[a] - z).norm().total_cmp(&(target[b] - z).norm()))?;
        if (target[best] - z).norm() > tol {
            return None;
        }
        used[best] = true;
        perm[j] = best;
    }
    Some(perm)
}

/// Constructs local gates carrying `m` into `l`.
///
/// Both gates are normalized to unit determinant; `i^k·M` is tried for
/// `k = 0..4` until the spectra of the two `m` matrices pair up. With `O_M`,
/// `O_L` the real eigenbases, `O = O_M·O_Lᵀ` (sign-fixed to `det O = 1`)
/// satisfies `l = Oᵀ m O`, and `O' = L_B·Oᵀ·M_B⁻¹` is real orthogonal, so
/// `L_B = O'·M_B·O` with both factors local.
pub fn synthesize_witness(m: &ComplexMatrix4, l: &ComplexMatrix4) -> Result<EquivalenceWitness> {
    if !gates_equivalent(m, l, TOLERANCES.gate_equivalence)? {
        return Err(Error::NotEquivalent);
    }
    let m1 = normalize_determinant(m);
    let l1 = normalize_determinant(l);
    let lb = to_bell(&l1);
    let (spec_l, basis_l) = symmetric_unitary_eigen(&(lb.transpose() * lb))?;

    let mut best_residual = f64::INFINITY;
    let mut last_error = None;
    for k in 0..4 {
        let mk = m1 * c64(0.0, 1.0).powu(k);
        let mb = to_bell(&mk);
        let (spec_m, basis_m) = symmetric_unitary_eigen(&(mb.transpose() * mb))?;
        let Some(perm) = pair_spectra(&spec_m, &spec_l, TOLERANCES.spectrum_pairing) else {
            continue;
        };
        let mut paired_l = RealMatrix4::from_fn(|r, c| basis_l[(r, perm[c])]);
        if (basis_m * paired_l.transpose()).determinant() < 0.0 {
            paired_l.column_mut(0).neg_mut();
        }
        let o = basis_m * paired_l.transpose();
        let o_prime = lb * complexify(&o.transpose()) * mb.adjoint();

        let factors = kron_factor(&from_bell(&o_prime)).and_then(|left| {
            kron_factor(&from_bell(&complexify(&o))).map(|right| (left, right))
        });
        let (mut left, mut right) = match factors {
            Ok(pair) => pair,
            Err(e) => {
                last_error = Some(e);
                continue;
            }
        };
        left.phase = 0.0;
        right.phase = 0.0;
        let bare = left.product() * m * right.product();
        let phase = (bare.adjoint() * l).trace().arg().rem_euclid(TAU);
        let witness = EquivalenceWitness { left, right, phase };
        let residual = witness.residual(m, l);
        if residual <= TOLERANCES.witness_residual {
            return Ok(witness);
        }
        best_residual = best_residual.min(residual);
    }
    Err(Error::FactorizationFailure(match last_error {
        Some(e) if !best_residual.is_finite() => e.to_string(),
        _ if best_residual.is_finite() => format!("witness residual {best_residual:.3e}"),
        _ => "spectra of m could not be paired".to_string(),
    }))
}

/// Perfect entangler test: zero lies in the convex hull of the eigenvalues of `m`.
///
/// Points on the unit circle exclude zero from their hull exactly when some
/// circular gap exceeds π; a gap of exactly π (CNOT, √SWAP) counts as perfect.
pub fn is_perfect_entangler(m: &ComplexMatrix4) -> Result<bool> {
    Ok(makhlin_invariants(m)?.hull_contains_zero())
}

/// The invariant-form perfect entangler condition
/// `sin²γ ≤ 4|G1| ≤ 1` and `cos γ (cos γ - G2) ≥ 0` with `G1 = |G1| e^{iγ}`.
///
/// When `|G1|` is below `1e-12` the phase γ is undefined and the verdict of the
/// hull test on the stored spectrum is returned instead.
pub fn perfect_entangler_inequality(inv: &GateInvariants) -> bool {
    let tol = TOLERANCES.entangler_boundary;
    let r = inv.g1.norm();
    if r <= 1e-12 {
        return inv.hull_contains_zero();
    }
    let gamma = inv.g1.arg();
    let (s, c) = gamma.sin_cos();
    s * s <= 4.0 * r + tol && 4.0 * r <= 1.0 + tol && c * (c - inv.g2) >= -tol
}

/// `Ent ψ = ψ00·ψ11 - ψ01·ψ10` for a normalized two-qubit state.
pub fn ent_form(psi: &[Complex64; 4]) -> Result<Complex64> {
    let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > TOLERANCES.normalization {
        return Err(Error::NotNormalized { norm });
    }
    Ok(psi[0] * psi[3] - psi[1] * psi[2])
}
