use nalgebra::Vector3;

use super::PauliForm;
use crate::error::{Error, Result};
use crate::linalg::RealMatrix3;

/// Indices for which [`fixture_pair`] is defined.
pub const FIXTURE_INDICES: std::ops::RangeInclusive<usize> = 10..=18;

/// Comparator tolerance at which every fixture pair separates: the agreeing
/// invariants coincide to ~1e-25, the smallest distinguishing one is ~6e-14.
pub const FIXTURE_TOL: f64 = 1e-15;

const B1: f64 = 0.2;
const B2: f64 = 0.1;
const B3: f64 = 0.05;

fn spins(k: usize, sign: f64) -> (Vector3<f64>, Vector3<f64>) {
    let v = Vector3::new;
    let zero = Vector3::zeros();
    match k {
        10 => (v(1.0, 1.0, sign), zero),
        11 => (zero, v(1.0, 1.0, sign)),
        12 => (v(1.0, sign * B1.powi(3), 0.0), v(-sign * B2.powi(3), 1.0, 0.0)),
        13 => (v(1.0, sign * B1, 0.0), v(-sign * B2, 1.0, 0.0)),
        14 => (v(0.0, 0.0, 1.0), v(0.0, 0.0, sign)),
        15 => (v(0.0, 1.0, 1.0), v(sign, 0.0, 0.0)),
        16 => (v(sign, 0.0, 0.0), v(0.0, 1.0, 1.0)),
        17 => (v(1.0, 1.0, 0.0), v(0.0, 0.0, sign)),
        18 => (v(0.0, 0.0, sign), v(1.0, 1.0, 0.0)),
        _ => unreachable!(),
    }
}

/// Two inequivalent states whose invariants differ only at `I_k`, `k` in `10..=18`.
///
/// The correlation matrix is `diag(0.2, 0.1, 0.05)` for `k = 10, 11` and
/// `diag(0.2, 0.1, 0)` otherwise. Both members are then mixed with the
/// maximally mixed state by the same factor `2^-n`, the smallest `n` making
/// both positive semidefinite. All invariants are homogeneous, so this keeps
/// the pattern of (dis)agreement.
pub fn fixture_pair(k: usize) -> Result<(PauliForm, PauliForm)> {
    if !FIXTURE_INDICES.contains(&k) {
        return Err(Error::BadIndex(k));
    }
    let b3 = if k <= 11 { B3 } else { 0.0 };
    let beta = RealMatrix3::from_diagonal(&Vector3::new(B1, B2, b3));
    let make = |sign: f64| {
        let (s, p) = spins(k, sign);
        PauliForm::new(s, p, beta)
    };
    let (mut a, mut b) = (make(1.0), make(-1.0));
    while a.min_eigenvalue() < 0.0 || b.min_eigenvalue() < 0.0 {
        a = a.scaled(0.5);
        b = b.scaled(0.5);
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{invariants18, states_equivalent};

    #[test]
    fn bad_index() {
        assert!(matches!(fixture_pair(9), Err(Error::BadIndex(9))));
        assert!(matches!(fixture_pair(19), Err(Error::BadIndex(19))));
    }

    #[test]
    fn each_fixture_differs_only_at_its_index() {
        for k in FIXTURE_INDICES {
            let (a, b) = fixture_pair(k).unwrap();
            assert!(a.min_eigenvalue() >= -1e-10 && b.min_eigenvalue() >= -1e-10);
            let (ia, ib) = (invariants18(&a), invariants18(&b));
            for j in (1..=18).filter(|&j| j != k) {
                assert!((ia.get(j) - ib.get(j)).abs() <= 1e-10);
            }
            // After the positivity scaling I10 and I11 are ~6e-14, so the
            // distinguishing sign is read with a tight dead zone.
            assert_eq!(ia.differing(&ib, FIXTURE_TOL), vec![k], "k = {k}");
            assert!(!states_equivalent(&a, &b, FIXTURE_TOL));
        }
    }

    #[test]
    fn fixture_14_closed_form() {
        let (a, b) = fixture_pair(14).unwrap();
        for f in [a, b] {
            let expected = 2.0 * f.s[2] * f.p[2] * f.beta[(0, 0)] * f.beta[(1, 1)];
            assert!((invariants18(&f).get(14) - expected).abs() < 1e-15);
        }
        assert!(invariants18(&a).get(14) * invariants18(&b).get(14) < 0.0);
    }

    #[test]
    fn fixture_12_closed_form() {
        let (a, b) = fixture_pair(12).unwrap();
        let lambda = a.s[0];
        let (b1, b2) = (a.beta[(0, 0)], a.beta[(1, 1)]);
        // Unscaled value b1 b2 (b1² - b2²) picks up λ³ from s, p and β.
        let unscaled = B1 * B2 * (B1 * B1 - B2 * B2);
        let (ia, ib) = (invariants18(&a), invariants18(&b));
        assert!((ia.get(12) - unscaled * lambda.powi(3)).abs() < 1e-15);
        assert!((ib.get(12) + unscaled * lambda.powi(3)).abs() < 1e-15);
        assert!(ia.get(13).abs() < 1e-15 && ib.get(13).abs() < 1e-15);
        assert!((b1 - B1 * lambda).abs() < 1e-15 && (b2 - B2 * lambda).abs() < 1e-15);
    }
}
