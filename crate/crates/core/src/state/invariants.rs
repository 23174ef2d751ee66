use nalgebra::Vector3;

use super::PauliForm;
use crate::linalg::RealMatrix3;

/// Indices compared by value.
pub const VALUE_INDICES: [usize; 12] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 13, 14];
/// Indices compared by sign only.
pub const SIGN_INDICES: [usize; 6] = [10, 11, 15, 16, 17, 18];

/// The 18 polynomial invariants, stored 0-based; use [`StateInvariants::get`] for 1-based access.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateInvariants {
    pub i: [f64; 18],
}

fn sign_with_deadzone(x: f64, tol: f64) -> i8 {
    if x.abs() <= tol {
        0
    } else if x > 0.0 {
        1
    } else {
        -1
    }
}

impl StateInvariants {
    /// `I_k` for `k` in `1..=18`.
    pub fn get(&self, k: usize) -> f64 {
        self.i[k - 1]
    }

    /// Whether `I_k` agrees under the comparator used by [`states_equivalent`].
    pub fn agrees_at(&self, other: &Self, k: usize, tol: f64) -> bool {
        let (a, b) = (self.get(k), other.get(k));
        if SIGN_INDICES.contains(&k) {
            sign_with_deadzone(a, tol) == sign_with_deadzone(b, tol)
        } else {
            (a - b).abs() <= tol
        }
    }

    /// 1-based indices at which the two invariant vectors disagree.
    pub fn differing(&self, other: &Self, tol: f64) -> Vec<usize> {
        (1..=18).filter(|&k| !self.agrees_at(other, k, tol)).collect()
    }
}

fn triple(a: &Vector3<f64>, b: &Vector3<f64>, c: &Vector3<f64>) -> f64 {
    a.dot(&b.cross(c))
}

fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

fn epsilon_contraction(s: &Vector3<f64>, p: &Vector3<f64>, b: &RealMatrix3) -> f64 {
    let mut total = 0.0;
    for i in 0..3 {
        for l in 0..3 {
            let sp = s[i] * p[l];
            if sp == 0.0 {
                continue;
            }
            for j in 0..3 {
                for k in 0..3 {
                    let e1 = levi_civita(i, j, k);
                    if e1 == 0.0 {
                        continue;
                    }
                    for m in 0..3 {
                        for n in 0..3 {
                            let e2 = levi_civita(l, m, n);
                            if e2 != 0.0 {
                                total += e1 * e2 * sp * b[(j, m)] * b[(k, n)];
                            }
                        }
                    }
                }
            }
        }
    }
    total
}

/// Evaluates the 18 invariant polynomials. Row vectors multiply from the
/// left, so `sβ` is the vector `βᵀs`.
pub fn invariants18(f: &PauliForm) -> StateInvariants {
    let (s, p, b) = (&f.s, &f.p, &f.beta);
    let bt = b.transpose();
    let bbt = b * bt;
    let btb = bt * b;

    let s_b = bt * s;
    let s_bbt = bbt * s;
    let s_bbt2 = bbt * s_bbt;
    let b_p = b * p;
    let btb_p = btb * p;
    let btb2_p = btb * btb_p;
    let s_bbtb = bt * s_bbt;
    let bbtb_p = bbt * b_p;

    StateInvariants {
        i: [
            b.determinant(),
            btb.trace(),
            (btb * btb).trace(),
            s.norm_squared(),
            s_b.norm_squared(),
            s_bbt.norm_squared(),
            p.norm_squared(),
            b_p.norm_squared(),
            btb_p.norm_squared(),
            triple(s, &s_bbt, &s_bbt2),
            triple(p, &btb_p, &btb2_p),
            s.dot(&b_p),
            s.dot(&bbtb_p),
            epsilon_contraction(s, p, b),
            triple(s, &s_bbt, &b_p),
            triple(&s_b, p, &btb_p),
            triple(&s_b, &s_bbtb, p),
            triple(s, &b_p, &bbtb_p),
        ],
    }
}

/// Local equivalence of two states: values of `I1..I9, I12..I14` within `tol`
/// and matching signs of `I10, I11, I15..I18`, where `|I| ≤ tol` has sign 0.
pub fn states_equivalent(a: &PauliForm, b: &PauliForm, tol: f64) -> bool {
    let (ia, ib) = (invariants18(a), invariants18(b));
    (1..=18).all(|k| ia.agrees_at(&ib, k, tol))
}
