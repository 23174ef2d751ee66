//! One-step gate synthesis from a fixed coupling: which local classes lie on
//! the trajectory `t ↦ exp(iHt)`, and at what times.
//!
//! Units: `ħ = 1`, energies in units of the Josephson `E_L`, times in `1/E_L`.

use std::f64::consts::PI;

use nalgebra::Vector4;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gate_invariants::{
    g1_g2, gates_equivalent, is_local_gate, makhlin_invariants, to_bell, GateInvariants,
};
use crate::gates;
use crate::linalg::{c64, eig_hermitian, ensure_unitary, hermiticity_defect, ComplexMatrix4};
use crate::tol::TOLERANCES;

const GRID_POINTS: usize = 10_000;
const REFINE_BELOW: f64 = 1e-4;
const ROOT_MISMATCH: f64 = 1e-10;
const GOLDEN_WIDTH: f64 = 1e-12;
const EDGE_WIDTH: f64 = 1e-9;
const JOSEPHSON_GRID: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Heisenberg,
    Xy,
    Yy,
    Josephson,
    Custom,
}

impl FamilyKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyKind::Heisenberg => "heisenberg",
            FamilyKind::Xy => "xy",
            FamilyKind::Yy => "yy",
            FamilyKind::Josephson => "josephson",
            FamilyKind::Custom => "custom",
        }
    }
}

/// A coupling Hamiltonian together with its eigendecomposition.
#[derive(Debug, Clone)]
pub struct HamiltonianFamily {
    pub kind: FamilyKind,
    pub matrix: ComplexMatrix4,
    /// `E_J / E_L` for the Josephson family.
    pub alpha: Option<f64>,
    values: Vector4<f64>,
    vectors: ComplexMatrix4,
}

impl HamiltonianFamily {
    fn build(kind: FamilyKind, matrix: ComplexMatrix4, alpha: Option<f64>) -> Result<Self> {
        let defect = hermiticity_defect(&matrix);
        if defect > TOLERANCES.hermitian || !defect.is_finite() {
            return Err(Error::NotHermitian { defect });
        }
        let (values, vectors) = eig_hermitian(&matrix)?;
        Ok(Self { kind, matrix, alpha, values, vectors })
    }

    /// `¼ σ¹·σ²`.
    pub fn heisenberg() -> Self {
        Self::build(FamilyKind::Heisenberg, gates::heisenberg_coupling(), None).expect("Hermitian")
    }

    /// `¼ (σx¹σx² + σy¹σy²)`.
    pub fn xy() -> Self {
        Self::build(FamilyKind::Xy, gates::xy_coupling(), None).expect("Hermitian")
    }

    /// `¼ σy¹σy²`.
    pub fn yy() -> Self {
        Self::build(FamilyKind::Yy, gates::yy_coupling(), None).expect("Hermitian")
    }

    /// `-½α(σx¹ + σx²) + α² σy¹σy²`.
    pub fn josephson(alpha: f64) -> Self {
        Self::build(FamilyKind::Josephson, gates::josephson_coupling(alpha), Some(alpha)).expect("Hermitian")
    }

    pub fn custom(matrix: ComplexMatrix4) -> Result<Self> {
        Self::build(FamilyKind::Custom, matrix, None)
    }

    /// Looks up a built-in family; `alpha` is required for `josephson`.
    pub fn named(name: &str, alpha: Option<f64>) -> Option<Self> {
        match (name, alpha) {
            ("heisenberg", _) => Some(Self::heisenberg()),
            ("xy", _) => Some(Self::xy()),
            ("yy", _) => Some(Self::yy()),
            ("josephson", Some(a)) => Some(Self::josephson(a)),
            _ => None,
        }
    }

    fn propagator(&self, t: f64) -> ComplexMatrix4 {
        let phases = self.values.map(|l| Complex64::from_polar(1.0, l * t));
        let mut scaled = self.vectors;
        for (j, mut col) in scaled.column_iter_mut().enumerate() {
            col *= phases[j];
        }
        scaled * self.vectors.adjoint()
    }

    /// `(G1, G2)` and their time derivatives at `t`.
    fn curve_with_derivative(&self, t: f64) -> ([Complex64; 2], [Complex64; 2]) {
        let u = self.propagator(t);
        let ub = to_bell(&u);
        let dub = to_bell(&(self.matrix * u)) * c64(0.0, 1.0);
        let m = ub.transpose() * ub;
        let dm = dub.transpose() * ub + ub.transpose() * dub;
        let det = u.determinant();
        let dlog_det = c64(0.0, self.matrix.trace().re);
        let (tr, dtr) = (m.trace(), dm.trace());
        let (tr2, dtr2) = ((m * m).trace(), (m * dm).trace() * 2.0);
        let g1 = tr * tr / (det * 16.0);
        let g2 = (tr * tr - tr2) / (det * 4.0);
        let dg1 = tr * dtr * 2.0 / (det * 16.0) - g1 * dlog_det;
        let dg2 = (tr * dtr * 2.0 - dtr2) / (det * 4.0) - g2 * dlog_det;
        ([g1, g2], [dg1, dg2])
    }
}

/// `exp(iHt)`.
pub fn evolve(h: &HamiltonianFamily, t: f64) -> ComplexMatrix4 {
    h.propagator(t)
}

/// Invariants of `exp(iHt)` along a time grid.
pub fn invariant_curve(h: &HamiltonianFamily, t_grid: &[f64]) -> Result<Vec<GateInvariants>> {
    t_grid.par_iter().map(|&t| makhlin_invariants(&evolve(h, t))).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The target is itself a local gate.
    Local,
    /// Reachable with a single application of `exp(iHt)`.
    OneStep,
    /// Not on the trajectory: two or more two-qubit steps are needed.
    AtLeastTwo,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Local => "local",
            Verdict::OneStep => "one_step",
            Verdict::AtLeastTwo => "at_least_two",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisResult {
    /// `(t, mismatch)` for each time at which `exp(iHt)` is in the target class.
    pub times: Vec<(f64, f64)>,
    pub verdict: Verdict,
}

/// Minimizes a unimodal function on `[a, b]` down to an interval of `width`.
fn golden_section<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, width: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > width {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Bisects a predicate change between `lo` (value `at_lo`) and `hi`.
fn bisect_bool<F: Fn(f64) -> bool>(pred: F, mut lo: f64, mut hi: f64, at_lo: bool, width: f64) -> f64 {
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if pred(mid) == at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn uniform_grid(t_max: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|k| t_max * k as f64 / n as f64).collect()
}

/// Indices of grid local minima, ignoring index 0.
fn local_minima(values: &[f64]) -> Vec<usize> {
    let n = values.len() - 1;
    (1..=n)
        .filter(|&k| values[k] < values[k - 1] && (k == n || values[k] <= values[k + 1]))
        .collect()
}

/// Times in `(0, t_max]` at which `exp(iHt)` is locally equivalent to `target`.
///
/// The mismatch `|ΔG1|² + |ΔG2|²` is scanned on 10⁴ points and each local
/// minimum below `1e-4` is refined by golden section. Touching roots, where the
/// mismatch is quartic, are then polished on `|dG/dt|²`.
pub fn solve_time(h: &HamiltonianFamily, target: &ComplexMatrix4, t_max: f64) -> Result<SynthesisResult> {
    ensure_unitary(target)?;
    let (tg1, tg2) = g1_g2(target);
    let mismatch = |t: f64| {
        let (g1, g2) = g1_g2(&h.propagator(t));
        (g1 - tg1).norm_sqr() + (g2 - tg2).powi(2)
    };
    let grid = uniform_grid(t_max, GRID_POINTS);
    let values: Vec<f64> = grid.par_iter().map(|&t| mismatch(t)).collect();

    let mut times: Vec<(f64, f64)> = Vec::new();
    for k in local_minima(&values) {
        if values[k] >= REFINE_BELOW {
            continue;
        }
        let hi = grid[(k + 1).min(GRID_POINTS)];
        let (mut t, mut err) = golden_section(mismatch, grid[k - 1], hi, GOLDEN_WIDTH);
        let slope = |t: f64| {
            let (_, d) = h.curve_with_derivative(t);
            d[0].norm_sqr() + (d[1].re).powi(2)
        };
        if slope(t) <= 1e-12 {
            let w = 1e-6;
            let (tp, _) = golden_section(slope, t - w, t + w, GOLDEN_WIDTH);
            let ep = mismatch(tp);
            if (tp - t).abs() < 0.99 * w && ep <= ROOT_MISMATCH.max(err) {
                t = tp;
                err = ep;
            }
        }
        let t = t.min(t_max);
        if err <= ROOT_MISMATCH && t > EDGE_WIDTH && !times.iter().any(|&(s, _)| (s - t).abs() < 1e-7) {
            times.push((t, err));
        }
    }

    let verdict = if is_local_gate(target)? {
        Verdict::Local
    } else if !times.is_empty() {
        Verdict::OneStep
    } else {
        Verdict::AtLeastTwo
    };
    Ok(SynthesisResult { times, verdict })
}

/// Amount by which the largest eigenphase gap of `m` exceeds π; perfect
/// entanglers are the points where this is `≤ 1e-9`.
fn gap_excess(h: &HamiltonianFamily, t: f64) -> f64 {
    makhlin_invariants(&h.propagator(t)).map_or(f64::INFINITY, |inv| inv.max_phase_gap() - PI)
}

/// Maximal time intervals in `[0, t_max]` during which `exp(iHt)` is a perfect
/// entangler. Isolated points appear as intervals with `t_lo == t_hi`.
pub fn entangler_windows(h: &HamiltonianFamily, t_max: f64) -> Vec<(f64, f64)> {
    let tol = TOLERANCES.entangler_boundary;
    let grid = uniform_grid(t_max, GRID_POINTS);
    let excess: Vec<f64> = grid.par_iter().map(|&t| gap_excess(h, t)).collect();
    let inside = |t: f64| gap_excess(h, t) <= tol;
    let flags: Vec<bool> = excess.iter().map(|&g| g <= tol).collect();
    let n = GRID_POINTS;

    let pinpoint = |k: usize| {
        let (t, g) = golden_section(|t| gap_excess(h, t), grid[k.saturating_sub(1)], grid[(k + 1).min(n)], GOLDEN_WIDTH);
        (g <= tol).then_some((t, t))
    };

    let mut windows = Vec::new();
    let mut k = 0;
    while k <= n {
        if flags[k] {
            let start = k;
            while k < n && flags[k + 1] {
                k += 1;
            }
            let lo = if start == 0 { grid[0] } else { bisect_bool(inside, grid[start - 1], grid[start], false, EDGE_WIDTH) };
            let hi = if k == n { grid[n] } else { bisect_bool(inside, grid[k], grid[k + 1], true, EDGE_WIDTH) };
            if hi - lo <= 10.0 * EDGE_WIDTH {
                windows.push(pinpoint(start).unwrap_or((lo, hi)));
            } else {
                windows.push((lo, hi));
            }
        } else {
            // Touching points between grid nodes show up as small local minima of the excess.
            let left_out = k == 0 || !flags[k - 1];
            let right_out = k == n || !flags[k + 1];
            let is_min = (k == 0 || excess[k] <= excess[k - 1]) && (k == n || excess[k] < excess[k + 1]);
            if left_out && right_out && is_min && excess[k] < 1e-2 {
                if let Some(w) = pinpoint(k) {
                    windows.push(w);
                }
            }
        }
        k += 1;
    }
    windows
}

/// A Josephson coupling ratio for which one step yields a CNOT-class gate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JosephsonSolution {
    pub n: u32,
    /// `E_J / E_L`.
    pub alpha: f64,
    /// Duration in units of `1/E_L`.
    pub t: f64,
    /// `|f(α)|` at the reported root.
    pub residual: f64,
}

/// `α² cos[π(n+½)√(1+α⁻²)] + 1`.
pub fn josephson_condition(n: u32, alpha: f64) -> f64 {
    let arg = PI * (n as f64 + 0.5) * (1.0 + alpha.powi(-2)).sqrt();
    alpha * alpha * arg.cos() + 1.0
}

/// Duration of the CNOT-class pulse for root `alpha` of the `n`-th condition,
/// `π(2n+1) / (4α²)`.
pub fn josephson_time(n: u32, alpha: f64) -> f64 {
    PI * (2 * n + 1) as f64 / (4.0 * alpha * alpha)
}

/// Roots of [`josephson_condition`] in `(0, alpha_max]` for `n = 0..=n_max`
/// whose pulse passes a CNOT-equivalence check at `1e-6`.
pub fn josephson_alpha(n_max: u32, alpha_max: f64) -> Vec<JosephsonSolution> {
    let cnot = gates::cnot();
    let grid: Vec<f64> = (1..=JOSEPHSON_GRID).map(|k| alpha_max * k as f64 / JOSEPHSON_GRID as f64).collect();
    (0..=n_max)
        .into_par_iter()
        .flat_map_iter(|n| {
            let f = |a: f64| josephson_condition(n, a);
            let values: Vec<f64> = grid.iter().map(|&a| f(a)).collect();
            let mut found = Vec::new();
            for k in 1..grid.len() {
                if values[k - 1].signum() == values[k].signum() {
                    continue;
                }
                let (mut lo, mut hi, lo_neg) = (grid[k - 1], grid[k], values[k - 1] < 0.0);
                while hi - lo > 1e-12 {
                    let mid = 0.5 * (lo + hi);
                    if (f(mid) < 0.0) == lo_neg {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                let alpha = 0.5 * (lo + hi);
                let residual = f(alpha).abs();
                let t = josephson_time(n, alpha);
                let gate = evolve(&HamiltonianFamily::josephson(alpha), t);
                if residual <= ROOT_MISMATCH && gates_equivalent(&gate, &cnot, TOLERANCES.gate_equivalence).unwrap_or(false) {
                    found.push(JosephsonSolution { n, alpha, t, residual });
                }
            }
            found
        })
        .collect()
}
