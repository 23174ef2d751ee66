//! JSON gate and state files.

use std::fs;
use std::path::Path;

use nalgebra::Vector3;
use num_complex::Complex64;
use qinv_core::linalg::{eig_hermitian, hermiticity_defect, unitarity_defect};
use qinv_core::{gates, ComplexMatrix4, PauliForm, RealMatrix3};
use serde::Deserialize;

/// Input tolerance for hand-written files.
const INPUT_TOL: f64 = 1e-6;

/// A validation failure; reported on one line with exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

macro_rules! bail {
    ($($arg:tt)*) => { return Err(InputError(format!($($arg)*))) };
}

type ComplexRows = Vec<Vec<[f64; 2]>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GateFile {
    matrix: ComplexRows,
    #[allow(dead_code)]
    name: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PauliRecord {
    s: [f64; 3],
    p: [f64; 3],
    beta: [[f64; 3]; 3],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    rho: Option<ComplexRows>,
    pauli: Option<PauliRecord>,
}

fn read(path: &str) -> Result<String, InputError> {
    fs::read_to_string(Path::new(path)).map_err(|e| InputError(format!("cannot read {path}: {e}")))
}

fn complex_matrix(rows: &ComplexRows, what: &str) -> Result<ComplexMatrix4, InputError> {
    if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
        bail!("{what} must be a 4x4 array of [re, im] pairs");
    }
    let m = ComplexMatrix4::from_fn(|r, c| Complex64::new(rows[r][c][0], rows[r][c][1]));
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        bail!("{what} has non-finite entries");
    }
    Ok(m)
}

/// Nearest unitary `A (A†A)^{-1/2}`.
fn polar_unitary(a: &ComplexMatrix4) -> Option<ComplexMatrix4> {
    let (values, vectors) = eig_hermitian(&(a.adjoint() * a)).ok()?;
    if values[0] <= 0.0 {
        return None;
    }
    let mut scaled = vectors;
    for (j, mut col) in scaled.column_iter_mut().enumerate() {
        col *= Complex64::new(values[j].powf(-0.5), 0.0);
    }
    Some(a * scaled * vectors.adjoint())
}

/// A named gate or a gate file; the matrix is projected onto the unitary group.
pub fn load_gate(source: &str) -> Result<ComplexMatrix4, InputError> {
    if let Some(g) = gates::named(source) {
        return Ok(g);
    }
    let text = read(source)?;
    let file: GateFile = serde_json::from_str(&text).map_err(|e| InputError(format!("{source}: {e}")))?;
    let m = complex_matrix(&file.matrix, "matrix")?;
    let defect = unitarity_defect(&m);
    if defect > INPUT_TOL {
        bail!("{source}: matrix is not unitary (defect {defect:.3e})");
    }
    polar_unitary(&m).ok_or_else(|| InputError(format!("{source}: matrix is singular")))
}

/// A state file holding either `rho` or `pauli`.
pub fn load_state(source: &str) -> Result<PauliForm, InputError> {
    let text = read(source)?;
    let file: StateFile = serde_json::from_str(&text).map_err(|e| InputError(format!("{source}: {e}")))?;
    match (file.rho, file.pauli) {
        (Some(rows), None) => {
            let rho = complex_matrix(&rows, "rho")?;
            let defect = hermiticity_defect(&rho);
            if defect > INPUT_TOL {
                bail!("{source}: rho is not Hermitian (defect {defect:.3e})");
            }
            let trace = rho.trace().re;
            if (trace - 1.0).abs() > INPUT_TOL {
                bail!("{source}: rho has trace {trace}, expected 1");
            }
            let rho = (rho + rho.adjoint()) * Complex64::new(0.5 / trace, 0.0);
            qinv_core::pauli_decompose(&rho).map_err(|e| InputError(format!("{source}: {e}")))
        }
        (None, Some(p)) => {
            let values = p.s.iter().chain(&p.p).chain(p.beta.iter().flatten());
            if values.into_iter().any(|x| !x.is_finite()) {
                bail!("{source}: pauli record has non-finite entries");
            }
            Ok(PauliForm::new(
                Vector3::from(p.s),
                Vector3::from(p.p),
                RealMatrix3::from_fn(|i, j| p.beta[i][j]),
            ))
        }
        _ => bail!("{source}: expected exactly one of \"rho\" or \"pauli\""),
    }
}
