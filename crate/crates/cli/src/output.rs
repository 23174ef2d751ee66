//! JSON encoding with 12 significant digits.

use num_complex::Complex64;
use qinv_core::{ComplexMatrix2, PauliForm, RealMatrix3};
use serde_json::{json, Value};

/// Rounds to 12 significant digits, snapping `|x| < 1e-12` (and `-0`) to `0`.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    if x.abs() < 1e-12 {
        return 0.0;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

pub fn num(x: f64) -> Value {
    json!(round12(x))
}

pub fn complex(z: Complex64) -> Value {
    json!([round12(z.re), round12(z.im)])
}

pub fn complex2(m: &ComplexMatrix2) -> Value {
    Value::Array((0..2).map(|r| Value::Array((0..2).map(|c| complex(m[(r, c)])).collect())).collect())
}

pub fn real3(m: &RealMatrix3) -> Value {
    Value::Array((0..3).map(|r| Value::Array((0..3).map(|c| num(m[(r, c)])).collect())).collect())
}

pub fn vec3(v: &nalgebra::Vector3<f64>) -> Value {
    Value::Array(v.iter().map(|&x| num(x)).collect())
}

pub fn pauli(f: &PauliForm) -> Value {
    json!({ "s": vec3(&f.s), "p": vec3(&f.p), "beta": real3(&f.beta) })
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
