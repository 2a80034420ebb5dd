//! The shared JSON exchange format.
//!
//! A complex scalar is a two-element array `[re, im]`; a matrix is row-major
//! nested arrays of scalars; a real-linear operator is
//! `{"dim": n, "linear": [...], "antilinear": [...]}`; a conjugation is
//! `{"dim": n, "matrix": [...]}`.

use crate::cmat::{C, CMat};
use crate::conjugation::Conjugation;
use crate::error::{Error, Result};
use crate::op::RealLinearOp;
use serde::{Deserialize, Serialize};

pub fn matrix_to_json(m: &CMat) -> serde_json::Value {
    let rows: Vec<Vec<[f64; 2]>> = (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect();
    serde_json::json!(rows)
}

pub fn matrix_from_json(v: &serde_json::Value) -> Result<CMat> {
    let rows: Vec<Vec<[f64; 2]>> =
        serde_json::from_value(v.clone()).map_err(|_| Error::Empty("malformed matrix JSON"))?;
    let n = rows.len();
    if n == 0 {
        return Err(Error::Empty("matrix JSON has no rows"));
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Empty("ragged matrix JSON"));
    }
    Ok(CMat::from_fn(n, cols, |i, j| C::new(rows[i][j][0], rows[i][j][1])))
}

#[derive(Serialize, Deserialize)]
struct OpJson {
    dim: usize,
    linear: serde_json::Value,
    antilinear: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
struct ConjJson {
    dim: usize,
    matrix: serde_json::Value,
}

pub fn op_to_json(op: &RealLinearOp) -> serde_json::Value {
    serde_json::json!({
        "dim": op.dim(),
        "linear": matrix_to_json(op.linear_part()),
        "antilinear": matrix_to_json(op.antilinear_part()),
    })
}

pub fn op_from_json(v: &serde_json::Value) -> Result<RealLinearOp> {
    let parsed: OpJson =
        serde_json::from_value(v.clone()).map_err(|_| Error::Empty("malformed operator JSON"))?;
    let linear = matrix_from_json(&parsed.linear)?;
    let antilinear = matrix_from_json(&parsed.antilinear)?;
    if linear.nrows() != parsed.dim {
        return Err(Error::DimensionMismatch { expected: parsed.dim, got: linear.nrows() });
    }
    RealLinearOp::new(linear, antilinear)
}

pub fn conjugation_to_json(k: &Conjugation) -> serde_json::Value {
    serde_json::json!({
        "dim": k.dim(),
        "matrix": matrix_to_json(k.matrix()),
    })
}

/// Parses and validates a conjugation at the given tolerance.
pub fn conjugation_from_json(v: &serde_json::Value, tol: f64) -> Result<Conjugation> {
    let parsed: ConjJson = serde_json::from_value(v.clone())
        .map_err(|_| Error::Empty("malformed conjugation JSON"))?;
    let matrix = matrix_from_json(&parsed.matrix)?;
    if matrix.nrows() != parsed.dim {
        return Err(Error::DimensionMismatch { expected: parsed.dim, got: matrix.nrows() });
    }
    Conjugation::with_tol(matrix, tol)
}

/// Reads the antilinear matrix of an operator from any accepted shape:
/// a bare matrix (nested arrays), `{"dim", "matrix"}`, or a full
/// `{"dim", "linear", "antilinear"}` object whose linear part must vanish.
pub fn antilinear_matrix_from_json(v: &serde_json::Value, tol: f64) -> Result<CMat> {
    if v.is_array() {
        return matrix_from_json(v);
    }
    if let Some(obj) = v.as_object() {
        if obj.contains_key("matrix") {
            let parsed: ConjJson = serde_json::from_value(v.clone())
                .map_err(|_| Error::Empty("malformed matrix object JSON"))?;
            return matrix_from_json(&parsed.matrix);
        }
        if obj.contains_key("antilinear") {
            let op = op_from_json(v)?;
            let m = op.require_antilinear(tol)?;
            return Ok(m.clone());
        }
    }
    Err(Error::Empty("unrecognized operator JSON shape"))
}
