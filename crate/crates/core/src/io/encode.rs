//! Canonical JSON encodings of exact values.
//!
//! Scalars are always strings. Matrices are arrays of rows. A cochain is
//! `{"degree": n, "entries": [{"tuple": [...], "value": matrix}, ...]}` with
//! zero values omitted and tuples in lexicographic order.

use serde_json::{json, Value};

use crate::deform::{ApproximateDeformation, FormalAutomorphism};
use crate::hochschild::Cochain;
use crate::linalg::{Field, Matrix, Scalar};

use super::DocumentError;

pub fn encode_scalar(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

pub fn encode_matrix(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(encode_scalar).collect()))
            .collect(),
    )
}

pub fn encode_vector(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(encode_scalar).collect())
}

pub fn encode_cochain(c: &Cochain) -> Value {
    let entries: Vec<Value> = c
        .entries()
        .map(|(t, m)| json!({ "tuple": t, "value": encode_matrix(m) }))
        .collect();
    json!({ "degree": c.degree(), "entries": entries })
}

pub fn encode_deformation(d: &ApproximateDeformation) -> Value {
    json!({
        "order": d.order(),
        "terms": d.terms().iter().map(encode_cochain).collect::<Vec<_>>(),
    })
}

pub fn encode_automorphism(a: &FormalAutomorphism) -> Value {
    json!({
        "order": a.order(),
        "terms": a.terms().iter().map(encode_matrix).collect::<Vec<_>>(),
    })
}

/// Parses one scalar, reporting failures at `path`.
pub fn decode_scalar(field: Field, text: &str, path: &str) -> Result<Scalar, DocumentError> {
    field.parse(text).map_err(|e| DocumentError::at(path, e))
}

pub fn decode_matrix(
    field: Field,
    rows: &[Vec<String>],
    dim: usize,
    path: &str,
) -> Result<Matrix, DocumentError> {
    if rows.len() != dim {
        return Err(DocumentError::at(
            path,
            format!("has {} rows, expected {dim}", rows.len()),
        ));
    }
    let mut out = Vec::with_capacity(dim);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != dim {
            return Err(DocumentError::at(
                format!("{path}[{i}]"),
                format!("has {} entries, expected {dim}", row.len()),
            ));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, s)| decode_scalar(field, s, &format!("{path}[{i}][{j}]")))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(parsed);
    }
    if dim == 0 {
        return Ok(Matrix::zeros(field, 0, 0));
    }
    Ok(Matrix::from_rows(field, out))
}

pub fn decode_cochain(
    field: Field,
    algebra_dim: usize,
    module_dim: usize,
    raw: &super::RawCochain,
    path: &str,
) -> Result<Cochain, DocumentError> {
    let mut entries = Vec::with_capacity(raw.entries.len());
    for (n, e) in raw.entries.iter().enumerate() {
        let value = decode_matrix(field, &e.value, module_dim, &format!("{path}.entries[{n}].value"))?;
        entries.push((e.tuple.clone(), value));
    }
    Cochain::from_entries_shaped(field, algebra_dim, module_dim, raw.degree, entries)
        .map_err(|e| DocumentError::at(format!("{path}.entries"), e))
}
