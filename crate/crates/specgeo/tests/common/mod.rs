//! Shared test support: the dense brute-force eigenvalue oracle, the
//! fixture path helper, and a minimal JSON-schema checker for the report
//! documents.

#![allow(dead_code)]

use std::path::PathBuf;

use nalgebra::DMatrix;
use specgeo::fem::SparseSymmetricMatrix;

/// Dense brute-force oracle for the generalized pencil: factor M = L L^T,
/// form L^{-1} S L^{-T}, and diagonalize. Independent of the Lanczos path.
pub fn dense_generalized_eigenvalues(
    s: &SparseSymmetricMatrix,
    m: &SparseSymmetricMatrix,
) -> Vec<f64> {
    let n = s.dim();
    assert_eq!(m.dim(), n);
    let mut sd = DMatrix::<f64>::zeros(n, n);
    for (r, c, v) in s.iter() {
        sd[(r, c)] = v;
    }
    let mut md = DMatrix::<f64>::zeros(n, n);
    for (r, c, v) in m.iter() {
        md[(r, c)] = v;
    }
    let chol = md
        .cholesky()
        .expect("mass matrix must be positive definite");
    let l = chol.l();
    let x = l.solve_lower_triangular(&sd).expect("forward substitution");
    let a = l
        .solve_lower_triangular(&x.transpose())
        .expect("forward substitution");
    let mut values: Vec<f64> = a.symmetric_eigen().eigenvalues.iter().copied().collect();
    values.sort_by(|p, q| p.partial_cmp(q).unwrap());
    values
}

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn schema_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("schema")
        .join("report.schema.json")
}

/// Minimal JSON-schema subset checker: `type`, `properties` + `required`,
/// `items`, `additionalProperties` (object value schemas), `minItems` /
/// `maxItems`. Enough to validate the shipped report schema.
pub fn validate_schema(value: &serde_json::Value, schema: &serde_json::Value, path: &str) {
    if let Some(ty) = schema.get("type").and_then(|t| t.as_str()) {
        let ok = match ty {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "number" => value.is_number(),
            "integer" => value.is_i64() || value.is_u64(),
            "boolean" => value.is_boolean(),
            other => panic!("unsupported schema type {other:?} at {path}"),
        };
        assert!(ok, "{path}: expected {ty}, got {value}");
    }
    if let Some(required) = schema.get("required").and_then(|r| r.as_array()) {
        for key in required {
            let key = key.as_str().unwrap();
            assert!(
                value.get(key).is_some(),
                "{path}: missing required key {key:?}"
            );
        }
    }
    if let Some(props) = schema.get("properties").and_then(|p| p.as_object()) {
        for (key, sub) in props {
            if let Some(child) = value.get(key) {
                validate_schema(child, sub, &format!("{path}.{key}"));
            }
        }
    }
    if let Some(extra) = schema.get("additionalProperties") {
        if extra.is_object() {
            let declared: Vec<&String> = schema
                .get("properties")
                .and_then(|p| p.as_object())
                .map(|p| p.keys().collect())
                .unwrap_or_default();
            if let Some(obj) = value.as_object() {
                for (key, child) in obj {
                    if !declared.contains(&key) {
                        validate_schema(child, extra, &format!("{path}.{key}"));
                    }
                }
            }
        }
    }
    if let Some(items) = schema.get("items") {
        if let Some(arr) = value.as_array() {
            if let Some(min) = schema.get("minItems").and_then(|m| m.as_u64()) {
                assert!(arr.len() as u64 >= min, "{path}: fewer than {min} items");
            }
            if let Some(max) = schema.get("maxItems").and_then(|m| m.as_u64()) {
                assert!(arr.len() as u64 <= max, "{path}: more than {max} items");
            }
            for (i, child) in arr.iter().enumerate() {
                validate_schema(child, items, &format!("{path}[{i}]"));
            }
        }
    }
}
