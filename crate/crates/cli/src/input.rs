//! Model-file loading: a small JSON schema carrying exact rational data.
//!
//! ```json
//! {
//!   "dim": 4,
//!   "log_branches": 4,
//!   "matrix": [[0, 1, 2, 4], [-1, 0, 3, 5], [-2, -3, 0, 6], [-4, -5, -6, 0]]
//! }
//! ```
//!
//! Matrix entries are JSON integers or strings `"p/q"`; floating-point
//! numbers are rejected outright so no value is ever silently rounded.
//! The strict upper triangle is authoritative: the diagonal and lower
//! triangle are recomputed, and any provided data that disagrees with the
//! skew completion is reported as a diagnostic note (without failing).

use std::fs;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::Value;

use logsym_core::{Error as CoreError, Model, Rat, SkewMatrix};

use crate::CliError;

/// A parsed model plus diagnostics about ignored redundant data.
#[derive(Clone, Debug)]
pub struct LoadedModel {
    pub model: Model,
    /// Human-readable notes for standard error (inconsistent lower
    /// triangle or nonzero diagonal entries in the input file).
    pub notes: Vec<String>,
}

/// Parses `"p/q"` or a plain integer string into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rat, String> {
    let text = text.trim();
    let (numer_text, denom_text) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let numer = BigInt::from_str(numer_text)
        .map_err(|_| format!("cannot parse numerator in {text:?}"))?;
    let denom = BigInt::from_str(denom_text)
        .map_err(|_| format!("cannot parse denominator in {text:?}"))?;
    if denom.is_zero() {
        return Err(format!("zero denominator in {text:?}"));
    }
    Ok(Rat::new(numer, denom))
}

fn entry_from_value(value: &Value, row: usize, col: usize) -> Result<Rat, CliError> {
    let place = format!("matrix entry ({}, {})", row + 1, col + 1);
    match value {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rat::from_integer(BigInt::from(i)))
            } else if let Some(u) = n.as_u64() {
                Ok(Rat::from_integer(BigInt::from(u)))
            } else {
                Err(CliError::Input(format!(
                    "{place}: floating-point values are rejected; \
                     write an integer or a \"p/q\" string"
                )))
            }
        }
        Value::String(s) => parse_rational(s).map_err(|e| CliError::Input(format!("{place}: {e}"))),
        other => Err(CliError::Input(format!(
            "{place}: expected an integer or a \"p/q\" string, found {other}"
        ))),
    }
}

fn require_usize(object: &serde_json::Map<String, Value>, key: &str) -> Result<usize, CliError> {
    let value = object
        .get(key)
        .ok_or_else(|| CliError::Input(format!("missing required key {key:?}")))?;
    value
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| CliError::Input(format!("key {key:?} must be a nonnegative integer")))
}

fn core_error(e: CoreError) -> CliError {
    match e {
        CoreError::DegenerateStructure => CliError::Degenerate(format!(
            "degenerate log-symplectic structure: {e}"
        )),
        other => CliError::Input(other.to_string()),
    }
}

/// Reads, validates, and skew-completes a model file.
pub fn load_model(path: &Path) -> Result<LoadedModel, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let object = value
        .as_object()
        .ok_or_else(|| CliError::Input(format!("{}: top level must be a JSON object", path.display())))?;
    for key in object.keys() {
        if !matches!(key.as_str(), "dim" | "log_branches" | "matrix") {
            return Err(CliError::Input(format!(
                "unknown key {key:?}; expected dim, log_branches, matrix"
            )));
        }
    }
    let dim = require_usize(object, "dim")?;
    let log_branches = require_usize(object, "log_branches")?;
    let matrix_value = object
        .get("matrix")
        .ok_or_else(|| CliError::Input("missing required key \"matrix\"".into()))?;
    let rows_value = matrix_value
        .as_array()
        .ok_or_else(|| CliError::Input("key \"matrix\" must be an array of rows".into()))?;
    if rows_value.len() != dim {
        return Err(CliError::Input(format!(
            "matrix has {} rows but dim is {dim}",
            rows_value.len()
        )));
    }
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(dim);
    for (r, row_value) in rows_value.iter().enumerate() {
        let cells = row_value.as_array().ok_or_else(|| {
            CliError::Input(format!("matrix row {} must be an array", r + 1))
        })?;
        if cells.len() != dim {
            return Err(CliError::Input(format!(
                "matrix row {} has {} entries but dim is {dim}",
                r + 1,
                cells.len()
            )));
        }
        let mut row = Vec::with_capacity(dim);
        for (c, cell) in cells.iter().enumerate() {
            row.push(entry_from_value(cell, r, c)?);
        }
        rows.push(row);
    }

    // The strict upper triangle wins; note disagreements rather than fail.
    let mut notes = Vec::new();
    for i in 0..dim {
        if !rows[i][i].is_zero() {
            notes.push(format!(
                "matrix: diagonal entry ({i1}, {i1}) = {v} ignored (diagonal is fixed at 0)",
                i1 = i + 1,
                v = rows[i][i],
            ));
        }
        for j in (i + 1)..dim {
            let expected = -rows[i][j].clone();
            if rows[j][i] != expected {
                notes.push(format!(
                    "matrix: lower entry ({r}, {c}) = {found} disagrees with the upper \
                     triangle; using the skew completion {expected}",
                    r = j + 1,
                    c = i + 1,
                    found = rows[j][i],
                ));
            }
        }
    }

    let skew = SkewMatrix::complete_skew(rows).map_err(core_error)?;
    let model = Model::new(skew, log_branches).map_err(core_error)?;
    Ok(LoadedModel { model, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use logsym_core::rational::{rat, rat_int};
    use std::io::Write;

    fn write_temp(contents: &str) -> tempfile::NamedTempFile {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(contents.as_bytes()).unwrap();
        file
    }

    #[test]
    fn parses_integers_and_fraction_strings() {
        assert_eq!(parse_rational("3").unwrap(), rat_int(3));
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(" 7 / 2 ").unwrap(), rat(7, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn loads_a_well_formed_model() {
        let file = write_temp(
            r#"{"dim": 4, "log_branches": 4,
                "matrix": [[0, 1, 2, 4], [-1, 0, 3, 5], [-2, -3, 0, 6], [-4, -5, -6, 0]]}"#,
        );
        let loaded = load_model(file.path()).unwrap();
        assert!(loaded.notes.is_empty());
        assert_eq!(loaded.model.dim(), 4);
        assert_eq!(loaded.model.branches(), 4);
        assert_eq!(loaded.model.pfaffian().clone(), rat_int(8));
    }

    #[test]
    fn upper_triangle_wins_with_a_note() {
        let file = write_temp(
            r#"{"dim": 2, "log_branches": 2, "matrix": [[0, "1/2"], [17, 0]]}"#,
        );
        let loaded = load_model(file.path()).unwrap();
        assert_eq!(loaded.notes.len(), 1);
        assert!(loaded.notes[0].contains("lower entry (2, 1)"));
        assert_eq!(loaded.model.matrix().entry(1, 0).clone(), rat(-1, 2));
    }

    #[test]
    fn rejects_floats_and_malformed_entries() {
        let float = write_temp(r#"{"dim": 2, "log_branches": 2, "matrix": [[0, 1.5], [0, 0]]}"#);
        let err = load_model(float.path()).unwrap_err();
        assert!(matches!(err, CliError::Input(ref m) if m.contains("floating-point")));

        let text = write_temp(r#"{"dim": 2, "log_branches": 2, "matrix": [[0, "x"], [0, 0]]}"#);
        assert!(matches!(load_model(text.path()), Err(CliError::Input(_))));

        let shape = write_temp(r#"{"dim": 2, "log_branches": 2, "matrix": [[0, 1]]}"#);
        assert!(matches!(load_model(shape.path()), Err(CliError::Input(_))));

        let odd = write_temp(r#"{"dim": 3, "log_branches": 3,
            "matrix": [[0, 1, 0], [0, 0, 1], [0, 0, 0]]}"#);
        assert!(matches!(load_model(odd.path()), Err(CliError::Input(_))));

        let unknown = write_temp(r#"{"dim": 2, "log_branches": 2, "matrix": [[0, 1], [0, 0]], "extra": 1}"#);
        assert!(matches!(load_model(unknown.path()), Err(CliError::Input(_))));
    }

    #[test]
    fn degenerate_matrix_is_a_distinct_error() {
        let file = write_temp(
            r#"{"dim": 4, "log_branches": 4,
                "matrix": [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]}"#,
        );
        assert!(matches!(load_model(file.path()), Err(CliError::Degenerate(_))));
    }
}
