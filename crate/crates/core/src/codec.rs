//! Shared JSON encoding: complex scalars as `[re, im]`, matrices as row-major nested arrays.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{CMat, Mat2, Mat4, TwoQubitGate, C64};

pub type ComplexGrid = Vec<Vec<[f64; 2]>>;

pub const GATE_FORMAT: &str = "gateforge-gate/1";

pub fn encode<const N: usize>(m: &CMat<N>) -> ComplexGrid {
    m.0.iter().map(|row| row.iter().map(|z| [z.re, z.im]).collect()).collect()
}

pub fn encode_mat2(m: &Mat2) -> ComplexGrid {
    encode(m)
}

pub fn encode_mat4(m: &Mat4) -> ComplexGrid {
    encode(m)
}

/// Decodes an `N x N` grid; `location` prefixes shape diagnostics.
pub fn decode<const N: usize>(grid: &ComplexGrid, location: &str) -> Result<CMat<N>> {
    if grid.len() != N {
        return Err(Error::parse(location, format!("expected {N} rows, found {}", grid.len())));
    }
    let mut m = CMat::<N>::zeros();
    for (r, row) in grid.iter().enumerate() {
        if row.len() != N {
            return Err(Error::parse(
                format!("{location}[{r}]"),
                format!("expected {N} entries, found {}", row.len()),
            ));
        }
        for (c, &[re, im]) in row.iter().enumerate() {
            if !(re.is_finite() && im.is_finite()) {
                return Err(Error::parse(format!("{location}[{r}][{c}]"), "entry is not finite"));
            }
            m.0[r][c] = C64::new(re, im);
        }
    }
    Ok(m)
}

/// Serde error with its line/column as the location.
pub(crate) fn json_error(e: serde_json::Error) -> Error {
    Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GateDoc {
    format: String,
    matrix: ComplexGrid,
}

pub fn gate_to_json(m: &Mat4) -> String {
    let doc = GateDoc { format: GATE_FORMAT.to_string(), matrix: encode(m) };
    serde_json::to_string_pretty(&doc).expect("gate document serializes")
}

/// Parses a gate document without checking unitarity.
pub fn parse_gate_matrix(text: &str) -> Result<Mat4> {
    let doc: GateDoc = serde_json::from_str(text).map_err(json_error)?;
    if doc.format != GATE_FORMAT {
        return Err(Error::parse("format", format!("expected \"{GATE_FORMAT}\", found \"{}\"", doc.format)));
    }
    decode::<4>(&doc.matrix, "matrix")
}

/// Parses a gate document and validates unitarity at `tol`.
pub fn parse_gate(text: &str, tol: f64) -> Result<TwoQubitGate> {
    TwoQubitGate::with_tolerance(parse_gate_matrix(text)?, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::CNOT;

    #[test]
    fn gate_document_round_trip() {
        let text = gate_to_json(&CNOT);
        assert!(text.contains("\"format\": \"gateforge-gate/1\""));
        let back = parse_gate_matrix(&text).unwrap();
        assert_eq!(back, CNOT);
    }

    #[test]
    fn shape_errors_name_the_entry() {
        let text = r#"{"format":"gateforge-gate/1","matrix":[[[1,0],[0,0]],[[0,0],[1,0]]]}"#;
        let err = parse_gate_matrix(text).unwrap_err();
        assert_eq!(err, Error::parse("matrix", "expected 4 rows, found 2"));
        let text = r#"{"format":"gateforge-gate/1","matrix":[[[1,0],[0,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[],[]]}"#;
        let err = parse_gate_matrix(text).unwrap_err();
        assert!(matches!(err, Error::Parse { ref location, .. } if location == "matrix[1]"));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_gate_matrix("{\"format\": }").unwrap_err();
        assert!(matches!(err, Error::Parse { ref location, .. } if location.starts_with("line 1")));
        let err = parse_gate_matrix(r#"{"format":"other","matrix":[]}"#).unwrap_err();
        assert!(matches!(err, Error::Parse { ref location, .. } if location == "format"));
    }
}
