//! JSON interchange: complexes, chain maps, ladder objects, and homology
//! tables.
//!
//! Matrices travel as row-major arrays of scalar strings. Parsing is strict:
//! scalars must be in canonical form (reduced fractions over Q, residues in
//! `[0, p)` over F_p) and every matrix is shape-checked against the declared
//! dimensions before anything else runs.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::chainmap::ChainMap;
use crate::complex::NComplex;
use crate::field::FieldSpec;
use crate::matrix::Matrix;
use crate::mor::MorObject;
use crate::{Error, Result};

/// Wire form of a matrix: rows of scalar strings.
pub type MatrixRows = Vec<Vec<String>>;

pub fn matrix_to_rows(m: &Matrix) -> MatrixRows {
    (0..m.rows)
        .map(|i| (0..m.cols).map(|j| m.field.render_scalar(m.get(i, j))).collect())
        .collect()
}

/// Parse against an expected shape; a zero-row matrix is `[]` on the wire,
/// so the shape cannot be inferred and must be supplied.
pub fn matrix_from_rows(
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: &[Vec<String>],
) -> Result<Matrix> {
    if data.len() != rows {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows, expected {rows}",
            data.len()
        )));
    }
    let mut m = Matrix::zero(field, rows, cols);
    for (i, row) in data.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::DimensionMismatch(format!(
                "row {i} has {} entries, expected {cols}",
                row.len()
            )));
        }
        for (j, s) in row.iter().enumerate() {
            m.set(i, j, field.parse_scalar(s)?);
        }
    }
    Ok(m)
}

#[derive(Serialize, Deserialize)]
struct ComplexDto {
    #[serde(rename = "N")]
    n: usize,
    field: FieldSpec,
    min_degree: i64,
    dims: Vec<usize>,
    diffs: Vec<MatrixRows>,
}

fn json_err(e: serde_json::Error) -> Error {
    Error::InvalidParameters(format!("malformed JSON: {e}"))
}

pub fn complex_to_json(x: &NComplex) -> Value {
    let dto = ComplexDto {
        n: x.n,
        field: x.field,
        min_degree: x.min_degree,
        dims: x.dims.clone(),
        diffs: x.diffs.iter().map(matrix_to_rows).collect(),
    };
    serde_json::to_value(dto).expect("complex serialization cannot fail")
}

/// Structural parse: shapes and scalars are checked, `d^N = 0` is not.
/// Use this where the point is to *report* on validity; everything else
/// should go through [`complex_from_json`].
pub fn complex_from_json_raw(v: &Value) -> Result<NComplex> {
    let dto: ComplexDto = serde_json::from_value(v.clone()).map_err(json_err)?;
    dto.field.validate()?;
    if dto.diffs.len() + 1 != dto.dims.len() && !(dto.dims.is_empty() && dto.diffs.is_empty()) {
        return Err(Error::DimensionMismatch(format!(
            "{} dims need {} differentials, got {}",
            dto.dims.len(),
            dto.dims.len().saturating_sub(1),
            dto.diffs.len()
        )));
    }
    let diffs = dto
        .diffs
        .iter()
        .enumerate()
        .map(|(k, rows)| matrix_from_rows(dto.field, dto.dims[k + 1], dto.dims[k], rows))
        .collect::<Result<Vec<_>>>()?;
    NComplex::new(dto.n, dto.field, dto.min_degree, dto.dims, diffs)
}

pub fn complex_from_json(v: &Value) -> Result<NComplex> {
    let x = complex_from_json_raw(v)?;
    x.validate()?;
    Ok(x)
}

pub fn complex_from_str(s: &str) -> Result<NComplex> {
    complex_from_json(&serde_json::from_str(s).map_err(json_err)?)
}

pub fn complex_to_string(x: &NComplex) -> String {
    serde_json::to_string_pretty(&complex_to_json(x)).expect("complex serialization cannot fail")
}

#[derive(Serialize, Deserialize)]
struct ChainMapDto {
    source: Value,
    target: Value,
    min_degree: i64,
    maps: Vec<MatrixRows>,
}

pub fn chainmap_to_json(f: &ChainMap) -> Value {
    let dto = ChainMapDto {
        source: complex_to_json(&f.source),
        target: complex_to_json(&f.target),
        min_degree: f.min_degree,
        maps: f.maps.iter().map(matrix_to_rows).collect(),
    };
    serde_json::to_value(dto).expect("chain map serialization cannot fail")
}

/// Full parse: both endpoint complexes validate and the maps commute with
/// the differentials.
pub fn chainmap_from_json(v: &Value) -> Result<ChainMap> {
    let dto: ChainMapDto = serde_json::from_value(v.clone()).map_err(json_err)?;
    let source = complex_from_json(&dto.source)?;
    let target = complex_from_json(&dto.target)?;
    let maps = dto
        .maps
        .iter()
        .enumerate()
        .map(|(k, rows)| {
            let i = dto.min_degree + k as i64;
            matrix_from_rows(source.field, target.dim(i), source.dim(i), rows)
        })
        .collect::<Result<Vec<_>>>()?;
    let f = ChainMap::new(source, target, dto.min_degree, maps)?;
    f.validate()?;
    Ok(f)
}

pub fn chainmap_from_str(s: &str) -> Result<ChainMap> {
    chainmap_from_json(&serde_json::from_str(s).map_err(json_err)?)
}

pub fn chainmap_to_string(f: &ChainMap) -> String {
    serde_json::to_string_pretty(&chainmap_to_json(f)).expect("chain map serialization cannot fail")
}

/// Ladder objects go out as `{"dims": [...], "maps": [matrix, ...]}`.
pub fn mor_to_json(m: &MorObject) -> Value {
    serde_json::json!({
        "dims": m.dims,
        "maps": m.maps.iter().map(matrix_to_rows).collect::<Vec<_>>(),
    })
}

/// A homology table as sorted `{degree, amplitude, dim}` records (nonzero
/// entries only).
pub fn table_to_json(table: &std::collections::BTreeMap<(i64, usize), usize>) -> Value {
    let rows: Vec<Value> = table
        .iter()
        .map(|(&(i, r), &d)| serde_json::json!({"degree": i, "amplitude": r, "dim": d}))
        .collect();
    Value::Array(rows)
}
