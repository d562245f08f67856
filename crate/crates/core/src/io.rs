//! JSON exchange formats for matrices, operators, morphisms and the catalog.
//!
//! Scalars are strings in the field's text format. Rows are row-major, so
//! column `j` of `rows` is the image of basis vector `j`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Field, FieldError, FieldTag};
use crate::linmap::{LinearMap, Subspace};
use crate::morphisms::{Morphism, MorphismKind};
use crate::octonion::DIM;
use crate::rota_baxter::{RotaBaxterCandidate, Verdict};
use crate::subalgebra::NamedSubspace;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("matrix is for field {found}, expected {expected}")]
    FieldMismatch { expected: FieldTag, found: FieldTag },
    #[error("expected 8 rows of 8 scalars")]
    Shape,
    #[error("unknown verification status {0:?}")]
    Status(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub field: FieldTag,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorFile {
    #[serde(flatten)]
    pub matrix: MatrixFile,
    pub weight: String,
    pub verified: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismFile {
    #[serde(flatten)]
    pub matrix: MatrixFile,
    pub kind: MorphismKind,
    pub source: String,
    pub params: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub locus: String,
    pub basis: Vec<Vec<String>>,
    pub dim: usize,
}

pub fn matrix_file<F: Field>(m: &LinearMap<F>) -> MatrixFile {
    let f = m.field();
    MatrixFile {
        field: f.tag(),
        rows: m
            .rows()
            .iter()
            .map(|row| row.iter().map(|x| f.format(x)).collect())
            .collect(),
    }
}

pub fn read_matrix<F: Field>(field: &F, file: &MatrixFile) -> Result<LinearMap<F>, IoError> {
    if file.field != field.tag() {
        return Err(IoError::FieldMismatch {
            expected: field.tag(),
            found: file.field,
        });
    }
    if file.rows.len() != DIM || file.rows.iter().any(|r| r.len() != DIM) {
        return Err(IoError::Shape);
    }
    let mut rows: Vec<[F::Elem; DIM]> = Vec::with_capacity(DIM);
    for row in &file.rows {
        let mut parsed = Vec::with_capacity(DIM);
        for x in row {
            parsed.push(field.parse(x)?);
        }
        rows.push(parsed.try_into().expect("length checked"));
    }
    Ok(LinearMap::from_rows(field.clone(), rows.try_into().expect("length checked")))
}

pub fn operator_file<F: Field>(c: &RotaBaxterCandidate<F>) -> OperatorFile {
    OperatorFile {
        matrix: matrix_file(&c.map),
        weight: c.map.field().format(&c.weight),
        verified: c.verdict.label().to_string(),
    }
}

/// Reads an operator; a recorded verdict is kept only as `Unchecked`, since
/// verification status is recomputed rather than trusted.
pub fn read_operator<F: Field>(field: &F, file: &OperatorFile) -> Result<RotaBaxterCandidate<F>, IoError> {
    if !matches!(file.verified.as_str(), "holds" | "fails" | "unchecked") {
        return Err(IoError::Status(file.verified.clone()));
    }
    let map = read_matrix(field, &file.matrix)?;
    let weight = field.parse(&file.weight)?;
    Ok(RotaBaxterCandidate {
        map,
        weight,
        verdict: Verdict::Unchecked,
    })
}

pub fn morphism_file<F: Field>(m: &Morphism<F>) -> MorphismFile {
    let f = m.map.field();
    MorphismFile {
        matrix: matrix_file(&m.map),
        kind: m.kind,
        source: m.source.to_string(),
        params: m.params.iter().map(|p| f.format(p)).collect(),
    }
}

pub fn subspace_rows<F: Field>(s: &Subspace<F>) -> Vec<Vec<String>> {
    let f = s.field();
    s.basis()
        .iter()
        .map(|v| v.coords().iter().map(|x| f.format(x)).collect())
        .collect()
}

pub fn catalog_entries<F: Field>(entries: &[NamedSubspace<F>]) -> Vec<CatalogEntry> {
    entries
        .iter()
        .map(|e| CatalogEntry {
            name: e.name.clone(),
            locus: e.locus.clone(),
            basis: subspace_rows(&e.carrier),
            dim: e.carrier.dim(),
        })
        .collect()
}
