//! JSON file format for algebras and basis-change matrices.
//!
//! ```json
//! { "arity": 3, "dim": 4, "field": "Q",
//!   "brackets": [ { "args": [1, 2, 3], "value": { "4": "1" } } ] }
//! ```
//!
//! Indices are 1-based. Emission is canonical: keys in a fixed order,
//! entries sorted by `args`, zero coordinates dropped.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::algebra::NLieAlgebra;
use crate::error::FormatError;
use crate::field::{Field, FieldSpec, Rationals};
use crate::linalg::{zero_vector, Matrix};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    args: Vec<usize>,
    value: Map<String, Value>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    arity: usize,
    dim: usize,
    field: String,
    brackets: Vec<RawEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

/// A parsed but field-agnostic algebra file. Scalars stay as strings until
/// [`AlgebraDocument::build`] interprets them in a concrete field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraDocument {
    pub arity: usize,
    pub dim: usize,
    pub field: FieldSpec,
    /// 0-based increasing args with (0-based coordinate, scalar string) pairs.
    pub entries: Vec<(Vec<usize>, Vec<(usize, String)>)>,
    pub labels: Option<Vec<String>>,
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        // Bare integers are tolerated on input.
        Value::Number(n) if n.is_i64() || n.is_u64() => Some(n.to_string()),
        _ => None,
    }
}

pub fn parse_document(text: &str) -> Result<AlgebraDocument, FormatError> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    let field: FieldSpec = raw.field.parse()?;
    if raw.arity < 2 {
        return Err(crate::error::AlgebraError::InvalidArity(raw.arity).into());
    }
    let mut seen = BTreeSet::new();
    let mut entries = Vec::with_capacity(raw.brackets.len());
    for (entry, e) in raw.brackets.iter().enumerate() {
        let bad = |reason: String| FormatError::BadEntry { entry, reason };
        if e.args.len() != raw.arity {
            return Err(bad(format!("args has {} indices, arity is {}", e.args.len(), raw.arity)));
        }
        if e.args.iter().any(|&i| i == 0 || i > raw.dim) {
            return Err(bad(format!("args {:?} out of range 1..={}", e.args, raw.dim)));
        }
        if !e.args.windows(2).all(|w| w[0] < w[1]) {
            return Err(bad(format!("args {:?} are not strictly increasing", e.args)));
        }
        if !seen.insert(e.args.clone()) {
            return Err(FormatError::DuplicateArgs { entry, args: e.args.clone() });
        }
        let mut coords = Vec::with_capacity(e.value.len());
        for (k, v) in &e.value {
            let idx: usize = k.parse().map_err(|_| bad(format!("value key {k:?} is not an index")))?;
            if idx == 0 || idx > raw.dim {
                return Err(bad(format!("value key {idx} out of range 1..={}", raw.dim)));
            }
            let s = scalar_text(v).ok_or_else(|| bad(format!("value[{k}] must be a scalar string")))?;
            coords.push((idx - 1, s));
        }
        entries.push((e.args.iter().map(|i| i - 1).collect(), coords));
    }
    if let Some(l) = &raw.labels {
        if l.len() != raw.dim {
            return Err(FormatError::Json(format!("labels has {} names, dim is {}", l.len(), raw.dim)));
        }
    }
    Ok(AlgebraDocument { arity: raw.arity, dim: raw.dim, field, entries, labels: raw.labels })
}

impl AlgebraDocument {
    /// Builds the algebra over `field`. A field other than the declared one
    /// is accepted only when every scalar is an integer.
    pub fn build<F: Field>(&self, field: &F) -> Result<NLieAlgebra<F>, FormatError> {
        let reinterpret = field.spec() != self.field;
        let mut a = NLieAlgebra::new(field, self.arity, self.dim)?;
        for (entry, (args, coords)) in self.entries.iter().enumerate() {
            let mut v = zero_vector(field, self.dim);
            for (i, s) in coords {
                let x = if reinterpret {
                    let q = Rationals.parse(s)?;
                    let int = Rationals.to_integer(&q).ok_or_else(|| FormatError::BadEntry {
                        entry,
                        reason: format!("scalar {s:?} is not an integer; cannot reinterpret over {}", field.spec()),
                    })?;
                    field.parse(&int.to_string())?
                } else {
                    field.parse(s)?
                };
                v[*i] = field.add(&v[*i], &x);
            }
            a.set_bracket(args, v)?;
        }
        if let Some(l) = &self.labels {
            a = a.with_labels(l.clone());
        }
        Ok(a)
    }
}

/// Parses an algebra file over the field it declares or, for integral tables,
/// over `field`.
pub fn parse_algebra<F: Field>(text: &str, field: &F) -> Result<NLieAlgebra<F>, FormatError> {
    parse_document(text)?.build(field)
}

/// Canonical JSON for an algebra, terminated by a newline.
pub fn to_json<F: Field>(a: &NLieAlgebra<F>) -> String {
    let f = a.field();
    let brackets = a
        .brackets()
        .iter()
        .map(|(k, v)| {
            let mut value = Map::new();
            for (i, x) in v.iter().enumerate() {
                if !f.is_zero(x) {
                    value.insert((i + 1).to_string(), Value::String(f.render(x)));
                }
            }
            RawEntry { args: k.iter().map(|i| i + 1).collect(), value }
        })
        .collect();
    let raw = RawDocument {
        arity: a.arity(),
        dim: a.dim(),
        field: f.spec().to_string(),
        brackets,
        labels: a.labels().map(|l| l.to_vec()),
    };
    let mut s = serde_json::to_string_pretty(&raw).expect("serializable");
    s.push('\n');
    s
}

/// A matrix as rows of scalar strings.
pub fn matrix_to_json<F: Field>(m: &Matrix<F>) -> Value {
    let f = m.field();
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(|x| Value::String(f.render(x))).collect()))
            .collect(),
    )
}

pub fn matrix_from_json<F: Field>(v: &Value, field: &F) -> Result<Matrix<F>, FormatError> {
    let rows = v.as_array().ok_or_else(|| FormatError::Json("matrix must be an array of rows".into()))?;
    let cols = rows.first().and_then(|r| r.as_array()).map_or(0, |r| r.len());
    let mut out = Vec::with_capacity(rows.len());
    for (ri, r) in rows.iter().enumerate() {
        let r = r.as_array().ok_or_else(|| FormatError::Json(format!("matrix row {ri} is not an array")))?;
        let row = r
            .iter()
            .map(|x| {
                let s = scalar_text(x).ok_or_else(|| FormatError::Json(format!("matrix row {ri}: bad scalar")))?;
                Ok(field.parse(&s)?)
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        out.push(row);
    }
    Matrix::from_rows(field, cols, out).map_err(|e| FormatError::Json(e.to_string()))
}
