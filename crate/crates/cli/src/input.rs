//! Matrix, Jordan and polynomial files.
//!
//! Every file is a JSON object. Scalars are `[re, im]` pairs whose entries are
//! JSON numbers or strings holding a decimal or an exact fraction `"n/d"`.

use std::path::Path;

use matroot::primary::{JordanForm, JordanGroup};
use matroot::{Complex64, ComplexMatrix, MonicPolynomial};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>, CliError> {
    v.as_object()
        .ok_or_else(|| CliError::Parse(format!("{what} must be a JSON object")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, CliError> {
    obj.get(key)
        .ok_or_else(|| CliError::Parse(format!("missing field `{key}`")))
}

/// A decimal or `n/d` fraction, rounded once to binary64 per component.
pub fn parse_real(v: &Value) -> Result<f64, CliError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        other => return Err(CliError::Parse(format!("expected a number, got {other}"))),
    };
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| CliError::Parse(format!("not a number: `{text}`")))
    };
    let value = match text.split_once('/') {
        Some((num, den)) => {
            let (n, d) = (parse(num)?, parse(den)?);
            if d == 0.0 {
                return Err(CliError::Parse(format!("zero denominator in `{text}`")));
            }
            n / d
        }
        None => parse(&text)?,
    };
    if !value.is_finite() {
        return Err(CliError::Parse(format!("non-finite value `{text}`")));
    }
    Ok(value)
}

pub fn parse_complex(v: &Value) -> Result<Complex64, CliError> {
    match v.as_array().map(Vec::as_slice) {
        Some([re, im]) => Ok(Complex64::new(parse_real(re)?, parse_real(im)?)),
        _ => Err(CliError::Parse(format!("expected an [re, im] pair, got {v}"))),
    }
}

fn parse_dim(obj: &Map<String, Value>) -> Result<usize, CliError> {
    let dim = field(obj, "dim")?
        .as_u64()
        .ok_or_else(|| CliError::Parse("`dim` must be a nonnegative integer".into()))?;
    if dim == 0 {
        return Err(CliError::Parse("`dim` must be positive".into()));
    }
    Ok(dim as usize)
}

fn parse_data(obj: &Map<String, Value>, dim: usize) -> Result<ComplexMatrix, CliError> {
    let data = field(obj, "data")?
        .as_array()
        .ok_or_else(|| CliError::Parse("`data` must be a list".into()))?;
    if data.len() != dim * dim {
        return Err(CliError::Parse(format!(
            "`data` holds {} entries, expected {}",
            data.len(),
            dim * dim
        )));
    }
    let entries = data.iter().map(parse_complex).collect::<Result<Vec<_>, _>>()?;
    ComplexMatrix::from_row_major(dim, entries).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn matrix_from_value(v: &Value) -> Result<ComplexMatrix, CliError> {
    let obj = object(v, "matrix")?;
    let dim = parse_dim(obj)?;
    parse_data(obj, dim)
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix, CliError> {
    matrix_from_value(&read_json(path)?)
}

/// A matrix file or a report carrying a `root` matrix.
pub fn read_matrix_or_report(path: &Path) -> Result<ComplexMatrix, CliError> {
    let v = read_json(path)?;
    match v.get("root") {
        Some(root) => matrix_from_value(root),
        None => matrix_from_value(&v),
    }
}

/// `{"coeffs": [...]}` holding `a_0..a_{r-1}` of `z^r - a_0 z^{r-1} - ... - a_{r-1}`.
pub fn read_polynomial(path: &Path) -> Result<MonicPolynomial, CliError> {
    let v = read_json(path)?;
    let obj = object(&v, "polynomial")?;
    let coeffs = field(obj, "coeffs")?
        .as_array()
        .ok_or_else(|| CliError::Parse("`coeffs` must be a list".into()))?
        .iter()
        .map(parse_complex)
        .collect::<Result<Vec<_>, _>>()?;
    MonicPolynomial::new(coeffs).map_err(|e| CliError::Parse(e.to_string()))
}

pub struct JordanInput {
    pub form: JordanForm,
    /// The block-diagonal matrix laid out as `form`.
    pub block_diagonal: ComplexMatrix,
    /// `S` with input matrix `S J S^{-1}`.
    pub similarity: Option<ComplexMatrix>,
}

impl JordanInput {
    /// The matrix the roots are taken of.
    pub fn matrix(&self) -> Result<ComplexMatrix, CliError> {
        match &self.similarity {
            None => Ok(self.block_diagonal.clone()),
            Some(s) => {
                let inv = s.inverse().map_err(CliError::Core)?;
                Ok(&(s * &self.block_diagonal) * &inv)
            }
        }
    }
}

/// `blocks` plus optional `dim`/`data` (the block-diagonal matrix, defaulting
/// to the Jordan matrix) and optional `similarity`.
pub fn read_jordan(path: &Path) -> Result<JordanInput, CliError> {
    let v = read_json(path)?;
    let obj = object(&v, "Jordan file")?;
    let groups = field(obj, "blocks")?
        .as_array()
        .ok_or_else(|| CliError::Parse("`blocks` must be a list".into()))?
        .iter()
        .map(|b| {
            let block = object(b, "block")?;
            let lambda = parse_complex(field(block, "lambda")?)?;
            let sizes = field(block, "sizes")?
                .as_array()
                .ok_or_else(|| CliError::Parse("`sizes` must be a list".into()))?
                .iter()
                .map(|s| {
                    s.as_u64()
                        .map(|n| n as usize)
                        .ok_or_else(|| CliError::Parse("block sizes must be integers".into()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(JordanGroup { lambda, sizes })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let form = JordanForm::new(groups).map_err(|e| CliError::Parse(e.to_string()))?;
    let block_diagonal = if obj.contains_key("data") {
        let dim = parse_dim(obj)?;
        if dim != form.dim() {
            return Err(CliError::Parse(format!("`dim` {dim} but blocks span {}", form.dim())));
        }
        parse_data(obj, dim)?
    } else {
        form.matrix()
    };
    let similarity = match obj.get("similarity") {
        Some(s) => {
            let s = matrix_from_value(s)?;
            if s.dim() != form.dim() {
                return Err(CliError::Parse("similarity has the wrong dimension".into()));
            }
            Some(s)
        }
        None => None,
    };
    Ok(JordanInput {
        form,
        block_diagonal,
        similarity,
    })
}

/// SHA-256 over the dimension and the IEEE bits of every entry, so that
/// `"1/2"` and `0.5` hash alike.
pub fn digest(m: &ComplexMatrix) -> String {
    let mut hasher = Sha256::new();
    hasher.update((m.dim() as u64).to_le_bytes());
    for z in m.as_slice() {
        hasher.update(z.re.to_bits().to_le_bytes());
        hasher.update(z.im.to_bits().to_le_bytes());
    }
    hex::encode(hasher.finalize())
}
