//! Plain-text formats.
//!
//! Matrix files are CSV: the header line `riesz-matrix,beta=<b>,m=<m>`
//! followed by one matrix per row, each row holding the realified lower
//! triangle (row-major; one real per diagonal entry, `beta` reals per
//! off-diagonal entry in `w,x,y,z` order). JSON-lines matrix files hold one
//! object `{"index":..,"beta":..,"m":..,"coords":[..]}` per line.
//!
//! Spectrum files are CSV rows of eigenvalues with an optional header line
//! starting with `lambda`.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use riesz_core::algebra::{Algebra, HermitianMatrix, PositiveDefiniteMatrix};
use riesz_core::riesz::Scale;

use crate::report::Sci;

pub const MATRIX_TAG: &str = "riesz-matrix";

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Core(#[from] riesz_core::Error),
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

/// Matrices of one algebra and order, as read from a file.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixSet {
    pub algebra: Algebra,
    pub order: usize,
    pub matrices: Vec<HermitianMatrix>,
}

pub fn matrix_header(algebra: Algebra, order: usize) -> String {
    format!("{MATRIX_TAG},beta={},m={order}", algebra.beta())
}

pub fn matrix_csv_row(x: &HermitianMatrix) -> String {
    join(&x.realified())
}

pub fn matrix_json_row(index: usize, x: &HermitianMatrix) -> String {
    #[derive(serde::Serialize)]
    struct Row {
        index: usize,
        beta: u32,
        m: usize,
        coords: Vec<Sci>,
    }
    let row = Row {
        index,
        beta: x.algebra().beta(),
        m: x.order(),
        coords: x.realified().into_iter().map(Sci).collect(),
    };
    serde_json::to_string(&row).expect("matrix serialization")
}

/// Comma-separated values with 17 significant digits.
pub fn join(values: &[f64]) -> String {
    let mut s = String::new();
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(&Sci(*v).to_string());
    }
    s
}

pub fn write_matrices<'a, W: Write>(
    mut w: W,
    algebra: Algebra,
    order: usize,
    matrices: impl IntoIterator<Item = &'a HermitianMatrix>,
) -> io::Result<()> {
    writeln!(w, "{}", matrix_header(algebra, order))?;
    for x in matrices {
        writeln!(w, "{}", matrix_csv_row(x))?;
    }
    Ok(())
}

fn parse_header(line: &str) -> Result<(Algebra, usize), FormatError> {
    let mut fields = line.trim().split(',');
    if fields.next() != Some(MATRIX_TAG) {
        return Err(parse_err(1, format!("expected a `{MATRIX_TAG},beta=..,m=..` header")));
    }
    let (mut beta, mut m) = (None, None);
    for f in fields {
        match f.trim().split_once('=') {
            Some(("beta", v)) => beta = v.parse::<u32>().ok(),
            Some(("m", v)) => m = v.parse::<usize>().ok(),
            _ => return Err(parse_err(1, format!("unknown header field {f:?}"))),
        }
    }
    match (beta, m) {
        (Some(b), Some(m)) if m > 0 => Ok((Algebra::from_beta(b)?, m)),
        _ => Err(parse_err(1, "header needs beta and a positive m")),
    }
}

fn parse_numbers(line: &str, no: usize) -> Result<Vec<f64>, FormatError> {
    line.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| parse_err(no, format!("bad number {:?}", t.trim())))
        })
        .collect()
}

/// Reads either format, detected from the first non-empty line.
pub fn read_matrices<R: BufRead>(r: R) -> Result<MatrixSet, FormatError> {
    let mut lines = r.lines().enumerate().filter_map(|(i, l)| match l {
        Ok(s) if s.trim().is_empty() => None,
        other => Some((i + 1, other)),
    });
    let Some((_, first)) = lines.next() else {
        return Err(parse_err(1, "empty matrix file"));
    };
    let first = first?;
    if first.trim_start().starts_with('{') {
        return read_json_matrices(std::iter::once(Ok((1, first))).chain(lines.map(|(i, l)| l.map(|s| (i, s)))));
    }
    let (algebra, order) = parse_header(&first)?;
    let dim = algebra.hermitian_dim(order);
    let mut matrices = Vec::new();
    for (no, line) in lines {
        let coords = parse_numbers(&line?, no)?;
        if coords.len() != dim {
            return Err(parse_err(no, format!("expected {dim} coordinates, found {}", coords.len())));
        }
        matrices.push(HermitianMatrix::from_realified(algebra, order, &coords).map_err(|e| parse_err(no, e.to_string()))?);
    }
    Ok(MatrixSet {
        algebra,
        order,
        matrices,
    })
}

fn read_json_matrices(lines: impl Iterator<Item = io::Result<(usize, String)>>) -> Result<MatrixSet, FormatError> {
    #[derive(serde::Deserialize)]
    struct Row {
        beta: u32,
        m: usize,
        coords: Vec<f64>,
    }
    let mut set: Option<MatrixSet> = None;
    for item in lines {
        let (no, line) = item?;
        let row: Row = serde_json::from_str(&line).map_err(|e| parse_err(no, e.to_string()))?;
        let algebra = Algebra::from_beta(row.beta)?;
        let s = set.get_or_insert_with(|| MatrixSet {
            algebra,
            order: row.m,
            matrices: Vec::new(),
        });
        if s.algebra != algebra || s.order != row.m {
            return Err(parse_err(no, "rows disagree on beta or m"));
        }
        s.matrices
            .push(HermitianMatrix::from_realified(algebra, row.m, &row.coords).map_err(|e| parse_err(no, e.to_string()))?);
    }
    set.ok_or_else(|| parse_err(1, "empty matrix file"))
}

pub fn read_matrix_file(path: &Path) -> Result<MatrixSet, FormatError> {
    read_matrices(BufReader::new(File::open(path)?))
}

/// Rows of eigenvalues (any order within a row); a header line starting
/// with `lambda` is skipped.
pub fn read_spectra<R: BufRead>(r: R) -> Result<Vec<Vec<f64>>, FormatError> {
    let mut rows = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || (i == 0 && t.starts_with("lambda")) {
            continue;
        }
        rows.push(parse_numbers(t, i + 1)?);
    }
    Ok(rows)
}

pub fn spectrum_header(m: usize) -> String {
    (1..=m).map(|i| format!("lambda_{i}")).collect::<Vec<_>>().join(",")
}

/// Scale literal: `identity`, `scalar:<s>`, `diag:<d1>,<d2>,..` or the path
/// of a matrix file holding exactly one matrix.
pub fn parse_scale(spec: &str, algebra: Algebra, order: usize) -> Result<Scale, FormatError> {
    let bad = |m: String| parse_err(0, m);
    if spec == "identity" {
        return Ok(Scale::Isotropic(1.0));
    }
    if let Some(s) = spec.strip_prefix("scalar:") {
        let s: f64 = s.trim().parse().map_err(|_| bad(format!("bad scalar {s:?}")))?;
        return Ok(Scale::Isotropic(s));
    }
    if let Some(d) = spec.strip_prefix("diag:") {
        let diag = parse_numbers(d, 0)?;
        if diag.len() != order {
            return Err(bad(format!("diag needs {order} entries, found {}", diag.len())));
        }
        return Ok(Scale::Matrix(PositiveDefiniteMatrix::diagonal(algebra, &diag)?));
    }
    let set = read_matrix_file(Path::new(spec))?;
    if set.algebra != algebra || set.order != order {
        return Err(bad(format!(
            "scale file holds beta={}, m={}; expected beta={}, m={order}",
            set.algebra.beta(),
            set.order,
            algebra.beta()
        )));
    }
    match <[HermitianMatrix; 1]>::try_from(set.matrices) {
        Ok([x]) => Ok(Scale::Matrix(x.positive_definite()?)),
        Err(v) => Err(bad(format!("scale file must hold one matrix, found {}", v.len()))),
    }
}
