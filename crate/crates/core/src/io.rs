//! Matrix Market exchange files and plain vector files.
//!
//! Matrices use the coordinate Matrix Market format (`real` or `complex`
//! field, `general` or `symmetric` symmetry). Vectors use either a plain text
//! file with one entry per line (`re` for real data, `re im` for complex;
//! `%` starts a comment) or a JSON array.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::error::{AveError, Result};
use crate::scalar::Scalar;
use crate::sparse::SparseMatrix;
use crate::vector::Vector;

/// A matrix read from disk, in whichever field the file declares.
#[derive(Debug, Clone)]
pub enum MatrixData {
    Real(SparseMatrix<f64>),
    Complex(SparseMatrix<Complex64>),
}

impl MatrixData {
    /// Promotes real data to the complex field.
    pub fn into_complex(self) -> SparseMatrix<Complex64> {
        match self {
            MatrixData::Real(m) => m.to_complex(),
            MatrixData::Complex(m) => m,
        }
    }

    pub fn nrows(&self) -> usize {
        match self {
            MatrixData::Real(m) => m.nrows(),
            MatrixData::Complex(m) => m.nrows(),
        }
    }

    pub fn ncols(&self) -> usize {
        match self {
            MatrixData::Real(m) => m.ncols(),
            MatrixData::Complex(m) => m.ncols(),
        }
    }
}

/// A vector read from disk.
#[derive(Debug, Clone)]
pub enum VectorData {
    Real(Vector<f64>),
    Complex(Vector<Complex64>),
}

impl VectorData {
    pub fn into_complex(self) -> Vector<Complex64> {
        match self {
            VectorData::Real(v) => v.to_complex(),
            VectorData::Complex(v) => v,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            VectorData::Real(v) => v.len(),
            VectorData::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Writes a matrix in coordinate Matrix Market format (`general` symmetry).
pub fn write_matrix_market<T: Scalar, W: Write>(m: &SparseMatrix<T>, w: W) -> Result<()> {
    let mut w = BufWriter::new(w);
    let field = if T::IS_COMPLEX { "complex" } else { "real" };
    writeln!(w, "%%MatrixMarket matrix coordinate {field} general")?;
    writeln!(w, "{} {} {}", m.nrows(), m.ncols(), m.nnz())?;
    for (i, j, v) in m.triplets() {
        if T::IS_COMPLEX {
            writeln!(w, "{} {} {} {}", i + 1, j + 1, v.real_part(), v.imag_part())?;
        } else {
            writeln!(w, "{} {} {}", i + 1, j + 1, v.real_part())?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn save_matrix_market<T: Scalar>(m: &SparseMatrix<T>, path: impl AsRef<Path>) -> Result<()> {
    write_matrix_market(m, File::create(path)?)
}

struct MmHeader {
    complex: bool,
    symmetric: bool,
}

fn parse_mm_header(line: &str) -> Result<MmHeader> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() < 5 || !fields[0].eq_ignore_ascii_case("%%MatrixMarket") {
        return Err(AveError::parse(
            1,
            "expected '%%MatrixMarket matrix coordinate <field> <symmetry>'",
        ));
    }
    if !fields[1].eq_ignore_ascii_case("matrix") || !fields[2].eq_ignore_ascii_case("coordinate") {
        return Err(AveError::parse(
            1,
            "only 'matrix coordinate' files are supported",
        ));
    }
    let complex = match fields[3].to_ascii_lowercase().as_str() {
        "real" => false,
        "complex" => true,
        other => {
            return Err(AveError::parse(
                1,
                format!("unsupported field '{other}' (expected real or complex)"),
            ))
        }
    };
    let symmetric = match fields[4].to_ascii_lowercase().as_str() {
        "general" => false,
        "symmetric" => true,
        other => {
            return Err(AveError::parse(
                1,
                format!("unsupported symmetry '{other}' (expected general or symmetric)"),
            ))
        }
    };
    Ok(MmHeader { complex, symmetric })
}

/// Reads a coordinate Matrix Market file.
pub fn read_matrix_market<R: Read>(r: R) -> Result<MatrixData> {
    let reader = BufReader::new(r);
    let mut lines = reader.lines().enumerate();

    let header = match lines.next() {
        Some((_, line)) => parse_mm_header(&line?)?,
        None => return Err(AveError::parse(1, "empty file")),
    };

    let mut dims: Option<(usize, usize, usize)> = None;
    let mut entries_read = 0usize;
    let mut real_triplets: Vec<(usize, usize, f64)> = Vec::new();
    let mut complex_triplets: Vec<(usize, usize, Complex64)> = Vec::new();

    for (idx, line) in lines {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if dims.is_none() {
            if tokens.len() != 3 {
                return Err(AveError::parse(lineno, "expected 'nrows ncols nnz'"));
            }
            let parse_dim = |t: &str| -> Result<usize> {
                t.parse()
                    .map_err(|_| AveError::parse(lineno, format!("bad dimension '{t}'")))
            };
            dims = Some((
                parse_dim(tokens[0])?,
                parse_dim(tokens[1])?,
                parse_dim(tokens[2])?,
            ));
            continue;
        }

        let expected = if header.complex { 4 } else { 3 };
        if tokens.len() != expected {
            return Err(AveError::parse(
                lineno,
                format!("expected {expected} fields, found {}", tokens.len()),
            ));
        }
        let i: usize = tokens[0]
            .parse()
            .map_err(|_| AveError::parse(lineno, format!("bad row index '{}'", tokens[0])))?;
        let j: usize = tokens[1]
            .parse()
            .map_err(|_| AveError::parse(lineno, format!("bad column index '{}'", tokens[1])))?;
        if i == 0 || j == 0 {
            return Err(AveError::parse(lineno, "indices are 1-based"));
        }
        let parse_val = |t: &str| -> Result<f64> {
            let v: f64 = t
                .parse()
                .map_err(|_| AveError::parse(lineno, format!("bad value '{t}'")))?;
            if !v.is_finite() {
                return Err(AveError::parse(lineno, "non-finite value"));
            }
            Ok(v)
        };
        let (i, j) = (i - 1, j - 1);
        entries_read += 1;
        if header.complex {
            let v = Complex64::new(parse_val(tokens[2])?, parse_val(tokens[3])?);
            complex_triplets.push((i, j, v));
            if header.symmetric && i != j {
                complex_triplets.push((j, i, v));
            }
        } else {
            let v = parse_val(tokens[2])?;
            real_triplets.push((i, j, v));
            if header.symmetric && i != j {
                real_triplets.push((j, i, v));
            }
        }
    }

    let (nrows, ncols, nnz) = dims.ok_or_else(|| AveError::parse(0, "missing dimension line"))?;
    if entries_read != nnz {
        return Err(AveError::parse(
            0,
            format!("file declares {nnz} entries but contains {entries_read}"),
        ));
    }

    if header.complex {
        Ok(MatrixData::Complex(SparseMatrix::from_triplets(
            nrows,
            ncols,
            &complex_triplets,
        )?))
    } else {
        Ok(MatrixData::Real(SparseMatrix::from_triplets(
            nrows,
            ncols,
            &real_triplets,
        )?))
    }
}

pub fn load_matrix_market(path: impl AsRef<Path>) -> Result<MatrixData> {
    read_matrix_market(File::open(path)?)
}

/// Writes a vector as plain text, one entry per line (`re im` for complex).
pub fn write_vector_text<T: Scalar, W: Write>(v: &Vector<T>, w: W) -> Result<()> {
    let mut w = BufWriter::new(w);
    for entry in v.iter() {
        if T::IS_COMPLEX {
            writeln!(w, "{} {}", entry.real_part(), entry.imag_part())?;
        } else {
            writeln!(w, "{}", entry.real_part())?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn save_vector_text<T: Scalar>(v: &Vector<T>, path: impl AsRef<Path>) -> Result<()> {
    write_vector_text(v, File::create(path)?)
}

/// Reads a plain text vector file; the token count per line (1 or 2) decides
/// the field.
pub fn read_vector_text<R: Read>(r: R) -> Result<VectorData> {
    let reader = BufReader::new(r);
    let mut width: Option<usize> = None;
    let mut reals = Vec::new();
    let mut imags = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match width {
            None if tokens.len() == 1 || tokens.len() == 2 => width = Some(tokens.len()),
            Some(w) if w == tokens.len() => {}
            _ => {
                return Err(AveError::parse(
                    lineno,
                    "expected one (real) or two (complex) numbers per line",
                ))
            }
        }
        let parse = |t: &str| -> Result<f64> {
            t.parse()
                .map_err(|_| AveError::parse(lineno, format!("bad number '{t}'")))
        };
        reals.push(parse(tokens[0])?);
        imags.push(if tokens.len() == 2 {
            parse(tokens[1])?
        } else {
            0.0
        });
    }
    match width {
        Some(2) => Ok(VectorData::Complex(Vector::checked(
            reals
                .into_iter()
                .zip(imags)
                .map(|(re, im)| Complex64::new(re, im))
                .collect(),
        )?)),
        _ => Ok(VectorData::Real(Vector::checked(reals)?)),
    }
}

pub fn load_vector_text(path: impl AsRef<Path>) -> Result<VectorData> {
    read_vector_text(File::open(path)?)
}

/// Writes a vector as a JSON array (`[v, ...]` real, `[{"re":..,"im":..}, ...]`
/// complex).
pub fn write_vector_json<T: Scalar + serde::Serialize, W: Write>(
    v: &Vector<T>,
    w: W,
) -> Result<()> {
    serde_json::to_writer(BufWriter::new(w), v)
        .map_err(|e| AveError::parse(0, format!("json encode: {e}")))
}

/// Reads a JSON vector in either field.
pub fn read_vector_json<R: Read>(r: R) -> Result<VectorData> {
    let value: serde_json::Value = serde_json::from_reader(BufReader::new(r))
        .map_err(|e| AveError::parse(0, format!("json decode: {e}")))?;
    let arr = value
        .as_array()
        .ok_or_else(|| AveError::parse(0, "expected a JSON array"))?;
    let complex = arr.iter().any(|e| e.is_object() || e.is_array());
    if complex {
        let mut out = Vec::with_capacity(arr.len());
        for e in arr {
            let z: Complex64 = serde_json::from_value(e.clone())
                .map_err(|err| AveError::parse(0, format!("bad complex entry: {err}")))?;
            out.push(z);
        }
        Ok(VectorData::Complex(Vector::checked(out)?))
    } else {
        let mut out = Vec::with_capacity(arr.len());
        for e in arr {
            let v = e
                .as_f64()
                .ok_or_else(|| AveError::parse(0, "bad real entry"))?;
            out.push(v);
        }
        Ok(VectorData::Real(Vector::checked(out)?))
    }
}

/// Reads a vector file, choosing the format by extension (`.json` or text).
pub fn load_vector(path: impl AsRef<Path>) -> Result<VectorData> {
    let path = path.as_ref();
    if path.extension().and_then(|e| e.to_str()) == Some("json") {
        read_vector_json(File::open(path)?)
    } else {
        load_vector_text(path)
    }
}
