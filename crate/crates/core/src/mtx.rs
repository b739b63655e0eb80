//! Matrix Market reader and writer.
//!
//! Coordinate files become canonical CSR matrices (duplicates summed), array
//! files become dense matrices. Symmetric, Hermitian and skew-symmetric
//! storage is expanded to general form on read. The writer always emits
//! `general` storage and prints every value in shortest round-trip form, so
//! reading back what was written reproduces the matrix exactly.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Mode};
use num_complex::Complex64;
use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Coordinate,
    Array,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Real,
    Complex,
    Integer,
    Pattern,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Symmetry {
    General,
    Symmetric,
    Hermitian,
    SkewSymmetric,
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_header(line: &str, lineno: usize) -> Result<(Format, Field, Symmetry)> {
    let toks: Vec<String> = line.split_whitespace().map(|t| t.to_ascii_lowercase()).collect();
    if toks.first().map(String::as_str) != Some("%%matrixmarket") {
        return Err(perr(lineno, "header must start with %%MatrixMarket"));
    }
    if toks.len() != 5 {
        return Err(perr(lineno, "header must have the form: %%MatrixMarket matrix <format> <field> <symmetry>"));
    }
    if toks[1] != "matrix" {
        return Err(perr(lineno, format!("unsupported object {:?}", toks[1])));
    }
    let format = match toks[2].as_str() {
        "coordinate" => Format::Coordinate,
        "array" => Format::Array,
        other => return Err(perr(lineno, format!("unknown format {other:?}"))),
    };
    let field = match toks[3].as_str() {
        "real" | "double" => Field::Real,
        "complex" => Field::Complex,
        "integer" => Field::Integer,
        "pattern" => Field::Pattern,
        other => return Err(perr(lineno, format!("unknown field {other:?}"))),
    };
    let symmetry = match toks[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        "hermitian" => Symmetry::Hermitian,
        "skew-symmetric" => Symmetry::SkewSymmetric,
        other => return Err(perr(lineno, format!("unknown symmetry {other:?}"))),
    };
    if field == Field::Pattern && format == Format::Array {
        return Err(perr(lineno, "pattern field requires coordinate format"));
    }
    if symmetry == Symmetry::Hermitian && field != Field::Complex {
        return Err(perr(lineno, "hermitian symmetry requires complex field"));
    }
    Ok((format, field, symmetry))
}

fn parse_usize(tok: Option<&str>, lineno: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| perr(lineno, format!("missing {what}")))?;
    tok.parse::<usize>()
        .map_err(|_| perr(lineno, format!("{what} {tok:?} is not a non-negative integer")))
}

fn parse_f64(tok: Option<&str>, lineno: usize) -> Result<f64> {
    let tok = tok.ok_or_else(|| perr(lineno, "missing value"))?;
    let v = tok
        .parse::<f64>()
        .map_err(|_| perr(lineno, format!("{tok:?} is not a number")))?;
    if !v.is_finite() {
        return Err(perr(lineno, format!("non-finite value {tok:?}")));
    }
    Ok(v)
}

fn parse_value(toks: &mut std::str::SplitWhitespace<'_>, field: Field, lineno: usize) -> Result<Complex64> {
    match field {
        Field::Pattern => Ok(Complex64::new(1.0, 0.0)),
        Field::Real => Ok(Complex64::new(parse_f64(toks.next(), lineno)?, 0.0)),
        Field::Integer => {
            let tok = toks.next().ok_or_else(|| perr(lineno, "missing value"))?;
            let v = tok
                .parse::<i64>()
                .map_err(|_| perr(lineno, format!("{tok:?} is not an integer")))?;
            Ok(Complex64::new(v as f64, 0.0))
        }
        Field::Complex => {
            let re = parse_f64(toks.next(), lineno)?;
            let im = parse_f64(toks.next(), lineno)?;
            Ok(Complex64::new(re, im))
        }
    }
}

/// Entry mirrored across the diagonal for non-general storage.
fn mirror(z: Complex64, symmetry: Symmetry) -> Complex64 {
    match symmetry {
        Symmetry::General | Symmetry::Symmetric => z,
        Symmetry::Hermitian => z.conj(),
        Symmetry::SkewSymmetric => -z,
    }
}

/// Reads a Matrix Market document.
pub fn read_matrix_market<R: Read>(reader: R) -> Result<Matrix> {
    let reader = BufReader::new(reader);
    let mut lines = reader.lines().enumerate().map(|(k, l)| (k + 1, l));

    let (lineno, header) = match lines.next() {
        Some((n, Ok(l))) => (n, l),
        Some((n, Err(e))) => return Err(perr(n, e.to_string())),
        None => return Err(perr(1, "empty input")),
    };
    let (format, field, symmetry) = parse_header(&header, lineno)?;

    // Data lines: skip comments and blank lines.
    let mut data = lines.filter_map(|(n, l)| match l {
        Ok(l) => {
            let t = l.trim();
            if t.is_empty() || t.starts_with('%') {
                None
            } else {
                Some(Ok((n, t.to_string())))
            }
        }
        Err(e) => Some(Err(perr(n, e.to_string()))),
    });

    let (size_line, size) = data.next().ok_or_else(|| perr(lineno + 1, "missing size line"))??;
    let mut toks = size.split_whitespace();
    let nrows = parse_usize(toks.next(), size_line, "row count")?;
    let ncols = parse_usize(toks.next(), size_line, "column count")?;
    if nrows == 0 || ncols == 0 {
        return Err(perr(size_line, "matrix dimensions must be positive"));
    }
    if symmetry != Symmetry::General && nrows != ncols {
        return Err(perr(size_line, "non-general symmetry requires a square matrix"));
    }
    let complex = field == Field::Complex;

    let matrix = match format {
        Format::Coordinate => {
            let nnz = parse_usize(toks.next(), size_line, "entry count")?;
            if toks.next().is_some() {
                return Err(perr(size_line, "unexpected token on size line"));
            }
            let mut t = Vec::with_capacity(nnz);
            for _ in 0..nnz {
                let (n, line) = data
                    .next()
                    .ok_or_else(|| perr(size_line, format!("expected {nnz} entries, file ended early")))??;
                let mut toks = line.split_whitespace();
                let i = parse_usize(toks.next(), n, "row index")?;
                let j = parse_usize(toks.next(), n, "column index")?;
                if i == 0 || i > nrows || j == 0 || j > ncols {
                    return Err(perr(n, format!("index ({i}, {j}) out of bounds for {nrows}x{ncols}")));
                }
                let z = parse_value(&mut toks, field, n)?;
                if toks.next().is_some() {
                    return Err(perr(n, "unexpected trailing token"));
                }
                let (i, j) = (i - 1, j - 1);
                if symmetry != Symmetry::General && j > i {
                    return Err(perr(n, "entries of symmetric storage must lie on or below the diagonal"));
                }
                if symmetry == Symmetry::SkewSymmetric && i == j && z != Complex64::new(0.0, 0.0) {
                    return Err(perr(n, "skew-symmetric matrix has a nonzero diagonal entry"));
                }
                t.push((i, j, z));
                if symmetry != Symmetry::General && i != j {
                    t.push((j, i, mirror(z, symmetry)));
                }
            }
            if complex {
                Matrix::from_complex_triplets(nrows, ncols, &t)?
            } else {
                let t: Vec<_> = t.into_iter().map(|(i, j, z)| (i, j, z.re)).collect();
                Matrix::from_triplets(nrows, ncols, &t)?
            }
        }
        Format::Array => {
            if toks.next().is_some() {
                return Err(perr(size_line, "unexpected token on size line"));
            }
            let mut dense = vec![Complex64::new(0.0, 0.0); nrows * ncols];
            for j in 0..ncols {
                let first = match symmetry {
                    Symmetry::General => 0,
                    Symmetry::Symmetric | Symmetry::Hermitian => j,
                    Symmetry::SkewSymmetric => j + 1,
                };
                for i in first..nrows {
                    let (n, line) = data
                        .next()
                        .ok_or_else(|| perr(size_line, "array data ended early"))??;
                    let mut toks = line.split_whitespace();
                    let z = parse_value(&mut toks, field, n)?;
                    if toks.next().is_some() {
                        return Err(perr(n, "unexpected trailing token"));
                    }
                    dense[i * ncols + j] = z;
                    if symmetry != Symmetry::General && i != j {
                        dense[j * ncols + i] = mirror(z, symmetry);
                    }
                }
            }
            if complex {
                Matrix::from_dense_complex(nrows, ncols, dense)?
            } else {
                Matrix::from_dense(nrows, ncols, dense.into_iter().map(|z| z.re).collect())?
            }
        }
    };
    if let Some(extra) = data.next() {
        let (n, _) = extra?;
        return Err(perr(n, "unexpected data after the last entry"));
    }
    Ok(matrix)
}

pub fn parse_matrix_market_str(s: &str) -> Result<Matrix> {
    read_matrix_market(s.as_bytes())
}

/// Reads a Matrix Market file from disk.
pub fn parse_matrix_market(path: impl AsRef<Path>) -> Result<Matrix> {
    let path = path.as_ref();
    let f = std::fs::File::open(path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("cannot open {}: {e}", path.display()),
    })?;
    read_matrix_market(f)
}

fn fmt_num(out: &mut String, x: f64) {
    let a = x.abs();
    if x == 0.0 || (1e-5..1e16).contains(&a) {
        write!(out, "{x}").unwrap();
    } else {
        write!(out, "{x:e}").unwrap();
    }
}

fn fmt_entry(out: &mut String, z: Complex64, mode: Mode) {
    fmt_num(out, z.re);
    if mode == Mode::Complex {
        out.push(' ');
        fmt_num(out, z.im);
    }
}

/// Serializes `a` as Matrix Market text: coordinate format for sparse
/// storage, array format for dense storage.
pub fn to_matrix_market_string(a: &Matrix) -> String {
    let mut out = String::new();
    let field = match a.mode() {
        Mode::Real => "real",
        Mode::Complex => "complex",
    };
    if a.is_sparse() {
        let entries: Vec<_> = a.entries().collect();
        writeln!(out, "%%MatrixMarket matrix coordinate {field} general").unwrap();
        writeln!(out, "{} {} {}", a.nrows(), a.ncols(), entries.len()).unwrap();
        for (i, j, z) in entries {
            write!(out, "{} {} ", i + 1, j + 1).unwrap();
            fmt_entry(&mut out, z, a.mode());
            out.push('\n');
        }
    } else {
        writeln!(out, "%%MatrixMarket matrix array {field} general").unwrap();
        writeln!(out, "{} {}", a.nrows(), a.ncols()).unwrap();
        for j in 0..a.ncols() {
            for i in 0..a.nrows() {
                fmt_entry(&mut out, a.get(i, j), a.mode());
                out.push('\n');
            }
        }
    }
    out
}

pub fn write_matrix_market<W: Write>(a: &Matrix, mut w: W) -> std::io::Result<()> {
    w.write_all(to_matrix_market_string(a).as_bytes())
}
