//! Dense Hermitian matrices and vectors over the real or complex field.
//!
//! Storage is dense row-major; complex scalars are `(re, im)` pairs.
//! Construction symmetrizes, so `entries[i][j] == conj(entries[j][i])`
//! holds exactly, and all entries are required to be finite.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::{Error, Result};

/// Scalar field of a matrix or vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Field::Real => f.write_str("real"),
            Field::Complex => f.write_str("complex"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum MatrixData {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

/// A dense `n x n` real-symmetric or complex-Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    pub(crate) data: MatrixData,
}

impl HermitianMatrix {
    /// Build from row-major real entries; the result is `(M + M^T) / 2`.
    pub fn from_rows_real(n: usize, rows: Vec<f64>) -> Result<Self> {
        if n == 0 || rows.len() != n * n {
            return Err(Error::InvalidInput(format!(
                "expected {n}x{n} = {} real entries, got {}",
                n * n,
                rows.len()
            )));
        }
        if !rows.iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidInput("non-finite matrix entry".into()));
        }
        let mut data = rows;
        for i in 0..n {
            for j in (i + 1)..n {
                let s = 0.5 * (data[i * n + j] + data[j * n + i]);
                data[i * n + j] = s;
                data[j * n + i] = s;
            }
        }
        Ok(HermitianMatrix {
            n,
            data: MatrixData::Real(data),
        })
    }

    /// Build from row-major complex entries; the result is `(M + M^*) / 2`.
    pub fn from_rows_complex(n: usize, rows: Vec<Complex64>) -> Result<Self> {
        if n == 0 || rows.len() != n * n {
            return Err(Error::InvalidInput(format!(
                "expected {n}x{n} = {} complex entries, got {}",
                n * n,
                rows.len()
            )));
        }
        if !rows.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite matrix entry".into()));
        }
        let mut data = rows;
        for i in 0..n {
            data[i * n + i] = Complex64::new(data[i * n + i].re, 0.0);
            for j in (i + 1)..n {
                let s = 0.5 * (data[i * n + j] + data[j * n + i].conj());
                data[i * n + j] = s;
                data[j * n + i] = s.conj();
            }
        }
        Ok(HermitianMatrix {
            n,
            data: MatrixData::Complex(data),
        })
    }

    /// The zero matrix of the given field and dimension.
    pub fn zero(field: Field, n: usize) -> Self {
        assert!(n >= 1, "dimension must be positive");
        let data = match field {
            Field::Real => MatrixData::Real(vec![0.0; n * n]),
            Field::Complex => MatrixData::Complex(vec![Complex64::ZERO; n * n]),
        };
        HermitianMatrix { n, data }
    }

    /// Real diagonal matrix.
    pub fn diagonal(entries: &[f64]) -> Self {
        let n = entries.len();
        assert!(n >= 1, "dimension must be positive");
        let mut data = vec![0.0; n * n];
        for (i, &x) in entries.iter().enumerate() {
            data[i * n + i] = x;
        }
        HermitianMatrix {
            n,
            data: MatrixData::Real(data),
        }
    }

    /// `scale * I` over the given field.
    pub fn scaled_identity(field: Field, n: usize, scale: f64) -> Self {
        let mut m = HermitianMatrix::zero(field, n);
        for i in 0..n {
            match &mut m.data {
                MatrixData::Real(d) => d[i * n + i] = scale,
                MatrixData::Complex(d) => d[i * n + i] = Complex64::new(scale, 0.0),
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        match self.data {
            MatrixData::Real(_) => Field::Real,
            MatrixData::Complex(_) => Field::Complex,
        }
    }

    /// Entry `(i, j)` as a complex number regardless of field.
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        assert!(i < self.n && j < self.n);
        match &self.data {
            MatrixData::Real(d) => Complex64::new(d[i * self.n + j], 0.0),
            MatrixData::Complex(d) => d[i * self.n + j],
        }
    }

    pub(crate) fn as_real(&self) -> Option<&[f64]> {
        match &self.data {
            MatrixData::Real(d) => Some(d),
            MatrixData::Complex(_) => None,
        }
    }

    pub(crate) fn as_complex(&self) -> Option<&[Complex64]> {
        match &self.data {
            MatrixData::Complex(d) => Some(d),
            MatrixData::Real(_) => None,
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        match &self.data {
            MatrixData::Real(d) => d.iter().map(|x| x * x).sum::<f64>().sqrt(),
            MatrixData::Complex(d) => d.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(),
        }
    }

    /// Trace; real by Hermiticity.
    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.entry(i, i).re).sum()
    }

    /// Promote to complex storage (no-op on complex input).
    pub fn to_complex(&self) -> Self {
        match &self.data {
            MatrixData::Complex(_) => self.clone(),
            MatrixData::Real(d) => HermitianMatrix {
                n: self.n,
                data: MatrixData::Complex(
                    d.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
                ),
            },
        }
    }

    /// `self + scale * other`, promoting to complex if the fields differ.
    pub fn add_scaled(&self, other: &Self, scale: f64) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::InvalidInput(format!(
                "dimension mismatch: {} vs {}",
                self.n, other.n
            )));
        }
        match (&self.data, &other.data) {
            (MatrixData::Real(a), MatrixData::Real(b)) => Ok(HermitianMatrix {
                n: self.n,
                data: MatrixData::Real(
                    a.iter().zip(b).map(|(x, y)| x + scale * y).collect(),
                ),
            }),
            _ => {
                let a = self.to_complex();
                let b = other.to_complex();
                let (MatrixData::Complex(a), MatrixData::Complex(b)) = (&a.data, &b.data)
                else {
                    unreachable!()
                };
                Ok(HermitianMatrix {
                    n: self.n,
                    data: MatrixData::Complex(
                        a.iter().zip(b).map(|(x, y)| x + scale * y).collect(),
                    ),
                })
            }
        }
    }

    /// `scale * self`.
    pub fn scale(&self, scale: f64) -> Self {
        match &self.data {
            MatrixData::Real(d) => HermitianMatrix {
                n: self.n,
                data: MatrixData::Real(d.iter().map(|x| scale * x).collect()),
            },
            MatrixData::Complex(d) => HermitianMatrix {
                n: self.n,
                data: MatrixData::Complex(d.iter().map(|z| scale * z).collect()),
            },
        }
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &Vector) -> Result<Vector> {
        if v.dim() != self.n {
            return Err(Error::InvalidInput(format!(
                "matrix dim {} vs vector dim {}",
                self.n,
                v.dim()
            )));
        }
        let n = self.n;
        match (&self.data, &v.data) {
            (MatrixData::Real(m), VectorData::Real(x)) => {
                let y: Vec<f64> = (0..n)
                    .map(|i| m[i * n..(i + 1) * n].iter().zip(x).map(|(a, b)| a * b).sum())
                    .collect();
                Ok(Vector {
                    data: VectorData::Real(y),
                })
            }
            _ => {
                let m = self.to_complex();
                let m = m.as_complex().unwrap();
                let x = v.to_complex();
                let x = x.as_complex_slice();
                let y: Vec<Complex64> = (0..n)
                    .map(|i| m[i * n..(i + 1) * n].iter().zip(x).map(|(a, b)| a * b).sum())
                    .collect();
                Ok(Vector {
                    data: VectorData::Complex(y),
                })
            }
        }
    }

    /// Render in the `hmat` text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "hmat {} {}", self.field(), self.n);
        for i in 0..self.n {
            let mut row = String::new();
            for j in 0..self.n {
                if j > 0 {
                    row.push(' ');
                }
                match &self.data {
                    MatrixData::Real(d) => {
                        let _ = write!(row, "{}", d[i * self.n + j]);
                    }
                    MatrixData::Complex(d) => {
                        let z = d[i * self.n + j];
                        let _ = write!(row, "{}{}{}j", z.re, if z.im < 0.0 { "-" } else { "+" }, z.im.abs());
                    }
                }
            }
            out.push_str(&row);
            out.push('\n');
        }
        out
    }

    /// Parse the `hmat` text format: a header line `hmat <field> <n>`
    /// followed by `n` rows of whitespace-separated scalars (complex as
    /// `re+imj`).
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidInput("empty matrix file".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 || parts[0] != "hmat" {
            return Err(Error::InvalidInput(format!(
                "bad header {header:?}, expected `hmat <field> <n>`"
            )));
        }
        let field = match parts[1] {
            "real" => Field::Real,
            "complex" => Field::Complex,
            other => {
                return Err(Error::InvalidInput(format!(
                    "unknown field {other:?} in matrix header"
                )))
            }
        };
        let n: usize = parts[2]
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad dimension {:?}", parts[2])))?;
        if n == 0 {
            return Err(Error::InvalidInput("matrix dimension must be positive".into()));
        }

        let mut real = Vec::with_capacity(n * n);
        let mut complex = Vec::with_capacity(n * n);
        for (row_idx, line) in lines.enumerate() {
            if row_idx >= n {
                return Err(Error::InvalidInput(format!(
                    "expected {n} rows, found more"
                )));
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != n {
                return Err(Error::InvalidInput(format!(
                    "row {row_idx}: expected {n} entries, got {}",
                    tokens.len()
                )));
            }
            for tok in tokens {
                match field {
                    Field::Real => real.push(tok.parse::<f64>().map_err(|_| {
                        Error::InvalidInput(format!("bad real scalar {tok:?}"))
                    })?),
                    Field::Complex => complex.push(parse_complex(tok)?),
                }
            }
        }
        let rows_seen = match field {
            Field::Real => real.len() / n,
            Field::Complex => complex.len() / n,
        };
        if rows_seen != n {
            return Err(Error::InvalidInput(format!(
                "expected {n} rows, got {rows_seen}"
            )));
        }
        match field {
            Field::Real => HermitianMatrix::from_rows_real(n, real),
            Field::Complex => HermitianMatrix::from_rows_complex(n, complex),
        }
    }

    /// Load from a file in the `hmat` text format.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_text(&text)
    }

    /// Store to a file in the `hmat` text format.
    pub fn store(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

/// Parse `re+imj` / `re-imj`, e.g. `1.5-2e-3j`.
fn parse_complex(tok: &str) -> Result<Complex64> {
    let bad = || Error::InvalidInput(format!("bad complex scalar {tok:?}"));
    let body = tok.strip_suffix('j').ok_or_else(bad)?;
    let bytes = body.as_bytes();
    // split at the last sign that is not a leading sign or an exponent sign
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        let c = bytes[i];
        if (c == b'+' || c == b'-') && bytes[i - 1] != b'e' && bytes[i - 1] != b'E' {
            split = Some(i);
            break;
        }
    }
    let i = split.ok_or_else(bad)?;
    let re: f64 = body[..i].parse().map_err(|_| bad())?;
    let im: f64 = body[i..].parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum VectorData {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

/// A dense vector over the real or complex field.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    pub(crate) data: VectorData,
}

impl Vector {
    pub fn real(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() || !entries.iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidInput("vector entries must be finite and nonempty".into()));
        }
        Ok(Vector {
            data: VectorData::Real(entries),
        })
    }

    pub fn complex(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() || !entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::InvalidInput("vector entries must be finite and nonempty".into()));
        }
        Ok(Vector {
            data: VectorData::Complex(entries),
        })
    }

    /// Standard basis vector `e_j`.
    pub fn basis(field: Field, n: usize, j: usize) -> Self {
        assert!(j < n);
        match field {
            Field::Real => {
                let mut v = vec![0.0; n];
                v[j] = 1.0;
                Vector {
                    data: VectorData::Real(v),
                }
            }
            Field::Complex => {
                let mut v = vec![Complex64::ZERO; n];
                v[j] = Complex64::ONE;
                Vector {
                    data: VectorData::Complex(v),
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        match &self.data {
            VectorData::Real(v) => v.len(),
            VectorData::Complex(v) => v.len(),
        }
    }

    pub fn field(&self) -> Field {
        match self.data {
            VectorData::Real(_) => Field::Real,
            VectorData::Complex(_) => Field::Complex,
        }
    }

    pub fn entry(&self, i: usize) -> Complex64 {
        match &self.data {
            VectorData::Real(v) => Complex64::new(v[i], 0.0),
            VectorData::Complex(v) => v[i],
        }
    }

    pub fn norm(&self) -> f64 {
        match &self.data {
            VectorData::Real(v) => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
            VectorData::Complex(v) => v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        match &self.data {
            VectorData::Real(v) => Vector {
                data: VectorData::Real(v.iter().map(|x| s * x).collect()),
            },
            VectorData::Complex(v) => Vector {
                data: VectorData::Complex(v.iter().map(|z| s * z).collect()),
            },
        }
    }

    /// Componentwise division, used for exact normalization.
    pub fn div_norm(&self, d: f64) -> Self {
        match &self.data {
            VectorData::Real(v) => Vector {
                data: VectorData::Real(v.iter().map(|x| x / d).collect()),
            },
            VectorData::Complex(v) => Vector {
                data: VectorData::Complex(v.iter().map(|z| z / d).collect()),
            },
        }
    }

    /// Hermitian inner product `<self, other> = self^* other`.
    pub fn dot(&self, other: &Vector) -> Complex64 {
        assert_eq!(self.dim(), other.dim());
        match (&self.data, &other.data) {
            (VectorData::Real(a), VectorData::Real(b)) => {
                Complex64::new(a.iter().zip(b).map(|(x, y)| x * y).sum(), 0.0)
            }
            _ => {
                let a = self.to_complex();
                let b = other.to_complex();
                a.as_complex_slice()
                    .iter()
                    .zip(b.as_complex_slice())
                    .map(|(x, y)| x.conj() * y)
                    .sum()
            }
        }
    }

    pub fn to_complex(&self) -> Self {
        match &self.data {
            VectorData::Complex(_) => self.clone(),
            VectorData::Real(v) => Vector {
                data: VectorData::Complex(v.iter().map(|&x| Complex64::new(x, 0.0)).collect()),
            },
        }
    }

    pub(crate) fn as_complex_slice(&self) -> &[Complex64] {
        match &self.data {
            VectorData::Complex(v) => v,
            VectorData::Real(_) => panic!("expected complex vector"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_symmetrizes_exactly() {
        let m = HermitianMatrix::from_rows_real(2, vec![1.0, 2.0, 4.0, 3.0]).unwrap();
        assert_eq!(m.entry(0, 1), m.entry(1, 0));
        assert_eq!(m.entry(0, 1).re, 3.0);

        let h = HermitianMatrix::from_rows_complex(
            2,
            vec![
                Complex64::new(1.0, 0.5),
                Complex64::new(0.0, 2.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(2.0, 0.0),
            ],
        )
        .unwrap();
        assert_eq!(h.entry(0, 0).im, 0.0);
        assert_eq!(h.entry(0, 1), h.entry(1, 0).conj());
    }

    #[test]
    fn rejects_non_finite() {
        assert!(HermitianMatrix::from_rows_real(1, vec![f64::NAN]).is_err());
        assert!(Vector::real(vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn text_roundtrip_real() {
        let m = HermitianMatrix::from_rows_real(2, vec![1.5, -0.25, -0.25, 2e-3]).unwrap();
        let back = HermitianMatrix::from_text(&m.to_text()).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn text_roundtrip_complex() {
        let m = HermitianMatrix::from_rows_complex(
            2,
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(-0.5, 2e-7),
                Complex64::new(-0.5, -2e-7),
                Complex64::new(-3.25, 0.0),
            ],
        )
        .unwrap();
        let text = m.to_text();
        assert!(text.starts_with("hmat complex 2\n"));
        let back = HermitianMatrix::from_text(&text).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn parse_complex_exponents() {
        assert_eq!(
            parse_complex("1.5e-3-2E+4j").unwrap(),
            Complex64::new(1.5e-3, -2e4)
        );
        assert_eq!(parse_complex("-1+0.5j").unwrap(), Complex64::new(-1.0, 0.5));
        assert!(parse_complex("3.0").is_err());
    }

    #[test]
    fn bad_headers_rejected() {
        assert!(HermitianMatrix::from_text("").is_err());
        assert!(HermitianMatrix::from_text("mat real 2\n1 0\n0 1\n").is_err());
        assert!(HermitianMatrix::from_text("hmat real two\n").is_err());
        assert!(HermitianMatrix::from_text("hmat real 2\n1 0\n").is_err());
    }

    #[test]
    fn mul_vec_identity() {
        let m = HermitianMatrix::scaled_identity(Field::Real, 3, 2.0);
        let v = Vector::real(vec![1.0, -1.0, 0.5]).unwrap();
        let w = m.mul_vec(&v).unwrap();
        for (i, expect) in [2.0, -2.0, 1.0].iter().enumerate() {
            assert_eq!(w.entry(i).re, *expect);
        }
    }
}
