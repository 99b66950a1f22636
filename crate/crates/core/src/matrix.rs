//! Dense max-plus matrices.

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::scalar::{MaxPlus, Tolerance};

/// A dense `rows × cols` matrix over ℝ ∪ {ε}, stored row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<MaxPlus>,
}

impl Matrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> MaxPlus) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn from_scalar_rows(rows: Vec<Vec<MaxPlus>>) -> Result<Self, Error> {
        let cols = rows.first().map(Vec::len).unwrap_or(0);
        if rows.is_empty() || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::RaggedRows {
                    row: r,
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Builds a matrix from rows of `f64`, with `-inf` standing for ε.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self, Error> {
        let scalar_rows = rows
            .iter()
            .map(|row| row.as_ref().iter().map(|&v| MaxPlus::try_new(v)).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        Matrix::from_scalar_rows(scalar_rows)
    }

    /// An `n × 1` column.
    pub fn column(values: &[MaxPlus]) -> Self {
        Matrix::from_fn(values.len(), 1, |i, _| values[i])
    }

    pub fn filled(rows: usize, cols: usize, value: MaxPlus) -> Self {
        Matrix::from_fn(rows, cols, |_, _| value)
    }

    pub fn eps(rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, MaxPlus::EPS)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, MaxPlus::ZERO)
    }

    /// The unit matrix I = diag(0, …, 0).
    pub fn identity(n: usize) -> Self {
        Matrix::diag(&vec![0.0; n])
    }

    /// diag(d): `d` on the diagonal, ε elsewhere.
    pub fn diag(d: &[f64]) -> Self {
        Matrix::from_fn(d.len(), d.len(), |i, j| {
            if i == j {
                MaxPlus::new(d[i])
            } else {
                MaxPlus::EPS
            }
        })
    }

    /// pdiag(d): `d` on the diagonal, 0 elsewhere.
    pub fn pdiag(d: &[f64]) -> Self {
        Matrix::from_fn(d.len(), d.len(), |i, j| {
            if i == j {
                MaxPlus::new(d[i])
            } else {
                MaxPlus::ZERO
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> MaxPlus {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[MaxPlus] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<MaxPlus> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn diagonal(&self) -> Vec<MaxPlus> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    pub fn entries(&self) -> &[MaxPlus] {
        &self.entries
    }

    /// Rows as plain `f64`, ε as `-inf`.
    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.value()).collect())
            .collect()
    }

    /// Position of the first ε entry, if any.
    pub fn first_eps(&self) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .position(|x| x.is_eps())
            .map(|p| (p / self.cols, p % self.cols))
    }

    pub fn is_finite(&self) -> bool {
        self.first_eps().is_none()
    }

    pub fn map(&self, f: impl Fn(MaxPlus) -> MaxPlus) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// A ⊕ B, entrywise maximum.
    pub fn oplus(&self, other: &Matrix) -> Result<Matrix, Error> {
        self.same_shape("mat_add", other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a.oplus(b))
                .collect(),
        })
    }

    /// A ⊗ B with (A ⊗ B)_{ij} = max_k (a_{ik} + b_{kj}).
    pub fn otimes(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                op: "mat_mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(MaxPlus::EPS, |acc, k| {
                acc.oplus(self.get(i, k).otimes(other.get(k, j)))
            })
        }))
    }

    /// A ⊗ x for a column vector `x`.
    pub fn apply(&self, x: &[MaxPlus]) -> Result<Vec<MaxPlus>, Error> {
        if x.len() != self.cols {
            return Err(Error::VectorLength {
                op: "mat_vec",
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(MaxPlus::EPS, |acc, (&a, &b)| acc.oplus(a.otimes(b)))
            })
            .collect())
    }

    /// λ ⊗ A.
    pub fn scale(&self, lambda: MaxPlus) -> Matrix {
        self.map(|x| lambda.otimes(x))
    }

    /// A^k by left-to-right repeated multiplication. `k = 0` yields I and is
    /// only defined for finite A.
    pub fn pow(&self, k: usize) -> Result<Matrix, Error> {
        self.require_square("mat_pow")?;
        if k == 0 {
            return if self.is_finite() {
                Ok(Matrix::identity(self.rows))
            } else {
                Err(Error::ZeroPowerOfNonFinite)
            };
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.otimes(self)?;
        }
        Ok(acc)
    }

    /// Entrywise A ≤ B (exact, ε below everything).
    pub fn leq(&self, other: &Matrix) -> Result<bool, Error> {
        self.same_shape("mat_leq", other)?;
        Ok(self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b))
    }

    /// Entrywise A ≤ B up to `tol`.
    pub fn leq_tol(&self, other: &Matrix, tol: Tolerance) -> Result<bool, Error> {
        self.same_shape("mat_leq", other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .all(|(&a, &b)| tol.le(a, b)))
    }

    /// Shape-equal and entrywise equal under `tol`.
    pub fn approx_eq(&self, other: &Matrix, tol: Tolerance) -> bool {
        self.shape() == other.shape()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(&a, &b)| tol.eq(a, b))
    }

    /// Largest absolute difference between finite entries; `+inf` when the
    /// ε patterns differ or shapes differ.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        if self.shape() != other.shape() {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| match (a.finite(), b.finite()) {
                (None, None) => 0.0,
                (Some(x), Some(y)) => (x - y).abs(),
                _ => f64::INFINITY,
            })
            .fold(0.0, f64::max)
    }

    pub(crate) fn require_square(&self, op: &'static str) -> Result<usize, Error> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                op,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub(crate) fn require_finite(&self, op: &'static str) -> Result<(), Error> {
        match self.first_eps() {
            None => Ok(()),
            Some((row, col)) => Err(Error::NotFinite { op, row, col }),
        }
    }

    fn same_shape(&self, op: &'static str, other: &Matrix) -> Result<(), Error> {
        if self.shape() == other.shape() {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            })
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = MaxPlus;

    fn index(&self, (i, j): (usize, usize)) -> &MaxPlus {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.entries[i * self.cols + j]
    }
}

/// The text format: one row per line, entries separated by single spaces.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{}", crate::text::format_row(self.row(i)))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", crate::text::format_row(self.row(i)))?;
        }
        write!(f, "]")
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<&[MaxPlus]> = (0..self.rows).map(|i| self.row(i)).collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<MaxPlus>>::deserialize(deserializer)?;
        Matrix::from_scalar_rows(rows).map_err(serde::de::Error::custom)
    }
}
