use std::fmt;
use std::ops::{Deref, Mul};

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::{QosError, Result, TOL};

/// Dense complex square matrix acting on one or more qutrits.
///
/// `Operator` carries no unitarity guarantee; the W operators of the second
/// scheme, for instance, are diagonal but generally not unitary. Use
/// [`Unitary`] wherever the invariant matters.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator(DMatrix<C64>);

impl Operator {
    /// Builds a `dim × dim` operator from row-major entries.
    pub fn from_rows(dim: usize, entries: &[C64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(QosError::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(QosError::NonFinite);
        }
        Ok(Self(DMatrix::from_row_slice(dim, dim, entries)))
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        Self(DMatrix::from_diagonal(
            &nalgebra::DVector::from_column_slice(entries),
        ))
    }

    /// Sum of `c |row⟩⟨col|` terms.
    pub fn from_ket_bras(dim: usize, terms: &[(usize, usize, C64)]) -> Self {
        let mut m = DMatrix::zeros(dim, dim);
        for &(row, col, c) in terms {
            m[(row, col)] += c;
        }
        Self(m)
    }

    pub(crate) fn from_matrix(m: DMatrix<C64>) -> Self {
        Self(m)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0[(row, col)]
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    /// Row-major copy of the entries.
    pub fn to_rows(&self) -> Vec<C64> {
        let n = self.dim();
        (0..n)
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .map(|(r, c)| self.0[(r, c)])
            .collect()
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn scale(&self, c: C64) -> Self {
        Self(&self.0 * c)
    }

    pub fn kron(&self, other: &Operator) -> Self {
        Self(self.0.kronecker(&other.0))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |U†U - I|` over all entries.
    pub fn unitarity_residual(&self) -> f64 {
        let gram = self.0.adjoint() * &self.0;
        let id = DMatrix::<C64>::identity(self.dim(), self.dim());
        gram.iter()
            .zip(id.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        let n = self.dim();
        (0..n).all(|r| (0..n).all(|c| r == c || self.0[(r, c)].norm() < tol))
    }

    pub fn diagonal_entries(&self) -> Vec<C64> {
        (0..self.dim()).map(|i| self.0[(i, i)]).collect()
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        let n = self.dim();
        (0..n)
            .map(|r| (0..n).map(|c| self.0[(r, c)] * v[c]).sum())
            .collect()
    }

    /// Unitary built from the phases of a diagonal operator's entries.
    ///
    /// Zero entries (below [`TOL`]) get phase 1. Returns `None` when the
    /// operator is not diagonal.
    pub fn phase_direction(&self) -> Option<Unitary> {
        if !self.is_diagonal(TOL) {
            return None;
        }
        let phases: Vec<C64> = self
            .diagonal_entries()
            .into_iter()
            .map(|z| {
                if z.norm() < TOL {
                    C64::new(1.0, 0.0)
                } else {
                    z / z.norm()
                }
            })
            .collect();
        Some(Unitary(Operator::diagonal(&phases)))
    }
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        Operator(&self.0 * &rhs.0)
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        for r in 0..n {
            let row: Vec<String> = (0..n).map(|c| format_complex(self.0[(r, c)])).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Fixed-precision `re±imi` rendering used by reports.
pub fn format_complex(z: C64) -> String {
    let clean = |x: f64| if x.abs() < 5e-13 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    if im < 0.0 {
        format!("{re:.6}-{:.6}i", -im)
    } else {
        format!("{re:.6}+{im:.6}i")
    }
}

/// A 3×3 or 9×9 matrix with `U†U = I` to within [`TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct Unitary(Operator);

impl Unitary {
    pub fn new(op: Operator) -> Result<Self> {
        let dim = op.dim();
        if dim != 3 && dim != 9 {
            return Err(QosError::DimensionMismatch {
                expected: 3,
                found: dim,
            });
        }
        let residual = op.unitarity_residual();
        if residual.is_nan() {
            return Err(QosError::NonFinite);
        }
        if residual > TOL {
            return Err(QosError::NonUnitary(residual));
        }
        Ok(Self(op))
    }

    pub fn identity(dim: usize) -> Self {
        Self(Operator::identity(dim))
    }

    pub fn into_operator(self) -> Operator {
        self.0
    }

    pub fn adjoint(&self) -> Unitary {
        Unitary(self.0.adjoint())
    }

    pub fn compose(&self, other: &Unitary) -> Unitary {
        Unitary(&self.0 * &other.0)
    }

    /// Number of qutrits the unitary acts on.
    pub fn arity(&self) -> usize {
        if self.dim() == 3 {
            1
        } else {
            2
        }
    }
}

impl Deref for Unitary {
    type Target = Operator;
    fn deref(&self) -> &Operator {
        &self.0
    }
}

impl Serialize for Operator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<String> = self.to_rows().into_iter().map(format_complex).collect();
        rows.serialize(s)
    }
}
