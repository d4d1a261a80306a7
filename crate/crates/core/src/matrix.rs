//! Dense square matrices of dimension at most 7 over a [`Field`].

use std::fmt::Write as _;
use std::hash::{Hash, Hasher};
use std::ops::Mul;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

pub const MAX_DIM: usize = 7;

#[derive(Clone, Debug)]
pub struct Matrix {
    dim: usize,
    entries: [FieldElement; MAX_DIM * MAX_DIM],
    field: Arc<Field>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.entries == other.entries
            && (Arc::ptr_eq(&self.field, &other.field) || self.field.spec() == other.field.spec())
    }
}

impl Eq for Matrix {}

impl Hash for Matrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.entries[..self.dim * MAX_DIM].hash(state);
    }
}

impl Matrix {
    pub fn zero(field: &Arc<Field>, dim: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "unsupported dimension {dim}");
        Self {
            dim,
            entries: [FieldElement::ZERO; MAX_DIM * MAX_DIM],
            field: Arc::clone(field),
        }
    }

    pub fn identity(field: &Arc<Field>, dim: usize) -> Self {
        let mut m = Self::zero(field, dim);
        for i in 0..dim {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn diagonal(field: &Arc<Field>, diag: &[FieldElement]) -> Self {
        let mut m = Self::zero(field, diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn from_rows(field: &Arc<Field>, rows: &[Vec<FieldElement>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::Parse(format!("unsupported dimension {dim}")));
        }
        let mut m = Self::zero(field, dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Parse(format!(
                    "row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        debug_assert!(i < self.dim && j < self.dim);
        self.entries[i * MAX_DIM + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        debug_assert!(i < self.dim && j < self.dim);
        self.entries[i * MAX_DIM + j] = x;
    }

    pub fn row(&self, i: usize) -> Vec<FieldElement> {
        (0..self.dim).map(|j| self.get(i, j)).collect()
    }

    fn check_compatible(&self, other: &Matrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::ShapeMismatch(self.dim, other.dim));
        }
        if !Arc::ptr_eq(&self.field, &other.field) && self.field.spec() != other.field.spec() {
            return Err(Error::SpecMismatch);
        }
        Ok(())
    }

    pub fn mat_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_compatible(other)?;
        let f = &*self.field;
        let n = self.dim;
        let mut out = Matrix::zero(&self.field, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j);
                        out.set(i, j, f.add(cur, f.mul(a, b)));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(&self.field, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Gauss–Jordan inversion; the first nonzero pivot in each column is taken.
    pub fn inverse(&self) -> Result<Matrix> {
        let f = &*self.field;
        let n = self.dim;
        let mut a = self.clone();
        let mut inv = Matrix::identity(&self.field, n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(Error::Singular)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let scale = f.inv(a.get(col, col))?;
            a.scale_row(col, scale);
            inv.scale_row(col, scale);
            for r in 0..n {
                let factor = a.get(r, col);
                if r != col && !factor.is_zero() {
                    a.add_row_multiple(r, col, f.neg(factor));
                    inv.add_row_multiple(r, col, f.neg(factor));
                }
            }
        }
        Ok(inv)
    }

    /// Determinant by Gaussian elimination.
    pub fn determinant(&self) -> FieldElement {
        let f = &*self.field;
        let n = self.dim;
        let mut a = self.clone();
        let mut det = f.one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return f.zero();
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                det = f.neg(det);
            }
            let p = a.get(col, col);
            det = f.mul(det, p);
            let p_inv = f.inv(p).expect("pivot is nonzero");
            for r in col + 1..n {
                let factor = f.mul(a.get(r, col), p_inv);
                if !factor.is_zero() {
                    a.add_row_multiple(r, col, f.neg(factor));
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.dim {
            self.entries.swap(a * MAX_DIM + j, b * MAX_DIM + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: FieldElement) {
        for j in 0..self.dim {
            let x = self.field.mul(self.get(r, j), c);
            self.set(r, j, x);
        }
    }

    /// row[dst] += c · row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: FieldElement) {
        for j in 0..self.dim {
            let s = self.get(src, j);
            if !s.is_zero() {
                let x = self.field.add(self.get(dst, j), self.field.mul(c, s));
                self.set(dst, j, x);
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(&self.field, self.dim)
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        (0..self.dim)
            .all(|i| self.get(i, i) == self.field.one() && (0..i).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        self.transpose().is_upper_unitriangular()
    }

    /// Reflection across the antidiagonal, `(i, j) ↦ (n−1−j, n−1−i)`.
    pub fn antitranspose(&self) -> Matrix {
        let n = self.dim;
        let mut out = Matrix::zero(&self.field, n);
        for i in 0..n {
            for j in 0..n {
                out.set(n - 1 - j, n - 1 - i, self.get(i, j));
            }
        }
        out
    }

    /// Checks gᵀ·Φ·g = Φ for the form Φ pairing index i with −i
    /// (the antidiagonal in storage order). Signs are irrelevant in
    /// characteristic 2.
    pub fn preserves_symplectic_form(&self) -> Result<bool> {
        if self.dim != 4 {
            return Err(Error::WrongDimension {
                expected: 4,
                found: self.dim,
            });
        }
        if self.field.characteristic() != 2 {
            return Err(Error::WrongCharacteristic {
                expected: 2,
                found: self.field.characteristic(),
            });
        }
        let mut phi = Matrix::zero(&self.field, 4);
        for i in 0..4 {
            phi.set(i, 3 - i, self.field.one());
        }
        Ok(&(&self.transpose() * &phi) * self == phi)
    }

    /// One line per row, entries in the base-p integer encoding.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| self.field.to_int(self.get(i, j)).to_string())
                .collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    /// Parses `dim` whitespace-separated rows. Blank lines are skipped.
    pub fn parse(field: &Arc<Field>, dim: usize, text: &str) -> Result<Matrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let m = Self::parse_lines(field, dim, &mut lines)?;
        if lines.next().is_some() {
            return Err(Error::Parse(format!("more than {dim} rows")));
        }
        Ok(m)
    }

    pub(crate) fn parse_lines<'a, I: Iterator<Item = &'a str>>(
        field: &Arc<Field>,
        dim: usize,
        lines: &mut I,
    ) -> Result<Matrix> {
        let mut rows = Vec::with_capacity(dim);
        for i in 0..dim {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("expected {dim} rows, found {i}")))?;
            let row = line
                .split_whitespace()
                .map(|tok| field.parse_element(tok))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Matrix::from_rows(field, &rows)
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    /// # Panics
    /// On dimension or field mismatch; use [`Matrix::mat_mul`] to get an error.
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.mat_mul(rhs).expect("incompatible matrices")
    }
}

/// Product of a nonempty sequence of matrices, left to right.
pub fn product<'a, I: IntoIterator<Item = &'a Matrix>>(factors: I) -> Option<Matrix> {
    let mut it = factors.into_iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, m| &acc * m))
}
