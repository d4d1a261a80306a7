//! Root unipotents, Weyl lifts and torus elements of G(G₂, q) in its
//! 7-dimensional representation, characteristic 3.
//!
//! The basis is labelled 1, 2, 3, 0, −3, −2, −1, stored as indices 0..7.
//! Structure constants are the integer ones reduced mod 3 (2 ≡ −1).

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::matrix::Matrix;

/// The six positive roots of G₂ in terms of the simple roots a (short)
/// and b (long).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PositiveRoot {
    A,
    B,
    AB,
    A2B,
    A3B,
    A3B2,
}

impl PositiveRoot {
    pub const ALL: [PositiveRoot; 6] = [
        PositiveRoot::A,
        PositiveRoot::B,
        PositiveRoot::AB,
        PositiveRoot::A2B,
        PositiveRoot::A3B,
        PositiveRoot::A3B2,
    ];

    pub fn is_long(self) -> bool {
        matches!(
            self,
            PositiveRoot::B | PositiveRoot::A3B | PositiveRoot::A3B2
        )
    }

    fn name(self) -> &'static str {
        match self {
            PositiveRoot::A => "a",
            PositiveRoot::B => "b",
            PositiveRoot::AB => "a+b",
            PositiveRoot::A2B => "2a+b",
            PositiveRoot::A3B => "3a+b",
            PositiveRoot::A3B2 => "3a+2b",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootLabel {
    pub root: PositiveRoot,
    pub negative: bool,
}

impl RootLabel {
    pub const fn pos(root: PositiveRoot) -> Self {
        Self {
            root,
            negative: false,
        }
    }

    pub const fn neg(root: PositiveRoot) -> Self {
        Self {
            root,
            negative: true,
        }
    }

    pub fn opposite(self) -> Self {
        Self {
            root: self.root,
            negative: !self.negative,
        }
    }

    pub fn is_long(self) -> bool {
        self.root.is_long()
    }

    /// All twelve roots, positive ones first.
    pub fn all() -> impl Iterator<Item = RootLabel> {
        PositiveRoot::ALL
            .into_iter()
            .map(RootLabel::pos)
            .chain(PositiveRoot::ALL.into_iter().map(RootLabel::neg))
    }
}

impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        f.write_str(self.root.name())
    }
}

impl FromStr for RootLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let root = PositiveRoot::ALL
            .into_iter()
            .find(|r| r.name() == body)
            .ok_or_else(|| Error::Parse(format!("unknown root {s:?}")))?;
        Ok(Self { root, negative })
    }
}

/// Storage index of a basis label.
fn slot(label: i8) -> usize {
    match label {
        1 => 0,
        2 => 1,
        3 => 2,
        0 => 3,
        -3 => 4,
        -2 => 5,
        -1 => 6,
        _ => unreachable!("basis labels are 0, ±1, ±2, ±3"),
    }
}

/// One term `coeff · ξ^power · e_{row,col}` of a root unipotent.
type Term = (i8, i8, i8, u8);

#[rustfmt::skip]
fn terms(root: RootLabel) -> &'static [Term] {
    use PositiveRoot::*;
    match (root.root, root.negative) {
        // short
        (A, false) => &[(1, 2, 1, 1), (3, 0, -1, 1), (0, -3, 2, 1), (-2, -1, -1, 1), (3, -3, -1, 2)],
        (AB, false) => &[(1, 3, 1, 1), (2, 0, 1, 1), (0, -2, -2, 1), (-3, -1, -1, 1), (2, -2, -1, 2)],
        (A2B, false) => &[(1, 0, -1, 1), (2, -3, 1, 1), (3, -2, -1, 1), (0, -1, 2, 1), (1, -1, -1, 2)],
        (A, true) => &[(2, 1, 1, 1), (0, 3, -2, 1), (-3, 0, 1, 1), (-1, -2, -1, 1), (-3, 3, -1, 2)],
        (AB, true) => &[(3, 1, 1, 1), (0, 2, 2, 1), (-2, 0, -1, 1), (-1, -3, -1, 1), (-2, 2, -1, 2)],
        (A2B, true) => &[(0, 1, -2, 1), (-3, 2, 1, 1), (-2, 3, -1, 1), (-1, 0, 1, 1), (-1, 1, -1, 2)],
        // long; the negatives are the transposes
        (B, false) => &[(2, 3, -1, 1), (-3, -2, 1, 1)],
        (A3B, false) => &[(1, -3, 1, 1), (3, -1, -1, 1)],
        (A3B2, false) => &[(1, -2, -1, 1), (2, -1, 1, 1)],
        (B, true) => &[(3, 2, -1, 1), (-2, -3, 1, 1)],
        (A3B, true) => &[(-3, 1, 1, 1), (-1, 3, -1, 1)],
        (A3B2, true) => &[(-2, 1, -1, 1), (-1, 2, 1, 1)],
    }
}

/// The simple roots, which index the Weyl lifts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimpleRoot {
    Alpha,
    Beta,
}

impl SimpleRoot {
    pub fn label(self) -> RootLabel {
        match self {
            SimpleRoot::Alpha => RootLabel::pos(PositiveRoot::A),
            SimpleRoot::Beta => RootLabel::pos(PositiveRoot::B),
        }
    }
}

#[derive(Debug, Clone)]
pub struct G2 {
    field: Arc<Field>,
}

impl G2 {
    pub fn new(field: Arc<Field>) -> Result<Self> {
        if field.characteristic() != 3 {
            return Err(Error::WrongCharacteristic {
                expected: 3,
                found: field.characteristic(),
            });
        }
        Ok(Self { field })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// x_r(ξ).
    pub fn root_unipotent(&self, root: RootLabel, xi: FieldElement) -> Matrix {
        let f = &*self.field;
        let mut m = Matrix::identity(&self.field, 7);
        if xi.is_zero() {
            return m;
        }
        let xi2 = f.square(xi);
        for &(row, col, coeff, power) in terms(root) {
            let scalar = if power == 1 { xi } else { xi2 };
            m.set(
                slot(row),
                slot(col),
                f.mul(f.from_i64(coeff.into()), scalar),
            );
        }
        m
    }

    /// Whether x_r(a)·x_r(b) = x_r(a + b).
    pub fn one_param_additivity_check(
        &self,
        root: RootLabel,
        a: FieldElement,
        b: FieldElement,
    ) -> bool {
        &self.root_unipotent(root, a) * &self.root_unipotent(root, b)
            == self.root_unipotent(root, self.field.add(a, b))
    }

    /// w_r(c) = x_r(c)·x_{−r}(−c⁻¹)·x_r(c).
    pub fn weyl_element(&self, root: RootLabel, c: FieldElement) -> Result<Matrix> {
        let f = &*self.field;
        if c.is_zero() {
            return Err(Error::ZeroTorusParameter);
        }
        let x = self.root_unipotent(root, c);
        let y = self.root_unipotent(root.opposite(), f.neg(f.inv(c)?));
        Ok(&(&x * &y) * &x)
    }

    /// w_r(1) for a simple root.
    pub fn weyl_lift(&self, root: SimpleRoot) -> Matrix {
        self.weyl_element(root.label(), self.field.one())
            .expect("1 ≠ 0")
    }

    /// h_r(c) = w_r(c)·w_r(1)⁻¹.
    pub fn torus_root(&self, root: RootLabel, c: FieldElement) -> Result<Matrix> {
        let w1 = self.weyl_element(root, self.field.one())?;
        Ok(&self.weyl_element(root, c)? * &w1.inverse()?)
    }

    /// h_α(a)·h_β(b).
    pub fn torus_alpha_beta(&self, a: FieldElement, b: FieldElement) -> Result<Matrix> {
        let ha = self.torus_root(SimpleRoot::Alpha.label(), a)?;
        let hb = self.torus_root(SimpleRoot::Beta.label(), b)?;
        Ok(&ha * &hb)
    }

    /// (w_α(1)·w_β(1))³, a lift of the longest Weyl group element.
    pub fn longest_weyl_lift(&self) -> Matrix {
        let ab = &self.weyl_lift(SimpleRoot::Alpha) * &self.weyl_lift(SimpleRoot::Beta);
        &(&ab * &ab) * &ab
    }
}
