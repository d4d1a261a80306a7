//! The Suzuki group Sz(q), q = 2^{2m+1}, inside Sp(4, q).
//!
//! Storage indices 0, 1, 2, 3 correspond to the basis labels 1, 2, −2, −1.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::group::{BruhatForm, TwistedGroup};
use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UPlusParams {
    pub t: FieldElement,
    pub u: FieldElement,
}

impl UPlusParams {
    pub fn new(t: FieldElement, u: FieldElement) -> Self {
        Self { t, u }
    }
}

pub type SuzukiBruhatForm = BruhatForm<UPlusParams>;

#[derive(Debug, Clone)]
pub struct Suzuki {
    field: Arc<Field>,
}

impl Suzuki {
    /// Sz(2^{2m+1}) over the built-in field.
    pub fn new(m: u32) -> Result<Self> {
        Self::with_order(2u64.pow(2 * m + 1))
    }

    pub fn with_order(q: u64) -> Result<Self> {
        Self::with_field(Arc::new(Field::with_order(q)?))
    }

    pub fn with_field(field: Arc<Field>) -> Result<Self> {
        if field.characteristic() != 2 {
            return Err(Error::WrongCharacteristic {
                expected: 2,
                found: field.characteristic(),
            });
        }
        Ok(Self { field })
    }

    pub fn m(&self) -> u32 {
        self.field.twist_index()
    }

    pub fn theta(&self) -> u64 {
        self.field.theta()
    }

    fn pow(&self, eps: FieldElement, e: i64) -> FieldElement {
        self.field.pow_signed(eps, e)
    }

    fn theta_i(&self) -> i64 {
        self.theta() as i64
    }

    /// `x_+(t, u)`; the upper unitriangular matrix
    ///
    /// ```text
    /// 1  t^θ  u  t^{2θ+1} + t^θ u + u^{2θ}
    ///    1    t  t^{θ+1} + u
    ///         1  t^θ
    ///            1
    /// ```
    pub fn x_plus(&self, t: FieldElement, u: FieldElement) -> Matrix {
        let f = &*self.field;
        let t_th = f.theta_pow(t);
        let u_th = f.theta_pow(u);
        let corner = f.add(
            f.add(f.mul(f.square(t_th), t), f.mul(t_th, u)),
            f.square(u_th),
        );
        let mut m = Matrix::identity(&self.field, 4);
        m.set(0, 1, t_th);
        m.set(0, 2, u);
        m.set(0, 3, corner);
        m.set(1, 2, t);
        m.set(1, 3, f.add(f.mul(t_th, t), u));
        m.set(2, 3, t_th);
        m
    }

    pub fn x_minus(&self, t: FieldElement, u: FieldElement) -> Matrix {
        TwistedGroup::x_minus(self, UPlusParams::new(t, u))
    }

    /// `h(ε) = diag(ε, ε^{2θ−1}, ε^{1−2θ}, ε^{−1})`.
    pub fn torus(&self, eps: FieldElement) -> Result<Matrix> {
        if eps.is_zero() {
            return Err(Error::ZeroTorusParameter);
        }
        let th = self.theta_i();
        let diag = [
            eps,
            self.pow(eps, 2 * th - 1),
            self.pow(eps, 1 - 2 * th),
            self.pow(eps, -1),
        ];
        Ok(Matrix::diagonal(&self.field, &diag))
    }

    /// The antidiagonal permutation matrix.
    pub fn weyl(&self) -> Matrix {
        let mut w = Matrix::zero(&self.field, 4);
        for i in 0..4 {
            w.set(i, 3 - i, self.field.one());
        }
        w
    }

    fn check_shape(&self, g: &Matrix) -> Result<()> {
        if g.dim() != 4 {
            return Err(Error::WrongDimension {
                expected: 4,
                found: g.dim(),
            });
        }
        if g.field().spec() != self.field.spec() {
            return Err(Error::SpecMismatch);
        }
        Ok(())
    }

    /// Reads `t = g[1][2]`, `u = g[0][2]` and checks that `x_+(t, u) = g`.
    pub fn extract_uplus(&self, g: &Matrix) -> Result<UPlusParams> {
        self.check_shape(g)?;
        let p = UPlusParams::new(g.get(1, 2), g.get(0, 2));
        if self.x_plus(p.t, p.u) == *g {
            Ok(p)
        } else {
            Err(Error::NotInU)
        }
    }

    /// Bruhat normal form; fails with `NotInGroup` for matrices outside Sz(q).
    ///
    /// In the big cell the last row of `g` is ε⁻¹ times the first row of
    /// `x_+(t₂, u₂)`, which determines ε, t₂ and u₂; the torus cell is
    /// recognized by `g[3][0] = 0`.
    pub fn bruhat(&self, g: &Matrix) -> Result<SuzukiBruhatForm> {
        self.check_shape(g)?;
        let f = &*self.field;
        let corner = g.get(3, 0);
        let form = if !corner.is_zero() {
            let eps = f.inv(corner)?;
            let t2 = f.theta_unpow(f.mul(g.get(3, 1), eps));
            let u2 = f.mul(g.get(3, 2), eps);
            let hw = &self.torus(eps)? * &self.weyl();
            let right = &hw * &self.x_plus(t2, u2);
            let residue = g * &right.inverse()?;
            let u1 = self
                .extract_uplus(&residue)
                .map_err(|_| Error::NotInGroup)?;
            BruhatForm::BigCell {
                u1,
                eps,
                u2: UPlusParams::new(t2, u2),
            }
        } else {
            let eps = g.get(0, 0);
            if eps.is_zero() {
                return Err(Error::NotInGroup);
            }
            let residue = g * &self.torus(eps)?.inverse()?;
            let u = self
                .extract_uplus(&residue)
                .map_err(|_| Error::NotInGroup)?;
            BruhatForm::TorusCell { u, eps }
        };
        if self.rebuild(&form)? != *g {
            return Err(Error::NotInGroup);
        }
        Ok(form)
    }

    /// Both sides of `x_−(ε^{1−2θ}, 0)·x_+(0, ε^θ) = x_+(ε^{2θ−1}, 0)·h(ε)·w`.
    pub fn weyl_cell_identity(&self, eps: FieldElement) -> Result<(Matrix, Matrix)> {
        let th = self.theta_i();
        let f = &*self.field;
        let h = self.torus(eps)?;
        let lhs = &self.x_minus(self.pow(eps, 1 - 2 * th), f.zero())
            * &self.x_plus(f.zero(), f.theta_pow(eps));
        let rhs = &(&self.x_plus(self.pow(eps, 2 * th - 1), f.zero()) * &h) * &self.weyl();
        Ok((lhs, rhs))
    }

    /// `g₁ = x_+(0, 1)·x_−(1, 1 + ε^θ)`, whose corner entry is ε.
    pub fn torus_g1(&self, eps: FieldElement) -> Matrix {
        let f = &*self.field;
        &self.x_plus(f.zero(), f.one()) * &self.x_minus(f.one(), f.add(f.one(), f.theta_pow(eps)))
    }

    /// Parameters `(t, u)` with `g₁·x_+(ε^{1−2θ}, ε^{−θ}) = h(ε)·x_−(t, u)`:
    /// `t = ε^{2θ−1}(1 + ε^{2θ−1})`, `u = ε + ε^θ + ε^{2θ}`.
    pub fn torus_cell_tail(&self, eps: FieldElement) -> UPlusParams {
        let f = &*self.field;
        let th = self.theta_i();
        let a = self.pow(eps, 2 * th - 1);
        let t = f.mul(a, f.add(f.one(), a));
        let u = f.add(f.add(eps, self.pow(eps, th)), self.pow(eps, 2 * th));
        UPlusParams::new(t, u)
    }

    /// Both sides of `g₁·x_+(ε^{1−2θ}, ε^{−θ}) = h(ε)·x_−(t, u)`.
    pub fn torus_cell_identity(&self, eps: FieldElement) -> Result<(Matrix, Matrix)> {
        let th = self.theta_i();
        let h = self.torus(eps)?;
        let lhs = &self.torus_g1(eps) * &self.x_plus(self.pow(eps, 1 - 2 * th), self.pow(eps, -th));
        let tail = self.torus_cell_tail(eps);
        let rhs = &h * &self.x_minus(tail.t, tail.u);
        Ok((lhs, rhs))
    }

    /// `h(ε)·w = x_+(ε^{2θ−1}, 0)⁻¹ · x_−(ε^{1−2θ}, 0) · x_+(0, ε^θ)`.
    pub fn factor_weyl_cell(&self, eps: FieldElement) -> Result<[Matrix; 3]> {
        if eps.is_zero() {
            return Err(Error::ZeroTorusParameter);
        }
        let f = &*self.field;
        let th = self.theta_i();
        Ok([
            self.x_plus(self.pow(eps, 2 * th - 1), f.zero()).inverse()?,
            self.x_minus(self.pow(eps, 1 - 2 * th), f.zero()),
            self.x_plus(f.zero(), f.theta_pow(eps)),
        ])
    }

    /// `h(ε) = x_+(0, 1) · x_−(1, 1 + ε^θ) · x_+(ε^{1−2θ}, ε^{−θ}) · x_−(t, u)⁻¹`.
    pub fn factor_torus_cell(&self, eps: FieldElement) -> Result<[Matrix; 4]> {
        if eps.is_zero() {
            return Err(Error::ZeroTorusParameter);
        }
        let f = &*self.field;
        let th = self.theta_i();
        let tail = self.torus_cell_tail(eps);
        Ok([
            self.x_plus(f.zero(), f.one()),
            self.x_minus(f.one(), f.add(f.one(), f.theta_pow(eps))),
            self.x_plus(self.pow(eps, 1 - 2 * th), self.pow(eps, -th)),
            self.x_minus(tail.t, tail.u).inverse()?,
        ])
    }

    /// `{x_+(1, 0), h(ζ)·w, x_+(0, ζ)}` for a fixed generator ζ of GF(q)^*.
    pub fn generators(&self) -> Vec<Matrix> {
        let f = &*self.field;
        let zeta = f.primitive_element();
        let hw = &self.torus(zeta).expect("ζ ≠ 0") * &self.weyl();
        vec![
            self.x_plus(f.one(), f.zero()),
            hw,
            self.x_plus(f.zero(), zeta),
        ]
    }
}

impl TwistedGroup for Suzuki {
    type Params = UPlusParams;

    const NAME: &'static str = "suzuki";
    const DIM: usize = 4;
    const PARAM_LEN: u32 = 2;
    const EXHAUSTIVE_MAX_Q: u64 = 8;

    fn field(&self) -> &Arc<Field> {
        &self.field
    }

    fn x_plus(&self, p: UPlusParams) -> Matrix {
        Suzuki::x_plus(self, p.t, p.u)
    }

    fn torus(&self, eps: FieldElement) -> Result<Matrix> {
        Suzuki::torus(self, eps)
    }

    fn weyl(&self) -> Matrix {
        Suzuki::weyl(self)
    }

    fn extract_uplus(&self, g: &Matrix) -> Result<UPlusParams> {
        Suzuki::extract_uplus(self, g)
    }

    fn bruhat(&self, g: &Matrix) -> Result<SuzukiBruhatForm> {
        Suzuki::bruhat(self, g)
    }

    fn factor_weyl_cell(&self, eps: FieldElement) -> Result<[Matrix; 3]> {
        Suzuki::factor_weyl_cell(self, eps)
    }

    fn factor_torus_cell(&self, eps: FieldElement) -> Result<[Matrix; 4]> {
        Suzuki::factor_torus_cell(self, eps)
    }

    fn generators(&self) -> Vec<Matrix> {
        Suzuki::generators(self)
    }

    fn params_from(&self, values: &[FieldElement]) -> UPlusParams {
        UPlusParams::new(values[0], values[1])
    }

    fn param_values(&self, p: UPlusParams) -> Vec<FieldElement> {
        vec![p.t, p.u]
    }
}
