//! The small Ree group ²G₂(q), q = 3^{2m+1}, inside G(G₂, q).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, SquareClass};
use crate::g2::{PositiveRoot, RootLabel, G2};
use crate::group::{BruhatForm, TwistedGroup};
use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ReeParams {
    pub t: FieldElement,
    pub u: FieldElement,
    pub v: FieldElement,
}

impl ReeParams {
    pub fn new(t: FieldElement, u: FieldElement, v: FieldElement) -> Self {
        Self { t, u, v }
    }
}

pub type ReeBruhatForm = BruhatForm<ReeParams>;

/// Sign with which v^θ appears at storage entry (0, 3) of x₃(v): only
/// x_{2α+β}(v^θ) contributes there, through its −e_{10} term.
pub const PEEL_SIGN_V: i64 = -1;

#[derive(Debug, Clone)]
pub struct Ree {
    g2: G2,
}

const fn pos(root: PositiveRoot) -> RootLabel {
    RootLabel::pos(root)
}

impl Ree {
    pub fn new(m: u32) -> Result<Self> {
        Self::with_order(3u64.pow(2 * m + 1))
    }

    pub fn with_order(q: u64) -> Result<Self> {
        Self::with_field(Arc::new(Field::with_order(q)?))
    }

    pub fn with_field(field: Arc<Field>) -> Result<Self> {
        Ok(Self {
            g2: G2::new(field)?,
        })
    }

    pub fn chevalley(&self) -> &G2 {
        &self.g2
    }

    fn f(&self) -> &Field {
        self.g2.field()
    }

    pub fn theta(&self) -> u64 {
        self.f().theta()
    }

    fn theta_i(&self) -> i64 {
        self.theta() as i64
    }

    fn x(&self, root: PositiveRoot, xi: FieldElement) -> Matrix {
        self.g2.root_unipotent(pos(root), xi)
    }

    /// x₁(t) = x_α(t^θ) x_β(t) x_{α+β}(t^{θ+1}) x_{2α+β}(t^{2θ+1}).
    pub fn x1(&self, t: FieldElement) -> Matrix {
        let f = self.f();
        let t_th = f.theta_pow(t);
        let t_th1 = f.mul(t_th, t);
        let t_2th1 = f.mul(t_th1, t_th);
        let a = &self.x(PositiveRoot::A, t_th) * &self.x(PositiveRoot::B, t);
        let b = &self.x(PositiveRoot::AB, t_th1) * &self.x(PositiveRoot::A2B, t_2th1);
        &a * &b
    }

    /// x₂(u) = x_{α+β}(u^θ) x_{3α+β}(u).
    pub fn x2(&self, u: FieldElement) -> Matrix {
        &self.x(PositiveRoot::AB, self.f().theta_pow(u)) * &self.x(PositiveRoot::A3B, u)
    }

    /// x₃(v) = x_{2α+β}(v^θ) x_{3α+2β}(v).
    pub fn x3(&self, v: FieldElement) -> Matrix {
        &self.x(PositiveRoot::A2B, self.f().theta_pow(v)) * &self.x(PositiveRoot::A3B2, v)
    }

    pub fn x_plus(&self, t: FieldElement, u: FieldElement, v: FieldElement) -> Matrix {
        &(&self.x1(t) * &self.x2(u)) * &self.x3(v)
    }

    pub fn x_minus(&self, t: FieldElement, u: FieldElement, v: FieldElement) -> Matrix {
        TwistedGroup::x_minus(self, ReeParams::new(t, u, v))
    }

    /// h(ε) = diag(ε, ε^{3θ−1}, ε^{2−3θ}, 1, ε^{3θ−2}, ε^{1−3θ}, ε^{−1}).
    pub fn torus(&self, eps: FieldElement) -> Result<Matrix> {
        if eps.is_zero() {
            return Err(Error::ZeroTorusParameter);
        }
        let f = self.f();
        let th3 = 3 * self.theta_i();
        let p = |k| f.pow_signed(eps, k);
        let diag = [
            eps,
            p(th3 - 1),
            p(2 - th3),
            f.one(),
            p(th3 - 2),
            p(1 - th3),
            p(-1),
        ];
        Ok(Matrix::diagonal(self.g2.field(), &diag))
    }

    /// The antidiagonal matrix with every entry −1.
    pub fn weyl(&self) -> Matrix {
        let mut w = Matrix::zero(self.g2.field(), 7);
        let minus_one = self.f().from_i64(-1);
        for i in 0..7 {
            w.set(i, 6 - i, minus_one);
        }
        w
    }

    fn check_shape(&self, g: &Matrix) -> Result<()> {
        if g.dim() != 7 {
            return Err(Error::WrongDimension {
                expected: 7,
                found: g.dim(),
            });
        }
        if g.field().spec() != self.f().spec() {
            return Err(Error::SpecMismatch);
        }
        Ok(())
    }

    /// Peels x₁(t), then x₂(u), off the left of `g` and checks that what
    /// remains is x₃(v).
    pub fn extract_uplus(&self, g: &Matrix) -> Result<ReeParams> {
        self.check_shape(g)?;
        if !g.is_upper_unitriangular() {
            return Err(Error::NotInU);
        }
        let f = self.f();
        let t = f.theta_unpow(g.get(0, 1));
        let g1 = &self.x1(t).inverse()? * g;
        let u = f.theta_unpow(g1.get(0, 2));
        let g2 = &self.x2(u).inverse()? * &g1;
        let v = f.theta_unpow(f.mul(f.from_i64(PEEL_SIGN_V), g2.get(0, 3)));
        if self.x3(v) == g2 {
            Ok(ReeParams::new(t, u, v))
        } else {
            Err(Error::NotInU)
        }
    }

    /// Candidate parameters of `x_+(t, u, v)` from its first row alone.
    fn params_from_first_row(&self, row: &[FieldElement]) -> ReeParams {
        let f = self.f();
        let t = f.theta_unpow(row[1]);
        let x1 = self.x1(t);
        let u = f.theta_unpow(f.sub(row[2], x1.get(0, 2)));
        let y = &x1 * &self.x2(u);
        let v = f.theta_unpow(f.sub(y.get(0, 3), row[3]));
        ReeParams::new(t, u, v)
    }

    /// Bruhat normal form; fails with `NotInGroup` outside ²G₂(q).
    ///
    /// In the big cell row 6 of `g` equals −ε⁻¹ times row 0 of
    /// `x_+(t₂, u₂, v₂)`.
    pub fn bruhat(&self, g: &Matrix) -> Result<ReeBruhatForm> {
        self.check_shape(g)?;
        let f = self.f();
        let corner = g.get(6, 0);
        let form = if !corner.is_zero() {
            let eps = f.neg(f.inv(corner)?);
            let scale = f.neg(eps);
            let row: Vec<FieldElement> = g.row(6).into_iter().map(|x| f.mul(scale, x)).collect();
            let u2 = self.params_from_first_row(&row);
            let hw = &self.torus(eps)? * &self.weyl();
            let right = &hw * &self.x_plus(u2.t, u2.u, u2.v);
            let residue = g * &right.inverse()?;
            let u1 = self
                .extract_uplus(&residue)
                .map_err(|_| Error::NotInGroup)?;
            BruhatForm::BigCell { u1, eps, u2 }
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

    /// λ^k for a signed exponent.
    fn lp(&self, lambda: FieldElement, k: i64) -> FieldElement {
        self.f().pow_signed(lambda, k)
    }

    /// The three factors of `h(±λ²)·w`: `(x_+(a)⁻¹, x_−(b), x_+(c))` where
    /// `x_−(b)·x_+(c) = x_+(a)·h(±λ²)·w`.
    fn weyl_cell_params(&self, lambda: FieldElement, class: SquareClass) -> [ReeParams; 3] {
        let f = self.f();
        let th = self.theta_i();
        let l = |k| self.lp(lambda, k);
        let z = f.zero();
        match class {
            SquareClass::Square => [
                ReeParams::new(l(6 * th - 3), z, f.neg(l(3 * th))),
                ReeParams::new(f.neg(l(3 - 6 * th)), z, l(-3 * th)),
                ReeParams::new(z, z, l(3 * th)),
            ],
            SquareClass::MinusSquare => [
                ReeParams::new(l(6 * th - 3), l(3 - 3 * th), l(3 * th)),
                ReeParams::new(f.neg(l(3 - 6 * th)), f.neg(l(3 * th - 3)), l(-3 * th)),
                ReeParams::new(l(6 * th - 3), z, z),
            ],
        }
    }

    /// ε = ±λ² for the case at hand.
    fn signed_square(&self, lambda: FieldElement, class: SquareClass) -> FieldElement {
        let f = self.f();
        f.mul(f.from_i64(class.sign()), f.square(lambda))
    }

    /// Both sides of `x_−(b)·x_+(c) = x_+(a)·h(±λ²)·w`.
    pub fn weyl_cell_identity(
        &self,
        lambda: FieldElement,
        class: SquareClass,
    ) -> Result<(Matrix, Matrix)> {
        if lambda.is_zero() {
            return Err(Error::ZeroTorusParameter);
        }
        let [a, b, c] = self.weyl_cell_params(lambda, class);
        let lhs = &self.x_minus(b.t, b.u, b.v) * &self.x_plus(c.t, c.u, c.v);
        let h = self.torus(self.signed_square(lambda, class))?;
        let rhs = &(&self.x_plus(a.t, a.u, a.v) * &h) * &self.weyl();
        Ok((lhs, rhs))
    }

    /// g₁ of the torus-cell construction; its corner entry is ±λ².
    pub fn torus_g1(&self, lambda: FieldElement, class: SquareClass) -> Matrix {
        let f = self.f();
        let (o, z, m) = (f.one(), f.zero(), f.from_i64(-1));
        let l3 = self.lp(lambda, 3 * self.theta_i());
        match class {
            SquareClass::Square => &self.x_plus(z, o, z) * &self.x_minus(z, o, l3),
            SquareClass::MinusSquare => &self.x_plus(m, m, o) * &self.x_minus(o, z, l3),
        }
    }

    /// The middle factor `x_+(−λ^{3−6θ}, −λ^{3θ−3}, −λ^{−3θ})`, shared by both cases.
    fn torus_cell_middle(&self, lambda: FieldElement) -> ReeParams {
        let f = self.f();
        let th = self.theta_i();
        let l = |k| f.neg(self.lp(lambda, k));
        ReeParams::new(l(3 - 6 * th), l(3 * th - 3), l(-3 * th))
    }

    /// Parameters of the trailing `x_−` in `g₁·x_+(…) = h(±λ²)·x_−(…)`.
    ///
    /// The square case has a short closed form. In the minus-square case the
    /// parameters are read off the lower-unitriangular part of the product.
    pub fn torus_cell_tail(&self, lambda: FieldElement, class: SquareClass) -> Result<ReeParams> {
        if lambda.is_zero() {
            return Err(Error::ZeroTorusParameter);
        }
        let f = self.f();
        let th = self.theta_i();
        let l = |k| self.lp(lambda, k);
        match class {
            SquareClass::Square => {
                let a = l(3 - 3 * th);
                Ok(ReeParams::new(
                    l(6 * th - 3),
                    f.neg(f.mul(a, f.add(f.one(), a))),
                    f.add(l(3 * th), l(3)),
                ))
            }
            SquareClass::MinusSquare => {
                let mid = self.torus_cell_middle(lambda);
                let lhs = &self.torus_g1(lambda, class) * &self.x_plus(mid.t, mid.u, mid.v);
                let h_inv = self.torus(f.inv(self.signed_square(lambda, class))?)?;
                self.extract_uminus(&(&h_inv * &lhs))
            }
        }
    }

    /// Both sides of `g₁·x_+(−λ^{3−6θ}, −λ^{3θ−3}, −λ^{−3θ}) = h(±λ²)·x_−(tail)`.
    pub fn torus_cell_identity(
        &self,
        lambda: FieldElement,
        class: SquareClass,
    ) -> Result<(Matrix, Matrix)> {
        if lambda.is_zero() {
            return Err(Error::ZeroTorusParameter);
        }
        let mid = self.torus_cell_middle(lambda);
        let lhs = &self.torus_g1(lambda, class) * &self.x_plus(mid.t, mid.u, mid.v);
        let tail = self.torus_cell_tail(lambda, class)?;
        let rhs =
            &self.torus(self.signed_square(lambda, class))? * &self.x_minus(tail.t, tail.u, tail.v);
        Ok((lhs, rhs))
    }

    /// `h(ε)·w` as `U · U⁻ · U`, with the case chosen by the square class of ε.
    pub fn factor_weyl_cell(&self, eps: FieldElement) -> Result<[Matrix; 3]> {
        if eps.is_zero() {
            return Err(Error::ZeroTorusParameter);
        }
        let (lambda, class) = self.f().sqrt_char3(eps)?;
        let [a, b, c] = self.weyl_cell_params(lambda, class);
        Ok([
            self.x_plus(a.t, a.u, a.v).inverse()?,
            self.x_minus(b.t, b.u, b.v),
            self.x_plus(c.t, c.u, c.v),
        ])
    }

    /// `h(ε)` as `U · U⁻ · U · U⁻`.
    pub fn factor_torus_cell(&self, eps: FieldElement) -> Result<[Matrix; 4]> {
        if eps.is_zero() {
            return Err(Error::ZeroTorusParameter);
        }
        let f = self.f();
        let (lambda, class) = f.sqrt_char3(eps)?;
        let (o, z, m) = (f.one(), f.zero(), f.from_i64(-1));
        let l3 = self.lp(lambda, 3 * self.theta_i());
        let (first, second) = match class {
            SquareClass::Square => (self.x_plus(z, o, z), self.x_minus(z, o, l3)),
            SquareClass::MinusSquare => (self.x_plus(m, m, o), self.x_minus(o, z, l3)),
        };
        let mid = self.torus_cell_middle(lambda);
        let tail = self.torus_cell_tail(lambda, class)?;
        Ok([
            first,
            second,
            self.x_plus(mid.t, mid.u, mid.v),
            self.x_minus(tail.t, tail.u, tail.v).inverse()?,
        ])
    }

    /// `{x_+(1, 0, 0), h(ζ)·w, x_+(0, 0, ζ)}` for a generator ζ of GF(q)^*.
    pub fn generators(&self) -> Vec<Matrix> {
        let f = self.f();
        let zeta = f.primitive_element();
        let hw = &self.torus(zeta).expect("ζ ≠ 0") * &self.weyl();
        vec![
            self.x_plus(f.one(), f.zero(), f.zero()),
            hw,
            self.x_plus(f.zero(), f.zero(), zeta),
        ]
    }
}

impl TwistedGroup for Ree {
    type Params = ReeParams;

    const NAME: &'static str = "ree";
    const DIM: usize = 7;
    const PARAM_LEN: u32 = 3;
    const EXHAUSTIVE_MAX_Q: u64 = 3;

    fn field(&self) -> &Arc<Field> {
        self.g2.field()
    }

    fn x_plus(&self, p: ReeParams) -> Matrix {
        Ree::x_plus(self, p.t, p.u, p.v)
    }

    fn torus(&self, eps: FieldElement) -> Result<Matrix> {
        Ree::torus(self, eps)
    }

    fn weyl(&self) -> Matrix {
        Ree::weyl(self)
    }

    fn extract_uplus(&self, g: &Matrix) -> Result<ReeParams> {
        Ree::extract_uplus(self, g)
    }

    fn bruhat(&self, g: &Matrix) -> Result<ReeBruhatForm> {
        Ree::bruhat(self, g)
    }

    fn factor_weyl_cell(&self, eps: FieldElement) -> Result<[Matrix; 3]> {
        Ree::factor_weyl_cell(self, eps)
    }

    fn factor_torus_cell(&self, eps: FieldElement) -> Result<[Matrix; 4]> {
        Ree::factor_torus_cell(self, eps)
    }

    fn generators(&self) -> Vec<Matrix> {
        Ree::generators(self)
    }

    fn params_from(&self, values: &[FieldElement]) -> ReeParams {
        ReeParams::new(values[0], values[1], values[2])
    }

    fn param_values(&self, p: ReeParams) -> Vec<FieldElement> {
        vec![p.t, p.u, p.v]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::product;

    fn ree(q: u64) -> Ree {
        Ree::with_order(q).unwrap()
    }

    /// An entry Σ c·λ^{a + bθ}, one `(c, a, b)` per term.
    type Entry = &'static [(i64, i64, i64)];

    fn eval(g: &Ree, lambda: FieldElement, rows: &[[Entry; 7]; 7]) -> Matrix {
        let f = g.f();
        let th = g.theta_i();
        let rows: Vec<Vec<FieldElement>> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|terms| {
                        terms.iter().fold(f.zero(), |acc, &(c, a, b)| {
                            f.add(acc, f.mul(f.from_i64(c), f.pow_signed(lambda, a + b * th)))
                        })
                    })
                    .collect()
            })
            .collect();
        Matrix::from_rows(g.g2.field(), &rows).unwrap()
    }

    const O: Entry = &[];
    const ONE: Entry = &[(1, 0, 0)];
    const NEG: Entry = &[(-1, 0, 0)];

    #[rustfmt::skip]
    const WEYL_SQUARE: [[Entry; 7]; 7] = [
        [ONE, O, O, &[(-1, 1, 0)], O, &[(-1, 0, 3)], &[(-1, 2, 0)]],
        [&[(1, -2, 3)], ONE, O, &[(-1, -1, 3)], &[(1, 1, 0)], &[(-1, -2, 6)], O],
        [&[(-1, 1, -3)], &[(-1, 3, -6)], ONE, &[(1, 2, -3)], &[(-1, 4, -6)], O, O],
        [&[(-1, -1, 0)], O, &[(1, -2, 3)], NEG, O, O, O],
        [&[(1, -3, 3)], &[(-1, -1, 0)], &[(-1, -4, 6)], O, O, O, O],
        [&[(1, 0, -3)], &[(-1, 2, -6)], O, O, O, O, O],
        [&[(-1, -2, 0)], O, O, O, O, O, O],
    ];

    #[rustfmt::skip]
    const WEYL_MINUS_SQUARE: [[Entry; 7]; 7] = [
        [ONE, &[(1, 2, -3)], O, O, &[(1, 3, -3)], &[(-1, 0, 3)], &[(1, 2, 0)]],
        [&[(1, -2, 3)], NEG, &[(-1, -3, 6)], &[(1, -1, 3)], &[(-1, 1, 0)], &[(-1, -2, 6)], O],
        [O, &[(-1, 3, -6)], NEG, &[(1, 2, -3)], &[(1, 4, -6)], O, O],
        [O, &[(-1, 1, -3)], &[(-1, -2, 3)], NEG, O, O, O],
        [&[(1, -3, 3)], &[(-1, -1, 0)], &[(1, -4, 6)], O, O, O, O],
        [&[(-1, 0, -3)], &[(-1, 2, -6)], O, O, O, O, O],
        [&[(1, -2, 0)], O, O, O, O, O, O],
    ];

    #[rustfmt::skip]
    const G1_SQUARE: [[Entry; 7]; 7] = [
        [&[(1, 2, 0)], &[(1, 0, 3)], O, &[(1, 1, 0)], O, O, NEG],
        [&[(-1, 0, 3)], O, &[(-1, 1, 0)], O, O, NEG, O],
        [&[(1, 2, 0)], &[(1, 0, 3), (1, 1, 0)], O, &[(1, 1, 0)], NEG, O, NEG],
        [&[(1, 0, 3), (1, 1, 0)], O, &[(1, 1, 0)], NEG, O, ONE, O],
        [&[(1, 2, 0)], &[(1, 0, 3)], NEG, &[(1, 1, 0)], O, O, NEG],
        [&[(1, 0, 3), (-1, 1, 0)], NEG, &[(1, 1, 0)], ONE, O, ONE, O],
        [&[(-1, 0, 0), (-1, 2, 0)], &[(-1, 0, 3), (-1, 1, 0)], ONE, &[(-1, 1, 0)], ONE, O, ONE],
    ];

    #[rustfmt::skip]
    const G1_MINUS_SQUARE: [[Entry; 7]; 7] = [
        [&[(-1, 2, 0)], &[(-1, 0, 3)], O, &[(-1, 1, 0)], O, O, ONE],
        [&[(1, 2, 0), (-1, 0, 3)], &[(1, 0, 3)], &[(-1, 1, 0)], &[(1, 1, 0)], O, NEG, NEG],
        [&[(-1, 2, 0), (-1, 0, 3)], &[(-1, 1, 0), (-1, 0, 3)], &[(-1, 1, 0)], &[(-1, 1, 0)], ONE, NEG, ONE],
        [&[(1, 1, 0), (-1, 0, 3)], &[(1, 1, 0)], &[(-1, 1, 0)], NEG, NEG, NEG, O],
        [&[(-1, 1, 0), (-1, 0, 3)], &[(1, 1, 0)], &[(1, 0, 0), (-1, 1, 0)], ONE, NEG, NEG, O],
        [&[(-1, 2, 0), (-1, 1, 0), (-1, 0, 3)], &[(1, 1, 0), (-1, 0, 3), (-1, 0, 0)], &[(-1, 0, 0), (-1, 1, 0)], &[(1, 0, 0), (-1, 1, 0)], NEG, NEG, ONE],
        [&[(1, 0, 0), (1, 0, 3), (-1, 2, 0)], &[(-1, 0, 3), (-1, 0, 0)], &[(1, 0, 0), (1, 1, 0)], &[(-1, 1, 0)], O, ONE, ONE],
    ];

    fn lambdas(g: &Ree) -> Vec<FieldElement> {
        g.f().nonzero_elements().collect()
    }

    #[test]
    fn generator_products_vanish_at_zero() {
        let g = ree(27);
        let z = g.f().zero();
        assert!(g.x1(z).is_identity() && g.x2(z).is_identity() && g.x3(z).is_identity());
        assert!(g.x_plus(z, z, z).is_identity());
    }

    #[test]
    fn x3_factors_commute() {
        let g = ree(27);
        for a in g.f().elements() {
            for b in g.f().elements() {
                let p = g.x(PositiveRoot::A2B, a);
                let q = g.x(PositiveRoot::A3B2, b);
                assert_eq!(&p * &q, &q * &p);
            }
        }
    }

    #[test]
    fn x1_over_prime_field() {
        let g = ree(3);
        let o = g.f().one();
        let expect = product([
            &g.x(PositiveRoot::A, o),
            &g.x(PositiveRoot::B, o),
            &g.x(PositiveRoot::AB, o),
            &g.x(PositiveRoot::A2B, o),
        ])
        .unwrap();
        assert_eq!(g.x1(o), expect);
    }

    #[test]
    fn x_plus_shape() {
        for q in [3, 27] {
            let g = ree(q);
            let f = g.f();
            let w = g.weyl();
            for t in f.elements() {
                for u in f.elements().step_by(5) {
                    for v in f.elements().step_by(7) {
                        let x = g.x_plus(t, u, v);
                        assert!(x.is_upper_unitriangular());
                        assert_eq!(x.get(0, 1), f.theta_pow(t));
                        let y = g.x_minus(t, u, v);
                        assert!(y.is_lower_unitriangular());
                        assert_eq!(y, &(&w * &x) * &w);
                    }
                }
            }
        }
    }

    #[test]
    fn peel_sign_rederived() {
        // Only x_{2α+β}(v^θ) touches entry (0, 3) of x₃(v).
        for q in [3, 27] {
            let g = ree(q);
            let f = g.f();
            for v in f.elements() {
                assert_eq!(
                    g.x3(v).get(0, 3),
                    f.mul(f.from_i64(PEEL_SIGN_V), f.theta_pow(v))
                );
                assert!(g.x(PositiveRoot::A3B2, v).get(0, 3).is_zero());
            }
        }
    }

    #[test]
    fn extract_uplus_round_trip_gf3() {
        let g = ree(3);
        let f = g.f();
        assert_eq!(
            g.extract_uplus(&g.identity()).unwrap(),
            ReeParams::new(f.zero(), f.zero(), f.zero())
        );
        for t in f.elements() {
            for u in f.elements() {
                for v in f.elements() {
                    let p = ReeParams::new(t, u, v);
                    assert_eq!(g.extract_uplus(&g.x_plus(t, u, v)).unwrap(), p);
                }
            }
        }
        assert_eq!(g.extract_uplus(&g.weyl()), Err(Error::NotInU));
        let mut not_u = g.identity();
        not_u.set(0, 1, f.one());
        assert_eq!(g.extract_uplus(&not_u), Err(Error::NotInU));
    }

    #[test]
    fn torus_and_weyl() {
        let g = ree(27);
        let f = g.f();
        let w = g.weyl();
        assert!((&w * &w).is_identity());
        assert_eq!(w, g.g2.longest_weyl_lift());
        assert!(g.torus(f.one()).unwrap().is_identity());
        assert_eq!(g.torus(f.zero()), Err(Error::ZeroTorusParameter));
        for e in f.nonzero_elements() {
            let h = g.torus(e).unwrap();
            assert_eq!(h.get(3, 3), f.one());
            let conj = &(&w * &h) * &w;
            assert_eq!(conj, g.torus(f.inv(e).unwrap()).unwrap());
            let e2 = f.from_int(5).unwrap();
            assert_eq!(&h * &g.torus(e2).unwrap(), g.torus(f.mul(e, e2)).unwrap());
        }
    }

    #[test]
    fn weyl_cell_displays() {
        for q in [3, 27] {
            let g = ree(q);
            for l in lambdas(&g) {
                let (lhs, rhs) = g.weyl_cell_identity(l, SquareClass::Square).unwrap();
                let shown = eval(&g, l, &WEYL_SQUARE);
                assert_eq!(lhs, shown, "square case, q={q}");
                assert_eq!(rhs, shown);
                let (lhs, rhs) = g.weyl_cell_identity(l, SquareClass::MinusSquare).unwrap();
                let shown = eval(&g, l, &WEYL_MINUS_SQUARE);
                assert_eq!(lhs, shown, "minus-square case, q={q}");
                assert_eq!(rhs, shown);
            }
        }
    }

    #[test]
    fn torus_cell_displays() {
        for q in [3, 27] {
            let g = ree(q);
            let f = g.f();
            for l in lambdas(&g) {
                let g1 = g.torus_g1(l, SquareClass::Square);
                assert_eq!(g1, eval(&g, l, &G1_SQUARE), "square g1, q={q}");
                assert_eq!(g1.get(0, 0), f.square(l));
                let g1 = g.torus_g1(l, SquareClass::MinusSquare);
                assert_eq!(g1, eval(&g, l, &G1_MINUS_SQUARE), "minus-square g1, q={q}");
                assert_eq!(g1.get(0, 0), f.neg(f.square(l)));
                for class in [SquareClass::Square, SquareClass::MinusSquare] {
                    let (lhs, rhs) = g.torus_cell_identity(l, class).unwrap();
                    assert_eq!(lhs, rhs, "{class:?}, q={q}");
                }
            }
        }
    }

    #[test]
    fn weyl_cell_at_one() {
        let g = ree(27);
        let f = g.f();
        let (o, z, m) = (f.one(), f.zero(), f.from_i64(-1));
        let expect = product([
            &g.x_plus(o, z, m).inverse().unwrap(),
            &g.x_minus(m, z, o),
            &g.x_plus(z, z, o),
        ])
        .unwrap();
        assert_eq!(expect, g.weyl());
        assert_eq!(product(&g.factor_weyl_cell(o).unwrap()).unwrap(), g.weyl());
    }

    #[test]
    fn cell_factors_exhaustive() {
        for q in [3, 27] {
            let g = ree(q);
            for e in g.f().nonzero_elements() {
                let fs = g.factor_weyl_cell(e).unwrap();
                assert_eq!(product(&fs).unwrap(), &g.torus(e).unwrap() * &g.weyl());
                assert!(g.is_in_u(&fs[0]) && g.is_in_u_minus(&fs[1]) && g.is_in_u(&fs[2]));
                let fs = g.factor_torus_cell(e).unwrap();
                assert_eq!(product(&fs).unwrap(), g.torus(e).unwrap());
                assert!(g.is_in_u(&fs[0]) && g.is_in_u(&fs[2]));
                assert!(g.is_in_u_minus(&fs[1]) && g.is_in_u_minus(&fs[3]));
            }
        }
        let g = ree(3);
        assert!(product(&g.factor_torus_cell(g.f().one()).unwrap())
            .unwrap()
            .is_identity());
    }

    #[test]
    fn bruhat_examples() {
        let g = ree(27);
        let f = g.f();
        let z = ReeParams::new(f.zero(), f.zero(), f.zero());
        assert_eq!(
            g.bruhat(&g.weyl()).unwrap(),
            BruhatForm::BigCell {
                u1: z,
                eps: f.one(),
                u2: z
            }
        );
        let p = ReeParams::new(
            f.from_int(4).unwrap(),
            f.from_int(13).unwrap(),
            f.from_int(22).unwrap(),
        );
        let e = f.from_int(17).unwrap();
        let g_torus = &g.x_plus(p.t, p.u, p.v) * &g.torus(e).unwrap();
        assert_eq!(
            g.bruhat(&g_torus).unwrap(),
            BruhatForm::TorusCell { u: p, eps: e }
        );
        let form = BruhatForm::BigCell {
            u1: p,
            eps: e,
            u2: ReeParams::new(p.v, p.t, p.u),
        };
        assert_eq!(g.bruhat(&g.rebuild(&form).unwrap()).unwrap(), form);
        let mut bad = g.weyl();
        bad.set(3, 3, f.one());
        assert_eq!(g.bruhat(&bad), Err(Error::NotInGroup));
        assert_eq!(
            g.bruhat(&Matrix::zero(g.g2.field(), 7)),
            Err(Error::NotInGroup)
        );
    }

    #[test]
    fn factor_identity() {
        let g = ree(3);
        let id = g.identity();
        let fac = g.factor(&id).unwrap();
        assert!(g.check_factorization(&id, &fac));
    }
}
