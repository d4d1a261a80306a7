//! Behaviour shared by the two rank-one twisted groups: Bruhat normal
//! forms, the four-factor unitriangular factorization, enumeration by
//! cell parameters and uniform sampling.

use std::fmt::{self, Debug};
use std::sync::Arc;

use num_bigint::{BigUint, RandBigInt};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::matrix::{self, Matrix};

/// Unique normal form of a group element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BruhatForm<P> {
    /// `x_+(u1) · h(eps) · w · x_+(u2)`
    BigCell { u1: P, eps: FieldElement, u2: P },
    /// `x_+(u) · h(eps)`
    TorusCell { u: P, eps: FieldElement },
}

impl<P> BruhatForm<P> {
    pub fn eps(&self) -> FieldElement {
        match self {
            BruhatForm::BigCell { eps, .. } | BruhatForm::TorusCell { eps, .. } => *eps,
        }
    }

    pub fn is_big_cell(&self) -> bool {
        matches!(self, BruhatForm::BigCell { .. })
    }
}

/// Which unitriangular subgroup a factor belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unipotent {
    Upper,
    Lower,
}

impl fmt::Display for Unipotent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Unipotent::Upper => "U",
            Unipotent::Lower => "U-",
        })
    }
}

/// `g = f1 · f2 · f3 · f4` with `f1, f3 ∈ U` and `f2, f4 ∈ U⁻`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SylowFactorization {
    pub factors: [Matrix; 4],
}

impl SylowFactorization {
    pub const TAGS: [Unipotent; 4] = [
        Unipotent::Upper,
        Unipotent::Lower,
        Unipotent::Upper,
        Unipotent::Lower,
    ];

    pub fn product(&self) -> Matrix {
        matrix::product(&self.factors).expect("four factors")
    }

    /// Serializes as a `"<group> q=<q>"` header followed by the four
    /// matrices in the matrix text format.
    pub fn to_text(&self, group_name: &str) -> String {
        let q = self.factors[0].field().order();
        let mut out = format!("{group_name} q={q}\n");
        for f in &self.factors {
            out.push_str(&f.to_text());
        }
        out
    }

    /// Parses the output of [`SylowFactorization::to_text`]; returns the
    /// group name from the header.
    pub fn parse(field: &Arc<Field>, text: &str) -> Result<(String, SylowFactorization)> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?;
        let (name, q) = header
            .split_once(" q=")
            .ok_or_else(|| Error::Parse(format!("bad header {header:?}")))?;
        let dim = match name {
            "suzuki" => 4,
            "ree" => 7,
            _ => return Err(Error::Parse(format!("unknown group {name:?}"))),
        };
        if q.trim().parse::<u64>().ok() != Some(field.order()) {
            return Err(Error::Parse(format!(
                "header q={q} does not match the field"
            )));
        }
        let mut next = || Matrix::parse_lines(field, dim, &mut lines);
        let factors = [next()?, next()?, next()?, next()?];
        Ok((name.to_string(), SylowFactorization { factors }))
    }
}

/// A rank-one twisted group of Lie type realized as a matrix group, with
/// `U = {x_+(p)}` parameterized by `PARAM_LEN` field elements.
pub trait TwistedGroup: Sync {
    type Params: Copy + Debug + PartialEq + Eq + Send + Sync;

    /// Lower-case name used in text headers.
    const NAME: &'static str;
    const DIM: usize;
    /// |U| = q^PARAM_LEN.
    const PARAM_LEN: u32;
    /// Largest q for which whole-group sweeps are allowed.
    const EXHAUSTIVE_MAX_Q: u64;

    fn field(&self) -> &Arc<Field>;

    fn x_plus(&self, p: Self::Params) -> Matrix;

    fn torus(&self, eps: FieldElement) -> Result<Matrix>;

    fn weyl(&self) -> Matrix;

    /// Parameters of an element of `U`, or `NotInU`.
    fn extract_uplus(&self, g: &Matrix) -> Result<Self::Params>;

    fn bruhat(&self, g: &Matrix) -> Result<BruhatForm<Self::Params>>;

    /// `(A, B, C)` with `A·B·C = h(eps)·w`, `A, C ∈ U`, `B ∈ U⁻`.
    fn factor_weyl_cell(&self, eps: FieldElement) -> Result<[Matrix; 3]>;

    /// `(F1, F2, F3, F4)` with product `h(eps)`, alternating `U, U⁻`.
    fn factor_torus_cell(&self, eps: FieldElement) -> Result<[Matrix; 4]>;

    /// A small generating set of the whole group.
    fn generators(&self) -> Vec<Matrix>;

    /// Builds parameters from `PARAM_LEN` field elements.
    fn params_from(&self, values: &[FieldElement]) -> Self::Params;

    /// Inverse of [`TwistedGroup::params_from`].
    fn param_values(&self, p: Self::Params) -> Vec<FieldElement>;

    /// A normal form with field elements written as integers, e.g.
    /// `x+(3,0) h(5) w x+(1,7)`.
    fn describe_form(&self, form: &BruhatForm<Self::Params>) -> String {
        let f = self.field();
        let params = |p: Self::Params| {
            let ints: Vec<String> = self
                .param_values(p)
                .into_iter()
                .map(|x| f.to_int(x).to_string())
                .collect();
            format!("x+({})", ints.join(","))
        };
        match *form {
            BruhatForm::BigCell { u1, eps, u2 } => {
                format!("{} h({}) w {}", params(u1), f.to_int(eps), params(u2))
            }
            BruhatForm::TorusCell { u, eps } => format!("{} h({})", params(u), f.to_int(eps)),
        }
    }

    fn order_q(&self) -> u64 {
        self.field().order()
    }

    fn identity(&self) -> Matrix {
        Matrix::identity(self.field(), Self::DIM)
    }

    /// `w · x_+(p) · w`; `w² = 1` so the side of conjugation is immaterial.
    fn x_minus(&self, p: Self::Params) -> Matrix {
        let w = self.weyl();
        &(&w * &self.x_plus(p)) * &w
    }

    fn extract_uminus(&self, g: &Matrix) -> Result<Self::Params> {
        let w = self.weyl();
        self.extract_uplus(&(&(&w * g) * &w))
    }

    fn is_in_u(&self, g: &Matrix) -> bool {
        self.extract_uplus(g).is_ok()
    }

    fn is_in_u_minus(&self, g: &Matrix) -> bool {
        self.extract_uminus(g).is_ok()
    }

    fn is_member(&self, g: &Matrix) -> bool {
        self.bruhat(g).is_ok()
    }

    /// The matrix described by a normal form.
    fn rebuild(&self, form: &BruhatForm<Self::Params>) -> Result<Matrix> {
        match *form {
            BruhatForm::BigCell { u1, eps, u2 } => {
                let hw = &self.torus(eps)? * &self.weyl();
                Ok(&(&self.x_plus(u1) * &hw) * &self.x_plus(u2))
            }
            BruhatForm::TorusCell { u, eps } => Ok(&self.x_plus(u) * &self.torus(eps)?),
        }
    }

    /// Four unitriangular factors `U · U⁻ · U · U⁻` of `g`.
    fn factor(&self, g: &Matrix) -> Result<SylowFactorization> {
        let factors = match self.bruhat(g)? {
            BruhatForm::BigCell { u1, eps, u2 } => {
                let [a, b, c] = self.factor_weyl_cell(eps)?;
                [
                    &self.x_plus(u1) * &a,
                    b,
                    &c * &self.x_plus(u2),
                    self.identity(),
                ]
            }
            BruhatForm::TorusCell { u, eps } => {
                let [f1, f2, f3, f4] = self.factor_torus_cell(eps)?;
                [&self.x_plus(u) * &f1, f2, f3, f4]
            }
        };
        Ok(SylowFactorization { factors })
    }

    /// Checks the product and the `U, U⁻, U, U⁻` pattern of a factorization.
    fn check_factorization(&self, g: &Matrix, fac: &SylowFactorization) -> bool {
        fac.product() == *g
            && fac
                .factors
                .iter()
                .zip(SylowFactorization::TAGS)
                .all(|(f, tag)| match tag {
                    Unipotent::Upper => f.is_upper_unitriangular() && self.is_in_u(f),
                    Unipotent::Lower => f.is_lower_unitriangular() && self.is_in_u_minus(f),
                })
    }

    /// |U| = q^PARAM_LEN.
    fn unipotent_count(&self) -> BigUint {
        BigUint::from(self.order_q()).pow(Self::PARAM_LEN)
    }

    /// Number of elements of the form `x_+ · h · w · x_+`.
    fn big_cell_size(&self) -> BigUint {
        let nu = self.unipotent_count();
        &nu * &nu * (self.order_q() - 1)
    }

    fn torus_cell_size(&self) -> BigUint {
        self.unipotent_count() * (self.order_q() - 1)
    }

    /// |G| = q^k (q − 1)(q^k + 1).
    fn group_order(&self) -> BigUint {
        self.big_cell_size() + self.torus_cell_size()
    }

    /// The group order when it fits in a `u64`, which index-based
    /// enumeration requires.
    fn indexable_order(&self) -> Option<u64> {
        self.group_order().to_u64()
    }

    /// Parameters with the given index in `0..q^PARAM_LEN`.
    fn params_at(&self, mut index: u64) -> Self::Params {
        let q = self.order_q();
        let f = self.field();
        let values: Vec<FieldElement> = (0..Self::PARAM_LEN)
            .map(|_| {
                let v = f.from_int(index % q).expect("below q");
                index /= q;
                v
            })
            .collect();
        self.params_from(&values)
    }

    /// The normal form with the given index in `0..group_order()`; big-cell
    /// forms come first.
    ///
    /// # Panics
    /// If the group order does not fit in a `u64`.
    fn form_at(&self, index: u64) -> BruhatForm<Self::Params> {
        let f = self.field();
        self.indexable_order().expect("group too large to index");
        let nu = self.order_q().pow(Self::PARAM_LEN);
        let big = nu * nu * (f.order() - 1);
        if index < big {
            let u2 = index % nu;
            let rest = index / nu;
            let e = rest % (f.order() - 1);
            let u1 = rest / (f.order() - 1);
            BruhatForm::BigCell {
                u1: self.params_at(u1),
                eps: f.from_int(e + 1).expect("below q"),
                u2: self.params_at(u2),
            }
        } else {
            let index = index - big;
            let e = index % (f.order() - 1);
            BruhatForm::TorusCell {
                u: self.params_at(index / (f.order() - 1)),
                eps: f.from_int(e + 1).expect("below q"),
            }
        }
    }

    /// Every group element, each exactly once, in normal-form order.
    ///
    /// # Panics
    /// If the group order does not fit in a `u64`.
    fn elements(&self) -> impl Iterator<Item = Matrix> + '_ {
        let order = self
            .indexable_order()
            .expect("group too large to enumerate");
        (0..order).map(move |i| {
            self.rebuild(&self.form_at(i))
                .expect("enumerated forms are valid")
        })
    }

    fn random_params<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Params {
        let f = self.field();
        let values: Vec<FieldElement> = (0..Self::PARAM_LEN).map(|_| f.random(rng)).collect();
        self.params_from(&values)
    }

    /// A uniformly distributed normal form: the big cell is chosen with
    /// probability q^k / (q^k + 1).
    fn random_form<R: Rng + ?Sized>(&self, rng: &mut R) -> BruhatForm<Self::Params> {
        let nu = self.unipotent_count();
        let f = self.field();
        if rng.gen_biguint_below(&(&nu + 1u32)) < nu {
            let u1 = self.random_params(rng);
            let eps = f.random_nonzero(rng);
            let u2 = self.random_params(rng);
            BruhatForm::BigCell { u1, eps, u2 }
        } else {
            let u = self.random_params(rng);
            let eps = f.random_nonzero(rng);
            BruhatForm::TorusCell { u, eps }
        }
    }

    /// Deterministic uniform element for a fixed seed.
    fn random_element(&self, seed: u64) -> Matrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.rebuild(&self.random_form(&mut rng))
            .expect("sampled forms are valid")
    }
}
