//! Exact arithmetic in GF(p^n) for p ∈ {2, 3} and odd n.
//!
//! Elements are small copyable handles interpreted by a [`Field`]. The
//! coefficient vector of an element is packed into a `u64`:
//!
//! - p = 2: bit i is the coefficient of x^i;
//! - p = 3: two bit planes, bit i of the low word set when the coefficient
//!   of x^i is 1, bit i of the high word set when it is 2.
//!
//! Both encodings are canonical, so equality of handles is equality of
//! field elements. The external encoding is the base-p integer
//! Σ cᵢ·pⁱ (see [`Field::to_int`]).

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::poly;

const MAX_DEGREE: u32 = 31;

/// Built-in irreducible moduli, little-endian coefficients.
const DEFAULT_MODULI: &[(u32, u32, &[u8])] = &[
    (2, 1, &[0, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (3, 1, &[0, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
];

/// Characteristic, degree and defining polynomial of a field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    n: u32,
    modulus: Vec<u8>,
}

impl FieldSpec {
    /// Validates `modulus` (monic, degree `n`, irreducible over GF(p)).
    pub fn new(p: u32, n: u32, modulus: Vec<u8>) -> Result<Self> {
        if p != 2 && p != 3 {
            return Err(Error::InvalidField(format!(
                "characteristic {p} is not 2 or 3"
            )));
        }
        if n == 0 || n.is_multiple_of(2) {
            return Err(Error::InvalidField(format!("degree {n} is not odd")));
        }
        if n > MAX_DEGREE {
            return Err(Error::InvalidField(format!(
                "degree {n} exceeds {MAX_DEGREE}"
            )));
        }
        if modulus.iter().any(|&c| u32::from(c) >= p) {
            return Err(Error::InvalidField("coefficient out of range".into()));
        }
        let modulus = poly::trim(modulus);
        if poly::degree(&modulus) != Some(n as usize) {
            return Err(Error::InvalidField(format!(
                "modulus does not have degree {n}"
            )));
        }
        if modulus[n as usize] != 1 {
            return Err(Error::InvalidField("modulus is not monic".into()));
        }
        if !poly::is_irreducible(&modulus, p as u8) {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }
        Ok(Self { p, n, modulus })
    }

    /// The built-in modulus for `(p, n)`; outside the table, the irreducible
    /// monic polynomial of degree `n` with the smallest base-p encoding.
    pub fn default_for(p: u32, n: u32) -> Result<Self> {
        if let Some((_, _, coeffs)) = DEFAULT_MODULI
            .iter()
            .find(|(dp, dn, _)| *dp == p && *dn == n)
        {
            return Self::new(p, n, coeffs.to_vec());
        }
        if (p != 2 && p != 3) || n == 0 || n.is_multiple_of(2) || n > MAX_DEGREE {
            return Self::new(p, n, Vec::new());
        }
        let base = u64::from(p);
        (1..base.pow(n))
            .map(|code| {
                let mut coeffs: Vec<u8> = (0..n)
                    .scan(code, |rest, _| {
                        let c = (*rest % base) as u8;
                        *rest /= base;
                        Some(c)
                    })
                    .collect();
                coeffs.push(1);
                coeffs
            })
            .find(|coeffs| poly::is_irreducible(coeffs, p as u8))
            .map(|coeffs| Self {
                p,
                n,
                modulus: coeffs,
            })
            .ok_or_else(|| Error::InvalidField(format!("no irreducible polynomial of degree {n}")))
    }

    /// Built-in field of order `q`, which must be 2^n or 3^n with n odd.
    pub fn for_order(q: u64) -> Result<Self> {
        for p in [2u64, 3] {
            let mut n = 0;
            let mut acc = 1u64;
            while acc < q {
                acc *= p;
                n += 1;
            }
            if acc == q && n > 0 {
                return Self::default_for(p as u32, n);
            }
        }
        Err(Error::InvalidField(format!("{q} is not a power of 2 or 3")))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        u64::from(self.p).pow(self.n)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.modulus.iter().map(u8::to_string).collect();
        write!(f, "p={} n={} mod={}", self.p, self.n, coeffs.join(","))
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = None;
        let mut n = None;
        let mut modulus = None;
        for token in s.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {token:?}")))?;
            let bad = |_| Error::Parse(format!("bad value in {token:?}"));
            match key {
                "p" => p = Some(value.parse::<u32>().map_err(bad)?),
                "n" => n = Some(value.parse::<u32>().map_err(bad)?),
                "mod" => {
                    modulus = Some(
                        value
                            .split(',')
                            .map(|c| c.trim().parse::<u8>())
                            .collect::<std::result::Result<Vec<_>, _>>()
                            .map_err(bad)?,
                    )
                }
                _ => return Err(Error::Parse(format!("unknown key {key:?}"))),
            }
        }
        match (p, n, modulus) {
            (Some(p), Some(n), Some(m)) => FieldSpec::new(p, n, m),
            _ => Err(Error::Parse("field spec needs p=, n= and mod=".into())),
        }
    }
}

/// An element of some [`Field`]; meaningless without it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Outcome of a characteristic-3 square root: `sign · root² = input`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquareClass {
    Square,
    MinusSquare,
}

impl SquareClass {
    pub fn sign(self) -> i64 {
        match self {
            SquareClass::Square => 1,
            SquareClass::MinusSquare => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    spec: FieldSpec,
    order: u64,
    mask: u64,
    /// x^n reduced modulo the modulus.
    x_pow_n: FieldElement,
}

fn split(a: u64) -> (u64, u64) {
    (a & 0xffff_ffff, a >> 32)
}

fn join(ones: u64, twos: u64) -> u64 {
    ones | (twos << 32)
}

/// Digitwise sum of two GF(3) bit-plane vectors.
fn add3(a: u64, b: u64) -> u64 {
    let (a1, a2) = split(a);
    let (b1, b2) = split(b);
    let a0 = !(a1 | a2);
    let b0 = !(b1 | b2);
    let ones = (a1 & b0) | (b1 & a0) | (a2 & b2);
    let twos = (a2 & b0) | (b2 & a0) | (a1 & b1);
    join(ones, twos)
}

fn neg3(a: u64) -> u64 {
    let (a1, a2) = split(a);
    join(a2, a1)
}

impl Field {
    pub fn new(spec: FieldSpec) -> Self {
        let order = spec.order();
        let mask = (1u64 << spec.n) - 1;
        let mut field = Field {
            spec,
            order,
            mask,
            x_pow_n: FieldElement::ZERO,
        };
        // x^n ≡ −(modulus − x^n)
        let n = field.spec.n as usize;
        let low = field
            .from_coeffs(&field.spec.modulus[..n])
            .expect("modulus coefficients are in range");
        field.x_pow_n = field.neg(low);
        field
    }

    /// Built-in field of order `q`.
    pub fn with_order(q: u64) -> Result<Self> {
        Ok(Self::new(FieldSpec::for_order(q)?))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.spec.n
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// m with n = 2m + 1.
    pub fn twist_index(&self) -> u32 {
        (self.spec.n - 1) / 2
    }

    /// θ = p^m.
    pub fn theta(&self) -> u64 {
        u64::from(self.spec.p).pow(self.twist_index())
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// The image of the integer `k` in the prime field.
    pub fn from_i64(&self, k: i64) -> FieldElement {
        let c = k.rem_euclid(i64::from(self.spec.p));
        match (self.spec.p, c) {
            (_, 0) => FieldElement(0),
            (_, 1) => FieldElement(1),
            _ => FieldElement(join(0, 1)),
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u8]) -> Result<FieldElement> {
        if coeffs.len() > self.spec.n as usize {
            return Err(Error::Parse(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.spec.n
            )));
        }
        let mut ones = 0u64;
        let mut twos = 0u64;
        for (i, &c) in coeffs.iter().enumerate() {
            match (self.spec.p, c) {
                (_, 0) => {}
                (_, 1) => ones |= 1 << i,
                (3, 2) => twos |= 1 << i,
                _ => return Err(Error::Parse(format!("coefficient {c} out of range"))),
            }
        }
        Ok(FieldElement(join(ones, twos)))
    }

    /// Little-endian coefficient vector of length n.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u8> {
        let (ones, twos) = split(a.0);
        (0..self.spec.n)
            .map(|i| ((ones >> i) & 1) as u8 + 2 * ((twos >> i) & 1) as u8)
            .collect()
    }

    /// Decodes the base-p integer Σ cᵢ·pⁱ.
    pub fn from_int(&self, mut value: u64) -> Result<FieldElement> {
        if value >= self.order {
            return Err(Error::Parse(format!(
                "{value} is not below the field order {}",
                self.order
            )));
        }
        let p = u64::from(self.spec.p);
        let mut coeffs = Vec::with_capacity(self.spec.n as usize);
        while value > 0 {
            coeffs.push((value % p) as u8);
            value /= p;
        }
        self.from_coeffs(&coeffs)
    }

    pub fn to_int(&self, a: FieldElement) -> u64 {
        let p = u64::from(self.spec.p);
        self.coeffs(a)
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * p + u64::from(c))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match self.spec.p {
            2 => FieldElement(a.0 ^ b.0),
            _ => FieldElement(add3(a.0, b.0)),
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        match self.spec.p {
            2 => a,
            _ => FieldElement(neg3(a.0)),
        }
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    fn mul_by_x(&self, a: FieldElement) -> FieldElement {
        let n = self.spec.n;
        match self.spec.p {
            2 => {
                let shifted = a.0 << 1;
                let body = FieldElement(shifted & self.mask);
                if (shifted >> n) & 1 == 1 {
                    self.add(body, self.x_pow_n)
                } else {
                    body
                }
            }
            _ => {
                let (ones, twos) = split(a.0);
                let (ones, twos) = (ones << 1, twos << 1);
                let body = FieldElement(join(ones & self.mask, twos & self.mask));
                if (ones >> n) & 1 == 1 {
                    self.add(body, self.x_pow_n)
                } else if (twos >> n) & 1 == 1 {
                    self.sub(body, self.x_pow_n)
                } else {
                    body
                }
            }
        }
    }

    /// Product reduced modulo the defining polynomial (shift-and-add).
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let (b1, b2) = split(b.0);
        let mut acc = FieldElement::ZERO;
        let mut cur = a;
        let top = 64 - (b1 | b2).leading_zeros();
        for i in 0..top {
            if (b1 >> i) & 1 == 1 {
                acc = self.add(acc, cur);
            } else if (b2 >> i) & 1 == 1 {
                acc = self.sub(acc, cur);
            }
            if i + 1 < top {
                cur = self.mul_by_x(cur);
            }
        }
        acc
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let p = self.spec.p as u8;
        let inv = poly::inv_mod(&self.coeffs(a), &self.spec.modulus, p)
            .expect("nonzero element of a field is invertible");
        self.from_coeffs(&inv)
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// `a^e` for a signed exponent, reduced modulo q − 1.
    ///
    /// # Panics
    /// If `a = 0` and `e < 0`.
    pub fn pow_signed(&self, a: FieldElement, e: i64) -> FieldElement {
        if a.is_zero() {
            assert!(e >= 0, "zero raised to a negative power");
            return if e == 0 { self.one() } else { a };
        }
        let e = e.rem_euclid((self.order - 1) as i64) as u64;
        self.pow(a, e)
    }

    /// x ↦ x^p.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        match self.spec.p {
            2 => self.square(a),
            _ => self.mul(self.square(a), a),
        }
    }

    /// a ↦ a^θ, θ = p^m, as m Frobenius steps.
    pub fn theta_pow(&self, a: FieldElement) -> FieldElement {
        (0..self.twist_index()).fold(a, |x, _| self.frobenius(x))
    }

    /// Inverse of [`Field::theta_pow`]: a ↦ a^{pθ}, since θ·pθ = q.
    pub fn theta_unpow(&self, a: FieldElement) -> FieldElement {
        (0..=self.twist_index()).fold(a, |x, _| self.frobenius(x))
    }

    /// Returns `(λ, class)` with `class.sign() · λ² = a`.
    ///
    /// Uses Euler's criterion and λ = (±a)^{(q+1)/4}, valid because
    /// q ≡ 3 (mod 4) for odd powers of 3.
    pub fn sqrt_char3(&self, a: FieldElement) -> Result<(FieldElement, SquareClass)> {
        if self.spec.p != 3 {
            return Err(Error::WrongCharacteristic {
                expected: 3,
                found: self.spec.p,
            });
        }
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        let q = self.order;
        if self.pow(a, (q - 1) / 2) == self.one() {
            Ok((self.pow(a, (q + 1) / 4), SquareClass::Square))
        } else {
            Ok((self.pow(self.neg(a), (q + 1) / 4), SquareClass::MinusSquare))
        }
    }

    /// The unique square root in characteristic 2, a^{2^{n−1}}.
    pub fn sqrt_char2(&self, a: FieldElement) -> Result<FieldElement> {
        if self.spec.p != 2 {
            return Err(Error::WrongCharacteristic {
                expected: 2,
                found: self.spec.p,
            });
        }
        Ok((1..self.spec.n).fold(a, |x, _| self.square(x)))
    }

    /// The first element (in encoding order) that generates GF(q)^*.
    pub fn primitive_element(&self) -> FieldElement {
        let n = self.order - 1;
        let mut primes = Vec::new();
        let (mut rest, mut d) = (n, 2);
        while d * d <= rest {
            if rest % d == 0 {
                primes.push(d);
                while rest % d == 0 {
                    rest /= d;
                }
            }
            d += 1;
        }
        if rest > 1 {
            primes.push(rest);
        }
        self.nonzero_elements()
            .find(|&a| primes.iter().all(|&r| self.pow(a, n / r) != self.one()))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    /// All q elements in increasing order of their integer encoding.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(move |v| self.from_int(v).expect("value below order"))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.elements().skip(1)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        self.from_int(rng.gen_range(0..self.order))
            .expect("value below order")
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        self.from_int(rng.gen_range(1..self.order))
            .expect("value below order")
    }

    /// Parses the decimal base-p integer encoding.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let v = s
            .trim()
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("not a field element: {s:?}")))?;
        self.from_int(v)
    }
}
