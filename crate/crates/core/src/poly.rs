//! Dense polynomials over GF(p), p ∈ {2, 3}, as little-endian coefficient
//! vectors. Only what the field layer needs: reduction, gcd, extended gcd
//! and the irreducibility test used to validate moduli.

pub(crate) type Poly = Vec<u8>;

fn inv_scalar(c: u8, p: u8) -> u8 {
    debug_assert!(c != 0 && c < p);
    // 1⁻¹ = 1 and, in GF(3), 2⁻¹ = 2.
    c
}

pub(crate) fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn degree(a: &[u8]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn sub(a: &[u8], b: &[u8], p: u8) -> Poly {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub(crate) fn mul(a: &[u8], b: &[u8], p: u8) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u8; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Quotient and remainder of `a` by a nonzero `b`.
pub(crate) fn div_rem(a: &[u8], b: &[u8], p: u8) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = inv_scalar(b[db], p);
    let mut rem = trim(a.to_vec());
    let mut quot = vec![0u8; rem.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = rem[dr] * lead_inv % p;
        let shift = dr - db;
        quot[shift] = c;
        for (i, &bc) in b.iter().enumerate().take(db + 1) {
            rem[shift + i] = (rem[shift + i] + p * p - c * bc % p) % p;
        }
        rem = trim(rem);
    }
    (trim(quot), rem)
}

pub(crate) fn rem(a: &[u8], b: &[u8], p: u8) -> Poly {
    div_rem(a, b, p).1
}

pub(crate) fn gcd(a: &[u8], b: &[u8], p: u8) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm, or `None`
/// when `gcd(a, m) ≠ 1`.
pub(crate) fn inv_mod(a: &[u8], m: &[u8], p: u8) -> Option<Poly> {
    let (mut r0, mut r1) = (trim(m.to_vec()), rem(a, m, p));
    let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is the gcd; it must be a nonzero constant.
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = inv_scalar(r0[0], p);
    Some(rem(&mul(&s0, &[c], p), m, p))
}

fn pow_x_frobenius(prev: &[u8], f: &[u8], p: u8) -> Poly {
    let mut acc = vec![1u8];
    for _ in 0..p {
        acc = rem(&mul(&acc, prev, p), f, p);
    }
    acc
}

/// Ben-Or irreducibility test: `f` of degree n is irreducible iff
/// `gcd(x^{p^i} − x, f) = 1` for every 1 ≤ i ≤ n/2.
pub(crate) fn is_irreducible(f: &[u8], p: u8) -> bool {
    let Some(n) = degree(f) else {
        return false;
    };
    if n == 0 {
        return false;
    }
    let x: Poly = vec![0, 1];
    let mut h = rem(&x, f, p);
    for _ in 1..=n / 2 {
        h = pow_x_frobenius(&h, f, p);
        let g = gcd(&sub(&h, &x, p), f, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}
