//! Binary polynomials and the field GF(2ⁿ) = 𝔽₂[x]/(m(x)).
//!
//! Bit `i` of a [`BitPoly`] is the coefficient of `xⁱ`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::matrix::{Encodable, Ring};

/// A polynomial over GF(2), stored as little-endian 64-bit limbs with no
/// trailing zero limbs.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitPoly {
    limbs: Vec<u64>,
}

impl fmt::Debug for BitPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{}", self.to_hex())
    }
}

impl fmt::Display for BitPoly {
    /// Human-readable form such as `x^3 + x + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(deg) = self.degree() else {
            return f.write_str("0");
        };
        let mut first = true;
        for i in (0..=deg).rev() {
            if !self.bit(i) {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Carry-less 64×64 → 128 bit product.
fn clmul64(a: u64, b: u64) -> u128 {
    let a = a as u128;
    let mut r = 0u128;
    let mut b = b;
    while b != 0 {
        let i = b.trailing_zeros();
        r ^= a << i;
        b &= b - 1;
    }
    r
}

impl BitPoly {
    pub fn zero() -> Self {
        BitPoly { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_u64(1)
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_u64(2)
    }

    pub fn from_u64(v: u64) -> Self {
        Self::from_limbs(vec![v])
    }

    pub fn from_limbs(limbs: Vec<u64>) -> Self {
        let mut p = BitPoly { limbs };
        p.normalize();
        p
    }

    /// Sum of `x^e` over the given exponents (repeats cancel).
    pub fn from_exponents(exps: &[usize]) -> Self {
        let mut p = BitPoly::zero();
        for &e in exps {
            p.flip_bit(e);
        }
        p.normalize();
        p
    }

    /// Parses a hex coefficient string, most significant digit first, so the
    /// last digit holds the coefficients of x³..x⁰. An optional `0x` prefix
    /// is accepted.
    pub fn from_hex(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s
            .strip_prefix("0x")
            .or_else(|| s.strip_prefix("0X"))
            .unwrap_or(s);
        if s.is_empty() {
            return Err(Error::BadModulus("empty hex string".into()));
        }
        let mut p = BitPoly::zero();
        for (i, ch) in s.chars().rev().enumerate() {
            let v = ch
                .to_digit(16)
                .ok_or_else(|| Error::BadModulus(format!("bad hex digit `{ch}`")))?;
            for k in 0..4 {
                if v >> k & 1 == 1 {
                    p.flip_bit(4 * i + k);
                }
            }
        }
        p.normalize();
        Ok(p)
    }

    pub fn to_hex(&self) -> String {
        let Some(deg) = self.degree() else {
            return "0".into();
        };
        let digits = deg / 4 + 1;
        (0..digits)
            .rev()
            .map(|i| {
                let v = (0..4).fold(0u32, |acc, k| acc | (self.bit(4 * i + k) as u32) << k);
                char::from_digit(v, 16).expect("nibble")
            })
            .collect()
    }

    fn normalize(&mut self) {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.limbs == [1]
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = *self.limbs.last()?;
        Some(64 * (self.limbs.len() - 1) + 63 - top.leading_zeros() as usize)
    }

    pub fn bit(&self, i: usize) -> bool {
        self.limbs
            .get(i / 64)
            .is_some_and(|l| l >> (i % 64) & 1 == 1)
    }

    fn flip_bit(&mut self, i: usize) {
        let (w, b) = (i / 64, i % 64);
        if self.limbs.len() <= w {
            self.limbs.resize(w + 1, 0);
        }
        self.limbs[w] ^= 1 << b;
    }

    pub fn add(&self, rhs: &BitPoly) -> BitPoly {
        let (long, short) = if self.limbs.len() >= rhs.limbs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut limbs = long.limbs.clone();
        for (l, s) in limbs.iter_mut().zip(&short.limbs) {
            *l ^= s;
        }
        BitPoly::from_limbs(limbs)
    }

    /// Full (unreduced) product.
    pub fn mul(&self, rhs: &BitPoly) -> BitPoly {
        if self.is_zero() || rhs.is_zero() {
            return BitPoly::zero();
        }
        let mut out = vec![0u64; self.limbs.len() + rhs.limbs.len()];
        for (i, &a) in self.limbs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.limbs.iter().enumerate() {
                let prod = clmul64(a, b);
                out[i + j] ^= prod as u64;
                out[i + j + 1] ^= (prod >> 64) as u64;
            }
        }
        BitPoly::from_limbs(out)
    }

    pub fn square(&self) -> BitPoly {
        self.mul(self)
    }

    /// XORs `m · x^shift` into `self` in place (no normalization).
    fn xor_shifted(&mut self, m: &BitPoly, shift: usize) {
        let (w, b) = (shift / 64, shift % 64);
        let need = m.limbs.len() + w + 1;
        if self.limbs.len() < need {
            self.limbs.resize(need, 0);
        }
        for (k, &l) in m.limbs.iter().enumerate() {
            self.limbs[k + w] ^= l << b;
            if b != 0 {
                self.limbs[k + w + 1] ^= l >> (64 - b);
            }
        }
    }

    /// Remainder modulo `m`, cancelling the leading term with shifted copies
    /// of `m` from the highest degree down.
    pub fn rem(&self, m: &BitPoly) -> BitPoly {
        let dm = m.degree().expect("division by the zero polynomial");
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dm {
                break;
            }
            r.xor_shifted(m, dr - dm);
            r.normalize();
        }
        r
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, m: &BitPoly) -> (BitPoly, BitPoly) {
        let dm = m.degree().expect("division by the zero polynomial");
        let mut q = BitPoly::zero();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dm {
                break;
            }
            q.flip_bit(dr - dm);
            r.xor_shifted(m, dr - dm);
            r.normalize();
        }
        q.normalize();
        (q, r)
    }

    pub fn gcd(&self, rhs: &BitPoly) -> BitPoly {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// Evaluates the polynomial `self(t)` for a field element `t`.
    pub fn eval_in(&self, field: &Gf2nField, t: &BitPoly) -> BitPoly {
        let Some(deg) = self.degree() else {
            return BitPoly::zero();
        };
        // Horner
        let mut acc = BitPoly::zero();
        for i in (0..=deg).rev() {
            acc = field.mul(&acc, t);
            if self.bit(i) {
                acc = field.add(&acc, &BitPoly::one());
            }
        }
        acc
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `x^(2^k) mod m`.
fn x_pow_two_pow(k: usize, m: &BitPoly) -> BitPoly {
    let mut t = BitPoly::x().rem(m);
    for _ in 0..k {
        t = t.square().rem(m);
    }
    t
}

/// Rabin's irreducibility test over GF(2): a polynomial `m` of degree `n ≥ 1`
/// is irreducible iff `x^(2^n) ≡ x (mod m)` and
/// `gcd(x^(2^(n/q)) − x, m) = 1` for every prime `q | n`.
pub fn is_irreducible(m: &BitPoly) -> bool {
    let n = match m.degree() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    let x = BitPoly::x().rem(m);
    if x_pow_two_pow(n, m) != x {
        return false;
    }
    prime_divisors(n).into_iter().all(|q| {
        let h = x_pow_two_pow(n / q, m).add(&x);
        h.gcd(m).is_one()
    })
}

/// Recommended degree range for the Tillich–Zémor platform.
pub const RECOMMENDED_DEGREES: std::ops::RangeInclusive<usize> = 127..=170;

/// A validated irreducible modulus of degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    modulus: BitPoly,
    n: usize,
}

impl FieldSpec {
    pub fn new(modulus: BitPoly) -> Result<Self> {
        let n = match modulus.degree() {
            Some(n) if n >= 1 => n,
            _ => return Err(Error::BadModulus("degree must be at least 1".into())),
        };
        if !is_irreducible(&modulus) {
            return Err(Error::Reducible(modulus.to_string()));
        }
        Ok(FieldSpec { modulus, n })
    }

    pub fn modulus(&self) -> &BitPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// A note when the degree is outside the usual range or not prime.
    pub fn range_warning(&self) -> Option<String> {
        let prime = self.n >= 2 && prime_divisors(self.n) == [self.n];
        if RECOMMENDED_DEGREES.contains(&self.n) && prime {
            None
        } else {
            Some(format!(
                "field degree {} is outside the usual choice (prime n with 127 <= n <= 170)",
                self.n
            ))
        }
    }
}

/// Smallest `k` such that `x^n + x^k + 1` is irreducible.
pub fn smallest_irreducible_trinomial(n: usize) -> Option<BitPoly> {
    (1..n)
        .map(|k| BitPoly::from_exponents(&[n, k, 0]))
        .find(is_irreducible)
}

/// The field GF(2ⁿ) defined by a validated modulus.
#[derive(Clone, Debug)]
pub struct Gf2nField(Arc<FieldSpec>);

impl PartialEq for Gf2nField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Gf2nField {}

impl Gf2nField {
    pub fn new(spec: FieldSpec) -> Self {
        Gf2nField(Arc::new(spec))
    }

    pub fn from_modulus(m: BitPoly) -> Result<Self> {
        Ok(Self::new(FieldSpec::new(m)?))
    }

    /// GF(2¹²⁷) with modulus `x¹²⁷ + x + 1`, or the smallest irreducible
    /// trinomial of degree 127 should that one ever fail the check.
    pub fn default_127() -> Self {
        static F: OnceLock<Gf2nField> = OnceLock::new();
        F.get_or_init(|| {
            let m = BitPoly::from_exponents(&[127, 1, 0]);
            let m = if is_irreducible(&m) {
                m
            } else {
                smallest_irreducible_trinomial(127).expect("degree-127 trinomial")
            };
            Gf2nField::from_modulus(m).expect("checked above")
        })
        .clone()
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.n
    }

    /// The class of `x`, a root of the modulus.
    pub fn alpha(&self) -> BitPoly {
        BitPoly::x().rem(&self.0.modulus)
    }

    /// Canonical representative of an arbitrary polynomial.
    pub fn elem(&self, p: &BitPoly) -> BitPoly {
        p.rem(&self.0.modulus)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inverse(&self, a: &BitPoly) -> Option<BitPoly> {
        if a.is_zero() {
            return None;
        }
        let m = &self.0.modulus;
        let (mut r0, mut r1) = (m.clone(), a.rem(m));
        let (mut s0, mut s1) = (BitPoly::zero(), BitPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.add(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is the gcd, 1 for an irreducible modulus.
        r0.is_one().then(|| s0.rem(m))
    }
}

impl Ring for Gf2nField {
    type Elem = BitPoly;

    fn zero(&self) -> BitPoly {
        BitPoly::zero()
    }
    fn one(&self) -> BitPoly {
        BitPoly::one().rem(&self.0.modulus)
    }
    fn add(&self, x: &BitPoly, y: &BitPoly) -> BitPoly {
        x.add(y)
    }
    fn sub(&self, x: &BitPoly, y: &BitPoly) -> BitPoly {
        x.add(y)
    }
    fn mul(&self, x: &BitPoly, y: &BitPoly) -> BitPoly {
        x.mul(y).rem(&self.0.modulus)
    }
    fn is_zero(&self, x: &BitPoly) -> bool {
        x.is_zero()
    }
    fn describe(&self) -> String {
        format!("GF(2^{}) mod 0x{}", self.0.n, self.0.modulus.to_hex())
    }
}

impl Encodable for Gf2nField {
    fn elem_width(&self) -> usize {
        self.0.n.div_ceil(8)
    }

    fn encode_elem(&self, x: &BitPoly, out: &mut Vec<u8>) {
        let w = self.elem_width();
        for i in (0..w).rev() {
            let limb = x.limbs.get(i / 8).copied().unwrap_or(0);
            out.push((limb >> (8 * (i % 8))) as u8);
        }
    }

    fn decode_elem(&self, bytes: &[u8]) -> Result<BitPoly> {
        let mut limbs = vec![0u64; bytes.len().div_ceil(8)];
        for (i, &b) in bytes.iter().rev().enumerate() {
            limbs[i / 8] |= (b as u64) << (8 * (i % 8));
        }
        let p = BitPoly::from_limbs(limbs);
        if p.degree().is_some_and(|d| d >= self.0.n) {
            return Err(Error::MalformedDigest(format!(
                "entry of degree {} is not reduced mod a degree-{} modulus",
                p.degree().unwrap(),
                self.0.n
            )));
        }
        Ok(p)
    }
}
