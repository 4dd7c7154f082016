use std::f64::consts::LN_2;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::{Integers, Mat2};
use crate::scheme::word_product;
use crate::word::Word;

/// `7/2 + 3·√5/2`, the closed form quoted for the cookie triple.
pub const COOKIE_FORMULA_VALUE: f64 = 6.854_101_966_249_685;
/// `(3 + √5)/2`, the decimal value quoted alongside it; also `ρ(C)`.
pub const COOKIE_QUOTED_VALUE: f64 = 2.618_033_988_749_895;

/// Natural logarithm of a nonnegative big integer (−∞ for zero).
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 960 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("64 bits").ln() + shift as f64 * LN_2
}

/// `t / 2^k` as f64, for `t` of moderate size after shifting.
fn scaled(t: &BigInt, k: u64) -> f64 {
    let mag: BigUint = t.magnitude() >> k;
    let v = mag.to_f64().expect("shifted below f64 range");
    if t.is_negative() {
        -v
    } else {
        v
    }
}

/// `ln ρ(M)` for an integer 2×2 matrix, from its trace `t` and determinant
/// `d` as the largest root modulus of `λ² − tλ + d`. Complex roots have
/// modulus `√d`. The inputs are rescaled by a power of two first, so the
/// result keeps full f64 relative precision for entries of any size.
pub fn ln_spectral_radius(m: &Mat2<Integers>) -> f64 {
    let t = m.trace();
    let d = m.det();
    if t.is_zero() && d.is_zero() {
        return f64::NEG_INFINITY;
    }
    let tb = t.bits();
    let db = d.bits().div_ceil(2);
    let k = tb.max(db).saturating_sub(480);
    let ts = scaled(&t, k);
    let ds = scaled(&d, 2 * k);
    let disc = ts * ts - 4.0 * ds;
    let rho = if disc >= 0.0 {
        (ts.abs() + disc.sqrt()) / 2.0
    } else {
        ds.sqrt()
    };
    rho.ln() + k as f64 * LN_2
}

/// Per-letter growth `ρ(M_w)^(1/|w|)` of the periodic word `w^∞`.
pub fn periodic_spectral_radius(word: &Word, gens: &[Mat2<Integers>]) -> Result<f64> {
    if word.is_empty() {
        return Err(Error::BadWord("word must be nonempty".into()));
    }
    let m = word_product(gens, word)?;
    Ok((ln_spectral_radius(&m) / word.len() as f64).exp())
}

/// `⌊log_s p⌋`: products of at most this many generators with growth rate
/// `s` keep every entry below `p`, so no two distinct such words can
/// collide mod p when the generators are free over ℤ.
pub fn girth_lower_bound(p: &BigUint, s: f64) -> Result<u64> {
    if s.is_nan() || s <= 1.0 {
        return Err(Error::InvalidArgument(format!(
            "growth rate must exceed 1, got {s}"
        )));
    }
    if *p < BigUint::from(2u32) {
        return Err(Error::InvalidArgument("p must be at least 2".into()));
    }
    Ok((ln_biguint(p) / s.ln()).floor() as u64)
}
