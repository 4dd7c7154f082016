//! Integers modulo a prime, plus the primality test guarding them.

use std::sync::{Arc, OnceLock};

use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{Encodable, Ring};

/// Miller–Rabin rounds used when validating a modulus. Each round has error
/// at most 1/4, so 64 rounds bound the error by 2⁻¹²⁸.
pub const PRIMALITY_ROUNDS: usize = 64;

const SMALL_PRIMES: [u32; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Probabilistic primality test: trial division by small primes followed by
/// `rounds` Miller–Rabin rounds with bases drawn from a fixed-seed RNG, so
/// the verdict for a given input is reproducible.
pub fn is_probable_prime(n: &BigUint, rounds: usize) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &sp in &SMALL_PRIMES {
        let sp = BigUint::from(sp);
        if *n == sp {
            return true;
        }
        if (n % &sp).is_zero() {
            return false;
        }
    }

    let n_minus_one = n - 1u32;
    let s = n_minus_one.trailing_zeros().expect("n > 2");
    let d = &n_minus_one >> s;

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);
    'witness: for _ in 0..rounds {
        let a = rng.gen_biguint_range(&two, &n_minus_one);
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Largest probable prime strictly below `bound`, by downward search.
pub fn prev_prime(bound: &BigUint) -> Option<BigUint> {
    let mut c = bound.clone();
    while c > BigUint::from(2u32) {
        c -= 1u32;
        if is_probable_prime(&c, PRIMALITY_ROUNDS) {
            return Some(c);
        }
    }
    None
}

/// The default modulus for the modular schemes: the largest prime below
/// 2²⁵⁶ (which is 2²⁵⁶ − 189), found and checked on first use.
pub fn default_prime() -> &'static BigUint {
    static P: OnceLock<BigUint> = OnceLock::new();
    P.get_or_init(|| prev_prime(&(BigUint::one() << 256u32)).expect("a prime exists below 2^256"))
}

/// The field ℤ/p. Elements are canonical residues in `[0, p)`.
#[derive(Clone, Debug)]
pub struct PrimeField {
    p: Arc<BigUint>,
    width: usize,
}

impl PartialEq for PrimeField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.p, &other.p) || self.p == other.p
    }
}

impl Eq for PrimeField {}

impl PrimeField {
    /// Validates `p` with [`PRIMALITY_ROUNDS`] Miller–Rabin rounds.
    pub fn new(p: BigUint) -> Result<Self> {
        if !is_probable_prime(&p, PRIMALITY_ROUNDS) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(Self::new_unchecked(p))
    }

    pub(crate) fn new_unchecked(p: BigUint) -> Self {
        let width = (p.bits() as usize).div_ceil(8);
        PrimeField {
            p: Arc::new(p),
            width,
        }
    }

    /// ℤ/p for [`default_prime`].
    pub fn default_256() -> Self {
        static F: OnceLock<PrimeField> = OnceLock::new();
        F.get_or_init(|| PrimeField::new_unchecked(default_prime().clone()))
            .clone()
    }

    pub fn modulus(&self) -> &BigUint {
        &self.p
    }

    /// Least nonnegative residue of an integer.
    pub fn reduce_int(&self, x: &BigInt) -> BigUint {
        let p = BigInt::from_biguint(Sign::Plus, (*self.p).clone());
        x.mod_floor(&p)
            .to_biguint()
            .expect("mod_floor by positive is nonnegative")
    }

    pub fn elem(&self, x: i64) -> BigUint {
        self.reduce_int(&BigInt::from(x))
    }
}

impl Ring for PrimeField {
    type Elem = BigUint;

    fn zero(&self) -> BigUint {
        BigUint::zero()
    }
    fn one(&self) -> BigUint {
        // p ≥ 2, so 1 is canonical.
        BigUint::one()
    }
    fn add(&self, x: &BigUint, y: &BigUint) -> BigUint {
        let s = x + y;
        if s >= *self.p {
            s - &*self.p
        } else {
            s
        }
    }
    fn sub(&self, x: &BigUint, y: &BigUint) -> BigUint {
        if x >= y {
            x - y
        } else {
            &*self.p - (y - x)
        }
    }
    fn mul(&self, x: &BigUint, y: &BigUint) -> BigUint {
        (x * y) % &*self.p
    }
    fn mul_add(&self, a: &BigUint, b: &BigUint, c: &BigUint, d: &BigUint) -> BigUint {
        (a * b + c * d) % &*self.p
    }
    fn is_zero(&self, x: &BigUint) -> bool {
        x.is_zero()
    }
    fn describe(&self) -> String {
        format!("Z/{}", self.p)
    }
}

impl Encodable for PrimeField {
    fn elem_width(&self) -> usize {
        self.width
    }

    fn encode_elem(&self, x: &BigUint, out: &mut Vec<u8>) {
        let be = if x.is_zero() { vec![] } else { x.to_bytes_be() };
        out.extend(std::iter::repeat_n(0, self.width - be.len()));
        out.extend_from_slice(&be);
    }

    fn decode_elem(&self, bytes: &[u8]) -> Result<BigUint> {
        let x = BigUint::from_bytes_be(bytes);
        if x >= *self.p {
            return Err(Error::MalformedDigest(format!(
                "entry {x} is not reduced mod {}",
                self.p
            )));
        }
        Ok(x)
    }
}
