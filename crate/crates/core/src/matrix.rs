//! Exact 2×2 matrices over a commutative ring.
//!
//! Three rings are provided: [`Integers`] (arbitrary precision),
//! [`PrimeField`](crate::modp::PrimeField) and
//! [`Gf2nField`](crate::gf2n::Gf2nField). Products over the integers can be
//! pushed into ℤ/p with [`Mat2::reduce`], which is a ring homomorphism.

use std::fmt;
use std::hash::Hash;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::modp::PrimeField;

/// A commutative ring with a canonical element representation.
///
/// Implementations must return canonical elements from every operation, so
/// that structural equality of elements is ring equality.
pub trait Ring: Clone + fmt::Debug + PartialEq + Eq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    /// `a·b + c·d`, the inner step of a matrix product.
    fn mul_add(
        &self,
        a: &Self::Elem,
        b: &Self::Elem,
        c: &Self::Elem,
        d: &Self::Elem,
    ) -> Self::Elem {
        self.add(&self.mul(a, b), &self.mul(c, d))
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        *x == self.zero()
    }

    /// Short human-readable name, used in error messages.
    fn describe(&self) -> String;
}

/// Rings whose canonical elements have a fixed-width byte encoding.
pub trait Encodable: Ring {
    /// Bytes per encoded element.
    fn elem_width(&self) -> usize;
    /// Appends exactly `elem_width()` big-endian bytes.
    fn encode_elem(&self, x: &Self::Elem, out: &mut Vec<u8>);
    /// Inverse of `encode_elem`; rejects non-canonical encodings.
    fn decode_elem(&self, bytes: &[u8]) -> Result<Self::Elem>;
}

/// The integers ℤ with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x + y
    }
    fn sub(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x - y
    }
    fn mul(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x * y
    }
    fn is_zero(&self, x: &BigInt) -> bool {
        x.is_zero()
    }
    fn describe(&self) -> String {
        "Z".into()
    }
}

/// Which scalar domain a matrix or scheme lives over.
#[derive(Clone, Debug, PartialEq)]
pub enum ScalarDomain {
    Integer,
    ModPrime(PrimeField),
    Gf2n(crate::gf2n::Gf2nField),
}

impl fmt::Display for ScalarDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarDomain::Integer => f.write_str("Z"),
            ScalarDomain::ModPrime(r) => f.write_str(&r.describe()),
            ScalarDomain::Gf2n(r) => f.write_str(&r.describe()),
        }
    }
}

/// A 2×2 matrix `[[a, b], [c, d]]` over the ring `R`.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat2<R: Ring> {
    ring: R,
    e: [R::Elem; 4],
}

impl<R: Ring> Hash for Mat2<R> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.e.hash(state);
    }
}

impl<R: Ring> fmt::Debug for Mat2<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{:?}, {:?}], [{:?}, {:?}]] over {}",
            self.e[0],
            self.e[1],
            self.e[2],
            self.e[3],
            self.ring.describe()
        )
    }
}

impl<R: Ring> Mat2<R> {
    /// Builds a matrix from row-major entries, which must already be
    /// canonical elements of `ring`.
    pub fn from_entries(ring: R, entries: [R::Elem; 4]) -> Self {
        Mat2 { ring, e: entries }
    }

    pub fn identity(ring: &R) -> Self {
        Mat2 {
            e: [ring.one(), ring.zero(), ring.zero(), ring.one()],
            ring: ring.clone(),
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    /// Row-major `[a, b, c, d]`.
    pub fn entries(&self) -> &[R::Elem; 4] {
        &self.e
    }

    pub fn into_entries(self) -> [R::Elem; 4] {
        self.e
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.ring)
    }

    /// Exact product `self · rhs`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.ring != rhs.ring {
            return Err(Error::DomainMismatch {
                left: self.ring.describe(),
                right: rhs.ring.describe(),
            });
        }
        Ok(self.mul_same_ring(rhs))
    }

    /// Product without the domain check. Callers guarantee both operands
    /// come from the same ring.
    pub(crate) fn mul_same_ring(&self, rhs: &Self) -> Self {
        let r = &self.ring;
        let [a, b, c, d] = &self.e;
        let [w, x, y, z] = &rhs.e;
        Mat2 {
            e: [
                r.mul_add(a, w, b, y),
                r.mul_add(a, x, b, z),
                r.mul_add(c, w, d, y),
                r.mul_add(c, x, d, z),
            ],
            ring: r.clone(),
        }
    }

    /// `ad − bc`.
    pub fn det(&self) -> R::Elem {
        let r = &self.ring;
        let [a, b, c, d] = &self.e;
        r.sub(&r.mul(a, d), &r.mul(b, c))
    }

    pub fn trace(&self) -> R::Elem {
        self.ring.add(&self.e[0], &self.e[3])
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(&self.ring);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_same_ring(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_same_ring(&base);
            }
        }
        acc
    }

    /// Product of a sequence of matrices, identity for an empty sequence.
    pub fn product<'a, I>(ring: &R, factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Self>,
        R: 'a,
    {
        factors
            .into_iter()
            .try_fold(Self::identity(ring), |acc, m| acc.mul(m))
    }
}

impl Mat2<Integers> {
    /// Integer matrix from small signed entries.
    pub fn int(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2 {
            ring: Integers,
            e: [a.into(), b.into(), c.into(), d.into()],
        }
    }

    /// `max(|a|, |b|, |c|, |d|)`.
    pub fn max_abs_entry(&self) -> BigUint {
        self.e
            .iter()
            .map(|x| x.magnitude().clone())
            .max()
            .expect("four entries")
    }

    /// Entrywise reduction into ℤ/p, negative entries going to their
    /// least nonnegative residue.
    pub fn reduce(&self, field: &PrimeField) -> Mat2<PrimeField> {
        Mat2 {
            e: self.e.clone().map(|x| field.reduce_int(&x)),
            ring: field.clone(),
        }
    }

    /// True when every entry is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.e.iter().all(|x| !x.is_negative())
    }
}

impl<R: Encodable> Mat2<R> {
    /// Row-major fixed-width big-endian encoding of the four entries.
    pub fn serialize(&self) -> Vec<u8> {
        let w = self.ring.elem_width();
        let mut out = Vec::with_capacity(4 * w);
        for x in &self.e {
            self.ring.encode_elem(x, &mut out);
        }
        out
    }

    pub fn deserialize(ring: &R, bytes: &[u8]) -> Result<Self> {
        let w = ring.elem_width();
        if bytes.len() != 4 * w {
            return Err(Error::MalformedDigest(format!(
                "expected {} bytes, got {}",
                4 * w,
                bytes.len()
            )));
        }
        let mut e = Vec::with_capacity(4);
        for chunk in bytes.chunks_exact(w) {
            e.push(ring.decode_elem(chunk)?);
        }
        let e: [R::Elem; 4] = e.try_into().expect("four chunks");
        Ok(Mat2 {
            ring: ring.clone(),
            e,
        })
    }
}

/// A serialized matrix tagged with the scheme that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digest {
    pub bytes: Vec<u8>,
    pub scheme_id: String,
}

impl Digest {
    pub fn to_hex(&self) -> String {
        hex::encode(&self.bytes)
    }

    pub fn from_hex(scheme_id: &str, s: &str) -> Result<Self> {
        let bytes = hex::decode(s.trim()).map_err(|e| Error::MalformedDigest(e.to_string()))?;
        Ok(Digest {
            bytes,
            scheme_id: scheme_id.to_string(),
        })
    }
}

impl fmt::Display for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn schoolbook(x: [i64; 4], y: [i64; 4]) -> [i64; 4] {
        [
            x[0] * y[0] + x[1] * y[2],
            x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3],
        ]
    }

    #[test]
    fn identity_products() {
        let i = Mat2::identity(&Integers);
        assert_eq!(i.mul(&i).unwrap(), i);
        assert_eq!(i, Mat2::int(1, 0, 0, 1));
        let f = PrimeField::new(5u32.into()).unwrap();
        let i5 = Mat2::identity(&f);
        assert_eq!(i5.serialize(), vec![1, 0, 0, 1]);
    }

    #[test]
    fn small_products_match_schoolbook() {
        let cases = [([1, 2, 0, 1], [1, 0, 2, 1]), ([1, 1, 0, 1], [1, 0, 1, 1])];
        for (x, y) in cases {
            let want = schoolbook(x, y);
            let got = Mat2::int(x[0], x[1], x[2], x[3])
                .mul(&Mat2::int(y[0], y[1], y[2], y[3]))
                .unwrap();
            assert_eq!(got, Mat2::int(want[0], want[1], want[2], want[3]));
        }
        assert_eq!(schoolbook([1, 2, 0, 1], [1, 0, 2, 1]), [5, 2, 2, 1]);
        assert_eq!(schoolbook([1, 1, 0, 1], [1, 0, 1, 1]), [2, 1, 1, 1]);
    }

    #[test]
    fn domain_mismatch_is_an_error() {
        let f5 = PrimeField::new(5u32.into()).unwrap();
        let f7 = PrimeField::new(7u32.into()).unwrap();
        let x = Mat2::identity(&f5);
        let y = Mat2::identity(&f7);
        assert!(matches!(x.mul(&y), Err(Error::DomainMismatch { .. })));
    }

    #[test]
    fn reduce_examples() {
        let f3 = PrimeField::new(3u32.into()).unwrap();
        let f7 = PrimeField::new(7u32.into()).unwrap();
        assert_eq!(
            Mat2::int(5, 2, 2, 1).reduce(&f3).serialize(),
            vec![2, 2, 2, 1]
        );
        assert_eq!(
            Mat2::int(1, 0, -2, 1).reduce(&f7).serialize(),
            vec![1, 0, 5, 1]
        );
        assert!(Mat2::identity(&Integers).reduce(&f7).is_identity());
    }

    #[test]
    fn max_abs_entry_examples() {
        assert_eq!(Mat2::int(5, 2, 2, 1).max_abs_entry(), 5u32.into());
        assert_eq!(Mat2::int(-15, 4, -4, 1).max_abs_entry(), 15u32.into());
        assert_eq!(Mat2::identity(&Integers).max_abs_entry(), 1u32.into());
    }

    #[test]
    fn det_examples() {
        assert_eq!(Mat2::int(1, 2, 0, 1).det(), 1.into());
        assert_eq!(Mat2::int(5, 2, 2, 1).det(), 1.into());
    }

    #[test]
    fn serialize_examples_p251() {
        let f = PrimeField::new(251u32.into()).unwrap();
        assert_eq!(Mat2::identity(&f).serialize(), vec![0x01, 0x00, 0x00, 0x01]);
        let m = Mat2::int(2, 2, 2, 1).reduce(&f);
        assert_eq!(m.serialize(), vec![0x02, 0x02, 0x02, 0x01]);
        assert_eq!(Mat2::deserialize(&f, &m.serialize()).unwrap(), m);
    }

    #[test]
    fn serialize_is_injective_over_small_primes() {
        for p in [2u32, 3, 5] {
            let f = PrimeField::new(p.into()).unwrap();
            let mut seen = std::collections::HashSet::new();
            for a in 0..p {
                for b in 0..p {
                    for c in 0..p {
                        for d in 0..p {
                            let m = Mat2::int(a.into(), b.into(), c.into(), d.into()).reduce(&f);
                            assert!(seen.insert(m.serialize()));
                        }
                    }
                }
            }
            assert_eq!(seen.len(), (p as usize).pow(4));
        }
    }

    #[test]
    fn deserialize_rejects_bad_input() {
        let f = PrimeField::new(251u32.into()).unwrap();
        assert!(Mat2::deserialize(&f, &[1, 0, 0]).is_err());
        // 0xfb = 251 is not canonical
        assert!(Mat2::deserialize(&f, &[0xfb, 0, 0, 1]).is_err());
    }

    fn big(limbs: Vec<u32>, neg: bool) -> BigInt {
        let m = BigInt::from(BigUint::new(limbs));
        if neg {
            -m
        } else {
            m
        }
    }

    fn arb_int() -> impl Strategy<Value = BigInt> {
        (prop::collection::vec(any::<u32>(), 0..=16), any::<bool>()).prop_map(|(l, n)| big(l, n))
    }

    fn arb_mat() -> impl Strategy<Value = Mat2<Integers>> {
        [arb_int(), arb_int(), arb_int(), arb_int()].prop_map(|e| Mat2::from_entries(Integers, e))
    }

    fn small_primes() -> impl Strategy<Value = u32> {
        prop::sample::select(vec![
            2u32,
            3,
            5,
            7,
            251,
            65_537,
            2_147_483_647,
            4_294_967_291,
        ])
    }

    proptest! {
        #[test]
        fn reduction_is_a_homomorphism(x in arb_mat(), y in arb_mat(), p in small_primes()) {
            let f = PrimeField::new(p.into()).unwrap();
            let lhs = x.mul(&y).unwrap().reduce(&f);
            let rhs = x.reduce(&f).mul(&y.reduce(&f)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn associativity_and_det_over_z(x in arb_mat(), y in arb_mat(), z in arb_mat()) {
            let l = x.mul(&y).unwrap().mul(&z).unwrap();
            let r = x.mul(&y.mul(&z).unwrap()).unwrap();
            prop_assert_eq!(l, r);
            prop_assert_eq!(x.mul(&y).unwrap().det(), x.det() * y.det());
        }

        #[test]
        fn associativity_and_det_mod_p(x in arb_mat(), y in arb_mat(), z in arb_mat(), p in small_primes()) {
            let f = PrimeField::new(p.into()).unwrap();
            let (x, y, z) = (x.reduce(&f), y.reduce(&f), z.reduce(&f));
            let l = x.mul(&y).unwrap().mul(&z).unwrap();
            let r = x.mul(&y.mul(&z).unwrap()).unwrap();
            prop_assert_eq!(l, r);
            prop_assert_eq!(x.mul(&y).unwrap().det(), f.mul(&x.det(), &y.det()));
        }

        #[test]
        fn max_entry_is_submultiplicative(x in arb_mat(), y in arb_mat()) {
            let xy = x.mul(&y).unwrap().max_abs_entry();
            prop_assert!(xy <= BigUint::from(2u32) * x.max_abs_entry() * y.max_abs_entry());
        }

        #[test]
        fn serialize_round_trips(x in arb_mat(), p in small_primes()) {
            let f = PrimeField::new(p.into()).unwrap();
            let m = x.reduce(&f);
            prop_assert_eq!(Mat2::deserialize(&f, &m.serialize()).unwrap(), m);
        }
    }
}
