//! Cayley hash functions.
//!
//! A bit string is hashed by mapping 0 to a matrix `A`, 1 to a matrix `B`,
//! and multiplying the images left to right, so the hash of a concatenation
//! is the product of the hashes:
//!
//! ```
//! use cayley_hash::{PrimeField, SchemeId, SchemeParams, combine};
//!
//! let bsv = SchemeParams::modular(SchemeId::Bsv, &PrimeField::default_256()).unwrap();
//! let doc = bsv.hash_bytes(b"original document");
//! let amendment = bsv.hash_bytes(b", amended");
//! assert_eq!(
//!     combine(&doc, &amendment).unwrap(),
//!     bsv.hash_bytes(b"original document, amended"),
//! );
//! ```
//!
//! Five generator sets are built in (see [`SchemeId`]). Matrices live over
//! arbitrary-precision integers, integers mod a prime, or GF(2ⁿ). The
//! [`analysis`] module measures growth rates and girth of the generated
//! semigroups.
//!
//! The `zemor` and `tz` schemes have known attacks and are kept for study.
//! No scheme pads its input, which is what makes the digests composable.

pub mod analysis;
pub mod cookie;
pub mod error;
pub mod gf2n;
pub mod hasher;
pub mod matrix;
pub mod modp;
pub mod scheme;
pub mod word;

pub use cookie::{normalize_pad, CookieRule, CookieState, Mode};
pub use error::{Error, Result};
pub use gf2n::{is_irreducible, BitPoly, FieldSpec, Gf2nField};
pub use hasher::{combine, cookie_combine, HashState};
pub use matrix::{Digest, Encodable, Integers, Mat2, Ring, ScalarDomain};
pub use modp::{default_prime, is_probable_prime, PrimeField};
pub use scheme::{word_product, CookieParams, SchemeId, SchemeParams};
pub use word::{bytes_to_bits, pack_bits, parse_bits, Letter, Word};
