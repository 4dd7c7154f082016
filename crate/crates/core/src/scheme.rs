//! Hash-scheme descriptors and the built-in generator sets.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::cookie::CookieRule;
use crate::error::{Error, Result};
use crate::gf2n::Gf2nField;
use crate::matrix::{Integers, Mat2, Ring};
use crate::modp::PrimeField;
use crate::word::{Letter, Word};

/// Names of the built-in schemes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchemeId {
    /// `A(1), B(1)` mod p.
    Zemor,
    /// `A(2), B(2)` mod p.
    Bsv,
    /// `A(2), B(−2)` mod p.
    Neg,
    /// `[[α,1],[1,0]], [[α,α+1],[1,1]]` over GF(2ⁿ).
    Tz,
    /// `A(2), B(2)` with cookie matrix `[[2,1],[1,1]]`, mod p.
    Cookies,
}

impl SchemeId {
    pub const ALL: [SchemeId; 5] = [
        SchemeId::Zemor,
        SchemeId::Bsv,
        SchemeId::Neg,
        SchemeId::Tz,
        SchemeId::Cookies,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SchemeId::Zemor => "zemor",
            SchemeId::Bsv => "bsv",
            SchemeId::Neg => "neg",
            SchemeId::Tz => "tz",
            SchemeId::Cookies => "cookies",
        }
    }

    /// Schemes with published attacks.
    pub fn is_broken(self) -> bool {
        matches!(self, SchemeId::Zemor | SchemeId::Tz)
    }

    pub fn is_binary_field(self) -> bool {
        self == SchemeId::Tz
    }

    /// Generators over ℤ (`A, B`, plus `C` for cookies). `None` for `tz`,
    /// which has no integer lift.
    pub fn integer_generators(self) -> Option<Vec<Mat2<Integers>>> {
        let gens = match self {
            SchemeId::Zemor => vec![upper(1), lower(1)],
            SchemeId::Bsv => vec![upper(2), lower(2)],
            SchemeId::Neg => vec![upper(2), lower(-2)],
            SchemeId::Cookies => vec![upper(2), lower(2), Mat2::int(2, 1, 1, 1)],
            SchemeId::Tz => return None,
        };
        Some(gens)
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SchemeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SchemeId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownScheme(s.to_string()))
    }
}

/// `A(k) = [[1,k],[0,1]]`.
pub fn upper(k: i64) -> Mat2<Integers> {
    Mat2::int(1, k, 0, 1)
}

/// `B(m) = [[1,0],[m,1]]`.
pub fn lower(m: i64) -> Mat2<Integers> {
    Mat2::int(1, 0, m, 1)
}

/// Tillich–Zémor generators over GF(2ⁿ).
pub fn tz_generators(field: &Gf2nField) -> [Mat2<Gf2nField>; 2] {
    let alpha = field.alpha();
    let one = field.one();
    let a = Mat2::from_entries(
        field.clone(),
        [alpha.clone(), one.clone(), one.clone(), field.zero()],
    );
    let b = Mat2::from_entries(
        field.clone(),
        [alpha.clone(), field.add(&alpha, &one), one.clone(), one],
    );
    [a, b]
}

/// Product of the generators named by `word`.
pub fn word_product<R: Ring>(gens: &[Mat2<R>], word: &Word) -> Result<Mat2<R>> {
    let ring = gens
        .first()
        .ok_or_else(|| Error::InvalidScheme("no generators".into()))?
        .ring()
        .clone();
    let mut acc = Mat2::identity(&ring);
    for &l in word.letters() {
        let g = gens
            .get(l.index())
            .ok_or_else(|| Error::BadWord(format!("letter {} has no generator", l.as_char())))?;
        acc = acc.mul(g)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
pub struct CookieParams<R: Ring> {
    pub c: Mat2<R>,
    pub rule: CookieRule,
}

/// A Cayley hash scheme: images of the 0 and 1 bits, and optionally a
/// cookie matrix with its switching rule.
#[derive(Debug)]
pub struct SchemeParams<R: Ring> {
    id: String,
    a: Mat2<R>,
    b: Mat2<R>,
    cookie: Option<CookieParams<R>>,
    byte_table: OnceLock<Vec<Mat2<R>>>,
    block_table: OnceLock<Vec<Mat2<R>>>,
}

impl<R: Ring> Clone for SchemeParams<R> {
    fn clone(&self) -> Self {
        SchemeParams {
            id: self.id.clone(),
            a: self.a.clone(),
            b: self.b.clone(),
            cookie: self.cookie.clone(),
            byte_table: self.byte_table.clone(),
            block_table: self.block_table.clone(),
        }
    }
}

/// Letters per lookup in the cookie fast path.
pub(crate) const LETTER_BLOCK: usize = 5;

impl<R: Ring> SchemeParams<R> {
    /// Validates that the generators share a ring, are distinct, and are
    /// invertible.
    pub fn new(
        id: impl Into<String>,
        a: Mat2<R>,
        b: Mat2<R>,
        cookie: Option<CookieParams<R>>,
    ) -> Result<Self> {
        let id = id.into();
        let ring = a.ring().clone();
        let mut gens = vec![("A", &a), ("B", &b)];
        if let Some(c) = &cookie {
            gens.push(("C", &c.c));
        }
        for (name, g) in &gens {
            if *g.ring() != ring {
                return Err(Error::DomainMismatch {
                    left: ring.describe(),
                    right: g.ring().describe(),
                });
            }
            if ring.is_zero(&g.det()) {
                return Err(Error::InvalidScheme(format!(
                    "generator {name} is singular"
                )));
            }
        }
        if a == b {
            return Err(Error::InvalidScheme("generators A and B coincide".into()));
        }
        Ok(SchemeParams {
            id,
            a,
            b,
            cookie,
            byte_table: OnceLock::new(),
            block_table: OnceLock::new(),
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn ring(&self) -> &R {
        self.a.ring()
    }

    pub fn a(&self) -> &Mat2<R> {
        &self.a
    }

    pub fn b(&self) -> &Mat2<R> {
        &self.b
    }

    pub fn cookie(&self) -> Option<&CookieParams<R>> {
        self.cookie.as_ref()
    }

    /// Generators indexed by letter: `[A, B]` or `[A, B, C]`.
    pub fn generators(&self) -> Vec<Mat2<R>> {
        let mut g = vec![self.a.clone(), self.b.clone()];
        if let Some(c) = &self.cookie {
            g.push(c.c.clone());
        }
        g
    }

    pub fn letter_matrix(&self, l: Letter) -> &Mat2<R> {
        match l {
            Letter::A => &self.a,
            Letter::B => &self.b,
            Letter::C => &self.cookie.as_ref().expect("C only occurs with a cookie").c,
        }
    }

    /// Image of each byte value for plain schemes, bits taken MSB first.
    pub(crate) fn byte_table(&self) -> &[Mat2<R>] {
        self.byte_table.get_or_init(|| {
            let ring = self.ring();
            (0u16..256)
                .map(|byte| {
                    (0..8).rev().fold(Mat2::identity(ring), |acc, i| {
                        let m = if byte >> i & 1 == 1 { &self.b } else { &self.a };
                        acc.mul_same_ring(m)
                    })
                })
                .collect()
        })
    }

    /// Products of every [`LETTER_BLOCK`]-letter word over `A, B, C`,
    /// indexed by the word read as a base-3 number.
    pub(crate) fn block_table(&self) -> &[Mat2<R>] {
        self.block_table.get_or_init(|| {
            let gens = self.generators();
            let mut table = vec![Mat2::identity(self.ring())];
            for _ in 0..LETTER_BLOCK {
                table = table
                    .iter()
                    .flat_map(|m| gens.iter().map(move |g| m.mul_same_ring(g)))
                    .collect();
            }
            table
        })
    }
}

impl SchemeParams<Integers> {
    /// Reduces the generators into ℤ/p.
    pub fn reduce(&self, field: &PrimeField) -> Result<SchemeParams<PrimeField>> {
        SchemeParams::new(
            self.id.clone(),
            self.a.reduce(field),
            self.b.reduce(field),
            self.cookie.as_ref().map(|c| CookieParams {
                c: c.c.reduce(field),
                rule: c.rule,
            }),
        )
    }

    /// A built-in scheme over ℤ, without reduction.
    pub fn integer(id: SchemeId) -> Result<Self> {
        let gens = id.integer_generators().ok_or_else(|| {
            Error::InvalidScheme(format!("scheme {id} has no integer generators"))
        })?;
        let mut it = gens.into_iter();
        let a = it.next().expect("A");
        let b = it.next().expect("B");
        let cookie = it.next().map(|c| CookieParams {
            c,
            rule: CookieRule::default(),
        });
        SchemeParams::new(id.as_str(), a, b, cookie)
    }
}

impl SchemeParams<PrimeField> {
    /// A built-in modular scheme over ℤ/p.
    pub fn modular(id: SchemeId, field: &PrimeField) -> Result<Self> {
        SchemeParams::integer(id)?.reduce(field)
    }
}

impl SchemeParams<Gf2nField> {
    pub fn tillich_zemor(field: &Gf2nField) -> Self {
        let [a, b] = tz_generators(field);
        SchemeParams::new(SchemeId::Tz.as_str(), a, b, None).expect("TZ generators are valid")
    }
}
