//! Letters, words over the generator alphabet, and bit-string helpers.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A generator symbol. `A` hashes a 0 bit, `B` a 1 bit, and `C` a 1 bit
/// while a cookie is active.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    C,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::A, Letter::B, Letter::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Letter> {
        Self::ALL.get(i).copied()
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'A',
            Letter::B => 'B',
            Letter::C => 'C',
        }
    }
}

/// A finite word over [`Letter`]s.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// `self` repeated `k` times.
    pub fn repeat(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    /// Word from letter indices (0 → A, 1 → B, 2 → C).
    pub fn from_indices(ix: &[u8]) -> Word {
        Word(
            ix.iter()
                .map(|&i| Letter::from_index(i as usize).expect("letter index < 3"))
                .collect(),
        )
    }

    /// The word obtained by swapping `A` and `B`.
    pub fn swap_ab(&self) -> Word {
        Word(
            self.0
                .iter()
                .map(|l| match l {
                    Letter::A => Letter::B,
                    Letter::B => Letter::A,
                    Letter::C => Letter::C,
                })
                .collect(),
        )
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses letters `A`, `B`, `C` (case-insensitive); whitespace is ignored.
    fn from_str(s: &str) -> Result<Word> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c.to_ascii_uppercase() {
                'A' => Ok(Letter::A),
                'B' => Ok(Letter::B),
                'C' => Ok(Letter::C),
                other => Err(Error::BadWord(format!("unexpected letter `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses a string of `0`/`1` characters. Whitespace and `_` are ignored.
pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .filter(|c| !c.is_whitespace() && *c != '_')
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::BadBits(format!("unexpected character `{other}`"))),
        })
        .collect()
}

pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Expands bytes most-significant bit first.
pub fn bytes_to_bits(bytes: &[u8]) -> Vec<bool> {
    bytes
        .iter()
        .flat_map(|&byte| (0..8).rev().map(move |i| byte >> i & 1 == 1))
        .collect()
}

/// Packs bits most-significant bit first; a trailing partial byte is padded
/// with zero bits.
pub fn pack_bits(bits: &[bool]) -> Vec<u8> {
    bits.chunks(8)
        .map(|chunk| {
            chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &b)| acc | (b as u8) << (7 - i))
        })
        .collect()
}
