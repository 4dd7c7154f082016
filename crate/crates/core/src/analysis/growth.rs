use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use super::report::{as_decimal, KeyValue};
use super::spectral::{ln_biguint, COOKIE_FORMULA_VALUE, COOKIE_QUOTED_VALUE};
use crate::error::{Error, Result};
use crate::matrix::{Integers, Mat2};
use crate::scheme::SchemeId;
use crate::word::Word;

/// Largest entry over all products of exactly `n` generators.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    pub n: usize,
    #[serde(serialize_with = "as_decimal")]
    pub max_entry: BigUint,
    /// Lexicographically smallest word attaining `max_entry`.
    pub argmax_word: Word,
    /// `max_entry^(1/n)`.
    pub exponent: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl KeyValue for GrowthReport {
    fn pairs(&self) -> Vec<(&'static str, String)> {
        let mut v = vec![
            ("n", self.n.to_string()),
            ("max_entry", self.max_entry.to_string()),
            ("argmax_word", self.argmax_word.to_string()),
            ("exponent", format!("{:.6}", self.exponent)),
        ];
        v.extend(self.notes.iter().map(|n| ("note", n.clone())));
        v
    }
}

/// Default word-length cap: 24 for two generators, 16 for three, and in
/// general the largest `n` with `kⁿ ≤ 2²⁴`-ish.
pub fn default_cap(num_gens: usize) -> usize {
    match num_gens {
        0 | 1 => 64,
        2 => 24,
        3 => 16,
        k => (24.0 * std::f64::consts::LN_2 / (k as f64).ln()).floor() as usize,
    }
}

pub fn enumerate_growth(gens: &[Mat2<Integers>], n: usize) -> Result<GrowthReport> {
    enumerate_growth_capped(gens, n, default_cap(gens.len()))
}

/// [`enumerate_growth_capped`] over a built-in scheme's integer generators.
/// For the cookie triple the report notes how the measured exponent sits
/// against the two numbers usually quoted for it.
pub fn enumerate_scheme_growth(id: SchemeId, n: usize, cap: usize) -> Result<GrowthReport> {
    let gens = id
        .integer_generators()
        .ok_or_else(|| Error::InvalidArgument(format!("scheme {id} has no integer generators")))?;
    let mut r = enumerate_growth_capped(&gens, n, cap)?;
    if id == SchemeId::Cookies {
        let closer = if (r.exponent - COOKIE_QUOTED_VALUE).abs()
            < (r.exponent - COOKIE_FORMULA_VALUE).abs()
        {
            "(3+sqrt5)/2"
        } else {
            "7/2+3*sqrt5/2"
        };
        r.notes.push(format!(
            "quoted closed form 7/2+3*sqrt5/2 = {COOKIE_FORMULA_VALUE:.4} disagrees with quoted value \
             2.618 = (3+sqrt5)/2 = rho(C); measured exponent {:.4} is closer to {closer}",
            r.exponent
        ));
    }
    Ok(r)
}

#[derive(Clone)]
struct Best {
    max: BigUint,
    word: Vec<u8>,
}

fn max_mag(m: &Mat2<Integers>) -> &BigUint {
    m.entries()
        .iter()
        .map(BigInt::magnitude)
        .max()
        .expect("four entries")
}

/// Depth-first walk of the word tree below `cur`, visiting children in
/// letter order so the first maximizer seen is the lexicographically
/// smallest.
fn walk(
    gens: &[Mat2<Integers>],
    cur: &Mat2<Integers>,
    left: usize,
    word: &mut Vec<u8>,
    best: &mut Option<Best>,
) {
    if left == 0 {
        let m = max_mag(cur);
        if best.as_ref().is_none_or(|b| *m > b.max) {
            *best = Some(Best {
                max: m.clone(),
                word: word.clone(),
            });
        }
        return;
    }
    for (i, g) in gens.iter().enumerate() {
        let next = cur.mul_same_ring(g);
        word.push(i as u8);
        walk(gens, &next, left - 1, word, best);
        word.pop();
    }
}

/// Exhaustive maximum of `max_abs_entry` over all `|gens|ⁿ` products.
/// Subtrees below a short prefix are searched in parallel; the result does
/// not depend on scheduling.
pub fn enumerate_growth_capped(
    gens: &[Mat2<Integers>],
    n: usize,
    cap: usize,
) -> Result<GrowthReport> {
    if gens.is_empty() {
        return Err(Error::InvalidArgument("no generators".into()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument(
            "word length must be at least 1".into(),
        ));
    }
    if n > cap {
        return Err(Error::OverCap { n, cap });
    }
    let k = gens.len();
    // split depth: enough prefixes to keep workers busy
    let mut split = 0;
    while split < n && k.pow(split as u32) < 64 {
        split += 1;
    }
    let prefixes: Vec<Vec<u8>> = (0..k.pow(split as u32))
        .map(|mut idx| {
            let mut p = vec![0u8; split];
            for slot in p.iter_mut().rev() {
                *slot = (idx % k) as u8;
                idx /= k;
            }
            p
        })
        .collect();

    let results: Vec<Option<Best>> = prefixes
        .into_par_iter()
        .map(|prefix| {
            let start = prefix.iter().fold(Mat2::identity(&Integers), |acc, &i| {
                acc.mul_same_ring(&gens[i as usize])
            });
            let mut word = prefix;
            let mut best = None;
            walk(gens, &start, n - split, &mut word, &mut best);
            best
        })
        .collect();

    let best = results
        .into_iter()
        .flatten()
        .fold(None::<Best>, |acc, b| match acc {
            Some(a) if a.max >= b.max => Some(a),
            _ => Some(b),
        })
        .expect("at least one word");

    let exponent = if best.max.is_one() {
        1.0
    } else {
        (ln_biguint(&best.max) / n as f64).exp()
    };
    Ok(GrowthReport {
        n,
        max_entry: best.max,
        argmax_word: Word::from_indices(&best.word),
        exponent,
        notes: Vec::new(),
    })
}
