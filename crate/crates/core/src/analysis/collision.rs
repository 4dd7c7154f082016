use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::report::KeyValue;
use crate::error::{Error, Result};
use crate::matrix::{Mat2, Ring};
use crate::word::Word;

/// Two distinct words with the same product.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CollisionWitness {
    pub u: Word,
    pub v: Word,
    /// Number of random words hashed before the collision showed up.
    pub trials: u64,
}

impl KeyValue for CollisionWitness {
    fn pairs(&self) -> Vec<(&'static str, String)> {
        vec![
            ("found", "true".into()),
            ("u", self.u.to_string()),
            ("v", self.v.to_string()),
            ("trials", self.trials.to_string()),
        ]
    }
}

/// Hashes uniformly random words of length `word_len` until two distinct
/// words give the same product or `budget` words have been tried.
/// Deterministic for a given `seed`.
pub fn collision_search_birthday<R: Ring>(
    gens: &[Mat2<R>],
    word_len: usize,
    budget: u64,
    seed: u64,
) -> Result<Option<CollisionWitness>> {
    let ring = gens
        .first()
        .ok_or_else(|| Error::InvalidArgument("no generators".into()))?
        .ring()
        .clone();
    if gens.iter().any(|g| *g.ring() != ring) {
        return Err(Error::DomainMismatch {
            left: ring.describe(),
            right: "mixed".into(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: HashMap<Mat2<R>, Vec<u8>> = HashMap::new();
    for trial in 1..=budget {
        let word: Vec<u8> = (0..word_len)
            .map(|_| rng.gen_range(0..gens.len()) as u8)
            .collect();
        let m = word.iter().fold(Mat2::identity(&ring), |acc, &i| {
            acc.mul_same_ring(&gens[i as usize])
        });
        match seen.get(&m) {
            Some(prev) if *prev != word => {
                return Ok(Some(CollisionWitness {
                    u: Word::from_indices(prev),
                    v: Word::from_indices(&word),
                    trials: trial,
                }))
            }
            Some(_) => {}
            None => {
                seen.insert(m, word);
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modp::PrimeField;
    use crate::scheme::{upper, word_product, SchemeId};

    fn bsv_mod(p: u32) -> Vec<Mat2<PrimeField>> {
        let f = PrimeField::new(p.into()).unwrap();
        SchemeId::Bsv
            .integer_generators()
            .unwrap()
            .iter()
            .map(|g| g.reduce(&f))
            .collect()
    }

    #[test]
    fn finds_collisions_mod_251() {
        let g = bsv_mod(251);
        let w = collision_search_birthday(&g, 40, 1_000_000, 1)
            .unwrap()
            .unwrap();
        assert_ne!(w.u, w.v);
        assert_eq!(
            word_product(&g, &w.u).unwrap(),
            word_product(&g, &w.v).unwrap()
        );
        // Over Z the words differ and some entry reaches p.
        let zg = SchemeId::Bsv.integer_generators().unwrap();
        let (zu, zv) = (
            word_product(&zg, &w.u).unwrap(),
            word_product(&zg, &w.v).unwrap(),
        );
        assert_ne!(zu, zv);
        assert!(zu.max_abs_entry() >= 251u32.into() || zv.max_abs_entry() >= 251u32.into());
    }

    #[test]
    fn nothing_at_full_size() {
        let f = PrimeField::default_256();
        let g: Vec<_> = SchemeId::Bsv
            .integer_generators()
            .unwrap()
            .iter()
            .map(|m| m.reduce(&f))
            .collect();
        assert!(collision_search_birthday(&g, 256, 10_000, 3)
            .unwrap()
            .is_none());
    }

    #[test]
    fn degenerate_pair_collides_at_once() {
        let f = PrimeField::new(251u32.into()).unwrap();
        let a = upper(2).reduce(&f);
        let w = collision_search_birthday(&[a.clone(), a], 8, 100, 0)
            .unwrap()
            .unwrap();
        assert!(w.trials <= 3);
    }

    #[test]
    fn deterministic_under_seed() {
        let g = bsv_mod(101);
        let a = collision_search_birthday(&g, 24, 100_000, 9).unwrap();
        let b = collision_search_birthday(&g, 24, 100_000, 9).unwrap();
        assert_eq!(a, b);
    }
}
