use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::report::{as_decimal, KeyValue};
use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::modp::PrimeField;
use crate::word::{Letter, Word};

/// Default bound on the number of distinct group elements the BFS may store.
pub const DEFAULT_STATE_CAP: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LengthMeasure {
    SumOfLengths,
    MaxOfLengths,
}

/// Shortest relation `u = v` between distinct words in the generators.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GirthReport {
    #[serde(serialize_with = "as_decimal")]
    pub p: BigUint,
    pub definition_used: LengthMeasure,
    /// Minimal `|u| + |v|` when `complete`, otherwise a verified lower bound.
    pub girth: u64,
    pub complete: bool,
    pub witness: Option<(Word, Word)>,
    /// Minimal `max(|u|, |v|)` over all relations, with its own witness.
    pub max_measure_girth: Option<u64>,
    pub max_measure_witness: Option<(Word, Word)>,
    pub states_visited: u64,
}

impl KeyValue for GirthReport {
    fn pairs(&self) -> Vec<(&'static str, String)> {
        let mut v = vec![
            ("p", self.p.to_string()),
            ("definition_used", "sum_of_lengths".to_string()),
            ("girth", self.girth.to_string()),
            ("complete", self.complete.to_string()),
        ];
        if let Some((u, w)) = &self.witness {
            v.push(("witness_u", u.to_string()));
            v.push(("witness_v", w.to_string()));
        }
        if let Some(g) = self.max_measure_girth {
            v.push(("max_measure_girth", g.to_string()));
        }
        if let Some((u, w)) = &self.max_measure_witness {
            v.push(("max_measure_witness_u", u.to_string()));
            v.push(("max_measure_witness_v", w.to_string()));
        }
        v.push(("states_visited", self.states_visited.to_string()));
        v
    }
}

/// A matrix mod p < 2¹⁶ packed into one word, 16 bits per entry.
type Key = u64;

fn pack(e: [u64; 4]) -> Key {
    e[0] << 48 | e[1] << 32 | e[2] << 16 | e[3]
}

fn unpack(k: Key) -> [u64; 4] {
    [k >> 48, k >> 32 & 0xffff, k >> 16 & 0xffff, k & 0xffff]
}

fn mul_packed(x: Key, y: [u64; 4], p: u64) -> Key {
    let [a, b, c, d] = unpack(x);
    let [w, xx, yy, z] = y;
    pack([
        (a * w + b * yy) % p,
        (a * xx + b * z) % p,
        (c * w + d * yy) % p,
        (c * xx + d * z) % p,
    ])
}

struct Node {
    parent: Key,
    letter: u8,
    depth: u32,
}

fn word_of(nodes: &HashMap<Key, Node>, mut k: Key) -> Word {
    let mut letters = Vec::new();
    loop {
        let n = &nodes[&k];
        if n.depth == 0 {
            break;
        }
        letters.push(Letter::from_index(n.letter as usize).expect("letter"));
        k = n.parent;
    }
    letters.reverse();
    Word(letters)
}

/// Breadth-first search of the Cayley graph of the semigroup generated by
/// `gens` mod p, from the identity.
///
/// Every element is labelled with the first word reaching it in
/// (length, lexicographic) order. Each edge `M → M·g` that does not label
/// its target yields a relation `word(M)·g = word(M·g)`, and every minimal
/// relation arises this way, so the search stops once no unexplored edge
/// can beat the best relation found. Requires `p < 2¹⁶`.
///
/// If more than `state_cap` elements are stored the search stops and the
/// report carries a verified lower bound with `complete = false`.
pub fn exact_girth_bfs(gens: &[Mat2<PrimeField>], state_cap: u64) -> Result<GirthReport> {
    let field = gens
        .first()
        .ok_or_else(|| Error::InvalidArgument("no generators".into()))?
        .ring()
        .clone();
    if gens.iter().any(|g| *g.ring() != field) {
        return Err(Error::DomainMismatch {
            left: field.modulus().to_string(),
            right: "mixed".into(),
        });
    }
    let p = field
        .modulus()
        .to_u64()
        .filter(|&p| p < 1 << 16)
        .ok_or_else(|| Error::InvalidArgument("girth search needs p < 65536".into()))?;
    let g_entries: Vec<[u64; 4]> = gens
        .iter()
        .map(|g| {
            g.entries()
                .clone()
                .map(|x| x.to_u64().expect("reduced mod p"))
        })
        .collect();

    let id = pack([1, 0, 0, 1]);
    let mut nodes: HashMap<Key, Node> = HashMap::new();
    nodes.insert(
        id,
        Node {
            parent: id,
            letter: 0,
            depth: 0,
        },
    );
    let mut frontier = vec![id];
    // (sum, source key, letter, target key)
    let mut best: Option<(u64, Key, u8, Key)> = None;
    let mut best_max: Option<(u64, Key, u8, Key)> = None;
    let mut level: u64 = 0;
    let mut complete = true;

    'levels: while !frontier.is_empty() {
        if best.is_some_and(|b| level + 1 >= b.0) {
            break;
        }
        let mut next = Vec::new();
        for &m in &frontier {
            for (i, &g) in g_entries.iter().enumerate() {
                let t = mul_packed(m, g, p);
                if let Some(node) = nodes.get(&t) {
                    let tree_edge = node.depth as u64 == level + 1
                        && node.parent == m
                        && node.letter as usize == i;
                    if tree_edge {
                        continue;
                    }
                    let sum = level + 1 + node.depth as u64;
                    if best.is_none_or(|b| sum < b.0) {
                        best = Some((sum, m, i as u8, t));
                    }
                    if best_max.is_none() {
                        best_max = Some((level + 1, m, i as u8, t));
                    }
                } else {
                    if nodes.len() as u64 >= state_cap {
                        complete = false;
                        break 'levels;
                    }
                    nodes.insert(
                        t,
                        Node {
                            parent: m,
                            letter: i as u8,
                            depth: (level + 1) as u32,
                        },
                    );
                    next.push(t);
                }
            }
        }
        frontier = next;
        level += 1;
    }

    let witness_of = |(_, src, letter, tgt): (u64, Key, u8, Key)| {
        let mut u = word_of(&nodes, src);
        u.0.push(Letter::from_index(letter as usize).expect("letter"));
        (u, word_of(&nodes, tgt))
    };

    // Edges out of depth `level` were not all examined when the cap hit, but
    // every relation they could produce has sum at least level + 1.
    let exact = best.is_some_and(|b| complete || b.0 <= level + 1);
    let girth = match best {
        Some(b) if exact => b.0,
        Some(b) => b.0.min(level + 1),
        None => level + 1,
    };
    Ok(GirthReport {
        p: field.modulus().clone(),
        definition_used: LengthMeasure::SumOfLengths,
        girth,
        complete: exact,
        witness: best.map(witness_of),
        max_measure_girth: best_max.map(|b| b.0),
        max_measure_witness: best_max.map(witness_of),
        states_visited: nodes.len() as u64,
    })
}
