use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::report::KeyValue;
use crate::matrix::Encodable;
use crate::scheme::SchemeParams;
use crate::word::bytes_to_bits;

/// Significance level for the bitstream tests.
pub const SIGNIFICANCE: f64 = 0.01;

/// Length of the seed-derived key prefixed to every counter block.
const KEY_BYTES: usize = 64;

/// Outcome of one statistical test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatTest {
    pub name: &'static str,
    pub statistic: f64,
    pub p_value: f64,
    pub passed: bool,
}

impl KeyValue for StatTest {
    fn pairs(&self) -> Vec<(&'static str, String)> {
        vec![
            ("test", self.name.to_string()),
            ("statistic", format!("{:.6}", self.statistic)),
            ("p_value", format!("{:.6}", self.p_value)),
            ("passed", self.passed.to_string()),
        ]
    }
}

/// Concatenated digests of `key ‖ counter` for counters 0, 1, 2, …, where
/// `key` is 512 bits drawn from ChaCha8 under `seed` and each counter is a
/// 64-bit big-endian block. Output is `count_bits` bits packed MSB first;
/// unused bits of a final partial byte are zero.
pub fn emit_stream<R: Encodable>(
    params: &SchemeParams<R>,
    count_bits: usize,
    seed: u64,
) -> Vec<u8> {
    let mut key = [0u8; KEY_BYTES];
    ChaCha8Rng::seed_from_u64(seed).fill_bytes(&mut key);
    let mut keyed = params.new_state();
    keyed.absorb_bytes(&key);

    let need = count_bits.div_ceil(8);
    let mut out = Vec::with_capacity(need);
    let mut counter: u64 = 0;
    while out.len() < need {
        let mut st = keyed.clone();
        st.absorb_bytes(&counter.to_be_bytes());
        out.extend_from_slice(&st.finalize().bytes);
        counter += 1;
    }
    out.truncate(need);
    if !count_bits.is_multiple_of(8) {
        let last = out.last_mut().expect("nonempty");
        *last &= 0xffu8 << (8 - count_bits % 8);
    }
    out
}

/// Frequency (monobit) test on the first `nbits` bits of `stream`.
pub fn monobit_test(stream: &[u8], nbits: usize) -> StatTest {
    let bits = &bytes_to_bits(stream)[..nbits];
    let n = bits.len() as f64;
    let sum: i64 = bits.iter().map(|&b| if b { 1 } else { -1 }).sum();
    let s_obs = (sum.abs() as f64) / n.sqrt();
    let p_value = libm::erfc(s_obs / std::f64::consts::SQRT_2);
    StatTest {
        name: "monobit",
        statistic: s_obs,
        p_value,
        passed: p_value >= SIGNIFICANCE,
    }
}

/// Runs test on the first `nbits` bits of `stream`. Fails outright when the
/// proportion of ones is too far from ½ for the test to apply.
pub fn runs_test(stream: &[u8], nbits: usize) -> StatTest {
    let bits = &bytes_to_bits(stream)[..nbits];
    let n = bits.len() as f64;
    let pi = bits.iter().filter(|&&b| b).count() as f64 / n;
    let tau = 2.0 / n.sqrt();
    if (pi - 0.5).abs() >= tau {
        return StatTest {
            name: "runs",
            statistic: f64::NAN,
            p_value: 0.0,
            passed: false,
        };
    }
    let v_obs = 1 + bits.windows(2).filter(|w| w[0] != w[1]).count();
    let v_obs = v_obs as f64;
    let num = (v_obs - 2.0 * n * pi * (1.0 - pi)).abs();
    let den = 2.0 * (2.0 * n).sqrt() * pi * (1.0 - pi);
    let p_value = libm::erfc(num / den);
    StatTest {
        name: "runs",
        statistic: v_obs,
        p_value,
        passed: p_value >= SIGNIFICANCE,
    }
}
