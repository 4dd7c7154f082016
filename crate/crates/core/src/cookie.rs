//! The cookie state machine.
//!
//! A run of `trigger_run` consecutive 1 bits switches later 1 bits from `B`
//! to `C`; a run of `release_run` consecutive 0 bits switches back. The bit
//! that completes a run is itself hashed under the old mode.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::Letter;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CookieRule {
    pub trigger_run: u32,
    pub release_run: u32,
}

impl Default for CookieRule {
    fn default() -> Self {
        CookieRule {
            trigger_run: 3,
            release_run: 3,
        }
    }
}

impl CookieRule {
    pub fn new(trigger_run: u32, release_run: u32) -> Result<Self> {
        if trigger_run == 0 || release_run == 0 {
            return Err(Error::InvalidScheme(
                "cookie run lengths must be at least 1".into(),
            ));
        }
        Ok(CookieRule {
            trigger_run,
            release_run,
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub enum Mode {
    #[default]
    Normal,
    Cookie,
}

/// Transducer state. Run counters saturate at their thresholds, so the
/// state space is finite.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct CookieState {
    pub mode: Mode,
    pub ones_run: u32,
    pub zeros_run: u32,
}

impl CookieState {
    /// Consumes one bit and returns the letter it hashes to.
    pub fn step(&mut self, rule: &CookieRule, bit: bool) -> Letter {
        if bit {
            let letter = match self.mode {
                Mode::Normal => Letter::B,
                Mode::Cookie => Letter::C,
            };
            self.zeros_run = 0;
            self.ones_run = (self.ones_run + 1).min(rule.trigger_run);
            if self.mode == Mode::Normal && self.ones_run == rule.trigger_run {
                self.mode = Mode::Cookie;
            }
            letter
        } else {
            self.ones_run = 0;
            self.zeros_run = (self.zeros_run + 1).min(rule.release_run);
            if self.mode == Mode::Cookie && self.zeros_run == rule.release_run {
                self.mode = Mode::Normal;
            }
            Letter::A
        }
    }
}

/// Appends `release_run` zero bits, which always leaves the machine in
/// normal mode with no pending run of ones.
pub fn normalize_pad(rule: &CookieRule, bits: &[bool]) -> Vec<bool> {
    let mut out = bits.to_vec();
    out.extend(std::iter::repeat_n(false, rule.release_run as usize));
    out
}

/// Runs the transducer over `bits` from `state`.
pub fn transduce(rule: &CookieRule, state: &mut CookieState, bits: &[bool]) -> Vec<Letter> {
    bits.iter().map(|&b| state.step(rule, b)).collect()
}
