//! Streaming Cayley hashing.
//!
//! Bit 0 multiplies the running product on the right by `A`, bit 1 by `B`
//! (or by `C` while a cookie is active). The first bit is the leftmost
//! factor, so `1001011` hashes to `BAABABB`. The empty input hashes to the
//! identity, and no padding is applied: `H(X‖Y) = H(X)·H(Y)`.

use crate::cookie::{normalize_pad, CookieState};
use crate::error::{Error, Result};
use crate::matrix::{Digest, Encodable, Mat2, Ring};
use crate::scheme::{SchemeParams, LETTER_BLOCK};
use crate::word::{Letter, Word};

/// Running product of a hash in progress. Not meant to be shared between
/// threads while being updated; hash disjoint segments in separate states
/// and join them with [`combine`].
#[derive(Clone, Debug)]
pub struct HashState<'p, R: Ring> {
    params: &'p SchemeParams<R>,
    acc: Mat2<R>,
    bits_consumed: u64,
    cookie: Option<CookieState>,
    trace: Option<Vec<Letter>>,
}

impl<R: Ring> SchemeParams<R> {
    pub fn new_state(&self) -> HashState<'_, R> {
        HashState {
            params: self,
            acc: Mat2::identity(self.ring()),
            bits_consumed: 0,
            cookie: self.cookie().map(|_| CookieState::default()),
            trace: None,
        }
    }

    /// Hash matrix of a bit string from a fresh state.
    pub fn hash_bits(&self, bits: &[bool]) -> Mat2<R> {
        let mut st = self.new_state();
        st.absorb_bits(bits);
        st.acc
    }

    /// Hash matrix of a byte string (MSB-first bits) from a fresh state.
    pub fn hash_bytes(&self, bytes: &[u8]) -> Mat2<R> {
        let mut st = self.new_state();
        st.absorb_bytes(bytes);
        st.acc
    }

    /// The letter word a bit string hashes to, from a fresh state.
    pub fn letters(&self, bits: &[bool]) -> Word {
        let mut st = self.new_state().traced();
        st.absorb_bits(bits);
        st.trace().expect("traced").clone()
    }

    /// Appends the cookie padding to `bits`; plain schemes return `bits`
    /// unchanged.
    pub fn pad(&self, bits: &[bool]) -> Vec<bool> {
        match self.cookie() {
            Some(c) => normalize_pad(&c.rule, bits),
            None => bits.to_vec(),
        }
    }
}

impl<'p, R: Ring> HashState<'p, R> {
    /// Records every emitted letter. Tracing disables the byte-table fast
    /// path.
    pub fn traced(mut self) -> Self {
        self.trace = Some(Vec::new());
        self
    }

    pub fn trace(&self) -> Option<Word> {
        self.trace.as_ref().map(|t| Word(t.clone()))
    }

    pub fn params(&self) -> &'p SchemeParams<R> {
        self.params
    }

    /// The running product.
    pub fn matrix(&self) -> &Mat2<R> {
        &self.acc
    }

    pub fn into_matrix(self) -> Mat2<R> {
        self.acc
    }

    pub fn bits_consumed(&self) -> u64 {
        self.bits_consumed
    }

    pub fn cookie_state(&self) -> Option<&CookieState> {
        self.cookie.as_ref()
    }

    fn next_letter(&mut self, bit: bool) -> Letter {
        match (&mut self.cookie, self.params.cookie()) {
            (Some(st), Some(c)) => st.step(&c.rule, bit),
            _ if bit => Letter::B,
            _ => Letter::A,
        }
    }

    pub fn absorb_bit(&mut self, bit: bool) {
        let letter = self.next_letter(bit);
        if let Some(t) = &mut self.trace {
            t.push(letter);
        }
        self.acc = self.acc.mul_same_ring(self.params.letter_matrix(letter));
        self.bits_consumed += 1;
    }

    fn absorb_cookie_bits(&mut self, bits: &[bool]) {
        let table = self.params.block_table();
        let mut chunks = bits.chunks_exact(LETTER_BLOCK);
        for chunk in &mut chunks {
            let idx = chunk
                .iter()
                .fold(0, |acc, &b| acc * 3 + self.next_letter(b).index());
            self.acc = self.acc.mul_same_ring(&table[idx]);
            self.bits_consumed += LETTER_BLOCK as u64;
        }
        for &b in chunks.remainder() {
            self.absorb_bit(b);
        }
    }

    fn fast_path(&self) -> bool {
        self.cookie.is_none() && self.trace.is_none()
    }

    pub fn absorb_bits(&mut self, bits: &[bool]) {
        if self.trace.is_some() {
            bits.iter().for_each(|&b| self.absorb_bit(b));
            return;
        }
        if self.cookie.is_some() {
            self.absorb_cookie_bits(bits);
            return;
        }
        let table = self.params.byte_table();
        let mut chunks = bits.chunks_exact(8);
        for chunk in &mut chunks {
            let byte = chunk.iter().fold(0usize, |acc, &b| acc << 1 | b as usize);
            self.acc = self.acc.mul_same_ring(&table[byte]);
            self.bits_consumed += 8;
        }
        for &b in chunks.remainder() {
            self.absorb_bit(b);
        }
    }

    pub fn absorb_bytes(&mut self, bytes: &[u8]) {
        if !self.fast_path() {
            self.absorb_bits(&crate::word::bytes_to_bits(bytes));
            return;
        }
        let table = self.params.byte_table();
        for &byte in bytes {
            self.acc = self.acc.mul_same_ring(&table[byte as usize]);
        }
        self.bits_consumed += 8 * bytes.len() as u64;
    }

    /// Appends the cookie padding (see [`crate::cookie::normalize_pad`]).
    /// No-op for plain schemes.
    pub fn pad(&mut self) {
        if let Some(c) = self.params.cookie() {
            for _ in 0..c.rule.release_run {
                self.absorb_bit(false);
            }
        }
    }
}

impl<R: Encodable> HashState<'_, R> {
    /// Serializes the running product. The state stays usable.
    pub fn finalize(&self) -> Digest {
        Digest {
            bytes: self.acc.serialize(),
            scheme_id: self.params.id().to_string(),
        }
    }
}

impl<R: Encodable> SchemeParams<R> {
    pub fn digest(&self, m: &Mat2<R>) -> Digest {
        Digest {
            bytes: m.serialize(),
            scheme_id: self.id().to_string(),
        }
    }

    /// Parses a digest produced by this scheme back into its matrix.
    pub fn matrix_of(&self, d: &Digest) -> Result<Mat2<R>> {
        if d.scheme_id != self.id() {
            return Err(Error::MalformedDigest(format!(
                "digest is for scheme `{}`, not `{}`",
                d.scheme_id,
                self.id()
            )));
        }
        Mat2::deserialize(self.ring(), &d.bytes)
    }

    /// Digest of the concatenation of the inputs behind `x` and `y`.
    pub fn combine_digests(&self, x: &Digest, y: &Digest) -> Result<Digest> {
        let m = combine(&self.matrix_of(x)?, &self.matrix_of(y)?)?;
        Ok(self.digest(&m))
    }
}

/// `H(X)·H(Y)`, the hash of `X‖Y` for plain schemes.
pub fn combine<R: Ring>(x: &Mat2<R>, y: &Mat2<R>) -> Result<Mat2<R>> {
    x.mul(y)
}

/// For cookie schemes, `H(pad(X)‖Y) = cookie_combine(H(pad(X)), H(Y))`.
pub fn cookie_combine<R: Ring>(x: &Mat2<R>, y: &Mat2<R>) -> Result<Mat2<R>> {
    x.mul(y)
}
