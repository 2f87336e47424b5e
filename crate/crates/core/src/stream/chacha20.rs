//! ChaCha20 with a 96-bit nonce and 32-bit block counter.

use crate::error::{CipherError, Result};
use crate::params::{CipherId, KeyMaterial};

/// "expand 32-byte k"
pub const SIGMA: [u32; 4] = [0x6170_7865, 0x3320_646e, 0x7962_2d32, 0x6b20_6574];

pub const NONCE_LEN: usize = 12;

#[inline(always)]
pub fn quarter_round(mut a: u32, mut b: u32, mut c: u32, mut d: u32) -> (u32, u32, u32, u32) {
    a = a.wrapping_add(b);
    d = (d ^ a).rotate_left(16);
    c = c.wrapping_add(d);
    b = (b ^ c).rotate_left(12);
    a = a.wrapping_add(b);
    d = (d ^ a).rotate_left(8);
    c = c.wrapping_add(d);
    b = (b ^ c).rotate_left(7);
    (a, b, c, d)
}

#[inline(always)]
fn qr(x: &mut [u32; 16], a: usize, b: usize, c: usize, d: usize) {
    (x[a], x[b], x[c], x[d]) = quarter_round(x[a], x[b], x[c], x[d]);
}

#[derive(Clone, PartialEq, Eq)]
pub struct ChaChaState {
    key: [u32; 8],
    nonce: [u32; 3],
    counter: u32,
}

impl ChaChaState {
    pub fn new(key: &KeyMaterial, nonce: &[u8], counter: u32) -> Result<ChaChaState> {
        if key.cipher() != CipherId::ChaCha20 {
            return Err(CipherError::WrongFamily {
                cipher: key.cipher(),
                expected: "ChaCha20",
            });
        }
        let nonce: &[u8; NONCE_LEN] = nonce.try_into().map_err(|_| CipherError::Nonce {
            cipher: CipherId::ChaCha20,
            reason: format!("expected {NONCE_LEN} bytes, got {}", nonce.len()),
        })?;
        Ok(ChaChaState::from_parts(
            key.bytes().try_into().expect("validated 32-byte key"),
            nonce,
            counter,
        ))
    }

    pub fn from_parts(key: &[u8; 32], nonce: &[u8; NONCE_LEN], counter: u32) -> ChaChaState {
        let word = |b: &[u8]| u32::from_le_bytes(b.try_into().unwrap());
        ChaChaState {
            key: core::array::from_fn(|i| word(&key[4 * i..4 * i + 4])),
            nonce: core::array::from_fn(|i| word(&nonce[4 * i..4 * i + 4])),
            counter,
        }
    }

    pub fn counter(&self) -> u32 {
        self.counter
    }

    fn initial(&self) -> [u32; 16] {
        let mut x = [0u32; 16];
        x[..4].copy_from_slice(&SIGMA);
        x[4..12].copy_from_slice(&self.key);
        x[12] = self.counter;
        x[13..].copy_from_slice(&self.nonce);
        x
    }

    /// The 64-byte block for the current counter, without advancing it.
    pub fn block(&self) -> [u8; 64] {
        let init = self.initial();
        let mut x = init;
        for _ in 0..10 {
            qr(&mut x, 0, 4, 8, 12);
            qr(&mut x, 1, 5, 9, 13);
            qr(&mut x, 2, 6, 10, 14);
            qr(&mut x, 3, 7, 11, 15);
            qr(&mut x, 0, 5, 10, 15);
            qr(&mut x, 1, 6, 11, 12);
            qr(&mut x, 2, 7, 8, 13);
            qr(&mut x, 3, 4, 9, 14);
        }
        let mut out = [0u8; 64];
        for (i, chunk) in out.chunks_exact_mut(4).enumerate() {
            chunk.copy_from_slice(&x[i].wrapping_add(init[i]).to_le_bytes());
        }
        out
    }

    /// XORs keystream into `data`, one block per 64 bytes, advancing the
    /// counter once per block consumed (including a trailing partial block).
    ///
    /// The counter wraps after 2^32 blocks (256 GiB); callers never get near
    /// that with in-memory buffers.
    pub fn apply_keystream(&mut self, data: &mut [u8]) {
        for chunk in data.chunks_mut(64) {
            let ks = self.block();
            for (b, k) in chunk.iter_mut().zip(ks.iter()) {
                *b ^= k;
            }
            self.counter = self.counter.wrapping_add(1);
        }
    }
}

impl std::fmt::Debug for ChaChaState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ChaChaState")
            .field("counter", &self.counter)
            .finish_non_exhaustive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inverse_quarter_round(
        mut a: u32,
        mut b: u32,
        mut c: u32,
        mut d: u32,
    ) -> (u32, u32, u32, u32) {
        b = b.rotate_right(7) ^ c;
        c = c.wrapping_sub(d);
        d = d.rotate_right(8) ^ a;
        a = a.wrapping_sub(b);
        b = b.rotate_right(12) ^ c;
        c = c.wrapping_sub(d);
        d = d.rotate_right(16) ^ a;
        a = a.wrapping_sub(b);
        (a, b, c, d)
    }

    #[test]
    fn quarter_round_vectors() {
        assert_eq!(quarter_round(0, 0, 0, 0), (0, 0, 0, 0));
        assert_eq!(
            quarter_round(0x11111111, 0x01020304, 0x9b8d6f43, 0x01234567),
            (0xea2a92f4, 0xcb1cf8ce, 0x4581472e, 0x5881c4bb)
        );
    }

    #[test]
    fn quarter_round_inverts() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20);
        for _ in 0..1000 {
            let (a, b, c, d) = rng.gen();
            let (w, x, y, z) = quarter_round(a, b, c, d);
            assert_eq!(inverse_quarter_round(w, x, y, z), (a, b, c, d));
        }
    }

    #[test]
    fn block_function_vector() {
        let key: [u8; 32] = core::array::from_fn(|i| i as u8);
        let nonce: [u8; 12] = hex::decode("000000090000004a00000000")
            .unwrap()
            .try_into()
            .unwrap();
        let state = ChaChaState::from_parts(&key, &nonce, 1);
        assert_eq!(
            hex::encode(state.block()),
            "10f1e7e4d13b5915500fdd1fa32071c4c7d1f4c733c068030422aa9ac3d46c4e\
             d2826446079faa0914c2d705d98b02a2b5129cd1de164eb9cbd083e8a2503c4e"
        );
        assert_eq!(state.block(), state.block());
    }

    #[test]
    fn counter_avalanche() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let key: [u8; 32] = rng.gen();
            let nonce: [u8; 12] = rng.gen();
            let counter: u32 = rng.gen_range(0..u32::MAX);
            let a = ChaChaState::from_parts(&key, &nonce, counter).block();
            let b = ChaChaState::from_parts(&key, &nonce, counter + 1).block();
            let diff: u32 = a.iter().zip(&b).map(|(x, y)| (x ^ y).count_ones()).sum();
            assert!(diff >= 200, "only {diff} bits differ");
        }
    }

    #[test]
    fn distinct_counters_give_distinct_blocks() {
        let key = [9u8; 32];
        let nonce = [3u8; 12];
        let mut seen = std::collections::HashSet::new();
        for counter in (0..1000u32).map(|c| c.wrapping_mul(0x9e37_79b9)) {
            assert!(seen.insert(ChaChaState::from_parts(&key, &nonce, counter).block()));
        }
    }
}
