//! RC4 key scheduling and keystream generation.

use crate::error::{CipherError, Result};
use crate::params::{CipherId, KeyMaterial};

#[derive(Clone, PartialEq, Eq)]
pub struct Rc4 {
    s: [u8; 256],
    i: u8,
    j: u8,
}

impl Rc4 {
    /// Keys RC4 from validated 256-bit key material.
    pub fn new(key: &KeyMaterial) -> Result<Rc4> {
        if key.cipher() != CipherId::Rc4 || key.bytes().len() != CipherId::Rc4.key_len() {
            return Err(CipherError::KeyLength {
                cipher: CipherId::Rc4,
                expected: CipherId::Rc4.key_len(),
                got: key.bytes().len(),
            });
        }
        Ok(Rc4::with_key_bytes(key.bytes()))
    }

    /// Runs the key-scheduling algorithm over a key of 1 to 256 bytes.
    pub fn with_key_bytes(key: &[u8]) -> Rc4 {
        assert!((1..=256).contains(&key.len()), "RC4 keys are 1..=256 bytes");
        let mut s: [u8; 256] = core::array::from_fn(|i| i as u8);
        let mut j = 0u8;
        for i in 0..256 {
            j = j.wrapping_add(s[i]).wrapping_add(key[i % key.len()]);
            s.swap(i, j as usize);
        }
        Rc4 { s, i: 0, j: 0 }
    }

    pub fn permutation(&self) -> &[u8; 256] {
        &self.s
    }

    pub fn indices(&self) -> (u8, u8) {
        (self.i, self.j)
    }

    #[inline(always)]
    fn next_byte(&mut self) -> u8 {
        self.i = self.i.wrapping_add(1);
        let si = self.s[self.i as usize];
        self.j = self.j.wrapping_add(si);
        let sj = self.s[self.j as usize];
        self.s[self.i as usize] = sj;
        self.s[self.j as usize] = si;
        self.s[si.wrapping_add(sj) as usize]
    }

    pub fn keystream(&mut self, n: usize) -> Vec<u8> {
        (0..n).map(|_| self.next_byte()).collect()
    }

    pub fn apply_keystream(&mut self, data: &mut [u8]) {
        for b in data {
            *b ^= self.next_byte();
        }
    }
}

impl std::fmt::Debug for Rc4 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Rc4").finish_non_exhaustive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::validate_key;

    fn is_permutation(s: &[u8; 256]) -> bool {
        let mut sorted = *s;
        sorted.sort_unstable();
        sorted.iter().enumerate().all(|(i, &v)| v as usize == i)
    }

    #[test]
    fn init_gives_permutation() {
        let key: Vec<u8> = (1..=32).collect();
        let rc4 = Rc4::new(&validate_key(CipherId::Rc4, &key).unwrap()).unwrap();
        assert!(is_permutation(rc4.permutation()));
        assert_eq!(rc4.indices(), (0, 0));
    }

    #[test]
    fn rfc6229_256_bit_key() {
        let key: Vec<u8> = (1..=32).collect();
        let mut rc4 = Rc4::with_key_bytes(&key);
        assert_eq!(
            hex::encode(rc4.keystream(16)),
            "eaa6bd25880bf93d3f5d1e4ca2611d91"
        );
    }

    #[test]
    fn permutation_survives_long_keystream() {
        let mut rc4 = Rc4::with_key_bytes(&[0x5a; 32]);
        rc4.keystream(10_000);
        assert!(is_permutation(rc4.permutation()));
    }

    #[test]
    fn split_keystream_is_concatenation() {
        let mut whole = Rc4::with_key_bytes(b"split-test-key");
        let mut split = whole.clone();
        let expected = whole.keystream(5);
        let mut got = split.keystream(2);
        got.extend(split.keystream(3));
        assert_eq!(got, expected);
    }

    #[test]
    fn zero_length_keystream_leaves_state() {
        let mut rc4 = Rc4::with_key_bytes(b"k");
        let before = rc4.clone();
        assert!(rc4.keystream(0).is_empty());
        assert!(rc4 == before);
    }

    #[test]
    fn validate_key_rejects_short_rc4_key() {
        assert!(matches!(
            validate_key(CipherId::Rc4, &[0u8; 16]),
            Err(CipherError::KeyLength {
                expected: 32,
                got: 16,
                ..
            })
        ));
    }
}
