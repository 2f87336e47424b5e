//! Blowfish: 16 Feistel rounds over big-endian 32-bit halves.

use super::blowfish_tables::{P_INIT, S_INIT};
use super::BlockCipher;

#[derive(Clone, PartialEq, Eq)]
pub struct Blowfish {
    p: [u32; 18],
    s: [[u32; 256]; 4],
}

impl Blowfish {
    /// Schedules a key of 1 to 56 bytes. The registry only hands this 16
    /// byte keys; other lengths exist for the published variable-key vectors.
    pub fn with_key_bytes(key: &[u8]) -> Blowfish {
        assert!(
            (1..=56).contains(&key.len()),
            "Blowfish keys are 1..=56 bytes"
        );
        let mut bf = Blowfish {
            p: P_INIT,
            s: S_INIT,
        };
        let mut bytes = key.iter().cycle();
        for p in bf.p.iter_mut() {
            let mut word = 0u32;
            for _ in 0..4 {
                word = (word << 8) | *bytes.next().unwrap() as u32;
            }
            *p ^= word;
        }

        let (mut l, mut r) = (0u32, 0u32);
        for i in (0..18).step_by(2) {
            (l, r) = bf.encrypt_words(l, r);
            bf.p[i] = l;
            bf.p[i + 1] = r;
        }
        for sbox in 0..4 {
            for i in (0..256).step_by(2) {
                (l, r) = bf.encrypt_words(l, r);
                bf.s[sbox][i] = l;
                bf.s[sbox][i + 1] = r;
            }
        }
        bf
    }

    pub fn p_array(&self) -> &[u32; 18] {
        &self.p
    }

    pub fn s_boxes(&self) -> &[[u32; 256]; 4] {
        &self.s
    }

    #[inline(always)]
    fn f(&self, x: u32) -> u32 {
        let [a, b, c, d] = x.to_be_bytes();
        (self.s[0][a as usize].wrapping_add(self.s[1][b as usize]) ^ self.s[2][c as usize])
            .wrapping_add(self.s[3][d as usize])
    }

    #[inline(always)]
    pub fn encrypt_words(&self, mut l: u32, mut r: u32) -> (u32, u32) {
        for i in (0..16).step_by(2) {
            l ^= self.p[i];
            r ^= self.f(l);
            r ^= self.p[i + 1];
            l ^= self.f(r);
        }
        (r ^ self.p[17], l ^ self.p[16])
    }

    #[inline(always)]
    pub fn decrypt_words(&self, mut l: u32, mut r: u32) -> (u32, u32) {
        for i in (2..18).step_by(2).rev() {
            l ^= self.p[i + 1];
            r ^= self.f(l);
            r ^= self.p[i];
            l ^= self.f(r);
        }
        (r ^ self.p[0], l ^ self.p[1])
    }
}

impl BlockCipher for Blowfish {
    const BLOCK_SIZE: usize = 8;

    fn encrypt_block(&self, block: &mut [u8]) {
        let l = u32::from_be_bytes(block[..4].try_into().unwrap());
        let r = u32::from_be_bytes(block[4..8].try_into().unwrap());
        let (l, r) = self.encrypt_words(l, r);
        block[..4].copy_from_slice(&l.to_be_bytes());
        block[4..8].copy_from_slice(&r.to_be_bytes());
    }

    fn decrypt_block(&self, block: &mut [u8]) {
        let l = u32::from_be_bytes(block[..4].try_into().unwrap());
        let r = u32::from_be_bytes(block[4..8].try_into().unwrap());
        let (l, r) = self.decrypt_words(l, r);
        block[..4].copy_from_slice(&l.to_be_bytes());
        block[4..8].copy_from_slice(&r.to_be_bytes());
    }
}
