//! DES and EDE triple DES.
//!
//! Tables use the standard 1-based, most-significant-bit-first numbering.
//! The S-boxes and the P permutation are fused into eight SP tables, and the
//! initial/final permutations into byte-indexed lookup tables, all at compile
//! time.

use super::BlockCipher;

const IP: [u8; 64] = [
    58, 50, 42, 34, 26, 18, 10, 2, 60, 52, 44, 36, 28, 20, 12, 4, //
    62, 54, 46, 38, 30, 22, 14, 6, 64, 56, 48, 40, 32, 24, 16, 8, //
    57, 49, 41, 33, 25, 17, 9, 1, 59, 51, 43, 35, 27, 19, 11, 3, //
    61, 53, 45, 37, 29, 21, 13, 5, 63, 55, 47, 39, 31, 23, 15, 7,
];

const FP: [u8; 64] = [
    40, 8, 48, 16, 56, 24, 64, 32, 39, 7, 47, 15, 55, 23, 63, 31, //
    38, 6, 46, 14, 54, 22, 62, 30, 37, 5, 45, 13, 53, 21, 61, 29, //
    36, 4, 44, 12, 52, 20, 60, 28, 35, 3, 43, 11, 51, 19, 59, 27, //
    34, 2, 42, 10, 50, 18, 58, 26, 33, 1, 41, 9, 49, 17, 57, 25,
];

const P: [u8; 32] = [
    16, 7, 20, 21, 29, 12, 28, 17, 1, 15, 23, 26, 5, 18, 31, 10, //
    2, 8, 24, 14, 32, 27, 3, 9, 19, 13, 30, 6, 22, 11, 4, 25,
];

const PC1: [u8; 56] = [
    57, 49, 41, 33, 25, 17, 9, 1, 58, 50, 42, 34, 26, 18, //
    10, 2, 59, 51, 43, 35, 27, 19, 11, 3, 60, 52, 44, 36, //
    63, 55, 47, 39, 31, 23, 15, 7, 62, 54, 46, 38, 30, 22, //
    14, 6, 61, 53, 45, 37, 29, 21, 13, 5, 28, 20, 12, 4,
];

const PC2: [u8; 48] = [
    14, 17, 11, 24, 1, 5, 3, 28, 15, 6, 21, 10, //
    23, 19, 12, 4, 26, 8, 16, 7, 27, 20, 13, 2, //
    41, 52, 31, 37, 47, 55, 30, 40, 51, 45, 33, 48, //
    44, 49, 39, 56, 34, 53, 46, 42, 50, 36, 29, 32,
];

const SHIFTS: [u32; 16] = [1, 1, 2, 2, 2, 2, 2, 2, 1, 2, 2, 2, 2, 2, 2, 1];

#[rustfmt::skip]
const SBOXES: [[[u8; 16]; 4]; 8] = [
    [
        [14, 4, 13, 1, 2, 15, 11, 8, 3, 10, 6, 12, 5, 9, 0, 7],
        [0, 15, 7, 4, 14, 2, 13, 1, 10, 6, 12, 11, 9, 5, 3, 8],
        [4, 1, 14, 8, 13, 6, 2, 11, 15, 12, 9, 7, 3, 10, 5, 0],
        [15, 12, 8, 2, 4, 9, 1, 7, 5, 11, 3, 14, 10, 0, 6, 13],
    ],
    [
        [15, 1, 8, 14, 6, 11, 3, 4, 9, 7, 2, 13, 12, 0, 5, 10],
        [3, 13, 4, 7, 15, 2, 8, 14, 12, 0, 1, 10, 6, 9, 11, 5],
        [0, 14, 7, 11, 10, 4, 13, 1, 5, 8, 12, 6, 9, 3, 2, 15],
        [13, 8, 10, 1, 3, 15, 4, 2, 11, 6, 7, 12, 0, 5, 14, 9],
    ],
    [
        [10, 0, 9, 14, 6, 3, 15, 5, 1, 13, 12, 7, 11, 4, 2, 8],
        [13, 7, 0, 9, 3, 4, 6, 10, 2, 8, 5, 14, 12, 11, 15, 1],
        [13, 6, 4, 9, 8, 15, 3, 0, 11, 1, 2, 12, 5, 10, 14, 7],
        [1, 10, 13, 0, 6, 9, 8, 7, 4, 15, 14, 3, 11, 5, 2, 12],
    ],
    [
        [7, 13, 14, 3, 0, 6, 9, 10, 1, 2, 8, 5, 11, 12, 4, 15],
        [13, 8, 11, 5, 6, 15, 0, 3, 4, 7, 2, 12, 1, 10, 14, 9],
        [10, 6, 9, 0, 12, 11, 7, 13, 15, 1, 3, 14, 5, 2, 8, 4],
        [3, 15, 0, 6, 10, 1, 13, 8, 9, 4, 5, 11, 12, 7, 2, 14],
    ],
    [
        [2, 12, 4, 1, 7, 10, 11, 6, 8, 5, 3, 15, 13, 0, 14, 9],
        [14, 11, 2, 12, 4, 7, 13, 1, 5, 0, 15, 10, 3, 9, 8, 6],
        [4, 2, 1, 11, 10, 13, 7, 8, 15, 9, 12, 5, 6, 3, 0, 14],
        [11, 8, 12, 7, 1, 14, 2, 13, 6, 15, 0, 9, 10, 4, 5, 3],
    ],
    [
        [12, 1, 10, 15, 9, 2, 6, 8, 0, 13, 3, 4, 14, 7, 5, 11],
        [10, 15, 4, 2, 7, 12, 9, 5, 6, 1, 13, 14, 0, 11, 3, 8],
        [9, 14, 15, 5, 2, 8, 12, 3, 7, 0, 4, 10, 1, 13, 11, 6],
        [4, 3, 2, 12, 9, 5, 15, 10, 11, 14, 1, 7, 6, 0, 8, 13],
    ],
    [
        [4, 11, 2, 14, 15, 0, 8, 13, 3, 12, 9, 7, 5, 10, 6, 1],
        [13, 0, 11, 7, 4, 9, 1, 10, 14, 3, 5, 12, 2, 15, 8, 6],
        [1, 4, 11, 13, 12, 3, 7, 14, 10, 15, 6, 8, 0, 5, 9, 2],
        [6, 11, 13, 8, 1, 4, 10, 7, 9, 5, 0, 15, 14, 2, 3, 12],
    ],
    [
        [13, 2, 8, 4, 6, 15, 11, 1, 10, 9, 3, 14, 5, 0, 12, 7],
        [1, 15, 13, 8, 10, 3, 7, 4, 12, 5, 6, 11, 0, 14, 9, 2],
        [7, 11, 4, 1, 9, 12, 14, 2, 0, 6, 10, 13, 15, 3, 5, 8],
        [2, 1, 14, 7, 4, 10, 8, 13, 15, 12, 9, 0, 3, 5, 6, 11],
    ],
];

/// Applies a bit-selection table to the low `in_bits` bits of `input`.
/// Output bit `i` (counted from the MSB of an `N`-bit result) is input bit
/// `table[i]`.
const fn permute<const N: usize>(input: u64, in_bits: u32, table: &[u8; N]) -> u64 {
    let mut out = 0u64;
    let mut i = 0;
    while i < N {
        let bit = (input >> (in_bits - table[i] as u32)) & 1;
        out = (out << 1) | bit;
        i += 1;
    }
    out
}

/// Byte-sliced lookup tables for a 64-bit permutation: the result is the OR
/// of `t[k][byte k]` over the eight input bytes (byte 0 most significant).
const fn byte_tables(table: &[u8; 64]) -> [[u64; 256]; 8] {
    let mut t = [[0u64; 256]; 8];
    let mut k = 0;
    while k < 8 {
        let mut v = 0;
        while v < 256 {
            t[k][v] = permute((v as u64) << (56 - 8 * k), 64, table);
            v += 1;
        }
        k += 1;
    }
    t
}

const fn sp_tables() -> [[u32; 64]; 8] {
    let mut sp = [[0u32; 64]; 8];
    let mut s = 0;
    while s < 8 {
        let mut v = 0;
        while v < 64 {
            let row = ((v >> 4) & 2) | (v & 1);
            let col = (v >> 1) & 0xf;
            let nibble = SBOXES[s][row][col] as u64;
            sp[s][v] = permute(nibble << (28 - 4 * s), 32, &P) as u32;
            v += 1;
        }
        s += 1;
    }
    sp
}

static IP_TABLES: [[u64; 256]; 8] = byte_tables(&IP);
static FP_TABLES: [[u64; 256]; 8] = byte_tables(&FP);
static SP: [[u32; 64]; 8] = sp_tables();

#[inline(always)]
fn apply_bytes(tables: &[[u64; 256]; 8], x: u64) -> u64 {
    let b = x.to_be_bytes();
    let mut out = 0;
    for k in 0..8 {
        out |= tables[k][b[k] as usize];
    }
    out
}

#[inline(always)]
fn feistel(r: u32, subkey: u64) -> u32 {
    let mut out = 0;
    for (i, sp) in SP.iter().enumerate() {
        // E-expansion window i covers bits 4i..4i+5 (1-based, wrapping).
        let window = (r.rotate_left((4 * i as u32 + 31) % 32) >> 26) as u64;
        let chunk = (window ^ (subkey >> (42 - 6 * i))) & 0x3f;
        out |= sp[chunk as usize];
    }
    out
}

/// Single DES: sixteen 48-bit round subkeys.
#[derive(Clone, PartialEq, Eq)]
pub struct Des {
    subkeys: [u64; 16],
}

impl Des {
    pub fn new(key: &[u8; 8]) -> Des {
        let cd = permute(u64::from_be_bytes(*key), 64, &PC1);
        let mut c = (cd >> 28) as u32 & 0x0fff_ffff;
        let mut d = cd as u32 & 0x0fff_ffff;
        let mut subkeys = [0u64; 16];
        for (round, shift) in SHIFTS.iter().enumerate() {
            c = ((c << shift) | (c >> (28 - shift))) & 0x0fff_ffff;
            d = ((d << shift) | (d >> (28 - shift))) & 0x0fff_ffff;
            let joined = ((c as u64) << 28) | d as u64;
            subkeys[round] = permute(joined, 56, &PC2);
        }
        Des { subkeys }
    }

    pub fn subkeys(&self) -> &[u64; 16] {
        &self.subkeys
    }

    #[inline(always)]
    fn rounds(&self, block: u64, decrypt: bool) -> u64 {
        let x = apply_bytes(&IP_TABLES, block);
        let mut l = (x >> 32) as u32;
        let mut r = x as u32;
        for i in 0..16 {
            let k = if decrypt {
                self.subkeys[15 - i]
            } else {
                self.subkeys[i]
            };
            let next = l ^ feistel(r, k);
            l = r;
            r = next;
        }
        // The halves are not swapped after the last round.
        apply_bytes(&FP_TABLES, ((r as u64) << 32) | l as u64)
    }

    pub fn encrypt_u64(&self, block: u64) -> u64 {
        self.rounds(block, false)
    }

    pub fn decrypt_u64(&self, block: u64) -> u64 {
        self.rounds(block, true)
    }
}

impl BlockCipher for Des {
    const BLOCK_SIZE: usize = 8;

    fn encrypt_block(&self, block: &mut [u8]) {
        let b: &mut [u8; 8] = block.try_into().expect("8-byte block");
        *b = self.encrypt_u64(u64::from_be_bytes(*b)).to_be_bytes();
    }

    fn decrypt_block(&self, block: &mut [u8]) {
        let b: &mut [u8; 8] = block.try_into().expect("8-byte block");
        *b = self.decrypt_u64(u64::from_be_bytes(*b)).to_be_bytes();
    }
}

/// Triple DES in encrypt-decrypt-encrypt form with three independent keys.
#[derive(Clone, PartialEq, Eq)]
pub struct TripleDes {
    stages: [Des; 3],
}

impl TripleDes {
    pub fn new(key: &[u8; 24]) -> TripleDes {
        let part = |i: usize| Des::new(key[8 * i..8 * i + 8].try_into().unwrap());
        TripleDes {
            stages: [part(0), part(1), part(2)],
        }
    }

    pub fn encrypt_u64(&self, block: u64) -> u64 {
        let [k1, k2, k3] = &self.stages;
        k3.encrypt_u64(k2.decrypt_u64(k1.encrypt_u64(block)))
    }

    pub fn decrypt_u64(&self, block: u64) -> u64 {
        let [k1, k2, k3] = &self.stages;
        k1.decrypt_u64(k2.encrypt_u64(k3.decrypt_u64(block)))
    }
}

impl BlockCipher for TripleDes {
    const BLOCK_SIZE: usize = 8;

    fn encrypt_block(&self, block: &mut [u8]) {
        let b: &mut [u8; 8] = block.try_into().expect("8-byte block");
        *b = self.encrypt_u64(u64::from_be_bytes(*b)).to_be_bytes();
    }

    fn decrypt_block(&self, block: &mut [u8]) {
        let b: &mut [u8; 8] = block.try_into().expect("8-byte block");
        *b = self.decrypt_u64(u64::from_be_bytes(*b)).to_be_bytes();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn initial_and_final_permutations_are_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..256 {
            let x: u64 = rng.gen();
            assert_eq!(apply_bytes(&FP_TABLES, apply_bytes(&IP_TABLES, x)), x);
            assert_eq!(apply_bytes(&IP_TABLES, x), permute(x, 64, &IP));
        }
    }

    #[test]
    fn textbook_vector() {
        let des = Des::new(&0x133457799BBCDFF1u64.to_be_bytes());
        // First round subkey of the same worked example.
        assert_eq!(
            des.subkeys()[0],
            0b000110_110000_001011_101111_111111_000111_000001_110010
        );
        assert_eq!(des.subkeys().len(), 16);
        assert_eq!(des.encrypt_u64(0x0123456789ABCDEF), 0x85E813540F0AB405);
        assert_eq!(des.decrypt_u64(0x85E813540F0AB405), 0x0123456789ABCDEF);
    }

    #[test]
    fn complementation_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..256 {
            let k: u64 = rng.gen();
            let p: u64 = rng.gen();
            let c = Des::new(&k.to_be_bytes()).encrypt_u64(p);
            let cc = Des::new(&(!k).to_be_bytes()).encrypt_u64(!p);
            assert_eq!(cc, !c);
        }
    }

    #[test]
    fn parity_bits_are_ignored() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..32 {
            let k: u64 = rng.gen();
            let p: u64 = rng.gen();
            let flipped = k ^ 0x0101_0101_0101_0101;
            assert_eq!(
                Des::new(&k.to_be_bytes()).encrypt_u64(p),
                Des::new(&flipped.to_be_bytes()).encrypt_u64(p)
            );
        }
    }

    #[test]
    fn triple_des_with_equal_keys_is_des() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..256 {
            let k: [u8; 8] = rng.gen();
            let p: u64 = rng.gen();
            let mut kkk = [0u8; 24];
            for chunk in kkk.chunks_exact_mut(8) {
                chunk.copy_from_slice(&k);
            }
            let tdes = TripleDes::new(&kkk);
            assert_eq!(tdes.encrypt_u64(p), Des::new(&k).encrypt_u64(p));
            assert_eq!(tdes.decrypt_u64(tdes.encrypt_u64(p)), p);
        }
    }
}
