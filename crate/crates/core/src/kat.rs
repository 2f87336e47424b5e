//! Published known-answer vectors for all eight ciphers and a runner that
//! checks an implementation against them.
//!
//! Some vectors use key lengths outside the fixed registry configuration
//! (8-byte Blowfish keys, RC2 with 63 or 64 effective bits, short RC4 keys).
//! Those exercise the same primitive through its general-length key
//! schedule.

use crate::block::{
    aes_forward_sbox, schedule, Aes256, BlockCipher, BlockCipherInstance, Blowfish, Rc2,
};
use crate::modes::{ecb_decrypt_blocks, ecb_encrypt_blocks};
use crate::params::{validate_key, CipherId};
use crate::stream::{quarter_round, ChaChaState, Rc4, StreamState};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KatKind {
    /// Raw block encryption (ECB, no padding) under a registry-length key.
    Block,
    /// Raw block encryption under a key of non-registry length; RC2 vectors
    /// carry their effective key bits.
    BlockNonstandardKey { effective_bits: Option<usize> },
    /// Keystream XORed over the input, from the start of the stream.
    Stream,
    /// RC4 with a key shorter than the registry length.
    StreamNonstandardKey,
    /// ChaCha20 keystream XORed over the input starting at a block counter.
    ChaChaAt { counter: u32 },
    /// One ChaCha20 quarter round over four big-endian words.
    QuarterRound,
}

#[derive(Debug, Clone, Copy)]
pub struct KatVector {
    pub cipher: CipherId,
    pub name: &'static str,
    pub kind: KatKind,
    pub key: &'static str,
    pub nonce: &'static str,
    pub input: &'static str,
    pub expected: &'static str,
}

const fn v(
    cipher: CipherId,
    name: &'static str,
    kind: KatKind,
    key: &'static str,
    input: &'static str,
    expected: &'static str,
) -> KatVector {
    KatVector {
        cipher,
        name,
        kind,
        key,
        nonce: "",
        input,
        expected,
    }
}

const SUNSCREEN: &str = "4c616469657320616e642047656e746c656d656e206f662074686520636c6173\
73206f66202739393a204966204920636f756c64206f6666657220796f75206f\
6e6c79206f6e652074697020666f7220746865206675747572652c2073756e73\
637265656e20776f756c642062652069742e";

pub const VECTORS: &[KatVector] = &[
    v(
        CipherId::Aes256,
        "FIPS-197 C.3",
        KatKind::Block,
        "000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f",
        "00112233445566778899aabbccddeeff",
        "8ea2b7ca516745bfeafc49904b496089",
    ),
    v(
        CipherId::Aes256,
        "SP 800-38A F.1.5 ECB-AES256",
        KatKind::Block,
        "603deb1015ca71be2b73aef0857d77811f352c073b6108d72d9810a30914dff4",
        "6bc1bee22e409f96e93d7e117393172aae2d8a571e03ac9c9eb76fac45af8e51\
         30c81c46a35ce411e5fbc1191a0a52eff69f2445df4f9b17ad2b417be66c3710",
        "f3eed1bdb5d2a03c064b5a7e3db181f8591ccb10d410ed26dc5ba74a31362870\
         b6ed21b99ca6f4f9f153e7b1beafed1d23304b7a39f9f3ff067d8d8f9e24ecc7",
    ),
    v(
        CipherId::Des,
        "worked example 133457799BBCDFF1",
        KatKind::Block,
        "133457799bbcdff1",
        "0123456789abcdef",
        "85e813540f0ab405",
    ),
    v(
        CipherId::Des,
        "0E329232EA6D0D73 maps 8787878787878787 to zero",
        KatKind::Block,
        "0e329232ea6d0d73",
        "8787878787878787",
        "0000000000000000",
    ),
    v(
        CipherId::Des,
        "FIPS 81 \"Now is t\"",
        KatKind::Block,
        "0123456789abcdef",
        "4e6f772069732074",
        "3fa40e8a984d4815",
    ),
    v(
        CipherId::TripleDes,
        "SP 800-67 example, three keys",
        KatKind::Block,
        "0123456789abcdef23456789abcdef01456789abcdef0123",
        "5468652071756663",
        "a826fd8ce53b855f",
    ),
    v(
        CipherId::TripleDes,
        "SP 800-67 example, three blocks",
        KatKind::Block,
        "0123456789abcdef23456789abcdef01456789abcdef0123",
        "5468652071756663_6b2062726f776e20_666f78206a756d70",
        "a826fd8ce53b855f_cce21c8112256fe6_68d5c05dd9b6b900",
    ),
    v(
        CipherId::TripleDes,
        "k1=k2=k3 reduces to the DES worked example",
        KatKind::Block,
        "133457799bbcdff1133457799bbcdff1133457799bbcdff1",
        "0123456789abcdef",
        "85e813540f0ab405",
    ),
    v(
        CipherId::Blowfish,
        "variable-key set, 16-byte key",
        KatKind::Block,
        "f0e1d2c3b4a5968778695a4b3c2d1e0f",
        "fedcba9876543210",
        "93142887ee3be15c",
    ),
    v(
        CipherId::Blowfish,
        "ECB set, zero key",
        KatKind::BlockNonstandardKey {
            effective_bits: None,
        },
        "0000000000000000",
        "0000000000000000",
        "4ef997456198dd78",
    ),
    v(
        CipherId::Blowfish,
        "ECB set, all-ones key",
        KatKind::BlockNonstandardKey {
            effective_bits: None,
        },
        "ffffffffffffffff",
        "ffffffffffffffff",
        "51866fd5b85ecb8a",
    ),
    v(
        CipherId::Blowfish,
        "ECB set, 0123456789ABCDEF",
        KatKind::BlockNonstandardKey {
            effective_bits: None,
        },
        "0123456789abcdef",
        "1111111111111111",
        "61f9c3802281b096",
    ),
    v(
        CipherId::Twofish,
        "256-bit zero key",
        KatKind::Block,
        "0000000000000000000000000000000000000000000000000000000000000000",
        "00000000000000000000000000000000",
        "57ff739d4dc92c1bd7fc01700cc8216f",
    ),
    v(
        CipherId::Twofish,
        "256-bit ecb_tbl key",
        KatKind::Block,
        "0123456789abcdeffedcba987654321000112233445566778899aabbccddeeff",
        "00000000000000000000000000000000",
        "37527be0052334b89f0cfccae87cfa20",
    ),
    v(
        CipherId::Rc2,
        "RFC 2268, 16-byte key, 128 effective bits",
        KatKind::Block,
        "88bca90e90875a7f0f79c384627bafb2",
        "0000000000000000",
        "2269552ab0f85ca6",
    ),
    v(
        CipherId::Rc2,
        "RFC 2268, 16-byte key, 64 effective bits",
        KatKind::BlockNonstandardKey {
            effective_bits: Some(64),
        },
        "88bca90e90875a7f0f79c384627bafb2",
        "0000000000000000",
        "1a807d272bbe5db1",
    ),
    v(
        CipherId::Rc2,
        "RFC 2268, zero key, 63 effective bits",
        KatKind::BlockNonstandardKey {
            effective_bits: Some(63),
        },
        "0000000000000000",
        "0000000000000000",
        "ebb773f993278eff",
    ),
    v(
        CipherId::Rc2,
        "RFC 2268, all-ones key, 64 effective bits",
        KatKind::BlockNonstandardKey {
            effective_bits: Some(64),
        },
        "ffffffffffffffff",
        "ffffffffffffffff",
        "278b27e42e2f0d49",
    ),
    v(
        CipherId::Rc4,
        "RFC 6229, 256-bit key 0102..20, offset 0",
        KatKind::Stream,
        "0102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f20",
        "0000000000000000000000000000000000000000000000000000000000000000",
        "eaa6bd25880bf93d3f5d1e4ca2611d91cfa45c9f7e714b54bdfa80027cb14380",
    ),
    v(
        CipherId::Rc4,
        "RFC 6229, 256-bit key 1ada31d5.., offset 0",
        KatKind::Stream,
        "1ada31d5cf688221c109163908ebe51debb46227c6cc8b37641910833222772a",
        "0000000000000000000000000000000000000000000000000000000000000000",
        "dd5bcb0018e922d494759d7c395d02d3c8446f8f77abf737685353eb89a1c9eb",
    ),
    v(
        CipherId::Rc4,
        "\"Key\" / \"Plaintext\"",
        KatKind::StreamNonstandardKey,
        "4b6579",
        "506c61696e74657874",
        "bbf316e8d940af0ad3",
    ),
    v(
        CipherId::ChaCha20,
        "RFC 8439 2.1.1 quarter round",
        KatKind::QuarterRound,
        "",
        "11111111010203049b8d6f4301234567",
        "ea2a92f4cb1cf8ce4581472e5881c4bb",
    ),
    KatVector {
        nonce: "000000090000004a00000000",
        ..v(
            CipherId::ChaCha20,
            "RFC 8439 2.3.2 block function",
            KatKind::ChaChaAt { counter: 1 },
            "000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f",
            "0000000000000000000000000000000000000000000000000000000000000000\
             0000000000000000000000000000000000000000000000000000000000000000",
            "10f1e7e4d13b5915500fdd1fa32071c4c7d1f4c733c068030422aa9ac3d46c4e\
             d2826446079faa0914c2d705d98b02a2b5129cd1de164eb9cbd083e8a2503c4e",
        )
    },
    KatVector {
        nonce: "000000000000000000000000",
        ..v(
            CipherId::ChaCha20,
            "RFC 8439 A.1 #1 zero key, counter 0",
            KatKind::Stream,
            "0000000000000000000000000000000000000000000000000000000000000000",
            "0000000000000000000000000000000000000000000000000000000000000000\
             0000000000000000000000000000000000000000000000000000000000000000",
            "76b8e0ada0f13d90405d6ae55386bd28bdd219b8a08ded1aa836efcc8b770dc7\
             da41597c5157488d7724e03fb8d84a376a43b8f41518a11cc387b669b2ee6586",
        )
    },
    KatVector {
        nonce: "000000000000004a00000000",
        ..v(
            CipherId::ChaCha20,
            "RFC 8439 2.4.2 sunscreen",
            KatKind::ChaChaAt { counter: 1 },
            "000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f",
            SUNSCREEN,
            "6e2e359a2568f98041ba0728dd0d6981e97e7aec1d4360c20a27afccfd9fae0b\
             f91b65c5524733ab8f593dabcd62b3571639d624e65152ab8f530c359f0861d8\
             07ca0dbf500d6a6156a38e088a22b65e52bc514d16ccf806818ce91ab7793736\
             5af90bbf74a35be6b40b8eedf2785e42874d",
        )
    },
];

/// Decodes hex, ignoring whitespace and `_` separators.
pub fn unhex(s: &str) -> Vec<u8> {
    let cleaned: String = s
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '_')
        .collect();
    hex::decode(cleaned).expect("vector hex is well formed")
}

impl KatVector {
    pub fn key_bytes(&self) -> Vec<u8> {
        unhex(self.key)
    }

    pub fn input_bytes(&self) -> Vec<u8> {
        unhex(self.input)
    }

    pub fn expected_bytes(&self) -> Vec<u8> {
        unhex(self.expected)
    }
}

fn raw_block_cipher<C: BlockCipher>(c: &C, data: &[u8], decrypt: bool) -> Vec<u8> {
    let mut out = data.to_vec();
    for block in out.chunks_exact_mut(C::BLOCK_SIZE) {
        if decrypt {
            c.decrypt_block(block);
        } else {
            c.encrypt_block(block);
        }
    }
    out
}

fn registry_instance(v: &KatVector) -> Result<BlockCipherInstance, String> {
    let key = validate_key(v.cipher, &v.key_bytes()).map_err(|e| e.to_string())?;
    schedule(&key).map_err(|e| e.to_string())
}

fn block_forward_and_back(
    v: &KatVector,
    encrypt: impl Fn(&[u8]) -> Vec<u8>,
    decrypt: impl Fn(&[u8]) -> Vec<u8>,
) -> Result<Vec<u8>, String> {
    let out = encrypt(&v.input_bytes());
    if out == v.expected_bytes() && decrypt(&out) != v.input_bytes() {
        return Err("encryption matched but decryption did not invert it".into());
    }
    Ok(out)
}

/// Computes the output of the library implementation for one vector. Block
/// vectors whose encryption matches are also decrypted; a failed inverse is
/// reported as an error.
pub fn evaluate(v: &KatVector) -> Result<Vec<u8>, String> {
    match v.kind {
        KatKind::Block => {
            let inst = registry_instance(v)?;
            block_forward_and_back(
                v,
                |d| {
                    let mut b = d.to_vec();
                    ecb_encrypt_blocks(&inst, &mut b).expect("aligned vector");
                    b
                },
                |d| {
                    let mut b = d.to_vec();
                    ecb_decrypt_blocks(&inst, &mut b).expect("aligned vector");
                    b
                },
            )
        }
        KatKind::BlockNonstandardKey { effective_bits } => {
            let key = v.key_bytes();
            match v.cipher {
                CipherId::Blowfish => {
                    let bf = Blowfish::with_key_bytes(&key);
                    block_forward_and_back(
                        v,
                        |d| raw_block_cipher(&bf, d, false),
                        |d| raw_block_cipher(&bf, d, true),
                    )
                }
                CipherId::Rc2 => {
                    let bits = effective_bits.unwrap_or(8 * key.len());
                    let rc2 = Rc2::with_effective_bits(&key, bits);
                    block_forward_and_back(
                        v,
                        |d| raw_block_cipher(&rc2, d, false),
                        |d| raw_block_cipher(&rc2, d, true),
                    )
                }
                other => Err(format!("no nonstandard-key schedule for {other}")),
            }
        }
        KatKind::Stream => {
            let key = validate_key(v.cipher, &v.key_bytes()).map_err(|e| e.to_string())?;
            let nonce = (!v.nonce.is_empty()).then(|| unhex(v.nonce));
            let mut state = StreamState::new(&key, nonce.as_deref()).map_err(|e| e.to_string())?;
            let mut data = v.input_bytes();
            state.apply_keystream(&mut data);
            Ok(data)
        }
        KatKind::StreamNonstandardKey => {
            let mut rc4 = Rc4::with_key_bytes(&v.key_bytes());
            let mut data = v.input_bytes();
            rc4.apply_keystream(&mut data);
            Ok(data)
        }
        KatKind::ChaChaAt { counter } => {
            let key = validate_key(v.cipher, &v.key_bytes()).map_err(|e| e.to_string())?;
            let mut state =
                ChaChaState::new(&key, &unhex(v.nonce), counter).map_err(|e| e.to_string())?;
            let mut data = v.input_bytes();
            state.apply_keystream(&mut data);
            Ok(data)
        }
        KatKind::QuarterRound => {
            let input = v.input_bytes();
            let w = |i: usize| u32::from_be_bytes(input[4 * i..4 * i + 4].try_into().unwrap());
            let (a, b, c, d) = quarter_round(w(0), w(1), w(2), w(3));
            Ok([a, b, c, d].iter().flat_map(|x| x.to_be_bytes()).collect())
        }
    }
}

#[derive(Debug, Clone)]
pub struct KatOutcome {
    pub vector: KatVector,
    pub actual: Result<Vec<u8>, String>,
}

impl KatOutcome {
    pub fn passed(&self) -> bool {
        matches!(&self.actual, Ok(out) if *out == self.vector.expected_bytes())
    }
}

#[derive(Debug, Clone)]
pub struct KatReport {
    pub outcomes: Vec<KatOutcome>,
}

impl KatReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(KatOutcome::passed)
    }

    pub fn for_cipher(&self, cipher: CipherId) -> impl Iterator<Item = &KatOutcome> {
        self.outcomes
            .iter()
            .filter(move |o| o.vector.cipher == cipher)
    }

    pub fn cipher_passed(&self, cipher: CipherId) -> bool {
        self.for_cipher(cipher).all(KatOutcome::passed)
    }
}

/// Runs every embedded vector through `eval`.
pub fn run_with(eval: impl Fn(&KatVector) -> Result<Vec<u8>, String>) -> KatReport {
    KatReport {
        outcomes: VECTORS
            .iter()
            .map(|v| KatOutcome {
                vector: *v,
                actual: eval(v),
            })
            .collect(),
    }
}

pub fn run_all() -> KatReport {
    run_with(evaluate)
}

/// An evaluator whose AES uses a forward S-box with one entry changed.
/// The known-answer suite must reject it.
pub fn evaluate_with_corrupted_aes_sbox(v: &KatVector) -> Result<Vec<u8>, String> {
    if v.cipher != CipherId::Aes256 {
        return evaluate(v);
    }
    let mut sbox = *aes_forward_sbox();
    sbox[0x00] ^= 0x01;
    let key: [u8; 32] = v.key_bytes().try_into().map_err(|_| "bad AES key")?;
    let aes = Aes256::with_sbox(&key, &sbox);
    Ok(raw_block_cipher(&aes, &v.input_bytes(), false))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_cipher_has_two_vectors() {
        for cipher in CipherId::ALL {
            let n = VECTORS.iter().filter(|v| v.cipher == cipher).count();
            assert!(n >= 2, "{cipher} has {n} vectors");
        }
    }

    #[test]
    fn all_vectors_pass() {
        let report = run_all();
        for o in &report.outcomes {
            assert!(
                o.passed(),
                "{} / {}: got {:?}",
                o.vector.cipher,
                o.vector.name,
                o.actual.as_ref().map(hex::encode)
            );
        }
    }

    #[test]
    fn corrupted_sbox_is_detected() {
        let report = run_with(evaluate_with_corrupted_aes_sbox);
        assert!(!report.cipher_passed(CipherId::Aes256));
        for cipher in CipherId::ALL.into_iter().filter(|&c| c != CipherId::Aes256) {
            assert!(report.cipher_passed(cipher), "{cipher}");
        }
        assert!(!report.all_passed());
    }
}
