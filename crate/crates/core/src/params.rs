//! Cipher identities and the key/block parameter registry.
//!
//! Every cipher is fixed at a single configuration: AES at 256-bit keys,
//! Blowfish and RC2 at 128-bit keys, DES and 3DES with keys that carry
//! (unchecked) parity bits.

use std::fmt;
use std::str::FromStr;

use crate::error::{CipherError, Result};

/// The eight ciphers, in registry order. The discriminants are the wire
/// ordinals used by the file container and must never change.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum CipherId {
    Aes256 = 0,
    Des = 1,
    TripleDes = 2,
    Blowfish = 3,
    Twofish = 4,
    Rc2 = 5,
    Rc4 = 6,
    ChaCha20 = 7,
}

impl CipherId {
    pub const ALL: [CipherId; 8] = [
        CipherId::Aes256,
        CipherId::Des,
        CipherId::TripleDes,
        CipherId::Blowfish,
        CipherId::Twofish,
        CipherId::Rc2,
        CipherId::Rc4,
        CipherId::ChaCha20,
    ];

    pub const BLOCK: [CipherId; 6] = [
        CipherId::Aes256,
        CipherId::Des,
        CipherId::TripleDes,
        CipherId::Blowfish,
        CipherId::Twofish,
        CipherId::Rc2,
    ];

    pub const STREAM: [CipherId; 2] = [CipherId::Rc4, CipherId::ChaCha20];

    pub fn ordinal(self) -> u8 {
        self as u8
    }

    pub fn from_ordinal(ordinal: u8) -> Option<CipherId> {
        CipherId::ALL.get(ordinal as usize).copied()
    }

    pub fn params(self) -> CipherParams {
        params_for(self)
    }

    pub fn family(self) -> Family {
        params_for(self).family
    }

    /// Short lowercase token used on the command line and in CSV files.
    pub fn token(self) -> &'static str {
        match self {
            CipherId::Aes256 => "aes",
            CipherId::Des => "des",
            CipherId::TripleDes => "3des",
            CipherId::Blowfish => "blowfish",
            CipherId::Twofish => "twofish",
            CipherId::Rc2 => "rc2",
            CipherId::Rc4 => "rc4",
            CipherId::ChaCha20 => "chacha20",
        }
    }

    /// Column label used in rendered tables.
    pub fn label(self) -> &'static str {
        match self {
            CipherId::Aes256 => "AES",
            CipherId::Des => "DES",
            CipherId::TripleDes => "Triple-DES",
            CipherId::Blowfish => "Blowfish",
            CipherId::Twofish => "Twofish",
            CipherId::Rc2 => "RC2",
            CipherId::Rc4 => "RC4",
            CipherId::ChaCha20 => "ChaCha20",
        }
    }

    /// Number of key bytes accepted by [`validate_key`].
    pub fn key_len(self) -> usize {
        match self {
            CipherId::Des => 8,
            CipherId::TripleDes => 24,
            other => params_for(other).key_bits as usize / 8,
        }
    }

    /// Block size in bytes, `None` for stream ciphers.
    pub fn block_len(self) -> Option<usize> {
        params_for(self).block_bits.map(|bits| bits as usize / 8)
    }

    /// The modes this cipher can run under.
    pub fn modes(self) -> &'static [ModeId] {
        match self.family() {
            Family::Block => &[ModeId::Ecb, ModeId::Cbc],
            Family::Stream => &[ModeId::Stream],
        }
    }
}

impl fmt::Display for CipherId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Error returned when a cipher or mode name cannot be parsed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown {kind} `{name}`")]
pub struct ParseIdError {
    pub kind: &'static str,
    pub name: String,
}

impl FromStr for CipherId {
    type Err = ParseIdError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let id = match s.trim().to_ascii_lowercase().as_str() {
            "aes" | "aes256" | "aes-256" => CipherId::Aes256,
            "des" => CipherId::Des,
            "3des" | "tdes" | "triple-des" | "tripledes" | "des3" => CipherId::TripleDes,
            "blowfish" | "bf" => CipherId::Blowfish,
            "twofish" => CipherId::Twofish,
            "rc2" => CipherId::Rc2,
            "rc4" | "arc4" => CipherId::Rc4,
            "chacha20" | "chacha" => CipherId::ChaCha20,
            _ => {
                return Err(ParseIdError {
                    kind: "cipher",
                    name: s.to_string(),
                })
            }
        };
        Ok(id)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Block,
    Stream,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Block => "block",
            Family::Stream => "stream",
        })
    }
}

/// Mode of operation. Discriminants are wire ordinals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum ModeId {
    Ecb = 0,
    Cbc = 1,
    Stream = 2,
}

impl ModeId {
    pub const ALL: [ModeId; 3] = [ModeId::Ecb, ModeId::Cbc, ModeId::Stream];

    pub fn ordinal(self) -> u8 {
        self as u8
    }

    pub fn from_ordinal(ordinal: u8) -> Option<ModeId> {
        ModeId::ALL.get(ordinal as usize).copied()
    }

    pub fn token(self) -> &'static str {
        match self {
            ModeId::Ecb => "ecb",
            ModeId::Cbc => "cbc",
            ModeId::Stream => "stream",
        }
    }

    pub fn family(self) -> Family {
        match self {
            ModeId::Ecb | ModeId::Cbc => Family::Block,
            ModeId::Stream => Family::Stream,
        }
    }
}

impl fmt::Display for ModeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for ModeId {
    type Err = ParseIdError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ecb" => Ok(ModeId::Ecb),
            "cbc" => Ok(ModeId::Cbc),
            "stream" => Ok(ModeId::Stream),
            _ => Err(ParseIdError {
                kind: "mode",
                name: s.to_string(),
            }),
        }
    }
}

/// Key size, block size and family of one cipher.
///
/// `key_bits` is the effective key size: 56 for DES and 168 for 3DES even
/// though their key inputs are 8 and 24 bytes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CipherParams {
    pub cipher: CipherId,
    pub key_bits: u32,
    pub block_bits: Option<u32>,
    pub family: Family,
}

pub fn params_for(cipher: CipherId) -> CipherParams {
    let (key_bits, block_bits) = match cipher {
        CipherId::Aes256 => (256, Some(128)),
        CipherId::Des => (56, Some(64)),
        CipherId::TripleDes => (168, Some(64)),
        CipherId::Blowfish => (128, Some(64)),
        CipherId::Twofish => (256, Some(128)),
        CipherId::Rc2 => (128, Some(64)),
        CipherId::Rc4 => (256, None),
        CipherId::ChaCha20 => (256, None),
    };
    let family = if block_bits.is_some() {
        Family::Block
    } else {
        Family::Stream
    };
    CipherParams {
        cipher,
        key_bits,
        block_bits,
        family,
    }
}

/// Key bytes that have been checked against a cipher's key length.
#[derive(Clone, PartialEq, Eq)]
pub struct KeyMaterial {
    cipher: CipherId,
    bytes: Vec<u8>,
}

impl KeyMaterial {
    pub fn cipher(&self) -> CipherId {
        self.cipher
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }
}

impl fmt::Debug for KeyMaterial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KeyMaterial")
            .field("cipher", &self.cipher)
            .field("len", &self.bytes.len())
            .finish_non_exhaustive()
    }
}

/// Accepts `bytes` iff its length is the cipher's key-input length.
/// DES parity bits are not checked.
pub fn validate_key(cipher: CipherId, bytes: &[u8]) -> Result<KeyMaterial> {
    let expected = cipher.key_len();
    if bytes.len() != expected {
        return Err(CipherError::KeyLength {
            cipher,
            expected,
            got: bytes.len(),
        });
    }
    Ok(KeyMaterial {
        cipher,
        bytes: bytes.to_vec(),
    })
}

/// Checks that `mode` can be used with `cipher`.
pub fn check_mode(cipher: CipherId, mode: ModeId) -> Result<()> {
    if cipher.family() == mode.family() {
        Ok(())
    } else {
        Err(CipherError::IncompatibleMode { cipher, mode })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_matches_parameter_table() {
        let expected = [
            (CipherId::Aes256, 256, Some(128)),
            (CipherId::Des, 56, Some(64)),
            (CipherId::TripleDes, 168, Some(64)),
            (CipherId::Blowfish, 128, Some(64)),
            (CipherId::Twofish, 256, Some(128)),
            (CipherId::Rc2, 128, Some(64)),
            (CipherId::Rc4, 256, None),
            (CipherId::ChaCha20, 256, None),
        ];
        for (cipher, key_bits, block_bits) in expected {
            let p = params_for(cipher);
            assert_eq!(p.cipher, cipher);
            assert_eq!(p.key_bits, key_bits, "{cipher}");
            assert_eq!(p.block_bits, block_bits, "{cipher}");
            assert_eq!(p.block_bits.is_some(), p.family == Family::Block);
        }
        assert_eq!(params_for(CipherId::ChaCha20).family, Family::Stream);
    }

    #[test]
    fn exactly_one_key_length_accepted() {
        for cipher in CipherId::ALL {
            let accepted: Vec<usize> = (0..=64)
                .filter(|&len| validate_key(cipher, &vec![0xa5; len]).is_ok())
                .collect();
            assert_eq!(accepted, vec![cipher.key_len()], "{cipher}");
        }
        assert_eq!(CipherId::Des.key_len(), 8);
        assert_eq!(CipherId::TripleDes.key_len(), 24);
        assert_eq!(CipherId::Rc4.key_len(), 32);
    }

    #[test]
    fn wrong_aes_key_length() {
        assert!(validate_key(CipherId::Aes256, &[0u8; 32]).is_ok());
        assert_eq!(
            validate_key(CipherId::Aes256, &[0u8; 16]).unwrap_err(),
            CipherError::KeyLength {
                cipher: CipherId::Aes256,
                expected: 32,
                got: 16
            }
        );
    }

    #[test]
    fn ordinals_and_tokens_roundtrip() {
        for (i, cipher) in CipherId::ALL.into_iter().enumerate() {
            assert_eq!(cipher.ordinal() as usize, i);
            assert_eq!(CipherId::from_ordinal(i as u8), Some(cipher));
            assert_eq!(cipher.token().parse::<CipherId>().unwrap(), cipher);
            assert_eq!(cipher.label().parse::<CipherId>().unwrap(), cipher);
        }
        assert_eq!(CipherId::from_ordinal(8), None);
        for mode in ModeId::ALL {
            assert_eq!(mode.token().parse::<ModeId>().unwrap(), mode);
        }
        assert!("idea".parse::<CipherId>().is_err());
    }

    #[test]
    fn mode_family_rules() {
        assert!(check_mode(CipherId::Aes256, ModeId::Cbc).is_ok());
        assert!(check_mode(CipherId::Rc4, ModeId::Stream).is_ok());
        let err = check_mode(CipherId::Rc4, ModeId::Cbc).unwrap_err();
        assert_eq!(
            err.to_string(),
            "mode incompatible with stream cipher RC4: cbc"
        );
        assert!(check_mode(CipherId::Des, ModeId::Stream).is_err());
    }
}
