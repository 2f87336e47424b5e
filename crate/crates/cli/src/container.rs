//! The `CBE1` file container: a small header followed by ciphertext.
//!
//! ```text
//! magic "CBE1" | version 0x01 | cipher ordinal | mode ordinal | iv_len | iv
//! ```
//!
//! Cipher and mode ordinals are the registry order (AES-256 = 0 through
//! ChaCha20 = 7; ECB = 0, CBC = 1, stream = 2) and are frozen.

use cipherbench_core::{check_mode, CipherId, ModeId};

pub const MAGIC: [u8; 4] = *b"CBE1";
pub const VERSION: u8 = 0x01;
const FIXED_LEN: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ContainerError {
    #[error("not a cipherbench container")]
    BadMagic,
    #[error("unsupported container version {0}")]
    Version(u8),
    #[error("truncated container header")]
    Truncated,
    #[error("unknown cipher ordinal {0} in container header")]
    UnknownCipher(u8),
    #[error("unknown mode ordinal {0} in container header")]
    UnknownMode(u8),
    #[error("container header pairs {cipher} with incompatible mode {mode}")]
    IncompatibleMode { cipher: CipherId, mode: ModeId },
    #[error("container IV length {got} does not match {cipher} {mode} (expected {expected})")]
    IvLength {
        cipher: CipherId,
        mode: ModeId,
        expected: usize,
        got: usize,
    },
}

/// IV or nonce length the container carries for a (cipher, mode) pair.
pub fn iv_len(cipher: CipherId, mode: ModeId) -> usize {
    match (mode, cipher) {
        (ModeId::Cbc, c) => c.block_len().unwrap_or(0),
        (ModeId::Stream, CipherId::ChaCha20) => cipherbench_core::stream::NONCE_LEN,
        _ => 0,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainerHeader {
    pub cipher: CipherId,
    pub mode: ModeId,
    pub iv: Vec<u8>,
}

impl ContainerHeader {
    pub fn new(cipher: CipherId, mode: ModeId, iv: Vec<u8>) -> Result<Self, ContainerError> {
        let header = ContainerHeader { cipher, mode, iv };
        header.check()?;
        Ok(header)
    }

    fn check(&self) -> Result<(), ContainerError> {
        let (cipher, mode) = (self.cipher, self.mode);
        check_mode(cipher, mode).map_err(|_| ContainerError::IncompatibleMode { cipher, mode })?;
        let expected = iv_len(cipher, mode);
        if self.iv.len() != expected {
            return Err(ContainerError::IvLength {
                cipher,
                mode,
                expected,
                got: self.iv.len(),
            });
        }
        Ok(())
    }

    pub fn encoded_len(&self) -> usize {
        FIXED_LEN + self.iv.len()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.encoded_len());
        out.extend_from_slice(&MAGIC);
        out.extend_from_slice(&[
            VERSION,
            self.cipher.ordinal(),
            self.mode.ordinal(),
            self.iv.len() as u8,
        ]);
        out.extend_from_slice(&self.iv);
        out
    }

    /// Splits `bytes` into the header and the ciphertext that follows it.
    pub fn parse(bytes: &[u8]) -> Result<(ContainerHeader, &[u8]), ContainerError> {
        let magic_len = bytes.len().min(MAGIC.len());
        if bytes[..magic_len] != MAGIC[..magic_len] {
            return Err(ContainerError::BadMagic);
        }
        if bytes.len() < FIXED_LEN {
            return Err(ContainerError::Truncated);
        }
        if bytes[4] != VERSION {
            return Err(ContainerError::Version(bytes[4]));
        }
        let cipher =
            CipherId::from_ordinal(bytes[5]).ok_or(ContainerError::UnknownCipher(bytes[5]))?;
        let mode = ModeId::from_ordinal(bytes[6]).ok_or(ContainerError::UnknownMode(bytes[6]))?;
        let iv_end = FIXED_LEN + bytes[7] as usize;
        if bytes.len() < iv_end {
            return Err(ContainerError::Truncated);
        }
        let header = ContainerHeader {
            cipher,
            mode,
            iv: bytes[FIXED_LEN..iv_end].to_vec(),
        };
        header.check()?;
        Ok((header, &bytes[iv_end..]))
    }
}
