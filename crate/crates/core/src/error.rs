use thiserror::Error;

use crate::params::{CipherId, ModeId};

/// Errors produced by key validation, the ciphers and the modes of operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CipherError {
    #[error("invalid key length for {cipher}: expected {expected} bytes, got {got}")]
    KeyLength {
        cipher: CipherId,
        expected: usize,
        got: usize,
    },
    #[error("{cipher} is not a {expected} cipher")]
    WrongFamily {
        cipher: CipherId,
        expected: &'static str,
    },
    #[error("invalid block length: expected a multiple of {block_size} bytes, got {got}")]
    BlockLength { block_size: usize, got: usize },
    #[error("invalid padding")]
    Padding,
    #[error("invalid IV length: expected {expected} bytes, got {got}")]
    IvLength { expected: usize, got: usize },
    #[error("invalid nonce for {cipher}: {reason}")]
    Nonce { cipher: CipherId, reason: String },
    #[error("mode incompatible with {} cipher {cipher}: {mode}", cipher.family())]
    IncompatibleMode { cipher: CipherId, mode: ModeId },
}

pub type Result<T> = std::result::Result<T, CipherError>;
