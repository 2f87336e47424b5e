//! From-scratch implementations of AES-256, DES, 3DES, Blowfish, Twofish,
//! RC2, RC4 and ChaCha20, with ECB/CBC modes and an embedded known-answer
//! vector suite.

pub mod block;
pub mod error;
pub mod kat;
pub mod modes;
pub mod params;
pub mod stream;

pub use block::{schedule, BlockCipher, BlockCipherInstance};
pub use error::{CipherError, Result};
pub use params::{
    check_mode, params_for, validate_key, CipherId, CipherParams, Family, KeyMaterial, ModeId,
};
pub use stream::{stream_xor, StreamState};
