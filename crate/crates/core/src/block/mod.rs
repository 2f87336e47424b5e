//! The six block ciphers, each behind the [`BlockCipher`] trait, and the
//! [`BlockCipherInstance`] enum that selects one of them by [`CipherId`].

mod aes;
mod blowfish;
mod blowfish_tables;
mod des;
mod rc2;
mod twofish;

pub use aes::{forward_sbox as aes_forward_sbox, Aes256};
pub use blowfish::Blowfish;
pub use des::{Des, TripleDes};
pub use rc2::Rc2;
pub use twofish::Twofish;

use crate::error::{CipherError, Result};
use crate::params::{CipherId, KeyMaterial};

/// A keyed block permutation. `block` must be exactly `BLOCK_SIZE` bytes
/// long; implementations panic otherwise.
pub trait BlockCipher {
    const BLOCK_SIZE: usize;

    fn encrypt_block(&self, block: &mut [u8]);

    fn decrypt_block(&self, block: &mut [u8]);
}

/// A scheduled key for one of the six block ciphers.
#[derive(Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum BlockCipherInstance {
    Aes256(Aes256),
    Des(Des),
    TripleDes(TripleDes),
    Blowfish(Blowfish),
    Twofish(Twofish),
    Rc2(Rc2),
}

/// Runs `$body` with `$c` bound to the concrete cipher inside an instance.
macro_rules! with_block_cipher {
    ($inst:expr, |$c:ident| $body:expr) => {
        match $inst {
            $crate::block::BlockCipherInstance::Aes256($c) => $body,
            $crate::block::BlockCipherInstance::Des($c) => $body,
            $crate::block::BlockCipherInstance::TripleDes($c) => $body,
            $crate::block::BlockCipherInstance::Blowfish($c) => $body,
            $crate::block::BlockCipherInstance::Twofish($c) => $body,
            $crate::block::BlockCipherInstance::Rc2($c) => $body,
        }
    };
}
pub(crate) use with_block_cipher;

/// Expands `key` into the round-key state of its block cipher.
pub fn schedule(key: &KeyMaterial) -> Result<BlockCipherInstance> {
    let bytes = key.bytes();
    let inst = match key.cipher() {
        CipherId::Aes256 => BlockCipherInstance::Aes256(Aes256::new(fixed(bytes))),
        CipherId::Des => BlockCipherInstance::Des(Des::new(fixed(bytes))),
        CipherId::TripleDes => BlockCipherInstance::TripleDes(TripleDes::new(fixed(bytes))),
        CipherId::Blowfish => BlockCipherInstance::Blowfish(Blowfish::with_key_bytes(bytes)),
        CipherId::Twofish => BlockCipherInstance::Twofish(Twofish::new(fixed(bytes))),
        CipherId::Rc2 => BlockCipherInstance::Rc2(Rc2::new(fixed(bytes))),
        cipher @ (CipherId::Rc4 | CipherId::ChaCha20) => {
            return Err(CipherError::WrongFamily {
                cipher,
                expected: "block",
            })
        }
    };
    Ok(inst)
}

// KeyMaterial guarantees the length.
fn fixed<const N: usize>(bytes: &[u8]) -> &[u8; N] {
    bytes
        .try_into()
        .expect("key length checked by validate_key")
}

impl BlockCipherInstance {
    pub fn cipher(&self) -> CipherId {
        match self {
            BlockCipherInstance::Aes256(_) => CipherId::Aes256,
            BlockCipherInstance::Des(_) => CipherId::Des,
            BlockCipherInstance::TripleDes(_) => CipherId::TripleDes,
            BlockCipherInstance::Blowfish(_) => CipherId::Blowfish,
            BlockCipherInstance::Twofish(_) => CipherId::Twofish,
            BlockCipherInstance::Rc2(_) => CipherId::Rc2,
        }
    }

    pub fn block_size(&self) -> usize {
        fn size_of<C: BlockCipher>(_: &C) -> usize {
            C::BLOCK_SIZE
        }
        with_block_cipher!(self, |c| size_of(c))
    }

    fn check_len(&self, block: &[u8]) -> Result<()> {
        let block_size = self.block_size();
        if block.len() != block_size {
            return Err(CipherError::BlockLength {
                block_size,
                got: block.len(),
            });
        }
        Ok(())
    }

    pub fn encrypt_block(&self, block: &[u8]) -> Result<Vec<u8>> {
        self.check_len(block)?;
        let mut out = block.to_vec();
        with_block_cipher!(self, |c| c.encrypt_block(&mut out));
        Ok(out)
    }

    pub fn decrypt_block(&self, block: &[u8]) -> Result<Vec<u8>> {
        self.check_len(block)?;
        let mut out = block.to_vec();
        with_block_cipher!(self, |c| c.decrypt_block(&mut out));
        Ok(out)
    }
}

impl std::fmt::Debug for BlockCipherInstance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("BlockCipherInstance")
            .field(&self.cipher())
            .finish()
    }
}
