//! ECB and CBC over any [`BlockCipherInstance`], with PKCS#7 padding.
//!
//! Padding is always applied, so an exact multiple of the block size gains
//! a full block of padding. The `*_blocks` variants work in place on
//! block-aligned buffers and skip padding entirely.

use crate::block::{with_block_cipher, BlockCipher, BlockCipherInstance};
use crate::error::{CipherError, Result};

pub fn pkcs7_pad(data: &[u8], block_size: usize) -> Vec<u8> {
    assert!((1..=255).contains(&block_size));
    let pad = block_size - data.len() % block_size;
    let mut out = Vec::with_capacity(data.len() + pad);
    out.extend_from_slice(data);
    out.resize(data.len() + pad, pad as u8);
    out
}

/// Length of the message once its PKCS#7 padding is removed.
pub fn pkcs7_unpadded_len(data: &[u8], block_size: usize) -> Result<usize> {
    check_blocks(data, block_size)?;
    let pad = *data.last().expect("nonempty") as usize;
    if pad == 0 || pad > block_size {
        return Err(CipherError::Padding);
    }
    let body = data.len() - pad;
    if data[body..].iter().any(|&b| b as usize != pad) {
        return Err(CipherError::Padding);
    }
    Ok(body)
}

pub fn pkcs7_unpad(data: &[u8], block_size: usize) -> Result<&[u8]> {
    pkcs7_unpadded_len(data, block_size).map(|len| &data[..len])
}

fn check_blocks(data: &[u8], block_size: usize) -> Result<()> {
    if data.is_empty() || !data.len().is_multiple_of(block_size) {
        return Err(CipherError::BlockLength {
            block_size,
            got: data.len(),
        });
    }
    Ok(())
}

fn check_iv(inst: &BlockCipherInstance, iv: &[u8]) -> Result<()> {
    if iv.len() != inst.block_size() {
        return Err(CipherError::IvLength {
            expected: inst.block_size(),
            got: iv.len(),
        });
    }
    Ok(())
}

fn ecb_encrypt_with<C: BlockCipher>(c: &C, buf: &mut [u8]) {
    for block in buf.chunks_exact_mut(C::BLOCK_SIZE) {
        c.encrypt_block(block);
    }
}

fn ecb_decrypt_with<C: BlockCipher>(c: &C, buf: &mut [u8]) {
    for block in buf.chunks_exact_mut(C::BLOCK_SIZE) {
        c.decrypt_block(block);
    }
}

fn cbc_encrypt_with<C: BlockCipher>(c: &C, iv: &[u8], buf: &mut [u8]) {
    let mut prev = [0u8; 16];
    let prev = &mut prev[..C::BLOCK_SIZE];
    prev.copy_from_slice(iv);
    for block in buf.chunks_exact_mut(C::BLOCK_SIZE) {
        for (b, p) in block.iter_mut().zip(prev.iter()) {
            *b ^= p;
        }
        c.encrypt_block(block);
        prev.copy_from_slice(block);
    }
}

fn cbc_decrypt_with<C: BlockCipher>(c: &C, iv: &[u8], buf: &mut [u8]) {
    let mut prev = [0u8; 16];
    let mut saved = [0u8; 16];
    let prev = &mut prev[..C::BLOCK_SIZE];
    let saved = &mut saved[..C::BLOCK_SIZE];
    prev.copy_from_slice(iv);
    for block in buf.chunks_exact_mut(C::BLOCK_SIZE) {
        saved.copy_from_slice(block);
        c.decrypt_block(block);
        for (b, p) in block.iter_mut().zip(prev.iter()) {
            *b ^= p;
        }
        prev.copy_from_slice(saved);
    }
}

/// Encrypts a block-aligned buffer in place, without padding.
pub fn ecb_encrypt_blocks(inst: &BlockCipherInstance, buf: &mut [u8]) -> Result<()> {
    check_aligned(inst, buf)?;
    with_block_cipher!(inst, |c| ecb_encrypt_with(c, buf));
    Ok(())
}

pub fn ecb_decrypt_blocks(inst: &BlockCipherInstance, buf: &mut [u8]) -> Result<()> {
    check_aligned(inst, buf)?;
    with_block_cipher!(inst, |c| ecb_decrypt_with(c, buf));
    Ok(())
}

pub fn cbc_encrypt_blocks(inst: &BlockCipherInstance, iv: &[u8], buf: &mut [u8]) -> Result<()> {
    check_iv(inst, iv)?;
    check_aligned(inst, buf)?;
    with_block_cipher!(inst, |c| cbc_encrypt_with(c, iv, buf));
    Ok(())
}

pub fn cbc_decrypt_blocks(inst: &BlockCipherInstance, iv: &[u8], buf: &mut [u8]) -> Result<()> {
    check_iv(inst, iv)?;
    check_aligned(inst, buf)?;
    with_block_cipher!(inst, |c| cbc_decrypt_with(c, iv, buf));
    Ok(())
}

// Empty buffers are fine here; only the padded APIs demand a block.
fn check_aligned(inst: &BlockCipherInstance, buf: &[u8]) -> Result<()> {
    let block_size = inst.block_size();
    if !buf.len().is_multiple_of(block_size) {
        return Err(CipherError::BlockLength {
            block_size,
            got: buf.len(),
        });
    }
    Ok(())
}

pub fn ecb_encrypt(inst: &BlockCipherInstance, plaintext: &[u8]) -> Vec<u8> {
    let mut buf = pkcs7_pad(plaintext, inst.block_size());
    with_block_cipher!(inst, |c| ecb_encrypt_with(c, &mut buf));
    buf
}

pub fn ecb_decrypt(inst: &BlockCipherInstance, ciphertext: &[u8]) -> Result<Vec<u8>> {
    check_blocks(ciphertext, inst.block_size())?;
    let mut buf = ciphertext.to_vec();
    with_block_cipher!(inst, |c| ecb_decrypt_with(c, &mut buf));
    let len = pkcs7_unpadded_len(&buf, inst.block_size())?;
    buf.truncate(len);
    Ok(buf)
}

pub fn cbc_encrypt(inst: &BlockCipherInstance, iv: &[u8], plaintext: &[u8]) -> Result<Vec<u8>> {
    check_iv(inst, iv)?;
    let mut buf = pkcs7_pad(plaintext, inst.block_size());
    with_block_cipher!(inst, |c| cbc_encrypt_with(c, iv, &mut buf));
    Ok(buf)
}

pub fn cbc_decrypt(inst: &BlockCipherInstance, iv: &[u8], ciphertext: &[u8]) -> Result<Vec<u8>> {
    check_iv(inst, iv)?;
    check_blocks(ciphertext, inst.block_size())?;
    let mut buf = ciphertext.to_vec();
    with_block_cipher!(inst, |c| cbc_decrypt_with(c, iv, &mut buf));
    let len = pkcs7_unpadded_len(&buf, inst.block_size())?;
    buf.truncate(len);
    Ok(buf)
}
