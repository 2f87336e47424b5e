//! RC4 and ChaCha20, and XOR application of their keystreams.

mod chacha20;
mod rc4;

pub use chacha20::{quarter_round, ChaChaState, NONCE_LEN, SIGMA};
pub use rc4::Rc4;

use crate::error::{CipherError, Result};
use crate::params::{CipherId, KeyMaterial};

/// A keyed keystream generator. Owns mutable state, so one instance must
/// not be shared between concurrent users.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug)]
pub enum StreamState {
    Rc4(Rc4),
    ChaCha20(ChaChaState),
}

impl StreamState {
    /// RC4 takes no nonce; ChaCha20 requires a 12-byte nonce and starts at
    /// block counter 0.
    pub fn new(key: &KeyMaterial, nonce: Option<&[u8]>) -> Result<StreamState> {
        match (key.cipher(), nonce) {
            (CipherId::Rc4, None) => Ok(StreamState::Rc4(Rc4::new(key)?)),
            (CipherId::Rc4, Some(_)) => Err(CipherError::Nonce {
                cipher: CipherId::Rc4,
                reason: "RC4 does not take a nonce".into(),
            }),
            (CipherId::ChaCha20, Some(nonce)) => {
                Ok(StreamState::ChaCha20(ChaChaState::new(key, nonce, 0)?))
            }
            (CipherId::ChaCha20, None) => Err(CipherError::Nonce {
                cipher: CipherId::ChaCha20,
                reason: format!("a {NONCE_LEN}-byte nonce is required"),
            }),
            (cipher, _) => Err(CipherError::WrongFamily {
                cipher,
                expected: "stream",
            }),
        }
    }

    pub fn apply_keystream(&mut self, data: &mut [u8]) {
        match self {
            StreamState::Rc4(s) => s.apply_keystream(data),
            StreamState::ChaCha20(s) => s.apply_keystream(data),
        }
    }
}

/// Encrypts or decrypts `data` (the operation is its own inverse).
pub fn stream_xor(key: &KeyMaterial, nonce: Option<&[u8]>, data: &[u8]) -> Result<Vec<u8>> {
    let mut state = StreamState::new(key, nonce)?;
    let mut out = data.to_vec();
    state.apply_keystream(&mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::validate_key;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_key(cipher: CipherId, rng: &mut ChaCha8Rng) -> KeyMaterial {
        let mut key = vec![0u8; cipher.key_len()];
        rng.fill(&mut key[..]);
        validate_key(cipher, &key).unwrap()
    }

    fn nonce_for(cipher: CipherId, rng: &mut ChaCha8Rng) -> Option<Vec<u8>> {
        (cipher == CipherId::ChaCha20).then(|| rng.gen::<[u8; 12]>().to_vec())
    }

    #[test]
    fn xor_involution_and_length() {
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        for cipher in CipherId::STREAM {
            for case in 0..1000 {
                let key = random_key(cipher, &mut rng);
                let nonce = nonce_for(cipher, &mut rng);
                let len = if case < 100 {
                    case * 41
                } else {
                    rng.gen_range(0..=4096)
                };
                let mut data = vec![0u8; len];
                rng.fill(&mut data[..]);
                let ct = stream_xor(&key, nonce.as_deref(), &data).unwrap();
                assert_eq!(ct.len(), data.len());
                assert_eq!(stream_xor(&key, nonce.as_deref(), &ct).unwrap(), data);
            }
        }
    }

    #[test]
    fn keystream_cancels_between_messages() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for cipher in CipherId::STREAM {
            for _ in 0..100 {
                let key = random_key(cipher, &mut rng);
                let nonce = nonce_for(cipher, &mut rng);
                let p1: [u8; 100] = core::array::from_fn(|_| rng.gen());
                let p2: [u8; 100] = core::array::from_fn(|_| rng.gen());
                let c1 = stream_xor(&key, nonce.as_deref(), &p1).unwrap();
                let c2 = stream_xor(&key, nonce.as_deref(), &p2).unwrap();
                for i in 0..100 {
                    assert_eq!(c1[i] ^ c2[i], p1[i] ^ p2[i]);
                }
            }
        }
    }

    #[test]
    fn nonce_rules() {
        let rc4 = validate_key(CipherId::Rc4, &[1u8; 32]).unwrap();
        let chacha = validate_key(CipherId::ChaCha20, &[1u8; 32]).unwrap();
        assert!(matches!(
            stream_xor(&rc4, Some(&[0u8; 12]), b"x"),
            Err(CipherError::Nonce { .. })
        ));
        assert!(matches!(
            stream_xor(&chacha, None, b"x"),
            Err(CipherError::Nonce { .. })
        ));
        assert!(matches!(
            stream_xor(&chacha, Some(&[0u8; 8]), b"x"),
            Err(CipherError::Nonce { .. })
        ));
        let aes = validate_key(CipherId::Aes256, &[1u8; 32]).unwrap();
        assert!(matches!(
            stream_xor(&aes, None, b"x"),
            Err(CipherError::WrongFamily { .. })
        ));
    }

    #[test]
    fn chacha_sunscreen_message() {
        let key: [u8; 32] = core::array::from_fn(|i| i as u8);
        let nonce: [u8; 12] = hex::decode("000000000000004a00000000")
            .unwrap()
            .try_into()
            .unwrap();
        let mut state = ChaChaState::from_parts(&key, &nonce, 1);
        let mut msg = b"Ladies and Gentlemen of the class of '99: If I could offer you only one tip for the future, sunscreen would be it.".to_vec();
        state.apply_keystream(&mut msg);
        assert_eq!(
            hex::encode(&msg),
            "6e2e359a2568f98041ba0728dd0d6981e97e7aec1d4360c20a27afccfd9fae0b\
             f91b65c5524733ab8f593dabcd62b3571639d624e65152ab8f530c359f0861d8\
             07ca0dbf500d6a6156a38e088a22b65e52bc514d16ccf806818ce91ab7793736\
             5af90bbf74a35be6b40b8eedf2785e42874d"
        );
        assert_eq!(state.counter(), 3);
    }
}
