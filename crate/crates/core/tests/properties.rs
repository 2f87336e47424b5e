use cipherbench_core::modes::{
    cbc_decrypt, cbc_encrypt, ecb_decrypt, ecb_encrypt, pkcs7_pad, pkcs7_unpad,
};
use cipherbench_core::{schedule, stream_xor, validate_key, CipherId, ModeId};
use proptest::prelude::*;

fn key_for(cipher: CipherId, seed: &[u8]) -> Vec<u8> {
    seed.iter()
        .cycle()
        .take(cipher.key_len())
        .copied()
        .collect()
}

fn cipher_mode() -> impl Strategy<Value = (CipherId, ModeId)> {
    (0usize..8).prop_flat_map(|i| {
        let cipher = CipherId::ALL[i];
        (Just(cipher), prop::sample::select(cipher.modes().to_vec()))
    })
}

proptest! {
    #[test]
    fn pkcs7_unpad_inverts_pad(data in prop::collection::vec(any::<u8>(), 0..100), bs in prop::sample::select(vec![8usize, 16])) {
        let padded = pkcs7_pad(&data, bs);
        prop_assert_eq!(padded.len() % bs, 0);
        prop_assert!(padded.len() > data.len() && padded.len() <= data.len() + bs);
        prop_assert_eq!(pkcs7_unpad(&padded, bs).unwrap(), &data[..]);
    }

    #[test]
    fn every_mode_round_trips(
        (cipher, mode) in cipher_mode(),
        seed in prop::collection::vec(any::<u8>(), 1..32),
        iv in prop::array::uniform16(any::<u8>()),
        data in prop::collection::vec(any::<u8>(), 0..300),
    ) {
        let key = validate_key(cipher, &key_for(cipher, &seed)).unwrap();
        let back = match mode {
            ModeId::Ecb => {
                let inst = schedule(&key).unwrap();
                ecb_decrypt(&inst, &ecb_encrypt(&inst, &data)).unwrap()
            }
            ModeId::Cbc => {
                let inst = schedule(&key).unwrap();
                let iv = &iv[..inst.block_size()];
                cbc_decrypt(&inst, iv, &cbc_encrypt(&inst, iv, &data).unwrap()).unwrap()
            }
            ModeId::Stream => {
                let nonce = (cipher == CipherId::ChaCha20).then_some(&iv[..12]);
                let ct = stream_xor(&key, nonce, &data).unwrap();
                prop_assert_eq!(ct.len(), data.len());
                stream_xor(&key, nonce, &ct).unwrap()
            }
        };
        prop_assert_eq!(back, data);
    }

    #[test]
    fn key_length_is_exact(i in 0usize..8, len in 0usize..80) {
        let cipher = CipherId::ALL[i];
        prop_assert_eq!(validate_key(cipher, &vec![0; len]).is_ok(), len == cipher.key_len());
    }
}
