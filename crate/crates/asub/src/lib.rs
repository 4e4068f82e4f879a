//! Toolkit for a digit-reversal substitution cipher and its cryptanalysis.
//!
//! The scheme encodes each character as a fixed-width decimal number,
//! reverses the digits (zero padding makes this an involution), and adds a
//! key that alternates by position. The default two keys are derived from
//! the message itself: the sum of its reversed codes and the sum of its
//! plain codes.
//!
//! ```
//! use asub::{decrypt, encrypt_auto, CodecConfig};
//!
//! let config = CodecConfig::paper();
//! let (ciphertext, schedule) = encrypt_auto("RESPECTEVERYONE", &config)?;
//! assert_eq!(schedule.keys(), &[1056, 1155]);
//! assert_eq!(ciphertext.values()[0], 1084);
//! assert_eq!(decrypt(&ciphertext, &schedule, &config)?, "RESPECTEVERYONE");
//! # Ok::<(), asub::Error>(())
//! ```
//!
//! The crate splits into independent layers:
//!
//! * [`codec`]: fixed-width digit reversal of character codes
//! * [`cipher`]: key derivation, encryption, decryption
//! * [`baselines`]: classical shift and keyword ciphers for comparison
//! * [`analysis`]: frequency scoring and key-recovery attacks
//! * [`envelope`]: text and binary wire formats for ciphertexts
//! * [`net`]: a framed TCP demo of envelopes in motion
//!
//! Each capability has a runnable demo under `examples/`; start with
//! `cargo run --example walkthrough`.

pub mod analysis;
pub mod baselines;
pub mod cipher;
pub mod codec;
pub mod envelope;
pub mod error;
pub mod net;

pub use analysis::{
    chi_squared_score, ciphertext_only_attack, diffusion_report, known_plaintext_attack,
    AttackOptions, AttackReport, Candidate, DiffusionReport, FrequencyTable, RecoveredSchedule,
};
pub use baselines::{
    keyword_decrypt, keyword_encrypt, mono_decrypt, mono_encrypt, KeywordKey, ShiftKey,
};
pub use cipher::{decrypt, encrypt, encrypt_auto, CipherText, Derivation, KeySchedule};
pub use codec::{CodecConfig, ReversedCode};
pub use envelope::Envelope;
pub use error::{Error, Result};
pub use net::{NetError, PlaintextHook, SendOptions, Server, ServerOptions};
