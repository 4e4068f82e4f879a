//! Key derivation and the alternating-key substitution cipher.
//!
//! Encryption reverses each character code at the configured width and adds
//! one key from the schedule, cycling through the keys by position: with two
//! keys, even positions (0-based) get the first key and odd positions the
//! second. The two-key schedule can be derived from the plaintext itself:
//! the first key is the sum of all reversed codes, the second the sum of the
//! plain codes. Derived keys depend on the message, so a receiver cannot
//! recompute them; they must travel with the ciphertext (see
//! [`crate::envelope`]) or be agreed out of band.
//!
//! Addition is plain integer addition with no modulus, so decryption
//! subtracting a too-large key is a hard error rather than a silent wrap.

use std::fmt;

use crate::codec::{CodecConfig, ReversedCode};
use crate::error::{Error, Result};

/// How a key schedule came to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Derivation {
    /// Two keys summed from the plaintext's reversed and plain codes.
    AutoFromPlaintext,
    /// Keys supplied by the caller.
    Explicit,
}

/// Ordered keys applied cyclically by position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeySchedule {
    keys: Vec<u64>,
    derivation: Derivation,
}

impl KeySchedule {
    /// Derive the two-key schedule from a plaintext: the first key is the sum
    /// of reversed codes, the second the sum of plain codes. The empty text
    /// derives `(0, 0)`.
    pub fn derive(plaintext: &str, config: &CodecConfig) -> Result<Self> {
        let mut reversed_sum: u64 = 0;
        let mut plain_sum: u64 = 0;
        for (position, ch) in plaintext.chars().enumerate() {
            let code = config.char_code(position, ch)?;
            reversed_sum += u64::from(config.reverse_code(code)?.value());
            plain_sum += u64::from(code);
        }
        Ok(KeySchedule {
            keys: vec![reversed_sum, plain_sum],
            derivation: Derivation::AutoFromPlaintext,
        })
    }

    /// Build a schedule from caller-supplied keys. Any number of keys from
    /// one upward is accepted; auto derivation exists only for the two-key
    /// form.
    pub fn explicit(keys: Vec<u64>) -> Result<Self> {
        if keys.is_empty() {
            return Err(Error::EmptyKeySchedule);
        }
        Ok(KeySchedule {
            keys,
            derivation: Derivation::Explicit,
        })
    }

    pub fn keys(&self) -> &[u64] {
        &self.keys
    }

    pub fn derivation(&self) -> Derivation {
        self.derivation
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Key applied at ciphertext position `i`: the keys cycle, so this is
    /// `keys[i mod n]`.
    pub fn key_for_position(&self, i: usize) -> u64 {
        self.keys[i % self.keys.len()]
    }
}

impl fmt::Display for KeySchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, key) in self.keys.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{key}")?;
        }
        Ok(())
    }
}

/// An ordered sequence of ciphertext values, tagged with the codec mode that
/// produced it so decryption cannot silently mix widths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CipherText {
    values: Vec<u64>,
    mode_name: String,
}

impl CipherText {
    pub fn new(values: Vec<u64>, mode_name: &str) -> Self {
        CipherText {
            values,
            mode_name: mode_name.to_string(),
        }
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn mode_name(&self) -> &str {
        &self.mode_name
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl fmt::Display for CipherText {
    /// Parenthesized comma-separated values with no spaces, e.g. `(1084,1251)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// Encrypt `plaintext` under an existing schedule: position `i` becomes
/// `reverse(code) + keys[i mod n]`.
pub fn encrypt(
    plaintext: &str,
    schedule: &KeySchedule,
    config: &CodecConfig,
) -> Result<CipherText> {
    let mut values = Vec::with_capacity(plaintext.len());
    for (position, ch) in plaintext.chars().enumerate() {
        let code = config.char_code(position, ch)?;
        let reversed = u64::from(config.reverse_code(code)?.value());
        let value = schedule
            .key_for_position(position)
            .checked_add(reversed)
            .ok_or(Error::Overflow(position))?;
        values.push(value);
    }
    Ok(CipherText::new(values, config.mode_name()))
}

/// Derive the two-key schedule from `plaintext` and encrypt with it.
/// Returns the schedule alongside the ciphertext; without it the message
/// cannot be decrypted.
pub fn encrypt_auto(plaintext: &str, config: &CodecConfig) -> Result<(CipherText, KeySchedule)> {
    let schedule = KeySchedule::derive(plaintext, config)?;
    let ciphertext = encrypt(plaintext, &schedule, config)?;
    Ok((ciphertext, schedule))
}

/// Invert [`encrypt`]: subtract the position's key and un-reverse the
/// residue. A residue that is negative, too wide for the digit width, or
/// outside the alphabet means the key is wrong or the ciphertext corrupt.
pub fn decrypt(
    ciphertext: &CipherText,
    schedule: &KeySchedule,
    config: &CodecConfig,
) -> Result<String> {
    if ciphertext.mode_name() != config.mode_name() {
        return Err(Error::ModeMismatch {
            expected: config.mode_name().to_string(),
            found: ciphertext.mode_name().to_string(),
        });
    }
    let mut plaintext = String::with_capacity(ciphertext.len());
    for (position, &value) in ciphertext.values().iter().enumerate() {
        let key = schedule.key_for_position(position);
        let residue = value.checked_sub(key).ok_or(Error::NegativeResidue {
            position,
            value,
            subtracted: key,
        })?;
        let rc = ReversedCode::new(residue, config.width())?;
        let code = config.unreverse_code(rc)?;
        plaintext.push(CodecConfig::code_to_char(code));
    }
    Ok(plaintext)
}
