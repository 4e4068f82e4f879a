//! Classical reference ciphers: a monoalphabetic shift and a keyword-driven
//! polyalphabetic shift.
//!
//! Both exist as baselines to compare the digit-reversal scheme against.
//! They follow the common classroom conventions: the shift cipher takes
//! lowercase plaintext and emits uppercase, the keyword cipher keeps
//! everything lowercase and counts key letters from one (`a` shifts by 1, so
//! `z` wraps to an identity shift).

use crate::error::{Error, Result};

const ALPHABET_LEN: u32 = 26;

/// A fixed rotation amount, `0..=25`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftKey(u8);

impl ShiftKey {
    pub fn new(shift: u32) -> Result<Self> {
        if shift >= ALPHABET_LEN {
            return Err(Error::InvalidShift(shift));
        }
        Ok(ShiftKey(shift as u8))
    }

    pub fn value(&self) -> u8 {
        self.0
    }
}

/// A repeating lowercase keyword; each letter shifts by its alphabet position
/// counted from one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeywordKey {
    shifts: Vec<u32>,
    word: String,
}

impl KeywordKey {
    pub fn new(word: &str) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::InvalidKeyword("keyword is empty".to_string()));
        }
        let mut shifts = Vec::with_capacity(word.len());
        for ch in word.chars() {
            if !ch.is_ascii_lowercase() {
                return Err(Error::InvalidKeyword(format!(
                    "keyword must be lowercase a-z, found {ch:?}"
                )));
            }
            shifts.push((ch as u32 - 'a' as u32 + 1) % ALPHABET_LEN);
        }
        Ok(KeywordKey {
            shifts,
            word: word.to_string(),
        })
    }

    pub fn word(&self) -> &str {
        &self.word
    }

    fn shift_for_position(&self, i: usize) -> u32 {
        self.shifts[i % self.shifts.len()]
    }
}

fn expect_range(position: usize, ch: char, min: char, max: char) -> Result<u32> {
    if ch < min || ch > max {
        return Err(Error::AlphabetViolation {
            position,
            ch,
            code: ch as u32,
            min: min as u32,
            max: max as u32,
        });
    }
    Ok(ch as u32 - min as u32)
}

/// Shift-encrypt lowercase text, producing uppercase.
pub fn mono_encrypt(plaintext: &str, key: ShiftKey) -> Result<String> {
    let mut out = String::with_capacity(plaintext.len());
    for (position, ch) in plaintext.chars().enumerate() {
        let index = expect_range(position, ch, 'a', 'z')?;
        let shifted = (index + u32::from(key.value())) % ALPHABET_LEN;
        out.push(char::from(b'A' + shifted as u8));
    }
    Ok(out)
}

/// Invert [`mono_encrypt`]: uppercase in, lowercase out.
pub fn mono_decrypt(ciphertext: &str, key: ShiftKey) -> Result<String> {
    let mut out = String::with_capacity(ciphertext.len());
    for (position, ch) in ciphertext.chars().enumerate() {
        let index = expect_range(position, ch, 'A', 'Z')?;
        let unshifted = (index + ALPHABET_LEN - u32::from(key.value())) % ALPHABET_LEN;
        out.push(char::from(b'a' + unshifted as u8));
    }
    Ok(out)
}

/// Keyword-encrypt lowercase text, cycling the keyword's one-based shifts.
pub fn keyword_encrypt(plaintext: &str, key: &KeywordKey) -> Result<String> {
    let mut out = String::with_capacity(plaintext.len());
    for (position, ch) in plaintext.chars().enumerate() {
        let index = expect_range(position, ch, 'a', 'z')?;
        let shifted = (index + key.shift_for_position(position)) % ALPHABET_LEN;
        out.push(char::from(b'a' + shifted as u8));
    }
    Ok(out)
}

/// Invert [`keyword_encrypt`].
pub fn keyword_decrypt(ciphertext: &str, key: &KeywordKey) -> Result<String> {
    let mut out = String::with_capacity(ciphertext.len());
    for (position, ch) in ciphertext.chars().enumerate() {
        let index = expect_range(position, ch, 'a', 'z')?;
        let unshifted = (index + ALPHABET_LEN - key.shift_for_position(position)) % ALPHABET_LEN;
        out.push(char::from(b'a' + unshifted as u8));
    }
    Ok(out)
}
