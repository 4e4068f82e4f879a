//! Fixed-width decimal digit reversal of character codes.
//!
//! A character code is written as a zero-padded decimal string of a fixed
//! width and read back right-to-left. Working on padded strings rather than
//! bare integers is what makes the operation an involution: reversing 80 at
//! width 2 gives "08" (value 8), and reversing 8 back at width 2 restores 80.
//! Reversing bare integers would collapse every code ending in zero.
//!
//! Two named configurations are provided:
//!
//! * `paper`: width 2, codes 10..=99 (the original two-digit regime)
//! * `extended`: width 3, codes 0..=255 (full byte alphabets)
//!
//! The same two-digit code reverses differently at different widths
//! (82 -> 28 at width 2, but 82 -> 280 at width 3), so every reversed value
//! carries its width and the two may not be mixed.

use std::fmt;

use crate::error::{Error, Result};

/// Digit-reversal configuration: digit width plus the inclusive code range
/// of the alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodecConfig {
    mode_name: String,
    width: u8,
    min_code: u32,
    max_code: u32,
}

impl CodecConfig {
    /// Width-2 mode over codes 10..=99. Covers uppercase letters, digits,
    /// and most punctuation; every code is exactly two digits.
    pub fn paper() -> Self {
        CodecConfig {
            mode_name: "paper".to_string(),
            width: 2,
            min_code: 10,
            max_code: 99,
        }
    }

    /// Width-3 mode over codes 0..=255, covering full single-byte alphabets.
    pub fn extended() -> Self {
        CodecConfig {
            mode_name: "extended".to_string(),
            width: 3,
            min_code: 0,
            max_code: 255,
        }
    }

    /// Look up one of the named modes.
    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "paper" => Some(Self::paper()),
            "extended" => Some(Self::extended()),
            _ => None,
        }
    }

    /// Build a custom configuration. `width` must be 2 or 3 and the code
    /// range must fit in `width` digits.
    pub fn custom(mode_name: &str, width: u8, min_code: u32, max_code: u32) -> Result<Self> {
        if !(width == 2 || width == 3) {
            return Err(Error::InvalidConfig(format!(
                "width must be 2 or 3, got {width}"
            )));
        }
        if min_code > max_code {
            return Err(Error::InvalidConfig(format!(
                "min_code {min_code} exceeds max_code {max_code}"
            )));
        }
        let limit = 10u32.pow(u32::from(width));
        if max_code >= limit {
            return Err(Error::InvalidConfig(format!(
                "max_code {max_code} does not fit in {width} digits"
            )));
        }
        if mode_name.is_empty() {
            return Err(Error::InvalidConfig("mode name must not be empty".into()));
        }
        Ok(CodecConfig {
            mode_name: mode_name.to_string(),
            width,
            min_code,
            max_code,
        })
    }

    pub fn mode_name(&self) -> &str {
        &self.mode_name
    }

    pub fn width(&self) -> u8 {
        self.width
    }

    pub fn min_code(&self) -> u32 {
        self.min_code
    }

    pub fn max_code(&self) -> u32 {
        self.max_code
    }

    /// Exclusive upper bound on any value of this width: `10^width`.
    pub fn code_limit(&self) -> u32 {
        10u32.pow(u32::from(self.width))
    }

    pub fn contains_code(&self, code: u32) -> bool {
        (self.min_code..=self.max_code).contains(&code)
    }

    /// Reverse the zero-padded `width`-digit decimal string of `code`.
    pub fn reverse_code(&self, code: u32) -> Result<ReversedCode> {
        if !self.contains_code(code) {
            return Err(Error::CodeOutOfRange {
                code,
                min: self.min_code,
                max: self.max_code,
            });
        }
        Ok(ReversedCode {
            value: reverse_fixed_width(code, self.width),
            width: self.width,
        })
    }

    /// Invert [`reverse_code`](Self::reverse_code). Fails if the recovered
    /// code falls outside the alphabet, which signals a wrong key or a
    /// corrupt ciphertext.
    pub fn unreverse_code(&self, rc: ReversedCode) -> Result<u32> {
        if rc.width != self.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: rc.width,
            });
        }
        let code = reverse_fixed_width(rc.value, self.width);
        if !self.contains_code(code) {
            return Err(Error::DecodedCodeOutOfRange {
                code,
                min: self.min_code,
                max: self.max_code,
            });
        }
        Ok(code)
    }

    /// Check that every character of `text` lies in the alphabet.
    pub fn validate_text(&self, text: &str) -> Result<()> {
        for (position, ch) in text.chars().enumerate() {
            self.char_code(position, ch)?;
        }
        Ok(())
    }

    /// Code of `ch`, or an [`Error::AlphabetViolation`] naming `position`.
    pub fn char_code(&self, position: usize, ch: char) -> Result<u32> {
        let code = ch as u32;
        if !self.contains_code(code) {
            return Err(Error::AlphabetViolation {
                position,
                ch,
                code,
                min: self.min_code,
                max: self.max_code,
            });
        }
        Ok(code)
    }

    /// Character for an in-alphabet code. Codes are bounded by `10^3 - 1`,
    /// well below the surrogate range, so the conversion cannot fail.
    pub fn code_to_char(code: u32) -> char {
        char::from_u32(code).expect("codes below 1000 are valid scalars")
    }

    /// Smallest reversed value any alphabet code can take.
    pub fn min_reversed(&self) -> u32 {
        (self.min_code..=self.max_code)
            .map(|c| reverse_fixed_width(c, self.width))
            .min()
            .expect("code range is non-empty")
    }

    /// Largest reversed value any alphabet code can take.
    pub fn max_reversed(&self) -> u32 {
        (self.min_code..=self.max_code)
            .map(|c| reverse_fixed_width(c, self.width))
            .max()
            .expect("code range is non-empty")
    }
}

impl Default for CodecConfig {
    /// The width-2 [`paper`](Self::paper) mode.
    fn default() -> Self {
        CodecConfig::paper()
    }
}

/// A code after fixed-width digit reversal. Keeps its width so the reversal
/// stays invertible: numerically equal values at different widths are
/// different reversed codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReversedCode {
    value: u32,
    width: u8,
}

impl ReversedCode {
    pub fn new(value: u64, width: u8) -> Result<Self> {
        if !(width == 2 || width == 3) {
            return Err(Error::InvalidConfig(format!(
                "width must be 2 or 3, got {width}"
            )));
        }
        if value >= 10u64.pow(u32::from(width)) {
            return Err(Error::ReversedValueTooWide { value, width });
        }
        Ok(ReversedCode {
            value: value as u32,
            width,
        })
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn width(&self) -> u8 {
        self.width
    }

    /// Zero-padded digit string, e.g. value 8 at width 2 renders as "08".
    pub fn digits(&self) -> String {
        format!("{:0width$}", self.value, width = usize::from(self.width))
    }
}

impl fmt::Display for ReversedCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.digits())
    }
}

/// Reverse exactly `width` decimal digits of `value`.
fn reverse_fixed_width(value: u32, width: u8) -> u32 {
    let mut rem = value;
    let mut out = 0;
    for _ in 0..width {
        out = out * 10 + rem % 10;
        rem /= 10;
    }
    out
}
