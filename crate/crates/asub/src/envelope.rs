//! Self-describing ciphertext containers in a text and a binary form.
//!
//! Auto-derived keys are functions of the plaintext, so a receiver cannot
//! recompute them. The envelope carries the mode, optionally the keys
//! (`in-band`), and the ciphertext values, so a message survives transport
//! as a single unit. The `external` form omits the keys for setups where
//! they are shared out of band.
//!
//! Text form, always ending in a newline:
//!
//! ```text
//! ASUB;v=1;mode=paper;keys=in-band:1056,1155
//! (1084,1251,1094)
//! ```
//!
//! Binary form: magic `ASUB`, version byte, mode byte (1 paper, 2 extended),
//! key count byte (0 external), keys as big-endian u32, value count as
//! big-endian u32, values as big-endian u32. Both parsers are strict: a
//! non-canonical numeral, a missing newline, or a stray trailing byte is an
//! error, so every envelope has exactly one encoding.

use crate::cipher::{CipherText, KeySchedule};
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"ASUB";
const VERSION: u8 = 1;

fn mode_to_byte(name: &str) -> Result<u8> {
    match name {
        "paper" => Ok(1),
        "extended" => Ok(2),
        other => Err(Error::UnknownMode(other.to_string())),
    }
}

fn byte_to_mode(byte: u8) -> Result<&'static str> {
    match byte {
        1 => Ok("paper"),
        2 => Ok("extended"),
        other => Err(Error::UnknownMode(format!("byte {other}"))),
    }
}

/// A ciphertext packaged for transport: mode, optional in-band keys, values.
/// All keys and values must fit the 32-bit wire encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Envelope {
    mode_name: String,
    keys: Option<Vec<u64>>,
    values: Vec<u64>,
}

impl Envelope {
    pub fn new(mode_name: &str, keys: Option<Vec<u64>>, values: Vec<u64>) -> Result<Self> {
        mode_to_byte(mode_name)?;
        if let Some(keys) = &keys {
            if keys.is_empty() {
                return Err(Error::EmptyKeySchedule);
            }
            if keys.len() > 255 {
                return Err(Error::TooManyKeys(keys.len()));
            }
            for &key in keys {
                if key > u64::from(u32::MAX) {
                    return Err(Error::ValueTooLarge { value: key });
                }
            }
        }
        if values.len() as u64 > u64::from(u32::MAX) {
            return Err(Error::ValueTooLarge {
                value: values.len() as u64,
            });
        }
        for &value in &values {
            if value > u64::from(u32::MAX) {
                return Err(Error::ValueTooLarge { value });
            }
        }
        Ok(Envelope {
            mode_name: mode_name.to_string(),
            keys,
            values,
        })
    }

    /// Package a ciphertext with its keys riding along.
    pub fn in_band(ciphertext: &CipherText, schedule: &KeySchedule) -> Result<Self> {
        Envelope::new(
            ciphertext.mode_name(),
            Some(schedule.keys().to_vec()),
            ciphertext.values().to_vec(),
        )
    }

    /// Package a ciphertext alone; the receiver must already hold the keys.
    pub fn external(ciphertext: &CipherText) -> Result<Self> {
        Envelope::new(ciphertext.mode_name(), None, ciphertext.values().to_vec())
    }

    pub fn version(&self) -> u8 {
        VERSION
    }

    pub fn mode_name(&self) -> &str {
        &self.mode_name
    }

    pub fn keys(&self) -> Option<&[u64]> {
        self.keys.as_deref()
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn ciphertext(&self) -> CipherText {
        CipherText::new(self.values.clone(), &self.mode_name)
    }

    /// The in-band keys as a schedule, if present.
    pub fn schedule(&self) -> Option<KeySchedule> {
        self.keys
            .as_ref()
            .map(|k| KeySchedule::explicit(k.clone()).expect("envelope keys are non-empty"))
    }

    pub fn encode_text(&self) -> String {
        let mut out = format!("ASUB;v={VERSION};mode={};keys=", self.mode_name);
        match &self.keys {
            None => out.push_str("external"),
            Some(keys) => {
                out.push_str("in-band:");
                push_joined(&mut out, keys);
            }
        }
        out.push_str("\n(");
        push_joined(&mut out, &self.values);
        out.push_str(")\n");
        out
    }

    pub fn decode_text(text: &str) -> Result<Self> {
        let mut cur = TextCursor { text, offset: 0 };
        cur.expect("ASUB;v=")?;
        let version_offset = cur.offset;
        let version = cur.number()?;
        if version != u64::from(VERSION) {
            return Err(if version <= 255 {
                Error::UnsupportedVersion(version as u8)
            } else {
                Error::Parse {
                    offset: version_offset,
                    reason: format!("version {version} out of range"),
                }
            });
        }
        cur.expect(";mode=")?;
        let mode = cur.take_until(';').to_string();
        mode_to_byte(&mode)?;
        cur.expect(";keys=")?;
        let keys = if cur.rest().starts_with("external") {
            cur.offset += "external".len();
            None
        } else {
            cur.expect("in-band:")?;
            Some(cur.number_list()?)
        };
        cur.expect("\n")?;
        cur.expect("(")?;
        let values = if cur.rest().starts_with(')') {
            Vec::new()
        } else {
            cur.number_list()?
        };
        cur.expect(")")?;
        cur.expect("\n")?;
        if cur.offset != text.len() {
            return Err(cur.error("trailing content"));
        }
        Envelope::new(&mode, keys, values)
    }

    pub fn encode_binary(&self) -> Vec<u8> {
        let key_count = self.keys.as_ref().map_or(0, Vec::len);
        let mut out = Vec::with_capacity(11 + 4 * (key_count + self.values.len()));
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.push(mode_to_byte(&self.mode_name).expect("envelope modes are known"));
        match &self.keys {
            None => out.push(0),
            Some(keys) => {
                out.push(keys.len() as u8);
                for &key in keys {
                    out.extend_from_slice(&(key as u32).to_be_bytes());
                }
            }
        }
        out.extend_from_slice(&(self.values.len() as u32).to_be_bytes());
        for &value in &self.values {
            out.extend_from_slice(&(value as u32).to_be_bytes());
        }
        out
    }

    pub fn decode_binary(bytes: &[u8]) -> Result<Self> {
        let prefix = bytes.len().min(MAGIC.len());
        if bytes[..prefix] != MAGIC[..prefix] {
            return Err(Error::BadMagic);
        }
        if bytes.len() < MAGIC.len() {
            return Err(Error::TruncatedInput {
                needed: MAGIC.len() - bytes.len(),
            });
        }
        let mut cur = ByteCursor {
            bytes,
            offset: MAGIC.len(),
        };
        let version = cur.u8()?;
        if version != VERSION {
            return Err(Error::UnsupportedVersion(version));
        }
        let mode = byte_to_mode(cur.u8()?)?;
        let key_count = cur.u8()?;
        let keys = if key_count == 0 {
            None
        } else {
            let mut keys = Vec::with_capacity(usize::from(key_count));
            for _ in 0..key_count {
                keys.push(u64::from(cur.u32()?));
            }
            Some(keys)
        };
        let count = cur.u32()? as usize;
        let remaining = bytes.len() - cur.offset;
        let needed = count * 4;
        if remaining < needed {
            return Err(Error::TruncatedInput {
                needed: needed - remaining,
            });
        }
        if remaining > needed {
            return Err(Error::TrailingBytes {
                extra: remaining - needed,
            });
        }
        let mut values = Vec::with_capacity(count);
        for _ in 0..count {
            values.push(u64::from(cur.u32()?));
        }
        Envelope::new(mode, keys, values)
    }
}

fn push_joined(out: &mut String, items: &[u64]) {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&item.to_string());
    }
}

/// Lenient value-list parser for command-line input: optional surrounding
/// parentheses, comma-separated decimal values, whitespace tolerated.
pub fn parse_value_list(text: &str) -> Result<Vec<u64>> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(trimmed)
        .trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|item| {
            let item = item.trim();
            item.parse::<u64>().map_err(|_| Error::Parse {
                offset: item.as_ptr() as usize - text.as_ptr() as usize,
                reason: format!("bad value {item:?}"),
            })
        })
        .collect()
}

struct TextCursor<'a> {
    text: &'a str,
    offset: usize,
}

impl<'a> TextCursor<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.offset..]
    }

    fn error(&self, reason: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.offset,
            reason: reason.into(),
        }
    }

    fn expect(&mut self, literal: &str) -> Result<()> {
        if self.rest().starts_with(literal) {
            self.offset += literal.len();
            Ok(())
        } else {
            Err(self.error(format!("expected {literal:?}")))
        }
    }

    fn take_until(&mut self, stop: char) -> &'a str {
        let rest = self.rest();
        let end = rest.find(stop).unwrap_or(rest.len());
        self.offset += end;
        &rest[..end]
    }

    /// One canonical decimal numeral: no sign, no leading zero, at most
    /// `u32::MAX`.
    fn number(&mut self) -> Result<u64> {
        let rest = self.rest();
        let end = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        let digits = &rest[..end];
        if digits.is_empty() {
            return Err(self.error("expected a number"));
        }
        if digits.len() > 1 && digits.starts_with('0') {
            return Err(self.error(format!("non-canonical numeral {digits:?}")));
        }
        let value: u64 = digits
            .parse()
            .map_err(|_| self.error(format!("number {digits:?} out of range")))?;
        if value > u64::from(u32::MAX) {
            return Err(self.error(format!("number {digits:?} exceeds the 32-bit bound")));
        }
        self.offset += digits.len();
        Ok(value)
    }

    fn number_list(&mut self) -> Result<Vec<u64>> {
        let mut numbers = vec![self.number()?];
        while self.rest().starts_with(',') {
            self.offset += 1;
            numbers.push(self.number()?);
        }
        Ok(numbers)
    }
}

struct ByteCursor<'a> {
    bytes: &'a [u8],
    offset: usize,
}

impl ByteCursor<'_> {
    fn take(&mut self, n: usize) -> Result<&[u8]> {
        let remaining = self.bytes.len() - self.offset;
        if remaining < n {
            return Err(Error::TruncatedInput {
                needed: n - remaining,
            });
        }
        let slice = &self.bytes[self.offset..self.offset + n];
        self.offset += n;
        Ok(slice)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32> {
        let bytes = self.take(4)?;
        Ok(u32::from_be_bytes(bytes.try_into().expect("took 4 bytes")))
    }
}
