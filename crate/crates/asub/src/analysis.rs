//! Cryptanalysis of the alternating-key cipher: frequency scoring, key
//! recovery from known plaintext, and exhaustive ciphertext-only search.
//!
//! The cipher leaks structure through its additive keys. Positions sharing a
//! key class (`i mod n`) differ only by their reversed codes, so each class
//! confines its key to a narrow window: every ciphertext value must shed a
//! residue that un-reverses into the alphabet. The ciphertext-only attack
//! enumerates the surviving window for each class, decrypts every key tuple,
//! and ranks the results by chi-squared distance from English letter
//! frequencies.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::cipher::{decrypt, CipherText, KeySchedule};
use crate::codec::{CodecConfig, ReversedCode};
use crate::error::{Error, Result};

/// Relative letter frequencies for `A..=Z`, normalized to sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyTable {
    frequencies: [f64; 26],
}

impl FrequencyTable {
    /// Normalize raw non-negative weights into a table. At least one weight
    /// must be positive.
    pub fn new(weights: [f64; 26]) -> Result<Self> {
        let mut sum = 0.0;
        for (i, &w) in weights.iter().enumerate() {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidFrequencyTable(format!(
                    "weight for {} is {w}",
                    char::from(b'A' + i as u8)
                )));
            }
            sum += w;
        }
        if sum <= 0.0 {
            return Err(Error::InvalidFrequencyTable(
                "weights sum to zero".to_string(),
            ));
        }
        let mut frequencies = weights;
        for f in &mut frequencies {
            *f /= sum;
        }
        Ok(FrequencyTable { frequencies })
    }

    /// Parse the data-file format: 26 lines of `LETTER frequency`, one line
    /// per letter in any order.
    pub fn parse(text: &str) -> Result<Self> {
        let mut weights = [f64::NAN; 26];
        let mut seen = [false; 26];
        let mut lines = 0usize;
        for (number, line) in text.lines().enumerate() {
            lines += 1;
            let mut parts = line.split_whitespace();
            let letter = parts.next().unwrap_or("");
            let value = parts.next().unwrap_or("");
            if parts.next().is_some() || letter.len() != 1 {
                return Err(Error::InvalidFrequencyTable(format!(
                    "line {}: expected LETTER frequency, got {line:?}",
                    number + 1
                )));
            }
            let ch = letter.chars().next().unwrap();
            if !ch.is_ascii_uppercase() {
                return Err(Error::InvalidFrequencyTable(format!(
                    "line {}: letter must be A-Z, got {ch:?}",
                    number + 1
                )));
            }
            let index = (ch as u8 - b'A') as usize;
            if seen[index] {
                return Err(Error::InvalidFrequencyTable(format!(
                    "line {}: duplicate letter {ch}",
                    number + 1
                )));
            }
            let frequency: f64 = value.parse().map_err(|_| {
                Error::InvalidFrequencyTable(format!(
                    "line {}: bad frequency {value:?}",
                    number + 1
                ))
            })?;
            seen[index] = true;
            weights[index] = frequency;
        }
        if lines != 26 || seen.iter().any(|&s| !s) {
            return Err(Error::InvalidFrequencyTable(format!(
                "expected 26 letter lines, got {lines}"
            )));
        }
        FrequencyTable::new(weights)
    }

    /// The bundled English table.
    pub fn english() -> &'static FrequencyTable {
        static TABLE: OnceLock<FrequencyTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            FrequencyTable::parse(include_str!("../data/english_freq_v1.txt"))
                .expect("bundled frequency table is valid")
        })
    }

    pub fn frequencies(&self) -> &[f64; 26] {
        &self.frequencies
    }

    pub fn expected(&self, letter: char) -> Option<f64> {
        if letter.is_ascii_uppercase() {
            Some(self.frequencies[(letter as u8 - b'A') as usize])
        } else {
            None
        }
    }
}

/// Chi-squared statistic of `text` against `table`. The text must be
/// non-empty uppercase `A..=Z`; lower is closer to the table.
pub fn chi_squared_score(text: &str, table: &FrequencyTable) -> Result<f64> {
    if text.is_empty() {
        return Err(Error::EmptyText);
    }
    let mut counts = [0usize; 26];
    let mut total = 0usize;
    for (position, ch) in text.chars().enumerate() {
        if !ch.is_ascii_uppercase() {
            return Err(Error::AlphabetViolation {
                position,
                ch,
                code: ch as u32,
                min: 'A' as u32,
                max: 'Z' as u32,
            });
        }
        counts[(ch as u8 - b'A') as usize] += 1;
        total += 1;
    }
    let mut score = 0.0;
    for (i, &count) in counts.iter().enumerate() {
        let expected = table.frequencies[i] * total as f64;
        if expected == 0.0 {
            if count > 0 {
                return Ok(f64::INFINITY);
            }
            continue;
        }
        let diff = count as f64 - expected;
        score += diff * diff / expected;
    }
    Ok(score)
}

/// Keys recovered per class by a known-plaintext attack. A class is `None`
/// when no ciphertext position fell in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveredSchedule {
    classes: Vec<Option<u64>>,
}

impl RecoveredSchedule {
    pub fn classes(&self) -> &[Option<u64>] {
        &self.classes
    }

    pub fn is_complete(&self) -> bool {
        self.classes.iter().all(|c| c.is_some())
    }

    /// The full schedule, if every class was observed.
    pub fn into_schedule(self) -> Option<KeySchedule> {
        let keys: Option<Vec<u64>> = self.classes.into_iter().collect();
        keys.and_then(|k| KeySchedule::explicit(k).ok())
    }
}

/// Recover the keys of an `n`-key schedule from one plaintext/ciphertext
/// pair: each position yields its class key as `value - reverse(code)`, and
/// all positions in a class must agree.
pub fn known_plaintext_attack(
    plaintext: &str,
    ciphertext: &CipherText,
    config: &CodecConfig,
    key_count: usize,
) -> Result<RecoveredSchedule> {
    if key_count == 0 {
        return Err(Error::EmptyKeySchedule);
    }
    if ciphertext.mode_name() != config.mode_name() {
        return Err(Error::ModeMismatch {
            expected: config.mode_name().to_string(),
            found: ciphertext.mode_name().to_string(),
        });
    }
    let plaintext_len = plaintext.chars().count();
    if plaintext_len != ciphertext.len() {
        return Err(Error::LengthMismatch {
            plaintext_len,
            ciphertext_len: ciphertext.len(),
        });
    }
    let mut classes: Vec<Option<(usize, u64)>> = vec![None; key_count];
    for (position, (ch, &value)) in plaintext.chars().zip(ciphertext.values()).enumerate() {
        let code = config.char_code(position, ch)?;
        let reversed = u64::from(config.reverse_code(code)?.value());
        let key = value.checked_sub(reversed).ok_or(Error::NegativeResidue {
            position,
            value,
            subtracted: reversed,
        })?;
        let class = position % key_count;
        match classes[class] {
            None => classes[class] = Some((position, key)),
            Some((first_position, first_key)) if first_key != key => {
                return Err(Error::InconsistentPair {
                    class,
                    first_position,
                    second_position: position,
                    first_key,
                    second_key: key,
                });
            }
            Some(_) => {}
        }
    }
    Ok(RecoveredSchedule {
        classes: classes.into_iter().map(|c| c.map(|(_, k)| k)).collect(),
    })
}

/// Knobs for [`ciphertext_only_attack`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AttackOptions {
    /// Assumed number of keys in the schedule.
    pub key_count: usize,
    /// Abort if the number of feasible key tuples exceeds this.
    pub limit: u64,
}

impl Default for AttackOptions {
    fn default() -> Self {
        AttackOptions {
            key_count: 2,
            limit: 1_000_000,
        }
    }
}

/// One feasible key tuple with its decryption and English-likeness score.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub schedule: KeySchedule,
    pub decoded: String,
    pub score: f64,
}

/// Outcome of a ciphertext-only search: every feasible key tuple, best first.
#[derive(Debug, Clone, PartialEq)]
pub struct AttackReport {
    pub candidates: Vec<Candidate>,
    pub search_space_size: u128,
    pub notes: Vec<String>,
}

impl AttackReport {
    /// Rank (1-based) of the given keys among the candidates.
    pub fn rank_of(&self, keys: &[u64]) -> Option<usize> {
        self.candidates
            .iter()
            .position(|c| c.schedule.keys() == keys)
            .map(|i| i + 1)
    }
}

/// Enumerate every key tuple consistent with the ciphertext and rank the
/// decryptions by [`chi_squared_score`] of their letters. Candidates are
/// sorted by score, ties broken by the lexicographically smaller key tuple.
pub fn ciphertext_only_attack(
    ciphertext: &CipherText,
    config: &CodecConfig,
    table: &FrequencyTable,
    options: &AttackOptions,
) -> Result<AttackReport> {
    if options.key_count == 0 {
        return Err(Error::EmptyKeySchedule);
    }
    if ciphertext.mode_name() != config.mode_name() {
        return Err(Error::ModeMismatch {
            expected: config.mode_name().to_string(),
            found: ciphertext.mode_name().to_string(),
        });
    }
    if ciphertext.is_empty() {
        return Err(Error::EmptyCiphertext);
    }

    let mut notes = Vec::new();
    let mut class_candidates: Vec<Vec<u64>> = Vec::with_capacity(options.key_count);
    for class in 0..options.key_count {
        let values: Vec<u64> = ciphertext
            .values()
            .iter()
            .copied()
            .skip(class)
            .step_by(options.key_count)
            .collect();
        if values.is_empty() {
            notes.push(format!(
                "class {class} has no ciphertext positions; key fixed to 0"
            ));
            class_candidates.push(vec![0]);
            continue;
        }
        let feasible = feasible_keys(&values, config);
        if feasible.is_empty() {
            notes.push(format!("class {class} admits no keys in this mode"));
        }
        class_candidates.push(feasible);
    }

    let search_space_size: u128 = class_candidates.iter().map(|c| c.len() as u128).product();
    if search_space_size > u128::from(options.limit) {
        return Err(Error::SearchSpaceExceeded {
            size: search_space_size,
            limit: options.limit,
        });
    }

    let mut candidates = Vec::with_capacity(search_space_size as usize);
    for tuple in 0..search_space_size {
        let mut keys = vec![0u64; options.key_count];
        let mut remaining = tuple;
        for class in (0..options.key_count).rev() {
            let len = class_candidates[class].len() as u128;
            keys[class] = class_candidates[class][(remaining % len) as usize];
            remaining /= len;
        }
        let schedule = KeySchedule::explicit(keys)?;
        let decoded =
            decrypt(ciphertext, &schedule, config).expect("feasible keys decrypt by construction");
        let score = letter_score(&decoded, table);
        candidates.push(Candidate {
            schedule,
            decoded,
            score,
        });
    }
    candidates.sort_by(|a, b| {
        a.score
            .total_cmp(&b.score)
            .then_with(|| a.schedule.keys().cmp(b.schedule.keys()))
    });

    Ok(AttackReport {
        candidates,
        search_space_size,
        notes,
    })
}

/// Keys under which every value in one class sheds a residue that
/// un-reverses into the alphabet. The window is bounded by the extreme
/// reversed codes: `k` can be no less than `max(values) - max_reversed` and
/// no more than `min(values) - min_reversed`.
fn feasible_keys(values: &[u64], config: &CodecConfig) -> Vec<u64> {
    let min_value = *values.iter().min().expect("class is non-empty");
    let max_value = *values.iter().max().expect("class is non-empty");
    let low = max_value.saturating_sub(u64::from(config.max_reversed()));
    let Some(high) = min_value.checked_sub(u64::from(config.min_reversed())) else {
        return Vec::new();
    };
    if high < low {
        return Vec::new();
    }
    (low..=high)
        .filter(|&key| {
            values.iter().all(|&value| {
                ReversedCode::new(value - key, config.width())
                    .ok()
                    .and_then(|rc| config.unreverse_code(rc).ok())
                    .is_some()
            })
        })
        .collect()
}

/// Score a decryption by the chi-squared of its letters (case-folded,
/// non-letters dropped), averaged per letter and divided by the letter
/// fraction. The raw statistic grows with sample size, so averaging makes
/// projections of different lengths comparable, and the fraction weight
/// makes a decode that sheds non-letters fit that much better per letter.
/// A decode with no letters at all scores infinitely far from the table.
fn letter_score(decoded: &str, table: &FrequencyTable) -> f64 {
    let total = decoded.chars().count();
    let letters: String = decoded
        .chars()
        .filter(char::is_ascii_alphabetic)
        .map(|c| c.to_ascii_uppercase())
        .collect();
    let count = letters.chars().count();
    if count == 0 {
        return f64::INFINITY;
    }
    let chi = chi_squared_score(&letters, table).expect("projection is uppercase");
    (chi / count as f64) * (total as f64 / count as f64)
}

/// How ciphertext values spread per plaintext symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffusionReport {
    per_symbol: BTreeMap<char, BTreeMap<u64, usize>>,
    max_distinct: usize,
}

impl DiffusionReport {
    pub fn per_symbol(&self) -> &BTreeMap<char, BTreeMap<u64, usize>> {
        &self.per_symbol
    }

    /// Ciphertext values produced by `ch`, with occurrence counts.
    pub fn values_for(&self, ch: char) -> Option<&BTreeMap<u64, usize>> {
        self.per_symbol.get(&ch)
    }

    /// The largest number of distinct ciphertext values any symbol maps to.
    pub fn max_distinct(&self) -> usize {
        self.max_distinct
    }
}

/// Tally which ciphertext values each plaintext symbol produced. With an
/// `n`-key schedule a symbol can map to at most `n` distinct values.
pub fn diffusion_report(plaintext: &str, ciphertext: &CipherText) -> Result<DiffusionReport> {
    let plaintext_len = plaintext.chars().count();
    if plaintext_len != ciphertext.len() {
        return Err(Error::LengthMismatch {
            plaintext_len,
            ciphertext_len: ciphertext.len(),
        });
    }
    let mut per_symbol: BTreeMap<char, BTreeMap<u64, usize>> = BTreeMap::new();
    for (ch, &value) in plaintext.chars().zip(ciphertext.values()) {
        *per_symbol.entry(ch).or_default().entry(value).or_default() += 1;
    }
    let max_distinct = per_symbol.values().map(BTreeMap::len).max().unwrap_or(0);
    Ok(DiffusionReport {
        per_symbol,
        max_distinct,
    })
}
