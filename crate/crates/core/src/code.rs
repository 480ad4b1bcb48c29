//! Binary codebooks and the exhaustive correctness oracle.

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, Write};

use rayon::prelude::*;

use crate::channel::{ball, ball_raw, balls_disjoint, ErrorModel};
use crate::error::{Error, Result};
use crate::word::BitWord;

/// A set of distinct binary words of one common length, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CodeBook {
    length: usize,
    words: Vec<BitWord>,
}

impl fmt::Debug for CodeBook {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CodeBook")
            .field("length", &self.length)
            .field("size", &self.words.len())
            .finish()
    }
}

impl CodeBook {
    /// Rejects mismatched lengths and duplicate words.
    pub fn new(length: usize, mut words: Vec<BitWord>) -> Result<Self> {
        if length == 0 || length > crate::word::MAX_WORD_LEN {
            return Err(Error::InvalidLength(length));
        }
        if let Some(bad) = words.iter().find(|w| w.len() != length) {
            return Err(Error::LengthMismatch {
                expected: length,
                got: bad.len(),
            });
        }
        words.sort_unstable();
        if let Some(pair) = words.windows(2).find(|p| p[0] == p[1]) {
            return Err(Error::Precondition(format!("duplicate codeword {}", pair[0])));
        }
        Ok(Self { length, words })
    }

    /// Like [`CodeBook::new`] but silently drops duplicates.
    pub fn from_words_dedup(length: usize, mut words: Vec<BitWord>) -> Result<Self> {
        words.sort_unstable();
        words.dedup();
        Self::new(length, words)
    }

    pub(crate) fn from_sorted_unchecked(length: usize, words: Vec<BitWord>) -> Self {
        debug_assert!(words.windows(2).all(|p| p[0] < p[1]));
        Self { length, words }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[BitWord] {
        &self.words
    }

    pub fn contains(&self, x: &BitWord) -> bool {
        self.words.binary_search(x).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BitWord> {
        self.words.iter()
    }
}

impl<'a> IntoIterator for &'a CodeBook {
    type Item = &'a BitWord;
    type IntoIter = std::slice::Iter<'a, BitWord>;

    fn into_iter(self) -> Self::IntoIter {
        self.words.iter()
    }
}

/// Two codewords whose balls meet, plus one received word they share.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Conflict {
    pub first: BitWord,
    pub second: BitWord,
    pub shared: BitWord,
}

impl fmt::Display for Conflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} and {} both reach {}", self.first, self.second, self.shared)
    }
}

/// Checks that all balls are pairwise disjoint, stopping at the first
/// received word claimed by two codewords. Codewords are scanned in sorted
/// order, so the reported conflict is deterministic.
pub fn verify(code: &CodeBook, model: ErrorModel) -> std::result::Result<(), Conflict> {
    let mut owner: HashMap<u64, usize> = HashMap::new();
    let mut buf = Vec::new();
    for (idx, x) in code.words.iter().enumerate() {
        ball_raw(x, model, &mut buf);
        for &v in &buf {
            if let Some(&prev) = owner.get(&v) {
                if prev != idx {
                    return Err(Conflict {
                        first: code.words[prev],
                        second: *x,
                        shared: BitWord::from_raw(code.length, v),
                    });
                }
            } else {
                owner.insert(v, idx);
            }
        }
    }
    Ok(())
}

pub fn is_t_correcting(code: &CodeBook, model: ErrorModel) -> bool {
    verify(code, model).is_ok()
}

/// Independent pairwise oracle: intersects the sorted balls of every pair.
/// Quadratic in the code size; the pair set is split across threads.
pub fn verify_pairwise(code: &CodeBook, model: ErrorModel) -> bool {
    let words = code.words();
    (0..words.len())
        .into_par_iter()
        .all(|i| (i + 1..words.len()).all(|j| balls_disjoint(&words[i], &words[j], model).unwrap_or(false)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decoded {
    Unique(BitWord),
    /// No codeword, or more than one, has `received` in its ball.
    Ambiguous {
        matches: usize,
    },
}

/// Definitional decoder: scans every codeword's ball.
pub fn brute_force_decode(code: &CodeBook, received: &BitWord, model: ErrorModel) -> Result<Decoded> {
    if received.len() != code.length {
        return Err(Error::LengthMismatch {
            expected: code.length,
            got: received.len(),
        });
    }
    let hits: Vec<BitWord> = code
        .iter()
        .filter(|c| ball(c, model).binary_search(received).is_ok())
        .copied()
        .collect();
    Ok(match hits.as_slice() {
        [only] => Decoded::Unique(*only),
        _ => Decoded::Ambiguous { matches: hits.len() },
    })
}

fn pair_is_single_grain_safe(x: &BitWord, y: &BitWord) -> bool {
    let diff = x.bits() ^ y.bits();
    match diff.count_ones() {
        1 => diff & 1 == 1,
        2 => {
            // need i >= 1 (0-based) with both cells of (i, i+1) constant and opposite
            let n = x.len();
            (1..n.saturating_sub(1)).any(|i| {
                let xa = (x.bits() >> i) & 0b11;
                let ya = (y.bits() >> i) & 0b11;
                (xa == 0b00 && ya == 0b11) || (xa == 0b11 && ya == 0b00)
            })
        }
        0 => false,
        _ => true,
    }
}

/// The sufficient pairwise distance condition for single-grain correction.
pub fn single_grain_sufficient(code: &CodeBook) -> bool {
    let words = code.words();
    (0..words.len())
        .into_par_iter()
        .all(|i| (i + 1..words.len()).all(|j| pair_is_single_grain_safe(&words[i], &words[j])))
}

/// `{(b, c) : b in {0,1}, c in code}`.
pub fn prepend_bit_lift(code: &CodeBook) -> Result<CodeBook> {
    let mut words = Vec::with_capacity(2 * code.len());
    for c in code {
        words.push(c.prepend(0)?);
        words.push(c.prepend(1)?);
    }
    words.sort_unstable();
    Ok(CodeBook::from_sorted_unchecked(code.length + 1, words))
}

/// Drops the first cell of every word and deduplicates.
pub fn shorten_first_bit(code: &CodeBook) -> Result<CodeBook> {
    if code.length < 2 {
        return Err(Error::InvalidLength(code.length - 1));
    }
    let words = code.iter().map(|c| c.drop_first()).collect::<Result<Vec<_>>>()?;
    CodeBook::from_words_dedup(code.length - 1, words)
}

/// Reads one binary string per line; `#` lines and blank lines are skipped.
/// An empty file has no length to report, so at least one word is required.
pub fn read_code(reader: impl BufRead) -> Result<CodeBook> {
    let mut words = Vec::new();
    let mut length = None;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        let s = line.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let w: BitWord = s.parse().map_err(|e: Error| Error::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        match length {
            None => length = Some(w.len()),
            Some(l) if l != w.len() => {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("word length {} differs from {}", w.len(), l),
                })
            }
            _ => {}
        }
        words.push(w);
    }
    let length = length.ok_or(Error::Parse {
        line: 0,
        message: "no codewords found".into(),
    })?;
    CodeBook::new(length, words).map_err(|e| Error::Parse {
        line: 0,
        message: e.to_string(),
    })
}

pub fn write_code(code: &CodeBook, mut writer: impl Write) -> std::io::Result<()> {
    writeln!(writer, "# length {} size {}", code.length, code.len())?;
    for w in code {
        writeln!(writer, "{w}")?;
    }
    Ok(())
}
