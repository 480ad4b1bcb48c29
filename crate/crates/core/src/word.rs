//! Packed binary words.
//!
//! Bit index 0 of the packed representation holds `x_1`, the first written
//! cell, so the packed integer equals `sum 2^(i-1) x_i`. That is the decimal
//! vertex encoding used by the coloring file format as well.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A binary vector of length 1..=64.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitWord {
    len: u8,
    bits: u64,
}

pub const MAX_WORD_LEN: usize = 64;

#[inline]
pub(crate) fn len_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl BitWord {
    /// Builds a word from packed bits; bits above `len` must be clear.
    pub fn new(len: usize, bits: u64) -> Result<Self> {
        if len == 0 || len > MAX_WORD_LEN {
            return Err(Error::InvalidLength(len));
        }
        if bits & !len_mask(len) != 0 {
            return Err(Error::Precondition(format!("bits {bits:#x} exceed length {len}")));
        }
        Ok(Self { len: len as u8, bits })
    }

    pub(crate) fn from_raw(len: usize, bits: u64) -> Self {
        debug_assert!((1..=MAX_WORD_LEN).contains(&len));
        debug_assert_eq!(bits & !len_mask(len), 0);
        Self { len: len as u8, bits }
    }

    pub fn zeros(len: usize) -> Result<Self> {
        Self::new(len, 0)
    }

    /// `values[0]` is `x_1`. Every entry must be 0 or 1.
    pub fn from_bits(values: &[u8]) -> Result<Self> {
        let len = values.len();
        if len == 0 || len > MAX_WORD_LEN {
            return Err(Error::InvalidLength(len));
        }
        let mut bits = 0u64;
        for (i, &v) in values.iter().enumerate() {
            match v {
                0 => {}
                1 => bits |= 1 << i,
                other => return Err(Error::Precondition(format!("bit value {other} is not binary"))),
            }
        }
        Ok(Self::from_raw(len, bits))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    /// Always false; words have at least one bit.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Zero-based access: `bit(0)` is `x_1`.
    #[inline]
    pub fn bit(&self, index: usize) -> u8 {
        ((self.bits >> index) & 1) as u8
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len()).map(|i| self.bit(i)).collect()
    }

    #[inline]
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Positions (zero-based) holding a one.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.bit(i) == 1)
    }

    pub fn hamming_distance(&self, other: &Self) -> Result<u32> {
        self.check_same_len(other)?;
        Ok((self.bits ^ other.bits).count_ones())
    }

    pub(crate) fn check_same_len(&self, other: &Self) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(())
    }

    /// Mask of boundaries: bit `i` (for `i >= 1`) is set when `x_{i+1} != x_i`
    /// in one-based terms, i.e. the cell at `i` differs from its predecessor.
    #[inline]
    pub(crate) fn boundary_mask(&self) -> u64 {
        (self.bits ^ (self.bits << 1)) & len_mask(self.len()) & !1
    }

    /// Number of maximal runs of equal symbols.
    pub fn runs(&self) -> u32 {
        1 + self.boundary_mask().count_ones()
    }

    /// Adjacent-difference map: output bit `i` is `x_i + x_{i+1} mod 2`.
    pub fn psi(&self) -> Result<Self> {
        if self.len() < 2 {
            return Err(Error::Precondition("psi needs length >= 2".into()));
        }
        let d = (self.bits ^ (self.bits >> 1)) & len_mask(self.len() - 1);
        Ok(Self::from_raw(self.len() - 1, d))
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.check_same_len(other)?;
        Ok(Self::from_raw(self.len(), self.bits ^ other.bits))
    }

    /// Word `(b, x_1, ..., x_n)`.
    pub fn prepend(&self, b: u8) -> Result<Self> {
        if self.len() >= MAX_WORD_LEN {
            return Err(Error::InvalidLength(self.len() + 1));
        }
        Ok(Self::from_raw(self.len() + 1, (self.bits << 1) | u64::from(b & 1)))
    }

    /// Word `(x_2, ..., x_n)`.
    pub fn drop_first(&self) -> Result<Self> {
        if self.len() < 2 {
            return Err(Error::InvalidLength(0));
        }
        Ok(Self::from_raw(self.len() - 1, self.bits >> 1))
    }

    /// The `index`-th block of `width` consecutive cells, packed the same way.
    pub fn block(&self, index: usize, width: usize) -> Result<Self> {
        if width == 0 || (index + 1) * width > self.len() {
            return Err(Error::Precondition(format!(
                "block {index} of width {width} outside length {}",
                self.len()
            )));
        }
        Ok(Self::from_raw(width, (self.bits >> (index * width)) & len_mask(width)))
    }

    /// All words of a given length, in packed-integer order.
    pub fn all(len: usize) -> Result<impl Iterator<Item = BitWord>> {
        if len == 0 || len >= MAX_WORD_LEN {
            return Err(Error::InvalidLength(len));
        }
        Ok((0..(1u64 << len)).map(move |b| BitWord::from_raw(len, b)))
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.bit(i) == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitWord({self})")
    }
}

impl FromStr for BitWord {
    type Err = Error;

    /// First character is `x_1`.
    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Precondition(format!("invalid binary digit {other:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::from_bits(&values)
    }
}
