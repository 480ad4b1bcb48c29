//! Error models and error balls.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::word::{len_mask, BitWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ErrorKind {
    /// Smearing at run boundaries; the first cell is never in error.
    Grain,
    /// Grain errors plus a freely flippable first cell.
    Mineral,
    /// Arbitrary bit flips.
    Random,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorKind::Grain => "grain",
            ErrorKind::Mineral => "mineral",
            ErrorKind::Random => "random",
        })
    }
}

impl FromStr for ErrorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "grain" => Ok(ErrorKind::Grain),
            "mineral" => Ok(ErrorKind::Mineral),
            "random" => Ok(ErrorKind::Random),
            other => Err(Error::Precondition(format!("unknown error model {other:?}"))),
        }
    }
}

/// An error kind together with its budget `t`.
///
/// A budget at or above the word length is accepted and simply saturates;
/// small confusability graphs such as `G_{2,2}` rely on that.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ErrorModel {
    pub kind: ErrorKind,
    pub t: u32,
}

impl ErrorModel {
    pub const fn new(kind: ErrorKind, t: u32) -> Self {
        Self { kind, t }
    }

    pub const fn grain(t: u32) -> Self {
        Self::new(ErrorKind::Grain, t)
    }

    pub const fn mineral(t: u32) -> Self {
        Self::new(ErrorKind::Mineral, t)
    }

    pub const fn random(t: u32) -> Self {
        Self::new(ErrorKind::Random, t)
    }

    /// Positions of `x` that an error of this kind may flip.
    #[inline]
    pub fn flippable(&self, x: &BitWord) -> u64 {
        match self.kind {
            ErrorKind::Grain => x.boundary_mask(),
            ErrorKind::Mineral => x.boundary_mask() | 1,
            ErrorKind::Random => len_mask(x.len()),
        }
    }
}

/// Calls `f` with every submask of `mask` having at most `t` set bits.
pub(crate) fn for_each_pattern(mask: u64, t: u32, mut f: impl FnMut(u64)) {
    fn rec(rest: u64, acc: u64, budget: u32, f: &mut impl FnMut(u64)) {
        f(acc);
        if budget == 0 {
            return;
        }
        let mut r = rest;
        while r != 0 {
            let low = r & r.wrapping_neg();
            r ^= low;
            // only bits above `low` remain in `r`, so each subset is built once
            rec(r, acc | low, budget - 1, f);
        }
    }
    rec(mask, 0, t, &mut f);
}

/// The error ball of `x`: every received word reachable with at most `t`
/// errors of the model's kind, sorted ascending. `x` is always included.
pub fn ball(x: &BitWord, model: ErrorModel) -> Vec<BitWord> {
    let mut out = Vec::new();
    let len = x.len();
    for_each_pattern(model.flippable(x), model.t, |e| {
        out.push(BitWord::from_raw(len, x.bits() ^ e));
    });
    out.sort_unstable();
    out
}

/// Ball contents as packed integers, unsorted. Used on hot paths.
pub(crate) fn ball_raw(x: &BitWord, model: ErrorModel, out: &mut Vec<u64>) {
    out.clear();
    let bits = x.bits();
    for_each_pattern(model.flippable(x), model.t, |e| out.push(bits ^ e));
}

fn binomial_u128(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

/// Size of the grain ball from the run count alone.
pub fn ball_size_grain(x: &BitWord, t: u32) -> u128 {
    let b = x.runs() - 1;
    (0..=t.min(b)).map(|j| binomial_u128(b, j)).sum()
}

/// Size of the random ball, `sum_{i<=t} C(n, i)`.
pub fn ball_size_random(len: usize, t: u32) -> u128 {
    (0..=t).map(|i| binomial_u128(len as u32, i)).sum()
}

pub fn balls_disjoint(x: &BitWord, y: &BitWord, model: ErrorModel) -> Result<bool> {
    x.check_same_len(y)?;
    let bx = ball(x, model);
    let by = ball(y, model);
    let (mut i, mut j) = (0, 0);
    while i < bx.len() && j < by.len() {
        match bx[i].cmp(&by[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return Ok(false),
        }
    }
    Ok(true)
}
