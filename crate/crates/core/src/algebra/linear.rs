//! Linear codes over `GF(p)` defined by a parity-check matrix.

use std::fmt;
use std::io::{BufRead, Write};

use num_bigint::BigUint;

use super::field::{null_space, require_prime, rref};
use crate::error::{check_cap, precondition, Error, Result};

/// Default cap on codeword enumeration for linear codes.
pub const CODEWORD_CAP: u128 = 1 << 24;
/// Default cap on dual enumeration.
pub const DUAL_CAP: u128 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeLinearCode {
    p: u32,
    length: usize,
    parity_check: Vec<Vec<u32>>,
    designed_t: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinDistance {
    Exact(u32),
    /// Only a lower bound was certified.
    AtLeast(u32),
}

impl fmt::Display for MinDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinDistance::Exact(d) => write!(f, "{d}"),
            MinDistance::AtLeast(d) => write!(f, ">= {d}"),
        }
    }
}

/// The row space of a parity-check matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCode {
    pub rank: usize,
    pub words: Vec<Vec<u32>>,
}

fn pow_u128(base: u32, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(u128::from(base)))
}

/// All `F_p`-combinations of `basis`, in mixed-radix order.
fn span(basis: &[Vec<u32>], len: usize, p: u32) -> Vec<Vec<u32>> {
    let count = pow_u128(p, basis.len()) as usize;
    let mut out = Vec::with_capacity(count);
    let mut coeffs = vec![0u32; basis.len()];
    let mut word = vec![0u32; len];
    for _ in 0..count {
        out.push(word.clone());
        // increment the coefficient counter and update the word in place
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c += 1;
            for (w, b) in word.iter_mut().zip(&basis[i]) {
                *w = (*w + b) % p;
            }
            if *c < p {
                break;
            }
            // wrapping back to zero subtracts p copies, i.e. nothing
            *c = 0;
        }
    }
    out
}

impl PrimeLinearCode {
    /// `rows` is the `r x length` parity-check matrix.
    pub fn new(p: u32, length: usize, rows: Vec<Vec<u32>>, designed_t: u32) -> Result<Self> {
        require_prime(p)?;
        if length == 0 {
            return precondition("code length must be positive");
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != length {
                return Err(Error::LengthMismatch {
                    expected: length,
                    got: row.len(),
                });
            }
            if let Some(v) = row.iter().find(|&&v| v >= p) {
                return precondition(format!("entry {v} in row {i} is not in GF({p})"));
            }
        }
        Ok(Self {
            p,
            length,
            parity_check: rows,
            designed_t,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Number of parity-check rows, `r`.
    pub fn redundancy(&self) -> usize {
        self.parity_check.len()
    }

    pub fn designed_t(&self) -> u32 {
        self.designed_t
    }

    pub fn with_designed_t(mut self, t: u32) -> Self {
        self.designed_t = t;
        self
    }

    pub fn parity_check(&self) -> &[Vec<u32>] {
        &self.parity_check
    }

    pub fn column(&self, i: usize) -> Vec<u32> {
        self.parity_check.iter().map(|row| row[i]).collect()
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.parity_check.clone();
        rref(&mut rows, self.p).len()
    }

    pub fn dimension(&self) -> usize {
        self.length - self.rank()
    }

    pub fn size(&self) -> BigUint {
        BigUint::from(self.p).pow(self.dimension() as u32)
    }

    pub fn syndrome(&self, word: &[u32]) -> Result<Vec<u32>> {
        if word.len() != self.length {
            return Err(Error::LengthMismatch {
                expected: self.length,
                got: word.len(),
            });
        }
        let p = u64::from(self.p);
        Ok(self
            .parity_check
            .iter()
            .map(|row| {
                (row.iter()
                    .zip(word)
                    .map(|(&a, &b)| u64::from(a) * u64::from(b))
                    .sum::<u64>()
                    % p) as u32
            })
            .collect())
    }

    pub fn is_codeword(&self, word: &[u32]) -> Result<bool> {
        Ok(self.syndrome(word)?.iter().all(|&s| s == 0))
    }

    /// Every codeword, refused above `cap`.
    pub fn codewords(&self, cap: u128) -> Result<Vec<Vec<u32>>> {
        let basis = null_space(&self.parity_check, self.length, self.p);
        check_cap(pow_u128(self.p, basis.len()), cap)?;
        Ok(span(&basis, self.length, self.p))
    }

    pub fn dual_codewords(&self, cap: u128) -> Result<DualCode> {
        let mut rows = self.parity_check.clone();
        let rank = rref(&mut rows, self.p).len();
        check_cap(pow_u128(self.p, rank), cap)?;
        Ok(DualCode {
            rank,
            words: span(&rows, self.length, self.p),
        })
    }

    /// Some `y` with `H y = target`, or `None` when the coset is empty.
    pub fn coset_leader(&self, target: &[u32]) -> Result<Option<Vec<u32>>> {
        let r = self.redundancy();
        if target.len() != r {
            return Err(Error::LengthMismatch {
                expected: r,
                got: target.len(),
            });
        }
        if let Some(&bad) = target.iter().find(|&&s| s >= self.p) {
            return precondition(format!("syndrome entry {bad} outside GF({})", self.p));
        }
        let mut rows: Vec<Vec<u32>> = self
            .parity_check
            .iter()
            .zip(target)
            .map(|(row, &s)| {
                let mut row = row.clone();
                row.push(s);
                row
            })
            .collect();
        let pivots = rref(&mut rows, self.p);
        if pivots.last() == Some(&self.length) {
            return Ok(None);
        }
        let mut y = vec![0u32; self.length];
        for (row, &c) in rows.iter().zip(&pivots) {
            y[c] = row[self.length];
        }
        Ok(Some(y))
    }

    /// Exact distance by enumeration when the code is small, otherwise a
    /// syndrome search over low-weight error patterns up to `2t+1`.
    pub fn min_distance(&self, cap: u128) -> Result<MinDistance> {
        let dim = self.dimension();
        if dim == 0 {
            return precondition("the zero code has no minimum distance");
        }
        if pow_u128(self.p, dim) <= cap {
            let d = self
                .codewords(cap)?
                .iter()
                .map(|w| w.iter().filter(|&&s| s != 0).count() as u32)
                .filter(|&w| w > 0)
                .min()
                .expect("nonzero codeword exists");
            return Ok(MinDistance::Exact(d));
        }
        let limit = (2 * self.designed_t + 1).min(self.length as u32);
        let mut work = 0u128;
        for w in 1..=limit as usize {
            work = work.saturating_add(binom_u128(self.length, w).saturating_mul(pow_u128(self.p - 1, w - 1)));
        }
        check_cap(work, cap)?;
        let cols: Vec<Vec<u32>> = (0..self.length).map(|i| self.column(i)).collect();
        for w in 1..=limit as usize {
            if self.has_dependent_set(&cols, w) {
                return Ok(MinDistance::Exact(w as u32));
            }
        }
        Ok(MinDistance::AtLeast(limit + 1))
    }

    /// Whether some `w` columns with nonzero coefficients sum to zero.
    /// The leading coefficient is fixed to 1 since codewords scale.
    fn has_dependent_set(&self, cols: &[Vec<u32>], w: usize) -> bool {
        let r = self.redundancy();
        let p = self.p;
        fn rec(cols: &[Vec<u32>], start: usize, left: usize, acc: &mut Vec<u32>, first: bool, p: u32) -> bool {
            if left == 0 {
                return acc.iter().all(|&v| v == 0);
            }
            for i in start..=cols.len() - left {
                let coeffs: Vec<u32> = if first { vec![1] } else { (1..p).collect() };
                for c in coeffs {
                    let saved = acc.clone();
                    for (a, v) in acc.iter_mut().zip(&cols[i]) {
                        *a = (*a + c * v) % p;
                    }
                    if rec(cols, i + 1, left - 1, acc, false, p) {
                        return true;
                    }
                    *acc = saved;
                }
            }
            false
        }
        rec(cols, 0, w, &mut vec![0; r], true, p)
    }
}

fn binom_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Hamming code: one column per projective point of `GF(p)^r`, with the
/// first nonzero coordinate equal to 1, in lexicographic order.
pub fn hamming_code(p: u32, r: usize) -> Result<PrimeLinearCode> {
    require_prime(p)?;
    if r < 2 {
        return precondition("Hamming codes need r >= 2");
    }
    let total = pow_u128(p, r);
    let length = (total - 1) / u128::from(p - 1);
    if length > 4096 {
        return precondition(format!("Hamming code length {length} too large"));
    }
    let mut columns = Vec::new();
    for idx in 1..total {
        // idx in base p, most significant coordinate first
        let mut v = vec![0u32; r];
        let mut rest = idx;
        for slot in v.iter_mut().rev() {
            *slot = (rest % u128::from(p)) as u32;
            rest /= u128::from(p);
        }
        if v.iter().find(|&&c| c != 0) == Some(&1) {
            columns.push(v);
        }
    }
    let rows = (0..r).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
    PrimeLinearCode::new(p, columns.len(), rows, 1)
}

/// `[len, 1, len]` repetition code with rows `e_1 - e_j`.
pub fn repetition_code(p: u32, len: usize, t: u32) -> Result<PrimeLinearCode> {
    require_prime(p)?;
    if len < 2 * t as usize + 1 || len < 2 {
        return precondition(format!("repetition length {len} cannot correct {t} errors"));
    }
    let rows = (1..len)
        .map(|j| {
            let mut row = vec![0; len];
            row[0] = 1;
            row[j] = p - 1;
            row
        })
        .collect();
    let designed = (((len - 1) / 2) as u32).min(t);
    PrimeLinearCode::new(p, len, rows, designed)
}

/// Parses `hamming:P:R` or `rep:P:LEN` (repetition codes take `t` from the caller).
pub fn parse_outer_spec(spec: &str, t: u32) -> Result<PrimeLinearCode> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| {
        s.parse::<u32>()
            .map_err(|_| Error::Precondition(format!("malformed outer code {spec:?}")))
    };
    match parts.as_slice() {
        ["hamming", p, r] => hamming_code(num(p)?, num(r)? as usize),
        ["rep", p, l] => repetition_code(num(p)?, num(l)? as usize, t),
        _ => precondition(format!("unknown outer code {spec:?}; use hamming:P:R or rep:P:LEN")),
    }
}

/// Reads the parity-check file format `p r l` followed by `r` rows.
pub fn read_parity_check(reader: impl BufRead, designed_t: u32) -> Result<PrimeLinearCode> {
    let mut lines = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::Parse {
            line: idx + 1,
            message: e.to_string(),
        })?;
        let s = line.trim().to_string();
        if !s.is_empty() && !s.starts_with('#') {
            lines.push((idx + 1, s));
        }
    }
    let parse_nums = |lineno: usize, s: &str| {
        s.split_whitespace()
            .map(|tok| {
                tok.parse::<u32>().map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("invalid number {tok:?}"),
                })
            })
            .collect::<Result<Vec<u32>>>()
    };
    let Some((hline, header)) = lines.first() else {
        return Err(Error::Parse {
            line: 0,
            message: "missing header".into(),
        });
    };
    let head = parse_nums(*hline, header)?;
    let [p, r, l] = head[..] else {
        return Err(Error::Parse {
            line: *hline,
            message: "header must be `p r l`".into(),
        });
    };
    if lines.len() - 1 != r as usize {
        return Err(Error::Parse {
            line: lines.last().map_or(*hline, |x| x.0),
            message: format!("expected {r} matrix rows, found {}", lines.len() - 1),
        });
    }
    let mut rows = Vec::new();
    for (lineno, s) in &lines[1..] {
        let row = parse_nums(*lineno, s)?;
        if row.len() != l as usize {
            return Err(Error::Parse {
                line: *lineno,
                message: format!("expected {l} entries, found {}", row.len()),
            });
        }
        if let Some(v) = row.iter().find(|&&v| v >= p) {
            return Err(Error::Parse {
                line: *lineno,
                message: format!("entry {v} is not below {p}"),
            });
        }
        rows.push(row);
    }
    PrimeLinearCode::new(p, l as usize, rows, designed_t).map_err(|e| Error::Parse {
        line: *hline,
        message: e.to_string(),
    })
}

pub fn write_parity_check(code: &PrimeLinearCode, mut w: impl Write) -> std::io::Result<()> {
    writeln!(w, "{} {} {}", code.p, code.redundancy(), code.length)?;
    for row in &code.parity_check {
        let s: Vec<String> = row.iter().map(u32::to_string).collect();
        writeln!(w, "{}", s.join(" "))?;
    }
    Ok(())
}
