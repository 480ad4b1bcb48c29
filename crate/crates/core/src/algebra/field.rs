//! Arithmetic and row reduction over prime fields `GF(p)`.

use crate::error::{precondition, Result};

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub(crate) fn require_prime(p: u32) -> Result<()> {
    if !is_prime(p) {
        return precondition(format!("{p} is not prime"));
    }
    if p > 1 << 15 {
        return precondition(format!("field size {p} exceeds the supported range"));
    }
    Ok(())
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    // Fermat; p is small so the repeated squaring stays in u64
    let mut base = u64::from(a % p);
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % u64::from(p);
        }
        base = base * base % u64::from(p);
        e >>= 1;
    }
    acc as u32
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<u32>>, p: u32) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&i| rows[i][c] % p != 0) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = inv_mod(rows[r][c], p);
        for v in rows[r].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..ncols {
                    rows[i][j] = (rows[i][j] + (p - f) * rows[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Index of `v` in `GF(p)^r` with the first coordinate most significant.
pub fn vector_index(v: &[u32], p: u32) -> usize {
    v.iter().fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

/// Inverse of [`vector_index`].
pub fn vector_at(mut index: usize, p: u32, r: usize) -> Vec<u32> {
    let mut v = vec![0u32; r];
    for c in v.iter_mut().rev() {
        *c = (index % p as usize) as u32;
        index /= p as usize;
    }
    v
}

/// Basis of `{x : M x = 0}` for an `r x n` matrix `M`.
pub fn null_space(matrix: &[Vec<u32>], ncols: usize, p: u32) -> Vec<Vec<u32>> {
    let mut rows = matrix.to_vec();
    let pivots = rref(&mut rows, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; ncols];
            v[f] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = (p - row[f] % p) % p;
            }
            v
        })
        .collect()
}
