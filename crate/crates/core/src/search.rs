//! Exhaustive maximum-code search.
//!
//! Codes correcting `t` errors are exactly the independent sets of the
//! conflict graph (balls intersect), so the maximum code is a maximum clique
//! of its complement. The clique search is a bitset branch and bound with a
//! greedy colouring bound.

use std::collections::HashMap;

use crate::channel::{ball_raw, ErrorKind, ErrorModel};
use crate::code::CodeBook;
use crate::error::{check_cap, precondition, Result};
use crate::word::{len_mask, BitWord};

/// Fixed-width bitset over the vertices of a small graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitSet {
    blocks: Vec<u64>,
}

impl BitSet {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            blocks: vec![0; n.div_ceil(64)],
        }
    }

    #[inline]
    pub(crate) fn insert(&mut self, i: usize) {
        self.blocks[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub(crate) fn remove(&mut self, i: usize) {
        self.blocks[i / 64] &= !(1 << (i % 64));
    }

    pub(crate) fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub(crate) fn and(&self, other: &Self) -> Self {
        Self {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a & b).collect(),
        }
    }

    pub(crate) fn and_not_assign(&mut self, other: &Self) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= !b;
        }
    }

    pub(crate) fn first(&self) -> Option<usize> {
        self.blocks
            .iter()
            .enumerate()
            .find(|(_, &b)| b != 0)
            .map(|(i, b)| i * 64 + b.trailing_zeros() as usize)
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(i, &b)| {
            let mut rest = b;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let bit = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(i * 64 + bit)
                }
            })
        })
    }
}

/// Maximum clique of an undirected graph given by bitset rows.
pub(crate) struct CliqueSearch<'a> {
    adj: &'a [BitSet],
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
}

impl<'a> CliqueSearch<'a> {
    pub(crate) fn run(adj: &'a [BitSet], initial: Vec<usize>) -> (Vec<usize>, u64) {
        let mut s = CliqueSearch {
            adj,
            best: initial,
            current: Vec::new(),
            nodes: 0,
        };
        let mut all = BitSet::new(adj.len());
        for v in 0..adj.len() {
            all.insert(v);
        }
        s.expand(all);
        (s.best, s.nodes)
    }

    /// Greedy sequential colouring of `p`; returns vertices in colour order
    /// together with the colour number of each, non-decreasing.
    fn colour(&self, p: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(p.count());
        let mut colours = Vec::with_capacity(order.capacity());
        let mut uncoloured = p.clone();
        let mut k = 0;
        while !uncoloured.is_empty() {
            k += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                q.and_not_assign(&self.adj[v]);
                uncoloured.remove(v);
                order.push(v);
                colours.push(k);
            }
        }
        (order, colours)
    }

    fn expand(&mut self, mut p: BitSet) {
        self.nodes += 1;
        let (order, colours) = self.colour(&p);
        for idx in (0..order.len()).rev() {
            if self.current.len() + colours[idx] <= self.best.len() {
                return;
            }
            let v = order[idx];
            self.current.push(v);
            let np = p.and(&self.adj[v]);
            if np.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(np);
            }
            self.current.pop();
            p.remove(v);
        }
    }
}

/// Result of an exhaustive search.
#[derive(Clone, Debug)]
pub struct MaxCodeResult {
    pub code: CodeBook,
    /// Branch-and-bound nodes visited.
    pub nodes: u64,
}

/// Largest code of length `n` correcting the model's errors, found by
/// exhaustive clique search.
///
/// Grain errors never touch the first cell, so words starting with 0 never
/// conflict with words starting with 1, and complementing every cell maps
/// one half onto the other while preserving balls. For the grain model the
/// search therefore runs on the `x_1 = 0` half only and the optimum found
/// there is mirrored, which is exact.
pub fn maximum_code(n: usize, model: ErrorModel, cap: u128) -> Result<MaxCodeResult> {
    search(n, model, cap, model.kind == ErrorKind::Grain)
}

fn search(n: usize, model: ErrorModel, cap: u128, split: bool) -> Result<MaxCodeResult> {
    if n == 0 || n > 12 {
        return precondition(format!("exhaustive search supports 1 <= n <= 12, got {n}"));
    }
    let split = split && n >= 2;
    let universe: Vec<u64> = if split {
        (0..1u64 << n).filter(|b| b & 1 == 0).collect()
    } else {
        (0..1u64 << n).collect()
    };
    let size = universe.len();
    check_cap((size as u128) * (size as u128), cap)?;
    let compat = compatibility_graph(n, &universe, model);
    // high-degree vertices first in the initial order tightens the colour bound
    let mut order: Vec<usize> = (0..size).collect();
    let degree: Vec<usize> = compat.iter().map(BitSet::count).collect();
    order.sort_by_key(|&v| (degree[v], v));
    let mut pos = vec![0; size];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let permuted: Vec<BitSet> = order
        .iter()
        .map(|&v| {
            let mut row = BitSet::new(size);
            for u in compat[v].iter() {
                row.insert(pos[u]);
            }
            row
        })
        .collect();
    let (clique, nodes) = CliqueSearch::run(&permuted, Vec::new());
    let full = len_mask(n);
    let mut words: Vec<BitWord> = Vec::new();
    for v in clique {
        let b = universe[order[v]];
        words.push(BitWord::from_raw(n, b));
        if split {
            words.push(BitWord::from_raw(n, b ^ full));
        }
    }
    Ok(MaxCodeResult {
        code: CodeBook::new(n, words)?,
        nodes,
    })
}

/// Rows of the graph whose edges join words with disjoint balls.
fn compatibility_graph(n: usize, universe: &[u64], model: ErrorModel) -> Vec<BitSet> {
    let size = universe.len();
    let mut owners: HashMap<u64, Vec<usize>> = HashMap::new();
    let mut buf = Vec::new();
    for (i, &b) in universe.iter().enumerate() {
        ball_raw(&BitWord::from_raw(n, b), model, &mut buf);
        for &y in &buf {
            owners.entry(y).or_default().push(i);
        }
    }
    let mut compat: Vec<BitSet> = (0..size)
        .map(|x| {
            let mut row = BitSet::new(size);
            for y in (0..size).filter(|&y| y != x) {
                row.insert(y);
            }
            row
        })
        .collect();
    for group in owners.values() {
        for &a in group {
            for &b in group {
                compat[a].remove(b);
            }
        }
    }
    compat
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::is_t_correcting;
    use crate::error::DEFAULT_ENUMERATION_CAP;

    fn brute_force_max(n: usize, model: ErrorModel) -> usize {
        // all subsets of GF(2)^n, only viable for n <= 3
        let words: Vec<BitWord> = BitWord::all(n).unwrap().collect();
        let mut best = 0;
        for mask in 0u64..(1 << words.len()) {
            let ws: Vec<BitWord> = (0..words.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| words[i])
                .collect();
            let k = ws.len();
            if k > best && is_t_correcting(&CodeBook::new(n, ws).unwrap(), model) {
                best = k;
            }
        }
        best
    }

    #[test]
    fn clique_search_matches_subset_enumeration() {
        for n in 1..=3 {
            for model in [ErrorModel::grain(1), ErrorModel::mineral(1), ErrorModel::random(1)] {
                let r = maximum_code(n, model, DEFAULT_ENUMERATION_CAP).unwrap();
                assert!(is_t_correcting(&r.code, model));
                assert_eq!(r.code.len(), brute_force_max(n, model), "n={n} {model:?}");
            }
        }
    }

    #[test]
    fn half_space_search_agrees_with_full_search() {
        for n in 2..=6 {
            for t in 1..=2 {
                let model = ErrorModel::grain(t);
                let fast = maximum_code(n, model, DEFAULT_ENUMERATION_CAP).unwrap();
                let slow = search(n, model, DEFAULT_ENUMERATION_CAP, false).unwrap();
                assert_eq!(fast.code.len(), slow.code.len(), "n={n} t={t}");
                assert!(is_t_correcting(&fast.code, model));
            }
        }
    }

    #[test]
    fn known_small_optima() {
        let m = |n| {
            maximum_code(n, ErrorModel::grain(1), DEFAULT_ENUMERATION_CAP)
                .unwrap()
                .code
                .len()
        };
        let sizes: Vec<usize> = (3..=7).map(m).collect();
        assert_eq!(sizes, [4, 6, 8, 16, 26]);
        assert!(sizes.iter().all(|s| s % 2 == 0));
        // binary Hamming bound territory for random errors
        let r = maximum_code(7, ErrorModel::random(1), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(r.code.len(), 16);
    }

    #[test]
    fn same_first_bit_does_not_force_disjoint_mineral_suffixes() {
        // grain-disjoint words sharing x_1 whose suffixes collide once the
        // suffix's first cell may flip freely
        let x: BitWord = "0000".parse().unwrap();
        let y: BitWord = "0101".parse().unwrap();
        assert!(crate::channel::balls_disjoint(&x, &y, ErrorModel::grain(1)).unwrap());
        let (xs, ys) = (x.drop_first().unwrap(), y.drop_first().unwrap());
        assert!(!crate::channel::balls_disjoint(&xs, &ys, ErrorModel::mineral(1)).unwrap());
        // and so the grain optimum exceeds twice the mineral optimum
        let grain6 = maximum_code(6, ErrorModel::grain(1), DEFAULT_ENUMERATION_CAP).unwrap();
        let mineral5 = maximum_code(5, ErrorModel::mineral(1), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!((grain6.code.len(), mineral5.code.len()), (16, 7));
    }
}
