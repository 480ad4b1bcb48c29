//! Confusability graphs over `GF(2)^m` and their colourings.
//!
//! Vertices are packed words, so vertex `v` is the word with
//! `v = sum 2^(i-1) x_i`.

use std::io::{BufRead, Write};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::channel::{ball_raw, ErrorModel};
use crate::error::{check_cap, precondition, Error, Result};
use crate::word::BitWord;

/// Largest `m` accepted by [`build_graph`].
pub const MAX_GRAPH_M: usize = 16;

/// Vertices joined when their `t`-mineral balls meet. Stored as sorted
/// adjacency lists in one flat array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfusabilityGraph {
    t: u32,
    m: usize,
    offsets: Vec<usize>,
    neighbours: Vec<u32>,
}

impl ConfusabilityGraph {
    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertex_count(&self) -> usize {
        1 << self.m
    }

    pub fn edge_count(&self) -> usize {
        self.neighbours.len() / 2
    }

    pub fn neighbours(&self, v: usize) -> &[u32] {
        &self.neighbours[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbours(u).binary_search(&(v as u32)).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.degree(v)).max().unwrap_or(0)
    }
}

pub fn build_graph(t: u32, m: usize, cap: u128) -> Result<ConfusabilityGraph> {
    if m == 0 || m > MAX_GRAPH_M {
        return precondition(format!("graph dimension m={m} outside 1..={MAX_GRAPH_M}"));
    }
    let n = 1usize << m;
    let model = ErrorModel::mineral(t);
    let balls: Vec<Vec<u64>> = (0..n as u64)
        .into_par_iter()
        .map(|v| {
            let mut b = Vec::new();
            ball_raw(&BitWord::from_raw(m, v), model, &mut b);
            b
        })
        .collect();
    let work: u128 = balls.iter().map(|b| b.len() as u128).sum();
    check_cap(work * work / n as u128, cap)?;
    let mut owners: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (v, b) in balls.iter().enumerate() {
        for &y in b {
            owners[y as usize].push(v as u32);
        }
    }
    let lists: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|v| {
            let mut adj: Vec<u32> = balls[v]
                .iter()
                .flat_map(|&y| owners[y as usize].iter().copied())
                .filter(|&u| u as usize != v)
                .collect();
            adj.sort_unstable();
            adj.dedup();
            adj
        })
        .collect();
    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0);
    let mut neighbours = Vec::new();
    for l in lists {
        neighbours.extend_from_slice(&l);
        offsets.push(neighbours.len());
    }
    Ok(ConfusabilityGraph {
        t,
        m,
        offsets,
        neighbours,
    })
}

/// A partition of `GF(2)^m` into labelled colour classes.
///
/// Labels are meaningful (they become outer-code symbols), so constructors
/// keep the label order they are given. [`Coloring::sorted_by_size`]
/// produces the largest-first relabelling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    m: usize,
    t: u32,
    assignment: Vec<u32>,
    classes: Vec<Vec<u32>>,
}

/// Two adjacent vertices sharing a colour.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColoringViolation {
    pub u: u32,
    pub v: u32,
    pub color: u32,
}

impl Coloring {
    /// One colour per vertex; every label below the colour count must be used.
    pub fn from_assignment(m: usize, t: u32, assignment: Vec<u32>) -> Result<Self> {
        if m == 0 || m > 32 || assignment.len() != 1usize << m {
            return precondition(format!("assignment must cover all 2^{m} vertices"));
        }
        let k = assignment.iter().max().map_or(0, |&c| c as usize + 1);
        let mut classes = vec![Vec::new(); k];
        for (v, &c) in assignment.iter().enumerate() {
            classes[c as usize].push(v as u32);
        }
        if let Some(empty) = classes.iter().position(Vec::is_empty) {
            return precondition(format!("colour {empty} has no vertices"));
        }
        Ok(Self {
            m,
            t,
            assignment,
            classes,
        })
    }

    /// Classes given as vertex lists; they must be disjoint and cover `GF(2)^m`.
    pub fn from_classes(m: usize, t: u32, classes: Vec<Vec<u32>>) -> Result<Self> {
        if m == 0 || m > 32 {
            return Err(Error::InvalidLength(m));
        }
        let n = 1usize << m;
        let mut assignment = vec![u32::MAX; n];
        for (c, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return precondition(format!("colour {c} has no vertices"));
            }
            for &v in class {
                let slot = assignment
                    .get_mut(v as usize)
                    .ok_or_else(|| Error::Precondition(format!("vertex {v} outside GF(2)^{m}")))?;
                if *slot != u32::MAX {
                    return precondition(format!("vertex {v} appears in two classes"));
                }
                *slot = c as u32;
            }
        }
        if let Some(v) = assignment.iter().position(|&c| c == u32::MAX) {
            return precondition(format!("vertex {v} is not coloured"));
        }
        Self::from_assignment(m, t, assignment)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn color_count(&self) -> usize {
        self.classes.len()
    }

    pub fn color_of(&self, v: u64) -> u32 {
        self.assignment[v as usize]
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Relabelled so that class 0 is largest; ties go to the smaller least member.
    pub fn sorted_by_size(&self) -> Self {
        let mut order: Vec<usize> = (0..self.classes.len()).collect();
        order.sort_by_key(|&c| (std::cmp::Reverse(self.classes[c].len()), self.classes[c][0]));
        let classes = order.iter().map(|&c| self.classes[c].clone()).collect();
        Self::from_classes(self.m, self.t, classes).expect("relabelling preserves the partition")
    }

    /// First monochromatic edge, or `None` if the colouring is proper.
    pub fn violation(&self, graph: &ConfusabilityGraph) -> Result<Option<ColoringViolation>> {
        if graph.m() != self.m {
            return Err(Error::LengthMismatch {
                expected: graph.m(),
                got: self.m,
            });
        }
        for u in 0..graph.vertex_count() {
            for &v in graph.neighbours(u) {
                if self.assignment[u] == self.assignment[v as usize] {
                    return Ok(Some(ColoringViolation {
                        u: u as u32,
                        v,
                        color: self.assignment[u],
                    }));
                }
            }
        }
        Ok(None)
    }

    pub fn is_valid(&self, graph: &ConfusabilityGraph) -> Result<bool> {
        Ok(self.violation(graph)?.is_none())
    }
}

/// The block map sending `00` and `11` to 0, `01` to 1 and `10` to 2.
pub fn gamma_coloring(t: u32) -> Coloring {
    // vertex index = x_1 + 2 x_2
    let assignment = vec![0, 2, 1, 0];
    Coloring::from_assignment(2, t, assignment).expect("fixed table is a partition")
}

/// `psi_m(x) = sum i x_i mod (m+1)`, one-based positions.
///
/// This labelling has the group-code class sizes but is not a proper
/// colouring of `G_{1,m}` once `m >= 3`; see [`group_partition_coloring`].
pub fn psi_m(v: u64, m: usize) -> u32 {
    let s: u64 = (0..m).filter(|&i| v >> i & 1 == 1).map(|i| i as u64 + 1).sum();
    (s % (m as u64 + 1)) as u32
}

/// Weights of positions `1..=m`: the nonzero elements of `Z_{m+1}` listed
/// with involutions first and each inverse pair adjacent.
pub fn group_partition_weights(m: usize) -> Vec<u32> {
    let k = m as u32 + 1;
    let mut w = Vec::with_capacity(m);
    if k % 2 == 0 {
        w.push(k / 2);
    }
    for g in 1..k.div_ceil(2) {
        w.push(g);
        w.push(k - g);
    }
    w
}

/// Colour of `v` under the group-code partition: `sum w_i x_i mod (m+1)`
/// with the weights of [`group_partition_weights`].
pub fn group_partition_label(v: u64, m: usize) -> u32 {
    let w = group_partition_weights(m);
    let s: u64 = (0..m).filter(|&i| v >> i & 1 == 1).map(|i| u64::from(w[i])).sum();
    (s % (m as u64 + 1)) as u32
}

/// Classes of the group code of `Z_{m+1}` shortened on its first cell, one
/// class per residue. Inverse pairs of weights sit at adjacent positions,
/// which is what makes the partition a proper colouring of `G_{1,m}`.
pub fn group_partition_coloring(m: usize) -> Result<Coloring> {
    permuted_coloring(m, &(0..=m as u32).collect::<Vec<_>>())
}

/// `x` receives colour `perm[label(x)]` where `label` is the group-code partition.
pub fn permuted_coloring(m: usize, perm: &[u32]) -> Result<Coloring> {
    if m == 0 || m > 24 {
        return precondition(format!("m={m} outside 1..=24"));
    }
    if perm.len() != m + 1 {
        return precondition(format!("permutation must have {} entries", m + 1));
    }
    let mut seen = vec![false; m + 1];
    for &a in perm {
        match seen.get_mut(a as usize) {
            Some(s) if !*s => *s = true,
            _ => return precondition("labels do not form a permutation of 0..=m"),
        }
    }
    let assignment = (0..1u64 << m)
        .map(|v| perm[group_partition_label(v, m) as usize])
        .collect();
    Coloring::from_assignment(m, 1, assignment)
}

const PUBLISHED_SEVEN: [&[u32]; 7] = [
    &[0, 3, 12, 15, 21, 24, 36, 43, 49, 54, 61],
    &[2, 5, 14, 27, 42, 48, 55, 60],
    &[1, 6, 13, 18, 25, 30, 37, 40, 59],
    &[4, 7, 9, 19, 31, 34, 46, 52, 57],
    &[8, 11, 20, 23, 33, 38, 45, 50, 62],
    &[10, 16, 22, 28, 35, 41, 47, 53, 58],
    &[17, 26, 29, 32, 39, 44, 51, 56, 63],
];

/// A 7-colouring of `G_{1,6}` with an 11-element class, labels as listed.
pub fn published_seven_coloring() -> Coloring {
    let classes = PUBLISHED_SEVEN.iter().map(|c| c.to_vec()).collect();
    Coloring::from_classes(6, 1, classes).expect("hard-coded classes form a partition")
}

/// The `m+1` words of weight at most one.
pub fn clique_weight_le1(m: usize) -> Result<Vec<u32>> {
    if !(2..=31).contains(&m) {
        return precondition("clique construction needs 2 <= m <= 31");
    }
    Ok(std::iter::once(0).chain((0..m).map(|i| 1u32 << i)).collect())
}

/// Assigns each vertex, in order, the smallest colour unused by its neighbours.
fn greedy_pass(graph: &ConfusabilityGraph, order: &[u32]) -> Vec<u32> {
    let n = graph.vertex_count();
    let mut colour = vec![u32::MAX; n];
    let mut used = vec![usize::MAX; graph.max_degree() + 2];
    for (step, &v) in order.iter().enumerate() {
        for &u in graph.neighbours(v as usize) {
            let c = colour[u as usize];
            if (c as usize) < used.len() {
                used[c as usize] = step;
            }
        }
        let c = used
            .iter()
            .position(|&s| s != step)
            .expect("degree bound leaves a free colour");
        colour[v as usize] = c as u32;
    }
    colour
}

fn score(assignment: &[u32]) -> (usize, std::cmp::Reverse<usize>) {
    let k = assignment.iter().max().map_or(0, |&c| c as usize + 1);
    let mut sizes = vec![0usize; k];
    for &c in assignment {
        sizes[c as usize] += 1;
    }
    (k, std::cmp::Reverse(sizes.into_iter().max().unwrap_or(0)))
}

/// Number of class-reordering refinement passes run after each random start.
const REFINE_PASSES: usize = 64;

/// Move budget for each attempt to drop one colour by tabu search.
const TABU_ITERS: usize = 20_000;

/// Tries to turn `assignment`, which uses `k + 1` colours, into a proper
/// `k`-colouring. Vertices of the last colour are reassigned at random, then
/// conflicts are removed by single-vertex moves with a tabu list.
fn tabu_reduce(graph: &ConfusabilityGraph, assignment: &[u32], k: usize, rng: &mut ChaCha8Rng) -> Option<Vec<u32>> {
    if k == 0 {
        return None;
    }
    let n = graph.vertex_count();
    let mut col: Vec<u32> = assignment
        .iter()
        .map(|&c| {
            if c as usize >= k {
                rng.random_range(0..k as u32)
            } else {
                c
            }
        })
        .collect();
    // gamma[v*k + c] = neighbours of v coloured c
    let mut gamma = vec![0u32; n * k];
    for v in 0..n {
        for &u in graph.neighbours(v) {
            gamma[v * k + col[u as usize] as usize] += 1;
        }
    }
    let mut conflicts: i64 = (0..n).map(|v| i64::from(gamma[v * k + col[v] as usize])).sum::<i64>() / 2;
    let mut tabu = vec![0usize; n * k];
    let mut best_seen = conflicts;
    for iter in 0..TABU_ITERS {
        if conflicts == 0 {
            return Some(col);
        }
        let mut best: Option<(i64, usize, u32)> = None;
        let mut ties = 0u32;
        for v in 0..n {
            let own = gamma[v * k + col[v] as usize];
            if own == 0 {
                continue;
            }
            for c in 0..k as u32 {
                if c == col[v] {
                    continue;
                }
                let delta = i64::from(gamma[v * k + c as usize]) - i64::from(own);
                let allowed = tabu[v * k + c as usize] <= iter || conflicts + delta < best_seen;
                if !allowed {
                    continue;
                }
                match best {
                    Some((d, _, _)) if delta > d => {}
                    Some((d, _, _)) if delta == d => {
                        ties += 1;
                        if rng.random_range(0..ties) == 0 {
                            best = Some((delta, v, c));
                        }
                    }
                    _ => {
                        ties = 1;
                        best = Some((delta, v, c));
                    }
                }
            }
        }
        let Some((delta, v, c)) = best else { continue };
        let old = col[v];
        for &u in graph.neighbours(v) {
            let u = u as usize;
            gamma[u * k + old as usize] -= 1;
            gamma[u * k + c as usize] += 1;
        }
        col[v] = c;
        conflicts += delta;
        best_seen = best_seen.min(conflicts);
        let bad = (0..n).filter(|&w| gamma[w * k + col[w] as usize] > 0).count();
        tabu[v * k + old as usize] = iter + 1 + rng.random_range(0..10) + (bad * 6) / 10;
    }
    (conflicts == 0).then_some(col)
}

/// Randomised greedy colouring with restarts.
///
/// Each restart shuffles the vertex order, colours greedily, then repeatedly
/// recolours with the vertices grouped by class (a shuffled class order),
/// which never increases the colour count. A tabu search then tries to drop
/// one colour at a time until it fails. The best result minimises the
/// colour count and then maximises the largest class. Restart seeds are drawn
/// from a ChaCha stream seeded by `seed`, so the output is deterministic.
pub fn greedy_color(graph: &ConfusabilityGraph, seed: u64, restarts: usize) -> Coloring {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<u64> = (0..restarts.max(1)).map(|_| master.random()).collect();
    let n = graph.vertex_count();
    let best = seeds
        .par_iter()
        .enumerate()
        .map(|(idx, &s)| {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let mut order: Vec<u32> = (0..n as u32).collect();
            order.shuffle(&mut rng);
            let mut assignment = greedy_pass(graph, &order);
            let mut best = (score(&assignment), assignment.clone());
            for _ in 0..REFINE_PASSES {
                let k = score(&assignment).0;
                let mut class_order: Vec<u32> = (0..k as u32).collect();
                class_order.shuffle(&mut rng);
                let mut rank = vec![0usize; k];
                for (i, &c) in class_order.iter().enumerate() {
                    rank[c as usize] = i;
                }
                order.sort_by_key(|&v| rank[assignment[v as usize] as usize]);
                assignment = greedy_pass(graph, &order);
                let sc = score(&assignment);
                if sc < best.0 {
                    best = (sc, assignment.clone());
                }
            }
            let mut k = best.0 .0;
            while let Some(fewer) = tabu_reduce(graph, &best.1, k - 1, &mut rng) {
                k -= 1;
                best = (score(&fewer), fewer);
            }
            (best.0, idx, best.1)
        })
        .min_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)))
        .expect("at least one restart");
    let mut relabel = vec![u32::MAX; graph.vertex_count() + 1];
    let mut next = 0u32;
    let assignment = best
        .2
        .iter()
        .map(|&c| {
            let slot = &mut relabel[c as usize];
            if *slot == u32::MAX {
                *slot = next;
                next += 1;
            }
            *slot
        })
        .collect();
    Coloring::from_assignment(graph.m(), graph.t(), assignment)
        .expect("greedy colouring uses consecutive labels")
        .sorted_by_size()
}

/// Reads the header `m t k` followed by `k` lines of decimal vertex codes.
pub fn read_coloring(reader: impl BufRead) -> Result<Coloring> {
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
    let nums = |lineno: usize, s: &str| {
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
    let [m, t, k] = nums(*hline, header)?[..] else {
        return Err(Error::Parse {
            line: *hline,
            message: "header must be `m t k`".into(),
        });
    };
    if lines.len() - 1 != k as usize {
        return Err(Error::Parse {
            line: *hline,
            message: format!("expected {k} class lines, found {}", lines.len() - 1),
        });
    }
    let mut classes = Vec::new();
    for (lineno, s) in &lines[1..] {
        classes.push(nums(*lineno, s)?);
    }
    Coloring::from_classes(m as usize, t, classes).map_err(|e| Error::Parse {
        line: *hline,
        message: e.to_string(),
    })
}

pub fn write_coloring(c: &Coloring, mut w: impl Write) -> std::io::Result<()> {
    writeln!(w, "{} {} {}", c.m, c.t, c.classes.len())?;
    for class in &c.classes {
        let s: Vec<String> = class.iter().map(u32::to_string).collect();
        writeln!(w, "{}", s.join(" "))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::balls_disjoint;
    use crate::error::DEFAULT_ENUMERATION_CAP;

    fn graph(t: u32, m: usize) -> ConfusabilityGraph {
        build_graph(t, m, DEFAULT_ENUMERATION_CAP).unwrap()
    }

    fn v(s: &str) -> usize {
        s.parse::<BitWord>().unwrap().bits() as usize
    }

    #[test]
    fn small_graphs() {
        let g = graph(1, 2);
        for (a, b) in [("00", "01"), ("00", "10"), ("11", "01"), ("11", "10"), ("01", "10")] {
            assert!(g.adjacent(v(a), v(b)), "{a}~{b}");
        }
        assert!(!g.adjacent(v("00"), v("11")));
        let g1 = graph(1, 1);
        assert!(g1.adjacent(0, 1));
        assert_eq!(g1.edge_count(), 1);
    }

    #[test]
    fn adjacency_matches_ball_intersection() {
        for (t, m) in [(1, 4), (2, 4), (1, 5)] {
            let g = graph(t, m);
            for a in 0..1u64 << m {
                assert!(!g.adjacent(a as usize, a as usize));
                for b in 0..1u64 << m {
                    if a != b {
                        let x = BitWord::new(m, a).unwrap();
                        let y = BitWord::new(m, b).unwrap();
                        let meet = !balls_disjoint(&x, &y, ErrorModel::mineral(t)).unwrap();
                        assert_eq!(g.adjacent(a as usize, b as usize), meet);
                    }
                }
            }
        }
    }

    #[test]
    fn gamma() {
        let c = gamma_coloring(1);
        assert_eq!(c.classes(), &[vec![0, 3], vec![2], vec![1]]);
        assert_eq!(c.color_of(v("01") as u64), 1);
        assert_eq!(c.color_of(v("00") as u64), 0);
        for t in 1..=3 {
            assert!(gamma_coloring(t).is_valid(&graph(t, 2)).unwrap(), "t={t}");
        }
        let mut a: Vec<Vec<u32>> = gamma_coloring(1).classes().to_vec();
        let mut b: Vec<Vec<u32>> = group_partition_coloring(2).unwrap().classes().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn psi_partition_sizes() {
        assert_eq!(
            group_partition_coloring(6).unwrap().class_sizes(),
            [10, 9, 9, 9, 9, 9, 9]
        );
        assert_eq!(group_partition_coloring(4).unwrap().class_sizes(), [4, 3, 3, 3, 3]);
        let two = group_partition_coloring(2).unwrap();
        assert_eq!(two.classes(), &[vec![0, 3], vec![1], vec![2]]);
    }

    #[test]
    fn chromatic_number_is_m_plus_one() {
        for m in 2..=8 {
            let g = graph(1, m);
            let c = group_partition_coloring(m).unwrap();
            assert_eq!(c.color_count(), m + 1);
            assert!(c.is_valid(&g).unwrap(), "m={m}");
            let clique = clique_weight_le1(m).unwrap();
            assert_eq!(clique.len(), m + 1);
            for &a in &clique {
                for &b in &clique {
                    if a != b {
                        assert!(g.adjacent(a as usize, b as usize));
                    }
                }
            }
        }
    }

    #[test]
    fn natural_weights_are_not_a_colouring() {
        // 000101 and 010111 share a label yet reach 000111 with one error each
        let g = graph(1, 6);
        assert!(g.adjacent(40, 58));
        assert_eq!(psi_m(40, 6), psi_m(58, 6));
        assert_eq!(group_partition_weights(6), [1, 6, 2, 5, 3, 4]);
        assert_eq!(group_partition_weights(3), [2, 1, 3]);
        for m in 2..=8 {
            let mut natural = vec![0usize; m + 1];
            for v in 0..1u64 << m {
                natural[psi_m(v, m) as usize] += 1;
            }
            assert_eq!(natural, group_partition_coloring(m).unwrap().class_sizes());
            let literal = Coloring::from_assignment(m, 1, (0..1u64 << m).map(|v| psi_m(v, m)).collect()).unwrap();
            assert_eq!(literal.is_valid(&graph(1, m)).unwrap(), m == 2, "m={m}");
        }
    }

    #[test]
    fn permutations() {
        let c = permuted_coloring(2, &[1, 0, 2]).unwrap();
        assert_eq!(c.color_of(v("11") as u64), 1);
        assert_eq!(c.color_of(v("01") as u64), 2);
        assert_eq!(
            permuted_coloring(3, &[0, 1, 2, 3]).unwrap(),
            group_partition_coloring(3).unwrap()
        );
        assert!(permuted_coloring(2, &[0, 0, 1]).is_err());
        assert!(permuted_coloring(2, &[0, 1]).is_err());
        for m in 2..=6 {
            let perm: Vec<u32> = (0..=m as u32).rev().collect();
            assert!(permuted_coloring(m, &perm).unwrap().is_valid(&graph(1, m)).unwrap());
        }
    }

    #[test]
    fn published_coloring() {
        let c = published_seven_coloring();
        assert_eq!(c.class_sizes(), [11, 8, 9, 9, 9, 9, 9]);
        assert_eq!(c.color_of(13), 2);
        assert_eq!(v("101100"), 13);
        assert!(c.is_valid(&graph(1, 6)).unwrap());
        assert_eq!(c.sorted_by_size().class_sizes(), [11, 9, 9, 9, 9, 9, 8]);
    }

    #[test]
    fn greedy_search() {
        for (m, want) in [(2, 3), (4, 5), (6, 7)] {
            let g = graph(1, m);
            let c = greedy_color(&g, 7, 16);
            assert!(c.is_valid(&g).unwrap());
            assert_eq!(c.color_count(), want, "m={m}");
            let sizes = c.class_sizes();
            assert!(sizes.windows(2).all(|w| w[0] >= w[1]));
        }
        let g = graph(1, 5);
        assert_eq!(greedy_color(&g, 3, 8), greedy_color(&g, 3, 8));
    }

    #[test]
    fn validity_catches_bad_colourings() {
        let g = graph(1, 3);
        let mono = Coloring::from_assignment(3, 1, vec![0; 8]).unwrap();
        let bad = mono.violation(&g).unwrap().unwrap();
        assert!(g.adjacent(bad.u as usize, bad.v as usize));
        assert!(Coloring::from_classes(2, 1, vec![vec![0, 1], vec![1, 2, 3]]).is_err());
        assert!(Coloring::from_classes(2, 1, vec![vec![0, 1], vec![2]]).is_err());
    }

    #[test]
    fn file_round_trip() {
        let c = published_seven_coloring();
        let mut buf = Vec::new();
        write_coloring(&c, &mut buf).unwrap();
        assert_eq!(read_coloring(buf.as_slice()).unwrap(), c);
        assert!(matches!(
            read_coloring("6 1 2\n0 1\n2 x\n".as_bytes()),
            Err(Error::Parse { line: 3, .. })
        ));
    }
}
