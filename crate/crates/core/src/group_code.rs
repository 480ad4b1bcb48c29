//! Group codes over finite Abelian groups and the single-grain codes built
//! from them by ordering the group so that inverse pairs sit side by side.

use num_bigint::BigUint;

use crate::algebra::group::{abelian_groups_of_order, FiniteAbelianGroup, GroupElement};
use crate::code::CodeBook;
use crate::error::{check_cap, precondition, Result};
use crate::word::BitWord;

/// A listing of every group element: zero first, then the involutions,
/// then each remaining element immediately followed by its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedGroupSequence {
    group: FiniteAbelianGroup,
    sequence: Vec<GroupElement>,
}

impl OrderedGroupSequence {
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn sequence(&self) -> &[GroupElement] {
        &self.sequence
    }

    /// Sequence as element indices of the group.
    pub fn indices(&self) -> Vec<usize> {
        self.sequence.iter().map(|g| self.group.index_of(g)).collect()
    }

    /// Checks zero-first and inverse adjacency.
    pub fn is_valid(&self) -> bool {
        let g = &self.group;
        if self.sequence.len() != g.order() || self.sequence.first() != Some(&g.zero()) {
            return false;
        }
        let mut seen = vec![false; g.order()];
        for e in &self.sequence {
            let i = g.index_of(e);
            if seen[i] {
                return false;
            }
            seen[i] = true;
        }
        self.sequence.iter().enumerate().all(|(i, e)| {
            let inv = g.neg(e);
            inv == *e || (i > 0 && self.sequence[i - 1] == inv) || self.sequence.get(i + 1) == Some(&inv)
        })
    }
}

pub fn build_ordering(group: &FiniteAbelianGroup) -> OrderedGroupSequence {
    let elems = group.elements();
    let zero = group.zero();
    let mut sequence = vec![zero.clone()];
    sequence.extend(elems.iter().filter(|e| **e != zero && group.neg(e) == **e).cloned());
    for e in &elems {
        let inv = group.neg(e);
        if *e < inv {
            sequence.push(e.clone());
            sequence.push(inv);
        }
    }
    OrderedGroupSequence {
        group: group.clone(),
        sequence,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCodeSpec {
    pub ordering: OrderedGroupSequence,
    pub residue: GroupElement,
}

impl GroupCodeSpec {
    pub fn new(group: &FiniteAbelianGroup, residue: GroupElement) -> Result<Self> {
        if !group.contains(&residue) {
            return precondition(format!("{residue} is not an element of {group}"));
        }
        Ok(Self {
            ordering: build_ordering(group),
            residue,
        })
    }

    pub fn length(&self) -> usize {
        self.ordering.sequence.len()
    }

    /// `sum_k x_k g_k` as a group element index.
    pub fn weighted_sum(&self, x: &BitWord) -> usize {
        let g = &self.ordering.group;
        let idx = self.ordering.indices();
        let table = g.addition_table();
        let n = g.order();
        x.support().fold(0, |acc, k| table[acc * n + idx[k]])
    }

    pub fn contains(&self, x: &BitWord) -> bool {
        x.len() == self.length() && self.weighted_sum(x) == self.ordering.group.index_of(&self.residue)
    }
}

/// Lists the code by walking `GF(2)^n` in Gray-code order, updating the
/// running group sum with a single addition or subtraction per step.
pub fn enumerate_code(spec: &GroupCodeSpec, cap: u128) -> Result<CodeBook> {
    let n = spec.length();
    if n > 40 {
        return precondition(format!("enumeration over 2^{n} words is out of range"));
    }
    check_cap(1u128 << n, cap)?;
    let g = &spec.ordering.group;
    let order = g.order();
    let table = g.addition_table();
    let neg: Vec<usize> = (0..order).map(|i| g.index_of(&g.neg(&g.element_at(i)))).collect();
    let idx = spec.ordering.indices();
    let target = g.index_of(&spec.residue);
    let mut words = Vec::new();
    let mut bits = 0u64;
    let mut sum = 0usize;
    for step in 0u64..(1u64 << n) {
        if step > 0 {
            let k = step.trailing_zeros() as usize;
            bits ^= 1 << k;
            let gk = if bits >> k & 1 == 1 { idx[k] } else { neg[idx[k]] };
            sum = table[sum * order + gk];
        }
        if sum == target {
            words.push(BitWord::from_raw(n, bits));
        }
    }
    words.sort_unstable();
    Ok(CodeBook::from_sorted_unchecked(n, words))
}

/// Subset-sum counts: entry `h` is the number of subsets of the group whose
/// sum is element `h`. Quadratic in the group order.
fn subset_sum_counts(group: &FiniteAbelianGroup) -> Vec<BigUint> {
    let n = group.order();
    let table = group.addition_table();
    let mut counts = vec![BigUint::from(0u32); n];
    counts[0] = BigUint::from(1u32);
    for g in 0..n {
        let mut next = counts.clone();
        for (h, c) in counts.iter().enumerate() {
            next[table[h * n + g]] += c;
        }
        counts = next;
    }
    counts
}

/// Size of the group code with the given residue, without listing it.
pub fn code_cardinality(group: &FiniteAbelianGroup, residue: &GroupElement) -> Result<BigUint> {
    if !group.contains(residue) {
        return precondition(format!("{residue} is not an element of {group}"));
    }
    check_group_order(group)?;
    Ok(subset_sum_counts(group).swap_remove(group.index_of(residue)))
}

fn check_group_order(group: &FiniteAbelianGroup) -> Result<()> {
    if group.order() > 4096 {
        return precondition(format!("group order {} too large for counting", group.order()));
    }
    Ok(())
}

/// Size of every coset of the partition, by residue in lexicographic order.
pub fn cr_partition_sizes(group: &FiniteAbelianGroup) -> Result<Vec<(GroupElement, BigUint)>> {
    check_group_order(group)?;
    Ok(subset_sum_counts(group)
        .into_iter()
        .enumerate()
        .map(|(i, c)| (group.element_at(i), c))
        .collect())
}

/// Over all isomorphism classes of order `n`, the group whose zero-residue
/// code is largest; the first listed class wins ties.
pub fn best_group_code(n: u32) -> Result<(FiniteAbelianGroup, BigUint)> {
    if n > 4096 {
        return precondition(format!("order {n} too large"));
    }
    let mut best: Option<(FiniteAbelianGroup, BigUint)> = None;
    for g in abelian_groups_of_order(n)? {
        let c = code_cardinality(&g, &g.zero())?;
        if best.as_ref().map_or(true, |(_, b)| c > *b) {
            best = Some((g, c));
        }
    }
    Ok(best.expect("at least one group per order"))
}
