use std::fmt;
use std::str::FromStr;

use crate::error::{precondition, Error, Result};

/// Direct product of cyclic groups `Z_{k_1} x ... x Z_{k_s}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    factors: Vec<u32>,
}

/// Element of a [`FiniteAbelianGroup`] as a tuple of residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub coords: Vec<u32>,
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if factors.is_empty() {
            return precondition("a group needs at least one cyclic factor");
        }
        if let Some(&bad) = factors.iter().find(|&&k| k < 2) {
            return precondition(format!("cyclic factor Z{bad} is too small"));
        }
        let order = factors.iter().try_fold(1u64, |acc, &k| acc.checked_mul(u64::from(k)));
        match order {
            Some(o) if o <= u64::from(u32::MAX) => Ok(Self { factors }),
            _ => precondition("group order overflows"),
        }
    }

    pub fn cyclic(k: u32) -> Result<Self> {
        Self::new(vec![k])
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|&k| k as usize).product()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.factors.len()],
        }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.coords.len() == self.factors.len() && g.coords.iter().zip(&self.factors).all(|(c, k)| c < k)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .zip(&self.factors)
                .map(|((x, y), k)| (x + y) % k)
                .collect(),
        }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a.coords.iter().zip(&self.factors).map(|(x, k)| (k - x) % k).collect(),
        }
    }

    /// Mixed-radix index; the first factor is the most significant digit,
    /// so index order is lexicographic order.
    pub fn index_of(&self, g: &GroupElement) -> usize {
        g.coords
            .iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&c, &k)| acc * k as usize + c as usize)
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let mut coords = vec![0; self.factors.len()];
        for (slot, &k) in coords.iter_mut().zip(&self.factors).rev() {
            *slot = (index % k as usize) as u32;
            index /= k as usize;
        }
        GroupElement { coords }
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order()).map(|i| self.element_at(i)).collect()
    }

    /// Cayley table of addition on indices, row-major.
    pub fn addition_table(&self) -> Vec<usize> {
        let n = self.order();
        let elems = self.elements();
        let mut table = vec![0; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                table[i * n + j] = self.index_of(&self.add(a, b));
            }
        }
        table
    }

    /// Parses a residue such as `"2"` or `"1,0"`.
    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        let coords = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Precondition(format!("invalid residue component {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let g = GroupElement { coords };
        if !self.contains(&g) {
            return precondition(format!("{g} is not an element of {self}"));
        }
        Ok(g)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|k| format!("Z{k}")).collect();
        f.write_str(&parts.join("x"))
    }
}

impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        group_parse(s)
    }
}

/// Parses `Z<k>` terms joined by `x`, e.g. `Z3xZ6`.
pub fn group_parse(spec: &str) -> Result<FiniteAbelianGroup> {
    let factors = spec
        .trim()
        .split('x')
        .map(|term| {
            let digits = term
                .strip_prefix('Z')
                .ok_or_else(|| Error::Precondition(format!("malformed group term {term:?}")))?;
            digits
                .parse::<u32>()
                .map_err(|_| Error::Precondition(format!("malformed group term {term:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteAbelianGroup::new(factors)
}

fn factorize(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Integer partitions of `n` into non-increasing parts, largest first part first.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            rec(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// One representative per isomorphism class, written as a product of
/// prime-power cyclic groups (primes ascending, powers descending).
pub fn abelian_groups_of_order(n: u32) -> Result<Vec<FiniteAbelianGroup>> {
    if !(2..=1 << 20).contains(&n) {
        return precondition(format!("group order {n} out of range"));
    }
    let mut combos: Vec<Vec<u32>> = vec![Vec::new()];
    for (p, e) in factorize(n) {
        let choices: Vec<Vec<u32>> = partitions(e)
            .into_iter()
            .map(|parts| parts.into_iter().map(|k| p.pow(k)).collect())
            .collect();
        combos = combos
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut v = prefix.clone();
                    v.extend_from_slice(c);
                    v
                })
            })
            .collect();
    }
    combos.into_iter().map(FiniteAbelianGroup::new).collect()
}
