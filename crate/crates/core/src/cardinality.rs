//! Code sizes without enumeration: weight enumerators, the dual-side
//! character sums, and class-size substitution for coloured codes.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::cyclotomic::CyclotomicInteger;
use crate::algebra::field::{is_prime, vector_at};
use crate::algebra::linear::PrimeLinearCode;
use crate::bounds::ExactRational;
use crate::error::{check_cap, precondition, Error, Result};

/// Default cap on codeword enumeration for the direct enumerators.
pub const HWE_CAP: u128 = 1 << 22;

/// Largest field for which [`zero_symbol_scan`] walks every permutation.
pub const MAX_SCAN_P: u32 = 7;

/// `counts[w]` codewords of Hamming weight `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HammingWeightEnumerator {
    length: usize,
    counts: Vec<BigUint>,
}

impl HammingWeightEnumerator {
    pub fn new(length: usize, counts: Vec<BigUint>) -> Result<Self> {
        if counts.len() != length + 1 {
            return Err(Error::LengthMismatch {
                expected: length + 1,
                got: counts.len(),
            });
        }
        Ok(Self { length, counts })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn count(&self, w: usize) -> BigUint {
        self.counts.get(w).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }
}

/// Codeword counts keyed by symbol composition `(i_0, ..., i_{p-1})`.
/// Only realised compositions are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteWeightEnumerator {
    p: u32,
    length: usize,
    counts: BTreeMap<Vec<u32>, BigUint>,
}

impl CompleteWeightEnumerator {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn counts(&self) -> &BTreeMap<Vec<u32>, BigUint> {
        &self.counts
    }

    pub fn get(&self, composition: &[u32]) -> BigUint {
        self.counts.get(composition).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// Collapses compositions to Hamming weight `n - i_0`.
    pub fn hamming(&self) -> HammingWeightEnumerator {
        let mut counts = vec![BigUint::zero(); self.length + 1];
        for (comp, c) in &self.counts {
            counts[self.length - comp[0] as usize] += c;
        }
        HammingWeightEnumerator {
            length: self.length,
            counts,
        }
    }
}

fn composition(word: &[u32], p: u32) -> Vec<u32> {
    let mut comp = vec![0u32; p as usize];
    for &s in word {
        comp[s as usize] += 1;
    }
    comp
}

fn compositions_of(words: &[Vec<u32>], p: u32) -> BTreeMap<Vec<u32>, u64> {
    let mut out = BTreeMap::new();
    for w in words {
        *out.entry(composition(w, p)).or_insert(0) += 1;
    }
    out
}

/// Counts by listing every codeword.
pub fn cwe_direct(code: &PrimeLinearCode, cap: u128) -> Result<CompleteWeightEnumerator> {
    let words = code.codewords(cap)?;
    Ok(CompleteWeightEnumerator {
        p: code.p(),
        length: code.length(),
        counts: compositions_of(&words, code.p())
            .into_iter()
            .map(|(k, v)| (k, BigUint::from(v)))
            .collect(),
    })
}

pub fn hwe_direct(code: &PrimeLinearCode, cap: u128) -> Result<HammingWeightEnumerator> {
    Ok(cwe_direct(code, cap)?.hamming())
}

fn to_natural(z: &CyclotomicInteger) -> Result<BigUint> {
    let v = z.to_integer()?;
    match v.sign() {
        Sign::Minus => Err(Error::NonIntegral(format!("negative count {v}"))),
        _ => Ok(v.magnitude().clone()),
    }
}

/// Expands `prod_v (sum_j zeta^{v j} z_j)^{k_v}` as a polynomial in `z`.
fn dual_product(p: u32, dual_comp: &[u32]) -> HashMap<Vec<u32>, CyclotomicInteger> {
    let mut poly = HashMap::new();
    poly.insert(vec![0u32; p as usize], CyclotomicInteger::one(p));
    for (v, &k) in dual_comp.iter().enumerate() {
        for _ in 0..k {
            let mut next: HashMap<Vec<u32>, CyclotomicInteger> = HashMap::with_capacity(poly.len() * 2);
            for (mono, coeff) in &poly {
                for j in 0..p as usize {
                    let mut key = mono.clone();
                    key[j] += 1;
                    let term = coeff.mul_root((v * j) as i64);
                    next.entry(key).and_modify(|acc| *acc = &*acc + &term).or_insert(term);
                }
            }
            poly = next;
        }
    }
    poly
}

/// The complete weight enumerator from the dual code: the average over dual
/// words `c` of `prod_i (z_0 + z_1 zeta^{c_i} + ... + z_{p-1} zeta^{(p-1)c_i})`.
/// Products are shared between dual words of equal composition. Every
/// coefficient must come out a non-negative rational integer.
pub fn cwe_macwilliams(code: &PrimeLinearCode, cap: u128) -> Result<CompleteWeightEnumerator> {
    let p = code.p();
    let dual = code.dual_codewords(cap)?;
    let size = BigInt::from(dual.words.len());
    let groups: Vec<(Vec<u32>, u64)> = compositions_of(&dual.words, p).into_iter().collect();
    let merged = groups
        .par_iter()
        .map(|(comp, mult)| {
            let mult = BigInt::from(*mult);
            dual_product(p, comp)
                .into_iter()
                .map(|(k, v)| (k, v.scale(&mult)))
                .collect::<HashMap<_, _>>()
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                a.entry(k).and_modify(|acc| *acc = &*acc + &v).or_insert(v);
            }
            a
        });
    let mut counts = BTreeMap::new();
    for (k, v) in merged {
        let c = to_natural(&v.div_exact(&size)?)?;
        if !c.is_zero() {
            counts.insert(k, c);
        }
    }
    Ok(CompleteWeightEnumerator {
        p,
        length: code.length(),
        counts,
    })
}

/// Size of a ternary outer code composed with the 4-to-3 block map:
/// each zero symbol has two binary preimages, each nonzero symbol one.
pub fn mineral_count_from_hwe(w: &HammingWeightEnumerator) -> BigUint {
    let n = w.length;
    w.counts.iter().enumerate().map(|(wt, a)| a << (n - wt)).sum()
}

/// `out[j] = class_sizes[perm[j]]`: the size of the class sent to symbol `j`.
pub fn sizes_by_symbol(class_sizes: &[usize], perm: &[usize]) -> Result<Vec<usize>> {
    if perm.len() != class_sizes.len() {
        return Err(Error::LengthMismatch {
            expected: class_sizes.len(),
            got: perm.len(),
        });
    }
    let mut seen = vec![false; perm.len()];
    for &c in perm {
        match seen.get_mut(c) {
            Some(s) if !*s => *s = true,
            _ => return precondition("perm is not a permutation of the classes"),
        }
    }
    Ok(perm.iter().map(|&c| class_sizes[c]).collect())
}

fn substitute(cwe: &CompleteWeightEnumerator, by_symbol: &[usize]) -> BigUint {
    // powers[j][e] = by_symbol[j]^e
    let powers: Vec<Vec<BigUint>> = by_symbol
        .iter()
        .map(|&s| {
            let base = BigUint::from(s);
            let mut row = vec![BigUint::one()];
            for e in 0..cwe.length {
                let next = &row[e] * &base;
                row.push(next);
            }
            row
        })
        .collect();
    cwe.counts
        .iter()
        .map(|(comp, count)| {
            comp.iter()
                .enumerate()
                .fold(count.clone(), |acc, (j, &e)| acc * &powers[j][e as usize])
        })
        .sum()
}

/// Size of the coloured code whose symbol `j` is realised by class
/// `perm[j]`: the enumerator evaluated at the class sizes.
pub fn count_from_partition(cwe: &CompleteWeightEnumerator, class_sizes: &[usize], perm: &[usize]) -> Result<BigUint> {
    if class_sizes.len() != cwe.p as usize {
        return Err(Error::LengthMismatch {
            expected: cwe.p as usize,
            got: class_sizes.len(),
        });
    }
    Ok(substitute(cwe, &sizes_by_symbol(class_sizes, perm)?))
}

/// `sum_j s_j zeta^{j c}` with `s_j` the size of the class at symbol `j`.
pub fn lambda(by_symbol: &[usize], c: u32) -> CyclotomicInteger {
    let p = by_symbol.len() as u32;
    by_symbol
        .iter()
        .enumerate()
        .fold(CyclotomicInteger::zero(p), |acc, (j, &s)| {
            let term = CyclotomicInteger::root_power(p, i64::from(c) * j as i64).scale(&BigInt::from(s));
            &acc + &term
        })
}

/// Coloured-code size from the dual alone: the average over dual words of
/// `prod_i lambda(c_i)`. Needs only `p^r` dual words, which is what makes
/// long outer codes countable.
pub fn count_via_dual(code: &PrimeLinearCode, by_symbol: &[usize], cap: u128) -> Result<BigUint> {
    let p = code.p();
    if by_symbol.len() != p as usize {
        return Err(Error::LengthMismatch {
            expected: p as usize,
            got: by_symbol.len(),
        });
    }
    let dual = code.dual_codewords(cap)?;
    let lambdas: Vec<CyclotomicInteger> = (0..p).map(|c| lambda(by_symbol, c)).collect();
    let groups: Vec<(Vec<u32>, u64)> = compositions_of(&dual.words, p).into_iter().collect();
    let total = groups
        .par_iter()
        .map(|(comp, mult)| {
            comp.iter()
                .enumerate()
                .fold(CyclotomicInteger::from_integer(p, *mult), |acc, (v, &k)| {
                    &acc * &lambdas[v].pow(k)
                })
        })
        .reduce(|| CyclotomicInteger::zero(p), |a, b| &a + &b);
    to_natural(&total.div_exact(&BigInt::from(dual.words.len()))?)
}

/// Counts over every assignment of classes to symbols, grouped by the class
/// placed at symbol 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroSymbolScan {
    pub class_sizes: Vec<usize>,
    /// `(min, max)` over placements with class `c` at symbol 0.
    pub ranges: Vec<(BigUint, BigUint)>,
}

impl ZeroSymbolScan {
    pub fn depends_only_on_zero_class(&self) -> bool {
        self.ranges.iter().all(|(lo, hi)| lo == hi)
    }

    pub fn maximum(&self) -> BigUint {
        self.ranges.iter().map(|r| r.1.clone()).max().unwrap_or_default()
    }

    /// Whether every largest class attains the maximum at symbol 0.
    pub fn largest_class_maximizes(&self) -> bool {
        let big = self.class_sizes.iter().copied().max().unwrap_or(0);
        let best = self.maximum();
        self.class_sizes
            .iter()
            .zip(&self.ranges)
            .filter(|(&s, _)| s == big)
            .all(|(_, r)| r.1 == best)
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..k).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

/// Evaluates every class-to-symbol permutation. Permutations that induce
/// the same sizes by symbol are evaluated once.
pub fn zero_symbol_scan(cwe: &CompleteWeightEnumerator, class_sizes: &[usize]) -> Result<ZeroSymbolScan> {
    let p = cwe.p as usize;
    if cwe.p > MAX_SCAN_P {
        return precondition(format!("permutation scan limited to p <= {MAX_SCAN_P}"));
    }
    if class_sizes.len() != p {
        return Err(Error::LengthMismatch {
            expected: p,
            got: class_sizes.len(),
        });
    }
    let perms = permutations(p);
    let mut distinct: Vec<Vec<usize>> = perms
        .iter()
        .map(|perm| perm.iter().map(|&c| class_sizes[c]).collect())
        .collect();
    distinct.sort();
    distinct.dedup();
    let values: HashMap<Vec<usize>, BigUint> = distinct
        .into_par_iter()
        .map(|s| {
            let v = substitute(cwe, &s);
            (s, v)
        })
        .collect();
    let mut ranges: Vec<Option<(BigUint, BigUint)>> = vec![None; p];
    for perm in &perms {
        let key: Vec<usize> = perm.iter().map(|&c| class_sizes[c]).collect();
        let v = &values[&key];
        let slot = &mut ranges[perm[0]];
        *slot = Some(match slot.take() {
            None => (v.clone(), v.clone()),
            Some((lo, hi)) => (lo.min(v.clone()), hi.max(v.clone())),
        });
    }
    Ok(ZeroSymbolScan {
        class_sizes: class_sizes.to_vec(),
        ranges: ranges
            .into_iter()
            .map(|r| r.expect("every class leads some permutation"))
            .collect(),
    })
}

/// Number of columns of a ternary base matrix orthogonal to each `a in GF(3)^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierProfile {
    base: PrimeLinearCode,
    beta: Vec<u32>,
}

impl FourierProfile {
    pub fn base(&self) -> &PrimeLinearCode {
        &self.base
    }

    /// Indexed by `vector_index(a, 3)`.
    pub fn beta(&self) -> &[u32] {
        &self.beta
    }

    /// `(1/3^r) sum_a zeta^{-a.b} 4^{beta(a)}`, evaluated in `Z[zeta_3]`.
    pub fn count(&self, b: &[u32]) -> Result<BigUint> {
        self.count_with(&self.elements(), b)
    }

    /// [`Self::count`] for every residue, indexed like `beta`, by a fast
    /// transform over `Z_3^r`: one size-3 transform per coordinate.
    pub fn counts(&self) -> Result<Vec<BigUint>> {
        let r = self.base.redundancy();
        let mut values: Vec<CyclotomicInteger> = self
            .beta
            .iter()
            .map(|&b| CyclotomicInteger::from_integer(3, BigInt::one() << (2 * b)))
            .collect();
        let mut stride = 1;
        for _ in 0..r {
            for start in (0..values.len()).filter(|i| (i / stride) % 3 == 0) {
                let v: Vec<CyclotomicInteger> = (0..3).map(|d| values[start + d * stride].clone()).collect();
                for e in 0..3 {
                    values[start + e * stride] = (0..3).fold(CyclotomicInteger::zero(3), |acc, d| {
                        &acc + &v[d].mul_root(-((d * e) as i64))
                    });
                }
            }
            stride *= 3;
        }
        let denom = BigInt::from(3u32).pow(r as u32);
        values.iter().map(|v| to_natural(&v.div_exact(&denom)?)).collect()
    }

    fn elements(&self) -> Vec<Vec<u32>> {
        let r = self.base.redundancy();
        (0..self.beta.len()).map(|idx| vector_at(idx, 3, r)).collect()
    }

    fn count_with(&self, elements: &[Vec<u32>], b: &[u32]) -> Result<BigUint> {
        let r = self.base.redundancy();
        if b.len() != r {
            return Err(Error::LengthMismatch {
                expected: r,
                got: b.len(),
            });
        }
        if b.iter().any(|&v| v >= 3) {
            return precondition("residue entries must lie in GF(3)");
        }
        // tally[k][beta] counts the a with a.b = k mod 3; bucket k carries zeta^{-k}
        let ell = self.base.length();
        let mut tally = vec![[0u64; 3]; ell + 1];
        for (a, &beta) in elements.iter().zip(&self.beta) {
            let dot = a.iter().zip(b).map(|(x, y)| x * y).sum::<u32>() % 3;
            tally[beta as usize][dot as usize] += 1;
        }
        let mut buckets = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
        for (beta, row) in tally.iter().enumerate() {
            for (bucket, &c) in buckets.iter_mut().zip(row) {
                if c > 0 {
                    *bucket += BigInt::from(c) << (2 * beta);
                }
            }
        }
        let [b0, b1, b2] = buckets;
        let sum = CyclotomicInteger::from_coeffs(3, vec![b0, b2, b1])?;
        to_natural(&sum.div_exact(&BigInt::from(3u32).pow(r as u32))?)
    }
}

pub fn beta_profile(base: &PrimeLinearCode, cap: u128) -> Result<FourierProfile> {
    if base.p() != 3 {
        return precondition(format!("profile needs a ternary code, got GF({})", base.p()));
    }
    let r = base.redundancy();
    let size = 3u128.checked_pow(r as u32).unwrap_or(u128::MAX);
    check_cap(size, cap)?;
    let cols: Vec<Vec<u32>> = (0..base.length()).map(|i| base.column(i)).collect();
    let beta = (0..size as usize)
        .into_par_iter()
        .map(|idx| {
            let a = vector_at(idx, 3, r);
            cols.iter()
                .filter(|h| a.iter().zip(h.iter()).map(|(x, y)| x * y).sum::<u32>() % 3 == 0)
                .count() as u32
        })
        .collect();
    Ok(FourierProfile {
        base: base.clone(),
        beta,
    })
}

/// Number of binary words of length `2l` whose lifted syndrome is `b`.
pub fn fourier_count(base: &PrimeLinearCode, b: &[u32], cap: u128) -> Result<BigUint> {
    beta_profile(base, cap)?.count(b)
}

/// `1 + <-a,b> + <-a,2b> + <-a,b><-a,2b>` with `<u,v> = zeta_3^{u.v}`.
/// Reduces to 4 when `a` and `b` are orthogonal and to 1 otherwise.
pub fn character_term(a: &[u32], b: &[u32]) -> Result<CyclotomicInteger> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    let dot = a
        .iter()
        .zip(b)
        .map(|(x, y)| i64::from(x % 3) * i64::from(y % 3))
        .sum::<i64>();
    let chi = |k: i64| CyclotomicInteger::root_power(3, -dot * k);
    let one = CyclotomicInteger::one(3);
    Ok(&(&(&one + &chi(1)) + &chi(2)) + &(&chi(1) * &chi(2)))
}

/// `4^l / 3^r + 2 (4/3)^r - 8/3`, a floor on the zero-residue count.
pub fn lower_bound_f0(ell: u32, r: u32) -> Result<ExactRational> {
    if r >= ell {
        return precondition(format!("need r < l, got r={r}, l={ell}"));
    }
    let three_r = BigInt::from(3u32).pow(r);
    let q = |n: BigInt, d: BigInt| ExactRational::new(n, d);
    Ok(
        q(BigInt::from(4u32).pow(ell), three_r.clone()) + q(BigInt::from(2u32) * BigInt::from(4u32).pow(r), three_r)
            - q(BigInt::from(8), BigInt::from(3)),
    )
}

/// Size of the coloured code built from the group partition of `GF(2)^m`
/// and the Hamming code of length `n` over `GF(m+1)`:
/// `(2^{mn} + mn 2^{m(n-1)/(m+1)}) / (mn + 1)`.
pub fn hamming_partition_ceiling(m: u32, n: u32) -> Result<ExactRational> {
    let p = m + 1;
    if !is_prime(p) {
        return precondition(format!("m+1 = {p} is not prime"));
    }
    let mut len = 1u64;
    let mut power = u64::from(p);
    while len < u64::from(n) {
        len += power;
        power *= u64::from(p);
    }
    if len != u64::from(n) || n < 1 + p {
        return precondition(format!("{n} is not a Hamming length over GF({p})"));
    }
    let mn = u64::from(m) * u64::from(n);
    let tail = u64::from(m) * u64::from(n - 1) / u64::from(p);
    let num = (BigInt::one() << mn) + BigInt::from(mn) * (BigInt::one() << tail);
    Ok(ExactRational::new(num, BigInt::from(mn + 1)))
}
