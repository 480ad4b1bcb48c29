//! Codes built from a block colouring and an outer code over `GF(p)`, the
//! lifted ternary parity-check codes, and the free-first-bit grain lift.

use rayon::prelude::*;

use crate::algebra::field::{vector_at, vector_index};
use crate::algebra::linear::{PrimeLinearCode, CODEWORD_CAP};
use crate::code::{prepend_bit_lift, CodeBook};
use crate::coloring::{build_graph, Coloring};
use crate::error::{check_cap, precondition, Error, Result, DEFAULT_ENUMERATION_CAP};
use crate::word::{BitWord, MAX_WORD_LEN};

/// A binary code described by a membership test.
pub trait Membership {
    fn length(&self) -> usize;
    fn contains(&self, x: &BitWord) -> Result<bool>;
}

fn check_length(x: &BitWord, expected: usize) -> Result<()> {
    if x.len() != expected {
        return Err(Error::LengthMismatch { expected, got: x.len() });
    }
    Ok(())
}

/// Blocks of `m` bits are coloured, colours become `GF(p)` symbols, and the
/// symbol word must lie in a coset of the outer code.
#[derive(Clone, Debug)]
pub struct ColoredCodeSpec {
    coloring: Coloring,
    outer: PrimeLinearCode,
    symbol_map: Vec<u32>,
    coset: Vec<u32>,
}

impl ColoredCodeSpec {
    /// Checks that the colouring is proper on `G_{t,m}` and that its colour
    /// count matches the outer field. The largest class goes to symbol 0 and
    /// the remaining classes take symbols `1, 2, ...` in label order.
    pub fn new(coloring: Coloring, outer: PrimeLinearCode) -> Result<Self> {
        let p = coloring.color_count();
        if p != outer.p() as usize {
            return precondition(format!(
                "{p} colour classes but the outer code is over GF({})",
                outer.p()
            ));
        }
        if outer.designed_t() < coloring.t() {
            return precondition(format!(
                "outer code corrects {} symbol errors, colouring needs {}",
                outer.designed_t(),
                coloring.t()
            ));
        }
        let total = coloring.m() * outer.length();
        if total > MAX_WORD_LEN {
            return Err(Error::InvalidLength(total));
        }
        let graph = build_graph(coloring.t(), coloring.m(), DEFAULT_ENUMERATION_CAP)?;
        if let Some(bad) = coloring.violation(&graph)? {
            return precondition(format!(
                "colouring is not proper: {} and {} share colour {}",
                bad.u, bad.v, bad.color
            ));
        }
        let symbol_map = default_symbol_map(&coloring.class_sizes());
        let coset = vec![0; outer.redundancy()];
        Ok(Self {
            coloring,
            outer,
            symbol_map,
            coset,
        })
    }

    /// `map[class]` is the symbol of that class.
    pub fn with_symbol_map(mut self, map: Vec<u32>) -> Result<Self> {
        let p = self.symbol_map.len();
        let mut seen = vec![false; p];
        if map.len() != p {
            return precondition(format!("symbol map needs {p} entries"));
        }
        for &s in &map {
            match seen.get_mut(s as usize) {
                Some(f) if !*f => *f = true,
                _ => return precondition("symbol map is not a permutation"),
            }
        }
        self.symbol_map = map;
        Ok(self)
    }

    /// Syndrome target of the outer code; all zeros by default.
    pub fn with_coset(mut self, syndrome: Vec<u32>) -> Result<Self> {
        if syndrome.len() != self.outer.redundancy() {
            return Err(Error::LengthMismatch {
                expected: self.outer.redundancy(),
                got: syndrome.len(),
            });
        }
        if syndrome.iter().any(|&s| s >= self.outer.p()) {
            return precondition("coset entries must lie in GF(p)");
        }
        self.coset = syndrome;
        Ok(self)
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    pub fn outer(&self) -> &PrimeLinearCode {
        &self.outer
    }

    pub fn symbol_map(&self) -> &[u32] {
        &self.symbol_map
    }

    pub fn coset(&self) -> &[u32] {
        &self.coset
    }

    /// Block width `m`.
    pub fn block_len(&self) -> usize {
        self.coloring.m()
    }

    /// Class sizes listed by symbol: entry `j` is the size of the class sent to `j`.
    pub fn sizes_by_symbol(&self) -> Vec<usize> {
        let sizes = self.coloring.class_sizes();
        let mut out = vec![0; sizes.len()];
        for (c, &s) in self.symbol_map.iter().enumerate() {
            out[s as usize] = sizes[c];
        }
        out
    }
}

impl Membership for ColoredCodeSpec {
    fn length(&self) -> usize {
        self.coloring.m() * self.outer.length()
    }

    fn contains(&self, x: &BitWord) -> Result<bool> {
        colored_membership(x, self)
    }
}

/// `map[class]`: the largest class (lowest label on ties) gets symbol 0,
/// the others take `1, 2, ...` in label order.
pub fn default_symbol_map(class_sizes: &[usize]) -> Vec<u32> {
    let p = class_sizes.len();
    let largest = (0..p)
        .max_by_key(|&c| (class_sizes[c], std::cmp::Reverse(c)))
        .unwrap_or(0);
    let mut map = vec![0u32; p];
    let mut next = 1;
    for (c, slot) in map.iter_mut().enumerate() {
        if c != largest {
            *slot = next;
            next += 1;
        }
    }
    map
}

/// Symbol word of `x`: block `i` holds cells `i*m+1 ..= (i+1)*m`.
pub fn apply_coloring(x: &BitWord, coloring: &Coloring, symbol_map: &[u32]) -> Result<Vec<u32>> {
    let m = coloring.m();
    if x.len() % m != 0 {
        return precondition(format!("length {} is not a multiple of {m}", x.len()));
    }
    if symbol_map.len() != coloring.color_count() {
        return precondition("symbol map does not match the colour count");
    }
    (0..x.len() / m)
        .map(|i| {
            let block = x.block(i, m)?;
            Ok(symbol_map[coloring.color_of(block.bits()) as usize])
        })
        .collect()
}

pub fn colored_membership(x: &BitWord, spec: &ColoredCodeSpec) -> Result<bool> {
    check_length(x, spec.length())?;
    let symbols = apply_coloring(x, &spec.coloring, &spec.symbol_map)?;
    Ok(spec.outer.syndrome(&symbols)? == spec.coset)
}

/// Every member, built by expanding each outer coset word into the
/// preimages of its symbols. Refused when the outer coset or the result is
/// larger than `cap`.
pub fn colored_enumerate(spec: &ColoredCodeSpec, cap: u128) -> Result<CodeBook> {
    let m = spec.block_len();
    let n = spec.outer.length();
    let Some(leader) = spec.outer.coset_leader(&spec.coset)? else {
        return CodeBook::new(m * n, Vec::new());
    };
    let p = spec.outer.p();
    let codewords = spec.outer.codewords(cap.min(CODEWORD_CAP))?;
    let mut preimages = vec![Vec::new(); p as usize];
    for (c, class) in spec.coloring.classes().iter().enumerate() {
        preimages[spec.symbol_map[c] as usize] = class.iter().map(|&v| u64::from(v)).collect();
    }
    let shifted: Vec<Vec<u32>> = codewords
        .into_iter()
        .map(|w| w.iter().zip(&leader).map(|(a, b)| (a + b) % p).collect())
        .collect();
    let total = shifted
        .iter()
        .map(|w| {
            w.iter()
                .fold(1u128, |acc, &s| acc.saturating_mul(preimages[s as usize].len() as u128))
        })
        .fold(0u128, u128::saturating_add);
    check_cap(total, cap)?;
    let mut words: Vec<BitWord> = shifted
        .par_iter()
        .flat_map_iter(|w| {
            let mut out = vec![0u64];
            for (i, &s) in w.iter().enumerate() {
                let pre = &preimages[s as usize];
                out = out
                    .iter()
                    .flat_map(|&acc| pre.iter().map(move |&b| acc | b << (i * m)))
                    .collect();
            }
            out.into_iter()
                .map(|bits| BitWord::new(m * n, bits).expect("length checked"))
        })
        .collect();
    words.par_sort_unstable();
    CodeBook::new(m * n, words)
}

/// Ternary parity-check code whose matrix interleaves `2 h'_i` and `h'_i`.
#[derive(Clone, Debug)]
pub struct LiftedTernarySpec {
    base: PrimeLinearCode,
    lifted: Vec<Vec<u32>>,
    residue: Vec<u32>,
}

impl LiftedTernarySpec {
    pub fn new(base: PrimeLinearCode, residue: Vec<u32>) -> Result<Self> {
        if base.p() != 3 {
            return precondition(format!("base code must be ternary, got GF({})", base.p()));
        }
        if residue.len() != base.redundancy() {
            return Err(Error::LengthMismatch {
                expected: base.redundancy(),
                got: residue.len(),
            });
        }
        if residue.iter().any(|&s| s >= 3) {
            return precondition("residue entries must lie in GF(3)");
        }
        if 2 * base.length() > MAX_WORD_LEN {
            return Err(Error::InvalidLength(2 * base.length()));
        }
        let lifted = build_lifted_matrix(base.parity_check());
        Ok(Self { base, lifted, residue })
    }

    pub fn base(&self) -> &PrimeLinearCode {
        &self.base
    }

    pub fn lifted_matrix(&self) -> &[Vec<u32>] {
        &self.lifted
    }

    pub fn residue(&self) -> &[u32] {
        &self.residue
    }

    /// `H x` over `GF(3)` with the bits of `x` read as 0/1.
    pub fn syndrome(&self, x: &BitWord) -> Result<Vec<u32>> {
        check_length(x, 2 * self.base.length())?;
        Ok(lifted_syndrome(&self.lifted, x.bits()))
    }
}

impl Membership for LiftedTernarySpec {
    fn length(&self) -> usize {
        2 * self.base.length()
    }

    fn contains(&self, x: &BitWord) -> Result<bool> {
        lifted_membership(x, self)
    }
}

fn lifted_syndrome(h: &[Vec<u32>], bits: u64) -> Vec<u32> {
    h.iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|&(j, _)| bits >> j & 1 == 1)
                .map(|(_, &v)| v)
                .sum::<u32>()
                % 3
        })
        .collect()
}

/// Columns `(2 h'_i, h'_i)` for each column `h'_i` of the ternary matrix.
pub fn build_lifted_matrix(h: &[Vec<u32>]) -> Vec<Vec<u32>> {
    h.iter()
        .map(|row| row.iter().flat_map(|&v| [(2 * v) % 3, v % 3]).collect())
        .collect()
}

pub fn lifted_membership(x: &BitWord, spec: &LiftedTernarySpec) -> Result<bool> {
    Ok(spec.syndrome(x)? == spec.residue)
}

/// Exhaustive scan of `GF(2)^{2l}`.
pub fn lifted_enumerate(spec: &LiftedTernarySpec, cap: u128) -> Result<CodeBook> {
    let len = 2 * spec.base.length();
    check_cap(1u128 << len, cap)?;
    let mut words: Vec<BitWord> = (0..1u64 << len)
        .into_par_iter()
        .filter(|&b| lifted_syndrome(&spec.lifted, b) == spec.residue)
        .map(|b| BitWord::new(len, b).expect("length checked"))
        .collect();
    words.par_sort_unstable();
    CodeBook::new(len, words)
}

/// Member count of every coset `C_a`, indexed by [`vector_index`] of `a`.
/// Walks `GF(2)^{2l}` in Gray-code order, so each step adds or removes one
/// column through a precomputed table.
pub fn lifted_coset_sizes(base: &PrimeLinearCode, cap: u128) -> Result<Vec<u64>> {
    if base.p() != 3 {
        return precondition("base code must be ternary");
    }
    let len = 2 * base.length();
    if len >= MAX_WORD_LEN {
        return Err(Error::InvalidLength(len));
    }
    check_cap(1u128 << len, cap)?;
    let h = build_lifted_matrix(base.parity_check());
    let r = base.redundancy();
    let classes = 3usize.pow(r as u32);
    let step = |j: usize, scale: u32| -> Vec<u32> {
        (0..classes)
            .map(|idx| {
                let v: Vec<u32> = vector_at(idx, 3, r)
                    .iter()
                    .zip(&h)
                    .map(|(&a, row)| (a + scale * row[j]) % 3)
                    .collect();
                vector_index(&v, 3) as u32
            })
            .collect()
    };
    let add: Vec<Vec<u32>> = (0..len).map(|j| step(j, 1)).collect();
    let sub: Vec<Vec<u32>> = (0..len).map(|j| step(j, 2)).collect();
    let mut sizes = vec![0u64; classes];
    let mut idx = 0usize;
    sizes[0] = 1;
    for i in 1..1u64 << len {
        let j = i.trailing_zeros() as usize;
        let gray = i ^ (i >> 1);
        idx = if gray >> j & 1 == 1 { add[j][idx] } else { sub[j][idx] } as usize;
        sizes[idx] += 1;
    }
    Ok(sizes)
}

/// A mineral code with one free cell prepended: `x` is a member iff
/// `(x_2, ..., x_n)` is a member of the inner code.
#[derive(Clone, Debug)]
pub struct GrainLift<S>(pub S);

impl<S: Membership> Membership for GrainLift<S> {
    fn length(&self) -> usize {
        self.0.length() + 1
    }

    fn contains(&self, x: &BitWord) -> Result<bool> {
        check_length(x, self.length())?;
        self.0.contains(&x.drop_first()?)
    }
}

/// The enumerated form of [`GrainLift`]: twice the size, one cell longer.
pub fn grain_lift(code: &CodeBook) -> Result<CodeBook> {
    prepend_bit_lift(code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::linear::{hamming_code, repetition_code};
    use crate::channel::ErrorModel;
    use crate::code::is_t_correcting;
    use crate::coloring::{gamma_coloring, group_partition_coloring, published_seven_coloring};

    const CAP: u128 = DEFAULT_ENUMERATION_CAP;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    fn gamma_spec(outer: PrimeLinearCode, t: u32) -> ColoredCodeSpec {
        ColoredCodeSpec::new(gamma_coloring(t), outer).unwrap()
    }

    fn gamma_word(x: &BitWord) -> Vec<u32> {
        let g = gamma_coloring(1);
        apply_coloring(x, &g, &[0, 1, 2]).unwrap()
    }

    #[test]
    fn coloring_blocks() {
        assert_eq!(gamma_word(&w("0100")), [1, 0]);
        assert_eq!(gamma_word(&w("0110")), [1, 2]);
        assert_eq!(gamma_word(&w("1100")), [0, 0]);
        let g = group_partition_coloring(3).unwrap();
        let map: Vec<u32> = (0..4).collect();
        let s = apply_coloring(&w("000101"), &g, &map).unwrap();
        assert_eq!(s, [g.color_of(0), g.color_of(w("101").bits())]);
        assert!(apply_coloring(&w("010"), &gamma_coloring(1), &[0, 1, 2]).is_err());
        let zero = apply_coloring(&BitWord::zeros(12).unwrap(), &g, &map).unwrap();
        assert!(zero.iter().all(|&s| s == g.color_of(0)));
    }

    #[test]
    fn default_symbol_map_puts_largest_class_at_zero() {
        let spec = gamma_spec(hamming_code(3, 2).unwrap(), 1);
        assert_eq!(spec.symbol_map(), [0, 1, 2]);
        let outer = hamming_code(7, 2).unwrap();
        let spec = ColoredCodeSpec::new(published_seven_coloring(), outer).unwrap();
        let sizes = spec.sizes_by_symbol();
        assert_eq!(sizes[0], 11);
        assert_eq!(default_symbol_map(&[1, 3, 2, 3]), [1, 0, 2, 3]);
        assert_eq!(sizes.iter().sum::<usize>(), 64);
    }

    #[test]
    fn spec_rejects_bad_inputs() {
        // three colours against GF(5)
        assert!(ColoredCodeSpec::new(gamma_coloring(1), hamming_code(5, 2).unwrap()).is_err());
        // outer code corrects fewer symbol errors than the colouring assumes
        assert!(ColoredCodeSpec::new(gamma_coloring(2), hamming_code(3, 2).unwrap()).is_err());
        let spec = gamma_spec(hamming_code(3, 2).unwrap(), 1);
        assert!(spec.clone().with_symbol_map(vec![0, 0, 1]).is_err());
        assert!(spec.clone().with_coset(vec![0]).is_err());
        assert!(colored_membership(&w("0000000"), &spec).is_err());
    }

    #[test]
    fn gamma_hamming_family() {
        let spec = gamma_spec(hamming_code(3, 2).unwrap(), 1);
        let code = colored_enumerate(&spec, CAP).unwrap();
        assert_eq!((code.length(), code.len()), (8, 32));
        assert!(is_t_correcting(&code, ErrorModel::mineral(1)));
        let brute = BitWord::all(8)
            .unwrap()
            .filter(|x| colored_membership(x, &spec).unwrap())
            .count();
        assert_eq!(brute, 32);
        let lifted = grain_lift(&code).unwrap();
        assert_eq!((lifted.length(), lifted.len()), (9, 64));
        assert!(is_t_correcting(&lifted, ErrorModel::grain(1)));
        let pred = GrainLift(spec);
        for x in BitWord::all(9).unwrap() {
            assert_eq!(pred.contains(&x).unwrap(), lifted.contains(&x));
        }
    }

    #[test]
    fn gamma_repetition_family() {
        for (len, t, mineral, grain) in [(5, 2, 34, 68), (6, 2, 66, 132), (7, 3, 130, 260)] {
            let spec = gamma_spec(repetition_code(3, len, t).unwrap(), t);
            assert!(colored_membership(&BitWord::zeros(2 * len).unwrap(), &spec).unwrap());
            let code = colored_enumerate(&spec, CAP).unwrap();
            assert_eq!(code.len(), mineral, "len={len}");
            assert!(is_t_correcting(&code, ErrorModel::mineral(t)));
            let lifted = grain_lift(&code).unwrap();
            assert_eq!(lifted.len(), grain);
            assert!(is_t_correcting(&lifted, ErrorModel::grain(t)));
        }
    }

    #[test]
    fn mineral_correction_across_colourings() {
        let cases: Vec<(Coloring, PrimeLinearCode, u32)> = vec![
            (gamma_coloring(1), hamming_code(3, 2).unwrap(), 1),
            (gamma_coloring(2), repetition_code(3, 5, 2).unwrap(), 2),
            (gamma_coloring(3), repetition_code(3, 7, 3).unwrap(), 3),
            (published_seven_coloring(), repetition_code(7, 3, 1).unwrap(), 1),
            (
                group_partition_coloring(6).unwrap(),
                repetition_code(7, 3, 1).unwrap(),
                1,
            ),
        ];
        for (coloring, outer, t) in cases {
            let spec = ColoredCodeSpec::new(coloring, outer).unwrap();
            let code = colored_enumerate(&spec, CAP).unwrap();
            assert!(code.length() <= 18);
            assert!(is_t_correcting(&code, ErrorModel::mineral(t)), "len={}", code.length());
        }
    }

    #[test]
    fn every_coset_is_mineral_correcting() {
        let outer = hamming_code(3, 2).unwrap();
        for idx in 0..9 {
            let spec = gamma_spec(outer.clone(), 1).with_coset(vector_at(idx, 3, 2)).unwrap();
            let code = colored_enumerate(&spec, CAP).unwrap();
            assert!(code.iter().all(|x| colored_membership(x, &spec).unwrap()));
            assert!(is_t_correcting(&code, ErrorModel::mineral(1)));
        }
    }

    #[test]
    fn lifted_matrix_shape() {
        assert_eq!(build_lifted_matrix(&[vec![1]]), [vec![2, 1]]);
        assert_eq!(build_lifted_matrix(&[vec![0], vec![0]]), [vec![0, 0], vec![0, 0]]);
        let h = build_lifted_matrix(hamming_code(3, 2).unwrap().parity_check());
        assert_eq!(h[0].len(), 8);
        let col = |j: usize| h.iter().map(|row| row[j]).collect::<Vec<_>>();
        assert_eq!(col(0), [0, 2]);
        assert_eq!(col(1), [0, 1]);
    }

    fn bases() -> Vec<PrimeLinearCode> {
        let mut out = vec![hamming_code(3, 2).unwrap()];
        for len in 2..=10 {
            out.push(repetition_code(3, len, ((len - 1) / 2) as u32).unwrap());
        }
        out
    }

    #[test]
    fn lifted_syndrome_is_base_syndrome_of_gamma() {
        for base in bases() {
            let len = 2 * base.length();
            let spec = LiftedTernarySpec::new(base.clone(), vec![0; base.redundancy()]).unwrap();
            for b in 0..1u64 << len {
                let x = BitWord::new(len, b).unwrap();
                assert_eq!(spec.syndrome(&x).unwrap(), base.syndrome(&gamma_word(&x)).unwrap());
            }
        }
    }

    #[test]
    fn lifted_codes_match_colored_codes() {
        for base in bases().into_iter().filter(|b| b.length() <= 7) {
            let r = base.redundancy();
            let t = base.designed_t();
            for idx in [0, 1, 3usize.pow(r as u32) - 1] {
                let a = vector_at(idx, 3, r);
                let lifted = LiftedTernarySpec::new(base.clone(), a.clone()).unwrap();
                let c3 = lifted_enumerate(&lifted, CAP).unwrap();
                let colored = gamma_spec(base.clone(), t).with_coset(a).unwrap();
                assert_eq!(c3, colored_enumerate(&colored, CAP).unwrap());
                if t > 0 {
                    assert!(is_t_correcting(&c3, ErrorModel::mineral(t)));
                }
            }
        }
    }

    #[test]
    fn coset_sizes_partition_the_space() {
        for base in bases().into_iter().filter(|b| b.length() <= 8) {
            let sizes = lifted_coset_sizes(&base, CAP).unwrap();
            let len = 2 * base.length() as u32;
            assert_eq!(sizes.iter().sum::<u64>(), 1 << len);
            let max = *sizes.iter().max().unwrap();
            assert!(max as f64 >= 2f64.powi(len as i32) / 3f64.powi(base.redundancy() as i32));
            assert_eq!(max, sizes[0]);
        }
        let spec = LiftedTernarySpec::new(hamming_code(3, 2).unwrap(), vec![0, 0]).unwrap();
        assert_eq!(lifted_enumerate(&spec, CAP).unwrap().len(), 32);
        assert!(lifted_membership(&BitWord::zeros(8).unwrap(), &spec).unwrap());
    }

    #[test]
    fn caps_are_refusals() {
        let spec = gamma_spec(hamming_code(3, 2).unwrap(), 1);
        assert!(matches!(colored_enumerate(&spec, 16), Err(Error::CapExceeded { .. })));
        let lifted = LiftedTernarySpec::new(hamming_code(3, 2).unwrap(), vec![0, 0]).unwrap();
        assert!(matches!(lifted_enumerate(&lifted, 255), Err(Error::CapExceeded { .. })));
    }
}
