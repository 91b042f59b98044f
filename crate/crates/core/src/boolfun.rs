//! Boolean functions on GF(2^n) as bit-packed truth tables.
//!
//! Bit `i` of a table is the value at the element whose coordinate integer
//! is `i`. Tables with `n < 6` use the low `2^n` bits of a single word.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::gf2n::{FieldElem, HARD_MAX_N};
use crate::par;

const WORD: u32 = 6;

fn word_count(n: u32) -> usize {
    1usize << n.saturating_sub(WORD)
}

fn live_mask(n: u32) -> u64 {
    if n >= WORD {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TruthTable {
    n: u32,
    words: Vec<u64>,
}

impl TruthTable {
    pub fn zero(n: u32) -> Result<Self> {
        Self::check_n(n)?;
        Ok(TruthTable {
            n,
            words: alloc::vec![0; word_count(n)],
        })
    }

    fn check_n(n: u32) -> Result<()> {
        if n > HARD_MAX_N {
            return Err(Error::TooLarge {
                n,
                max_n: HARD_MAX_N,
            });
        }
        Ok(())
    }

    /// Wraps packed words; bits past `2^n` must be clear.
    pub fn from_words(n: u32, words: Vec<u64>) -> Result<Self> {
        Self::check_n(n)?;
        if words.len() != word_count(n) {
            return Err(Error::InvalidArgument("word count does not match 2^n bits"));
        }
        if words[0] & !live_mask(n) != 0 {
            return Err(Error::InvalidArgument("bits set beyond 2^n"));
        }
        Ok(TruthTable { n, words })
    }

    /// Evaluates `f` at every coordinate integer `0..2^n`.
    pub fn from_fn<F>(n: u32, f: F) -> Result<Self>
    where
        F: Fn(u32) -> bool + Sync + Send,
    {
        let mut table = Self::zero(n)?;
        let per_word = 1u32 << n.min(WORD);
        let block = 1 << 8;
        par::for_each_chunk_mut(&mut table.words, block, |ci, chunk| {
            for (wi, word) in chunk.iter_mut().enumerate() {
                let base = ((ci * block + wi) as u32) << WORD;
                let mut w = 0u64;
                for b in 0..per_word {
                    w |= (f(base + b) as u64) << b;
                }
                *word = w;
            }
        });
        Ok(table)
    }

    /// Evaluates `evaluator` at every field element in ascending order.
    pub fn build<F>(n: u32, evaluator: F) -> Result<Self>
    where
        F: Fn(FieldElem) -> bool + Sync + Send,
    {
        Self::from_fn(n, |x| evaluator(FieldElem::new(x)))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i >> WORD] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        let w = &mut self.words[i >> WORD];
        *w = (*w & !(1 << (i & 63))) | (v as u64) << (i & 63);
    }

    pub fn eval(&self, x: FieldElem) -> bool {
        self.get(x.index())
    }

    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.weight() == 1 << (self.n.max(1) - 1) && self.n > 0
    }

    fn same_n(&self, other: &TruthTable) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn xor(&self, other: &TruthTable) -> Result<TruthTable> {
        self.same_n(other)?;
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect();
        Ok(TruthTable { n: self.n, words })
    }

    /// Hamming distance.
    pub fn distance(&self, other: &TruthTable) -> Result<u64> {
        self.same_n(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| u64::from((a ^ b).count_ones()))
            .sum())
    }

    pub fn complement(&self) -> TruthTable {
        let mask = live_mask(self.n);
        let words = self.words.iter().map(|w| !w & mask).collect();
        TruthTable { n: self.n, words }
    }

    /// Packed little-endian bytes: byte `j`, bit `k` holds entry `8j + k`.
    pub fn to_le_bytes(&self) -> Vec<u8> {
        let len = (self.len() / 8).max(1);
        self.words
            .iter()
            .flat_map(|w| w.to_le_bytes())
            .take(len)
            .collect()
    }

    pub fn from_le_bytes(n: u32, bytes: &[u8]) -> Result<Self> {
        Self::check_n(n)?;
        if bytes.len() != (1usize << n).div_ceil(8) {
            return Err(Error::InvalidArgument("byte length does not match 2^n bits"));
        }
        let mut words = alloc::vec![0u64; word_count(n)];
        for (i, &b) in bytes.iter().enumerate() {
            words[i / 8] |= u64::from(b) << (8 * (i % 8));
        }
        Self::from_words(n, words)
    }

    /// The table read as one integer (entry `i` is bit `i`), in lowercase hex
    /// with `max(1, 2^n / 4)` digits and no prefix.
    pub fn to_hex(&self) -> String {
        let digits = (self.len() / 4).max(1);
        let mut out = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let nib = (self.words[d / 16] >> (4 * (d % 16))) & 0xf;
            let _ = write!(out, "{nib:x}");
        }
        out
    }
}

/// Algebraic normal form: bit `u` is the coefficient of `Π_{i∈u} x_i`, where
/// `x_i` is coordinate `i` of the input.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AnfTable {
    n: u32,
    words: Vec<u64>,
}

// In-word Möbius steps: for each stride s, the bits whose index has bit s clear.
const LOW_HALF: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

fn moebius(n: u32, words: &mut [u64]) {
    for (s, mask) in LOW_HALF.iter().enumerate().take(n.min(WORD) as usize) {
        let shift = 1 << s;
        for w in words.iter_mut() {
            *w ^= (*w & mask) << shift;
        }
    }
    let mut h = 1;
    while h < words.len() {
        par::for_each_chunk_mut(words, 2 * h, |_, block| {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter().zip(hi.iter_mut()) {
                *b ^= *a;
            }
        });
        h *= 2;
    }
}

impl AnfTable {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coefficient(&self, u: usize) -> bool {
        self.words[u >> WORD] >> (u & 63) & 1 == 1
    }

    /// Set monomial masks, ascending.
    pub fn monomials(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (wi, &w) in self.words.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                out.push(((wi as u32) << WORD) | bits.trailing_zeros());
                bits &= bits - 1;
            }
        }
        out
    }

    /// Largest monomial weight, `-1` for the zero polynomial.
    pub fn degree(&self) -> i32 {
        let mut best = -1i32;
        for (wi, &w) in self.words.iter().enumerate() {
            let hi = (wi as u32).count_ones() as i32;
            if w == 0 || hi + WORD as i32 <= best {
                continue;
            }
            let mut bits = w;
            while bits != 0 {
                best = best.max(hi + bits.trailing_zeros().count_ones() as i32);
                bits &= bits - 1;
            }
        }
        best
    }

    /// Inverse transform; the Möbius transform is an involution.
    pub fn to_truth_table(&self) -> TruthTable {
        let mut words = self.words.clone();
        moebius(self.n, &mut words);
        TruthTable { n: self.n, words }
    }

    pub fn as_truth_table_bits(&self) -> TruthTable {
        TruthTable {
            n: self.n,
            words: self.words.clone(),
        }
    }
}

pub fn anf(f: &TruthTable) -> AnfTable {
    let mut words = f.words.clone();
    moebius(f.n, &mut words);
    AnfTable { n: f.n, words }
}

/// Degree of the ANF; `-1` for the zero function.
pub fn algebraic_degree(f: &TruthTable) -> i32 {
    anf(f).degree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2n::create_ctx;

    // Quadratic oracle: a_u = XOR of f(x) over x ⊆ u.
    fn anf_oracle(f: &TruthTable) -> Vec<bool> {
        (0..f.len())
            .map(|u| (0..f.len()).filter(|&x| x & !u == 0).fold(false, |a, x| a ^ f.get(x)))
            .collect()
    }

    #[test]
    fn constant_and_trace_tables() {
        let ctx = create_ctx(3, None).unwrap();
        let zero = TruthTable::build(6, |_| false).unwrap();
        assert_eq!(zero.weight(), 0);
        assert!(!zero.is_balanced());
        assert_eq!(algebraic_degree(&zero), -1);
        let tr = TruthTable::build(6, |x| ctx.tr_abs(x)).unwrap();
        assert_eq!(tr.weight(), 32);
        assert!(tr.is_balanced());
        assert_eq!(algebraic_degree(&tr), 1);
    }

    #[test]
    fn small_bent_quadratic() {
        let ctx = create_ctx(2, None).unwrap();
        let f = TruthTable::build(4, |x| {
            ctx.tr_sub(ctx.mul(x, ctx.conjugate(x))).unwrap()
        })
        .unwrap();
        // Norm is 5-to-1 onto F_4^*, and Tr_1^2 is 1 exactly on ω and ω².
        assert_eq!(f.weight(), 10);
        assert_eq!(algebraic_degree(&f), 2);
    }

    #[test]
    fn distance_and_complement() {
        let f = TruthTable::from_fn(7, |x| x % 3 == 0).unwrap();
        let g = TruthTable::from_fn(7, |x| x % 5 == 1).unwrap();
        assert_eq!(f.distance(&f).unwrap(), 0);
        assert_eq!(f.distance(&f.complement()).unwrap(), 128);
        assert_eq!(f.distance(&g).unwrap(), f.xor(&g).unwrap().weight());
        assert_eq!(f.weight() + f.complement().weight(), 128);
        let h = TruthTable::zero(6).unwrap();
        assert_eq!(
            f.distance(&h),
            Err(Error::DimensionMismatch { left: 7, right: 6 })
        );
        let tiny = TruthTable::from_fn(2, |x| x == 1).unwrap();
        assert_eq!(tiny.complement().weight(), 3);
    }

    #[test]
    fn anf_matches_oracle_and_inverts() {
        for n in 0..=8 {
            let f = TruthTable::from_fn(n, |x| (x.wrapping_mul(2654435761) >> 7) & 1 == 1).unwrap();
            let a = anf(&f);
            let oracle = anf_oracle(&f);
            for (u, &bit) in oracle.iter().enumerate() {
                assert_eq!(a.coefficient(u), bit);
            }
            assert_eq!(a.to_truth_table(), f);
        }
    }

    #[test]
    fn point_mass_at_zero() {
        let f = TruthTable::from_fn(5, |x| x == 0).unwrap();
        let a = anf(&f);
        assert_eq!(a.monomials().len(), 32);
        assert_eq!(a.degree(), 5);
    }

    #[test]
    fn trace_monomial_degrees() {
        // deg Tr(a x^e) = weight of e for every cyclotomic coset leader of 2^6 − 1.
        let ctx = create_ctx(3, None).unwrap();
        for e in 1u64..63 {
            let leader = (0..6).map(|j| (e << j) % 63).min().unwrap();
            if leader != e {
                continue;
            }
            // Short cosets vanish for some a; take the first a that survives.
            let f = ctx
                .elements()
                .skip(1)
                .map(|a| TruthTable::build(6, |x| ctx.tr_abs(ctx.mul(a, ctx.pow(x, e)))).unwrap())
                .find(|f| f.weight() != 0)
                .unwrap();
            assert_eq!(algebraic_degree(&f), e.count_ones() as i32, "e = {e}");
        }
    }

    #[test]
    fn bytes_and_hex() {
        let f = TruthTable::from_fn(4, |x| x == 0 || x == 5 || x == 15).unwrap();
        assert_eq!(f.to_le_bytes(), alloc::vec![0x21, 0x80]);
        assert_eq!(f.to_hex(), "8021");
        assert_eq!(TruthTable::from_le_bytes(4, &f.to_le_bytes()).unwrap(), f);
        let g = TruthTable::from_fn(9, |x| x % 7 == 2).unwrap();
        assert_eq!(TruthTable::from_le_bytes(9, &g.to_le_bytes()).unwrap(), g);
        assert_eq!(g.to_hex().len(), 128);
        let t = TruthTable::from_fn(1, |x| x == 1).unwrap();
        assert_eq!(t.to_hex(), "2");
        assert!(TruthTable::from_le_bytes(4, &[0]).is_err());
    }
}
