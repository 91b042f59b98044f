//! Walsh–Hadamard spectra.
//!
//! [`wht_fast`] indexes values by linear functional mask `u`, so
//! `values[u] = Σ_x (−1)^(f(x) + <u, x>)`. The field-point value `W_f(a)` is
//! `values[u(a)]` with `u(a)` the dual-basis coordinates of `a`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::boolfun::TruthTable;
use crate::error::{Error, Result};
use crate::gf2n::{BinaryField, FieldElem, TraceField, DEFAULT_MAX_N};
use crate::par;

// Stages with stride below this run inside one cache-sized block.
const BLOCK: usize = 1 << 12;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WalshSpectrum {
    n: u32,
    values: Vec<i32>,
}

fn butterflies(v: &mut [i32], from: usize) {
    let mut h = from;
    while h < v.len() {
        for block in v.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

/// Unnormalized Walsh–Hadamard transform of a length `2^k` array.
pub fn wht_in_place(v: &mut [i32]) {
    assert!(v.len().is_power_of_two());
    let block = BLOCK.min(v.len());
    par::for_each_chunk_mut(v, block, |_, c| butterflies(c, 1));
    let mut h = block;
    while h < v.len() {
        for pair in v.chunks_mut(2 * h) {
            let (lo, hi) = pair.split_at_mut(h);
            par::zip_mut(lo, hi, |a, b| {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            });
        }
        h *= 2;
    }
}

/// Fast spectrum of `f`, refusing tables above the default cap.
pub fn wht_fast(f: &TruthTable) -> Result<WalshSpectrum> {
    wht_fast_capped(f, DEFAULT_MAX_N)
}

pub fn wht_fast_capped(f: &TruthTable, max_n: u32) -> Result<WalshSpectrum> {
    let n = f.n();
    if n > max_n {
        return Err(Error::TooLarge { n, max_n });
    }
    let mut values = alloc::vec![0i32; f.len()];
    let words = f.words();
    let chunk = 64.min(values.len());
    par::for_each_chunk_mut(&mut values, chunk, |wi, c| {
        let w = words[wi];
        for (b, v) in c.iter_mut().enumerate() {
            *v = 1 - 2 * ((w >> b) & 1) as i32;
        }
    });
    wht_in_place(&mut values);
    Ok(WalshSpectrum { n, values })
}

/// `Σ_x (−1)^(f(x) + Tr(a x))` by direct summation over `field`.
pub fn walsh_naive_at<F: TraceField>(field: &F, f: &TruthTable, a: FieldElem) -> i64 {
    field
        .elements()
        .map(|x| {
            if f.eval(x) ^ field.trace(field.mul(a, x)) {
                -1
            } else {
                1
            }
        })
        .sum()
}

/// `W_f(a)` read from a mask-indexed spectrum.
pub fn walsh_at_field_point(field: &BinaryField, spectrum: &WalshSpectrum, a: FieldElem) -> i32 {
    spectrum.values[field.functional_mask(a) as usize]
}

impl WalshSpectrum {
    /// Wraps mask-indexed values; the length must be a power of two.
    pub fn from_values(values: Vec<i32>) -> Result<Self> {
        if !values.len().is_power_of_two() {
            return Err(Error::InvalidArgument("spectrum length must be a power of two"));
        }
        let n = values.len().trailing_zeros();
        Ok(WalshSpectrum { n, values })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    pub fn at_mask(&self, u: u32) -> i32 {
        self.values[u as usize]
    }

    pub fn max_abs(&self) -> u64 {
        self.values.iter().map(|v| u64::from(v.unsigned_abs())).max().unwrap_or(0)
    }

    /// Sign vector `(−1)^f(x)` recovered by a second transform.
    pub fn inverse_signs(&self) -> Vec<i32> {
        let mut v = self.values.clone();
        wht_in_place(&mut v);
        let shift = self.n;
        v.iter().map(|&x| x >> shift).collect()
    }

    pub fn distribution(&self) -> SpectrumDistribution {
        let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
        for &v in &self.values {
            *counts.entry(i64::from(v)).or_default() += 1;
        }
        SpectrumDistribution {
            n: self.n,
            entries: counts.into_iter().collect(),
        }
    }

    /// `Σ W² = 4^n`.
    pub fn parseval_holds(&self) -> bool {
        let sum: i128 = self.values.iter().map(|&v| i128::from(v) * i128::from(v)).sum();
        sum == 1i128 << (2 * self.n)
    }

    /// `Σ W = 2^n (−1)^f(0)`.
    pub fn first_moment_holds(&self, f_at_zero: bool) -> bool {
        let sum: i128 = self.values.iter().map(|&v| i128::from(v)).sum();
        let expect = 1i128 << self.n;
        sum == if f_at_zero { -expect } else { expect }
    }
}

/// Exact value histogram, ascending by value.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpectrumDistribution {
    n: u32,
    entries: Vec<(i64, u64)>,
}

impl SpectrumDistribution {
    /// Builds from `(value, count)` pairs; zero counts are dropped and
    /// duplicate values merged.
    pub fn from_pairs(n: u32, pairs: &[(i64, u64)]) -> Self {
        let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
        for &(v, c) in pairs {
            if c > 0 {
                *counts.entry(v).or_default() += c;
            }
        }
        SpectrumDistribution {
            n,
            entries: counts.into_iter().collect(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn entries(&self) -> &[(i64, u64)] {
        &self.entries
    }

    pub fn count_of(&self, value: i64) -> u64 {
        self.entries
            .binary_search_by_key(&value, |&(v, _)| v)
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    pub fn values(&self) -> Vec<i64> {
        self.entries.iter().map(|&(v, _)| v).collect()
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|&(_, c)| c).sum()
    }

    pub fn is_subset_of(&self, allowed: &[i64]) -> bool {
        self.entries.iter().all(|(v, _)| allowed.contains(v))
    }

    pub fn max_abs(&self) -> u64 {
        self.entries.iter().map(|(v, _)| v.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn nonlinearity(&self) -> u64 {
        nl_from_max(self.n, self.max_abs())
    }

    /// `Σ count · value² = 4^n`.
    pub fn parseval_holds(&self) -> bool {
        let sum: i128 = self
            .entries
            .iter()
            .map(|&(v, c)| i128::from(c) * i128::from(v) * i128::from(v))
            .sum();
        self.total() == 1 << self.n && sum == 1i128 << (2 * self.n)
    }

    pub fn classify(&self, m: u32) -> Classification {
        let values = self.values();
        let amp = 1i64 << m;
        if values.iter().all(|&v| v == amp || v == -amp) {
            return Classification::Bent;
        }
        let semi = 2 * amp;
        if values.iter().all(|&v| v == 0 || v == semi || v == -semi) {
            return Classification::SemiBent;
        }
        let nonzero: Vec<u64> = values.iter().filter(|&&v| v != 0).map(|v| v.unsigned_abs()).collect();
        if let Some(&a) = nonzero.first() {
            if nonzero.iter().all(|&x| x == a) {
                return Classification::Plateaued(a);
            }
        }
        if values.len() <= 5 {
            Classification::FiveValued(values)
        } else {
            Classification::Other(values)
        }
    }
}

fn nl_from_max(n: u32, max_abs: u64) -> u64 {
    ((1u64 << n) - max_abs) / 2
}

/// `2^(n−1) − max|W| / 2`.
pub fn nonlinearity(spectrum: &WalshSpectrum) -> u64 {
    nl_from_max(spectrum.n, spectrum.max_abs())
}

pub fn classify(spectrum: &WalshSpectrum, m: u32) -> Classification {
    spectrum.distribution().classify(m)
}

/// Spectrum shape for `n = 2m`. Semi-bent means values in `{0, ±2^(m+1)}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Classification {
    Bent,
    SemiBent,
    /// Values in `{0, ±A}` for the given `A`.
    Plateaued(u64),
    /// At most five distinct values, listed ascending.
    FiveValued(Vec<i64>),
    Other(Vec<i64>),
}

impl Classification {
    pub fn label(&self) -> &'static str {
        match self {
            Classification::Bent => "bent",
            Classification::SemiBent => "semi-bent",
            Classification::Plateaued(_) => "plateaued",
            Classification::FiveValued(_) => "five-valued",
            Classification::Other(_) => "other",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |vs: &[i64]| {
            let parts: Vec<String> = vs.iter().map(|v| alloc::format!("{v}")).collect();
            parts.join(",")
        };
        match self {
            Classification::Plateaued(a) => write!(f, "plateaued({a})"),
            Classification::FiveValued(vs) | Classification::Other(vs) => {
                write!(f, "{}{{{}}}", self.label(), list(vs))
            }
            _ => f.write_str(self.label()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2n::create_ctx;

    // O(4^n) oracle over masks.
    fn wht_quadratic(f: &TruthTable) -> Vec<i32> {
        (0..f.len() as u32)
            .map(|u| {
                (0..f.len() as u32)
                    .map(|x| if f.get(x as usize) ^ ((u & x).count_ones() & 1 == 1) { -1 } else { 1 })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn fast_matches_quadratic_oracle() {
        for n in 0..=10 {
            let f = TruthTable::from_fn(n, |x| (x.wrapping_mul(0x9e37_79b9) >> 13) & 1 == 1).unwrap();
            let s = wht_fast(&f).unwrap();
            assert_eq!(s.values(), &wht_quadratic(&f)[..], "n = {n}");
            assert!(s.parseval_holds());
            assert!(s.first_moment_holds(f.get(0)));
            let signs: Vec<i32> = (0..f.len()).map(|i| if f.get(i) { -1 } else { 1 }).collect();
            assert_eq!(s.inverse_signs(), signs);
        }
    }

    #[test]
    fn large_block_stages() {
        let f = TruthTable::from_fn(14, |x| (x ^ (x >> 3)).count_ones() % 3 == 0).unwrap();
        let s = wht_fast(&f).unwrap();
        assert!(s.parseval_holds());
        for u in [0u32, 1, 4097, 9999, 16383] {
            let direct: i32 = (0..1u32 << 14)
                .map(|x| if f.get(x as usize) ^ ((u & x).count_ones() & 1 == 1) { -1 } else { 1 })
                .sum();
            assert_eq!(s.at_mask(u), direct);
        }
    }

    #[test]
    fn constant_zero() {
        let f = TruthTable::zero(6).unwrap();
        let s = wht_fast(&f).unwrap();
        assert_eq!(s.values()[0], 64);
        assert!(s.values()[1..].iter().all(|&v| v == 0));
        let d = s.distribution();
        assert_eq!(d.entries(), &[(0, 63), (64, 1)]);
        assert_eq!(nonlinearity(&s), 0);
    }

    #[test]
    fn field_point_indexing() {
        let ctx = create_ctx(3, None).unwrap();
        let f = TruthTable::build(6, |x| ctx.pow(x, 7).bits() & 1 == 1).unwrap();
        let s = wht_fast(&f).unwrap();
        for a in ctx.elements() {
            assert_eq!(
                i64::from(walsh_at_field_point(&ctx, &s, a)),
                walsh_naive_at(&*ctx, &f, a)
            );
        }
        let tr = TruthTable::build(6, |x| ctx.tr_abs(x)).unwrap();
        assert_eq!(walsh_naive_at(&*ctx, &tr, FieldElem::ONE), 64);
        let zero = TruthTable::zero(6).unwrap();
        assert_eq!(walsh_naive_at(&*ctx, &zero, FieldElem::new(5)), 0);
    }

    #[test]
    fn mask_map_is_a_bijection() {
        let ctx = create_ctx(4, None).unwrap();
        let mut seen = alloc::vec![false; 256];
        for a in ctx.elements() {
            let u = ctx.functional_mask(a) as usize;
            assert!(!seen[u]);
            seen[u] = true;
        }
    }

    #[test]
    fn bent_quadratic_classifies() {
        let ctx = create_ctx(3, None).unwrap();
        let lambda = ctx.lambda0();
        let h = TruthTable::build(6, |x| ctx.tr_abs(ctx.mul(lambda, ctx.pow(x, 9)))).unwrap();
        let s = wht_fast(&h).unwrap();
        assert_eq!(classify(&s, 3), Classification::Bent);
        assert_eq!(nonlinearity(&s), 32 - 4);
    }

    #[test]
    fn classification_shapes() {
        let d = SpectrumDistribution::from_pairs(4, &[(0, 12), (8, 3), (-8, 1)]);
        assert_eq!(d.classify(2), Classification::SemiBent);
        let d = SpectrumDistribution::from_pairs(4, &[(0, 15), (16, 1)]);
        assert_eq!(d.classify(2), Classification::Plateaued(16));
        let d = SpectrumDistribution::from_pairs(8, &[(-16, 92), (0, 80), (16, 64), (32, 16), (48, 4)]);
        assert!(d.parseval_holds());
        assert_eq!(d.nonlinearity(), 104);
        assert_eq!(d.classify(4).to_string(), "five-valued{-16,0,16,32,48}");
        let d = SpectrumDistribution::from_pairs(8, &[(-16, 92), (0, 80), (16, 64), (32, 16), (48, 3), (64, 1)]);
        assert_eq!(d.classify(4).label(), "other");
        assert!(!d.parseval_holds());
    }

    #[test]
    fn cap_is_enforced() {
        let f = TruthTable::zero(10).unwrap();
        assert_eq!(wht_fast_capped(&f, 8), Err(Error::TooLarge { n: 10, max_n: 8 }));
    }
}
