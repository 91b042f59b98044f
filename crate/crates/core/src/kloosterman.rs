//! Binary Kloosterman sums `k(a, b) = Σ_{x≠0} (−1)^Tr(ax + b/x)`.
//!
//! Sums are generic over [`TraceField`], so the same code evaluates `k_m`
//! on a standalone GF(2^m), on the subfield of GF(2^2m), and `k_n` on the
//! big field itself. `k(a)` abbreviates `k(a, 1)`.

use alloc::vec::Vec;

use crate::bits::LinearMap;
use crate::boolfun::TruthTable;
use crate::error::{Error, Result};
use crate::gf2n::{BinaryField, FieldCtx, FieldElem, TraceField, DEFAULT_MAX_N};
use crate::par;
use crate::walsh::{walsh_at_field_point, wht_fast_capped};

#[inline]
fn chi(bit: bool) -> i64 {
    if bit {
        -1
    } else {
        1
    }
}

/// Direct evaluation of `k(a, b)`; `k(0, 0) = 2^k − 1`.
pub fn kloosterman_sum<F: TraceField>(field: &F, a: FieldElem, b: FieldElem) -> i64 {
    field
        .elements()
        .filter(|x| !x.is_zero())
        .map(|x| {
            let inv = field.inv(x).expect("x is nonzero");
            chi(field.trace(field.mul(a, x) + field.mul(b, inv)))
        })
        .sum()
}

/// `k(λ)` for every `λ` of a field, ascending by coordinate integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KloostermanScan {
    pub m: u32,
    pub entries: Vec<(FieldElem, i64)>,
    pub value_set: Vec<i64>,
}

impl KloostermanScan {
    fn from_entries(m: u32, entries: Vec<(FieldElem, i64)>) -> Self {
        let mut value_set: Vec<i64> = entries.iter().map(|&(_, k)| k).collect();
        value_set.sort_unstable();
        value_set.dedup();
        KloostermanScan {
            m,
            entries,
            value_set,
        }
    }

    pub fn get(&self, lambda: FieldElem) -> Option<i64> {
        self.entries
            .binary_search_by_key(&lambda, |&(l, _)| l)
            .ok()
            .map(|i| self.entries[i].1)
    }

    /// Nonzero `λ` with `k(λ) = target`, ascending.
    pub fn with_value(&self, target: i64) -> Vec<FieldElem> {
        self.entries
            .iter()
            .filter(|&&(l, k)| !l.is_zero() && k == target)
            .map(|&(l, _)| l)
            .collect()
    }

    /// Value set restricted to nonzero `λ`.
    pub fn nonzero_value_set(&self) -> Vec<i64> {
        let mut vs: Vec<i64> = self
            .entries
            .iter()
            .filter(|(l, _)| !l.is_zero())
            .map(|&(_, k)| k)
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}

/// Scan by direct summation, `O(4^k)` field operations.
pub fn scan<F: TraceField + Sync>(field: &F) -> KloostermanScan {
    let elems: Vec<FieldElem> = field.elements().collect();
    let inv_trace: Vec<(FieldElem, bool)> = elems
        .iter()
        .filter(|x| !x.is_zero())
        .map(|&x| (x, field.trace(field.inv(x).expect("x is nonzero"))))
        .collect();
    let entries = par::map_slice(&elems, |&lambda| {
        let k = inv_trace
            .iter()
            .map(|&(x, t)| chi(field.trace(field.mul(lambda, x)) ^ t))
            .sum();
        (lambda, k)
    });
    KloostermanScan::from_entries(field.degree(), entries)
}

/// Scan through one Walsh transform of `x ↦ Tr(1/x)`: `k(λ) = W(λ) − 1`,
/// the `−1` removing the `x = 0` term.
pub fn scan_fast(field: &BinaryField) -> Result<KloostermanScan> {
    let inv = field.inverse_table();
    let t = TruthTable::from_fn(field.degree(), |x| field.trace(inv[x as usize]))?;
    let spectrum = wht_fast_capped(&t, DEFAULT_MAX_N.max(field.degree()))?;
    let entries = field
        .elements()
        .map(|l| (l, i64::from(walsh_at_field_point(field, &spectrum, l)) - 1))
        .collect();
    Ok(KloostermanScan::from_entries(field.degree(), entries))
}

/// Every `μ ≠ 0` in the subfield GF(2^m) of `ctx` with `k_m(μ) = target`.
pub fn find_mu(ctx: &FieldCtx, target: i64) -> Vec<FieldElem> {
    scan(&ctx.subfield()).with_value(target)
}

/// `s² ≤ 2^(m+2)`, i.e. `|s| ≤ 2^(m/2+1)`, in exact integers.
pub fn within_weil_bound(m: u32, s: i64) -> bool {
    i128::from(s) * i128::from(s) <= 1i128 << (m + 2)
}

/// All `s ≡ −1 (mod 4)` with `|s| ≤ 2^(m/2+1)`, ascending.
pub fn lemma23_set(m: u32) -> Vec<i64> {
    let mut r: i64 = 1;
    while within_weil_bound(m, r + 1) {
        r += 1;
    }
    (-r..=r).filter(|s| s.rem_euclid(4) == 3).collect()
}

/// The embedding of GF(2^m) into GF(2^(ms)) sending `x` to a root `β` of the
/// small field's reduction polynomial (the smallest root by coordinates).
#[derive(Clone, Debug)]
pub struct Lift {
    small: BinaryField,
    big: BinaryField,
    beta: FieldElem,
    map: LinearMap,
}

impl Lift {
    pub fn new(m: u32, s: u32, max_n: u32) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidArgument("lift degree s must be positive"));
        }
        let big_n = m.checked_mul(s).ok_or(Error::TooLarge { n: u32::MAX, max_n })?;
        let small = BinaryField::with_poly(m, None, max_n)?;
        let big = BinaryField::with_poly(big_n, None, max_n)?;
        Self::between(small, big)
    }

    pub fn between(small: BinaryField, big: BinaryField) -> Result<Self> {
        let (m, n) = (small.degree(), big.degree());
        if n % m != 0 {
            return Err(Error::DimensionMismatch { left: m, right: n });
        }
        // Subfield GF(2^m) of the big field: powers of g^((2^n−1)/(2^m−1)), plus 0.
        let step = big.pow(big.generator(), (big.order() - 1) / (small.order() - 1));
        let poly = small.reduction_poly();
        let eval = |x: FieldElem| {
            (0..=m).rev().fold(FieldElem::ZERO, |acc, i| {
                let c = if poly >> i & 1 == 1 { FieldElem::ONE } else { FieldElem::ZERO };
                big.mul(acc, x) + c
            })
        };
        let mut beta = None;
        let mut x = FieldElem::ONE;
        for _ in 0..small.order() - 1 {
            if eval(x).is_zero() && beta.is_none_or(|b| x < b) {
                beta = Some(x);
            }
            x = big.mul(x, step);
        }
        let beta = beta.expect("the subfield contains every root of the small modulus");
        let map = LinearMap::from_columns((0..m).map(|i| big.pow(beta, u64::from(i)).bits()).collect());
        Ok(Lift {
            small,
            big,
            beta,
            map,
        })
    }

    pub fn small(&self) -> &BinaryField {
        &self.small
    }

    pub fn big(&self) -> &BinaryField {
        &self.big
    }

    pub fn beta(&self) -> FieldElem {
        self.beta
    }

    pub fn embed(&self, a: FieldElem) -> FieldElem {
        FieldElem::new(self.map.apply(a.bits()))
    }

    /// `k^(s)(a) = Σ_{γ ≠ 0} (−1)^Tr(aγ + 1/γ)` over the big field.
    pub fn direct(&self, a: FieldElem) -> i64 {
        kloosterman_sum(&self.big, self.embed(a), FieldElem::ONE)
    }

    /// Lifted sums for every `a` of the small field, sharing one inverse table.
    pub fn direct_all(&self) -> Vec<(FieldElem, i64)> {
        let inv = self.big.inverse_table();
        let inv_trace: Vec<bool> = inv.iter().map(|&y| self.big.trace(y)).collect();
        let small: Vec<FieldElem> = self.small.elements().collect();
        par::map_slice(&small, |&a| {
            let u = self.big.functional_mask(self.embed(a));
            let k = (1..self.big.order() as usize)
                .map(|x| chi(((u & x as u32).count_ones() & 1 == 1) ^ inv_trace[x]))
                .sum();
            (a, k)
        })
    }
}

/// `k_m^(s)(a)` by direct summation in GF(2^(ms)), with `a` in the
/// default-polynomial GF(2^m).
pub fn kloosterman_lifted_direct(m: u32, s: u32, a: FieldElem) -> Result<i64> {
    let lift = Lift::new(m, s, DEFAULT_MAX_N)?;
    if !lift.small().contains(a) {
        return Err(Error::InvalidArgument("a is not an element of GF(2^m)"));
    }
    Ok(lift.direct(a))
}

/// `k^(s) = −k^(s−1) k^(1) − 2^m k^(s−2)` from `k^(0) = −2` and `k^(1) = k1`.
pub fn kloosterman_recursive(m: u32, s: u32, k1: i64) -> i64 {
    let q = 1i64 << m;
    let (mut prev, mut cur) = (-2i64, k1);
    if s == 0 {
        return prev;
    }
    for _ in 1..s {
        let next = -cur * k1 - q * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Recursion applied to every entry of a scan.
pub fn recursive_scan(scan: &KloostermanScan, s: u32) -> Vec<(FieldElem, i64)> {
    scan.entries
        .iter()
        .map(|&(a, k)| (a, kloosterman_recursive(scan.m, s, k)))
        .collect()
}

/// `Σ_{z on the unit circle} (−1)^Tr_1^m(μ(z + 1/z))`.
pub fn unit_circle_sum(ctx: &FieldCtx, mu: FieldElem) -> Result<i64> {
    if !ctx.in_subfield(mu) {
        return Err(Error::NotInSubfield);
    }
    if mu.is_zero() {
        return Err(Error::ZeroMu);
    }
    Ok(ctx
        .unit_circle()
        .iter()
        .map(|&z| chi(ctx.tr_sub_unchecked(ctx.mul(mu, z + ctx.conjugate(z)))))
        .sum())
}
