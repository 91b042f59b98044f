use alloc::vec::Vec;
use core::ops::Deref;

use super::field::{BinaryField, FieldElem, DEFAULT_MAX_N};
use crate::bits::{parity, LinearMap, Preimage};
use crate::error::{Error, Result};

/// Multiplicative subgroups and cosets of GF(2^2m) used by the constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subgroup {
    /// GF(2^m)^*, order `2^m − 1`.
    SubfieldUnits,
    /// `{z : z^(2^m+1) = 1}`, order `2^m + 1`.
    UnitCircle,
    FullUnits,
    /// `{λ : λ + λ̄ = 1}`, an additive coset of GF(2^m).
    AffineE,
}

/// GF(2^n) with `n = 2m`, together with its conjugation `x ↦ x̄ = x^(2^m)`
/// and the subfield, unit circle and `E` coset it determines.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    field: BinaryField,
    m: u32,
    max_n: u32,
    conj: LinearMap,
    subfield: Vec<FieldElem>,
    unit_circle: Vec<FieldElem>,
    affine_e: Vec<FieldElem>,
    lambda0: FieldElem,
    // Tr_1^m(x) = parity(x & sub_trace_mask) for x in the subfield
    sub_trace_mask: u32,
}

/// Builds GF(2^2m) with the default capability cap.
pub fn create_ctx(m: u32, poly_override: Option<u64>) -> Result<FieldCtx> {
    FieldCtx::new(m, poly_override, DEFAULT_MAX_N)
}

impl FieldCtx {
    pub fn new(m: u32, poly_override: Option<u64>, max_n: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("m must be positive"));
        }
        let n = m.checked_mul(2).ok_or(Error::TooLarge { n: u32::MAX, max_n })?;
        let field = BinaryField::with_poly(n, poly_override, max_n)?;
        let conj = LinearMap::from_fn(n, |x| field.frobenius(FieldElem::new(x), m).bits());

        let g = field.generator();
        let q = 1u64 << m;
        let walk = |step: FieldElem, len: u64| {
            let mut out = Vec::with_capacity(len as usize + 1);
            let mut x = FieldElem::ONE;
            for _ in 0..len {
                out.push(x);
                x = field.mul(x, step);
            }
            debug_assert_eq!(x, FieldElem::ONE);
            out
        };
        let mut subfield = walk(field.pow(g, q + 1), q - 1);
        subfield.push(FieldElem::ZERO);
        subfield.sort_unstable();
        let mut unit_circle = walk(field.pow(g, q - 1), q + 1);
        unit_circle.sort_unstable();

        // E = λ0 + GF(2^m), λ0 any solution of λ + λ̄ = 1.
        let rel_columns: Vec<u32> = (0..n).map(|i| conj.apply(1 << i) ^ (1 << i)).collect();
        let lambda_any = FieldElem::new(
            Preimage::new(&rel_columns)
                .solve(1)
                .expect("the relative trace is onto the subfield"),
        );
        let mut affine_e: Vec<FieldElem> = subfield.iter().map(|&u| u + lambda_any).collect();
        affine_e.sort_unstable();
        let lambda0 = affine_e[0];
        let sub_trace_mask = field.functional_mask(lambda0);

        Ok(FieldCtx {
            field,
            m,
            max_n,
            conj,
            subfield,
            unit_circle,
            affine_e,
            lambda0,
            sub_trace_mask,
        })
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn n(&self) -> u32 {
        2 * self.m
    }

    pub fn max_n(&self) -> u32 {
        self.max_n
    }

    /// Subfield order `2^m`.
    #[inline]
    pub fn q(&self) -> u64 {
        1 << self.m
    }

    pub fn field(&self) -> &BinaryField {
        &self.field
    }

    /// `x̄ = x^(2^m)`.
    #[inline]
    pub fn conjugate(&self, x: FieldElem) -> FieldElem {
        FieldElem::new(self.conj.apply(x.bits()))
    }

    pub fn sqrt_elem(&self, x: FieldElem) -> FieldElem {
        self.field.sqrt(x)
    }

    pub fn tr_abs(&self, x: FieldElem) -> bool {
        self.field.trace(x)
    }

    /// `Tr_m^n(x) = x + x̄`.
    #[inline]
    pub fn tr_rel(&self, x: FieldElem) -> FieldElem {
        x + self.conjugate(x)
    }

    #[inline]
    pub fn in_subfield(&self, x: FieldElem) -> bool {
        self.conjugate(x) == x
    }

    pub fn on_unit_circle(&self, z: FieldElem) -> bool {
        !z.is_zero() && self.field.mul(z, self.conjugate(z)) == FieldElem::ONE
    }

    /// `Tr_1^m(x)` for `x` in GF(2^m).
    pub fn tr_sub(&self, x: FieldElem) -> Result<bool> {
        if !self.in_subfield(x) {
            return Err(Error::NotInSubfield);
        }
        Ok(self.tr_sub_unchecked(x))
    }

    /// `Tr_1^n(λ0 x)`, which is `Tr_1^m(x)` whenever `x` lies in the
    /// subfield and meaningless otherwise.
    #[inline]
    pub fn tr_sub_unchecked(&self, x: FieldElem) -> bool {
        parity(x.bits() & self.sub_trace_mask)
    }

    /// `(y, z)` with `y ∈ GF(2^m)^*`, `z` on the unit circle and `x = yz`.
    pub fn polar_decompose(&self, x: FieldElem) -> Result<(FieldElem, FieldElem)> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let q = self.q();
        let half = 1u64 << (self.m - 1);
        let y = self.field.pow(x, (q + 1) * half);
        let z = self.field.pow(x, (q - 1) * half);
        Ok((y, z))
    }

    /// Elements of the requested set, ascending by coordinate integer.
    pub fn enumerate(&self, which: Subgroup) -> Vec<FieldElem> {
        match which {
            Subgroup::SubfieldUnits => self.subfield[1..].to_vec(),
            Subgroup::UnitCircle => self.unit_circle.clone(),
            Subgroup::FullUnits => self.field.elements().skip(1).collect(),
            Subgroup::AffineE => self.affine_e.clone(),
        }
    }

    /// GF(2^m) including 0, ascending.
    pub fn subfield_elements(&self) -> &[FieldElem] {
        &self.subfield
    }

    pub fn unit_circle(&self) -> &[FieldElem] {
        &self.unit_circle
    }

    pub fn affine_e(&self) -> &[FieldElem] {
        &self.affine_e
    }

    /// Smallest `λ` with `λ + λ̄ = 1`.
    pub fn lambda0(&self) -> FieldElem {
        self.lambda0
    }

    /// `μ = g^((2^m+1)k)`, the `k`-th power of the subfield generator.
    pub fn subfield_power(&self, k: u64) -> FieldElem {
        let step = self.field.pow(self.field.generator(), self.q() + 1);
        self.field.pow(step, k % (self.q() - 1).max(1))
    }

    /// GF(2^m) viewed as a field in its own right.
    pub fn subfield(&self) -> Subfield<'_> {
        Subfield { ctx: self }
    }
}

impl Deref for FieldCtx {
    type Target = BinaryField;
    fn deref(&self) -> &BinaryField {
        &self.field
    }
}

/// The subfield GF(2^m) ⊂ GF(2^2m), with arithmetic done in the big field
/// and its own absolute trace `Tr_1^m`.
#[derive(Clone, Copy, Debug)]
pub struct Subfield<'a> {
    ctx: &'a FieldCtx,
}

impl<'a> Subfield<'a> {
    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_small() {
        for m in 1..=5 {
            let ctx = create_ctx(m, None).unwrap();
            let q = ctx.q() as usize;
            assert_eq!(ctx.subfield_elements().len(), q);
            assert_eq!(ctx.unit_circle().len(), q + 1);
            assert_eq!(ctx.affine_e().len(), q);
            for &u in ctx.subfield_elements() {
                assert!(ctx.in_subfield(u));
            }
            for &z in ctx.unit_circle() {
                assert_eq!(ctx.pow(z, ctx.q() + 1), FieldElem::ONE);
                assert_eq!(ctx.conjugate(z), ctx.inv(z).unwrap());
            }
            for &l in ctx.affine_e() {
                assert_eq!(ctx.tr_rel(l), FieldElem::ONE);
            }
            let in_sub = ctx.elements().filter(|&x| ctx.in_subfield(x)).count();
            assert_eq!(in_sub, q);
        }
    }

    #[test]
    fn conjugation_is_an_automorphism() {
        let ctx = create_ctx(3, None).unwrap();
        for a in ctx.elements() {
            assert_eq!(ctx.conjugate(ctx.conjugate(a)), a);
            assert_eq!(ctx.conjugate(a), ctx.pow(a, 8));
            for b in ctx.elements() {
                assert_eq!(ctx.conjugate(ctx.mul(a, b)), ctx.mul(ctx.conjugate(a), ctx.conjugate(b)));
            }
            if !a.is_zero() {
                let ab = ctx.conjugate(a);
                assert!(ctx.in_subfield(a + ab));
                assert!(ctx.in_subfield(ctx.mul(a, ab)));
                assert!(ctx.on_unit_circle(ctx.div(a, ab).unwrap()));
            }
        }
    }

    // Oracle: Tr_1^m by repeated squaring inside the big field.
    fn tr_sub_oracle(ctx: &FieldCtx, x: FieldElem) -> bool {
        let mut acc = FieldElem::ZERO;
        let mut y = x;
        for _ in 0..ctx.m() {
            acc += y;
            y = ctx.mul(y, y);
        }
        assert!(acc.bits() <= 1);
        acc == FieldElem::ONE
    }

    #[test]
    fn traces() {
        for m in 1..=6 {
            let ctx = create_ctx(m, None).unwrap();
            assert_eq!(ctx.tr_sub(FieldElem::ONE).unwrap(), m % 2 == 1);
            assert!(!ctx.tr_sub(FieldElem::ZERO).unwrap());
            let ones = ctx
                .subfield_elements()
                .iter()
                .filter(|&&u| ctx.tr_sub(u).unwrap())
                .count() as u64;
            assert_eq!(ones, ctx.q() / 2);
            for &u in ctx.subfield_elements() {
                assert_eq!(ctx.tr_sub(u).unwrap(), tr_sub_oracle(&ctx, u));
            }
            for x in ctx.elements() {
                assert_eq!(ctx.tr_sub(ctx.tr_rel(x)).unwrap(), ctx.tr_abs(x));
                assert_eq!(ctx.tr_sub(x).is_ok(), ctx.in_subfield(x));
            }
        }
    }

    #[test]
    fn polar_decomposition_is_a_bijection() {
        for m in 1..=5 {
            let ctx = create_ctx(m, None).unwrap();
            let mut seen = alloc::collections::BTreeSet::new();
            for x in ctx.elements().skip(1) {
                let (y, z) = ctx.polar_decompose(x).unwrap();
                assert!(ctx.in_subfield(y) && !y.is_zero());
                assert!(ctx.on_unit_circle(z));
                assert_eq!(ctx.mul(y, z), x);
                assert!(seen.insert((y, z)));
                if ctx.in_subfield(x) {
                    assert_eq!((y, z), (x, FieldElem::ONE));
                }
            }
            assert_eq!(ctx.polar_decompose(FieldElem::ZERO), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn subfield_closed_under_field_operations() {
        let ctx = create_ctx(4, None).unwrap();
        let sub = ctx.subfield_elements();
        for &a in sub {
            for &b in sub {
                assert!(sub.binary_search(&(a + b)).is_ok());
                assert!(sub.binary_search(&ctx.mul(a, b)).is_ok());
            }
        }
    }

    #[test]
    fn enumeration_sizes_and_order() {
        let ctx = create_ctx(4, None).unwrap();
        assert_eq!(ctx.enumerate(Subgroup::UnitCircle).len(), 17);
        assert_eq!(ctx.enumerate(Subgroup::SubfieldUnits).len(), 15);
        assert_eq!(ctx.enumerate(Subgroup::FullUnits).len(), 255);
        let e = ctx.enumerate(Subgroup::AffineE);
        assert_eq!(e.len(), 16);
        assert!(e.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(ctx.lambda0(), e[0]);
        assert_eq!(ctx.subfield_power(0), FieldElem::ONE);
        assert!(ctx.in_subfield(ctx.subfield_power(7)));
    }

    #[test]
    fn capability_cap() {
        assert_eq!(create_ctx(15, None).unwrap_err(), Error::TooLarge { n: 30, max_n: 28 });
        assert!(FieldCtx::new(3, None, 4).is_err());
        assert_eq!(
            create_ctx(2, Some(0b10101)).unwrap_err(),
            Error::NotIrreducible { poly: 0b10101 }
        );
        assert_eq!(create_ctx(2, Some(0b11001)).unwrap().reduction_poly(), 0b11001);
    }
}
