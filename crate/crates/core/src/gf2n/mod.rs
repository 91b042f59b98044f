//! Binary finite fields in polynomial basis.
//!
//! [`BinaryField`] is GF(2^k) for any small `k`; [`FieldCtx`] is the even
//! degree field GF(2^2m) with its conjugation and subfield structure.

mod ctx;
mod field;

pub use ctx::{create_ctx, FieldCtx, Subfield, Subgroup};
pub use field::{BinaryField, FieldElem, DEFAULT_MAX_N, HARD_MAX_N};

use crate::error::Result;

/// A finite field of characteristic 2 with an absolute trace, the common
/// interface for character sums.
pub trait TraceField {
    /// Extension degree over GF(2).
    fn degree(&self) -> u32;
    /// Every element (0 included), ascending by coordinate integer.
    fn elements(&self) -> impl Iterator<Item = FieldElem> + '_;
    fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem;
    fn inv(&self, a: FieldElem) -> Result<FieldElem>;
    fn trace(&self, x: FieldElem) -> bool;
    fn contains(&self, x: FieldElem) -> bool;

    fn order(&self) -> u64 {
        1 << self.degree()
    }
}

impl TraceField for BinaryField {
    fn degree(&self) -> u32 {
        BinaryField::degree(self)
    }
    fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        BinaryField::elements(self)
    }
    fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        BinaryField::mul(self, a, b)
    }
    fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        BinaryField::inv(self, a)
    }
    fn trace(&self, x: FieldElem) -> bool {
        BinaryField::trace(self, x)
    }
    fn contains(&self, x: FieldElem) -> bool {
        BinaryField::contains(self, x)
    }
}

impl TraceField for FieldCtx {
    fn degree(&self) -> u32 {
        self.n()
    }
    fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        self.field().elements()
    }
    fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.field().mul(a, b)
    }
    fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        self.field().inv(a)
    }
    fn trace(&self, x: FieldElem) -> bool {
        self.field().trace(x)
    }
    fn contains(&self, x: FieldElem) -> bool {
        self.field().contains(x)
    }
}

impl TraceField for Subfield<'_> {
    fn degree(&self) -> u32 {
        self.ctx().m()
    }
    fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        self.ctx().subfield_elements().iter().copied()
    }
    fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.ctx().field().mul(a, b)
    }
    fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        self.ctx().field().inv(a)
    }
    fn trace(&self, x: FieldElem) -> bool {
        self.ctx().tr_sub_unchecked(x)
    }
    fn contains(&self, x: FieldElem) -> bool {
        self.ctx().in_subfield(x)
    }
}
