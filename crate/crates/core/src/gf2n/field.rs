use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign};

use crate::bits::{parity, LinearMap, Preimage};
use crate::error::{Error, Result};
use crate::poly;

/// Absolute limit on the extension degree: elements are `u32` coordinate
/// vectors and Walsh values `|W| ≤ 2^n` are stored as `i32`.
pub const HARD_MAX_N: u32 = 30;

/// Default capability cap on the extension degree.
pub const DEFAULT_MAX_N: u32 = 28;

/// An element of GF(2^k) as its coordinate vector in the polynomial basis
/// (bit i is the coefficient of x^i).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub const fn new(coords: u32) -> Self {
        FieldElem(coords)
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl Add for FieldElem {
    type Output = FieldElem;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: FieldElem) -> FieldElem {
        FieldElem(self.0 ^ rhs.0)
    }
}

impl AddAssign for FieldElem {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: FieldElem) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

/// Lowercase `0x`-prefixed hex of the coordinate integer.
impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

/// GF(2^k) for any `1 ≤ k ≤ HARD_MAX_N`, in polynomial basis.
#[derive(Clone, Debug)]
pub struct BinaryField {
    degree: u32,
    poly: u64,
    generator: FieldElem,
    // Tr(x) = parity(x & trace_mask)
    trace_mask: u32,
    // a ↦ (Tr(a x^j))_j, the trace-form matrix
    trace_form: LinearMap,
    dual_basis: Vec<FieldElem>,
    square: LinearMap,
    sqrt: LinearMap,
    artin_schreier: Preimage,
}

impl BinaryField {
    /// The field of degree `k` over the smallest irreducible polynomial.
    pub fn new(k: u32) -> Result<Self> {
        Self::with_poly(k, None, DEFAULT_MAX_N)
    }

    /// The field of degree `k`, optionally over `poly_override`, refusing
    /// degrees above `max_n`.
    pub fn with_poly(k: u32, poly_override: Option<u64>, max_n: u32) -> Result<Self> {
        let cap = max_n.min(HARD_MAX_N);
        if k == 0 {
            return Err(Error::InvalidArgument("field degree must be positive"));
        }
        if k > cap {
            return Err(Error::TooLarge { n: k, max_n: cap });
        }
        let poly = match poly_override {
            Some(p) => {
                if poly::degree(p) != Some(k) || p & 1 == 0 {
                    return Err(Error::InvalidPolynomial { poly: p, degree: k });
                }
                if !poly::is_irreducible(p) {
                    return Err(Error::NotIrreducible { poly: p });
                }
                p
            }
            None => poly::smallest_irreducible(k),
        };
        let mut field = BinaryField {
            degree: k,
            poly,
            generator: FieldElem::ONE,
            trace_mask: 0,
            trace_form: LinearMap::from_columns(Vec::new()),
            dual_basis: Vec::new(),
            square: LinearMap::from_columns(Vec::new()),
            sqrt: LinearMap::from_columns(Vec::new()),
            artin_schreier: Preimage::new(&[]),
        };
        field.square = LinearMap::from_fn(k, |x| {
            let e = FieldElem(x);
            field.mul(e, e).0
        });
        field.sqrt = LinearMap::from_fn(k, |x| {
            (1..k).fold(FieldElem(x), |acc, _| field.square(acc)).0
        });
        field.trace_mask = (0..k)
            .filter(|&i| field.trace_by_squaring(FieldElem(1 << i)))
            .fold(0, |acc, i| acc | 1 << i);
        let mask = field.trace_mask;
        let basis_products: Vec<u32> = (0..k)
            .map(|i| {
                (0..k).fold(0u32, |acc, j| {
                    let prod = field.mul(FieldElem(1 << i), FieldElem(1 << j));
                    acc | (parity(prod.0 & mask) as u32) << j
                })
            })
            .collect();
        field.trace_form = LinearMap::from_columns(basis_products);
        let dual = field
            .trace_form
            .inverse()
            .expect("the trace form of a finite field is nondegenerate");
        field.dual_basis = dual.columns().iter().map(|&c| FieldElem(c)).collect();
        let as_columns: Vec<u32> = (0..k)
            .map(|i| {
                let e = FieldElem(1 << i);
                field.square(e).0 ^ e.0
            })
            .collect();
        field.artin_schreier = Preimage::new(&as_columns);
        field.generator = field.find_generator();
        Ok(field)
    }

    fn find_generator(&self) -> FieldElem {
        let order = self.order() - 1;
        let factors = poly::prime_factors(order);
        (1..self.order())
            .map(|c| FieldElem(c as u32))
            .find(|&g| {
                !g.is_zero()
                    && self.pow(g, order) == FieldElem::ONE
                    && factors.iter().all(|p| self.pow(g, order / p) != FieldElem::ONE)
            })
            .expect("the multiplicative group is cyclic")
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of field elements, `2^k`.
    #[inline]
    pub fn order(&self) -> u64 {
        1u64 << self.degree
    }

    pub fn reduction_poly(&self) -> u64 {
        self.poly
    }

    /// A primitive element: the smallest coordinate integer of
    /// multiplicative order `2^k − 1`.
    pub fn generator(&self) -> FieldElem {
        self.generator
    }

    /// Dual basis `γ_j` with `Tr(x^i γ_j) = [i = j]`.
    pub fn dual_basis(&self) -> &[FieldElem] {
        &self.dual_basis
    }

    pub fn contains(&self, x: FieldElem) -> bool {
        u64::from(x.0) < self.order()
    }

    /// Every element in ascending coordinate order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + Clone {
        (0..self.order()).map(|c| FieldElem(c as u32))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let mut p = poly::clmul(u64::from(a.0), u64::from(b.0));
        let n = self.degree;
        while p >> n != 0 {
            let top = 63 - p.leading_zeros();
            p ^= self.poly << (top - n);
        }
        FieldElem(p as u32)
    }

    #[inline]
    pub fn square(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.square.apply(a.0))
    }

    /// Square-and-multiply; `pow(a, 0) = 1` for every `a`, including 0.
    pub fn pow(&self, mut a: FieldElem, mut e: u64) -> FieldElem {
        let mut acc = FieldElem::ONE;
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// `a^(2^k − 2)`.
    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `x^(2^(k−1))`, the unique square root.
    #[inline]
    pub fn sqrt(&self, x: FieldElem) -> FieldElem {
        FieldElem(self.sqrt.apply(x.0))
    }

    /// `x^(2^j)` by `j` squarings.
    pub fn frobenius(&self, x: FieldElem, j: u32) -> FieldElem {
        (0..j).fold(x, |acc, _| self.square(acc))
    }

    fn trace_by_squaring(&self, x: FieldElem) -> bool {
        let mut t = FieldElem::ZERO;
        let mut y = x;
        for _ in 0..self.degree {
            t += y;
            y = self.mul(y, y);
        }
        debug_assert!(t.0 <= 1, "absolute trace must land in GF(2)");
        t == FieldElem::ONE
    }

    /// Absolute trace `Σ_{i<k} x^(2^i)` as a bit.
    #[inline]
    pub fn trace(&self, x: FieldElem) -> bool {
        parity(x.0 & self.trace_mask)
    }

    pub fn trace_mask(&self) -> u32 {
        self.trace_mask
    }

    /// Mask `u(a)` with `u(a)_j = Tr(a x^j)`, so that
    /// `Tr(a x) = <u(a), coords(x)>` for every `x`. These are the coordinates
    /// of `a` in the dual basis.
    #[inline]
    pub fn functional_mask(&self, a: FieldElem) -> u32 {
        self.trace_form.apply(a.0)
    }

    /// Inverse of [`functional_mask`](Self::functional_mask).
    pub fn point_of_mask(&self, mask: u32) -> FieldElem {
        self.dual_basis
            .iter()
            .enumerate()
            .filter(|(j, _)| mask >> j & 1 == 1)
            .fold(FieldElem::ZERO, |acc, (_, &g)| acc + g)
    }

    /// Both roots of `y² + y = d`, ascending, or `None` when `Tr(d) = 1`.
    pub fn solve_artin_schreier(&self, d: FieldElem) -> Option<[FieldElem; 2]> {
        let y = FieldElem(self.artin_schreier.solve(d.0)?);
        let other = y + FieldElem::ONE;
        Some(if y < other { [y, other] } else { [other, y] })
    }

    /// Inverses of every element, indexed by coordinate integer (entry 0 is 0).
    pub fn inverse_table(&self) -> Vec<FieldElem> {
        let size = self.order() as usize;
        let mut table = alloc::vec![FieldElem::ZERO; size];
        let g = self.generator;
        let g_inv = self.inv(g).expect("generator is nonzero");
        let (mut x, mut y) = (FieldElem::ONE, FieldElem::ONE);
        for _ in 0..size - 1 {
            table[x.index()] = y;
            x = self.mul(x, g);
            y = self.mul(y, g_inv);
        }
        table
    }
}
