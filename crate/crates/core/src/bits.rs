//! Linear algebra over GF(2) on bit vectors of at most 32 coordinates.
//!
//! Field elements in polynomial basis are such vectors, so every GF(2)-linear
//! operation on a field (Frobenius powers, traces, `y ↦ y² + y`) is a
//! [`LinearMap`], and solving such an operation is a [`Preimage`] query.

use alloc::vec::Vec;

/// Parity of the set bits of `x`.
#[inline]
pub fn parity(x: u32) -> bool {
    x.count_ones() & 1 == 1
}

/// A GF(2)-linear map on `dim`-bit vectors, evaluated through byte-sliced
/// lookup tables (one XOR per input byte).
#[derive(Clone, Debug)]
pub struct LinearMap {
    dim: u32,
    columns: Vec<u32>,
    tables: Vec<[u32; 256]>,
}

impl LinearMap {
    /// Builds the map sending basis vector `e_i` to `columns[i]`.
    pub fn from_columns(columns: Vec<u32>) -> Self {
        let dim = columns.len() as u32;
        assert!(dim <= 32, "linear maps are limited to 32 coordinates");
        let nbytes = dim.div_ceil(8) as usize;
        let mut tables = Vec::with_capacity(nbytes);
        for chunk in 0..nbytes {
            let mut table = [0u32; 256];
            for byte in 1..256usize {
                // Reuse the entry without the lowest set bit.
                let low = byte.trailing_zeros() as usize;
                let col = columns.get(chunk * 8 + low).copied().unwrap_or(0);
                table[byte] = table[byte & (byte - 1)] ^ col;
            }
            tables.push(table);
        }
        LinearMap {
            dim,
            columns,
            tables,
        }
    }

    /// Builds the map from a function known to be linear, by sampling it on
    /// the standard basis.
    pub fn from_fn(dim: u32, f: impl Fn(u32) -> u32) -> Self {
        Self::from_columns((0..dim).map(|i| f(1 << i)).collect())
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn columns(&self) -> &[u32] {
        &self.columns
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        let mut acc = 0;
        for (k, table) in self.tables.iter().enumerate() {
            acc ^= table[((x >> (8 * k)) & 0xff) as usize];
        }
        acc
    }

    pub fn rank(&self) -> u32 {
        Preimage::new(&self.columns).rank()
    }

    /// Inverse map, or `None` when the map is singular.
    pub fn inverse(&self) -> Option<LinearMap> {
        let solver = Preimage::new(&self.columns);
        if solver.rank() != self.dim {
            return None;
        }
        let cols = (0..self.dim)
            .map(|j| solver.solve(1 << j).expect("full rank"))
            .collect();
        Some(LinearMap::from_columns(cols))
    }
}

/// Echelon form of the image of a linear map, with a preimage recorded for
/// every pivot and a basis of the kernel.
#[derive(Clone, Debug)]
pub struct Preimage {
    // pivots[b] = (image vector with leading bit b, a preimage of it)
    pivots: [Option<(u32, u32)>; 32],
    kernel: Vec<u32>,
}

impl Preimage {
    pub fn new(columns: &[u32]) -> Self {
        let mut pivots = [None; 32];
        let mut kernel = Vec::new();
        for (i, &col) in columns.iter().enumerate() {
            let (v, c) = Self::reduce_with(&pivots, col, 1u32 << i);
            if v == 0 {
                kernel.push(c);
            } else {
                let lead = 31 - v.leading_zeros();
                pivots[lead as usize] = Some((v, c));
            }
        }
        Preimage { pivots, kernel }
    }

    fn reduce_with(pivots: &[Option<(u32, u32)>; 32], mut v: u32, mut c: u32) -> (u32, u32) {
        while v != 0 {
            let lead = 31 - v.leading_zeros();
            match pivots[lead as usize] {
                Some((pv, pc)) => {
                    v ^= pv;
                    c ^= pc;
                }
                None => break,
            }
        }
        (v, c)
    }

    pub fn rank(&self) -> u32 {
        self.pivots.iter().filter(|p| p.is_some()).count() as u32
    }

    /// Basis of the kernel.
    pub fn kernel(&self) -> &[u32] {
        &self.kernel
    }

    /// Some `x` with `map(x) = target`, if one exists.
    pub fn solve(&self, target: u32) -> Option<u32> {
        let mut v = target;
        let mut c = 0u32;
        while v != 0 {
            let lead = 31 - v.leading_zeros();
            let (pv, pc) = self.pivots[lead as usize]?;
            v ^= pv;
            c ^= pc;
        }
        Some(c)
    }
}

/// All `2^k` vectors in the span of `basis` (assumed independent), ascending.
pub fn span(basis: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(1 << basis.len());
    out.push(0);
    for &b in basis {
        let len = out.len();
        for i in 0..len {
            out.push(out[i] ^ b);
        }
    }
    out.sort_unstable();
    out
}
