//! Polynomials over GF(2) packed into `u64` (bit i = coefficient of x^i).
//!
//! Only what field construction needs: remainder, modular products, gcd and
//! an irreducibility test. Moduli have degree at most 32.

use alloc::vec::Vec;

pub fn degree(p: u64) -> Option<u32> {
    (p != 0).then(|| 63 - p.leading_zeros())
}

/// Carry-less product. Callers keep `deg a + deg b < 64`.
#[inline]
pub fn clmul(a: u64, mut b: u64) -> u64 {
    let mut acc = 0;
    while b != 0 {
        acc ^= a << b.trailing_zeros();
        b &= b - 1;
    }
    acc
}

pub fn rem(mut a: u64, m: u64) -> u64 {
    let dm = degree(m).expect("nonzero modulus");
    while let Some(da) = degree(a) {
        if da < dm {
            break;
        }
        a ^= m << (da - dm);
    }
    a
}

pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    rem(clmul(rem(a, m), rem(b, m)), m)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or test: `p` of degree `d` is irreducible iff
/// `gcd(x^(2^i) - x, p) = 1` for every `1 ≤ i ≤ d/2`.
pub fn is_irreducible(p: u64) -> bool {
    let Some(d) = degree(p) else { return false };
    if d == 0 || d > 32 {
        return false;
    }
    let mut x_pow = rem(0b10, p);
    for _ in 1..=d / 2 {
        x_pow = mulmod(x_pow, x_pow, p);
        if gcd(p, x_pow ^ 0b10) != 1 {
            return false;
        }
    }
    true
}

/// Smallest irreducible polynomial of degree `d`, comparing bit vectors as
/// integers.
pub fn smallest_irreducible(d: u32) -> u64 {
    assert!((1..=32).contains(&d));
    ((1u64 << d)..(1u64 << (d + 1)))
        .find(|&p| is_irreducible(p))
        .expect("irreducible polynomials exist in every degree")
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent oracle: trial division by every polynomial of degree 1..=d/2.
    fn irreducible_by_trial_division(p: u64) -> bool {
        let d = degree(p).unwrap();
        if d == 0 {
            return false;
        }
        (2u64..(1 << (d / 2 + 1))).all(|q| rem(p, q) != 0)
    }

    #[test]
    fn ben_or_agrees_with_trial_division() {
        for p in 2u64..(1 << 11) {
            assert_eq!(is_irreducible(p), irreducible_by_trial_division(p), "p = {p:#x}");
        }
    }

    #[test]
    fn smallest_irreducibles() {
        assert_eq!(smallest_irreducible(4), 0b10011);
        assert_eq!(smallest_irreducible(2), 0b111);
        assert_eq!(smallest_irreducible(8), 0x11b);
        for d in 1..=16 {
            let p = smallest_irreducible(d);
            assert!(irreducible_by_trial_division(p));
            assert!(((1u64 << d)..p).all(|q| !irreducible_by_trial_division(q)));
        }
    }

    #[test]
    fn reducible_examples() {
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2
        assert!(!is_irreducible(0b10101));
        assert_eq!(clmul(0b111, 0b111), 0b10101);
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(255), alloc::vec![3, 5, 17]);
        assert_eq!(prime_factors((1 << 28) - 1), alloc::vec![3, 5, 29, 43, 113, 127]);
        assert_eq!(prime_factors(1), alloc::vec![]);
    }
}
