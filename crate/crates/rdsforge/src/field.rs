//! Arithmetic in GF(2^n) in a polynomial basis.
//!
//! Elements are bitmasks: bit i of a [`FieldElem`] is the coefficient of x^i
//! in F_2[x] modulo the field polynomial. Addition is XOR, so it never
//! appears as a named operation. A [`FieldSpec`] fixes the degree and the
//! reducing polynomial; all operations are pure functions of their inputs
//! and a spec is freely shareable across threads.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};

/// A field element as a polynomial-basis bitmask (bit i = coefficient of x^i).
pub type FieldElem = u32;

/// Smallest supported extension degree.
pub const MIN_DEGREE: u32 = 2;
/// Largest supported extension degree (tables of 2^n entries stay desk-sized).
pub const MAX_DEGREE: u32 = 24;

/// The arithmetic context: degree `n` and the irreducible polynomial `poly`
/// (bit i = coefficient of x^i, bit n always set).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FieldSpec {
    n: u32,
    poly: u32,
}

impl FieldSpec {
    /// Builds the field GF(2^n) with the lexicographically smallest
    /// irreducible polynomial of degree n (smallest as a bitmask integer).
    pub fn make_field(n: u32) -> Result<FieldSpec> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&n) {
            return Err(Error::DegreeOutOfRange(n));
        }
        for poly in (1u32 << n)..(1u32 << (n + 1)) {
            if is_irreducible(poly, n) {
                return Ok(FieldSpec { n, poly });
            }
        }
        unreachable!("every degree has an irreducible polynomial");
    }

    /// Builds a field from an explicit modulus, validating degree and
    /// irreducibility. Used when loading serialized tables.
    pub fn new(n: u32, poly: u32) -> Result<FieldSpec> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&n) {
            return Err(Error::DegreeOutOfRange(n));
        }
        if poly >> n != 1 || !is_irreducible(poly, n) {
            return Err(Error::BadModulus { n, poly });
        }
        Ok(FieldSpec { n, poly })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn poly(&self) -> u32 {
        self.poly
    }

    /// Number of field elements, 2^n.
    pub fn size(&self) -> usize {
        1usize << self.n
    }

    /// Order of the multiplicative group, 2^n - 1.
    pub fn order(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    /// True iff `a` is a valid element bitmask for this field.
    pub fn contains(&self, a: FieldElem) -> bool {
        (a as u64) < (1u64 << self.n)
    }

    /// Carry-less product reduced modulo the field polynomial.
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        debug_assert!(self.contains(a) && self.contains(b));
        let mut acc: u32 = 0;
        let mut a = a;
        let mut b = b;
        while b != 0 {
            if b & 1 != 0 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a >> self.n & 1 != 0 {
                a ^= self.poly;
            }
        }
        acc
    }

    /// Squaring (the Frobenius automorphism).
    pub fn sq(&self, a: FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    /// Exponentiation by square-and-multiply. Exponents are reduced modulo
    /// 2^n - 1 for nonzero bases; 0^0 = 1 by the empty-product convention.
    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let mut e = e % self.order();
        let mut base = a;
        let mut acc: FieldElem = 1;
        while e != 0 {
            if e & 1 != 0 {
                acc = self.mul(acc, base);
            }
            base = self.sq(base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, a^(2^n - 2). Zero is an error.
    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.order() - 1))
    }

    /// Absolute trace Tr(a) = a + a^2 + a^4 + ... + a^(2^(n-1)), in {0, 1}.
    pub fn trace(&self, a: FieldElem) -> u32 {
        let mut acc = a;
        let mut t = a;
        for _ in 1..self.n {
            t = self.sq(t);
            acc ^= t;
        }
        debug_assert!(acc <= 1, "trace landed outside the prime subfield");
        acc
    }

    /// An ordered F_2-basis of the field whose first element is `first`.
    ///
    /// Deterministic: candidates 1, 2, 3, ... are scanned in increasing
    /// bitmask order and kept when linearly independent of the set so far
    /// (Gaussian elimination over F_2).
    pub fn complete_basis(&self, first: FieldElem) -> Result<Vec<FieldElem>> {
        if first == 0 {
            return Err(Error::ZeroParameter("first basis element"));
        }
        if !self.contains(first) {
            return Err(Error::ElementOutOfRange {
                value: first as u64,
                bits: self.n,
            });
        }
        let mut basis = Vec::with_capacity(self.n as usize);
        // pivot_by_bit[b] holds a reduced vector with leading bit b
        let mut pivot_by_bit = vec![0u32; self.n as usize];
        let try_insert = |v: u32, basis: &mut Vec<u32>, pivots: &mut Vec<u32>| {
            let mut r = v;
            while r != 0 {
                let b = (31 - r.leading_zeros()) as usize;
                if pivots[b] == 0 {
                    pivots[b] = r;
                    basis.push(v);
                    return true;
                }
                r ^= pivots[b];
            }
            false
        };
        try_insert(first, &mut basis, &mut pivot_by_bit);
        let mut cand: u32 = 1;
        while basis.len() < self.n as usize {
            try_insert(cand, &mut basis, &mut pivot_by_bit);
            cand += 1;
        }
        Ok(basis)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            n: u32,
            poly: u32,
        }
        let w = Wire::deserialize(de)?;
        FieldSpec::new(w.n, w.poly).map_err(D::Error::custom)
    }
}

/// Degree of a polynomial bitmask (0 maps to 0).
fn poly_degree(p: u64) -> u32 {
    63 - p.leading_zeros()
}

/// Remainder of a modulo b in F_2[x].
fn poly_rem(mut a: u64, b: u64) -> u64 {
    debug_assert!(b != 0);
    let db = poly_degree(b);
    while a != 0 && poly_degree(a) >= db {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = poly_rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// Product of a and b reduced modulo m, all bitmask polynomials over F_2.
fn poly_mulmod(a: u64, b: u64, m: u64) -> u64 {
    let n = poly_degree(m);
    let mut acc: u64 = 0;
    let mut a = poly_rem(a, m);
    let mut b = b;
    while b != 0 {
        if b & 1 != 0 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> n & 1 != 0 {
            a ^= m;
        }
    }
    acc
}

/// Irreducibility over F_2 by the gcd-with-Frobenius method: a degree-n
/// polynomial is reducible iff it shares a factor with x^(2^d) - x for some
/// d <= n/2, since any proper factor has degree at most n/2 and every
/// irreducible of degree d divides x^(2^d) - x.
pub fn is_irreducible(poly: u32, n: u32) -> bool {
    if poly >> n != 1 {
        return false;
    }
    let m = poly as u64;
    let mut r: u64 = 0b10; // x
    for _ in 1..=n / 2 {
        r = poly_mulmod(r, r, m);
        if poly_gcd(m, r ^ 0b10) != 1 {
            return false;
        }
    }
    true
}

/// Modular inverse of `e` modulo `modulus` via the extended Euclidean
/// algorithm. Errors unless gcd(e, modulus) = 1.
pub fn exponent_inverse(e: u64, modulus: u64) -> Result<u64> {
    if modulus < 2 {
        return Err(Error::ExponentNotInvertible { e, modulus });
    }
    let (mut r0, mut r1) = (modulus as i128, (e % modulus) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(Error::ExponentNotInvertible { e, modulus });
    }
    Ok(t0.rem_euclid(modulus as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent irreducibility oracle: trial division by every polynomial
    /// of degree 1..=n/2.
    fn irreducible_by_trial_division(poly: u32, n: u32) -> bool {
        for d in 1..=n / 2 {
            for f in (1u64 << d)..(1u64 << (d + 1)) {
                if poly_rem(poly as u64, f) == 0 {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn make_field_picks_smallest_irreducible() {
        assert_eq!(FieldSpec::make_field(2).unwrap().poly(), 0b111);
        assert_eq!(FieldSpec::make_field(3).unwrap().poly(), 0b1011);
        assert_eq!(FieldSpec::make_field(4).unwrap().poly(), 0b10011);
        // cross-check the gcd method against trial division
        for n in 2..=10 {
            let spec = FieldSpec::make_field(n).unwrap();
            let by_trial = ((1u32 << n)..(1u32 << (n + 1)))
                .find(|&p| irreducible_by_trial_division(p, n))
                .unwrap();
            assert_eq!(spec.poly(), by_trial, "n={n}");
        }
    }

    #[test]
    fn make_field_rejects_out_of_range() {
        assert!(matches!(FieldSpec::make_field(1), Err(Error::DegreeOutOfRange(1))));
        assert!(matches!(FieldSpec::make_field(25), Err(Error::DegreeOutOfRange(25))));
    }

    #[test]
    fn every_supported_degree_has_a_field() {
        for n in MIN_DEGREE..=MAX_DEGREE {
            let f = FieldSpec::make_field(n).unwrap();
            assert_eq!(f.poly() >> n, 1, "degree bit for n={n}");
            // spot-check the arithmetic without building tables
            let a = (f.size() as u32 - 1) ^ 0b10;
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "n={n}");
            assert!(f.trace(a) <= 1, "n={n}");
        }
    }

    #[test]
    fn explicit_modulus_is_validated() {
        assert!(FieldSpec::new(3, 0b1011).is_ok());
        assert!(FieldSpec::new(3, 0b1101).is_ok()); // x^3 + x^2 + 1
        // x^3 + 1 = (x + 1)(x^2 + x + 1)
        assert!(matches!(FieldSpec::new(3, 0b1001), Err(Error::BadModulus { .. })));
        // wrong degree
        assert!(matches!(FieldSpec::new(3, 0b10011), Err(Error::BadModulus { .. })));
    }

    #[test]
    fn gf8_products() {
        let f = FieldSpec::make_field(3).unwrap();
        assert_eq!(f.mul(2, 2), 4); // x * x = x^2
        assert_eq!(f.mul(4, 2), 3); // x^2 * x = x^3 = x + 1
        assert_eq!(f.inv(2).unwrap(), 5); // x * (x^2 + 1) = x^3 + x = 1
        // exhaustive inverse search agrees with pow-based inversion
        for a in 1..8u32 {
            let inv = (1..8u32).find(|&b| f.mul(a, b) == 1).unwrap();
            assert_eq!(f.inv(a).unwrap(), inv);
        }
        assert!(matches!(f.inv(0), Err(Error::ZeroInverse)));
    }

    #[test]
    fn pow_conventions() {
        let f = FieldSpec::make_field(5).unwrap();
        assert_eq!(f.pow(0, 0), 1);
        assert_eq!(f.pow(0, 7), 0);
        for a in 1..32u32 {
            assert_eq!(f.pow(a, 0), 1);
            assert_eq!(f.pow(a, f.order()), 1); // Lagrange
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn gf8_trace_table() {
        let f = FieldSpec::make_field(3).unwrap();
        assert_eq!(f.trace(0), 0);
        assert_eq!(f.trace(1), 1); // n odd
        assert_eq!(f.trace(2), 0);
        let zeros: Vec<u32> = (0..8).filter(|&t| f.trace(t) == 0).collect();
        assert_eq!(zeros, vec![0, 2, 4, 6]);
    }

    #[test]
    fn trace_zero_set_has_half_the_field() {
        for n in 2..=13 {
            let f = FieldSpec::make_field(n).unwrap();
            let zeros = (0..f.size() as u32).filter(|&t| f.trace(t) == 0).count();
            assert_eq!(zeros, f.size() / 2, "n={n}");
        }
    }

    #[test]
    fn trace_is_frobenius_invariant() {
        let f = FieldSpec::make_field(7).unwrap();
        for a in 0..f.size() as u32 {
            assert_eq!(f.trace(a), f.trace(f.sq(a)));
        }
    }

    #[test]
    fn exponent_inverse_examples() {
        assert_eq!(exponent_inverse(3, 7).unwrap(), 5);
        // 1/(2^k - 1) = 2^k + 1 mod 2^(2k-1) - 1, here k = 2
        assert_eq!(exponent_inverse(3, 7).unwrap(), 5);
        assert_eq!(exponent_inverse(1, 100).unwrap(), 1);
        assert!(matches!(
            exponent_inverse(6, 9),
            Err(Error::ExponentNotInvertible { .. })
        ));
    }

    #[test]
    fn complete_basis_examples() {
        let f = FieldSpec::make_field(3).unwrap();
        assert_eq!(f.complete_basis(1).unwrap(), vec![1, 2, 4]);
        assert_eq!(f.complete_basis(3).unwrap(), vec![3, 1, 4]);
        assert!(f.complete_basis(0).is_err());
    }

    #[test]
    fn complete_basis_spans_the_field() {
        for n in [2, 3, 5, 8] {
            let f = FieldSpec::make_field(n).unwrap();
            for first in 1..f.size() as u32 {
                let basis = f.complete_basis(first).unwrap();
                assert_eq!(basis.len(), n as usize);
                assert_eq!(basis[0], first);
                // all 2^n subset sums distinct <=> full rank
                let mut seen = vec![false; f.size()];
                for mask in 0..f.size() {
                    let v = basis
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 != 0)
                        .fold(0u32, |acc, (_, &b)| acc ^ b);
                    assert!(!seen[v as usize]);
                    seen[v as usize] = true;
                }
            }
        }
    }

    #[test]
    fn spec_json_round_trip_validates() {
        let f = FieldSpec::make_field(5).unwrap();
        let js = serde_json::to_string(&f).unwrap();
        assert_eq!(js, r#"{"n":5,"poly":37}"#);
        let back: FieldSpec = serde_json::from_str(&js).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<FieldSpec>(r#"{"n":3,"poly":9}"#).is_err());
    }

    proptest! {
        #[test]
        fn field_axioms(n in 2u32..=12, seed in any::<u64>()) {
            let f = FieldSpec::make_field(n).unwrap();
            let mask = (f.size() - 1) as u32;
            let a = (seed as u32) & mask;
            let b = ((seed >> 16) as u32) & mask;
            let c = ((seed >> 32) as u32) & mask;
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
            prop_assert_eq!(f.mul(a, 1), a);
            // distributivity over xor
            prop_assert_eq!(f.mul(a, b ^ c), f.mul(a, b) ^ f.mul(a, c));
            // trace linearity
            prop_assert_eq!(f.trace(a ^ b), f.trace(a) ^ f.trace(b));
        }

        #[test]
        fn exponent_inverse_is_an_inverse(e in 1u64..10_000, m in 2u64..10_000) {
            match exponent_inverse(e, m) {
                Ok(d) => {
                    prop_assert!(d > 0 && d < m);
                    prop_assert_eq!((e as u128 * d as u128) % m as u128, 1);
                }
                Err(_) => {
                    // gcd must be > 1
                    let (mut x, mut y) = (e, m);
                    while y != 0 { (x, y) = (y, x % y); }
                    prop_assert!(x != 1);
                }
            }
        }
    }
}
