//! Equivalence machinery: the cyclotomic rule for power maps and
//! verification of extended-affine transformations under explicit witnesses.
//! There is deliberately no equivalence *decision* procedure beyond these.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldSpec};
use crate::function::{is_linear, is_permutation, ValueTable};

/// An affine permutation y -> L(y) + c given by its linear part (a table
/// that must be F_2-linear and bijective) and a constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineWitness {
    linear: ValueTable,
    constant: FieldElem,
}

impl AffineWitness {
    pub fn new(linear: ValueTable, constant: FieldElem) -> Result<AffineWitness> {
        if !is_linear(&linear) {
            return Err(Error::NotAffine("witness linear part"));
        }
        if !is_permutation(&linear) {
            return Err(Error::NotAffine("witness linear part (not bijective)"));
        }
        if !linear.spec().contains(constant) {
            return Err(Error::ElementOutOfRange {
                value: constant as u64,
                bits: linear.spec().n(),
            });
        }
        Ok(AffineWitness { linear, constant })
    }

    pub fn identity(spec: FieldSpec) -> AffineWitness {
        AffineWitness {
            linear: ValueTable::from_fn(spec, |x| x),
            constant: 0,
        }
    }

    pub fn spec(&self) -> FieldSpec {
        self.linear.spec()
    }

    pub fn linear(&self) -> &ValueTable {
        &self.linear
    }

    pub fn constant(&self) -> FieldElem {
        self.constant
    }

    pub fn apply(&self, y: FieldElem) -> FieldElem {
        self.linear.get(y) ^ self.constant
    }
}

/// Cyclotomic equivalence of the power maps x^k and x^l over GF(2^n): true
/// iff l = k * 2^a or k * l = 2^a modulo 2^n - 1 for some 0 <= a < n.
/// Requires gcd(k, 2^n - 1) = 1.
pub fn cyclotomic_equivalent(k: u64, l: u64, n: u32) -> Result<bool> {
    let modulus = (1u128 << n) - 1;
    let k = k as u128 % modulus;
    let l = l as u128 % modulus;
    if gcd(k, modulus) != 1 {
        return Err(Error::ExponentNotInvertible {
            e: k as u64,
            modulus: modulus as u64,
        });
    }
    let product = k * l % modulus;
    let mut pow2 = 1u128;
    for _ in 0..n {
        if l == k * pow2 % modulus || product == pow2 {
            return Ok(true);
        }
        pow2 = pow2 * 2 % modulus;
    }
    Ok(false)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// G = A o F o B + C for affine permutation witnesses A, B and an affine
/// offset table C (validated: C minus its constant term must be linear).
pub fn ea_apply(
    f: &ValueTable,
    a: &AffineWitness,
    b: &AffineWitness,
    c: &ValueTable,
) -> Result<ValueTable> {
    let spec = f.spec();
    if a.spec() != spec || b.spec() != spec || c.spec() != spec {
        return Err(Error::SpecMismatch);
    }
    let c0 = c.get(0);
    let c_linear = ValueTable::from_fn(spec, |x| c.get(x) ^ c0);
    if !is_linear(&c_linear) {
        return Err(Error::NotAffine("offset table C"));
    }
    Ok(ValueTable::from_fn(spec, |x| {
        a.apply(f.get(b.apply(x))) ^ c.get(x)
    }))
}

/// Builds the table of an F_2-linear map from its images of the unit
/// vectors, in one prefix pass.
fn table_from_columns(spec: FieldSpec, cols: &[FieldElem]) -> ValueTable {
    let mut table = vec![0u32; spec.size()];
    for x in 1..spec.size() {
        let low = x & x.wrapping_neg();
        table[x] = table[x ^ low] ^ cols[low.trailing_zeros() as usize];
    }
    ValueTable::from_vec(spec, table).expect("columns are in range")
}

/// A uniformly random affine permutation witness: the linear part comes from
/// an invertible matrix over F_2 obtained by rejection sampling, the
/// constant is uniform. Deterministic for a seeded generator.
pub fn random_affine_witness(spec: FieldSpec, rng: &mut impl Rng) -> AffineWitness {
    let mask = (spec.size() - 1) as u32;
    loop {
        let cols: Vec<FieldElem> = (0..spec.n()).map(|_| rng.gen::<u32>() & mask).collect();
        let linear = table_from_columns(spec, &cols);
        if is_permutation(&linear) {
            let constant = rng.gen::<u32>() & mask;
            return AffineWitness { linear, constant };
        }
    }
}

/// A random affine (not necessarily bijective) table, for use as the offset
/// C in EA transformations.
pub fn random_affine_function(spec: FieldSpec, rng: &mut impl Rng) -> ValueTable {
    let mask = (spec.size() - 1) as u32;
    let cols: Vec<FieldElem> = (0..spec.n()).map(|_| rng.gen::<u32>() & mask).collect();
    let constant = rng.gen::<u32>() & mask;
    let linear = table_from_columns(spec, &cols);
    ValueTable::from_fn(spec, |x| linear.get(x) ^ constant)
}
