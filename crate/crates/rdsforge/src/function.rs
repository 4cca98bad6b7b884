//! Vectorial functions GF(2^n) -> GF(2^n) as full value tables, and the
//! constructors for every function family the toolkit analyzes.
//!
//! Tables are materialized rather than kept symbolic: every downstream pass
//! is an exhaustive count, and 2^n entries stay cache-linear for n <= 24.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldSpec};

/// A function F: GF(2^n) -> GF(2^n) stored as its table of 2^n values;
/// position x holds F(x).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueTable {
    spec: FieldSpec,
    table: Vec<FieldElem>,
}

impl ValueTable {
    /// Materializes `f` over the whole field.
    pub fn from_fn(spec: FieldSpec, f: impl FnMut(FieldElem) -> FieldElem) -> ValueTable {
        let table = (0..spec.size() as u32).map(f).collect();
        ValueTable { spec, table }
    }

    /// Wraps an explicit table, validating length and entry range.
    pub fn from_vec(spec: FieldSpec, table: Vec<FieldElem>) -> Result<ValueTable> {
        if table.len() != spec.size() {
            return Err(Error::BadTable(format!(
                "expected {} entries, got {}",
                spec.size(),
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| !spec.contains(v)) {
            return Err(Error::BadTable(format!("entry {bad} out of range")));
        }
        Ok(ValueTable { spec, table })
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// F(x).
    pub fn get(&self, x: FieldElem) -> FieldElem {
        self.table[x as usize]
    }

    pub fn as_slice(&self) -> &[FieldElem] {
        &self.table
    }
}

impl Serialize for ValueTable {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            n: u32,
            poly: u32,
            table: &'a [FieldElem],
        }
        Wire {
            n: self.spec.n(),
            poly: self.spec.poly(),
            table: &self.table,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ValueTable {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            n: u32,
            poly: u32,
            table: Vec<FieldElem>,
        }
        let w = Wire::deserialize(de)?;
        let spec = FieldSpec::new(w.n, w.poly).map_err(D::Error::custom)?;
        ValueTable::from_vec(spec, w.table).map_err(D::Error::custom)
    }
}

/// Branchless conditional add: x xor c when `bit` is 1, x otherwise.
#[inline]
fn select_add(x: FieldElem, c: FieldElem, bit: u32) -> FieldElem {
    x ^ (c & bit.wrapping_neg())
}

/// The monomial x^d.
pub fn power_map(spec: FieldSpec, d: u64) -> ValueTable {
    ValueTable::from_fn(spec, |x| spec.pow(x, d))
}

/// The 2-to-1 map x -> x + a^(-1) Tr(a^3 x^3), defined for odd n and a != 0.
/// Colliding pairs differ by exactly a^(-1).
pub fn family_paper_linear(spec: FieldSpec, a: FieldElem) -> Result<ValueTable> {
    let (a_inv, a3) = trace_gate_params(spec, a)?;
    Ok(ValueTable::from_fn(spec, |x| {
        let t = spec.trace(spec.mul(a3, spec.pow(x, 3)));
        select_add(x, a_inv, t)
    }))
}

/// The APN map x -> x^3 + a^(-1) Tr(a^3 x^9); equals the trace-gated linear
/// family composed with the cube map, so it shares its image set.
pub fn family_paper_cubic(spec: FieldSpec, a: FieldElem) -> Result<ValueTable> {
    let (a_inv, a3) = trace_gate_params(spec, a)?;
    Ok(ValueTable::from_fn(spec, |x| {
        let t = spec.trace(spec.mul(a3, spec.pow(x, 9)));
        select_add(spec.pow(x, 3), a_inv, t)
    }))
}

fn trace_gate_params(spec: FieldSpec, a: FieldElem) -> Result<(FieldElem, FieldElem)> {
    if spec.n().is_multiple_of(2) {
        return Err(Error::EvenDegree { n: spec.n() });
    }
    if a == 0 {
        return Err(Error::ZeroParameter("a"));
    }
    if !spec.contains(a) {
        return Err(Error::ElementOutOfRange {
            value: a as u64,
            bits: spec.n(),
        });
    }
    Ok((spec.inv(a)?, spec.pow(a, 3)))
}

/// The image of the linearized map x -> x^2 + alpha*x, as a sorted set.
/// For alpha != 0 this is an F_2-subspace of size 2^(n-1) (the map has
/// kernel {0, alpha}); for alpha = 0 squaring is onto, so it is the field.
pub fn linearized_image(spec: FieldSpec, alpha: FieldElem) -> Vec<FieldElem> {
    let mut img: Vec<FieldElem> = (0..spec.size() as u32)
        .map(|x| spec.sq(x) ^ spec.mul(alpha, x))
        .collect();
    img.sort_unstable();
    img.dedup();
    img
}

/// The map x -> x^6 + alpha*x^3 + gamma*Tr(alpha^(-3) x^9 + beta*x^3).
///
/// All hypotheses are enforced at construction: n odd, alpha/beta/gamma
/// nonzero, gamma outside {x^2 + alpha*x}, and Tr(beta*alpha) = 1. Violations
/// are rejected with distinct diagnostics rather than producing a table that
/// silently lacks the intended structure.
pub fn family_kgamma(
    spec: FieldSpec,
    alpha: FieldElem,
    beta: FieldElem,
    gamma: FieldElem,
) -> Result<ValueTable> {
    if spec.n().is_multiple_of(2) {
        return Err(Error::EvenDegree { n: spec.n() });
    }
    for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
        if v == 0 {
            return Err(Error::ZeroParameter(name));
        }
        if !spec.contains(v) {
            return Err(Error::ElementOutOfRange {
                value: v as u64,
                bits: spec.n(),
            });
        }
    }
    if linearized_image(spec, alpha).binary_search(&gamma).is_ok() {
        return Err(Error::GammaInLinearizedImage);
    }
    if spec.trace(spec.mul(beta, alpha)) != 1 {
        return Err(Error::TraceConditionFailed);
    }
    let alpha_inv_cubed = spec.pow(spec.inv(alpha)?, 3);
    Ok(ValueTable::from_fn(spec, |x| {
        let x3 = spec.pow(x, 3);
        let t = spec.trace(spec.mul(alpha_inv_cubed, spec.pow(x, 9)) ^ spec.mul(beta, x3));
        select_add(spec.pow(x, 6) ^ spec.mul(alpha, x3), gamma, t)
    }))
}

/// The map x -> x^(2^k - 1) + x^(2^k) with k = (n + 1) / 2, defined on odd
/// degrees n = 2k - 1 >= 3.
pub fn family_special(spec: FieldSpec) -> Result<ValueTable> {
    if spec.n().is_multiple_of(2) {
        return Err(Error::EvenDegree { n: spec.n() });
    }
    let k = spec.n().div_ceil(2);
    let e = 1u64 << k;
    Ok(ValueTable::from_fn(spec, |x| {
        spec.pow(x, e - 1) ^ spec.pow(x, e)
    }))
}

/// The map x -> x^3 + x^4 on odd-degree fields.
pub fn family_x3x4(spec: FieldSpec) -> Result<ValueTable> {
    if spec.n().is_multiple_of(2) {
        return Err(Error::EvenDegree { n: spec.n() });
    }
    Ok(ValueTable::from_fn(spec, |x| {
        spec.pow(x, 3) ^ spec.pow(x, 4)
    }))
}

/// The classical APN monomial exponent families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialKind {
    /// d = 2^i + 1, gcd(i, n) = 1.
    Gold,
    /// d = 2^(2i) - 2^i + 1, gcd(i, n) = 1.
    Kasami,
    /// d = 2^k + 3 with n = 2k + 1.
    Welch,
}

/// Exponent of the named monomial family. For Gold and Kasami the index must
/// satisfy gcd(i, n) = 1 and 1 <= i <= (n-1)/2; Welch ignores `i` and
/// requires odd n.
pub fn named_exponent(kind: MonomialKind, n: u32, i: u32) -> Result<u64> {
    match kind {
        MonomialKind::Gold | MonomialKind::Kasami => {
            if i < 1 || i > (n - 1) / 2 {
                return Err(Error::BadExponentIndex(format!(
                    "need 1 <= i <= (n-1)/2, got i={i}, n={n}"
                )));
            }
            if gcd(i as u64, n as u64) != 1 {
                return Err(Error::BadExponentIndex(format!(
                    "need gcd(i, n) = 1, got i={i}, n={n}"
                )));
            }
            Ok(match kind {
                MonomialKind::Gold => (1u64 << i) + 1,
                MonomialKind::Kasami => (1u64 << (2 * i)) - (1u64 << i) + 1,
                MonomialKind::Welch => unreachable!(),
            })
        }
        MonomialKind::Welch => {
            if n.is_multiple_of(2) {
                return Err(Error::EvenDegree { n });
            }
            let k = (n - 1) / 2;
            Ok((1u64 << k) + 3)
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// (f o g)(x) = f(g(x)). Both tables must share a field context.
pub fn compose(f: &ValueTable, g: &ValueTable) -> Result<ValueTable> {
    if f.spec() != g.spec() {
        return Err(Error::SpecMismatch);
    }
    Ok(ValueTable::from_fn(f.spec(), |x| f.get(g.get(x))))
}

/// (f + g)(x) = f(x) xor g(x).
pub fn pointwise_add(f: &ValueTable, g: &ValueTable) -> Result<ValueTable> {
    if f.spec() != g.spec() {
        return Err(Error::SpecMismatch);
    }
    Ok(ValueTable::from_fn(f.spec(), |x| f.get(x) ^ g.get(x)))
}

/// True iff all 2^n outputs are distinct.
pub fn is_permutation(f: &ValueTable) -> bool {
    let mut seen = vec![false; f.len()];
    for &v in f.as_slice() {
        if seen[v as usize] {
            return false;
        }
        seen[v as usize] = true;
    }
    true
}

/// True iff f(x + y) = f(x) + f(y) for all x, y.
///
/// Checked via the spanning-set argument: f is F_2-linear iff f(0) = 0 and
/// the whole table equals the linear extension of f on the unit-vector basis,
/// which this verifies in one O(2^n) pass.
pub fn is_linear(f: &ValueTable) -> bool {
    if f.get(0) != 0 {
        return false;
    }
    let size = f.len();
    let mut lin = vec![0u32; size];
    for x in 1..size {
        let low = x & x.wrapping_neg();
        lin[x] = lin[x ^ low] ^ f.get(low as u32);
        if lin[x] != f.get(x as u32) {
            return false;
        }
    }
    true
}

/// Identifier of a function family, as used by the CLI and the sweep
/// harness. Parameter expectations:
///
/// - `paper-linear`, `paper-cubic`: `a`
/// - `kgamma`: `alpha`, `beta`, `gamma`
/// - `special`, `x3x4`, `welch`: none
/// - `gold`, `kasami`: `i`
/// - `power`: `d`
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    PaperLinear,
    PaperCubic,
    Kgamma,
    Special,
    X3x4,
    Gold,
    Kasami,
    Welch,
    Power,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 9] = [
        FamilyKind::PaperLinear,
        FamilyKind::PaperCubic,
        FamilyKind::Kgamma,
        FamilyKind::Special,
        FamilyKind::X3x4,
        FamilyKind::Gold,
        FamilyKind::Kasami,
        FamilyKind::Welch,
        FamilyKind::Power,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            FamilyKind::PaperLinear => "paper-linear",
            FamilyKind::PaperCubic => "paper-cubic",
            FamilyKind::Kgamma => "kgamma",
            FamilyKind::Special => "special",
            FamilyKind::X3x4 => "x3x4",
            FamilyKind::Gold => "gold",
            FamilyKind::Kasami => "kasami",
            FamilyKind::Welch => "welch",
            FamilyKind::Power => "power",
        }
    }

    /// Parameter names the family expects, in canonical order.
    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            FamilyKind::PaperLinear | FamilyKind::PaperCubic => &["a"],
            FamilyKind::Kgamma => &["alpha", "beta", "gamma"],
            FamilyKind::Special | FamilyKind::X3x4 | FamilyKind::Welch => &[],
            FamilyKind::Gold | FamilyKind::Kasami => &["i"],
            FamilyKind::Power => &["d"],
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilyKind> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| Error::BadFamilyParams(format!("unknown family '{s}'")))
    }
}

/// Builds a family instance from named parameters, validating that exactly
/// the expected parameters are present.
pub fn build_family(
    spec: FieldSpec,
    kind: FamilyKind,
    params: &BTreeMap<String, u64>,
) -> Result<ValueTable> {
    for name in params.keys() {
        if !kind.param_names().contains(&name.as_str()) {
            return Err(Error::BadFamilyParams(format!(
                "family {kind} does not take parameter '{name}'"
            )));
        }
    }
    let want = |name: &'static str| -> Result<u64> {
        params
            .get(name)
            .copied()
            .ok_or_else(|| Error::BadFamilyParams(format!("family {kind} requires '{name}'")))
    };
    let elem = |name: &'static str| -> Result<FieldElem> {
        let v = want(name)?;
        if v >= (1u64 << spec.n()) {
            return Err(Error::ElementOutOfRange {
                value: v,
                bits: spec.n(),
            });
        }
        Ok(v as FieldElem)
    };
    match kind {
        FamilyKind::PaperLinear => family_paper_linear(spec, elem("a")?),
        FamilyKind::PaperCubic => family_paper_cubic(spec, elem("a")?),
        FamilyKind::Kgamma => family_kgamma(spec, elem("alpha")?, elem("beta")?, elem("gamma")?),
        FamilyKind::Special => family_special(spec),
        FamilyKind::X3x4 => family_x3x4(spec),
        FamilyKind::Gold => {
            let i = want("i")? as u32;
            Ok(power_map(spec, named_exponent(MonomialKind::Gold, spec.n(), i)?))
        }
        FamilyKind::Kasami => {
            let i = want("i")? as u32;
            Ok(power_map(spec, named_exponent(MonomialKind::Kasami, spec.n(), i)?))
        }
        FamilyKind::Welch => Ok(power_map(
            spec,
            named_exponent(MonomialKind::Welch, spec.n(), 0)?,
        )),
        FamilyKind::Power => Ok(power_map(spec, want("d")?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf8() -> FieldSpec {
        FieldSpec::make_field(3).unwrap()
    }

    #[test]
    fn power_map_tables() {
        let f = power_map(gf8(), 1);
        assert_eq!(f.as_slice(), &[0, 1, 2, 3, 4, 5, 6, 7]);
        let cube = power_map(gf8(), 3);
        assert_eq!(cube.as_slice(), &[0, 1, 3, 4, 5, 6, 7, 2]);
        assert!(is_permutation(&power_map(gf8(), 2)));
    }

    #[test]
    fn paper_linear_gf8() {
        let f = family_paper_linear(gf8(), 1).unwrap();
        assert_eq!(f.as_slice(), &[0, 0, 3, 3, 5, 5, 7, 7]);
        // colliding pairs differ by a^(-1) = 1
        for x in 0..8u32 {
            assert_eq!(f.get(x), f.get(x ^ 1));
        }
    }

    #[test]
    fn paper_families_reject_bad_inputs() {
        let gf16 = FieldSpec::make_field(4).unwrap();
        assert!(matches!(
            family_paper_linear(gf16, 1),
            Err(Error::EvenDegree { n: 4 })
        ));
        assert!(matches!(
            family_paper_linear(gf8(), 0),
            Err(Error::ZeroParameter("a"))
        ));
        assert!(matches!(family_x3x4(gf16), Err(Error::EvenDegree { .. })));
    }

    #[test]
    fn cubic_family_factors_through_the_cube_map() {
        for n in [3, 5, 7, 9] {
            let spec = FieldSpec::make_field(n).unwrap();
            for a in 1..spec.size() as u32 {
                let lhs = family_paper_cubic(spec, a).unwrap();
                let rhs = compose(&family_paper_linear(spec, a).unwrap(), &power_map(spec, 3))
                    .unwrap();
                assert_eq!(lhs, rhs, "n={n}, a={a}");
            }
        }
    }

    #[test]
    fn cubic_family_shares_the_linear_family_image() {
        // pre-composing with the cube permutation cannot change the image
        let spec = gf8();
        let image = |f: &ValueTable| {
            let mut v: Vec<u32> = f.as_slice().to_vec();
            v.sort_unstable();
            v.dedup();
            v
        };
        let lin = family_paper_linear(spec, 1).unwrap();
        let cub = family_paper_cubic(spec, 1).unwrap();
        assert_eq!(image(&lin), vec![0, 3, 5, 7]);
        assert_eq!(image(&cub), image(&lin));
    }

    #[test]
    fn linearized_image_shape() {
        let img0 = linearized_image(gf8(), 0);
        assert_eq!(img0.len(), 8); // Frobenius is onto
        let img1 = linearized_image(gf8(), 1);
        assert_eq!(img1.len(), 4);
        assert!(img1.contains(&0));
        // xor-closed
        for &u in &img1 {
            for &v in &img1 {
                assert!(img1.binary_search(&(u ^ v)).is_ok());
            }
        }
    }

    #[test]
    fn kgamma_matches_composed_form() {
        // k = l o h with l(x) = x^2 + alpha*x + gamma*Tr(beta*x) and
        // h the cubic family at a = alpha^(-1), over every valid triple.
        let spec = gf8();
        let mut checked = 0;
        for alpha in 1..8u32 {
            let img = linearized_image(spec, alpha);
            for beta in 1..8u32 {
                if spec.trace(spec.mul(beta, alpha)) != 1 {
                    continue;
                }
                for gamma in 1..8u32 {
                    if img.binary_search(&gamma).is_ok() {
                        continue;
                    }
                    let k = family_kgamma(spec, alpha, beta, gamma).unwrap();
                    let l = ValueTable::from_fn(spec, |x| {
                        let t = spec.trace(spec.mul(beta, x));
                        select_add(spec.sq(x) ^ spec.mul(alpha, x), gamma, t)
                    });
                    assert!(is_linear(&l) && is_permutation(&l));
                    let h = family_paper_cubic(spec, spec.inv(alpha).unwrap()).unwrap();
                    assert_eq!(k, compose(&l, &h).unwrap());
                    checked += 1;
                }
            }
        }
        assert_eq!(checked, 7 * 4 * 4); // (2^n - 1) * 2^(n-1) * 2^(n-1)
    }

    #[test]
    fn kgamma_diagnostics_are_distinct() {
        let spec = gf8();
        // gamma inside the linearized image
        let img = linearized_image(spec, 1);
        let bad_gamma = *img.iter().find(|&&g| g != 0).unwrap();
        let beta_ok = (1..8u32).find(|&b| spec.trace(b) == 1).unwrap();
        assert!(matches!(
            family_kgamma(spec, 1, beta_ok, bad_gamma),
            Err(Error::GammaInLinearizedImage)
        ));
        // trace condition failed
        let good_gamma = (1..8u32).find(|g| img.binary_search(g).is_err()).unwrap();
        let beta_bad = (1..8u32).find(|&b| spec.trace(b) == 0).unwrap();
        assert!(matches!(
            family_kgamma(spec, 1, beta_bad, good_gamma),
            Err(Error::TraceConditionFailed)
        ));
    }

    #[test]
    fn special_family_gf8() {
        let f = family_special(gf8()).unwrap();
        assert_eq!(f.as_slice(), &[0, 0, 5, 3, 7, 5, 3, 7]);
        // same exponents as x^3 + x^4 at k = 2
        assert_eq!(f, family_x3x4(gf8()).unwrap());
    }

    #[test]
    fn named_exponents() {
        assert_eq!(named_exponent(MonomialKind::Gold, 5, 1).unwrap(), 3);
        assert_eq!(named_exponent(MonomialKind::Kasami, 7, 2).unwrap(), 13);
        assert_eq!(named_exponent(MonomialKind::Welch, 5, 0).unwrap(), 7);
        assert!(named_exponent(MonomialKind::Gold, 6, 2).is_err()); // gcd(2,6) != 1
        assert!(named_exponent(MonomialKind::Gold, 5, 3).is_err()); // i > (n-1)/2
        assert!(named_exponent(MonomialKind::Welch, 6, 0).is_err());
    }

    #[test]
    fn compose_and_add() {
        let spec = gf8();
        let id = power_map(spec, 1);
        let f = family_paper_linear(spec, 3).unwrap();
        assert_eq!(compose(&f, &id).unwrap(), f);
        assert_eq!(compose(&id, &f).unwrap(), f);
        let sum = pointwise_add(&f, &f).unwrap();
        assert!(sum.as_slice().iter().all(|&v| v == 0));
        let other = FieldSpec::make_field(5).unwrap();
        assert!(matches!(
            compose(&f, &power_map(other, 1)),
            Err(Error::SpecMismatch)
        ));
    }

    #[test]
    fn linearity_and_permutation_checks() {
        let spec = gf8();
        assert!(is_linear(&power_map(spec, 2)));
        assert!(is_permutation(&power_map(spec, 3)));
        assert!(!is_linear(&power_map(spec, 3)));
        // affine but not linear
        let affine = ValueTable::from_fn(spec, |x| x ^ 5);
        assert!(!is_linear(&affine));
        // linear on the basis but not everywhere: x -> product of coordinates
        // injected on a single point would break from_fn purity; instead use
        // a hand-built table that matches the basis images of the identity
        // but deviates on a combined input.
        let tricky = ValueTable::from_vec(spec, vec![0, 1, 2, 7, 4, 5, 6, 3]).unwrap();
        assert!(!is_linear(&tricky));
    }

    #[test]
    fn family_kind_ids_round_trip() {
        for kind in FamilyKind::ALL {
            assert_eq!(kind.id().parse::<FamilyKind>().unwrap(), kind);
        }
        assert!("nonsense".parse::<FamilyKind>().is_err());
    }

    #[test]
    fn build_family_validates_params() {
        let spec = gf8();
        let mut params = BTreeMap::new();
        params.insert("a".to_string(), 1u64);
        let built = build_family(spec, FamilyKind::PaperLinear, &params).unwrap();
        assert_eq!(built, family_paper_linear(spec, 1).unwrap());
        assert!(build_family(spec, FamilyKind::Special, &params).is_err());
        assert!(build_family(spec, FamilyKind::PaperLinear, &BTreeMap::new()).is_err());
        let mut big = BTreeMap::new();
        big.insert("a".to_string(), 8u64);
        assert!(matches!(
            build_family(spec, FamilyKind::PaperLinear, &big),
            Err(Error::ElementOutOfRange { .. })
        ));
    }

    #[test]
    fn value_table_json_round_trip() {
        let f = family_paper_linear(gf8(), 1).unwrap();
        let js = serde_json::to_string(&f).unwrap();
        assert_eq!(js, r#"{"n":3,"poly":11,"table":[0,0,3,3,5,5,7,7]}"#);
        let back: ValueTable = serde_json::from_str(&js).unwrap();
        assert_eq!(back, f);
        // wrong length rejected
        assert!(serde_json::from_str::<ValueTable>(r#"{"n":3,"poly":11,"table":[0]}"#).is_err());
    }
}
