//! Relative-difference-set verification in the elementary abelian group
//! (F_2^bits, +), with automatic detection of the forbidden subgroup.
//!
//! Differences are counted as ordered pairs: both (d, d') and (d', d)
//! contribute, matching the stated lambda parameters for the image sets of
//! 2-to-1 maps.

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::FieldElem;

/// Largest supported group, as a bit width. A counter array of 2^bits u64
/// values is allocated per check.
pub const MAX_GROUP_BITS: u32 = 25;

/// Parameters (m, n, k, lambda) of a relative difference set: group order
/// m*n, forbidden subgroup order n, set size k, common difference count
/// lambda.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RdsParams {
    pub m: u64,
    pub n: u64,
    pub k: u64,
    pub lambda: u64,
}

/// The counting identity every relative difference set satisfies:
/// k(k - 1) = lambda * n * (m - 1).
pub fn param_identity_check(p: &RdsParams) -> bool {
    p.k as u128 * (p.k as u128 - 1) == p.lambda as u128 * p.n as u128 * (p.m as u128 - 1)
}

/// The first group element violating the difference-set condition, with the
/// observed and required difference counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub element: FieldElem,
    pub observed: u64,
    pub expected: u64,
}

/// Outcome of a relative-difference-set check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RdsReport {
    pub verdict: bool,
    pub params: Option<RdsParams>,
    /// The supplied or detected forbidden subgroup candidate, sorted.
    pub forbidden: Vec<FieldElem>,
    pub counterexample: Option<Counterexample>,
}

// Wire format: {"verdict", "m", "n", "k", "lambda", "forbidden",
// "counterexample"} with nulls for the parameter fields of a failed check.
impl Serialize for RdsReport {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = ser.serialize_struct("RdsReport", 7)?;
        s.serialize_field("verdict", &self.verdict)?;
        s.serialize_field("m", &self.params.map(|p| p.m))?;
        s.serialize_field("n", &self.params.map(|p| p.n))?;
        s.serialize_field("k", &self.params.map(|p| p.k))?;
        s.serialize_field("lambda", &self.params.map(|p| p.lambda))?;
        s.serialize_field("forbidden", &self.forbidden)?;
        s.serialize_field("counterexample", &self.counterexample)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for RdsReport {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            verdict: bool,
            m: Option<u64>,
            n: Option<u64>,
            k: Option<u64>,
            lambda: Option<u64>,
            forbidden: Vec<FieldElem>,
            counterexample: Option<Counterexample>,
        }
        let w = Wire::deserialize(de)?;
        let params = match (w.m, w.n, w.k, w.lambda) {
            (Some(m), Some(n), Some(k), Some(lambda)) => Some(RdsParams { m, n, k, lambda }),
            (None, None, None, None) => None,
            _ => return Err(D::Error::custom("partial rds parameter tuple")),
        };
        Ok(RdsReport {
            verdict: w.verdict,
            params,
            forbidden: w.forbidden,
            counterexample: w.counterexample,
        })
    }
}

fn normalize_set(d: &[FieldElem], group_bits: u32) -> Result<Vec<FieldElem>> {
    if !(1..=MAX_GROUP_BITS).contains(&group_bits) {
        return Err(Error::DegreeOutOfRange(group_bits));
    }
    if d.is_empty() {
        return Err(Error::EmptySet);
    }
    let limit = 1u64 << group_bits;
    if let Some(&bad) = d.iter().find(|&&v| v as u64 >= limit) {
        return Err(Error::ElementOutOfRange {
            value: bad as u64,
            bits: group_bits,
        });
    }
    let mut d = d.to_vec();
    d.sort_unstable();
    d.dedup();
    Ok(d)
}

/// counts[g] = number of ordered pairs (d, d') of distinct set elements with
/// d xor d' = g. counts[0] is always 0 and the counts sum to |D|(|D| - 1).
pub fn difference_counts(d: &[FieldElem], group_bits: u32) -> Result<Vec<u64>> {
    let d = normalize_set(d, group_bits)?;
    let mut counts = vec![0u64; 1 << group_bits];
    for (i, &x) in d.iter().enumerate() {
        for &y in &d[i + 1..] {
            counts[(x ^ y) as usize] += 2;
        }
    }
    Ok(counts)
}

/// Shared tail of both check entry points: given the candidate subgroup as a
/// sorted element list, confirm zero counts inside it and a constant count
/// outside.
fn scan_counts(counts: &[u64], n_sub: &[FieldElem], d_len: u64) -> RdsReport {
    let size = counts.len() as u64;
    let mut in_n = vec![false; counts.len()];
    for &v in n_sub {
        in_n[v as usize] = true;
    }
    let mut lambda: Option<u64> = None;
    for g in 1..counts.len() {
        if in_n[g] {
            if counts[g] != 0 {
                return RdsReport {
                    verdict: false,
                    params: None,
                    forbidden: n_sub.to_vec(),
                    counterexample: Some(Counterexample {
                        element: g as FieldElem,
                        observed: counts[g],
                        expected: 0,
                    }),
                };
            }
        } else {
            match lambda {
                None => lambda = Some(counts[g]),
                Some(l) if counts[g] != l => {
                    return RdsReport {
                        verdict: false,
                        params: None,
                        forbidden: n_sub.to_vec(),
                        counterexample: Some(Counterexample {
                            element: g as FieldElem,
                            observed: counts[g],
                            expected: l,
                        }),
                    };
                }
                Some(_) => {}
            }
        }
    }
    let n = n_sub.len() as u64;
    RdsReport {
        verdict: true,
        params: Some(RdsParams {
            m: size / n,
            n,
            k: d_len,
            lambda: lambda.unwrap_or(0),
        }),
        forbidden: n_sub.to_vec(),
        counterexample: None,
    }
}

/// Verifies that `n_sub` contains 0 and is xor-closed; returns it sorted.
fn validate_subgroup(n_sub: &[FieldElem], group_bits: u32) -> Result<Vec<FieldElem>> {
    let n_sub = normalize_set(n_sub, group_bits)?;
    if n_sub[0] != 0 {
        return Err(Error::NotSubgroup { witness: 0 });
    }
    for (i, &u) in n_sub.iter().enumerate() {
        for &v in &n_sub[i + 1..] {
            if n_sub.binary_search(&(u ^ v)).is_err() {
                return Err(Error::NotSubgroup { witness: u ^ v });
            }
        }
    }
    Ok(n_sub)
}

/// Checks whether `d` is a relative difference set in F_2^group_bits with
/// forbidden subgroup `n_sub`. The subgroup is validated (0 present,
/// xor-closed); an invalid subgroup is an error, not a false verdict.
pub fn check_rds(d: &[FieldElem], n_sub: &[FieldElem], group_bits: u32) -> Result<RdsReport> {
    let n_sub = validate_subgroup(n_sub, group_bits)?;
    let d = normalize_set(d, group_bits)?;
    let counts = difference_counts(&d, group_bits)?;
    Ok(scan_counts(&counts, &n_sub, d.len() as u64))
}

/// Detects the forbidden subgroup instead of requiring it: the candidate is
/// {0} together with every element no difference attains. The verdict is
/// true iff that candidate is xor-closed and the counts are constant outside
/// it; otherwise the report carries the first violation.
pub fn detect_forbidden(d: &[FieldElem], group_bits: u32) -> Result<RdsReport> {
    let d = normalize_set(d, group_bits)?;
    let counts = difference_counts(&d, group_bits)?;
    let mut candidate: Vec<FieldElem> = vec![0];
    candidate.extend(
        (1..counts.len())
            .filter(|&g| counts[g] == 0)
            .map(|g| g as FieldElem),
    );
    // closure check; a failure means counts[w] > 0 where membership of the
    // zero-count set would force counts[w] = 0
    for (i, &u) in candidate.iter().enumerate() {
        for &v in &candidate[i + 1..] {
            let w = u ^ v;
            if candidate.binary_search(&w).is_err() {
                return Ok(RdsReport {
                    verdict: false,
                    params: None,
                    forbidden: candidate.clone(),
                    counterexample: Some(Counterexample {
                        element: w,
                        observed: counts[w as usize],
                        expected: 0,
                    }),
                });
            }
        }
    }
    Ok(scan_counts(&counts, &candidate, d.len() as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::function::{family_paper_linear, family_special};
    use std::collections::HashMap;

    /// Independent difference counter used as a cross-oracle.
    fn brute_counts(d: &[FieldElem]) -> HashMap<FieldElem, u64> {
        let mut map = HashMap::new();
        for &x in d {
            for &y in d {
                if x != y {
                    *map.entry(x ^ y).or_insert(0) += 1;
                }
            }
        }
        map
    }

    #[test]
    fn counts_for_the_gf8_image() {
        let counts = difference_counts(&[0, 3, 5, 7], 3).unwrap();
        assert_eq!(counts, vec![0, 0, 2, 2, 2, 2, 2, 2]);
        let brute = brute_counts(&[0, 3, 5, 7]);
        for g in 1..8u32 {
            assert_eq!(counts[g as usize], brute.get(&g).copied().unwrap_or(0));
        }
    }

    #[test]
    fn counts_degenerate_sets() {
        assert!(difference_counts(&[0], 3).unwrap().iter().all(|&c| c == 0));
        let whole: Vec<u32> = (0..8).collect();
        let counts = difference_counts(&whole, 3).unwrap();
        assert_eq!(counts[0], 0);
        assert!(counts[1..].iter().all(|&c| c == 8));
        assert!(matches!(difference_counts(&[], 3), Err(Error::EmptySet)));
        assert!(matches!(
            difference_counts(&[9], 3),
            Err(Error::ElementOutOfRange { .. })
        ));
    }

    #[test]
    fn counts_sum_to_ordered_pairs() {
        let d = [1u32, 4, 6, 10, 13];
        let counts = difference_counts(&d, 4).unwrap();
        assert_eq!(counts.iter().sum::<u64>(), (d.len() * (d.len() - 1)) as u64);
        assert_eq!(counts[0], 0);
    }

    #[test]
    fn check_rds_accepts_the_paper_image() {
        let report = check_rds(&[0, 3, 5, 7], &[0, 1], 3).unwrap();
        assert!(report.verdict);
        let p = report.params.unwrap();
        assert_eq!((p.m, p.n, p.k, p.lambda), (4, 2, 4, 2));
        assert!(param_identity_check(&p));
        assert_eq!(report.forbidden, vec![0, 1]);
        assert!(report.counterexample.is_none());
    }

    #[test]
    fn check_rds_special_family_image() {
        let spec = FieldSpec::make_field(3).unwrap();
        let f = family_special(spec).unwrap();
        let image = crate::diff::image_profile(&f).image;
        let report = check_rds(&image, &[0, 1], 3).unwrap();
        assert!(report.verdict);
        assert_eq!(
            report.params.unwrap(),
            RdsParams { m: 4, n: 2, k: 4, lambda: 2 }
        );
    }

    #[test]
    fn check_rds_rejects_with_counterexample() {
        let report = check_rds(&[0, 1, 2], &[0, 1], 3).unwrap();
        assert!(!report.verdict);
        assert_eq!(
            report.counterexample,
            Some(Counterexample { element: 1, observed: 2, expected: 0 })
        );
    }

    #[test]
    fn check_rds_validates_the_subgroup() {
        assert!(matches!(
            check_rds(&[0, 3], &[1, 2], 3),
            Err(Error::NotSubgroup { witness: 0 })
        ));
        assert!(matches!(
            check_rds(&[0, 3], &[0, 1, 2], 3),
            Err(Error::NotSubgroup { witness: 3 })
        ));
    }

    #[test]
    fn detect_forbidden_on_paper_images() {
        let report = detect_forbidden(&[0, 3, 5, 7], 3).unwrap();
        assert!(report.verdict);
        assert_eq!(report.forbidden, vec![0, 1]);

        // agreement with check_rds on the detected subgroup
        let again = check_rds(&[0, 3, 5, 7], &report.forbidden, 3).unwrap();
        assert_eq!(again.verdict, report.verdict);
        assert_eq!(again.params, report.params);

        let spec = FieldSpec::make_field(5).unwrap();
        for a in 1..32u32 {
            let f = family_paper_linear(spec, a).unwrap();
            let image = crate::diff::image_profile(&f).image;
            let report = detect_forbidden(&image, 5).unwrap();
            assert!(report.verdict, "a={a}");
            assert_eq!(report.forbidden, {
                let mut v = vec![0, spec.inv(a).unwrap()];
                v.sort_unstable();
                v
            });
            assert_eq!(
                report.params.unwrap(),
                RdsParams { m: 16, n: 2, k: 16, lambda: 8 }
            );
        }
    }

    #[test]
    fn detect_forbidden_whole_group_and_singleton() {
        let whole: Vec<u32> = (0..8).collect();
        let report = detect_forbidden(&whole, 3).unwrap();
        assert!(report.verdict);
        assert_eq!(report.forbidden, vec![0]);
        assert_eq!(
            report.params.unwrap(),
            RdsParams { m: 8, n: 1, k: 8, lambda: 8 }
        );

        let report = detect_forbidden(&[5], 3).unwrap();
        assert!(report.verdict);
        assert_eq!(report.forbidden.len(), 8); // all counts zero
        assert_eq!(report.params.unwrap().lambda, 0);
    }

    #[test]
    fn param_identity_examples() {
        assert!(param_identity_check(&RdsParams { m: 4, n: 2, k: 4, lambda: 2 }));
        assert!(param_identity_check(&RdsParams { m: 16, n: 2, k: 16, lambda: 8 }));
        assert!(!param_identity_check(&RdsParams { m: 4, n: 2, k: 4, lambda: 1 }));
    }

    #[test]
    fn translation_and_linear_invariance() {
        let spec = FieldSpec::make_field(5).unwrap();
        let f = family_paper_linear(spec, 7).unwrap();
        let image = crate::diff::image_profile(&f).image;
        let base = difference_counts(&image, 5).unwrap();

        // translate: counts identical
        let shifted: Vec<u32> = image.iter().map(|&v| v ^ 21).collect();
        assert_eq!(difference_counts(&shifted, 5).unwrap(), base);

        // linear bijection: counts permuted by it
        let l = ValueTableLinear::build(spec);
        let mapped: Vec<u32> = image.iter().map(|&v| l.apply(v)).collect();
        let mapped_counts = difference_counts(&mapped, 5).unwrap();
        for g in 0..32u32 {
            assert_eq!(mapped_counts[l.apply(g) as usize], base[g as usize]);
        }
    }

    /// A fixed F_2-linear bijection used by the invariance test.
    struct ValueTableLinear {
        table: Vec<u32>,
    }

    impl ValueTableLinear {
        fn build(spec: FieldSpec) -> Self {
            // multiplication by a nonzero field constant is an F_2-linear
            // bijection
            let table = (0..spec.size() as u32).map(|x| spec.mul(x, 9)).collect();
            ValueTableLinear { table }
        }

        fn apply(&self, x: u32) -> u32 {
            self.table[x as usize]
        }
    }

    #[test]
    fn report_json_shape() {
        let report = check_rds(&[0, 3, 5, 7], &[0, 1], 3).unwrap();
        let js = serde_json::to_string(&report).unwrap();
        assert_eq!(
            js,
            r#"{"verdict":true,"m":4,"n":2,"k":4,"lambda":2,"forbidden":[0,1],"counterexample":null}"#
        );
        let back: RdsReport = serde_json::from_str(&js).unwrap();
        assert_eq!(back, report);

        let bad = check_rds(&[0, 1, 2], &[0, 1], 3).unwrap();
        let js = serde_json::to_string(&bad).unwrap();
        assert!(js.contains(r#""m":null"#));
        let back: RdsReport = serde_json::from_str(&js).unwrap();
        assert_eq!(back, bad);
    }
}
