//! Differential uniformity and image multiplicity structure, computed by
//! exhaustive enumeration.
//!
//! The delta table is never materialized as a 2^n x 2^n matrix; each input
//! difference `a` folds into one reusable 2^n-bin counter, so memory stays at
//! 2^n while the full pass costs O(2^(2n)). The per-`a` outer loop runs on
//! rayon; callers control parallelism through the installed thread pool.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::function::ValueTable;

/// Differential spectrum: the maximum delta value and, per delta value, how
/// many (a, b) pairs with a != 0 attain it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffSpectrum {
    pub max_delta: u32,
    pub histogram: BTreeMap<u32, u64>,
}

/// Image census: the image set, per-value preimage counts, and the common
/// count when the function is uniformly k-to-1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageProfile {
    pub image: Vec<FieldElem>,
    pub multiplicities: BTreeMap<FieldElem, u32>,
    pub uniform_k: Option<u32>,
}

/// Number of x with f(x + a) + f(x) = b. The input difference must be
/// nonzero.
pub fn delta_count(f: &ValueTable, a: FieldElem, b: FieldElem) -> Result<u32> {
    if a == 0 {
        return Err(Error::ZeroParameter("a"));
    }
    let size = f.len() as u32;
    Ok((0..size).filter(|&x| f.get(x ^ a) ^ f.get(x) == b).count() as u32)
}

/// Fills `counts[b] = delta_f(a, b)` for one fixed `a`; `counts` is zeroed
/// first so the buffer can be reused across calls.
fn delta_row(f: &ValueTable, a: FieldElem, counts: &mut [u32]) {
    counts.fill(0);
    for x in 0..f.len() as u32 {
        counts[(f.get(x ^ a) ^ f.get(x)) as usize] += 1;
    }
}

/// Full differential spectrum over all a != 0 and all b.
pub fn diff_spectrum(f: &ValueTable) -> DiffSpectrum {
    let size = f.len();
    let (max_delta, histogram) = (1..size as u32)
        .into_par_iter()
        .map_init(
            || vec![0u32; size],
            |counts, a| {
                delta_row(f, a, counts);
                let mut local: BTreeMap<u32, u64> = BTreeMap::new();
                let mut max = 0;
                for &c in counts.iter() {
                    *local.entry(c).or_insert(0) += 1;
                    max = max.max(c);
                }
                (max, local)
            },
        )
        .reduce(
            || (0, BTreeMap::new()),
            |(m1, mut h1), (m2, h2)| {
                for (k, v) in h2 {
                    *h1.entry(k).or_insert(0) += v;
                }
                (m1.max(m2), h1)
            },
        );
    DiffSpectrum { max_delta, histogram }
}

/// True iff the differential uniformity is exactly 2 (the minimum possible
/// in characteristic 2). Short-circuits on the first delta above 2.
pub fn is_apn(f: &ValueTable) -> bool {
    let size = f.len();
    !(1..size as u32)
        .into_par_iter()
        .map_init(
            || vec![0u32; size],
            |counts, a| {
                counts.fill(0);
                for x in 0..size as u32 {
                    let b = (f.get(x ^ a) ^ f.get(x)) as usize;
                    counts[b] += 1;
                    if counts[b] > 2 {
                        return true;
                    }
                }
                false
            },
        )
        .any(|exceeded| exceeded)
}

/// Exact multiplicity census of the image.
pub fn image_profile(f: &ValueTable) -> ImageProfile {
    let mut counts = vec![0u32; f.len()];
    for &v in f.as_slice() {
        counts[v as usize] += 1;
    }
    let mut image = Vec::new();
    let mut multiplicities = BTreeMap::new();
    for (v, &c) in counts.iter().enumerate() {
        if c > 0 {
            image.push(v as FieldElem);
            multiplicities.insert(v as FieldElem, c);
        }
    }
    let first = multiplicities.values().next().copied();
    let uniform_k = match first {
        Some(k) if multiplicities.values().all(|&c| c == k) => Some(k),
        _ => None,
    };
    ImageProfile {
        image,
        multiplicities,
        uniform_k,
    }
}

/// True iff every image value has exactly two preimages.
pub fn is_two_to_one(f: &ValueTable) -> bool {
    image_profile(f).uniform_k == Some(2)
}
