//! Built-in verification suite: re-derives, by exhaustive computation, every
//! structural statement the function families are built on, over all degrees
//! up to a caller-chosen cap. Backs the `verify-paper` CLI command.

use serde::Serialize;

use crate::bent::{
    bent_from_apn, bilinear_rank, derivative_balance, eval_quadratic, graph_rds_check, is_bent,
    quad_coeffs, QuadraticForm,
};
use crate::diff::{diff_spectrum, image_profile, is_apn, is_two_to_one};
use crate::equiv::{cyclotomic_equivalent, ea_apply, random_affine_function, random_affine_witness, AffineWitness};
use crate::error::{Error, Result};
use crate::field::{exponent_inverse, FieldElem, FieldSpec};
use crate::function::{
    compose, family_kgamma, family_paper_cubic, family_paper_linear, family_special, family_x3x4,
    linearized_image, named_exponent, power_map, MonomialKind, ValueTable,
};
use crate::rds::{check_rds, detect_forbidden, RdsParams};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Fixed seeds so every run checks the same sampled instances.
const ELEMENT_SEED: u64 = 7;
const WITNESS_SEED: u64 = 23;
const QUADRATIC_SEED: u64 = 101;

/// Degrees with more elements than this get a 32-element sample instead of
/// the full nonzero range.
const EXHAUSTIVE_ELEMENT_CAP: u32 = 9;
const ELEMENT_SAMPLES: usize = 32;
const KGAMMA_SAMPLES: usize = 512;

/// Observed relative-difference-set verdicts for the image of x^3 + x^4 per
/// degree. n = 3 coincides with the k = 2 member of the x^(2^k-1) + x^(2^k)
/// family and must hold; the larger degrees are regression values captured
/// from the brute-force difference census.
pub const X3X4_RDS_VERDICTS: [(u32, bool); 5] =
    [(3, true), (5, false), (7, false), (9, false), (11, false)];

/// Outcome of one theorem instance.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub name: &'static str,
    pub scope: String,
    pub instances: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl TheoremReport {
    fn new(name: &'static str, scope: String, instances: usize, failure: Option<String>) -> Self {
        TheoremReport {
            name,
            scope,
            instances,
            passed: failure.is_none(),
            detail: failure,
        }
    }
}

/// Runs the whole suite for every odd degree up to `n_max` (3..=13).
pub fn verify_paper(n_max: u32) -> Result<Vec<TheoremReport>> {
    if !(3..=13).contains(&n_max) {
        return Err(Error::BadVerifyRange(n_max));
    }
    let mut out = Vec::new();
    for n in odd_range(3, n_max) {
        out.push(linear_family_theorem(n)?);
        out.push(cubic_family_theorem(n)?);
    }
    for n in odd_range(3, n_max.min(7)) {
        out.push(kgamma_theorem(n)?);
    }
    for k in 2..=7u32 {
        if 2 * k - 1 <= n_max {
            out.push(special_family_theorem(k)?);
            out.push(special_trace_criterion(k)?);
        }
    }
    out.push(x3x4_survey(n_max)?);
    for n in odd_range(3, n_max) {
        out.push(monomial_spot_checks(n)?);
    }
    for n in odd_range(5, n_max) {
        out.push(bent_pipeline(n)?);
    }
    out.push(pott_cross_oracle());
    out.push(cyclotomic_theorem(n_max));
    for n in [5u32, 7] {
        if n <= n_max {
            out.push(ea_uniformity(n)?);
        }
    }
    Ok(out)
}

fn odd_range(from: u32, to: u32) -> impl Iterator<Item = u32> {
    (from..=to).filter(|n| n % 2 == 1)
}

/// All nonzero elements for small fields, otherwise a fixed-seed sample.
fn element_grid(spec: FieldSpec) -> Vec<FieldElem> {
    if spec.n() <= EXHAUSTIVE_ELEMENT_CAP {
        (1..spec.size() as u32).collect()
    } else {
        sample_nonzero(spec, ELEMENT_SAMPLES, ELEMENT_SEED)
    }
}

fn sample_nonzero(spec: FieldSpec, count: usize, seed: u64) -> Vec<FieldElem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((spec.n() as u64) << 32));
    let mut chosen = std::collections::BTreeSet::new();
    while chosen.len() < count {
        chosen.insert(rng.gen_range(1..spec.size() as u32));
    }
    chosen.into_iter().collect()
}

fn expected_half_params(n: u32) -> RdsParams {
    RdsParams {
        m: 1 << (n - 1),
        n: 2,
        k: 1 << (n - 1),
        lambda: 1 << (n - 2),
    }
}

fn subgroup(c: FieldElem) -> Vec<FieldElem> {
    let mut v = vec![0, c];
    v.sort_unstable();
    v
}

fn linear_family_theorem(n: u32) -> Result<TheoremReport> {
    let spec = FieldSpec::make_field(n)?;
    let grid = element_grid(spec);
    let mut failure = None;
    for &a in &grid {
        let f = family_paper_linear(spec, a)?;
        if !is_two_to_one(&f) {
            failure = Some(format!("a={a}: not 2-to-1"));
            break;
        }
        let image = image_profile(&f).image;
        let report = check_rds(&image, &subgroup(spec.inv(a)?), n)?;
        if !report.verdict || report.params != Some(expected_half_params(n)) {
            failure = Some(format!("a={a}: image is not the expected difference set"));
            break;
        }
    }
    Ok(TheoremReport::new(
        "paper-linear: 2-to-1, image is an RDS relative to {0, 1/a}",
        format!("n={n}"),
        grid.len(),
        failure,
    ))
}

fn cubic_family_theorem(n: u32) -> Result<TheoremReport> {
    let spec = FieldSpec::make_field(n)?;
    let grid = element_grid(spec);
    let cube = power_map(spec, 3);
    let mut failure = None;
    for &a in &grid {
        let f = family_paper_cubic(spec, a)?;
        if f != compose(&family_paper_linear(spec, a)?, &cube)? {
            failure = Some(format!("a={a}: does not factor through x^3"));
            break;
        }
        if !is_apn(&f) || !is_two_to_one(&f) {
            failure = Some(format!("a={a}: not a 2-to-1 APN map"));
            break;
        }
        let image = image_profile(&f).image;
        let report = check_rds(&image, &subgroup(spec.inv(a)?), n)?;
        if !report.verdict || report.params != Some(expected_half_params(n)) {
            failure = Some(format!("a={a}: image is not the expected difference set"));
            break;
        }
    }
    Ok(TheoremReport::new(
        "paper-cubic: APN, 2-to-1, same RDS, factors through x^3",
        format!("n={n}"),
        grid.len(),
        failure,
    ))
}

/// Valid (alpha, beta, gamma) triples: all of them for n <= 5, a fixed-seed
/// sample at n = 7.
fn kgamma_grid(spec: FieldSpec) -> Vec<(FieldElem, FieldElem, FieldElem)> {
    let order = spec.size() as u32 - 1;
    if spec.n() <= 5 {
        let mut triples = Vec::new();
        for alpha in 1..=order {
            let img = linearized_image(spec, alpha);
            for beta in 1..=order {
                if spec.trace(spec.mul(beta, alpha)) != 1 {
                    continue;
                }
                for gamma in 1..=order {
                    if img.binary_search(&gamma).is_err() {
                        triples.push((alpha, beta, gamma));
                    }
                }
            }
        }
        triples
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(ELEMENT_SEED ^ ((spec.n() as u64) << 32));
        let mut triples = std::collections::BTreeSet::new();
        while triples.len() < KGAMMA_SAMPLES {
            let alpha = rng.gen_range(1..=order);
            let beta = rng.gen_range(1..=order);
            let gamma = rng.gen_range(1..=order);
            if spec.trace(spec.mul(beta, alpha)) != 1 {
                continue;
            }
            if linearized_image(spec, alpha).binary_search(&gamma).is_err() {
                triples.insert((alpha, beta, gamma));
            }
        }
        triples.into_iter().collect()
    }
}

fn kgamma_theorem(n: u32) -> Result<TheoremReport> {
    let spec = FieldSpec::make_field(n)?;
    let grid = kgamma_grid(spec);
    let mut failure = None;
    for &(alpha, beta, gamma) in &grid {
        let k = family_kgamma(spec, alpha, beta, gamma)?;
        // factorization k = l o h with l(x) = x^2 + alpha x + gamma Tr(beta x)
        let l = ValueTable::from_fn(spec, |x| {
            let base = spec.sq(x) ^ spec.mul(alpha, x);
            if spec.trace(spec.mul(beta, x)) == 1 {
                base ^ gamma
            } else {
                base
            }
        });
        let h = family_paper_cubic(spec, spec.inv(alpha)?)?;
        if k != compose(&l, &h)? {
            failure = Some(format!("({alpha},{beta},{gamma}): factorization fails"));
            break;
        }
        if !is_apn(&k) || !is_two_to_one(&k) {
            failure = Some(format!("({alpha},{beta},{gamma}): not a 2-to-1 APN map"));
            break;
        }
        let report = check_rds(&image_profile(&k).image, &subgroup(gamma), n)?;
        if !report.verdict || report.params != Some(expected_half_params(n)) {
            failure = Some(format!("({alpha},{beta},{gamma}): image RDS check fails"));
            break;
        }
    }
    Ok(TheoremReport::new(
        "kgamma: APN, 2-to-1, RDS relative to {0, gamma}, l o h identity",
        format!("n={n}"),
        grid.len(),
        failure,
    ))
}

fn special_family_theorem(k: u32) -> Result<TheoremReport> {
    let n = 2 * k - 1;
    let spec = FieldSpec::make_field(n)?;
    let f = family_special(spec)?;
    let expected = RdsParams {
        m: 1 << (2 * k - 2),
        n: 2,
        k: 1 << (2 * k - 2),
        lambda: 1 << (2 * k - 3),
    };
    let mut failure = None;
    if !is_two_to_one(&f) || !is_apn(&f) {
        failure = Some("not a 2-to-1 APN map".into());
    } else {
        let report = check_rds(&image_profile(&f).image, &[0, 1], n)?;
        if !report.verdict || report.params != Some(expected) {
            failure = Some("image is not the expected RDS relative to {0, 1}".into());
        }
    }
    Ok(TheoremReport::new(
        "x^(2^k-1) + x^(2^k): 2-to-1 APN, image RDS relative to {0, 1}",
        format!("k={k}, n={n}"),
        1,
        failure,
    ))
}

fn special_trace_criterion(k: u32) -> Result<TheoremReport> {
    let n = 2 * k - 1;
    let spec = FieldSpec::make_field(n)?;
    let f = family_special(spec)?;
    let mut failure = None;
    // 1/(2^k - 1) = 2^k + 1 modulo 2^(2k-1) - 1
    let inv = exponent_inverse((1 << k) - 1, spec.order())?;
    if inv != (1 << k) + 1 {
        failure = Some(format!("exponent inverse came out as {inv}"));
    } else {
        let image = image_profile(&f).image;
        let trace_zero: Vec<FieldElem> = (0..spec.size() as u32)
            .filter(|&a| spec.trace(spec.pow(a, (1 << k) + 1)) == 0)
            .collect();
        if image != trace_zero {
            failure = Some("image differs from the trace-zero criterion set".into());
        }
    }
    Ok(TheoremReport::new(
        "image of x^(2^k-1) + x^(2^k) equals {a : Tr(a^(2^k+1)) = 0}",
        format!("k={k}, n={n}"),
        1,
        failure,
    ))
}

fn x3x4_survey(n_max: u32) -> Result<TheoremReport> {
    let mut instances = 0;
    let mut failure = None;
    for &(n, expected) in X3X4_RDS_VERDICTS.iter() {
        if n > n_max {
            break;
        }
        let spec = FieldSpec::make_field(n)?;
        let f = family_x3x4(spec)?;
        let report = detect_forbidden(&image_profile(&f).image, n)?;
        instances += 1;
        if report.verdict != expected {
            failure = Some(format!(
                "n={n}: verdict {} (recorded {expected})",
                report.verdict
            ));
            break;
        }
    }
    Ok(TheoremReport::new(
        "x^3 + x^4: 2-to-1 APN whose image is an RDS only for some degrees",
        format!("n in 3..={}", n_max.min(11)),
        instances,
        failure,
    ))
}

fn monomial_spot_checks(n: u32) -> Result<TheoremReport> {
    let spec = FieldSpec::make_field(n)?;
    let mut exponents = Vec::new();
    for i in 1..=(n - 1) / 2 {
        if let Ok(d) = named_exponent(MonomialKind::Gold, n, i) {
            exponents.push(("gold", i, d));
        }
        if let Ok(d) = named_exponent(MonomialKind::Kasami, n, i) {
            exponents.push(("kasami", i, d));
        }
    }
    exponents.push(("welch", 0, named_exponent(MonomialKind::Welch, n, 0)?));
    let mut failure = None;
    for &(name, i, d) in &exponents {
        let f = power_map(spec, d);
        let spectrum = diff_spectrum(&f);
        if spectrum.max_delta != 2 {
            failure = Some(format!(
                "{name} i={i} (d={d}): uniformity {}",
                spectrum.max_delta
            ));
            break;
        }
    }
    Ok(TheoremReport::new(
        "gold/kasami/welch monomials are APN",
        format!("n={n}"),
        exponents.len(),
        failure,
    ))
}

fn bent_pipeline(n: u32) -> Result<TheoremReport> {
    let spec = FieldSpec::make_field(n)?;
    let grid = if spec.n() <= 5 {
        (1..spec.size() as u32).collect()
    } else {
        sample_nonzero(spec, 8, ELEMENT_SEED)
    };
    let mut failure = None;
    for &a in &grid {
        let f = bent_from_apn(spec, a)?;
        if !is_bent(&f) {
            failure = Some(format!("a={a}: spectrum is not flat"));
            break;
        }
        if eval_quadratic(&quad_coeffs(spec, a)?) != f {
            failure = Some(format!("a={a}: quadratic form does not reproduce the table"));
            break;
        }
        match bilinear_rank(&f) {
            Ok(rank) if rank == n - 1 => {}
            Ok(rank) => {
                failure = Some(format!("a={a}: rank {rank} != {}", n - 1));
                break;
            }
            Err(e) => {
                failure = Some(format!("a={a}: {e}"));
                break;
            }
        }
    }
    Ok(TheoremReport::new(
        "extracted Boolean function is quadratic bent of full rank",
        format!("n={n}"),
        grid.len(),
        failure,
    ))
}

fn pott_cross_oracle() -> TheoremReport {
    let mut rng = ChaCha8Rng::seed_from_u64(QUADRATIC_SEED);
    let mut instances = 0;
    let mut failure = None;
    'outer: for m in [2u32, 4, 6] {
        for _ in 0..50 {
            let coeffs: Vec<u8> = (0..m * m).map(|_| rng.gen_range(0..2) as u8).collect();
            let q = QuadraticForm::new(m, coeffs).expect("square bit matrix");
            let f = eval_quadratic(&q);
            instances += 1;
            let bent = is_bent(&f);
            let balanced = derivative_balance(&f);
            let graph = graph_rds_check(&f);
            if bent != balanced || bent != graph.verdict {
                failure = Some(format!("m={m}: oracles disagree"));
                break 'outer;
            }
            if bent {
                let p = graph.params.unwrap();
                let want = RdsParams {
                    m: 1 << m,
                    n: 2,
                    k: 1 << m,
                    lambda: 1 << (m - 1),
                };
                if p != want {
                    failure = Some(format!("m={m}: graph parameters {p:?}"));
                    break 'outer;
                }
            }
        }
    }
    TheoremReport::new(
        "flat spectrum, derivative balance, and graph RDS agree on quadratics",
        "m in {2, 4, 6}".into(),
        instances,
        failure,
    )
}

fn cyclotomic_theorem(n_max: u32) -> TheoremReport {
    let mut instances = 0;
    let mut failure = None;
    for k in 2..=7u32 {
        let n = 2 * k - 1;
        if n > n_max {
            break;
        }
        instances += 1;
        match cyclotomic_equivalent((1 << k) - 1, (1 << k) + 1, n) {
            Ok(true) => {}
            other => {
                failure = Some(format!("k={k}: got {other:?}"));
                break;
            }
        }
    }
    TheoremReport::new(
        "x^(2^k-1) is cyclotomically equivalent to the Gold map x^(2^k+1)",
        format!("k with 2k-1 <= {n_max}"),
        instances,
        failure,
    )
}

fn ea_uniformity(n: u32) -> Result<TheoremReport> {
    let spec = FieldSpec::make_field(n)?;
    let f = power_map(spec, named_exponent(MonomialKind::Gold, n, 1)?);
    let base = diff_spectrum(&f).max_delta;
    let mut rng = ChaCha8Rng::seed_from_u64(WITNESS_SEED ^ ((n as u64) << 32));
    let mut failure = None;
    let count = 100;
    for idx in 0..count {
        let a = random_affine_witness(spec, &mut rng);
        let b = random_affine_witness(spec, &mut rng);
        let c = random_affine_function(spec, &mut rng);
        let g = ea_apply(&f, &a, &b, &c)?;
        if diff_spectrum(&g).max_delta != base {
            failure = Some(format!("witness {idx}: uniformity changed"));
            break;
        }
    }
    // a linear post-composition maps the image like the witness does
    let a = AffineWitness::new(
        random_affine_witness(spec, &mut rng).linear().clone(),
        0,
    )?;
    let id = AffineWitness::identity(spec);
    let zero = ValueTable::from_fn(spec, |_| 0);
    let g = ea_apply(&f, &a, &id, &zero)?;
    let mut mapped: Vec<FieldElem> = image_profile(&f).image.iter().map(|&v| a.apply(v)).collect();
    mapped.sort_unstable();
    if failure.is_none() && image_profile(&g).image != mapped {
        failure = Some("image did not transform covariantly".into());
    }
    Ok(TheoremReport::new(
        "extended-affine transforms preserve differential uniformity",
        format!("n={n}"),
        count + 1,
        failure,
    ))
}
