//! Parameter-grid sweep harness: enumerate family instances over a grid of
//! field degrees, run the requested verdict pipelines, and persist results
//! as JSONL, resumably.
//!
//! Grid points are independent work units scheduled across the installed
//! rayon pool. Records are appended to the output file as they complete and
//! the file is rewritten in canonical (n, parameters) order at the end, so
//! the finalized bytes never depend on the thread count. Wall-clock timings
//! stay in memory only for the same reason.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bent::{bent_from_image, is_bent};
use crate::diff::{image_profile, is_apn};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::function::{build_family, linearized_image, FamilyKind};
use crate::rds::{detect_forbidden, RdsParams};

/// Version stamp carried by every persisted record.
pub const SCHEMA_VERSION: u32 = 1;

/// Parameter spaces up to this size are enumerated exhaustively; larger ones
/// require a seeded sample.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 12;

/// The verdict pipelines a sweep can run per grid point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    TwoToOne,
    Apn,
    Rds,
    Bent,
}

impl CheckKind {
    pub const ALL: [CheckKind; 4] = [
        CheckKind::TwoToOne,
        CheckKind::Apn,
        CheckKind::Rds,
        CheckKind::Bent,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            CheckKind::TwoToOne => "two_to_one",
            CheckKind::Apn => "apn",
            CheckKind::Rds => "rds",
            CheckKind::Bent => "bent",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<CheckKind> {
        match s {
            "two_to_one" | "two-to-one" => Ok(CheckKind::TwoToOne),
            "apn" => Ok(CheckKind::Apn),
            "rds" => Ok(CheckKind::Rds),
            "bent" => Ok(CheckKind::Bent),
            other => Err(Error::InvalidJob(format!("unknown check '{other}'"))),
        }
    }
}

/// Seeded sampling policy for parameter spaces above [`EXHAUSTIVE_LIMIT`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sampling {
    pub seed: u64,
    pub count: usize,
}

/// A sweep job: one family, a list of field degrees, the checks to run, and
/// where to persist records.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepJob {
    pub family: FamilyKind,
    pub n_values: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampling: Option<Sampling>,
    /// Exponent list for the `power` family; ignored elsewhere.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub d_values: Vec<u64>,
    pub checks: Vec<CheckKind>,
    pub output: PathBuf,
}

/// One grid point's verdicts, persisted as a single JSONL line. `elapsed`
/// is in-memory only: the canonical file must be byte-identical across
/// runs and thread counts. Equality compares the persisted identity and
/// ignores `elapsed`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepRecord {
    pub schema_version: u32,
    pub family: FamilyKind,
    pub n: u32,
    pub poly: u32,
    pub params: BTreeMap<String, u64>,
    pub verdicts: BTreeMap<String, bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rds_params: Option<RdsParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forbidden: Option<Vec<u32>>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PartialEq for SweepRecord {
    fn eq(&self, other: &Self) -> bool {
        self.schema_version == other.schema_version
            && self.family == other.family
            && self.n == other.n
            && self.poly == other.poly
            && self.params == other.params
            && self.verdicts == other.verdicts
            && self.rds_params == other.rds_params
            && self.forbidden == other.forbidden
    }
}

impl Eq for SweepRecord {}

type GridKey = (u32, BTreeMap<String, u64>);

struct GridPoint {
    spec: FieldSpec,
    params: BTreeMap<String, u64>,
}

impl SweepJob {
    /// Reads and syntactically validates a job file.
    pub fn from_file(path: &Path) -> Result<SweepJob> {
        let text = std::fs::read_to_string(path)?;
        let job: SweepJob = serde_json::from_str(&text)?;
        Ok(job)
    }

    fn checks_sorted(&self) -> Vec<CheckKind> {
        let set: BTreeSet<CheckKind> = self.checks.iter().copied().collect();
        set.into_iter().collect()
    }

    /// Expands the job into concrete grid points, validating every
    /// precondition up front so no invalid instance ever becomes a record.
    fn grid(&self) -> Result<Vec<GridPoint>> {
        if self.checks.is_empty() {
            return Err(Error::InvalidJob("no checks requested".into()));
        }
        let odd_only = matches!(
            self.family,
            FamilyKind::PaperLinear
                | FamilyKind::PaperCubic
                | FamilyKind::Kgamma
                | FamilyKind::Special
                | FamilyKind::X3x4
                | FamilyKind::Welch
        );
        let mut n_values: Vec<u32> = self.n_values.clone();
        n_values.sort_unstable();
        n_values.dedup();
        let mut points = Vec::new();
        for n in n_values {
            let spec =
                FieldSpec::make_field(n).map_err(|e| Error::InvalidJob(e.to_string()))?;
            if odd_only && n % 2 == 0 {
                return Err(Error::InvalidJob(format!(
                    "family {} requires odd n, got {n}",
                    self.family
                )));
            }
            points.extend(self.points_for(spec)?);
        }
        Ok(points)
    }

    fn points_for(&self, spec: FieldSpec) -> Result<Vec<GridPoint>> {
        let single = |params: BTreeMap<String, u64>| GridPoint { spec, params };
        let order = spec.order();
        match self.family {
            FamilyKind::PaperLinear | FamilyKind::PaperCubic => {
                let values = self.element_range(spec, order)?;
                Ok(values
                    .into_iter()
                    .map(|a| single(BTreeMap::from([("a".into(), a)])))
                    .collect())
            }
            FamilyKind::Kgamma => self.kgamma_points(spec),
            FamilyKind::Special | FamilyKind::X3x4 | FamilyKind::Welch => {
                Ok(vec![single(BTreeMap::new())])
            }
            FamilyKind::Gold | FamilyKind::Kasami => {
                let n = spec.n();
                let valid: Vec<u64> = (1..=(n - 1) / 2)
                    .filter(|&i| gcd(i as u64, n as u64) == 1)
                    .map(|i| i as u64)
                    .collect();
                if valid.is_empty() {
                    return Err(Error::InvalidJob(format!(
                        "family {} has no valid index at n={n}",
                        self.family
                    )));
                }
                Ok(valid
                    .into_iter()
                    .map(|i| single(BTreeMap::from([("i".into(), i)])))
                    .collect())
            }
            FamilyKind::Power => {
                if self.d_values.is_empty() {
                    return Err(Error::InvalidJob(
                        "power family requires a d_values list".into(),
                    ));
                }
                let mut ds = self.d_values.clone();
                ds.sort_unstable();
                ds.dedup();
                Ok(ds
                    .into_iter()
                    .map(|d| single(BTreeMap::from([("d".into(), d)])))
                    .collect())
            }
        }
    }

    /// All nonzero elements when the space is small enough, otherwise a
    /// seeded sample of distinct values.
    fn element_range(&self, spec: FieldSpec, space: u64) -> Result<Vec<u64>> {
        if space <= EXHAUSTIVE_LIMIT {
            return Ok((1..=space).collect());
        }
        let sampling = self.require_sampling(space)?;
        let mut rng = seeded_rng(sampling.seed, spec.n());
        let mut chosen = BTreeSet::new();
        while chosen.len() < sampling.count.min(space as usize) {
            chosen.insert(rng.gen_range(1..=space));
        }
        Ok(chosen.into_iter().collect())
    }

    fn kgamma_points(&self, spec: FieldSpec) -> Result<Vec<GridPoint>> {
        let order = spec.order();
        let space = order * order * order;
        let mut triples = BTreeSet::new();
        if space <= EXHAUSTIVE_LIMIT {
            for alpha in 1..=order {
                let img = linearized_image(spec, alpha as u32);
                for beta in 1..=order {
                    if spec.trace(spec.mul(beta as u32, alpha as u32)) != 1 {
                        continue;
                    }
                    for gamma in 1..=order {
                        if img.binary_search(&(gamma as u32)).is_err() {
                            triples.insert((alpha, beta, gamma));
                        }
                    }
                }
            }
        } else {
            let sampling = self.require_sampling(space)?;
            let mut rng = seeded_rng(sampling.seed, spec.n());
            let mut images: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
            let mut attempts = 0u64;
            while triples.len() < sampling.count {
                attempts += 1;
                if attempts > 10_000 * sampling.count as u64 {
                    return Err(Error::InvalidJob(format!(
                        "could not draw {} valid kgamma instances at n={}",
                        sampling.count,
                        spec.n()
                    )));
                }
                let alpha = rng.gen_range(1..=order);
                let beta = rng.gen_range(1..=order);
                let gamma = rng.gen_range(1..=order);
                if spec.trace(spec.mul(beta as u32, alpha as u32)) != 1 {
                    continue;
                }
                let img = images
                    .entry(alpha)
                    .or_insert_with(|| linearized_image(spec, alpha as u32));
                if img.binary_search(&(gamma as u32)).is_err() {
                    triples.insert((alpha, beta, gamma));
                }
            }
        }
        Ok(triples
            .into_iter()
            .map(|(alpha, beta, gamma)| GridPoint {
                spec,
                params: BTreeMap::from([
                    ("alpha".into(), alpha),
                    ("beta".into(), beta),
                    ("gamma".into(), gamma),
                ]),
            })
            .collect())
    }

    fn require_sampling(&self, space: u64) -> Result<Sampling> {
        self.sampling.ok_or_else(|| {
            Error::InvalidJob(format!(
                "parameter space of size {space} exceeds the exhaustive limit \
                 {EXHAUSTIVE_LIMIT}; the job must provide a sampling seed and count"
            ))
        })
    }
}

fn seeded_rng(seed: u64, n: u32) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 32))
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Runs the verdict pipelines for one grid point.
fn analyze_point(job: &SweepJob, point: &GridPoint) -> Result<SweepRecord> {
    let spec = point.spec;
    let table = build_family(spec, job.family, &point.params)?;
    let mut verdicts = BTreeMap::new();
    let mut rds_params = None;
    let mut forbidden = None;
    for check in job.checks_sorted() {
        let verdict = match check {
            CheckKind::TwoToOne => image_profile(&table).uniform_k == Some(2),
            CheckKind::Apn => is_apn(&table),
            CheckKind::Rds => {
                let report = detect_forbidden(&image_profile(&table).image, spec.n())?;
                if report.verdict {
                    rds_params = report.params;
                    forbidden = Some(report.forbidden.clone());
                }
                report.verdict
            }
            CheckKind::Bent => match bent_from_image(spec, &image_profile(&table).image)? {
                Some(graph) => is_bent(&graph.table),
                None => false,
            },
        };
        verdicts.insert(check.id().to_string(), verdict);
    }
    Ok(SweepRecord {
        schema_version: SCHEMA_VERSION,
        family: job.family,
        n: spec.n(),
        poly: spec.poly(),
        params: point.params.clone(),
        verdicts,
        rds_params,
        forbidden,
        elapsed: Duration::ZERO,
    })
}

fn record_key(rec: &SweepRecord) -> GridKey {
    (rec.n, rec.params.clone())
}

fn canonical_sort(records: &mut [SweepRecord]) {
    records.sort_by(|a, b| (a.n, &a.params).cmp(&(b.n, &b.params)));
}

/// Computes `work`, appending each record to `append_to` as it completes,
/// then rewrites the output file in canonical order from `all`.
fn compute_and_finalize<P: Fn(usize, usize) + Sync>(
    job: &SweepJob,
    work: Vec<GridPoint>,
    mut kept: Vec<SweepRecord>,
    append_to: File,
    progress: P,
) -> Result<Vec<SweepRecord>> {
    let total = work.len();
    let writer = Mutex::new(BufWriter::new(append_to));
    let done = Mutex::new(0usize);
    let computed: Result<Vec<SweepRecord>> = work
        .par_iter()
        .map(|point| {
            let started = Instant::now();
            let mut rec = analyze_point(job, point)?;
            rec.elapsed = started.elapsed();
            let line = serde_json::to_string(&rec)?;
            {
                let mut w = writer.lock().unwrap();
                writeln!(w, "{line}")?;
            }
            {
                let mut d = done.lock().unwrap();
                *d += 1;
                progress(*d, total);
            }
            Ok(rec)
        })
        .collect();
    writer.into_inner().unwrap().flush()?;
    let mut records = computed?;
    records.append(&mut kept);
    canonical_sort(&mut records);
    // atomic rewrite in canonical order
    let tmp = job.output.with_extension("jsonl.tmp");
    {
        let mut w = BufWriter::new(File::create(&tmp)?);
        for rec in &records {
            writeln!(w, "{}", serde_json::to_string(rec)?)?;
        }
        w.flush()?;
    }
    std::fs::rename(&tmp, &job.output)?;
    Ok(records)
}

/// Runs the whole grid from scratch, truncating the output file. Returns the
/// records in canonical order; `progress` receives (completed, total).
pub fn run_sweep<P: Fn(usize, usize) + Sync>(
    job: &SweepJob,
    progress: P,
) -> Result<Vec<SweepRecord>> {
    let grid = job.grid()?;
    let file = File::create(&job.output)?;
    compute_and_finalize(job, grid, Vec::new(), file, progress)
}

/// Resumes from an existing record file: records matching the job signature
/// and lying on the grid are kept, the rest of the grid is computed, and the
/// merged result is finalized exactly as a fresh run would be.
pub fn resume_sweep<P: Fn(usize, usize) + Sync>(
    job: &SweepJob,
    existing: &Path,
    progress: P,
) -> Result<Vec<SweepRecord>> {
    let grid = job.grid()?;
    let existing_records = read_records(job, existing)?;
    let mut by_key: BTreeMap<GridKey, SweepRecord> = BTreeMap::new();
    for rec in existing_records {
        by_key.entry(record_key(&rec)).or_insert(rec);
    }
    let mut kept = Vec::new();
    let mut missing = Vec::new();
    for point in grid {
        match by_key.remove(&(point.spec.n(), point.params.clone())) {
            Some(rec) => kept.push(rec),
            None => missing.push(point),
        }
    }
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(&job.output)?;
    compute_and_finalize(job, missing, kept, file, progress)
}

/// Parses a record file and validates its signature against the job:
/// schema version, family, and the requested check set must all match.
fn read_records(job: &SweepJob, path: &Path) -> Result<Vec<SweepRecord>> {
    let want_checks: BTreeSet<String> = job
        .checks_sorted()
        .iter()
        .map(|c| c.id().to_string())
        .collect();
    let reader = BufReader::new(File::open(path)?);
    let mut records = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: SweepRecord = serde_json::from_str(&line).map_err(|e| {
            Error::IncompatibleResume(format!("line {}: {e}", idx + 1))
        })?;
        if rec.schema_version != SCHEMA_VERSION {
            return Err(Error::IncompatibleResume(format!(
                "line {}: schema_version {} != {SCHEMA_VERSION}",
                idx + 1,
                rec.schema_version
            )));
        }
        if rec.family != job.family {
            return Err(Error::IncompatibleResume(format!(
                "line {}: family {} does not match job family {}",
                idx + 1,
                rec.family,
                job.family
            )));
        }
        let got_checks: BTreeSet<String> = rec.verdicts.keys().cloned().collect();
        if got_checks != want_checks {
            return Err(Error::IncompatibleResume(format!(
                "line {}: checks {:?} do not match job checks {:?}",
                idx + 1,
                got_checks,
                want_checks
            )));
        }
        if let Ok(spec) = FieldSpec::make_field(rec.n) {
            if spec.poly() != rec.poly {
                return Err(Error::IncompatibleResume(format!(
                    "line {}: polynomial 0x{:x} is not the canonical modulus for n={}",
                    idx + 1,
                    rec.poly,
                    rec.n
                )));
            }
        }
        records.push(rec);
    }
    Ok(records)
}
