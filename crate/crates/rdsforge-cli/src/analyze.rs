//! The `analyze` command: build one function, run the requested verdict
//! pipelines, and report as JSON or a human-readable table.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Args;
use serde::Serialize;

use rdsforge::bent::{bent_from_image, bilinear_rank, is_bent};
use rdsforge::diff::{diff_spectrum, image_profile};
use rdsforge::field::FieldElem;
use rdsforge::function::build_family;
use rdsforge::rds::detect_forbidden;
use rdsforge::sweep::SCHEMA_VERSION;
use rdsforge::{CheckKind, DiffSpectrum, FamilyKind, FieldSpec, RdsReport, ValueTable};

use crate::{with_thread_pool, CliError};

#[derive(Args)]
pub struct AnalyzeArgs {
    /// Field degree n; the field is GF(2^n) with the smallest irreducible
    /// modulus
    #[arg(long)]
    n: Option<u32>,
    /// Function family (paper-linear, paper-cubic, kgamma, special, x3x4,
    /// gold, kasami, welch, power)
    #[arg(long)]
    family: Option<String>,
    /// Family parameter `a` (decimal or 0x-prefixed hex bitmask)
    #[arg(long)]
    a: Option<String>,
    /// Family parameter `alpha`
    #[arg(long)]
    alpha: Option<String>,
    /// Family parameter `beta`
    #[arg(long)]
    beta: Option<String>,
    /// Family parameter `gamma`
    #[arg(long)]
    gamma: Option<String>,
    /// Exponent for the power family
    #[arg(long)]
    d: Option<String>,
    /// Index for the gold/kasami families
    #[arg(long)]
    i: Option<u32>,
    /// Load a custom function from a JSON value-table file instead
    #[arg(long, conflicts_with_all = ["family", "n"])]
    table: Option<PathBuf>,
    /// Comma-separated checks: two-to-one, apn, rds, bent
    #[arg(long, default_value = "two-to-one,apn,rds")]
    checks: String,
    /// Print the report as JSON instead of the human-readable table
    #[arg(long)]
    json: bool,
    /// Also write the JSON report to this path
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for the differential pass (default: RDSFORGE_THREADS
    /// or 1)
    #[arg(long)]
    jobs: Option<usize>,
    /// Confirm full APN passes on fields larger than 2^16
    #[arg(long)]
    allow_large: bool,
}

#[derive(Serialize)]
struct FunctionDesc {
    family: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    params: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    source: Option<String>,
}

#[derive(Serialize)]
struct FieldDesc {
    n: u32,
    poly: u32,
}

#[derive(Serialize)]
struct ImageSummary {
    size: usize,
    uniform_k: Option<u32>,
}

#[derive(Serialize)]
struct BentSummary {
    is_bent: bool,
    bilinear_rank: Option<u32>,
    epsilon: Option<u8>,
    /// Nonzero element of the forbidden-direction pair the graph was read
    /// against.
    direction: Option<FieldElem>,
}

#[derive(Serialize)]
struct AnalysisReport {
    schema_version: u32,
    function: FunctionDesc,
    field: FieldDesc,
    verdicts: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    diff_spectrum: Option<DiffSpectrum>,
    #[serde(skip_serializing_if = "Option::is_none")]
    image: Option<ImageSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rds: Option<RdsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bent: Option<BentSummary>,
}

fn parse_u64(name: &str, text: &str) -> Result<u64, CliError> {
    let parsed = if let Some(hex) = text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
        u64::from_str_radix(hex, 16)
    } else {
        text.parse::<u64>()
    };
    parsed.map_err(|_| CliError::usage(format!("--{name}: cannot parse '{text}' as an integer")))
}

fn parse_checks(text: &str) -> Result<Vec<CheckKind>, CliError> {
    let mut checks = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        checks.push(part.parse::<CheckKind>().map_err(|e| CliError::usage(e.to_string()))?);
    }
    if checks.is_empty() {
        return Err(CliError::usage("--checks lists no checks"));
    }
    checks.sort_unstable();
    checks.dedup();
    Ok(checks)
}

fn build_function(args: &AnalyzeArgs) -> Result<(ValueTable, FunctionDesc), CliError> {
    if let Some(path) = &args.table {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
        let table: ValueTable = serde_json::from_str(&text)
            .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
        let desc = FunctionDesc {
            family: "custom".into(),
            params: BTreeMap::new(),
            source: Some(path.display().to_string()),
        };
        return Ok((table, desc));
    }
    let family = args
        .family
        .as_deref()
        .ok_or_else(|| CliError::usage("either --family with --n or --table is required"))?;
    let kind: FamilyKind = family.parse().map_err(|e: rdsforge::Error| CliError::usage(e.to_string()))?;
    let n = args
        .n
        .ok_or_else(|| CliError::usage("--n is required with --family"))?;
    let spec = FieldSpec::make_field(n)?;
    let mut params = BTreeMap::new();
    for (name, value) in [
        ("a", &args.a),
        ("alpha", &args.alpha),
        ("beta", &args.beta),
        ("gamma", &args.gamma),
        ("d", &args.d),
    ] {
        if let Some(text) = value {
            params.insert(name.to_string(), parse_u64(name, text)?);
        }
    }
    if let Some(i) = args.i {
        params.insert("i".to_string(), i as u64);
    }
    let table = build_family(spec, kind, &params)?;
    Ok((
        table,
        FunctionDesc { family: kind.id().to_string(), params, source: None },
    ))
}

pub fn run(args: AnalyzeArgs) -> Result<ExitCode, CliError> {
    let checks = parse_checks(&args.checks)?;
    let (table, desc) = build_function(&args)?;
    let spec = table.spec();
    if checks.contains(&CheckKind::Apn) && spec.n() > 16 && !args.allow_large {
        return Err(CliError::usage(
            "full APN checks above n = 16 cost 2^(2n) work; pass --allow-large to confirm",
        ));
    }
    let report = with_thread_pool(args.jobs, 1, || build_report(&table, desc, &checks))??;
    let json = serde_json::to_string_pretty(&report)
        .map_err(|e| CliError::runtime(e.to_string()))?;
    if let Some(path) = &args.out {
        std::fs::write(path, format!("{json}\n"))
            .map_err(|e| CliError::runtime(format!("{}: {e}", path.display())))?;
    }
    if args.json {
        println!("{json}");
    } else {
        print_human(&report);
    }
    Ok(ExitCode::SUCCESS)
}

fn build_report(
    table: &ValueTable,
    desc: FunctionDesc,
    checks: &[CheckKind],
) -> Result<AnalysisReport, CliError> {
    let spec = table.spec();
    let mut report = AnalysisReport {
        schema_version: SCHEMA_VERSION,
        function: desc,
        field: FieldDesc { n: spec.n(), poly: spec.poly() },
        verdicts: BTreeMap::new(),
        diff_spectrum: None,
        image: None,
        rds: None,
        bent: None,
    };
    for &check in checks {
        let verdict = match check {
            CheckKind::TwoToOne => {
                let profile = image_profile(table);
                let verdict = profile.uniform_k == Some(2);
                report.image = Some(ImageSummary {
                    size: profile.image.len(),
                    uniform_k: profile.uniform_k,
                });
                verdict
            }
            CheckKind::Apn => {
                let spectrum = diff_spectrum(table);
                let verdict = spectrum.max_delta == 2;
                report.diff_spectrum = Some(spectrum);
                verdict
            }
            CheckKind::Rds => {
                let rds = detect_forbidden(&image_profile(table).image, spec.n())?;
                let verdict = rds.verdict;
                report.rds = Some(rds);
                verdict
            }
            CheckKind::Bent => {
                let summary = match bent_from_image(spec, &image_profile(table).image)? {
                    Some(graph) => {
                        if !graph.table.m().is_multiple_of(2) {
                            eprintln!(
                                "note: bent functions need an even variable count, got m = {}",
                                graph.table.m()
                            );
                        }
                        BentSummary {
                            is_bent: is_bent(&graph.table),
                            bilinear_rank: bilinear_rank(&graph.table).ok(),
                            epsilon: Some(graph.table.get(0)),
                            direction: Some(graph.direction),
                        }
                    }
                    None => BentSummary {
                        is_bent: false,
                        bilinear_rank: None,
                        epsilon: None,
                        direction: None,
                    },
                };
                let verdict = summary.is_bent;
                report.bent = Some(summary);
                verdict
            }
        };
        report.verdicts.insert(check.id().to_string(), verdict);
    }
    Ok(report)
}

fn print_human(report: &AnalysisReport) {
    let f = &report.function;
    let params = f
        .params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(", ");
    let source = f.source.as_deref().unwrap_or("");
    println!("function:  {} {params}{source}", f.family);
    println!(
        "field:     GF(2^{}), modulus 0x{:x}",
        report.field.n, report.field.poly
    );
    for (name, verdict) in &report.verdicts {
        println!("{name:<11}{verdict}");
    }
    if let Some(s) = &report.diff_spectrum {
        println!("max delta: {}", s.max_delta);
    }
    if let Some(img) = &report.image {
        match img.uniform_k {
            Some(k) => println!("image:     {} values, uniformly {k}-to-1", img.size),
            None => println!("image:     {} values, non-uniform multiplicities", img.size),
        }
    }
    if let Some(rds) = &report.rds {
        match (&rds.params, &rds.counterexample) {
            (Some(p), _) => println!(
                "rds:       ({}, {}, {}, {}) relative to {:?}",
                p.m, p.n, p.k, p.lambda, rds.forbidden
            ),
            (None, Some(c)) => println!(
                "rds:       fails at element {} (observed {}, expected {})",
                c.element, c.observed, c.expected
            ),
            (None, None) => {}
        }
    }
    if let Some(b) = &report.bent {
        let rank = b
            .bilinear_rank
            .map(|r| r.to_string())
            .unwrap_or_else(|| "-".into());
        let eps = b.epsilon.map(|e| e.to_string()).unwrap_or_else(|| "-".into());
        println!("bent:      {} (rank {rank}, epsilon {eps})", b.is_bent);
    }
}
