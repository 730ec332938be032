use std::fs;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context};
use serde::Serialize;
use ucc_core::analytic::{self, CertifyParams};
use ucc_core::entropy::{CheckOptions, DEFAULT_TOLERANCE};
use ucc_core::generators::{self, ExampleMode, ExampleOutput, ExampleSpec};
use ucc_core::report::{ExampleReport, FamilyReport};
use ucc_core::{exec, parse_family, SetFamily, HALF_INV_PHI};

use crate::render::render;
use crate::{AnalyticOp, Cli, Command, Format};

const GRID_TOLERANCE: f64 = 1e-12;
const MINIMIZE_TOLERANCE: f64 = 1e-12;

pub fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    let g = &cli.global;
    if let Some(tol) = g.tol {
        if !(tol.is_finite() && tol > 0.0) {
            bail!("--tol must be a positive finite number, got {tol}");
        }
    }
    exec::with_threads(g.threads, || dispatch(cli))
}

fn dispatch(cli: &Cli) -> anyhow::Result<ExitCode> {
    let g = &cli.global;
    let tol = g.tol.unwrap_or(DEFAULT_TOLERANCE);
    match &cli.command {
        Command::Check { file } => {
            let family = read_family(file)?;
            let report = FamilyReport::check(&family, tol)?;
            emit(&report, g.format)?;
            Ok(verdict(report.has_violation(), &family))
        }
        Command::Entropy { file, pair_cap } => {
            let family = read_family(file)?;
            let opts = CheckOptions {
                tolerance: tol,
                pair_cap: *pair_cap,
            };
            let report = FamilyReport::with_entropy(&family, &opts)?;
            emit(&report, g.format)?;
            Ok(verdict(report.has_violation(), &family))
        }
        Command::Analytic { op } => analytic_cmd(op, cli),
        Command::Example {
            n,
            k,
            m,
            samples,
            seed,
            explicit,
        } => {
            let mode = if *explicit {
                ExampleMode::Explicit
            } else {
                ExampleMode::Implicit
            };
            let spec = ExampleSpec::new(*n, *k, *m, mode)?;
            if *explicit {
                let ExampleOutput::Explicit(family) = generators::build_example(spec)? else {
                    unreachable!("explicit mode yields an explicit family");
                };
                let text = family.to_uc();
                match &g.out {
                    Some(path) => write_file(path, &text)?,
                    None => print!("{text}"),
                }
                return Ok(ExitCode::SUCCESS);
            }
            let stats = generators::example_stats(spec, *samples, *seed)?;
            emit(&ExampleReport { example: stats }, g.format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate { n, no_empty } => {
            let families: Vec<SetFamily> =
                generators::enumerate_union_closed(*n, !*no_empty)?.collect();
            let source = CorpusSource::Enumerate {
                include_empty_set: !*no_empty,
            };
            corpus_cmd(*n, source, &families, tol, g.format)
        }
        Command::Fuzz { n, count, seed } => {
            let families = generators::fuzz_corpus(*n, *count, *seed)?;
            let source = CorpusSource::Fuzz {
                count: *count,
                seed: *seed,
            };
            corpus_cmd(*n, source, &families, tol, g.format)
        }
    }
}

fn analytic_cmd(op: &AnalyticOp, cli: &Cli) -> anyhow::Result<ExitCode> {
    let g = &cli.global;
    match op {
        AnalyticOp::Minimize { grid } => {
            let min = analytic::minimize_diagonal(*grid, g.tol.unwrap_or(MINIMIZE_TOLERANCE))?;
            emit(&min, g.format)?;
            Ok(ExitCode::SUCCESS)
        }
        AnalyticOp::Grid { grid } => {
            let check = analytic::margin_grid_check(*grid)?;
            let tol = g.tol.unwrap_or(GRID_TOLERANCE);
            if g.format == Format::Csv {
                print!("{}", analytic::grid_csv(*grid));
            } else {
                emit(&check, g.format)?;
            }
            let violated = check.min_margin < -tol || check.boundary_min_margin < -tol;
            Ok(if violated {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        AnalyticOp::Certify {
            theta,
            eta,
            max_depth,
            budget,
        } => {
            let params = CertifyParams {
                theta: *theta,
                eta: *eta,
                max_depth: *max_depth,
                box_budget: *budget,
                ..CertifyParams::default()
            };
            let cert = analytic::certify_lower_bound(&params)?;
            if let Some(path) = &g.out {
                write_file(path, &render(&cert, Format::Json)?)?;
            }
            emit(&cert, g.format)?;
            // Only a refutation below the true minimum contradicts the inequality.
            let contradiction = !cert.verified
                && cert.outcome == analytic::Outcome::Refuted
                && *theta < HALF_INV_PHI;
            Ok(if contradiction {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
#[serde(tag = "source", rename_all = "snake_case")]
enum CorpusSource {
    Enumerate { include_empty_set: bool },
    Fuzz { count: u64, seed: u64 },
}

#[derive(Debug, Serialize)]
struct CorpusSummary {
    n: u32,
    #[serde(flatten)]
    source: CorpusSource,
    families: usize,
    theorem_applicable: usize,
    upper_bound_applicable: usize,
    /// Smallest `max_freq − (ψ − δ)` over applicable families.
    min_theorem_slack: Option<f64>,
    min_lower_margin_bits: Option<f64>,
    min_upper_margin_bits: Option<f64>,
    max_chain_identity_error_bits: Option<f64>,
    tolerance: f64,
    /// Indices into the corpus of families with a failed check.
    violations: Vec<usize>,
}

fn corpus_cmd(
    n: u32,
    source: CorpusSource,
    families: &[SetFamily],
    tol: f64,
    format: Format,
) -> anyhow::Result<ExitCode> {
    let opts = CheckOptions {
        tolerance: tol,
        ..CheckOptions::default()
    };
    let reports = exec::map(families, |f| FamilyReport::with_entropy(f, &opts));
    let reports = reports.into_iter().collect::<Result<Vec<_>, _>>()?;

    let min = |acc: Option<f64>, v: f64| Some(acc.map_or(v, |a: f64| a.min(v)));
    let max = |acc: Option<f64>, v: f64| Some(acc.map_or(v, |a: f64| a.max(v)));
    let mut summary = CorpusSummary {
        n,
        source,
        families: reports.len(),
        theorem_applicable: 0,
        upper_bound_applicable: 0,
        min_theorem_slack: None,
        min_lower_margin_bits: None,
        min_upper_margin_bits: None,
        max_chain_identity_error_bits: None,
        tolerance: tol,
        violations: Vec::new(),
    };
    for (i, r) in reports.iter().enumerate() {
        if r.theorem.applicable {
            summary.theorem_applicable += 1;
            if let Some(pmd) = r.psi_minus_delta {
                summary.min_theorem_slack =
                    min(summary.min_theorem_slack, r.max_freq.to_f64() - pmd);
            }
        }
        if let Some(lb) = &r.lower_bound {
            summary.min_lower_margin_bits = min(summary.min_lower_margin_bits, lb.margin_bits);
        }
        if let Some(b) = r.upper_bound.as_ref().and_then(|u| u.bound.as_ref()) {
            summary.upper_bound_applicable += 1;
            summary.min_upper_margin_bits = min(summary.min_upper_margin_bits, b.margin_bits);
        }
        if let Some(c) = &r.chain_rule {
            summary.max_chain_identity_error_bits =
                max(summary.max_chain_identity_error_bits, c.identity_error_bits);
        }
        if r.has_violation() {
            summary.violations.push(i);
        }
    }
    emit(&summary, format)?;
    match summary.violations.first() {
        Some(&i) => Ok(verdict(true, &families[i])),
        None => Ok(ExitCode::SUCCESS),
    }
}

fn read_family(path: &Path) -> anyhow::Result<SetFamily> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_family(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn emit<T: Serialize>(report: &T, format: Format) -> anyhow::Result<()> {
    print!("{}", render(report, format)?);
    Ok(())
}

fn verdict(violation: bool, family: &SetFamily) -> ExitCode {
    if !violation {
        return ExitCode::SUCCESS;
    }
    eprintln!("violation found; offending family:");
    eprint!("{}", family.to_uc());
    ExitCode::from(1)
}
