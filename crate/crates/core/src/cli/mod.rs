//! Command runner behind the `semigroup-envelope` binary.
//!
//! Exit codes: 0 success, 1 invalid input, 2 a budget ran out where a
//! complete enumeration was needed, 3 an internal invariant failed.

pub mod report;
pub mod spec_doc;

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};

use crate::classify::{desk_classify, growth_profile, local_finiteness_probe, random_subsets, MAX_PROBE_SIZE};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::length::{check_subadditivity, dominating_weight, length_table, length_table_for, verify_domination};
use crate::normspace::{comparison_constants, Base, WeightedNorm};
use crate::nuclearity::nuclearity_witness;
use crate::weight::WeightFunction;

pub use report::{emit_report, Emit, Format};
pub use spec_doc::{parse_spec, spec_to_json, ParsedSpec};

/// Environment variable that redirects relative `--out` paths.
pub const OUT_DIR_ENV: &str = "SEMIGROUP_ENVELOPE_OUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Closure of the generating set.
    Enumerate,
    /// Weighted word lengths over a ball.
    Length,
    /// Point-mass norms and the submultiplicativity scan.
    Norm,
    /// Defect census and partial nuclear sum for the staircase weight.
    Nuclearity,
    /// Closures of random finite subsets.
    LocalFiniteness,
    /// Weight dominating `phi`, with a verification pass.
    DominatingWeight,
    /// Comparison constants between the weight and its staircase.
    NormEquivalence,
    /// Ball sizes at radii 1, 2, ..., radius.
    Growth,
    /// Finite / finitely generated / locally finite evidence.
    Classify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "semigroup-envelope", version, about = "Weighted word lengths and envelope norms on semigroups")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// JSON semigroup document.
    pub input: PathBuf,
    #[arg(long, default_value_t = 10.0)]
    pub radius: f64,
    #[arg(long, default_value_t = 100_000)]
    pub budget: usize,
    #[arg(long, default_value_t = 100)]
    pub depth: usize,
    #[arg(long, default_value_t = 20)]
    pub probes: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Exponential base of the norms (> 1, default e).
    #[arg(long)]
    pub base: Option<f64>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command, input: impl Into<PathBuf>) -> Self {
        RunConfig {
            command,
            input: input.into(),
            radius: 10.0,
            budget: 100_000,
            depth: 100,
            probes: 20,
            seed: 0,
            base: None,
            format: FormatArg::Json,
            out: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.radius.is_nan() || self.radius < 0.0 {
            return Err(Error::validation("--radius", "must be a non-negative real"));
        }
        if self.budget == 0 {
            return Err(Error::validation("--budget", "must be at least 1"));
        }
        if let Some(b) = self.base {
            Base::new(b).map_err(|e| Error::validation("--base", e.to_string()))?;
        }
        Ok(())
    }

    fn base(&self) -> Base {
        self.base.and_then(|b| Base::new(b).ok()).unwrap_or_default()
    }

    fn format(&self) -> Format {
        match self.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

/// A failed run: the exit code and a message for stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        e if e.is_invariant_violation() => EXIT_INVARIANT,
        Error::NotComplete | Error::NotLocallyFiniteEvidence { .. } | Error::EnumerationTooLarge { .. } => EXIT_BUDGET,
        _ => EXIT_INVALID,
    }
}

/// Output of a successful run. `code` is nonzero when the report itself
/// records invariant violations.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub document: String,
}

fn fail(err: Error) -> Failure {
    Failure {
        code: exit_code(&err),
        message: err.to_string(),
    }
}

/// Runs one command on an already parsed spec and returns the serialized report.
pub fn execute(config: &RunConfig, spec: &ParsedSpec) -> Result<Outcome> {
    config.validate()?;
    let oracle = spec.oracle()?;
    let gens = &spec.generators;
    let weights = &spec.weights;
    let format = config.format();
    let emit = |r: &dyn Emit, code: i32| -> Result<Outcome> {
        Ok(Outcome {
            code,
            document: emit_report(r, format)?,
        })
    };

    match config.command {
        Command::Enumerate => {
            let seeds = match gens.len() {
                Some(n) => gens.prefix(n),
                None => gens.prefix(config.depth.min(config.budget)),
            };
            let outcome = oracle.closure(&seeds, config.budget)?;
            let identity = if outcome.is_finite() {
                oracle.detect_identity(Some(outcome.elements()))?
            } else {
                None
            };
            emit(
                &report::ClosureReport {
                    outcome,
                    budget: config.budget,
                    identity,
                },
                EXIT_OK,
            )
        }
        Command::Length => {
            let table = length_table(&oracle, gens, weights, config.radius, config.budget)?;
            let violations = check_subadditivity(&table, &oracle);
            let code = if violations.is_empty() { EXIT_OK } else { EXIT_INVARIANT };
            emit(&report::LengthReport { table: &table, violations }, code)
        }
        Command::Norm => {
            let table = length_table(&oracle, gens, weights, config.radius, config.budget)?;
            let base = config.base();
            let norm = WeightedNorm::with_base(&table, base);
            let mut point_norms = Vec::with_capacity(table.len());
            for e in table.entries() {
                point_norms.push((e.element.clone(), e.length, norm.weight_of(&e.element)?));
            }
            let mut max_ratio: Option<f64> = None;
            let mut pairs = 0;
            for a in table.entries() {
                for b in table.entries() {
                    let p = oracle.product(&a.element, &b.element)?;
                    if let Some(lp) = table.length(&p) {
                        let ratio = base.pow(lp.to_f64() - a.length.to_f64() - b.length.to_f64());
                        max_ratio = Some(max_ratio.map_or(ratio, |m| m.max(ratio)));
                        pairs += 1;
                    }
                }
            }
            let code = if max_ratio.is_some_and(|r| r > 1.0 + crate::weight::TOLERANCE) {
                EXIT_INVARIANT
            } else {
                EXIT_OK
            };
            emit(
                &report::NormReport {
                    base: base.value(),
                    point_norms,
                    max_ratio,
                    pairs_checked: pairs,
                    complete: table.is_complete(),
                },
                code,
            )
        }
        Command::Nuclearity => {
            let r = nuclearity_witness(&oracle, gens, weights, config.radius, config.budget)?;
            let code = if r.is_clean() { EXIT_OK } else { EXIT_INVARIANT };
            emit(&r, code)
        }
        Command::LocalFiniteness => {
            let table = length_table(&oracle, gens, weights, config.radius, config.budget)?;
            let pool: Vec<Element> = table.elements().cloned().collect();
            let subsets = random_subsets(&pool, config.probes, MAX_PROBE_SIZE.min(config.budget), config.seed);
            let probes = local_finiteness_probe(&oracle, &subsets, config.budget)?;
            emit(
                &report::ProbeReport {
                    seed: config.seed,
                    probes,
                },
                EXIT_OK,
            )
        }
        Command::DominatingWeight => {
            let phi = spec
                .phi_map()
                .ok_or_else(|| Error::validation("phi", "dominating-weight needs a phi table"))?;
            let lookup = |e: &Element| phi.get(e).copied();
            let d = dominating_weight(&oracle, gens, lookup, config.depth, config.budget)?;
            let radius = d
                .weight
                .eval(d.kept_indices.len())
                .map_or(0.0, |c| c.to_f64());
            let table = length_table(&oracle, &d.thinned, &d.weight, radius, config.budget)?;
            let violations = verify_domination(&table, lookup)?;
            let code = if violations.is_empty() { EXIT_OK } else { EXIT_INVARIANT };
            emit(
                &report::DominationReport {
                    thinned: d.thinned.prefix(d.kept_indices.len()),
                    weight: d.weight,
                    kept_indices: d.kept_indices,
                    level_sizes: d.level_sizes,
                    checked: table.len(),
                    violations,
                },
                code,
            )
        }
        Command::NormEquivalence => {
            let upper = WeightFunction::staircase_of(weights.clone());
            let second = length_table(&oracle, gens, &upper, config.radius, config.budget)?;
            if !second.is_complete() {
                return Err(Error::NotComplete);
            }
            let targets: Vec<Element> = second.elements().cloned().collect();
            let first = length_table_for(&oracle, gens, weights, &targets, config.budget)?;
            let first = if first.len() == second.len() {
                first
            } else {
                // keep only the common domain
                crate::length::LengthTable::from_entries(
                    weights.clone(),
                    gens.clone(),
                    first
                        .entries()
                        .iter()
                        .filter(|e| second.contains(&e.element))
                        .cloned()
                        .collect(),
                )
            };
            let comparison = comparison_constants(&first, &second, config.base())?;
            let whole_semigroup = oracle.order().is_some_and(|n| n == second.len());
            emit(
                &report::ComparisonReport {
                    base: config.base().value(),
                    elements: second.len(),
                    whole_semigroup,
                    comparison,
                },
                EXIT_OK,
            )
        }
        Command::Growth => {
            let radii: Vec<f64> = (1..=config.radius.floor() as usize).map(|r| r as f64).collect();
            let rows = growth_profile(&oracle, gens, weights, &radii, config.budget)?;
            emit(&report::GrowthReport(rows), EXIT_OK)
        }
        Command::Classify => {
            let r = desk_classify(&oracle, gens, config.budget, config.probes, config.seed)?;
            emit(&r, EXIT_OK)
        }
    }
}

fn output_path(out: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if out.is_relative() => Path::new(&dir).join(out),
        _ => out.to_path_buf(),
    }
}

/// Reads the input, runs the command and writes the report to `--out` or
/// returns it for stdout.
pub fn run(config: &RunConfig) -> std::result::Result<Outcome, Failure> {
    let text = std::fs::read_to_string(&config.input).map_err(|e| Failure {
        code: EXIT_INVALID,
        message: format!("cannot read {}: {e}", config.input.display()),
    })?;
    let spec = parse_spec(&text).map_err(fail)?;
    let outcome = execute(config, &spec).map_err(fail)?;
    if let Some(out) = &config.out {
        let path = output_path(out);
        std::fs::write(&path, &outcome.document).map_err(|e| Failure {
            code: EXIT_INVALID,
            message: format!("cannot write {}: {e}", path.display()),
        })?;
        return Ok(Outcome {
            code: outcome.code,
            document: String::new(),
        });
    }
    Ok(outcome)
}

/// Entry point used by the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match run(&config) {
        Ok(outcome) => {
            print!("{}", outcome.document);
            outcome.code
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
