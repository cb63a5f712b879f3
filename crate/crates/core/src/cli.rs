//! Command-line front end. Every command prints one JSON document on stdout.
//!
//! Exit codes: 0 when the property holds or the run is clean, 1 when it fails
//! or witnesses were found, 2 on usage, input or resource errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::crisp;
use crate::format::{parse_structure, structure_digest, StructureFile};
use crate::fuzzy::{self, Grade};
use crate::report::PropertyReport;
use crate::structure::RelationDiagnostics;
use crate::subset::Subset;
use crate::theorems::{
    characteristic_function, enumerate_ideals, verify, IdealFilter, RelationMode, Theorem,
    Universe, VerificationRun, VerifyOptions,
};

pub const TOOL_VERSION: &str = concat!("hyperideal ", env!("CARGO_PKG_VERSION"));
pub const SEED_ENV: &str = "HYPERIDEAL_SEED";

#[derive(Parser, Debug)]
#[command(
    name = "hyperideal",
    version,
    about = "Crisp and fuzzy ideals of finite ≤-hypergroupoids"
)]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a structure file is well formed and describe its relation.
    Validate { file: PathBuf },
    /// Decide a crisp property of a subset.
    Check {
        file: PathBuf,
        /// Comma-separated element indices, e.g. `0,2`.
        #[arg(long)]
        subset: String,
        #[arg(long, value_enum)]
        property: CrispProperty,
    },
    /// Decide a fuzzy property of a named fuzzy subset from the file.
    CheckFuzzy {
        file: PathBuf,
        #[arg(long)]
        fuzzy: String,
        #[arg(long, value_enum)]
        property: FuzzyProperty,
    },
    /// Print the characteristic function of a subset.
    Char {
        file: PathBuf,
        #[arg(long, default_value = "")]
        subset: String,
    },
    /// List every subset passing a filter.
    Enumerate {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "ideal")]
        filter: Filter,
        #[arg(long, default_value_t = crate::theorems::ENUMERATE_ORDER_CAP)]
        max_order: usize,
    },
    /// Verify a correspondence over a universe of structures.
    Verify {
        /// P2, P7, P7L, P7R, P8, P10, P14, D5, D11, R13 or FMAX.
        #[arg(long, value_parser = parse_theorem)]
        theorem: Theorem,
        #[command(flatten)]
        universe: UniverseArgs,
    },
    /// Search for counterexamples to a claim.
    Search {
        #[arg(long, value_enum)]
        claim: Claim,
        #[command(flatten)]
        universe: UniverseArgs,
    },
}

#[derive(Args, Debug)]
struct UniverseArgs {
    #[arg(long, default_value_t = 2)]
    order: usize,
    /// Enumerate every structure of the given order (the default).
    #[arg(long, conflicts_with_all = ["samples", "file"])]
    exhaustive: bool,
    /// Check this many seeded random structures instead.
    #[arg(long, conflicts_with = "file")]
    samples: Option<u64>,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    seed: u64,
    /// Check only the structure in this file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// With --exhaustive, pair every table with the identity relation only.
    #[arg(long)]
    table_only: bool,
    /// Permit exhaustive enumeration above order 2.
    #[arg(long)]
    allow_large: bool,
    #[arg(long, default_value_t = VerifyOptions::default().max_structures)]
    max_structures: u64,
    #[arg(long, default_value_t = 10)]
    max_witnesses: usize,
    /// Grades for fuzzy sweeps, e.g. `0,1/2,1`.
    #[arg(long, default_value = "0,1/4,1/2,3/4,1")]
    grid: String,
    /// Disable parallel checking.
    #[arg(long)]
    serial: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CrispProperty {
    Ideal,
    LeftIdeal,
    RightIdeal,
    Subgroupoid,
    Prime,
    Semiprime,
    PrimeIdeal,
    SemiprimeIdeal,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
#[allow(clippy::enum_variant_names)]
enum FuzzyProperty {
    FuzzyLeftIdeal,
    FuzzyRightIdeal,
    FuzzyIdeal,
    FuzzyPrime,
    FuzzySemiprime,
    FuzzyPrimeIdeal,
    FuzzySemiprimeIdeal,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Filter {
    Ideal,
    LeftIdeal,
    RightIdeal,
    PrimeIdeal,
    SemiprimeIdeal,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Claim {
    /// f_A a fuzzy semiprime ideal implies A a prime ideal.
    P14Literal,
    /// The diagonal condition alone characterizes fuzzy semiprime ideals.
    R13Diagonal,
}

fn parse_theorem(s: &str) -> Result<Theorem, String> {
    let t = match s.to_ascii_uppercase().as_str() {
        "P2" => Theorem::P2Equiv,
        "P14" => Theorem::P14Forward,
        "D5" => Theorem::D5Equiv,
        "D11" => Theorem::D11Equiv,
        "FMAX" => Theorem::FMaxEquiv,
        _ => match Theorem::from_id(s) {
            Some(t) if !t.is_search() => t,
            _ => return Err(format!("unknown theorem {s:?}")),
        },
    };
    Ok(t)
}

/// A failure that maps to exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

#[derive(Serialize)]
struct PropertyDocument<'a> {
    #[serde(flatten)]
    report: &'a PropertyReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    subset: Option<Subset>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fuzzy: Option<&'a str>,
    structure_digest: String,
    tool_version: &'static str,
}

#[derive(Serialize)]
struct ValidateDocument<'a> {
    #[serde(flatten)]
    report: &'a PropertyReport,
    relation: RelationDiagnostics,
    order: usize,
    fuzzy_subsets: Vec<&'a str>,
    structure_digest: String,
    tool_version: &'static str,
}

#[derive(Serialize)]
struct CharDocument {
    subset: Subset,
    grades: crate::fuzzy::FuzzySubset,
    structure_digest: String,
    tool_version: &'static str,
}

#[derive(Serialize)]
struct EnumerateDocument {
    filter: &'static str,
    count: usize,
    subsets: Vec<Subset>,
    structure_digest: String,
    tool_version: &'static str,
}

#[derive(Serialize)]
struct RunDocument<'a> {
    #[serde(flatten)]
    run: &'a VerificationRun,
    tool_version: &'static str,
}

/// Serializes a run report exactly as the CLI prints it.
pub fn run_json(run: &VerificationRun, pretty: bool) -> String {
    render(
        &RunDocument {
            run,
            tool_version: TOOL_VERSION,
        },
        pretty,
    )
}

fn render<T: Serialize>(doc: &T, pretty: bool) -> String {
    let mut s = if pretty {
        serde_json::to_string_pretty(doc)
    } else {
        serde_json::to_string(doc)
    }
    .expect("report serialization cannot fail");
    s.push('\n');
    s
}

fn load(path: &Path) -> Result<StructureFile, UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    parse_structure(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn parse_subset(s: &str, order: usize, allow_empty: bool) -> Result<Subset, UsageError> {
    let mut out = Subset::EMPTY;
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let x: usize = tok
            .parse()
            .map_err(|_| UsageError(format!("bad element {tok:?} in subset")))?;
        if x >= order {
            return Err(UsageError(format!(
                "element {x} is outside the carrier of order {order}"
            )));
        }
        out.insert(x);
    }
    if out.is_empty() && !allow_empty {
        return Err(UsageError("subset must be nonempty".into()));
    }
    Ok(out)
}

fn parse_grid(s: &str) -> Result<Vec<Grade>, UsageError> {
    let grid = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse::<Grade>)
        .collect::<Result<Vec<_>, _>>()?;
    if grid.is_empty() {
        return Err(UsageError("grade grid is empty".into()));
    }
    Ok(grid)
}

fn build_universe(args: &UniverseArgs) -> Result<(Universe, VerifyOptions), UsageError> {
    let universe = if let Some(path) = &args.file {
        let file = load(path)?;
        if file.structure.order() != args.order {
            return Err(UsageError(format!(
                "--order {} does not match the file's order {}",
                args.order,
                file.structure.order()
            )));
        }
        Universe::explicit(path.display().to_string(), vec![file.structure])
    } else if let Some(count) = args.samples {
        Universe::sampled(args.order, count, args.seed)
    } else {
        Universe::Exhaustive {
            order: args.order,
            relations: if args.table_only {
                RelationMode::Identity
            } else {
                RelationMode::All
            },
        }
    };
    let opts = VerifyOptions {
        max_structures: args.max_structures,
        allow_large: args.allow_large,
        max_failures: args.max_witnesses,
        grid: parse_grid(&args.grid)?,
        parallel: !args.serial,
    };
    Ok((universe, opts))
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, UsageError> {
    let pretty = cli.pretty;
    let verdict = |holds: bool| if holds { 0 } else { 1 };
    match cli.command {
        Command::Validate { file } => {
            let f = load(&file)?;
            let lh = &f.structure;
            let report = lh.validate();
            let doc = ValidateDocument {
                report: &report,
                relation: lh.relation_diagnostics(),
                order: lh.order(),
                fuzzy_subsets: f.fuzzy.keys().map(String::as_str).collect(),
                structure_digest: structure_digest(lh),
                tool_version: TOOL_VERSION,
            };
            out.write_all(render(&doc, pretty).as_bytes())?;
            Ok(verdict(report.holds()))
        }
        Command::Check {
            file,
            subset,
            property,
        } => {
            let f = load(&file)?;
            let lh = &f.structure;
            let a = parse_subset(&subset, lh.order(), false)?;
            let decide = match property {
                CrispProperty::Ideal => crisp::is_ideal,
                CrispProperty::LeftIdeal => crisp::is_left_ideal,
                CrispProperty::RightIdeal => crisp::is_right_ideal,
                CrispProperty::Subgroupoid => crisp::is_subgroupoid,
                CrispProperty::Prime => crisp::is_prime_subset,
                CrispProperty::Semiprime => crisp::is_semiprime_subset,
                CrispProperty::PrimeIdeal => crisp::is_prime_ideal,
                CrispProperty::SemiprimeIdeal => crisp::is_semiprime_ideal,
            };
            let report = decide(lh, a)?;
            let doc = PropertyDocument {
                report: &report,
                subset: Some(a),
                fuzzy: None,
                structure_digest: structure_digest(lh),
                tool_version: TOOL_VERSION,
            };
            out.write_all(render(&doc, pretty).as_bytes())?;
            Ok(verdict(report.holds()))
        }
        Command::CheckFuzzy {
            file,
            fuzzy: name,
            property,
        } => {
            let f = load(&file)?;
            let lh = &f.structure;
            let g = f
                .fuzzy
                .get(&name)
                .ok_or_else(|| UsageError(format!("no fuzzy subset named {name:?}")))?;
            let decide = match property {
                FuzzyProperty::FuzzyLeftIdeal => fuzzy::is_fuzzy_left_ideal,
                FuzzyProperty::FuzzyRightIdeal => fuzzy::is_fuzzy_right_ideal,
                FuzzyProperty::FuzzyIdeal => fuzzy::is_fuzzy_ideal,
                FuzzyProperty::FuzzyPrime => fuzzy::is_fuzzy_prime_subset,
                FuzzyProperty::FuzzySemiprime => fuzzy::is_fuzzy_semiprime_subset,
                FuzzyProperty::FuzzyPrimeIdeal => fuzzy::is_fuzzy_prime_ideal,
                FuzzyProperty::FuzzySemiprimeIdeal => fuzzy::is_fuzzy_semiprime_ideal,
            };
            let report = decide(lh, g)?;
            let doc = PropertyDocument {
                report: &report,
                subset: None,
                fuzzy: Some(&name),
                structure_digest: structure_digest(lh),
                tool_version: TOOL_VERSION,
            };
            out.write_all(render(&doc, pretty).as_bytes())?;
            Ok(verdict(report.holds()))
        }
        Command::Char { file, subset } => {
            let f = load(&file)?;
            let lh = &f.structure;
            let a = parse_subset(&subset, lh.order(), true)?;
            let doc = CharDocument {
                subset: a,
                grades: characteristic_function(lh.order(), a),
                structure_digest: structure_digest(lh),
                tool_version: TOOL_VERSION,
            };
            out.write_all(render(&doc, pretty).as_bytes())?;
            Ok(0)
        }
        Command::Enumerate {
            file,
            filter,
            max_order,
        } => {
            let f = load(&file)?;
            let lh = &f.structure;
            let (name, filter) = match filter {
                Filter::Ideal => ("ideal", IdealFilter::Ideal),
                Filter::LeftIdeal => ("left-ideal", IdealFilter::LeftIdeal),
                Filter::RightIdeal => ("right-ideal", IdealFilter::RightIdeal),
                Filter::PrimeIdeal => ("prime-ideal", IdealFilter::PrimeIdeal),
                Filter::SemiprimeIdeal => ("semiprime-ideal", IdealFilter::SemiprimeIdeal),
            };
            let subsets = enumerate_ideals(lh, filter, max_order)?;
            let doc = EnumerateDocument {
                filter: name,
                count: subsets.len(),
                subsets,
                structure_digest: structure_digest(lh),
                tool_version: TOOL_VERSION,
            };
            out.write_all(render(&doc, pretty).as_bytes())?;
            Ok(0)
        }
        Command::Verify { theorem, universe } => {
            let (u, opts) = build_universe(&universe)?;
            let run = verify(theorem, &u, &opts)?;
            out.write_all(run_json(&run, pretty).as_bytes())?;
            Ok(verdict(run.clean()))
        }
        Command::Search { claim, universe } => {
            let (u, opts) = build_universe(&universe)?;
            let theorem = match claim {
                Claim::P14Literal => Theorem::P14LiteralConverse,
                Claim::R13Diagonal => Theorem::R13DiagonalConverse,
            };
            let run = verify(theorem, &u, &opts)?;
            out.write_all(run_json(&run, pretty).as_bytes())?;
            Ok(verdict(run.clean()))
        }
    }
}

/// Parses `argv` (including the program name), runs the command, and
/// returns the process exit code.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_aliases() {
        assert_eq!(parse_theorem("P14").unwrap(), Theorem::P14Forward);
        assert_eq!(parse_theorem("fmax").unwrap(), Theorem::FMaxEquiv);
        assert_eq!(parse_theorem("P7").unwrap(), Theorem::P7);
        assert!(parse_theorem("P14conv-literal").is_err());
    }

    #[test]
    fn subset_syntax() {
        assert_eq!(parse_subset("0,2", 3, false).unwrap().bits(), 0b101);
        assert_eq!(parse_subset(" 1 , 1 ", 3, false).unwrap().bits(), 0b10);
        assert!(parse_subset("", 3, false).is_err());
        assert!(parse_subset("", 3, true).unwrap().is_empty());
        assert!(parse_subset("3", 3, false).is_err());
        assert!(parse_subset("x", 3, false).is_err());
    }

    #[test]
    fn unknown_subcommand_is_usage_error() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(
            dispatch(["hyperideal", "frobnicate"], &mut out, &mut err),
            2
        );
        assert!(!err.is_empty());
        assert_eq!(dispatch(["hyperideal", "--help"], &mut out, &mut err), 0);
    }
}
