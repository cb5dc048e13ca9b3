//! Named scenarios, report emission and the `f2coh` command line.
//!
//! ```text
//! f2coh run <scenario|all> [--max-degree N] [--seed S] [--format text|csv|json]
//!                          [--out PATH] [--slow] [--no-timing] [--config FILE]
//!                          [--fixtures DIR] [--reference FILE]
//! f2coh list
//! f2coh discover --seed S [--fixtures DIR]
//! ```
//!
//! The exit code is 0 when every report passes, 1 when some report fails
//! and 2 on usage or fixture errors.

mod config;
mod reference;
mod report;
mod scenarios;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::FileConfig;
pub use reference::{ReferenceData, Sq1Identity};
pub use report::{Format, MismatchRecord, Report, Verdict};
pub use scenarios::{
    default_fixture_dir, find_scenario, run_scenario, run_scenario_with, scenarios, Params, Scenario, Tier,
};

use crate::error::{Error, Result};
use crate::invariants::{discover_and_save, A6_FIXTURE, A7_FIXTURE};

#[derive(Debug, Parser)]
#[command(name = "f2coh", about = "Exact F2 cohomology computations as named, checkable scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one scenario, or `all` for the whole fast tier.
    Run {
        scenario: String,
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Allow slow-tier scenarios.
        #[arg(long)]
        slow: bool,
        /// Leave `elapsed_ms` out of the report.
        #[arg(long)]
        no_timing: bool,
        /// A `key = value` file; flags take precedence over it.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// JSON file overriding some or all expected values.
        #[arg(long)]
        reference: Option<PathBuf>,
    },
    /// List scenarios with their tier and the statement each checks.
    List,
    /// Search for A7 and A6 inside GL4(2) and rewrite the group fixtures.
    Discover {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name) and executes the command,
/// writing normal output to `out` and diagnostics to `err`. Returns the
/// process exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(all_passed) => i32::from(!all_passed),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// The listing shown by `f2coh list`.
pub fn list_scenarios() -> String {
    let width = scenarios().iter().map(|s| s.name.len()).max().unwrap_or(0);
    let mut s = String::new();
    for sc in scenarios() {
        s.push_str(&format!("{:<width$}  {:<4}  {}\n", sc.name, sc.tier.as_str(), sc.anchor));
    }
    s
}

/// Renders several reports as one document: a JSON array, or the
/// individual renderings separated by blank lines.
pub fn render_reports(reports: &[Report], format: Format) -> String {
    match (format, reports) {
        (_, [single]) => single.render(format),
        (Format::Json, _) => {
            let mut s = serde_json::to_string_pretty(reports).expect("plain data serializes");
            s.push('\n');
            s
        }
        _ => reports.iter().map(|r| r.render(format)).collect::<Vec<_>>().join("\n"),
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<bool> {
    match command {
        Command::List => {
            out.write_all(list_scenarios().as_bytes())?;
            Ok(true)
        }
        Command::Discover { seed, fixtures } => {
            let dir = fixtures.unwrap_or_else(default_fixture_dir);
            let (a7, a6) = discover_and_save(&dir, seed)?;
            writeln!(
                out,
                "wrote {} (order {}) and {} (order {}) with seed {seed}",
                dir.join(A7_FIXTURE).display(),
                a7.order().unwrap_or(0),
                dir.join(A6_FIXTURE).display(),
                a6.order().unwrap_or(0),
            )?;
            Ok(true)
        }
        Command::Run {
            scenario,
            max_degree,
            seed,
            format,
            out: out_path,
            slow,
            no_timing,
            config,
            fixtures,
            reference,
        } => {
            let file = match &config {
                Some(path) => FileConfig::load(path)?,
                None => FileConfig::default(),
            };
            let params = Params {
                max_degree: max_degree.or(file.max_degree),
                seed: seed.or(file.seed).unwrap_or(0),
                fixtures: fixtures.or(file.fixtures).unwrap_or_else(default_fixture_dir),
                timing: !no_timing && file.timing.unwrap_or(true),
            };
            let slow = slow || file.slow.unwrap_or(false);
            let format = format.or(file.format).unwrap_or(Format::Text);
            let out_path = out_path.or(file.out);
            let reference = match reference.or(file.reference) {
                Some(path) => ReferenceData::load(&path)?,
                None => ReferenceData::default(),
            };

            let selected: Vec<&Scenario> = if scenario == "all" {
                scenarios().iter().filter(|s| slow || s.tier == Tier::Fast).collect()
            } else {
                let s = find_scenario(&scenario)?;
                if s.tier == Tier::Slow && !slow {
                    return Err(Error::Config(format!(
                        "{} is a slow-tier scenario; pass --slow to run it",
                        s.name
                    )));
                }
                vec![s]
            };
            let reports = selected
                .iter()
                .map(|s| run_scenario_with(s.name, &params, &reference))
                .collect::<Result<Vec<_>>>()?;
            let text = render_reports(&reports, format);
            out.write_all(text.as_bytes())?;
            if let Some(path) = out_path {
                std::fs::write(&path, &text)?;
            }
            Ok(reports.iter().all(Report::passed))
        }
    }
}
