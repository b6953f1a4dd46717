use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};
use supersolv::catalog::{catalog_entry, standard_catalog};
use supersolv::criteria::{criteria_report, ReportOptions, Thm1Mode};
use supersolv::format::parse_group_with;
use supersolv::sweep::{run_sweep, SweepConfig, SweepReport};
use supersolv::{Error, Group, Limits};

#[derive(Parser)]
#[command(
    name = "supersolv",
    version,
    about = "Supersolubility deciders for finite permutation groups"
)]
struct Cli {
    /// Work budget for tcc and lattice checks.
    #[arg(long, global = true, env = "SUPERSOLV_BUDGET")]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the three deciders on one group and print a JSON report.
    Analyze {
        /// Group file (`degree:` and `gens:` lines).
        path: Option<PathBuf>,
        /// Catalog group name, or a group file.
        #[arg(long, conflicts_with = "path")]
        catalog: Option<String>,
        /// Include the index-p supersoluble subgroups found.
        #[arg(long)]
        witnesses: bool,
        /// Restrict the per-prime search to maximal subgroups.
        #[arg(long)]
        thm1_maximal_only: bool,
    },
    /// Check every catalog group up to an order bound.
    Sweep {
        #[arg(long, default_value_t = 100)]
        max_order: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Seed for the order work items are scheduled in.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print a CSV table of per-group verdicts to stdout.
        #[arg(long)]
        csv: bool,
    },
    /// List catalog groups.
    List,
}

fn limits(budget: Option<u64>) -> Limits {
    let mut l = Limits::default();
    if let Some(b) = budget {
        l.check_budget = b;
    }
    l
}

fn load(
    path: Option<PathBuf>,
    catalog: Option<String>,
    limits: Limits,
) -> anyhow::Result<(String, std::sync::Arc<Group>)> {
    if let Some(name) = catalog {
        if let Ok(entry) = catalog_entry(&name) {
            return Ok((entry.name, entry.group.relimit(limits)));
        }
        let p = PathBuf::from(&name);
        if p.is_file() {
            return load(Some(p), None, limits);
        }
        bail!("{}", Error::UnknownGroup(name));
    }
    let Some(path) = path else {
        bail!("give a group file or --catalog NAME");
    };
    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    let g = parse_group_with(&text, limits).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    let id = path.file_stem().map_or_else(
        || path.display().to_string(),
        |s| s.to_string_lossy().into_owned(),
    );
    Ok((id, g))
}

fn verdict(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "error",
    }
}

fn csv(report: &SweepReport) -> String {
    let mut out = String::from("group_id,order,verdict_chief,verdict_huppert,verdict_thm1,agree\n");
    for g in &report.groups {
        out += &format!(
            "{},{},{},{},{},{}\n",
            g.group_id,
            g.order,
            verdict(g.verdict_chief),
            verdict(g.verdict_huppert),
            verdict(g.verdict_thm1),
            g.agrees()
        );
    }
    out
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let limits = limits(cli.budget);
    match cli.command {
        Command::Analyze {
            path,
            catalog,
            witnesses,
            thm1_maximal_only,
        } => {
            let (id, g) = load(path, catalog, limits)?;
            let opts = ReportOptions {
                witnesses,
                thm1_mode: if thm1_maximal_only {
                    Thm1Mode::MaximalOnly
                } else {
                    Thm1Mode::AnySubgroup
                },
            };
            let report = criteria_report(&g, &id, opts);
            println!("{}", serde_json::to_string_pretty(&report)?);
            for (criterion, msg) in &report.errors {
                eprintln!("{criterion}: {msg}");
            }
            Ok(if report.disagrees() || report.has_consistency_error() {
                2
            } else if report.agrees() {
                0
            } else {
                1
            })
        }
        Command::Sweep {
            max_order,
            jobs,
            out,
            seed,
            csv: want_csv,
        } => {
            let config = SweepConfig {
                max_order,
                jobs,
                seed,
                limits,
                ..Default::default()
            };
            let report = run_sweep(&config);
            let json = serde_json::to_string_pretty(&report)?;
            match &out {
                Some(path) => fs::write(path, json + "\n")
                    .with_context(|| format!("writing {}", path.display()))?,
                None if !want_csv => println!("{json}"),
                None => {}
            }
            if want_csv {
                print!("{}", csv(&report));
            }
            for v in &report.violations {
                eprintln!("violation: {v}");
            }
            for e in &report.errors {
                eprintln!("error: {e}");
            }
            let s = &report.summary;
            eprintln!(
                "{} groups, {} agree, {} factorisations, {} violations, {} errors",
                s.groups_checked,
                s.agreements,
                s.corollary_cases,
                report.violations.len(),
                report.errors.len()
            );
            Ok(if !report.violations.is_empty() {
                2
            } else if report.is_clean() {
                0
            } else {
                1
            })
        }
        Command::List => {
            let mut stdout = std::io::stdout().lock();
            for e in standard_catalog() {
                writeln!(
                    stdout,
                    "{}\t{}\t{}",
                    e.name,
                    e.group.order(),
                    e.group.degree()
                )?;
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
