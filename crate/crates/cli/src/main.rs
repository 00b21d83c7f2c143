//! Command-line interface: cohomology computations, comparison maps,
//! crossed-extension verdicts and the verification suite.
//!
//! Exit codes: 0 success, 1 suite claim failure, 2 validation error, 3 size
//! or budget guard, 4 internal inconsistency.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use symcoh::cochain::Flavor;
use symcoh::cohomology;
use symcoh::crossed;
use symcoh::error::Error;
use symcoh::oracle::OracleBudget;
use symcoh::schema;
use symcoh::SizeGuard;
use symcoh_cli::output::{self, CohomologyOut, CompareOut, XmodOut};
use symcoh_cli::suite::{run_suite, SuiteConfig};

#[derive(Parser)]
#[command(
    name = "symcoh",
    about = "Classical, symmetric and exterior cohomology of finite groups, \
             and crossed-extension classification by symmetric sections",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the cohomology of (G, M) at one degree and flavor.
    Cohomology {
        /// Group: `cyclic:N` or a JSON document path.
        #[arg(long)]
        group: String,
        /// Module: `trivial:D`, `sign:D`, or a JSON document path.
        #[arg(long)]
        module: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value = "classical")]
        flavor: String,
        /// Also print representative cocycles.
        #[arg(long)]
        representatives: bool,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
        /// Override the size guard (cochain-space coordinate cap).
        #[arg(long, env = "SYMCOH_MAX_CELLS")]
        max_cells: Option<u64>,
    },
    /// Compute the map induced on cohomology by a flavor inclusion.
    Compare {
        #[arg(long)]
        group: String,
        #[arg(long)]
        module: String,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
        #[arg(long, env = "SYMCOH_MAX_CELLS")]
        max_cells: Option<u64>,
    },
    /// Crossed-extension commands.
    Xmod {
        #[command(subcommand)]
        sub: XmodCommand,
    },
    /// Run the full verification suite over the fixture corpus.
    Suite {
        /// Read fixtures from a directory instead of the built-in corpus.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Skip claims whose id contains this substring (repeatable).
        #[arg(long)]
        skip: Vec<String>,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
        #[arg(long, env = "SYMCOH_MAX_CELLS")]
        max_cells: Option<u64>,
        /// Enumeration cap for oracle claims and section searches.
        #[arg(long, env = "SYMCOH_BUDGET")]
        budget: Option<u64>,
    },
}

#[derive(Subcommand)]
enum XmodCommand {
    /// Validate a crossed-extension document.
    Verify { file: PathBuf, #[arg(long, value_enum, default_value = "human")] format: Format },
    /// Compute the degree-3 cocycle of the canonical section and decide its
    /// class.
    Cocycle {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
        #[arg(long, env = "SYMCOH_MAX_CELLS")]
        max_cells: Option<u64>,
    },
    /// Search for a symmetric s-section.
    FindSymmetricSection {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
        #[arg(long, env = "SYMCOH_BUDGET")]
        budget: Option<u64>,
    },
    /// Decide whether the extension class vanishes.
    SplitCheck {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
        #[arg(long, env = "SYMCOH_MAX_CELLS")]
        max_cells: Option<u64>,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::SizeGuard { .. } | Error::BudgetExceeded { .. } | Error::BudgetExhausted { .. } => 3,
        Error::InternalInconsistency(_) => 4,
        _ => 2,
    }
}

fn guard_from(max_cells: Option<u64>) -> SizeGuard {
    max_cells.map(SizeGuard::new).unwrap_or_default()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            let code = err
                .downcast_ref::<Error>()
                .map(exit_code_for)
                .unwrap_or(2);
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let cwd = std::env::current_dir()?;
    match cli.command {
        Command::Cohomology {
            group,
            module,
            degree,
            flavor,
            representatives,
            format,
            max_cells,
        } => {
            let g = schema::group_from_spec(&group, &cwd)?;
            let m = schema::module_from_spec(&module, g, &cwd)?;
            let flavor = Flavor::from_str(&flavor)?;
            let guard = guard_from(max_cells);
            let h = cohomology::cohomology(&m, degree, flavor, &guard)?;
            let doc = CohomologyOut::new(&group, &module, &h, representatives);
            match format {
                Format::Human => print!("{}", doc.human()),
                Format::Json => println!("{}", output::to_json(&doc)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare { group, module, degree, source, target, format, max_cells } => {
            let g = schema::group_from_spec(&group, &cwd)?;
            let m = schema::module_from_spec(&module, g, &cwd)?;
            let source = Flavor::from_str(&source)?;
            let target = Flavor::from_str(&target)?;
            let guard = guard_from(max_cells);
            let r = cohomology::comparison_map(&m, degree, source, target, &guard)?;
            let doc = CompareOut::new(&group, &module, &r);
            match format {
                Format::Human => print!("{}", doc.human()),
                Format::Json => println!("{}", output::to_json(&doc)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Xmod { sub } => run_xmod(sub),
        Command::Suite { fixtures, jobs, seed, skip, format, max_cells, budget } => {
            let cfg = SuiteConfig {
                fixtures_dir: fixtures,
                jobs,
                seed,
                skip,
                only: None,
                guard: guard_from(max_cells),
                oracle_budget: budget
                    .map(|b| OracleBudget { max_enumeration: b })
                    .unwrap_or_default(),
                search_budget: budget.unwrap_or(1_000_000),
            };
            let report = run_suite(&cfg)?;
            match format {
                Format::Human => print!("{}", report.human()),
                Format::Json => println!("{}", output::to_json(&report)),
            }
            if report.summary.fail > 0 {
                Ok(ExitCode::from(1))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
    }
}

fn run_xmod(sub: XmodCommand) -> anyhow::Result<ExitCode> {
    match sub {
        XmodCommand::Verify { file, format } => {
            let xe = schema::crossed_extension_from_file(&file)?;
            let doc = XmodOut {
                file: file.display().to_string(),
                command: "verify".into(),
                valid: Some(true),
                ..empty_xmod()
            };
            match format {
                Format::Human => println!(
                    "valid crossed extension: G of order {}, M of order {}, T of order {}, R of order {}",
                    xe.group().order(),
                    xe.module().size(),
                    xe.xm().t().order(),
                    xe.xm().r().order()
                ),
                Format::Json => println!("{}", output::to_json(&doc)),
            }
            Ok(ExitCode::SUCCESS)
        }
        XmodCommand::Cocycle { file, format, max_cells } => {
            let xe = schema::crossed_extension_from_file(&file)?;
            let guard = guard_from(max_cells);
            let sec = crossed::normalized_section(&xe);
            let f = crossed::three_cocycle(&xe, &sec)?;
            let symmetric = symcoh::cochain::is_member(xe.module(), &f, Flavor::Symmetric);
            let zero =
                cohomology::is_coboundary(xe.module(), &f, Flavor::Classical, &guard)?.is_some();
            let doc = XmodOut {
                file: file.display().to_string(),
                command: "cocycle".into(),
                cocycle: Some(f.values().to_vec()),
                cocycle_is_symmetric: Some(symmetric),
                class_is_zero: Some(zero),
                ..empty_xmod()
            };
            match format {
                Format::Human => {
                    println!("cocycle values (tuple-major): {:?}", f.values());
                    println!("symmetric: {symmetric}");
                    println!("class is zero: {zero}");
                }
                Format::Json => println!("{}", output::to_json(&doc)),
            }
            Ok(ExitCode::SUCCESS)
        }
        XmodCommand::FindSymmetricSection { file, format, budget } => {
            let xe = schema::crossed_extension_from_file(&file)?;
            let search = crossed::find_symmetric_section(&xe, budget.unwrap_or(1_000_000))?;
            let doc = XmodOut {
                file: file.display().to_string(),
                command: "find-symmetric-section".into(),
                symmetric_section_found: Some(search.section.is_some()),
                out_of_theorem_scope: Some(search.out_of_theorem_scope),
                section_s: search.section.as_ref().map(|s| s.s_table().to_vec()),
                section_sigma: search.section.as_ref().map(|s| s.sigma_table().to_vec()),
                ..empty_xmod()
            };
            match format {
                Format::Human => {
                    match &search.section {
                        Some(sec) => {
                            println!("symmetric section found");
                            println!("  s     = {:?}", sec.s_table());
                            println!("  sigma = {:?}", sec.sigma_table());
                        }
                        None => println!("no symmetric section exists"),
                    }
                    if search.out_of_theorem_scope {
                        println!("note: the base group has 2-torsion; the classification theorem does not apply");
                    }
                }
                Format::Json => println!("{}", output::to_json(&doc)),
            }
            Ok(ExitCode::SUCCESS)
        }
        XmodCommand::SplitCheck { file, format, max_cells } => {
            let xe = schema::crossed_extension_from_file(&file)?;
            let guard = guard_from(max_cells);
            let split = symcoh::twogroup::is_split(&xe, &guard)?;
            let doc = XmodOut {
                file: file.display().to_string(),
                command: "split-check".into(),
                class_is_zero: Some(split),
                ..empty_xmod()
            };
            match format {
                Format::Human => println!(
                    "{}",
                    if split { "splits (class is zero)" } else { "does not split (nonzero class)" }
                ),
                Format::Json => println!("{}", output::to_json(&doc)),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn empty_xmod() -> XmodOut {
    XmodOut {
        file: String::new(),
        command: String::new(),
        valid: None,
        cocycle: None,
        cocycle_is_symmetric: None,
        class_is_zero: None,
        symmetric_section_found: None,
        out_of_theorem_scope: None,
        section_s: None,
        section_sigma: None,
    }
}
