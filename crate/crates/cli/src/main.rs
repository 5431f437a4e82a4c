use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use planar_actions::catalog::{Catalog, GroupSpec};
use planar_actions::census::{self, CensusOptions, Mode};
use planar_actions::signature::{self, genus_of, Rational, Signature};

#[derive(Parser)]
#[command(
    name = "planar-actions",
    version,
    about = "Classify finite group actions on surfaces with planar signatures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the signatures admitted by Riemann-Hurwitz for a genus and order.
    SolveRh {
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        order: u64,
    },
    /// Count epimorphisms and their classes for one signature and group.
    Classify {
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        order: u64,
        /// Signature as `0;m1,m2,...`.
        #[arg(long)]
        signature: String,
        /// Built-in spec such as `dihedral(4)`, or `order:id` from the catalog.
        #[arg(long)]
        group: String,
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModeArg::Equiv)]
        mode: ModeArg,
        /// Print one representative per class.
        #[arg(long)]
        reps: bool,
    },
    /// Run the census over a range of genera.
    Census {
        #[arg(long)]
        genus_min: u64,
        #[arg(long)]
        genus_max: u64,
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also record signature/group pairs with no epimorphism.
        #[arg(long)]
        include_empty: bool,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Re-check every row of a census file.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Needed to rebuild external groups for the group-dependent checks.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Compare the counts of two census files.
    Diff {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Epi,
    Sequi,
    Equiv,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Epi => Mode::Epi,
            ModeArg::Sequi => Mode::Sequi,
            ModeArg::Equiv => Mode::Equiv,
        }
    }
}

/// Input problems exit with 2, failed checks with 1.
enum Outcome {
    Success,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load_catalog(path: Option<&Path>) -> Result<Catalog> {
    match path {
        Some(p) => Catalog::load(p).with_context(|| format!("loading catalog {}", p.display())),
        None => Ok(Catalog::empty()),
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::SolveRh { genus, order } => {
            for sig in signature::solve_signatures(genus, order)? {
                println!("{sig}");
            }
            Ok(Outcome::Success)
        }
        Command::Classify {
            genus,
            order,
            signature,
            group,
            catalog,
            mode,
            reps,
        } => {
            let catalog = load_catalog(catalog.as_deref())?;
            let sig: Signature = signature
                .parse()
                .with_context(|| format!("signature {signature:?}"))?;
            let spec: GroupSpec = group.parse()?;
            let table = catalog.realize(&spec)?;
            if table.order() as u64 != order {
                bail!("group {group} has order {}, not {order}", table.order());
            }
            signature::hurwitz_bound(genus)?;
            let g = genus_of(&sig, order);
            if g != Rational::from_integer(genus as i64) {
                bail!("signature {sig} with order {order} gives genus {g}, not {genus}");
            }
            let auts = || Arc::new(table.automorphisms());
            let c = census::classify(&table, &sig, mode.into(), usize::MAX, &auts)?;
            println!("epi {}", c.epi);
            if let Some(s) = c.sequi {
                println!("sequi {s}");
            }
            if let Some(e) = c.equiv {
                println!("equiv {e}");
            }
            if reps {
                let list = match mode {
                    ModeArg::Equiv => &c.representatives,
                    _ => &c.strong_representatives,
                };
                for v in list {
                    let entries: Vec<String> = v.entries().iter().map(|x| x.to_string()).collect();
                    println!("[{}]", entries.join(","));
                }
            }
            Ok(Outcome::Success)
        }
        Command::Census {
            genus_min,
            genus_max,
            catalog,
            out,
            include_empty,
            jobs,
        } => {
            if genus_min < 2 || genus_max < genus_min {
                bail!("need 2 <= genus-min <= genus-max");
            }
            let catalog = load_catalog(catalog.as_deref())?;
            let options = CensusOptions {
                include_empty,
                jobs,
                ..CensusOptions::default()
            };
            let rows = census::run_census(genus_min..=genus_max, &catalog, &options)?;
            match out {
                Some(path) => census::emit(&rows, &path)?,
                None => print!("{}", census::to_canonical_json(&rows)),
            }
            Ok(Outcome::Success)
        }
        Command::Verify { input, catalog } => {
            let catalog = catalog.map(|p| load_catalog(Some(&p))).transpose()?;
            let rows = census::load(&input)?;
            let report = census::verify_rows(&rows, catalog.as_ref());
            print!("{report}");
            Ok(if report.passed() {
                Outcome::Success
            } else {
                Outcome::Failed
            })
        }
        Command::Diff { a, b } => {
            let report = census::diff_files(&a, &b)?;
            print!("{report}");
            Ok(if report.is_empty() {
                Outcome::Success
            } else {
                Outcome::Failed
            })
        }
    }
}
