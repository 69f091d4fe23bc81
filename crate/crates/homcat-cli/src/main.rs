//! `homcat`: command-line front end.
//!
//! Exit codes: 0 success, 2 parse error, 3 precondition, 4 budget,
//! 5 verification failure.

mod abelian;
mod ext;
mod group;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use homcat::grphom::BarConfig;
use serde::Deserialize;

use report::Report;

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Lib(homcat::Error),
}

impl From<homcat::Error> for CliError {
    fn from(e: homcat::Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use homcat::Error as E;
        match self {
            CliError::Parse(_) => 2,
            CliError::Lib(E::Precondition(_) | E::DegreeOutOfRange { .. }) => 3,
            CliError::Lib(E::Budget(_)) => 4,
            CliError::Lib(E::Consistency(_)) => 5,
            CliError::Lib(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Parse(m) => format!("parse error: {m}"),
            CliError::Lib(e) => e.to_string(),
        }
    }
}

#[derive(Parser)]
#[command(name = "homcat", version, about = "Exact homological algebra for abelian and finite groups")]
struct Cli {
    /// Print a JSON report (command, input digests, configuration, results).
    #[arg(long, global = true)]
    report: bool,
    /// JSON file with `max_tuples` and `max_entry_bits`.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Largest bar-complex basis in any degree.
    #[arg(long, global = true)]
    max_tuples: Option<usize>,
    /// Coefficient growth cap for integral elimination, in bits.
    #[arg(long, global = true)]
    max_entry_bits: Option<u32>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Finitely generated abelian groups and chain complexes.
    Abelian {
        #[command(subcommand)]
        cmd: abelian::Cmd,
    },
    /// Finite groups given by Cayley tables or permutations.
    Group {
        #[command(subcommand)]
        cmd: group::Cmd,
    },
    /// Extensions of finite groups.
    Ext {
        #[command(subcommand)]
        cmd: ext::Cmd,
    },
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    max_tuples: Option<usize>,
    max_entry_bits: Option<u32>,
}

pub struct Ctx {
    pub cfg: BarConfig,
    pub inputs: input::Inputs,
}

fn configure(cli: &Cli, inputs: &mut input::Inputs) -> Result<BarConfig, CliError> {
    let mut cfg = BarConfig::default();
    if let Some(p) = &cli.config {
        let file: ConfigFile = inputs.load(p)?.parse()?;
        cfg.max_tuples = file.max_tuples.unwrap_or(cfg.max_tuples);
        cfg.max_entry_bits = file.max_entry_bits.unwrap_or(cfg.max_entry_bits);
    }
    cfg.max_tuples = cli.max_tuples.unwrap_or(cfg.max_tuples);
    cfg.max_entry_bits = cli.max_entry_bits.unwrap_or(cfg.max_entry_bits);
    if !(8..=62).contains(&cfg.max_entry_bits) {
        return Err(CliError::Parse("max_entry_bits must lie in 8..=62".into()));
    }
    Ok(cfg)
}

fn threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("HOMCAT_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| CliError::Parse(format!("HOMCAT_THREADS={v:?} is not a number")))?;
    // a second initialisation only happens in tests; ignore it
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    Ok(())
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    threads()?;
    let mut inputs = input::Inputs::default();
    let cfg = configure(cli, &mut inputs)?;
    let mut ctx = Ctx { cfg, inputs };
    let mut rep = Report::default();
    match &cli.cmd {
        Cmd::Abelian { cmd } => abelian::run(cmd, &mut ctx, &mut rep)?,
        Cmd::Group { cmd } => group::run(cmd, &mut ctx, &mut rep)?,
        Cmd::Ext { cmd } => ext::run(cmd, &mut ctx, &mut rep)?,
    }
    rep.inputs = std::mem::take(&mut ctx.inputs.seen);
    rep.config = ctx.cfg;
    Ok(rep)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(rep) => {
            if cli.report {
                let argv: Vec<String> = std::env::args().skip(1).collect();
                println!("{}", rep.to_json(&argv));
            } else {
                for l in &rep.lines {
                    println!("{l}");
                }
            }
            if rep.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(5)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
