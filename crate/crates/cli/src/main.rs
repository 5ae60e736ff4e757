//! `esnlab`: checks, conversions and exhaustive searches for finite inverse
//! and double inverse semigroups.

mod commands;
mod report;
mod suite;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{Artifact, Clock, InputError, Report};

#[derive(Parser)]
#[command(name = "esnlab", version, about = "Finite inverse semigroups, inductive groupoids and double inverse semigroups")]
struct Cli {
    /// Output format of the report.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for parallel scans.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
    /// Write the produced structure to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Check properties of a table or a pair of tables.
    Check(CheckArgs),
    /// Convert between inverse semigroups and inductive groupoids.
    Esn {
        #[command(subcommand)]
        command: EsnCommand,
    },
    /// Convert and validate double inverse semigroups and double groupoids.
    Double {
        #[command(subcommand)]
        command: DoubleCommand,
    },
    /// Split a double inverse semigroup into a presheaf of Abelian groups.
    Decompose(PairArgs),
    /// Rebuild a double inverse semigroup from a presheaf document.
    Compose { path: PathBuf },
    /// Enumerate semigroups or double semigroups of a given order.
    Search(SearchArgs),
    /// Replay every bundled fixture.
    #[command(alias = "paper-suite")]
    FixtureSuite {
        /// Fixture directory; defaults to $ESNLAB_FIXTURES or the bundled one.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

/// A pair given as one file holding two tables or as two files.
#[derive(Args, Clone)]
pub struct PairArgs {
    #[arg(conflicts_with_all = ["hop", "vop"])]
    pub path: Option<PathBuf>,
    /// Table of the horizontal operation.
    #[arg(long, requires = "vop")]
    pub hop: Option<PathBuf>,
    /// Table of the vertical operation.
    #[arg(long, requires = "hop")]
    pub vop: Option<PathBuf>,
}

#[derive(Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub input: PairArgs,
    #[arg(long)]
    pub semigroup: bool,
    #[arg(long)]
    pub inverse: bool,
    #[arg(long)]
    pub commutative: bool,
    #[arg(long)]
    pub clifford: bool,
    #[arg(long)]
    pub double: bool,
    #[arg(long)]
    pub double_inverse: bool,
}

#[derive(Subcommand)]
pub enum EsnCommand {
    /// Inverse semigroup table to inductive groupoid document.
    ToGroupoid {
        path: PathBuf,
        #[arg(long)]
        roundtrip: bool,
    },
    /// Inductive groupoid document to inverse semigroup table.
    ToSemigroup {
        path: PathBuf,
        #[arg(long)]
        roundtrip: bool,
    },
}

#[derive(Subcommand)]
pub enum DoubleCommand {
    /// Double inverse semigroup to double groupoid document.
    ToDig(PairArgs),
    /// Double groupoid document to double semigroup tables.
    ToDis { path: PathBuf },
    /// Check every compatibility axiom of a double groupoid (a `.json`
    /// document, or the groupoid of a pair).
    ValidateAxioms {
        #[command(flatten)]
        input: PairArgs,
        /// Read axiom ix.g with the vertical domain of e.
        #[arg(long)]
        strict_axiom_ix: bool,
    },
    /// Re-check the interchange law through its step-by-step derivation.
    #[command(alias = "verify-appb")]
    VerifyInterchange(PairArgs),
    /// Both round trips between pairs and double groupoids.
    Roundtrip(PairArgs),
}

#[derive(Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub order: usize,
    /// all, inverse or commutative-inverse; semigroup or inverse with --pairs.
    #[arg(long, default_value = "inverse")]
    pub class: String,
    /// Enumerate pairs satisfying interchange instead of single tables.
    #[arg(long)]
    pub pairs: bool,
    /// Keep only non-commutative inverse tables.
    #[arg(long, conflicts_with = "pairs")]
    pub noncommutative: bool,
    /// Fail if a proper pair (or, without --pairs, any table) is found.
    #[arg(long)]
    pub expect_none: bool,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.into()).build_global() {
            eprintln!("error: {e}");
            return 2;
        }
    }
    let clock = Clock::start();
    let outcome = match &cli.command {
        Command::Check(a) => commands::check(a),
        Command::Esn { command } => commands::esn(command),
        Command::Double { command } => commands::double(command),
        Command::Decompose(a) => commands::decompose(a),
        Command::Compose { path } => commands::compose(path),
        Command::Search(a) => commands::search(a),
        Command::FixtureSuite { fixtures } => suite::run(report::fixture_dir(fixtures.clone())),
    };
    match outcome.and_then(|mut r| {
        clock.stamp(&mut r);
        emit(&cli, &r).map(|_| r.exit_code())
    }) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn emit(cli: &Cli, r: &Report) -> Result<(), InputError> {
    if let Some(path) = &cli.out {
        let a = r.artifact.as_ref().ok_or_else(|| InputError(format!("{} produces no file", r.command)))?;
        std::fs::write(path, a.text()).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    }
    let text = match cli.format {
        Format::Text => r.render_text(cli.out.is_none()),
        Format::Json => {
            let mut r_json = serde_json::to_value(r).expect("reports serialize");
            if let (None, Some(a)) = (&cli.out, &r.artifact) {
                let value = match a {
                    Artifact::Json(s) => serde_json::from_str(s).expect("artifacts are valid JSON"),
                    Artifact::Text(s) => serde_json::Value::String(s.clone()),
                };
                r_json["artifact"] = value;
            }
            let mut s = serde_json::to_string_pretty(&r_json).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Dot => r.dot.clone().ok_or_else(|| InputError(format!("{} has no DOT rendering", r.command)))?,
    };
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes());
    Ok(())
}
