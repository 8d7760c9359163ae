//! `iwahori`: reduction trees, dimensions, component counts and theorem
//! checks for affine Deligne–Lusztig varieties of split groups.
//!
//! Exit status: 0 on success, 1 when a check finds a mismatch (or an
//! internal certification fails), 2 on configuration or resource errors.

mod config;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use iwahori::Error;

use config::{CommonArgs, RunConfig};
use output::Report;

#[derive(Parser, Debug)]
#[command(name = "iwahori", version, about = "Reduction trees and ADLV dimension bookkeeping")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Reduction tree of an element (json, table or dot).
    Tree,
    /// Virtual dimension, dimension and top-component count per class.
    Dims,
    /// Weighted component count with user-supplied n values.
    Components,
    /// Cordial / very-special classification of every reduction path.
    Classify,
    /// Theorem checks.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Check {
    /// Component count at w₀t^μ against the dual weight multiplicity.
    Chi,
    /// Superregular nonemptiness and dimension predictions.
    Superregular,
    /// Dimension bound, strategy invariance and very-special law on all
    /// elements up to a length.
    Invariants,
}

fn run(command: Command, cfg: &RunConfig) -> iwahori::Result<Report> {
    match command {
        Command::Tree => output::tree(cfg),
        Command::Dims => output::dims(cfg),
        Command::Components => output::components(cfg),
        Command::Classify => output::classify(cfg),
        Command::Verify { check: Check::Chi } => output::verify_chi(cfg),
        Command::Verify { check: Check::Superregular } => output::verify_superregular(cfg),
        Command::Verify { check: Check::Invariants } => output::verify_invariants(cfg),
    }
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Certification(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match RunConfig::resolve(cli.common) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: configuration error: {msg}");
            return ExitCode::from(2);
        }
    };
    let report = match run(cli.command, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_for(&e));
        }
    };
    let text = match report.render(cfg.format) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(path) = &cfg.golden {
        if cfg.write_golden {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        } else {
            match std::fs::read_to_string(path) {
                Ok(expected) if expected == text => {}
                Ok(_) => {
                    print!("{text}");
                    eprintln!("error: output differs from golden file {}", path.display());
                    return ExitCode::from(1);
                }
                Err(e) => {
                    eprintln!("error: cannot read golden file {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
        }
    }
    print!("{text}");
    if report.failed {
        eprintln!("check failed: {}", report.summary);
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
