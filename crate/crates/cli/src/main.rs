//! `totprim`: total primitivity checks, decompositions, certified coprime
//! value streams and empirical scanners from the command line.
//!
//! Exit codes: 0 success, 2 hypothesis violated, 3 effort exhausted,
//! 1 anything else.

mod commands;
mod config;
mod table;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use config::Config;

#[derive(Parser, Debug)]
#[command(name = "totprim", version, about = "Totally primitive polynomials over PIDs")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Coefficient ring: `z`, `fpt:<p>` (𝔽_p[t]) or `zloc:<p>` (ℤ localized at p).
    #[arg(long, global = true, default_value = "z")]
    pub ring: String,
    /// Print JSON instead of text tables.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized splitting over 𝔽_p[t].
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for scans.
    #[arg(long, global = true, env = "TOTPRIM_JOBS", default_value_t = 1,
          value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub jobs: u64,
    /// Candidates tried by each generator scan.
    #[arg(long, global = true, env = "TOTPRIM_SCAN_CAP", default_value_t = 10_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub scan_cap: u64,
    /// Largest residue system enumerated by the generator.
    #[arg(long, global = true, env = "TOTPRIM_RESIDUE_CAP", default_value_t = 1 << 20,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub residue_cap: u64,
    /// Trial division bound for integer factorization.
    #[arg(long, global = true, env = "TOTPRIM_TRIAL_BOUND", default_value_t = 1_000_000,
          value_parser = clap::value_parser!(u64).range(2..))]
    pub trial_bound: u64,
    /// Pollard–Brent iterations per integer before giving up.
    #[arg(long, global = true, env = "TOTPRIM_RHO_ITERATIONS", default_value_t = 20_000_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub rho_iterations: u64,
    /// Largest degree factored over ℚ.
    #[arg(long, global = true, env = "TOTPRIM_DEGREE_CAP", default_value_t = 12,
          value_parser = clap::value_parser!(u64).range(1..=64))]
    pub degree_cap: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide total primitivity and list the obstruction primes.
    Check {
        #[arg(long)]
        poly: String,
        /// Restrict to the progression `a + b*k`, given as `a,b`.
        #[arg(long)]
        prog: Option<String>,
    },
    /// Split Q as (A/B)·P with P totally primitive.
    Decompose {
        #[arg(long)]
        poly: String,
    },
    /// Canonical totally primitive factorization over ℚ (ring z only).
    Factor {
        #[arg(long)]
        poly: String,
    },
    /// Emit arguments with pairwise coprime, locally square-free values.
    Generate {
        /// Polynomials, comma separated or repeated.
        #[arg(long, num_args = 1.., value_delimiter = ',', required = true)]
        polys: Vec<String>,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// 1-based indices whose values must be coprime to each other (default: all).
        #[arg(long, value_delimiter = ',')]
        coprime: Option<Vec<usize>>,
        /// 1-based indices that get a witness prime (default: the separable ones).
        #[arg(long, value_delimiter = ',')]
        witness: Option<Vec<usize>>,
        #[arg(long, value_enum)]
        sign: Option<SignArg>,
        /// Ring elements every emitted value must be coprime to.
        #[arg(long, value_delimiter = ',')]
        avoid: Vec<String>,
        /// Emit only arguments `a + b*k`, given as `a,b`.
        #[arg(long)]
        prog: Option<String>,
    },
    /// Greedy subset of a sample with pairwise coprime product values.
    Extract {
        #[arg(long, num_args = 1.., value_delimiter = ',', required = true)]
        polys: Vec<String>,
        /// Integer range `lo..hi` (inclusive).
        #[arg(long, conflicts_with = "values")]
        sample: Option<String>,
        /// Explicit ring elements, comma separated.
        #[arg(long, value_delimiter = ',')]
        values: Vec<String>,
    },
    /// Count square-free or prime values over a range.
    Scan {
        #[arg(long, value_enum, default_value = "squarefree")]
        mode: ScanMode,
        #[arg(long)]
        poly: String,
        /// Integer range `lo..hi` (inclusive).
        #[arg(long)]
        range: Option<String>,
        /// Over 𝔽_p[t]: scan every polynomial of degree at most this.
        #[arg(long)]
        maxdeg: Option<u32>,
    },
    /// Factor f^(4p) + t^a over 𝔽_p[t] for every nonzero f up to a degree.
    Swan {
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 5)]
        a: u64,
        #[arg(long, default_value_t = 3)]
        maxdeg: u32,
    },
    /// Check that P takes only unit values over ℤ localized at p.
    Locunit {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        poly: String,
        /// Elements of ℤ_(p), comma separated (`1/2` allowed).
        #[arg(long, value_delimiter = ',', default_value = "0,1,-1,2,1/2")]
        samples: Vec<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum SignArg {
    Positive,
    Negative,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ScanMode {
    Squarefree,
    Prime,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Decompose { .. } => "decompose",
            Command::Factor { .. } => "factor",
            Command::Generate { .. } => "generate",
            Command::Extract { .. } => "extract",
            Command::Scan { .. } => "scan",
            Command::Swan { .. } => "swan",
            Command::Locunit { .. } => "locunit",
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cfg = match Config::from_args(&cli.global) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let name = cli.command.name();
    match commands::run(&cfg, &cli.command) {
        Ok(out) => {
            if cfg.json {
                let doc = json!({"config": cfg.header(), "command": name, "result": out.json});
                println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(fail) => {
            let code = fail.code();
            if cfg.json {
                let mut err = json!({"code": code, "message": fail.error.to_string()});
                if let Some(p) = &fail.partial {
                    err["partial"] = p.clone();
                }
                let doc = json!({"config": cfg.header(), "command": name, "error": err});
                println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
            }
            eprintln!("error: {}", fail.error);
            ExitCode::from(code)
        }
    }
}
