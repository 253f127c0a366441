mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use config::{FileConfig, Settings};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

/// Exit codes: 0 pass, 1 verification failure, 2 usage or parse error,
/// 3 resource cap hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Failed = 1,
    Usage = 2,
    Cap = 3,
}

#[derive(Parser, Debug)]
#[command(name = "symper", version, about = "Closed classes generated by symmetric periodic functions of three-valued logic")]
struct Cli {
    /// Output format [default: text, or the config file's choice]
    #[arg(long, global = true)]
    format: Option<Format>,
    /// TOML config file with caps and suite sizes
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(flatten)]
    caps: CapFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CapFlags {
    /// Variable cap for closure and oracle runs (at most 6)
    #[arg(long, global = true)]
    max_nvars: Option<usize>,
    /// Generator arity cap
    #[arg(long, global = true)]
    max_arity: Option<usize>,
    /// Derived-set size cap
    #[arg(long, global = true)]
    max_derived: Option<usize>,
    /// Formula depth cap
    #[arg(long, global = true)]
    max_depth: Option<usize>,
    /// Formula node cap
    #[arg(long, global = true)]
    max_nodes: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Detect the period of a function literal
    Period { literal: String },
    /// Build periodic(n, d, t) and print it in every literal form
    Mkfn { n: u64, d: u64, t: u64 },
    /// Evaluate a function literal, or a formula over a signature, at a tuple
    Eval {
        /// Function literal or s-expression formula
        target: String,
        /// Tuple over {0,1,2}, e.g. 2,1,1 or 211
        tuple: String,
        /// Signature file (`name := <literal>` per line)
        #[arg(long)]
        sig: Option<PathBuf>,
    },
    /// Decide f ∈ [G] by the criteria, the closure oracle, or both
    Member {
        f: String,
        /// Generators; the criteria need exactly one
        #[arg(required = true)]
        g: Vec<String>,
        /// Add I to the generators
        #[arg(long)]
        with_i: bool,
        /// Use the closure oracle only
        #[arg(long, conflicts_with = "both")]
        oracle: bool,
        /// Run criteria and oracle; a disagreement fails
        #[arg(long)]
        both: bool,
    },
    /// Compute [G] on x1..xN
    Closure {
        #[arg(required = true)]
        g: Vec<String>,
        #[arg(long, default_value_t = 2)]
        nvars: usize,
        /// Print witnesses for every derived function
        #[arg(long)]
        witnesses: bool,
    },
    /// Θ(Φ) and its occurrences
    Theta {
        formula: String,
        #[arg(long)]
        sig: Option<PathBuf>,
        /// Variable count [default: largest variable index]
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// Normalize the i-functions of a formula
    Rewrite {
        formula: String,
        #[arg(long)]
        sig: Option<PathBuf>,
    },
    /// Classify a family descriptor (JSON file)
    Classify { descriptor: PathBuf },
    /// Extract a finite basis from periodic function literals
    Basis {
        /// The prime all periods are powers of
        #[arg(long)]
        p: u64,
        #[arg(required = true)]
        g: Vec<String>,
    },
    /// Run verification suites
    Verify {
        /// Suite name or `all`
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        max_n: Option<u64>,
        #[arg(long)]
        max_m: Option<u64>,
        #[arg(long)]
        max_l: Option<u64>,
        /// Random formulas for the formula suites
        #[arg(long)]
        formulas: Option<usize>,
        /// Random descriptors for the classifier suite
        #[arg(long)]
        descriptors: Option<usize>,
        /// Random families for the extraction suite
        #[arg(long)]
        families: Option<usize>,
    },
}

fn settings(cli: &Cli) -> Result<Settings, String> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let mut s = Settings::from_file(file)?;
    if let Some(f) = cli.format {
        s.format = f;
    }
    let c = &cli.caps;
    if let Some(v) = c.max_nvars {
        s.caps.max_nvars = v;
    }
    if let Some(v) = c.max_arity {
        s.caps.max_arity = v;
    }
    if let Some(v) = c.max_derived {
        s.caps.max_derived = v;
    }
    if let Some(v) = c.max_depth {
        s.formula.max_depth = v;
    }
    if let Some(v) = c.max_nodes {
        s.formula.max_nodes = v;
    }
    s.check()?;
    Ok(s)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = match settings(&cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(Status::Usage as u8);
        }
    };
    let out = commands::run(&cli.command, &settings);
    match settings.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
        Format::Text => {
            if !out.text.is_empty() {
                println!("{}", out.text.trim_end());
            }
        }
    }
    if let Some(e) = &out.error {
        eprintln!("error: {e}");
    }
    ExitCode::from(out.status as u8)
}
