//! `packlab`: command-line front end. Every command prints JSON on stdout.
//!
//! Exit status is 0 on success, 1 on a domain error (printed as
//! `{"error": code, "detail": ...}`) or a failed verification, and 2 on
//! usage errors.

mod commands;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use commands::{Failure, Inputs};

#[derive(Parser, Debug)]
#[command(
    name = "packlab",
    version,
    about = "Exact iterative packing for column-sparse PIPs"
)]
struct Cli {
    /// Wrap the output in a run report with input digest and wall time.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and check an instance.
    Validate { file: String },
    /// Solve the natural LP relaxation exactly.
    Lp {
        file: String,
        /// Per-edge objective `{"edge": "p/q"}`; defaults to the weights.
        #[arg(long)]
        costs: Option<String>,
    },
    /// Run an approximation algorithm and emit its decomposition.
    Approx {
        algorithm: AlgorithmArg,
        /// Instance file, `-` for stdin. Omit together with `--random`.
        file: Option<String>,
        /// Record the blocking analysis of every insertion.
        #[arg(long)]
        audit: bool,
        /// Fractional point for `matching`; defaults to the LP optimum.
        #[arg(long)]
        x: Option<String>,
        #[command(flatten)]
        batch: Batch,
    },
    /// Decompose α·x into feasible integral solutions by iterative packing.
    Decompose {
        file: String,
        #[arg(long)]
        alpha: String,
        /// Fractional point; defaults to the LP optimum.
        #[arg(long)]
        x: Option<String>,
        /// Removal order.
        #[arg(long, value_enum, default_value_t = OrderArg::Monotone)]
        order: OrderArg,
    },
    /// Exact integral optimum by exhaustive search.
    Oracle {
        file: String,
        #[arg(long, default_value_t = packlab::oracle::DEFAULT_EDGE_LIMIT)]
        max_edges: usize,
    },
    /// LP optimum over IP optimum.
    Gap {
        file: Option<String>,
        #[arg(long, default_value_t = packlab::oracle::DEFAULT_EDGE_LIMIT)]
        max_edges: usize,
        #[command(flatten)]
        batch: Batch,
    },
    /// Generate an instance.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Check a decomposition against an instance.
    Verify {
        instance: String,
        /// A decomposition, or any output carrying one under `decomposition`.
        decomposition: String,
        /// Expected α; defaults to the one recorded in the file.
        #[arg(long)]
        alpha: Option<String>,
        /// Fractional point; defaults to the one in the file, then the LP optimum.
        #[arg(long)]
        x: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum AlgorithmArg {
    Khdm,
    Bmatching,
    Matching,
    Twocs,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum OrderArg {
    Monotone,
    Index,
}

#[derive(Args, Debug, Clone)]
pub struct RandomArgs {
    /// Largest edge size.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 6)]
    pub vertices: usize,
    #[arg(long, default_value_t = 10)]
    pub edges: usize,
    #[arg(long, default_value_t = 5)]
    pub max_demand: u64,
    #[arg(long, default_value_t = 10)]
    pub max_capacity: u64,
    #[arg(long, default_value_t = 10)]
    pub max_weight: u64,
    /// Give all endpoints of an edge the same demand.
    #[arg(long)]
    pub uniform: bool,
}

impl RandomArgs {
    pub fn params(&self) -> packlab::oracle::RandomParams {
        packlab::oracle::RandomParams {
            k: self.k,
            vertices: self.vertices,
            edges: self.edges,
            max_demand: self.max_demand,
            max_capacity: self.max_capacity,
            max_weight: self.max_weight,
            uniform_demand: self.uniform,
        }
    }
}

/// Runs on generated instances instead of a file; trial `i` uses seed `seed + i`.
#[derive(Args, Debug, Clone)]
pub struct Batch {
    #[arg(long, conflicts_with = "file")]
    pub random: bool,
    #[arg(long, default_value_t = 0, requires = "random")]
    pub seed: u64,
    #[arg(long, default_value_t = 1, requires = "random")]
    pub trials: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0, requires = "random")]
    pub jobs: usize,
    #[command(flatten)]
    pub params: RandomArgs,
}

#[derive(Subcommand, Debug)]
enum Family {
    /// Demand triangle `T_d`.
    Triangle {
        #[arg(long)]
        d: u64,
    },
    /// Projective plane of prime order `q`.
    Plane {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: u64,
    },
    /// Seeded random instance.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        params: RandomArgs,
    },
    /// Knapsack as a star.
    Star {
        #[arg(long)]
        capacity: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        demands: Vec<u64>,
        /// Rationals `p/q`, one per item.
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<String>,
    },
}

fn dispatch(command: &Command, inputs: &mut Inputs) -> Result<commands::Output, Failure> {
    match command {
        Command::Validate { file } => commands::validate(inputs, file),
        Command::Lp { file, costs } => commands::lp(inputs, file, costs.as_deref()),
        Command::Approx {
            algorithm,
            file,
            audit,
            x,
            batch,
        } => commands::approx(
            inputs,
            *algorithm,
            file.as_deref(),
            *audit,
            x.as_deref(),
            batch,
        ),
        Command::Decompose {
            file,
            alpha,
            x,
            order,
        } => commands::decompose(inputs, file, alpha, x.as_deref(), *order),
        Command::Oracle { file, max_edges } => commands::oracle(inputs, file, *max_edges),
        Command::Gap {
            file,
            max_edges,
            batch,
        } => commands::gap(inputs, file.as_deref(), *max_edges, batch),
        Command::Gen { family } => match family {
            Family::Triangle { d } => commands::gen_triangle(*d),
            Family::Plane { q, d } => commands::gen_plane(*q, *d),
            Family::Random { seed, params } => commands::gen_random(params, *seed),
            Family::Star {
                capacity,
                demands,
                weights,
            } => commands::gen_star(*capacity, demands, weights),
        },
        Command::Verify {
            instance,
            decomposition,
            alpha,
            x,
        } => commands::verify(
            inputs,
            instance,
            decomposition,
            alpha.as_deref(),
            x.as_deref(),
        ),
    }
}

fn print(value: &Value) {
    let mut out = std::io::stdout().lock();
    let text = serde_json::to_string_pretty(value).expect("JSON serializes");
    // A closed pipe is not worth a panic.
    let _ = writeln!(out, "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let mut inputs = Inputs::default();
    let result = dispatch(&cli.command, &mut inputs);
    let (body, ratios, status) = match result {
        Ok(out) => (out.value, out.ratios, out.status),
        Err(failure) => (failure.to_json(), Vec::new(), 1),
    };
    let value = if cli.timing {
        let argv: Vec<String> = std::env::args().skip(1).collect();
        json!({
            "command": argv.join(" "),
            "input_digest": inputs.digest(),
            "output": body,
            "ratios": Value::Object(
                ratios.into_iter().map(|(k, v)| (k, Value::String(v))).collect()
            ),
            "elapsed_us": started.elapsed().as_micros() as u64,
        })
    } else {
        body
    };
    print(&value);
    ExitCode::from(status)
}
