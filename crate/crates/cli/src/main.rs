mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use multirees::algebra::OrderVariant;
use multirees::export::SCHEMA_VERSION;
use multirees::oracle::DEFAULT_CAP;
use multirees::{Error, Instance, Model, Options};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use commands::{Outcome, Verdict};

#[derive(Parser, Debug)]
#[command(name = "multirees", version, about = "Groebner bases of multi-Rees algebras and multi-fiber rings of powers of monomial prime ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Term order variant; overrides the instance file.
    #[arg(long = "order-variant", global = true)]
    order_variant: Option<OrderVariant>,

    /// Order of the x-variables, largest first, e.g. `3,1,2`; overrides the
    /// instance file.
    #[arg(long, global = true, value_delimiter = ',')]
    xorder: Option<Vec<usize>>,

    /// Bound on the size of any enumerated fiber.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    M2,
    Dot,
}

#[derive(Args, Debug)]
struct InstanceArg {
    /// Instance file (JSON).
    instance: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Method {
    Buchberger,
    Sink,
    Oracle,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the quasi-matrix C_a.
    Matrix(InstanceArg),
    /// Groebner basis of the multi-Rees kernel.
    Gb {
        #[command(flatten)]
        input: InstanceArg,
        /// Print the generating set (x-minors and fiber basis) instead.
        #[arg(long)]
        generators: bool,
    },
    /// Groebner basis of the multi-fiber kernel.
    FiberGb(InstanceArg),
    /// Certify the basis with one or more methods.
    Verify {
        #[command(flatten)]
        input: InstanceArg,
        #[arg(long, value_enum, value_delimiter = ',', required = true)]
        method: Vec<Method>,
        /// Largest total degree examined by `sink` and `oracle`.
        #[arg(long)]
        degcap: Option<u32>,
        /// Check the fiber basis against the fiber kernel.
        #[arg(long)]
        fiber: bool,
    },
    /// Reduced Groebner basis.
    ReducedGb {
        #[command(flatten)]
        input: InstanceArg,
        #[arg(long)]
        fiber: bool,
    },
    /// Chordality of the incidence graph.
    Chordal {
        #[command(flatten)]
        input: InstanceArg,
        /// Decide via a doubly lexical ordering instead of cycle search.
        #[arg(long = "gamma-free")]
        gamma_free: bool,
    },
    /// Cycles of the cycle graph and their binomials.
    Cycles {
        #[command(flatten)]
        input: InstanceArg,
        #[arg(long = "max-len")]
        max_len: Option<usize>,
        /// Leave out the unit vertex (multi-fiber ring).
        #[arg(long)]
        fiber: bool,
    },
    /// Non-Koszul witness from a long chordless cycle.
    Koszul(InstanceArg),
    /// Rewrite a binary quasi-minor in terms of 2x2 minors.
    FiberType {
        #[command(flatten)]
        input: InstanceArg,
        /// Binomial such as `x2*T[x2*x3,t2]*T[x1^2,t3] - x1*T[x2^2,t2]*T[x1*x3,t3]`.
        binomial: String,
    },
    /// Run every reference case.
    #[command(name = "paper-examples")]
    Examples {
        /// Only these case ids.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<u32>>,
        /// Include wall-clock times (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Certify bases of random instances.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        degcap: u32,
    },
}

/// Failure kinds mapped to exit status 2.
fn input_error(e: anyhow::Error) -> ExitCode {
    eprintln!("error: {e:#}");
    ExitCode::from(2)
}

fn load(path: &PathBuf, cli: &Cli) -> anyhow::Result<(Model, Options, String)> {
    let src = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let (inst, mut options) = Instance::parse_json(&src).with_context(|| format!("{}", path.display()))?;
    if let Some(v) = cli.order_variant {
        options.order_variant = Some(v);
    }
    if let Some(xo) = &cli.xorder {
        options.xorder = Some(xo.clone());
    }
    let hash = hex::encode(Sha256::digest(inst.to_json().as_bytes()));
    let model = Model::with_options(inst, &options)?;
    Ok((model, options, hash))
}

/// Writes to stdout; a closed pipe ends output silently.
fn write_out(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|()| out.flush());
}

fn emit(cli: &Cli, command: &str, hash: Option<&str>, outcome: Outcome) -> ExitCode {
    let code = match outcome.verdict {
        Verdict::Fail => ExitCode::from(1),
        Verdict::Pass | Verdict::Info => ExitCode::SUCCESS,
    };
    match cli.format {
        Format::Text => write_out(&outcome.text),
        Format::Json => {
            let mut result = json!({"command": command, "status": outcome.verdict.as_str()});
            if let (Value::Object(r), Value::Object(d)) = (&mut result, outcome.json) {
                r.extend(d);
            }
            let report = json!({
                "schema": SCHEMA_VERSION,
                "tool_version": env!("CARGO_PKG_VERSION"),
                "instance_hash": hash,
                "results": [result],
            });
            write_out(&(serde_json::to_string_pretty(&report).expect("json") + "\n"));
        }
        Format::M2 => match outcome.m2 {
            Some(s) => write_out(&s),
            None => return input_error(anyhow::anyhow!("`{command}` has no m2 output")),
        },
        Format::Dot => match outcome.dot {
            Some(s) => write_out(&s),
            None => return input_error(anyhow::anyhow!("`{command}` has no dot output")),
        },
    }
    code
}

fn run(cli: &Cli) -> Result<ExitCode, anyhow::Error> {
    let (name, hash, outcome) = match &cli.command {
        Command::Examples { only, timings } => ("paper-examples", None, commands::golden(only.as_deref(), *timings)),
        Command::Fuzz { seed, count, degcap } => ("fuzz", None, commands::fuzz(*seed, *count, *degcap, cli.cap)?),
        cmd => {
            let path = match cmd {
                Command::Matrix(i) | Command::FiberGb(i) | Command::Koszul(i) => &i.instance,
                Command::Gb { input, .. }
                | Command::Verify { input, .. }
                | Command::ReducedGb { input, .. }
                | Command::Chordal { input, .. }
                | Command::Cycles { input, .. }
                | Command::FiberType { input, .. } => &input.instance,
                Command::Examples { .. } | Command::Fuzz { .. } => unreachable!(),
            };
            let (model, options, hash) = load(path, cli)?;
            let (name, outcome) = match cmd {
                Command::Matrix(_) => ("matrix", commands::matrix(&model)),
                Command::Gb { generators, .. } => ("gb", commands::gb(&model, *generators)),
                Command::FiberGb(_) => ("fiber-gb", commands::fiber_gb(&model)),
                Command::Verify { method, degcap, fiber, .. } => {
                    let degcap = degcap.or(options.degcap).unwrap_or(4);
                    ("verify", commands::verify(&model, method, degcap, *fiber, cli.cap)?)
                }
                Command::ReducedGb { fiber, .. } => ("reduced-gb", commands::reduced(&model, *fiber)),
                Command::Chordal { gamma_free, .. } => ("chordal", commands::chordal(&model, *gamma_free)),
                Command::Cycles { max_len, fiber, .. } => ("cycles", commands::cycles(&model, *max_len, *fiber)),
                Command::Koszul(_) => ("koszul", commands::koszul(&model, cli.cap)?),
                Command::FiberType { binomial, .. } => ("fiber-type", commands::fiber_type(&model, binomial)?),
                Command::Examples { .. } | Command::Fuzz { .. } => unreachable!(),
            };
            (name, Some(hash), outcome)
        }
    };
    Ok(emit(cli, name, hash.as_deref(), outcome))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            if let Some(Error::Cap { .. }) = e.downcast_ref::<Error>() {
                eprintln!("error: {e:#}; raise --cap or lower --degcap");
                return ExitCode::from(2);
            }
            input_error(e)
        }
    }
}
