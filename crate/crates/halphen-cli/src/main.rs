//! `halphen`: command-line front end for the halphen library.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on input errors.

// library errors carry exact values
#![allow(clippy::result_large_err)]

mod commands;
mod json;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "halphen", version, about = "Exact Lamé/Heun transforms, Belyi pullbacks and rank-2 monodromy tuples")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Halphen transform of a Lamé equation (case a: μ = −½; b: μ = n; c: μ = −n−1).
    Halphen {
        #[arg(value_enum)]
        case: Case,
        #[command(flatten)]
        lame: LameArgs,
    },
    /// Symmetric square of a second-order operator.
    Sym2(OperatorArgs),
    /// Euler transform of the symmetric square of a Lamé operator.
    Euler {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[command(flatten)]
        lame: LameArgs,
    },
    /// Riemann scheme of an operator, with the Fuchs relation.
    Riemann(OperatorArgs),
    /// Heun equation (λ = 1) to Lamé data: ν = ¾ − αβ, H = H̃ + Σe/4.
    Heun2lame(HeunArgs),
    /// Lamé equation to its Heun form.
    Lame2heun {
        #[command(flatten)]
        lame: LameArgs,
    },
    /// Golden Heun/Lamé table pairs.
    Tables {
        #[command(subcommand)]
        action: TablesAction,
    },
    /// Belyi-map pullbacks of hypergeometric equations.
    Pullback {
        #[command(subcommand)]
        action: PullbackAction,
    },
    /// Fricke coordinates and the braid action on them.
    Fricke {
        #[command(subcommand)]
        action: FrickeAction,
    },
    /// Monodromy tuples.
    Tuple {
        #[command(subcommand)]
        action: TupleAction,
    },
    /// Sym² followed by MC₋₁ on trace-(0,0,0) tuples.
    Pipeline {
        #[command(subcommand)]
        action: PipelineAction,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Case {
    A,
    B,
    C,
}

#[derive(Args, Clone, Default)]
pub struct LameArgs {
    /// Cubic p₀ (the equation uses p = 4p₀), e.g. "x*(x-1)*(x-81)".
    #[arg(long, allow_hyphen_values = true)]
    pub p0: Option<String>,
    /// ν = n(n+1); derived from --n when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
    /// n (cases b and c).
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<String>,
    /// Accessory parameter H.
    #[arg(long = "H", allow_hyphen_values = true)]
    pub h: Option<String>,
}

#[derive(Args, Clone, Default)]
pub struct HeunArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub p0: Option<String>,
    /// αβ
    #[arg(long, allow_hyphen_values = true)]
    pub ab: Option<String>,
    /// Accessory parameter H̃.
    #[arg(long, allow_hyphen_values = true)]
    pub ht: Option<String>,
    /// First-order factor λ (default 1).
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
}

/// An operator given as JSON (`--op '{"order":2,...}'`, `--op @file`, `--op -` for stdin),
/// as Lamé data (`--p0 --nu --H`) or as Heun data (`--p0 --ab --ht`).
#[derive(Args, Clone, Default)]
pub struct OperatorArgs {
    #[arg(long)]
    pub op: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub p0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<String>,
    #[arg(long = "H", allow_hyphen_values = true)]
    pub h: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub ab: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub ht: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
}

/// A tuple given as JSON matrices (`--tuple`, same `@file`/`-` conventions) or as a
/// golden label (`--label N=6`).
#[derive(Args, Clone, Default)]
pub struct TupleArgs {
    #[arg(long)]
    pub tuple: Option<String>,
    #[arg(long)]
    pub label: Option<String>,
}

/// Fricke data as `a1,a2,a3,a4,x,y,z`, or computed from a tuple.
#[derive(Args, Clone, Default)]
pub struct FrickeArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub fricke: Option<String>,
    #[command(flatten)]
    pub tuple: TupleArgs,
}

#[derive(Subcommand)]
enum TablesAction {
    /// Maps every Heun row to its Lamé partner and compares.
    Verify,
}

#[derive(Subcommand)]
enum PullbackAction {
    /// Verifies a Belyi row (i … v), the worked example (`example`), or `all`.
    Verify { row: String },
}

#[derive(Subcommand)]
enum FrickeAction {
    /// Fricke coordinates and the residual of the Fricke relation.
    Check(FrickeArgs),
    /// Applies a braid word such as "b1 b2^-1".
    Braid {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[command(flatten)]
        input: FrickeArgs,
    },
    /// Vieta descent of an integer triple to its minimal representative.
    Descend {
        #[arg(long)]
        case: String,
        /// N for case i.
        #[arg(long)]
        n: Option<u32>,
        /// Comma-separated triple, e.g. "-3,-9,-12".
        #[arg(long, allow_hyphen_values = true)]
        triple: String,
    },
    /// Negative minimal triples with entries bounded by --bound.
    Enumerate {
        #[arg(long)]
        case: String,
        /// Restrict case i to one N.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value_t = 30)]
        bound: u32,
    },
}

#[derive(Subcommand)]
enum TupleAction {
    /// Checks the golden tuples (all, or one --label).
    Verify {
        #[arg(long)]
        label: Option<String>,
    },
    /// Builds a unipotent tuple with the given Fricke coordinates.
    Construct(FrickeArgs),
    /// Middle convolution MC_λ.
    Mc {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[command(flatten)]
        input: TupleArgs,
    },
    /// Invariant hermitian forms.
    Form(TupleArgs),
}

#[derive(Subcommand)]
enum PipelineAction {
    /// The trace map of Fricke data (`--det` selects the determinant of A₁…A₃), or the
    /// full Sym²/MC₋₁ pipeline on a tuple compared with it.
    TraceMap {
        #[arg(long, allow_hyphen_values = true, default_value = "-1")]
        det: String,
        #[command(flatten)]
        input: FrickeArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, result) = commands::run(cli.command);
    match result {
        Ok(report) => {
            if cli.json {
                let v = serde_json::json!({ "command": name, "ok": report.ok, "result": report.result });
                println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            } else {
                print!("{}", report.text);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
