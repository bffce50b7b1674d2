//! `dualbasis`: reproduces the pairing tables, selector kernels, ladder
//! identities and Lerch bridge checks from the command line.
//!
//! Exit codes: 0 when every check of the command holds, 1 when a check
//! fails or a computation errors, 2 on usage errors.

mod bridge;
mod kernels;
mod ladder;
mod pairings;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use dualbasis::pairing::PAIRING_SERIES_K;
use dualbasis::quadrature::QuadratureConfig;
use dualbasis::selector::Parity;
use dualbasis::specfun::{ClausenVariant, DEFAULT_SERIES_K};

use bridge::BridgeArgs;
use pairings::PairingArgs;
use render::{render, Format, Section};

#[derive(Parser, Debug)]
#[command(name = "dualbasis", version, about = "Verify the dual Hurwitz/Clausen basis identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Markdown)]
    format: Format,

    /// Write the output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weighted pairing tables with convergence verdicts.
    Pairings(PairingsCmd),
    /// One period of a selector kernel.
    Kernels(KernelsCmd),
    /// Exact ladder-operator identities on truncated blocks.
    Ladder(LadderCmd),
    /// Lerch bridge values, Fourier cross-check and kernel-weighted identities.
    Bridge(BridgeCmd),
    /// Every command above with its defaults.
    All(AllCmd),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AVariant {
    Literal,
    Standard,
    Both,
}

impl AVariant {
    fn variants(self) -> Vec<ClausenVariant> {
        match self {
            AVariant::Literal => vec![ClausenVariant::Literal],
            AVariant::Standard => vec![ClausenVariant::Standard],
            AVariant::Both => ClausenVariant::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ParityArg {
    Sin,
    Cos,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Sin => Parity::Sin,
            ParityArg::Cos => Parity::Cos,
        }
    }
}

#[derive(Args, Debug)]
struct PairingsCmd {
    /// Trapezoid nodes N (even); convergence is checked against 10N.
    #[arg(long, default_value_t = 200)]
    nodes: usize,
    /// Series terms K for the bases inside the integrands [default: 10000].
    #[arg(long)]
    series_k: Option<usize>,
    #[arg(long, value_enum, default_value_t = AVariant::Both)]
    a_variant: AVariant,
    /// Add rotated-weight cells at this angle in radians (repeatable).
    #[arg(long, value_name = "RADIANS", allow_negative_numbers = true)]
    phi: Vec<f64>,
}

#[derive(Args, Debug)]
struct KernelsCmd {
    /// Number of nodes J.
    #[arg(long, default_value_t = 2)]
    j: u32,
    #[arg(long, value_enum, default_value_t = ParityArg::Sin)]
    parity: ParityArg,
}

#[derive(Args, Debug)]
struct LadderCmd {
    /// Truncation degree D.
    #[arg(long, default_value_t = 10)]
    dim: usize,
    /// Series order T for the generating-function and coherent-state checks.
    #[arg(long, default_value_t = 8)]
    order: usize,
}

#[derive(Args, Debug)]
struct BridgeCmd {
    /// Integer order s >= 2.
    #[arg(long, default_value_t = 2)]
    s: u32,
    /// Series terms K.
    #[arg(long, default_value_t = DEFAULT_SERIES_K)]
    series_k: usize,
    /// Bilateral cutoff L.
    #[arg(long, default_value_t = 10_000)]
    bilateral_l: u64,
}

#[derive(Args, Debug)]
struct AllCmd {
    #[arg(long, default_value_t = 200)]
    nodes: usize,
    /// Series terms K; when omitted pairings use 10000 and the bridge 100000.
    #[arg(long)]
    series_k: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    bilateral_l: u64,
    #[arg(long, value_enum, default_value_t = AVariant::Both)]
    a_variant: AVariant,
    #[arg(long, default_value_t = 10)]
    dim: usize,
    #[arg(long, default_value_t = 8)]
    order: usize,
    #[arg(long, default_value_t = 2)]
    s: u32,
}

fn usage_error(msg: impl std::fmt::Display) -> ! {
    Cli::command().error(ErrorKind::ValueValidation, msg).exit()
}

fn check_nodes(n: usize) {
    if n == 0 {
        usage_error("N must be positive");
    }
    if let Err(e) = QuadratureConfig::trapezoid(n) {
        usage_error(e);
    }
}

fn check_series_k(k: Option<usize>) {
    if k == Some(0) {
        usage_error("series K must be positive");
    }
}

fn check_dim(d: usize) {
    if d == 0 {
        usage_error("D must be at least 1");
    }
}

fn check_s(s: u32) {
    if s < 2 {
        usage_error(format!("s must be ≥ 2 (got {s})"));
    }
}

fn sections(command: &Command) -> Result<Vec<Section>> {
    Ok(match command {
        Command::Pairings(c) => {
            check_nodes(c.nodes);
            check_series_k(c.series_k);
            vec![pairings::run(&PairingArgs {
                nodes: c.nodes,
                series_k: c.series_k.unwrap_or(PAIRING_SERIES_K),
                variants: c.a_variant.variants(),
                phis: c.phi.clone(),
            })?]
        }
        Command::Kernels(c) => vec![kernels::run(c.j, c.parity.into())?],
        Command::Ladder(c) => {
            check_dim(c.dim);
            vec![ladder::run(c.dim, c.order)?]
        }
        Command::Bridge(c) => {
            check_s(c.s);
            check_series_k(Some(c.series_k));
            vec![bridge::run(&BridgeArgs {
                s: c.s,
                series_k: c.series_k,
                bilateral_l: c.bilateral_l,
            })?]
        }
        Command::All(c) => {
            check_nodes(c.nodes);
            check_series_k(c.series_k);
            check_dim(c.dim);
            check_s(c.s);
            let mut out = vec![pairings::run(&PairingArgs {
                nodes: c.nodes,
                series_k: c.series_k.unwrap_or(PAIRING_SERIES_K),
                variants: c.a_variant.variants(),
                phis: Vec::new(),
            })?];
            for (j, p) in [(2, Parity::Sin), (2, Parity::Cos), (4, Parity::Sin), (4, Parity::Cos)] {
                out.push(kernels::run(j, p)?);
            }
            out.push(ladder::run(c.dim, c.order)?);
            out.push(bridge::run(&BridgeArgs {
                s: c.s,
                series_k: c.series_k.unwrap_or(DEFAULT_SERIES_K),
                bilateral_l: c.bilateral_l,
            })?);
            out
        }
    })
}

fn run(cli: &Cli) -> Result<bool> {
    let sections = sections(&cli.command)?;
    let text = render(&sections, cli.format)?;
    match &cli.out {
        Some(path) => std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    if cli.format != Format::Markdown {
        for s in &sections {
            for line in &s.diagnostics {
                eprintln!("{line}");
            }
        }
    }
    Ok(sections.iter().all(|s| s.ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
