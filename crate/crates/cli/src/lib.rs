//! Command-line front end for the qutrit operation-sharing simulator.

pub mod input;
pub mod report;

use clap::{Parser, Subcommand, ValueEnum};
use qos3_core::protocol::Scheme;

pub use report::{Report, RunConfig};

#[derive(Debug, Parser)]
#[command(
    name = "qos3",
    about = "Simulate three-party single-qutrit operation sharing"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for every random draw.
    #[arg(long, global = true, env = "QOS3_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Human)]
    pub output: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    S1,
    S2,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate every branch of one protocol run.
    Simulate {
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        /// `random`, `identity`, `family:<id>[:angles]`, `matrix:<9 entries>`.
        #[arg(long, default_value = "random")]
        u: String,
        /// `random` or `a,b,c` amplitudes.
        #[arg(long, default_value = "random")]
        chi: String,
        /// Measuring basis on b' (s2 only): c1, c2, c3, c4a, c4b or `x1,y1[,tau1,tau2]`.
        #[arg(long)]
        basis: Option<String>,
        /// Family the operation is known to belong to (s2 only).
        #[arg(long)]
        declared: Option<String>,
        /// Also sample this many branches by Born weight.
        #[arg(long, default_value_t = 0)]
        shots: usize,
    },
    /// Family memberships, commutation signs and predicted success.
    Classify {
        #[arg(long)]
        u: String,
    },
    /// Rebuild the scheme comparison table and check every row.
    Table1,
    /// Print the preset measuring bases and their W operators.
    Bases,
}

/// Text written to standard output and the exit status.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn execute(cli: &Cli) -> Outcome {
    let report = match &cli.command {
        Command::Simulate {
            scheme,
            u,
            chi,
            basis,
            declared,
            shots,
        } => report::simulate(&RunConfig {
            scheme: match scheme {
                SchemeArg::S1 => Scheme::S1,
                SchemeArg::S2 => Scheme::S2,
            },
            u_spec: u.clone(),
            chi_spec: chi.clone(),
            basis: basis.clone(),
            declared: declared.clone(),
            seed: cli.seed,
            shots: *shots,
        }),
        Command::Classify { u } => report::classify(u, cli.seed),
        Command::Table1 => report::table1(cli.seed),
        Command::Bases => Ok(report::bases()),
    };
    match report {
        Ok(r) => Outcome {
            stdout: render(&r, cli.output),
            stderr: String::new(),
            code: if r.ok { 0 } else { 1 },
        },
        Err(err) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {err:#}\n"),
            code: 2,
        },
    }
}

pub fn render(r: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Human => r.human.clone(),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&r.json).expect("report values serialize");
            s.push('\n');
            s
        }
    }
}
