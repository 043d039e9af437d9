//! Command-line front end.

use crate::error::Error;
use crate::loopgrp::Experiment;
use crate::report::{render, Command, Format, LoopOptions};
use crate::specfile::parse_spec;
use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COMPUTATION: i32 = 2;
pub const EXIT_HARD_FAILURE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "eostrata",
    version,
    about = "Newton and Ekedahl–Oort stratification combinatorics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Root datum, Weyl group and π₁ coinvariants.
    Describe(Common),
    /// The poset B(G, μ).
    Bgmu(Common),
    /// Ekedahl–Oort strata ^J W with the twisted order.
    Eoposet(Common),
    /// Newton class of each EO stratum representative.
    Eo2newton(Common),
    /// Hodge–Newton hypotheses for (μ, M, b0).
    Hncheck(Common),
    /// Brute-force σ-conjugacy experiments in a truncated loop group.
    VerifyLoop(LoopArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Group spec file.
    #[arg(long)]
    pub spec: PathBuf,
    /// Output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value = "json", value_parser = ["json", "dot", "text"])]
    pub format: String,
}

#[derive(Args, Debug, Clone)]
pub struct LoopArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    /// Comma-separated field degrees, e.g. 1,2,4.
    #[arg(long, value_delimiter = ',')]
    pub m_schedule: Option<Vec<u32>>,
    /// Truncation level: computations are modulo t^N.
    #[arg(long = "N")]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// A (K₁ double coset), B (Iwahori double coset), C (constructed) or HN.
    #[arg(long, default_value = "A")]
    pub experiment: String,
    /// Enumerate the whole double coset instead of sampling.
    #[arg(long)]
    pub exhaustive: bool,
}

/// Parses `args` and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    run(cli, stdout, stderr)
}

pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let (command, common, opts) = match cli.command {
        Cmd::Describe(c) => (Command::Describe, c, LoopOptions::default()),
        Cmd::Bgmu(c) => (Command::Bgmu, c, LoopOptions::default()),
        Cmd::Eoposet(c) => (Command::EoPoset, c, LoopOptions::default()),
        Cmd::Eo2newton(c) => (Command::EoToNewton, c, LoopOptions::default()),
        Cmd::Hncheck(c) => (Command::HnCheck, c, LoopOptions::default()),
        Cmd::VerifyLoop(a) => {
            let experiment = match a.experiment.parse::<Experiment>() {
                Ok(e) => e,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    return EXIT_USAGE;
                }
            };
            let opts = LoopOptions {
                experiment,
                q: a.q,
                m_schedule: a.m_schedule,
                prec: a.n,
                samples: a.samples,
                seed: a.seed,
                exhaustive: a.exhaustive,
            };
            (Command::VerifyLoop, a.common, opts)
        }
    };
    let format: Format = common.format.parse().expect("clap restricts the format");
    if !command.supports(format) {
        let _ = writeln!(
            stderr,
            "error: {} does not produce {} output",
            command.name(),
            common.format
        );
        return EXIT_USAGE;
    }
    let text = match std::fs::read_to_string(&common.spec) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot read {}: {e}", common.spec.display());
            return EXIT_USAGE;
        }
    };
    let loaded = match parse_spec(&text).and_then(|s| s.load()) {
        Ok(l) => l,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}: {e}", common.spec.display());
            return if matches!(e, Error::Parse { .. }) {
                EXIT_USAGE
            } else {
                EXIT_COMPUTATION
            };
        }
    };
    let rendered = match render(command, &loaded, format, &opts) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return if matches!(e, Error::Parse { .. }) {
                EXIT_USAGE
            } else {
                EXIT_COMPUTATION
            };
        }
    };
    let written = match &common.out {
        Some(path) => std::fs::write(path, rendered.body.as_bytes()),
        None => stdout.write_all(rendered.body.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_COMPUTATION;
    }
    if command == Command::VerifyLoop && format == Format::Json && common.out.is_some() {
        // Keep a human-readable line on stderr when the report goes to a file.
        let _ = write!(stderr, "{}", summary_line(&rendered.body));
    }
    if rendered.hard_failures > 0 {
        EXIT_HARD_FAILURE
    } else {
        EXIT_OK
    }
}

fn summary_line(json: &str) -> String {
    let v: serde_json::Value = serde_json::from_str(json).unwrap_or_default();
    format!(
        "samples {} found {} unresolved {} hard failures {}\n",
        v["samples"], v["found"], v["unresolved"], v["hard_failures"]
    )
}
