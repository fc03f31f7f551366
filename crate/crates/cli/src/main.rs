//! `bottforge`: cohomology of homogeneous bundles on odd quadrics, and the
//! verification scans behind the tilting bundles on the total space.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage or parse error.

use std::process::ExitCode;
use std::time::Instant;

use bottforge::report::{
    cohomology_json, render_cohomology_human, render_human, render_markdown, run_verify,
    to_canonical_json, IntRange, Lemma, VerifyOptions,
};
use bottforge::{parse_bundle, Error, Quadric};
use clap::{Parser, Subcommand};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "bottforge", version, about)]
struct Cli {
    /// Emit JSON (sorted keys, byte-stable)
    #[arg(long, global = true, conflicts_with = "md")]
    json: bool,
    /// Emit a Markdown report
    #[arg(long, global = true)]
    md: bool,
    /// Include wall time in JSON and Markdown output
    #[arg(long, global = true)]
    timing: bool,
    /// Rank n of the root system B_n; the quadric has dimension 2n-1
    #[arg(long, global = true, default_value_t = 3)]
    rank: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cohomology of a bundle expression, e.g. "S* (x) S* (x) O(-2)"
    Cohomology { expr: String },
    /// Run a verification scan
    Verify {
        /// bbw1, bbw2, bbw3, bbw4, bbw2-lemma, pretilting, kapranov, tilting or hilbert
        lemma: String,
        /// Range of k, inclusive (A..B)
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
        /// Range of the twist j, inclusive (A..B)
        #[arg(long, allow_hyphen_values = true)]
        j: Option<String>,
        /// Highest graded piece scanned on the total space
        #[arg(long)]
        kmax: Option<u32>,
    },
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("BOTTFORGE_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("BOTTFORGE_THREADS must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn caret_line(input: &str, pos: usize) -> String {
    format!("  {input}\n  {}^", " ".repeat(pos.saturating_sub(1)))
}

fn cohomology(cli: &Cli, expr: &str) -> ExitCode {
    let q = match Quadric::new(cli.rank) {
        Ok(q) => q,
        Err(e) => return usage(e),
    };
    let b = match parse_bundle(&q, expr) {
        Ok(b) => b,
        Err(Error::Parse { pos, msg }) => {
            return usage(format!("column {pos}: {msg}\n{}", caret_line(expr, pos)));
        }
        Err(e) => return usage(e),
    };
    let t = q.cohomology(&b);
    if cli.json {
        print!("{}", to_canonical_json(&cohomology_json(&q, expr, &b, &t)));
    } else {
        print!("{}", render_cohomology_human(&q, expr, &b, &t));
    }
    ExitCode::SUCCESS
}

fn verify(cli: &Cli, lemma: &str, k: Option<&str>, j: Option<&str>, kmax: Option<u32>) -> ExitCode {
    if cli.rank != 3 {
        return usage(format!(
            "verify targets are statements about Q^5 and need --rank 3, got {}",
            cli.rank
        ));
    }
    let parsed = (|| -> Result<_, Error> {
        let lemma: Lemma = lemma.parse()?;
        let opts = VerifyOptions {
            k: k.map(str::parse::<IntRange>).transpose()?,
            j: j.map(str::parse::<IntRange>).transpose()?,
            kmax,
        };
        Ok((lemma, opts))
    })();
    let (lemma, opts) = match parsed {
        Ok(v) => v,
        Err(e) => return usage(e),
    };
    let start = Instant::now();
    let mut report = match run_verify(lemma, &opts) {
        Ok(r) => r,
        Err(e @ Error::Usage(_)) => return usage(e),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_FAIL);
        }
    };
    let elapsed = start.elapsed().as_millis() as u64;
    if cli.timing || !(cli.json || cli.md) {
        report.wall_time_ms = Some(elapsed);
    }
    if cli.json {
        print!("{}", to_canonical_json(&report));
    } else if cli.md {
        print!("{}", render_markdown(&report));
    } else {
        print!("{}", render_human(&report));
    }
    if report.exit_code() == 0 {
        ExitCode::SUCCESS
    } else {
        for c in report
            .cases
            .iter()
            .filter(|c| c.status != bottforge::Status::Pass)
        {
            eprintln!("{}: {} ({})", c.status.as_str(), c.id, c.detail);
        }
        ExitCode::from(EXIT_FAIL)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        return usage(e);
    }
    match &cli.command {
        Command::Cohomology { expr } => cohomology(&cli, expr),
        Command::Verify { lemma, k, j, kmax } => {
            verify(&cli, lemma, k.as_deref(), j.as_deref(), *kmax)
        }
    }
}
