use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nclosed_cli::commands::{cmd_check, cmd_coset, cmd_group, cmd_subgroups, load_group, Format, DEFAULT_SPECTRUM_CHECK};
use nclosed_cli::corpus::{expand_corpus, load_corpus, InputError, VERIFY_MAX_ORDER};
use nclosed_cli::mutant::OffByOneEngine;
use nclosed_cli::scan::run_scan;
use nclosed_cli::verify::{run_verify, VerifyOptions};
use nclosed_core::nclosed::{default_scan_bound, ClosednessEngine, ProductSetEngine};
use nclosed_core::Magma;

const LONG_ABOUT: &str = "\
Decide n-closedness of subsets of finite groups, analyze cosets, scan all
subsets of a small group, and verify the closedness statements over a corpus.

Groups: Z<n>, S<n> (n <= 6), D<n> (order 2n), Q8, products such as Z2xZ4,
`perm(<degree>): <perm>, <perm>, ...` and `table:<path>` (JSON Cayley table).
Permutations use cycle notation; a product of cycles composes right to left,
so (1 2)(2 3) applies (2 3) first and equals (1 2 3).

Exit codes: 0 success, 1 input error, 2 verification found violations.";

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "nclosed", version, about = "n-closed subsets of finite groups", long_about = LONG_ABOUT)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest arity examined (scan: default 2|G|+1; coset: spectrum check, default 20).
    #[arg(long, global = true)]
    max_n: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether a subset is n-closed; prints a witness tuple if not.
    Check {
        group: String,
        /// Comma-separated element labels.
        #[arg(long, allow_hyphen_values = true)]
        subset: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Analyze the left coset rep*H of the subgroup generated by --subgroup.
    Coset {
        group: String,
        /// Comma-separated generators of H.
        #[arg(long, allow_hyphen_values = true)]
        subgroup: String,
        #[arg(long, allow_hyphen_values = true)]
        rep: String,
        /// Also analyze the coset rep^m H.
        #[arg(long)]
        power: Option<usize>,
    },
    /// Classify every nonempty subset of a group of order at most 14.
    Scan { group: String },
    /// Check every statement over every subgroup and coset of the corpus.
    Verify {
        /// Group specs separated by ';' (repeatable); `default` expands to
        /// the built-in corpus.
        #[arg(long)]
        corpus: Vec<String>,
        /// Use a deliberately broken closedness engine (fault injection).
        #[arg(long, hide = true)]
        mutant: bool,
    },
    /// Describe a group: order, identity, element orders.
    Group { group: String },
    /// List all subgroups with index and normality.
    Subgroups { group: String },
}

enum Outcome {
    Clean(String),
    Violations(String),
}

fn run(cli: Cli) -> Result<Outcome, InputError> {
    let format: Format = cli.format.into();
    let text = match cli.command {
        Command::Check { group, subset, n } => cmd_check(&group, &subset, n, format)?,
        Command::Coset { group, subgroup, rep, power } => {
            cmd_coset(&group, &subgroup, &rep, power, cli.max_n.unwrap_or(DEFAULT_SPECTRUM_CHECK), format)?
        }
        Command::Scan { group } => {
            let g = load_group(&group)?;
            let report = run_scan(&group, &g, cli.max_n.unwrap_or_else(|| default_scan_bound(g.order())))?;
            match format {
                Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
                Format::Text => report.render_text(),
            }
        }
        Command::Verify { corpus, mutant } => {
            let entries = load_corpus(&expand_corpus(&corpus), VERIFY_MAX_ORDER)?;
            let engine: &dyn ClosednessEngine = if mutant { &OffByOneEngine } else { &ProductSetEngine };
            let report = run_verify(&entries, &VerifyOptions { seed: cli.seed, engine })?;
            let out = match format {
                Format::Json => {
                    eprintln!("elapsed {:.2?}", report.elapsed);
                    serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
                }
                Format::Text => report.render_text(),
            };
            return Ok(if report.is_clean() { Outcome::Clean(out) } else { Outcome::Violations(out) });
        }
        Command::Group { group } => cmd_group(&group, format)?,
        Command::Subgroups { group } => cmd_subgroups(&group, format)?,
    };
    Ok(Outcome::Clean(text))
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
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: cannot configure {jobs} worker threads: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(Outcome::Clean(out)) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Violations(out)) => {
            print!("{out}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn global_flags_after_subcommand() {
        let cli = Cli::try_parse_from(["nclosed", "scan", "Z4", "--max-n", "5", "--format", "json"]).unwrap();
        assert_eq!(cli.max_n, Some(5));
        assert!(matches!(cli.format, FormatArg::Json));
    }
}
