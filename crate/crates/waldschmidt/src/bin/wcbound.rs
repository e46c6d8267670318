//! Thin argument parser over [`waldschmidt::cli`].

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use waldschmidt::cli::{
    cmd_bound, cmd_demailly, cmd_figure, cmd_table_check, CliError, OutputFormat, RunConfig,
};
use waldschmidt::numerics::Nat;
use waldschmidt::recursion::{Strategy, DEFAULT_MAX_PARTITIONS};

/// Certified lower bounds on Waldschmidt constants of very general points.
#[derive(Parser)]
#[command(name = "wcbound", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Best certified lower bound for one point count.
    Bound {
        /// Ambient projective dimension (at least 2).
        #[arg(long)]
        dim: u32,
        /// Number of very general points.
        #[arg(long)]
        points: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Sufficiency checks against the conditions-count threshold.
    Demailly {
        #[arg(long)]
        dim: u32,
        /// Vanishing order the inequality is stated for.
        #[arg(long)]
        mult: u32,
        /// Single point count; exclusive with --from/--to.
        #[arg(long)]
        points: Option<String>,
        /// Range start (needs --to).
        #[arg(long)]
        from: Option<String>,
        /// Range end (needs --from).
        #[arg(long)]
        to: Option<String>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// CSV accuracy profile of the bounds up to a maximal point count.
    Figure {
        #[arg(long)]
        dim: u32,
        /// Largest point count in the profile.
        #[arg(long)]
        max: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Parse a bound table and echo it in canonical form.
    TableCheck {
        /// Table file to validate.
        path: PathBuf,
    },
}

#[derive(Args)]
struct CommonOpts {
    /// Extra bound table merged over the builtin one.
    #[arg(long)]
    base_table: Option<PathBuf>,
    /// Search strategy, repeatable: exhaustive, heuristic, purepower,
    /// closed-form. Defaults depend on the dimension.
    #[arg(long = "strategy")]
    strategies: Vec<String>,
    /// Budget on evaluated distributions per search.
    #[arg(long, default_value_t = DEFAULT_MAX_PARTITIONS)]
    max_partitions: u64,
    /// Recursion depth limit; 0 gives closed-form bounds only.
    #[arg(long)]
    depth_cap: Option<u32>,
    /// Disable the certificate cache.
    #[arg(long)]
    no_memo: bool,
    /// Worker threads for range scans.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Output rendering: text, csv, or json.
    #[arg(long, default_value = "text")]
    format: String,
}

impl CommonOpts {
    fn into_config(self) -> Result<RunConfig, CliError> {
        let strategies = if self.strategies.is_empty() {
            None
        } else {
            let mut set = std::collections::BTreeSet::new();
            for name in &self.strategies {
                let strategy = Strategy::parse(name).ok_or_else(|| {
                    CliError::Usage(format!(
                        "unknown strategy '{name}' (expected exhaustive, heuristic, purepower, or closed-form)"
                    ))
                })?;
                set.insert(strategy);
            }
            Some(set)
        };
        let format = OutputFormat::parse(&self.format).ok_or_else(|| {
            CliError::Usage(format!(
                "unknown format '{}' (expected text, csv, or json)",
                self.format
            ))
        })?;
        Ok(RunConfig {
            base_table: self.base_table,
            strategies,
            max_partitions: self.max_partitions,
            depth_cap: self.depth_cap,
            memo: !self.no_memo,
            jobs: self.jobs,
            format,
        })
    }
}

fn parse_points(text: &str) -> Result<Nat, CliError> {
    text.parse::<Nat>()
        .map_err(|_| CliError::Usage(format!("invalid point count '{text}'")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Bound {
            dim,
            points,
            common,
        } => {
            let config = common.into_config()?;
            let points = parse_points(&points)?;
            cmd_bound(&config, dim, &points, &mut out)
        }
        Command::Demailly {
            dim,
            mult,
            points,
            from,
            to,
            common,
        } => {
            let config = common.into_config()?;
            let (from, to) = match (points, from, to) {
                (Some(p), None, None) => {
                    let p = parse_points(&p)?;
                    (p.clone(), p)
                }
                (None, Some(f), Some(t)) => (parse_points(&f)?, parse_points(&t)?),
                _ => {
                    return Err(CliError::Usage(
                        "pass either --points or both --from and --to".into(),
                    ))
                }
            };
            cmd_demailly(&config, dim, mult, &from, &to, &mut out)
        }
        Command::Figure { dim, max, common } => {
            let config = common.into_config()?;
            let max = parse_points(&max)?;
            cmd_figure(&config, dim, &max, &mut out)
        }
        Command::TableCheck { path } => cmd_table_check(&path, &mut out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let _ = writeln!(io::stderr(), "error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
