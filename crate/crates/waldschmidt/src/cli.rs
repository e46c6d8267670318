//! Command implementations for the `wcbound` binary.
//!
//! Each command borrows a [`RunConfig`] and writes to a caller-supplied
//! sink, so the binary stays a thin argument parser and the commands remain
//! testable against in-memory buffers.

use std::collections::BTreeSet;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use num::{One, Zero};
use serde_json::json;
use thiserror::Error;

use crate::base_bounds::{BaseTable, TableError};
use crate::demailly::{scan_demailly, DemaillyReport};
use crate::numerics::{decimal_string, nat, nat_pow, nth_root_approx, Nat, Rat};
use crate::recursion::{
    best_bound, BoundCertificate, SearchContext, Strategy, DEFAULT_MAX_PARTITIONS,
};

/// Rendering selected with `--format`; the figure and table-check commands
/// have a single canonical rendering and ignore it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
    Json,
}

impl OutputFormat {
    pub fn parse(text: &str) -> Option<OutputFormat> {
        match text {
            "text" => Some(OutputFormat::Text),
            "csv" => Some(OutputFormat::Csv),
            "json" => Some(OutputFormat::Json),
            _ => None,
        }
    }
}

/// Everything a command needs besides its own positional parameters.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Extra bound table merged over the builtin one.
    pub base_table: Option<PathBuf>,
    /// `None` means the per-dimension default strategy set.
    pub strategies: Option<BTreeSet<Strategy>>,
    pub max_partitions: u64,
    pub depth_cap: Option<u32>,
    pub memo: bool,
    pub jobs: usize,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            base_table: None,
            strategies: None,
            max_partitions: DEFAULT_MAX_PARTITIONS,
            depth_cap: None,
            memo: true,
            jobs: 1,
            format: OutputFormat::Text,
        }
    }
}

/// Command failures, split by exit code: usage errors exit 1, data and I/O
/// errors exit 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Table(_) | CliError::Io(_) => 2,
        }
    }
}

impl RunConfig {
    /// Builtin table with the user table (if any) merged over it.
    pub fn load_table(&self) -> Result<BaseTable, CliError> {
        let mut table = BaseTable::builtin();
        if let Some(path) = &self.base_table {
            table.merge_max(BaseTable::load(path)?);
        }
        Ok(table)
    }

    /// Search context for queries in dimension `dim`.
    pub fn context(&self, dim: u32) -> Result<SearchContext, CliError> {
        let table = self.load_table()?;
        let strategies = self
            .strategies
            .clone()
            .unwrap_or_else(|| Strategy::defaults_for_dim(dim));
        Ok(SearchContext::new(table, strategies)
            .with_max_partitions(self.max_partitions)
            .with_depth_cap(self.depth_cap)
            .with_memo(self.memo))
    }
}

fn require_dim(dim: u32) -> Result<(), CliError> {
    if dim < 2 {
        return Err(CliError::Usage(format!(
            "dimension must be at least 2, got {dim}"
        )));
    }
    Ok(())
}

fn require_points(points: &Nat) -> Result<(), CliError> {
    if points.is_zero() {
        return Err(CliError::Usage("point count must be at least 1".into()));
    }
    Ok(())
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn approx(q: &Rat) -> String {
    decimal_string(q, 4)
}

/// One certified lower bound, with the full derivation in text and JSON.
pub fn cmd_bound(
    config: &RunConfig,
    dim: u32,
    points: &Nat,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    require_dim(dim)?;
    require_points(points)?;
    let ctx = config.context(dim)?;
    let cert = best_bound(&ctx, dim, points);
    match config.format {
        OutputFormat::Text => {
            writeln!(out, "dim {dim}, points {points}")?;
            writeln!(
                out,
                "lower bound: {} (~{})",
                cert.result,
                approx(&cert.result)
            )?;
            writeln!(out, "derivation:")?;
            render_certificate_text(&cert, 0, out)?;
        }
        OutputFormat::Csv => {
            writeln!(
                out,
                "dim,points,lower_num,lower_den,lower_float,method,partition"
            )?;
            let partition = cert.partition.as_ref().map_or(String::new(), |p| {
                p.parts
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            });
            writeln!(
                out,
                "{dim},{points},{},{},{},{},{partition}",
                cert.result.numer(),
                cert.result.denom(),
                approx(&cert.result),
                cert.method_label(),
            )?;
        }
        OutputFormat::Json => {
            let value = json!({
                "dim": dim,
                "points": points.to_string(),
                "lower": rat_json(&cert.result),
                "certificate": certificate_json(&cert),
            });
            write_json(out, &value)?;
        }
    }
    Ok(())
}

fn render_certificate_text(
    cert: &BoundCertificate,
    depth: usize,
    out: &mut dyn Write,
) -> io::Result<()> {
    let indent = "  ".repeat(depth);
    let mut line = format!(
        "{indent}- [dim {}] {} points: {} via {}",
        cert.dim,
        cert.points,
        cert.result,
        cert.method_label()
    );
    if let Some(partition) = &cert.partition {
        line.push_str(&format!(
            ", k {}, parts [{}], a [{}]",
            partition.k,
            join(&partition.parts),
            join(&cert.a_values)
        ));
    }
    if let Some(note) = &cert.note {
        line.push_str(&format!(", note: {note}"));
    }
    writeln!(out, "{line}")?;
    for child in &cert.children {
        render_certificate_text(child, depth + 1, out)?;
    }
    Ok(())
}

fn rat_json(q: &Rat) -> serde_json::Value {
    json!({
        "num": q.numer().to_string(),
        "den": q.denom().to_string(),
        "approx": approx(q),
    })
}

fn certificate_json(cert: &BoundCertificate) -> serde_json::Value {
    json!({
        "dim": cert.dim,
        "points": cert.points.to_string(),
        "method": cert.method_label(),
        "result": rat_json(&cert.result),
        "partition": cert.partition.as_ref().map(|p| {
            json!({
                "k": p.k,
                "parts": p.parts.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })
        }),
        "a_values": cert.a_values.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "children": cert
            .children
            .iter()
            .map(|child| certificate_json(child))
            .collect::<Vec<_>>(),
        "note": cert.note,
    })
}

fn write_json(out: &mut dyn Write, value: &serde_json::Value) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

/// Sufficiency checks over a point-count range.
pub fn cmd_demailly(
    config: &RunConfig,
    dim: u32,
    mult: u32,
    from: &Nat,
    to: &Nat,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    require_dim(dim)?;
    require_points(from)?;
    if mult < 1 {
        return Err(CliError::Usage("multiplicity must be at least 1".into()));
    }
    if from > to {
        return Err(CliError::Usage(format!(
            "empty range: --from {from} exceeds --to {to}"
        )));
    }
    let ctx = config.context(dim)?;
    let reports = scan_demailly(&ctx, dim, mult, from, to, config.jobs);
    let sufficient = reports.iter().filter(|r| r.sufficient).count();
    let inconclusive = reports.len() - sufficient;
    match config.format {
        OutputFormat::Text => {
            for report in &reports {
                writeln!(out, "{}", demailly_text_line(report))?;
            }
            writeln!(
                out,
                "summary: sufficient {sufficient}, inconclusive {inconclusive}"
            )?;
        }
        OutputFormat::Csv => {
            writeln!(
                out,
                "N,m,r,alpha_upper,lower_num,lower_den,rhs_num,rhs_den,sufficient"
            )?;
            for report in &reports {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    report.dim,
                    report.mult,
                    report.points,
                    report.alpha_upper,
                    report.lower.result.numer(),
                    report.lower.result.denom(),
                    report.rhs.numer(),
                    report.rhs.denom(),
                    report.sufficient,
                )?;
            }
            writeln!(
                out,
                "# summary: sufficient={sufficient}, inconclusive={inconclusive}"
            )?;
        }
        OutputFormat::Json => {
            let value = json!({
                "dim": dim,
                "mult": mult,
                "reports": reports.iter().map(demailly_json).collect::<Vec<_>>(),
                "summary": {"sufficient": sufficient, "inconclusive": inconclusive},
            });
            write_json(out, &value)?;
        }
    }
    Ok(())
}

fn demailly_text_line(report: &DemaillyReport) -> String {
    format!(
        "dim {} mult {} points {}: alpha_upper {}, threshold {}, lower {} (~{}), {}",
        report.dim,
        report.mult,
        report.points,
        report.alpha_upper,
        report.rhs,
        report.lower.result,
        approx(&report.lower.result),
        if report.sufficient {
            "sufficient"
        } else {
            "inconclusive"
        }
    )
}

fn demailly_json(report: &DemaillyReport) -> serde_json::Value {
    json!({
        "points": report.points.to_string(),
        "alpha_upper": report.alpha_upper.to_string(),
        "lower": rat_json(&report.lower.result),
        "rhs": {
            "num": report.rhs.numer().to_string(),
            "den": report.rhs.denom().to_string(),
        },
        "method": report.lower.method_label(),
        "sufficient": report.sufficient,
    })
}

/// Accuracy profile: certified lower bound against the real `dim`-th root
/// for every point count up to `max`. Always CSV.
pub fn cmd_figure(
    config: &RunConfig,
    dim: u32,
    max: &Nat,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    require_dim(dim)?;
    require_points(max)?;
    let ctx = config.context(dim)?;
    writeln!(
        out,
        "r,lower_num,lower_den,lower_float,upper_float,delta_float"
    )?;
    let threshold = nat_pow(&nat(2), dim);
    let mut max_delta: Option<Rat> = None;
    let mut r = Nat::one();
    while r <= *max {
        let cert = best_bound(&ctx, dim, &r);
        let upper = nth_root_approx(&r, dim);
        let delta = &upper - &cert.result;
        writeln!(
            out,
            "{r},{},{},{},{},{}",
            cert.result.numer(),
            cert.result.denom(),
            approx(&cert.result),
            approx(&upper),
            approx(&delta),
        )?;
        if r >= threshold && max_delta.as_ref().is_none_or(|best| delta > *best) {
            max_delta = Some(delta);
        }
        r += 1u32;
    }
    if let Some(delta) = max_delta {
        writeln!(
            out,
            "# max delta r in [{threshold}, {max}]: {}",
            approx(&delta)
        )?;
    }
    Ok(())
}

/// Parses and echoes a bound table in canonical form.
pub fn cmd_table_check(path: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let table = BaseTable::load(path)?;
    writeln!(out, "ok: {} entries", table.len())?;
    for ((dim, points), entry) in table.iter() {
        writeln!(out, "{dim} {points} {} {}", entry.value, entry.source)?;
    }
    Ok(())
}
