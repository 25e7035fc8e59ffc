//! The `cantor-bound` command line.
//!
//! Exit codes: 0 on success, 1 on a usage or IO error, 2 when a numerical
//! verification fails (fixture mismatch or diameter check).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use cantor_bound_core::bound::cantor_dust_dimension;
use cantor_bound_core::rational::{exact_text, parse_rational};
use cantor_bound_core::{
    best_integer_k, build, catalog, minimize_octagon_series, partial_estimation_bound,
    sweep_disk_radius, verify_diameter, CoverSpec, CoverageCount, Params, Point, Rational,
    SweepRow, UpperBound,
};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::config::{load_region, RegionFile};
use crate::format::{
    csv_document, diameter_label, json_document, table, DiameterText, Format, RationalText,
};
use crate::parallel::count_coverage_parallel;
use crate::record::RunRecord;
use crate::report::{report_rows, ReportEntry, HEADERS};
use crate::svg::render_svg;

pub const DEFAULT_RENDER_LEVEL: u32 = 6;
pub const DEFAULT_SAMPLES: usize = 4096;

#[derive(Debug, Parser)]
#[command(name = "cantor-bound", version, about = "Certified upper bounds for the Hausdorff measure of C × C")]
pub struct Cli {
    /// Also write a run record into this directory.
    #[arg(long, global = true, value_name = "DIR")]
    pub record: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Source {
    /// Catalog construction name.
    #[arg(long, conflicts_with = "config")]
    pub construction: Option<String>,
    /// Construction parameter, e.g. `n=2` or `k=3`.
    #[arg(long = "param", value_name = "KEY=VALUE", value_parser = parse_param)]
    pub params: Vec<(String, Rational)>,
    /// Region file (JSON).
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Recompute every published bound from its fraction and diameter.
    Report {
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Certified coverage count and bound for one cover set.
    Coverage {
        #[command(flatten)]
        source: Source,
        /// Grid level (defaults to the construction's recommended level).
        #[arg(long)]
        level: Option<u32>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Draw the classified grid and region boundary as SVG.
    Render {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = DEFAULT_RENDER_LEVEL)]
        level: u32,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimize the octagon-series bound over real k.
    Optimize {
        #[arg(long, default_value_t = 2.0)]
        lo: f64,
        #[arg(long, default_value_t = 8.0)]
        hi: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 2)]
        kmin: u32,
        #[arg(long, default_value_t = 5)]
        kmax: u32,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Certified bounds for `unit square ∩ disk(center, r2)` over several r2.
    Sweep {
        /// Disk center as `x,y`.
        #[arg(long, default_value = "1/2,1/2")]
        center: String,
        /// Squared radii, comma separated or repeated.
        #[arg(long, required = true, value_delimiter = ',')]
        r2: Vec<String>,
        #[arg(long, default_value_t = 9)]
        level: u32,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Check claimed diameters by boundary sampling (all catalog entries by default).
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

fn parse_param(text: &str) -> Result<(String, Rational), String> {
    let (key, value) = text.split_once('=').ok_or_else(|| format!("expected KEY=VALUE, got `{text}`"))?;
    let value = parse_rational(value.trim()).map_err(|e| e.to_string())?;
    Ok((key.trim().to_string(), value))
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Verification(_) => 2,
        }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

/// What a command produced: the rendered document, the record payload and
/// an optional verification failure.
pub struct Outcome {
    pub text: String,
    pub inputs: String,
    pub outputs: serde_json::Value,
    pub failure: Option<String>,
}

fn render_doc<T: Serialize>(
    format: Format,
    headers: &[&str],
    rows: &[Vec<String>],
    json: &T,
) -> Result<String, CliError> {
    Ok(match format {
        Format::Table => table(headers, rows),
        Format::Csv => csv_document(headers, rows).map_err(|e| CliError::Io(e.to_string()))?,
        Format::Json => json_document(json),
    })
}

fn to_value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("output values serialize")
}

/// The cover set named by `source`, plus canonical text describing it.
fn resolve(source: &Source) -> Result<(CoverSpec, String), CliError> {
    match (&source.construction, &source.config) {
        (Some(name), None) => {
            let params: Params = source.params.iter().cloned().collect();
            let spec = build(name, (!params.is_empty()).then_some(&params)).map_err(usage)?;
            let canon: Vec<String> =
                spec.params.iter().map(|(k, v)| format!("{k}={}", exact_text(v))).collect();
            Ok((spec, format!("construction={name};params={}", canon.join(","))))
        }
        (None, Some(path)) => {
            if !source.params.is_empty() {
                return Err(usage("--param only applies to catalog constructions"));
            }
            let spec = load_region(path).map_err(usage)?;
            let file = serde_json::to_string(&RegionFile::from_cover_spec(&spec)).expect("serializable");
            Ok((spec, format!("config={file}")))
        }
        _ => Err(usage("give exactly one of --construction or --config")),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageEntry {
    pub name: String,
    pub level: u32,
    pub inside: String,
    pub straddle: String,
    pub outside: String,
    pub total: String,
    pub fraction: RationalText,
    pub diameter: DiameterText,
    /// Rounded toward `+inf`; absent when nothing is certified inside.
    pub bound: Option<String>,
    pub provenance: String,
}

impl CoverageEntry {
    fn new(name: &str, count: &CoverageCount, spec_diameter: &cantor_bound_core::DiameterValue, bound: Option<&UpperBound>) -> Self {
        CoverageEntry {
            name: name.to_string(),
            level: count.level,
            inside: count.inside.to_string(),
            straddle: count.straddle.to_string(),
            outside: count.outside.to_string(),
            total: count.total.to_string(),
            fraction: RationalText::new(&count.inside_fraction()),
            diameter: DiameterText::new(spec_diameter),
            bound: bound.map(|b| b.value.published()),
            provenance: String::from("certified"),
        }
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.name.clone(),
            self.level.to_string(),
            self.inside.clone(),
            self.straddle.clone(),
            self.outside.clone(),
            format!("{} ({})", self.fraction.exact, self.fraction.decimal),
            self.bound.clone().unwrap_or_else(|| String::from("-")),
            self.provenance.clone(),
        ]
    }
}

const COVERAGE_HEADERS: [&str; 8] =
    ["name", "level", "inside", "straddle", "outside", "fraction", "bound", "provenance"];

fn cmd_report(format: Format) -> Result<Outcome, CliError> {
    let rows = report_rows().map_err(|e| CliError::Verification(e.to_string()))?;
    let entries: Vec<ReportEntry> = rows.iter().map(|r| r.entry()).collect();
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.cells()).collect();
    let failed: Vec<&str> = rows.iter().filter(|r| !r.pass).map(|r| r.name.as_str()).collect();
    Ok(Outcome {
        text: render_doc(format, &HEADERS, &cells, &entries)?,
        inputs: String::from("report"),
        outputs: to_value(&entries),
        failure: (!failed.is_empty()).then(|| format!("fixture mismatch for {}", failed.join(", "))),
    })
}

fn cmd_coverage(source: &Source, level: Option<u32>, format: Format) -> Result<Outcome, CliError> {
    let (spec, canon) = resolve(source)?;
    let level = level.unwrap_or(spec.recommended_level);
    let count = count_coverage_parallel(&spec.root, &spec.region, level).map_err(usage)?;
    let bound = if count.inside.is_zero() {
        None
    } else {
        let s = cantor_dust_dimension();
        let value = partial_estimation_bound(&count.inside_fraction(), &spec.normalized_diameter(), &s)
            .map_err(|e| CliError::Verification(e.to_string()))?;
        Some(UpperBound::certified(value, count.clone()))
    };
    let entry = CoverageEntry::new(&spec.name, &count, &spec.diameter, bound.as_ref());
    Ok(Outcome {
        text: render_doc(format, &COVERAGE_HEADERS, &[entry.cells()], &entry)?,
        inputs: format!("{canon};level={level}"),
        outputs: to_value(&[&entry]),
        failure: None,
    })
}

fn cmd_render(source: &Source, level: u32, out: Option<&PathBuf>) -> Result<Outcome, CliError> {
    let (spec, canon) = resolve(source)?;
    let svg = render_svg(&spec, level).map_err(usage)?;
    let digest = hex::encode(<sha2::Sha256 as sha2::Digest>::digest(svg.as_bytes()));
    let summary = serde_json::json!([{ "name": spec.name, "level": level, "bytes": svg.len(), "sha256": digest }]);
    let text = match out {
        Some(path) => {
            std::fs::write(path, &svg)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
            format!("wrote {} ({} bytes)\n", path.display(), svg.len())
        }
        None => svg,
    };
    Ok(Outcome { text, inputs: format!("{canon};level={level}"), outputs: summary, failure: None })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimizeEntry {
    pub lo: String,
    pub hi: String,
    pub tol: String,
    pub k_star: RationalText,
    pub f_k_star: String,
    pub second_derivative: Option<String>,
    pub iterations: u32,
    pub best_integer_k: u32,
    pub best_integer_bound: String,
    pub diagnostic: Option<String>,
}

fn cmd_optimize(lo: f64, hi: f64, tol: f64, kmin: u32, kmax: u32, format: Format) -> Result<Outcome, CliError> {
    let s = cantor_dust_dimension();
    let r = minimize_octagon_series(lo, hi, tol, &s).map_err(usage)?;
    let best = best_integer_k(kmin, kmax, &s).map_err(usage)?;
    let entry = OptimizeEntry {
        lo: lo.to_string(),
        hi: hi.to_string(),
        tol: tol.to_string(),
        k_star: RationalText::new(&r.k),
        f_k_star: r.value.decimal(12),
        second_derivative: r.second_derivative.as_ref().map(|d| d.decimal(12)),
        iterations: r.iterations,
        best_integer_k: best.k,
        best_integer_bound: best.bound.decimal(12),
        diagnostic: r.diagnostic.clone(),
    };
    let headers = ["quantity", "value"];
    let rows: Vec<Vec<String>> = [
        ("k_star", entry.k_star.decimal.clone()),
        ("f_k_star", entry.f_k_star.clone()),
        ("second_derivative", entry.second_derivative.clone().unwrap_or_else(|| "-".into())),
        ("iterations", entry.iterations.to_string()),
        ("best_integer_k", entry.best_integer_k.to_string()),
        ("best_integer_bound", entry.best_integer_bound.clone()),
        ("diagnostic", entry.diagnostic.clone().unwrap_or_else(|| "-".into())),
    ]
    .into_iter()
    .map(|(k, v)| vec![k.to_string(), v])
    .collect();
    Ok(Outcome {
        text: render_doc(format, &headers, &rows, &entry)?,
        inputs: format!("lo={lo};hi={hi};tol={tol};kmin={kmin};kmax={kmax}"),
        outputs: to_value(&[&entry]),
        failure: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub r2: RationalText,
    pub level: u32,
    pub inside: String,
    pub straddle: String,
    pub outside: String,
    pub fraction: RationalText,
    pub diameter: DiameterText,
    pub bound: Option<String>,
    pub provenance: String,
}

impl SweepEntry {
    fn new(row: &SweepRow) -> Self {
        SweepEntry {
            r2: RationalText::new(&row.r2),
            level: row.coverage.level,
            inside: row.coverage.inside.to_string(),
            straddle: row.coverage.straddle.to_string(),
            outside: row.coverage.outside.to_string(),
            fraction: RationalText::new(&row.coverage.inside_fraction()),
            diameter: DiameterText::new(&row.diameter),
            bound: row.bound.as_ref().map(|b| b.value.published()),
            provenance: String::from("certified"),
        }
    }

    fn cells(&self, diameter: &cantor_bound_core::DiameterValue) -> Vec<String> {
        vec![
            self.r2.exact.clone(),
            self.inside.clone(),
            self.straddle.clone(),
            self.outside.clone(),
            format!("{} ({})", self.fraction.exact, self.fraction.decimal),
            diameter_label(diameter),
            self.bound.clone().unwrap_or_else(|| String::from("-")),
        ]
    }
}

fn parse_center(text: &str) -> Result<Point, CliError> {
    let (x, y) = text.split_once(',').ok_or_else(|| usage(format!("center must be `x,y`, got `{text}`")))?;
    Ok(Point::new(parse_rational(x.trim()).map_err(usage)?, parse_rational(y.trim()).map_err(usage)?))
}

fn cmd_sweep(center: &str, r2: &[String], level: u32, format: Format) -> Result<Outcome, CliError> {
    let c = parse_center(center)?;
    let radii = r2
        .iter()
        .map(|t| parse_rational(t.trim()).map_err(usage))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = sweep_disk_radius(&c, &radii, level, &cantor_dust_dimension()).map_err(usage)?;
    let entries: Vec<SweepEntry> = rows.iter().map(SweepEntry::new).collect();
    let cells: Vec<Vec<String>> = rows.iter().zip(&entries).map(|(r, e)| e.cells(&r.diameter)).collect();
    let headers = ["r2", "inside", "straddle", "outside", "fraction", "diameter", "bound"];
    let canon: Vec<String> = radii.iter().map(exact_text).collect();
    Ok(Outcome {
        text: render_doc(format, &headers, &cells, &entries)?,
        inputs: format!(
            "center={},{};r2={};level={level}",
            exact_text(&c.x),
            exact_text(&c.y),
            canon.join(",")
        ),
        outputs: to_value(&entries),
        failure: None,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyEntry {
    pub name: String,
    pub claimed: DiameterText,
    pub max_sampled_distance: String,
    pub vertex_diameter: Option<String>,
    pub samples: usize,
    pub area_estimate: f64,
    pub isoperimetric_limit: f64,
    pub distance_ok: bool,
    pub area_ok: bool,
    pub pass: bool,
    pub diagnostic: Option<String>,
}

fn cmd_verify(source: &Source, samples: usize, format: Format) -> Result<Outcome, CliError> {
    let (specs, canon) = if source.construction.is_none() && source.config.is_none() {
        if !source.params.is_empty() {
            return Err(usage("--param needs --construction"));
        }
        let specs = catalog()
            .into_iter()
            .map(|n| build(n, None).map_err(usage))
            .collect::<Result<Vec<_>, _>>()?;
        (specs, String::from("catalog"))
    } else {
        let (spec, canon) = resolve(source)?;
        (vec![spec], canon)
    };
    let entries: Vec<VerifyEntry> = specs
        .iter()
        .map(|spec| {
            let r = verify_diameter(&spec.region, &spec.diameter, samples);
            VerifyEntry {
                name: spec.name.clone(),
                claimed: DiameterText::new(&spec.diameter),
                max_sampled_distance: r.max_sampled_distance.decimal(12),
                vertex_diameter: r.vertex_diameter.as_ref().map(|v| v.decimal(12)),
                samples: r.samples,
                area_estimate: r.area_estimate,
                isoperimetric_limit: r.isoperimetric_limit,
                distance_ok: r.distance_ok,
                area_ok: r.area_ok,
                pass: r.pass,
                diagnostic: r.diagnostic,
            }
        })
        .collect();
    let headers = ["name", "claimed", "sampled", "area", "limit", "pass"];
    let cells: Vec<Vec<String>> = specs
        .iter()
        .zip(&entries)
        .map(|(spec, e)| {
            vec![
                e.name.clone(),
                diameter_label(&spec.diameter),
                e.max_sampled_distance.clone(),
                format!("{:.6}", e.area_estimate),
                format!("{:.6}", e.isoperimetric_limit),
                if e.pass { "pass" } else { "FAIL" }.to_string(),
            ]
        })
        .collect();
    let failed: Vec<&str> = entries.iter().filter(|e| !e.pass).map(|e| e.name.as_str()).collect();
    Ok(Outcome {
        text: render_doc(format, &headers, &cells, &entries)?,
        inputs: format!("{canon};samples={samples}"),
        outputs: to_value(&entries),
        failure: (!failed.is_empty()).then(|| format!("diameter check failed for {}", failed.join(", "))),
    })
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Report { format } => cmd_report(*format),
        Command::Coverage { source, level, format } => cmd_coverage(source, *level, *format),
        Command::Render { source, level, out } => cmd_render(source, *level, out.as_ref()),
        Command::Optimize { lo, hi, tol, kmin, kmax, format } => {
            cmd_optimize(*lo, *hi, *tol, *kmin, *kmax, *format)
        }
        Command::Sweep { center, r2, level, format } => cmd_sweep(center, r2, *level, *format),
        Command::Verify { source, samples, format } => cmd_verify(source, *samples, *format),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Report { .. } => "report",
        Command::Coverage { .. } => "coverage",
        Command::Render { .. } => "render",
        Command::Optimize { .. } => "optimize",
        Command::Sweep { .. } => "sweep",
        Command::Verify { .. } => "verify",
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return e.exit_code();
        }
    };
    if out.write_all(outcome.text.as_bytes()).is_err() {
        return 1;
    }
    if let Some(dir) = &cli.record {
        let record = RunRecord::new(command_name(&cli.command), outcome.inputs.clone(), outcome.outputs.clone());
        if let Err(e) = record.write_to(dir) {
            let _ = writeln!(err, "error: cannot write run record: {e}");
            return 1;
        }
    }
    match outcome.failure {
        Some(msg) => {
            let _ = writeln!(err, "error: {}", CliError::Verification(msg));
            2
        }
        None => 0,
    }
}
