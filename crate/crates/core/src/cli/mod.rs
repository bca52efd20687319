//! The `qg` command line: curve files, analysis, discovery, named
//! verification scenarios and group reports.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 input error.

mod curve_file;
mod scenario;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use curve_file::{parse_seeds, CurveFile, FieldBlock, LoadedCurve, TermRecord};
pub use scenario::{Scenario, ScenarioCheck, ScenarioResult, SCENARIOS};

use crate::corpus::{self, Params};
use crate::error::{Error, Result};
use crate::groupkit::{closure, preserves_curve, GroupReport};
use crate::plane::ProjPoint;
use crate::qgal::{census, discover, quasi_galois_order, CensusReport, CertificateRecord, DEFAULT_DISCOVERY_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Both,
}

#[derive(Debug, Parser)]
#[command(name = "qg", version, about = "Quasi-Galois points of plane curves over cyclotomic fields")]
struct Cli {
    /// Report format; `both` prints the table followed by one JSON line.
    #[arg(long, value_enum, default_value = "both", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide the quasi-Galois order at one point.
    Analyze {
        curve: PathBuf,
        #[arg(long)]
        point: String,
    },
    /// Close a seed set under the generators found.
    Discover {
        curve: PathBuf,
        /// Seed file: one point per line, or a JSON array. Defaults to the
        /// curve file's seeds, then the coordinate vertices.
        #[arg(long)]
        seeds: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_DISCOVERY_CAP)]
        cap: usize,
    },
    /// Run a named verification scenario.
    Verify {
        /// klein21, hessian12, fermat:<d>, halfdeg:<n>[,a,b,c],
        /// quartic-family:<a,b,c>, dual, bounds, groups, flex:<d>
        scenario: String,
        #[arg(long, default_value_t = DEFAULT_DISCOVERY_CAP)]
        cap: usize,
    },
    /// Report the group generated by the discovered homologies.
    Group {
        curve: PathBuf,
        #[arg(long, required = true)]
        from_discovered: bool,
        #[arg(long)]
        seeds: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_DISCOVERY_CAP)]
        cap: usize,
    },
    /// Write a corpus curve as a curve file.
    ExportCorpus {
        /// Family name, optionally with positional parameters (`fermat:6`).
        name: String,
        /// Extra parameters as key=value.
        params: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct DiscoverReport {
    curve: String,
    certificates: Vec<CertificateRecord>,
    census: CensusReport,
}

#[derive(Serialize)]
struct GroupOutput {
    curve: String,
    generators: usize,
    preserves_curve: bool,
    group: GroupReport,
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Failure { context, error }) => {
            let _ = match context {
                Some(c) => writeln!(err, "error [{}] in {c}: {error}", error.code()),
                None => writeln!(err, "error [{}]: {error}", error.code()),
            };
            EXIT_INPUT
        }
    }
}

/// An error with the argument or file it came from.
struct Failure {
    context: Option<String>,
    error: Error,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { context: None, error }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Error::from(e).into()
    }
}

fn within<T>(r: Result<T>, context: impl Into<String>) -> std::result::Result<T, Failure> {
    r.map_err(|error| Failure {
        context: Some(context.into()),
        error,
    })
}

/// Entry point for the binary.
pub fn main_entry() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn emit<T: Serialize>(out: &mut dyn Write, format: Format, text: &str, record: &T) -> Result<()> {
    if format != Format::Json {
        out.write_all(text.as_bytes())?;
    }
    if format != Format::Text {
        writeln!(out, "{}", serde_json::to_string(record)?)?;
    }
    Ok(())
}

fn load_curve(path: &Path) -> std::result::Result<LoadedCurve, Failure> {
    within(CurveFile::read(path).and_then(|f| f.load()), path.display().to_string())
}

fn seeds_for(curve: &LoadedCurve, seeds: Option<&Path>) -> std::result::Result<Vec<ProjPoint>, Failure> {
    if let Some(path) = seeds {
        let text = within(std::fs::read_to_string(path).map_err(Error::from), format!("--seeds {}", path.display()))?;
        return within(parse_seeds(&curve.ctx, &text), format!("--seeds {}", path.display()));
    }
    if !curve.seeds.is_empty() {
        return Ok(curve.seeds.clone());
    }
    Ok((0..3).map(|i| ProjPoint::vertex(&curve.ctx, i)).collect())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Analyze { curve, point } => {
            let c = load_curve(curve)?;
            let p = within(ProjPoint::parse(&c.ctx, point), "--point")?;
            let cert = quasi_galois_order(&c.form, &p)?;
            let rec = cert.to_record();
            emit(out, format, &certificate_text(&rec), &rec)?;
            Ok(EXIT_OK)
        }
        Command::Discover { curve, seeds, cap } => {
            let c = load_curve(curve)?;
            let seeds = seeds_for(&c, seeds.as_deref())?;
            let certs = discover(&c.form, &seeds, *cap)?;
            let report = DiscoverReport {
                curve: c.name.clone(),
                certificates: certs.iter().map(|x| x.to_record()).collect(),
                census: census(c.form.degree(), &certs),
            };
            emit(out, format, &discover_text(&report), &report)?;
            Ok(EXIT_OK)
        }
        Command::Verify { scenario, cap } => {
            let s = within(Scenario::parse(scenario), "scenario")?;
            let result = s.run(scenario, *cap);
            emit(out, format, &scenario_text(&result), &result)?;
            Ok(if result.passed { EXIT_OK } else { EXIT_MISMATCH })
        }
        Command::Group { curve, seeds, cap, .. } => {
            let c = load_curve(curve)?;
            let seeds = seeds_for(&c, seeds.as_deref())?;
            let certs = discover(&c.form, &seeds, *cap)?;
            let gens: Vec<_> = certs.iter().filter_map(|x| x.generator.clone()).collect();
            if gens.is_empty() {
                return Err(Error::BadParams("no quasi-Galois points found from the seeds".into()).into());
            }
            let g = closure(&gens, crate::groupkit::DEFAULT_CLOSURE_CAP)?;
            let report = GroupOutput {
                curve: c.name.clone(),
                generators: gens.len(),
                preserves_curve: preserves_curve(&g, &c.form),
                group: g.report(),
            };
            emit(out, format, &group_text(&report), &report)?;
            Ok(EXIT_OK)
        }
        Command::ExportCorpus { name, params, output } => {
            let (family, mut p) = corpus::parse_spec(name)?;
            merge_params(&mut p, params)?;
            let c = corpus::build_curve(&family, &p)?;
            let json = CurveFile::from_named(&c).to_json();
            match output {
                Some(path) => std::fs::write(path, json + "\n")?,
                None => writeln!(out, "{json}")?,
            }
            Ok(EXIT_OK)
        }
    }
}

fn merge_params(p: &mut Params, extra: &[String]) -> Result<()> {
    for kv in extra {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::BadParams(format!("parameter {kv:?} is not key=value")))?;
        p.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn certificate_text(r: &CertificateRecord) -> String {
    let mut s = String::new();
    s += &format!("point              {}\n", r.point);
    s += &format!("on curve           {}\n", yes_no(r.on_curve));
    s += &format!("projection degree  {}\n", r.projection_degree);
    s += &format!("order              {}\n", r.order);
    s += &format!("galois             {}\n", yes_no(r.galois));
    if let Some(g) = &r.generator {
        let rows: Vec<String> = g.iter().map(|row| format!("[{}]", row.join(", "))).collect();
        s += &format!("generator          [{}]\n", rows.join(", "));
    }
    if let Some(a) = &r.axis {
        s += &format!("axis               {a}\n");
    }
    s
}

fn census_text(c: &CensusReport) -> String {
    let mut s = String::from("order  inner  outer\n");
    let orders: std::collections::BTreeSet<u32> = c.inner.keys().chain(c.outer.keys()).copied().collect();
    for n in orders {
        s += &format!("{n:>5}  {:>5}  {:>5}\n", c.inner_exact(n), c.outer_exact(n));
    }
    for b in c.inner_bounds.iter().chain(&c.outer_bounds).chain(&c.degree_bounds) {
        s += &format!("{} {}: {}\n", if b.holds { "ok  " } else { "FAIL" }, b.name, b.detail);
    }
    s
}

fn discover_text(r: &DiscoverReport) -> String {
    let mut s = format!("{}: {} quasi-Galois points\n", r.curve, r.certificates.len());
    for c in &r.certificates {
        s += &format!(
            "  {:<30} order {:<3} {}{}\n",
            c.point,
            c.order,
            if c.on_curve { "inner" } else { "outer" },
            if c.galois { " galois" } else { "" }
        );
    }
    s + &census_text(&r.census)
}

fn scenario_text(r: &ScenarioResult) -> String {
    let mut s = format!(
        "scenario {}: {} ({} ms)\n",
        r.scenario,
        if r.passed { "PASS" } else { "FAIL" },
        r.duration_ms
    );
    let width = r.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
    for c in &r.checks {
        let pad = width - c.name.chars().count();
        s += &format!(
            "  {} {}{}  expected {}  computed {}\n",
            if c.passed { "ok  " } else { "FAIL" },
            c.name,
            " ".repeat(pad),
            c.expected,
            c.computed
        );
    }
    s
}

fn group_text(r: &GroupOutput) -> String {
    let mut s = format!(
        "{}: group of order {} from {} generators, preserves curve: {}\n",
        r.curve,
        r.group.order,
        r.generators,
        yes_no(r.preserves_curve)
    );
    s += "element orders:";
    for (k, v) in &r.group.element_orders {
        s += &format!(" {k}:{v}");
    }
    s += &format!("\ninvolutions: {}\nhomology centers: {}\n", r.group.involutions, r.group.homology_centers.len());
    s
}
