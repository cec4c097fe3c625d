//! Matrix and report files, plots, and the `nrange` command line.

mod matrix_file;
mod plot;
mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kippenhahn::kippenhahn_poly;
use crate::linalg_pencil::Mode;
use crate::membership::membership_test_exact;
use crate::poly_core::rational::parse_q;
use crate::range_solver::{RangeResult, RangeSolver, SolverConfig};

pub use matrix_file::{parse_matrix, parse_matrix_str, write_matrix, Entry, MatrixFile};
pub use plot::{curve_csv, curve_samples, render_svg, CurveBranch, CurveSample, Plot, RangeLayer, CURVE_RESIDUAL};
pub use report::{
    bipoly_terms, decimal, fraction, hompoly_terms, BoundaryReport, RangeReport, ReportFile, WitnessReport,
    DECIMAL_PLACES, REPORT_SCHEMA,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_AMBIGUOUS: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "nrange", version, about = "Rank-k numerical ranges of complex matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension and witnesses of the rank-k ranges.
    Compute(ComputeArgs),
    /// Samples of the real curve f_A(1, x, y) = 0.
    Curve(CurveArgs),
    /// The boundary polynomial g_A.
    Boundary(BoundaryArgs),
    /// Membership of a single point.
    Member(MemberArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        }
    }
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 720)]
    samples: usize,
    /// Overrides the mode recorded in the matrix file.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[command(flatten)]
    common: Common,
    /// Rank; repeat for several. Defaults to every rank from 1 to n.
    #[arg(long)]
    k: Vec<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CurveArgs {
    #[command(flatten)]
    common: Common,
    /// Affine chart; only `t=1` is supported.
    #[arg(long, default_value = "t=1")]
    chart: String,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BoundaryArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MemberArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    k: usize,
    /// `A,B` for the point A + iB; fractions and decimals are accepted.
    #[arg(long, allow_hyphen_values = true)]
    point: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Loaded {
    file: MatrixFile,
    solver: RangeSolver,
    mode: Mode,
}

fn load(c: &Common) -> Result<Loaded> {
    if !(c.tol > 0.0 && c.tol.is_finite()) {
        return Err(Error::Parameter(format!("tol must be positive, got {}", c.tol)));
    }
    let file = MatrixFile::read(&c.matrix)?;
    let mode = c.mode.map(Mode::from).unwrap_or(file.mode);
    let a = file.to_matrix().map_err(|e| Error::Parse(e.to_string()))?.with_mode(mode);
    let config = SolverConfig { tol: c.tol, samples: c.samples, ..SolverConfig::default() };
    Ok(Loaded { file, solver: RangeSolver::new(&a, config), mode })
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => Ok(std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {}", p.display(), e)))?),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {}", path.display(), e)))
}

fn summary(r: &RangeResult) -> String {
    let w = |x: &crate::range_solver::Witness| {
        let (a, b) = x.to_f64();
        format!("({:.12}, {:.12})", a, b)
    };
    let mut s = format!("k={} dim={} branch={:?}", r.k, r.dim, r.branch);
    if let Some(p) = &r.point {
        s += &format!(" point={}", w(p));
    }
    if let Some([p, q]) = &r.endpoints {
        s += &format!(" endpoints={} {}", w(p), w(q));
    }
    if r.ambiguous {
        s += " ambiguous";
    }
    s
}

/// Results for each `k`, together with the plot built from them.
pub fn compute_all(solver: &RangeSolver, ks: &[usize]) -> Result<Vec<RangeResult>> {
    ks.iter().map(|&k| solver.compute(k)).collect()
}

pub fn build_plot(solver: &RangeSolver, results: &[RangeResult], with_curve: bool) -> Result<Plot> {
    let samples = solver.config().samples;
    let mut plot = Plot::default();
    if with_curve {
        plot.curve = curve_samples(solver.data(), samples)?;
    }
    for r in results {
        let poly = solver.polygon(r.k, samples.max(8))?;
        plot.ranges.push(RangeLayer::new(r, &poly));
    }
    Ok(plot)
}

fn compute(args: &ComputeArgs) -> Result<i32> {
    let l = load(&args.common)?;
    let n = l.file.n;
    let ks: Vec<usize> = if args.k.is_empty() { (1..=n).collect() } else { args.k.clone() };
    let results = compute_all(&l.solver, &ks)?;
    let report = ReportFile::new(&l.file, l.mode, &l.solver.data().f, l.solver.config(), &results);
    for r in &results {
        eprintln!("{}", summary(r));
    }
    emit(args.out.as_deref(), &report.to_json())?;
    if let Some(p) = &args.svg {
        write_file(p, &render_svg(&build_plot(&l.solver, &results, true)?)?)?;
    }
    if let Some(p) = &args.csv {
        write_file(p, &curve_csv(&curve_samples(l.solver.data(), l.solver.config().samples)?))?;
    }
    Ok(if results.iter().any(|r| r.ambiguous) { EXIT_AMBIGUOUS } else { EXIT_OK })
}

fn curve(args: &CurveArgs) -> Result<i32> {
    if args.chart.replace(' ', "") != "t=1" {
        return Err(Error::Parameter(format!("unsupported chart '{}', expected t=1", args.chart)));
    }
    let l = load(&args.common)?;
    let branches = curve_samples(l.solver.data(), l.solver.config().samples)?;
    emit(args.csv.as_deref(), &curve_csv(&branches))?;
    if let Some(p) = &args.svg {
        write_file(p, &render_svg(&Plot { curve: branches, ranges: Vec::new() })?)?;
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct BoundaryFile {
    schema: &'static str,
    version: &'static str,
    matrix_sha256: String,
    g: BoundaryReport,
    dual: Vec<report::Term2>,
    lines: Vec<report::Term2>,
}

fn boundary(args: &BoundaryArgs) -> Result<i32> {
    let l = load(&args.common)?;
    let bp = l.solver.boundary()?;
    let out = BoundaryFile {
        schema: "nrange-boundary/1",
        version: env!("CARGO_PKG_VERSION"),
        matrix_sha256: l.file.sha256(),
        g: BoundaryReport::new(bp),
        dual: bipoly_terms(&bp.dual),
        lines: bipoly_terms(&bp.lines),
    };
    emit(args.out.as_deref(), &(serde_json::to_string_pretty(&out).expect("serializes") + "\n"))?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct MemberFile {
    schema: &'static str,
    k: usize,
    a: report::Fraction,
    b: report::Fraction,
    member: bool,
    margin: f64,
    certified: bool,
    ambiguous: bool,
}

fn member(args: &MemberArgs) -> Result<i32> {
    let (sa, sb) = args
        .point
        .split_once(',')
        .ok_or_else(|| Error::Parameter(format!("point '{}' is not of the form A,B", args.point)))?;
    let coord = |s: &str| parse_q(s).ok_or_else(|| Error::Parameter(format!("'{}' is not a number", s)));
    let (a, b) = (coord(sa)?, coord(sb)?);
    let c = &args.common;
    if !(c.tol > 0.0 && c.tol.is_finite()) {
        return Err(Error::Parameter(format!("tol must be positive, got {}", c.tol)));
    }
    let file = MatrixFile::read(&c.matrix)?;
    let m = file.to_matrix().map_err(|e| Error::Parse(e.to_string()))?;
    let kd = kippenhahn_poly(&m);
    let v = membership_test_exact(&kd, args.k, &a, &b, c.tol)?;
    let out = MemberFile {
        schema: "nrange-member/1",
        k: args.k,
        a: fraction(&a),
        b: fraction(&b),
        member: v.member,
        margin: v.margin,
        certified: v.certified,
        ambiguous: v.ambiguous,
    };
    emit(args.out.as_deref(), &(serde_json::to_string_pretty(&out).expect("serializes") + "\n"))?;
    Ok(if v.ambiguous { EXIT_AMBIGUOUS } else { EXIT_OK })
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Io(_) | Error::Dimension(_) => EXIT_PARSE,
        Error::Inconsistency(_) => EXIT_AMBIGUOUS,
        Error::Index(_) | Error::Parameter(_) | Error::Domain(_) => EXIT_USAGE,
    }
}

fn threads() -> std::result::Result<usize, String> {
    match std::env::var("NRANGE_THREADS") {
        Err(_) => Ok(0),
        Ok(s) => s.trim().parse().map_err(|_| format!("NRANGE_THREADS must be a nonnegative integer, got '{}'", s)),
    }
}

/// Runs the command line and returns the process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let n = match threads() {
        Ok(n) => n,
        Err(m) => {
            eprintln!("error: {}", m);
            return EXIT_USAGE;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_USAGE;
        }
    };
    let res = pool.install(|| match &cli.command {
        Command::Compute(a) => compute(a),
        Command::Curve(a) => curve(a),
        Command::Boundary(a) => boundary(a),
        Command::Member(a) => member(a),
    });
    match res {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            exit_code(&e)
        }
    }
}
