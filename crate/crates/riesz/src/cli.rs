//! The `riesz` command line.
//!
//! Exit codes: 0 success, 1 invalid arguments or input files, 2 numeric or
//! domain error, 3 a verification check failed. Output goes to `--out`, or
//! to `$RIESZ_OUT_DIR/<subcommand>.<csv|jsonl>` when that variable is set,
//! or else to standard output.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use riesz_core::algebra::{Algebra, HermitianMatrix};
use riesz_core::riesz::{EigenRoute, RieszParams, Scale, Variant};
use riesz_core::sampler::Sampler;
use riesz_core::special::{log_mv_gamma_weighted, Partition, SeriesControl, ShiftPolicy, WeightSign};

use crate::io::{
    matrix_csv_row, matrix_header, matrix_json_row, parse_scale, read_matrix_file, read_spectra, FormatError,
};
use crate::report::{Sci, VerificationReport};
use crate::verify::{char_fn_points, run_suite, Suite};

pub const OUT_DIR_ENV: &str = "RIESZ_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "riesz", version, about = "Riesz matrix-variate distributions: evaluation, sampling and verification")]
pub struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output file; relative paths are resolved against $RIESZ_OUT_DIR
    /// when set.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Include wall-clock runtimes in verification reports.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    /// One JSON object per line.
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    #[value(name = "I", alias = "1")]
    I,
    #[value(name = "II", alias = "2")]
    II,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Auto,
    Closed,
    Series,
    Haar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShiftArg {
    Auto,
    None,
}

/// Distribution parameters shared by the evaluation subcommands.
#[derive(Debug, Clone, Args)]
pub struct DistArgs {
    /// Real dimension of the algebra: 1, 2, 4 (8 for scalar formulas only).
    #[arg(long)]
    pub beta: u32,
    /// Matrix order.
    #[arg(long)]
    pub m: usize,
    /// Shape parameter.
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    /// Weight as comma-separated non-increasing integers; padded with
    /// zeros to length m.
    #[arg(long, default_value = "0")]
    pub kappa: String,
    #[arg(long, value_enum, default_value_t = VariantArg::I)]
    pub variant: VariantArg,
    /// Scale: identity, scalar:<s>, diag:<d1>,..,<dm> or a matrix file.
    #[arg(long, default_value = "identity")]
    pub sigma: String,
}

#[derive(Debug, Clone, Args)]
pub struct SeriesArgs {
    #[arg(long, default_value_t = 30)]
    pub max_degree: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub rel_tol: f64,
    /// Return the partial sum instead of failing when the tolerance is not
    /// met at max-degree.
    #[arg(long)]
    pub no_hard_fail: bool,
    #[arg(long, value_enum, default_value_t = ShiftArg::Auto)]
    pub shift: ShiftArg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate log Gamma_m^beta[a, +-kappa] over a grid of a.
    Gamma {
        #[arg(long)]
        beta: u32,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "0")]
        kappa: String,
        /// Comma-separated values of a.
        #[arg(long, allow_negative_numbers = true, conflicts_with = "a_grid")]
        a: Option<String>,
        /// start:stop:count, inclusive.
        #[arg(long, allow_negative_numbers = true)]
        a_grid: Option<String>,
        #[arg(long, value_enum, default_value_t = SignArg::Both)]
        sign: SignArg,
    },
    /// Log-density at every matrix of a matrix file.
    Density {
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long)]
        input: PathBuf,
    },
    /// Characteristic function at zero, at random points or at the
    /// matrices of a file.
    Cf {
        #[command(flatten)]
        dist: DistArgs,
        /// zero, random:<count> or a matrix file.
        #[arg(long, default_value = "zero")]
        t: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Draw n matrices.
    Sample {
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long, default_value_t = 1)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Joint eigenvalue log-density at given spectra.
    Eigdensity {
        #[command(flatten)]
        dist: DistArgs,
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long, value_enum, default_value_t = RouteArg::Auto)]
        route: RouteArg,
        /// One spectrum as comma-separated eigenvalues; repeatable.
        #[arg(long)]
        lambda: Vec<String>,
        /// Spectrum file (rows of eigenvalues).
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Run a verification campaign and emit one report per check.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::Default)]
        suite: Suite,
        /// Only run checks of these kinds (e.g. char_fn); repeatable.
        #[arg(long)]
        check: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numeric(String),
    #[error("{failed} of {total} checks failed")]
    Verification { failed: usize, total: usize },
    #[error("{0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) | CliError::Io(_) => 1,
            CliError::Numeric(_) => 2,
            CliError::Verification { .. } => 3,
        }
    }
}

impl From<riesz_core::Error> for CliError {
    fn from(e: riesz_core::Error) -> Self {
        use riesz_core::Error as E;
        match e {
            E::Domain { .. }
            | E::NotPositiveDefinite
            | E::Singular
            | E::EigenvalueCollision { .. }
            | E::Truncation { .. }
            | E::VanishingMinor => CliError::Numeric(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Core(c) => c.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

/// A table cell.
enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
}

/// Row-oriented table for CSV (with header) or JSON lines, buffered until complete.
struct Table {
    format: Format,
    columns: Vec<String>,
    buf: Vec<u8>,
}

impl Table {
    fn new(format: Format, columns: Vec<String>) -> Self {
        let mut buf = Vec::new();
        if format == Format::Csv {
            buf.extend_from_slice(columns.join(",").as_bytes());
            buf.push(b'\n');
        }
        Table { format, columns, buf }
    }

    fn row(&mut self, cells: &[Cell]) {
        let line = match self.format {
            Format::Csv => cells
                .iter()
                .map(|c| match c {
                    Cell::Num(v) => Sci(*v).to_string(),
                    Cell::Int(v) => v.to_string(),
                    Cell::Text(s) if s.contains(',') || s.contains('"') => format!("\"{}\"", s.replace('"', "\"\"")),
                    Cell::Text(s) => s.clone(),
                })
                .collect::<Vec<_>>()
                .join(","),
            Format::Json => {
                let fields: Vec<String> = self
                    .columns
                    .iter()
                    .zip(cells)
                    .map(|(name, c)| {
                        let v = match c {
                            Cell::Num(v) => serde_json::to_string(&Sci(*v)),
                            Cell::Int(v) => serde_json::to_string(v),
                            Cell::Text(s) => serde_json::to_string(s),
                        };
                        format!("{}:{}", serde_json::to_string(name).expect("key"), v.expect("cell"))
                    })
                    .collect();
                format!("{{{}}}", fields.join(","))
            }
        };
        self.buf.extend_from_slice(line.as_bytes());
        self.buf.push(b'\n');
    }

    fn finish(self, mut out: impl Write) -> io::Result<()> {
        out.write_all(&self.buf)?;
        out.flush()
    }
}

fn parse_kappa(s: &str, m: usize) -> Result<Partition, CliError> {
    let p = Partition::from_str(s)?;
    if p.len() > m {
        return Err(CliError::Validation(format!("kappa {s:?} has more than m = {m} parts")));
    }
    Ok(Partition::with_len(p.parts(), m)?)
}

fn build_params(d: &DistArgs) -> Result<RieszParams, CliError> {
    if d.m == 0 {
        return Err(CliError::Validation("m must be at least 1".into()));
    }
    let algebra = Algebra::from_beta(d.beta)?;
    let kappa = parse_kappa(&d.kappa, d.m)?;
    let scale = if algebra.supports_matrices() {
        parse_scale(&d.sigma, algebra, d.m)?
    } else {
        match parse_scale(&d.sigma, Algebra::Real, d.m)? {
            s @ Scale::Isotropic(_) => s,
            Scale::Matrix(_) => {
                return Err(CliError::Validation("beta = 8 accepts only an isotropic scale".into()));
            }
        }
    };
    let variant = match d.variant {
        VariantArg::I => Variant::TypeI,
        VariantArg::II => Variant::TypeII,
    };
    Ok(RieszParams::new(variant, algebra, d.a, kappa, scale)?)
}

fn series_control(s: &SeriesArgs) -> Result<SeriesControl, CliError> {
    let ctrl = SeriesControl {
        max_degree: s.max_degree,
        rel_tol: s.rel_tol,
        hard_fail: !s.no_hard_fail,
        shift: match s.shift {
            ShiftArg::Auto => ShiftPolicy::Auto,
            ShiftArg::None => ShiftPolicy::None,
        },
    };
    ctrl.validate()?;
    Ok(ctrl)
}

fn parse_a_values(a: Option<&str>, grid: Option<&str>) -> Result<Vec<f64>, CliError> {
    let bad = |s: &str| CliError::Validation(format!("bad number {s:?}"));
    match (a, grid) {
        (Some(list), None) => list.split(',').map(|t| t.trim().parse().map_err(|_| bad(t))).collect(),
        (None, Some(g)) => {
            let parts: Vec<&str> = g.split(':').collect();
            let [start, stop, count] = parts[..] else {
                return Err(CliError::Validation(format!("a-grid must be start:stop:count, got {g:?}")));
            };
            let start: f64 = start.parse().map_err(|_| bad(start))?;
            let stop: f64 = stop.parse().map_err(|_| bad(stop))?;
            let count: usize = count.parse().map_err(|_| bad(count))?;
            match count {
                0 => Err(CliError::Validation("a-grid count must be positive".into())),
                1 => Ok(vec![start]),
                _ => Ok((0..count)
                    .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
                    .collect()),
            }
        }
        _ => Err(CliError::Validation("give exactly one of --a and --a-grid".into())),
    }
}

fn output_path(out: Option<&Path>, default_name: &str) -> Option<PathBuf> {
    let dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from);
    match (out, dir) {
        (Some(p), Some(d)) if p.is_relative() => Some(d.join(p)),
        (Some(p), _) => Some(p.to_path_buf()),
        (None, Some(d)) => Some(d.join(default_name)),
        (None, None) => None,
    }
}

fn open_output(cli: &Cli, stem: &str) -> Result<Box<dyn Write>, CliError> {
    let ext = match cli.format {
        Format::Csv => "csv",
        Format::Json => "jsonl",
    };
    match output_path(cli.out.as_deref(), &format!("{stem}.{ext}")) {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            Ok(Box::new(BufWriter::new(File::create(path)?)))
        }
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
    }
}

fn kappa_text(p: &Partition) -> Cell {
    Cell::Text(p.to_string())
}

fn gamma(cli: &Cli, beta: u32, m: usize, kappa: &str, a: Option<&str>, grid: Option<&str>, sign: SignArg) -> Result<(), CliError> {
    if m == 0 {
        return Err(CliError::Validation("m must be at least 1".into()));
    }
    let algebra = Algebra::from_beta(beta)?;
    let kappa = parse_kappa(kappa, m)?;
    let values = parse_a_values(a, grid)?;
    let signs: &[(WeightSign, &str)] = match sign {
        SignArg::Plus => &[(WeightSign::Positive, "+")],
        SignArg::Minus => &[(WeightSign::Negative, "-")],
        SignArg::Both => &[(WeightSign::Positive, "+"), (WeightSign::Negative, "-")],
    };
    let cols = ["beta", "m", "a", "kappa", "sign", "log_gamma"].map(String::from).to_vec();
    let mut table = Table::new(cli.format, cols);
    for &a in &values {
        for &(s, name) in signs {
            let lg = log_mv_gamma_weighted(algebra, a, &kappa, s)?;
            table.row(&[
                Cell::Int(beta as u64),
                Cell::Int(m as u64),
                Cell::Num(a),
                kappa_text(&kappa),
                Cell::Text(name.into()),
                Cell::Num(lg),
            ]);
        }
    }
    table.finish(open_output(cli, "gamma")?)?;
    Ok(())
}

fn density(cli: &Cli, dist: &DistArgs, input: &Path) -> Result<(), CliError> {
    let params = build_params(dist)?;
    let set = read_matrix_file(input)?;
    if set.algebra != params.algebra() || set.order != params.order() {
        return Err(CliError::Validation(format!(
            "input holds beta={}, m={}; the distribution has beta={}, m={}",
            set.algebra.beta(),
            set.order,
            params.algebra().beta(),
            params.order()
        )));
    }
    let cols = ["index", "log_density"].map(String::from).to_vec();
    let mut table = Table::new(cli.format, cols);
    for (i, x) in set.matrices.iter().enumerate() {
        let ld = params.log_density(&x.positive_definite()?)?;
        table.row(&[Cell::Int(i as u64), Cell::Num(ld)]);
    }
    table.finish(open_output(cli, "density")?)?;
    Ok(())
}

fn cf(cli: &Cli, dist: &DistArgs, t: &str, seed: u64) -> Result<(), CliError> {
    let params = build_params(dist)?;
    let (algebra, m) = (params.algebra(), params.order());
    let ts: Vec<HermitianMatrix> = if t == "zero" {
        vec![HermitianMatrix::zeros(algebra, m)?]
    } else if let Some(count) = t.strip_prefix("random:") {
        let count: usize = count
            .parse()
            .map_err(|_| CliError::Validation(format!("bad point count {count:?}")))?;
        char_fn_points(&params, count, seed)?
    } else {
        let set = read_matrix_file(Path::new(t))?;
        if set.algebra != algebra || set.order != m {
            return Err(CliError::Validation("T file does not match beta and m".into()));
        }
        set.matrices
    };
    let cols = ["index", "re", "im"].map(String::from).to_vec();
    let mut table = Table::new(cli.format, cols);
    for (i, t) in ts.iter().enumerate() {
        let v = params.char_fn(t)?;
        table.row(&[Cell::Int(i as u64), Cell::Num(v.re), Cell::Num(v.im)]);
    }
    table.finish(open_output(cli, "cf")?)?;
    Ok(())
}

/// Draws per parallel block of the `sample` subcommand.
const SAMPLE_BLOCK: u64 = 1 << 14;

fn sample(cli: &Cli, dist: &DistArgs, n: u64, seed: u64) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Validation("n must be at least 1".into()));
    }
    let params = build_params(dist)?;
    let sampler = Sampler::new(&params)?;
    let mut out = open_output(cli, "sample")?;
    if cli.format == Format::Csv {
        writeln!(out, "{}", matrix_header(params.algebra(), params.order()))?;
    }
    let mut lo = 0;
    while lo < n {
        let hi = (lo + SAMPLE_BLOCK).min(n);
        let rows: Vec<String> = (lo..hi)
            .into_par_iter()
            .map(|j| {
                let x = sampler.draw(seed, j);
                match cli.format {
                    Format::Csv => matrix_csv_row(x.as_hermitian()),
                    Format::Json => matrix_json_row(j as usize, x.as_hermitian()),
                }
            })
            .collect();
        for r in rows {
            writeln!(out, "{r}")?;
        }
        lo = hi;
    }
    out.flush()?;
    Ok(())
}

fn eigdensity(
    cli: &Cli,
    dist: &DistArgs,
    series: &SeriesArgs,
    route: RouteArg,
    lambda: &[String],
    input: Option<&Path>,
) -> Result<(), CliError> {
    let params = build_params(dist)?;
    let ctrl = series_control(series)?;
    let route = match route {
        RouteArg::Auto => EigenRoute::Auto,
        RouteArg::Closed => EigenRoute::ClosedForm,
        RouteArg::Series => EigenRoute::Series,
        RouteArg::Haar => EigenRoute::Haar,
    };
    let mut spectra = Vec::new();
    for l in lambda {
        spectra.push(
            l.split(',')
                .map(|t| t.trim().parse::<f64>().map_err(|_| CliError::Validation(format!("bad eigenvalue {t:?}"))))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    if let Some(path) = input {
        spectra.extend(read_spectra(io::BufReader::new(File::open(path)?))?);
    }
    if spectra.is_empty() {
        return Err(CliError::Validation("give --lambda or --input".into()));
    }
    let density = params.eigen_density(route, &ctrl)?;
    let m = params.order();
    let mut cols = vec!["index".to_string()];
    cols.extend((1..=m).map(|i| format!("lambda_{i}")));
    cols.push("log_density".into());
    let mut table = Table::new(cli.format, cols);
    for (i, values) in spectra.into_iter().enumerate() {
        let spectrum = riesz_core::algebra::Spectrum::new(params.algebra(), values)?;
        let ld = density.log_density(&spectrum)?;
        let mut cells = vec![Cell::Int(i as u64)];
        cells.extend(spectrum.values().iter().map(|&v| Cell::Num(v)));
        cells.push(Cell::Num(ld));
        table.row(&cells);
    }
    table.finish(open_output(cli, "eigdensity")?)?;
    Ok(())
}

fn verify(cli: &Cli, suite: Suite, filter: &[String], seed: u64) -> Result<(), CliError> {
    let mut checks = suite.checks()?;
    if !filter.is_empty() {
        let reports_before = checks.len();
        checks.retain(|c| filter.iter().any(|f| c.kind() == f));
        if checks.is_empty() {
            return Err(CliError::Validation(format!(
                "no check of kind {filter:?} among the {reports_before} checks of the suite"
            )));
        }
    }
    let reports = run_suite(&checks, seed);
    let mut out = open_output(cli, "verify")?;
    match cli.format {
        Format::Csv => {
            writeln!(out, "{}", VerificationReport::csv_header(cli.timings))?;
            for r in &reports {
                writeln!(out, "{}", r.to_csv_row(cli.timings))?;
            }
        }
        Format::Json => {
            for r in &reports {
                writeln!(out, "{}", r.to_json_line(cli.timings))?;
            }
        }
    }
    out.flush()?;
    let failed = reports.iter().filter(|r| !r.pass).count();
    if failed > 0 {
        for r in reports.iter().filter(|r| !r.pass) {
            eprintln!("{r}");
        }
        return Err(CliError::Verification {
            failed,
            total: reports.len(),
        });
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Gamma {
            beta,
            m,
            kappa,
            a,
            a_grid,
            sign,
        } => gamma(cli, *beta, *m, kappa, a.as_deref(), a_grid.as_deref(), *sign),
        Command::Density { dist, input } => density(cli, dist, input),
        Command::Cf { dist, t, seed } => cf(cli, dist, t, *seed),
        Command::Sample { dist, n, seed } => sample(cli, dist, *n, *seed),
        Command::Eigdensity {
            dist,
            series,
            route,
            lambda,
            input,
        } => eigdensity(cli, dist, series, *route, lambda, input.as_deref()),
        Command::Verify { suite, check, seed } => verify(cli, *suite, check, *seed),
    }
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.threads {
        Some(0) => Err(CliError::Validation("--threads must be positive".into())),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(CliError::Validation(e.to_string())),
        },
        None => execute(&cli),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
