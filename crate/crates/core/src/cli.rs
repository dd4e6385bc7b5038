//! The `swkernel` command line.
//!
//! Exit codes: 0 when every check passes, 1 on a numerical failure, 2 on a
//! usage or input-format error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::golden::{self, GoldenRow};
use crate::io::{fmt_f64, parse_resolution, OperatorFile, SymbolFile, SymbolHeader};
use crate::kernel::{p_operator, CartanConvention, KernelCoefficients, Route, ROUTE_TOL};
use crate::phase_space::{
    random_operator, AxiomReport, DistortionEntry, ReconstructionMode, Sampling, StratonovichWeyl,
};
use crate::repr::{coset_volume, dim_adjoint_block, CosetGrid, CosetPoint, GridKind};
use crate::tensor::verify_trace_orthonormality;
use crate::{linalg, Error, Result};

/// Tolerance for comparisons against closed forms.
pub const GOLDEN_TOL: f64 = 1e-12;
/// Relative residual accepted by the round-trip check of `verify`.
pub const ROUND_TRIP_TOL: f64 = 1e-8;
/// Relative tolerance of the distortion check of `verify`.
pub const DISTORTION_TOL: f64 = 1e-8;
/// Trace-orthonormality tolerance of the tensor family.
pub const STRUCTURE_TOL: f64 = 1e-11;

#[derive(Parser, Debug)]
#[command(
    name = "swkernel",
    version,
    about = "Stratonovich-Weyl kernels for symmetric SU(n) irreps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print characters, overlap matrix and coefficient tables.
    Table(TableArgs),
    /// Run the structural, route, axiom and round-trip checks.
    Verify(VerifyArgs),
    /// Compute the symbol of an operator on a grid.
    Symbol(SymbolArgs),
    /// Reconstruct an operator from a symbol file.
    Reconstruct(ReconstructArgs),
    /// Print a quadrature grid.
    Grid(GridArgs),
}

#[derive(Args, Debug)]
struct IrrepArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    lambda: usize,
}

#[derive(Args, Debug)]
struct GridSel {
    /// Per-angle resolution, `a,b` (SU(2)) or `a1,b1,a2,b2` (SU(3)).
    #[arg(long)]
    grid: Option<String>,
    /// Seed for Monte Carlo grids and random samples.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Monte Carlo grid size (n ≥ 4).
    #[arg(long, default_value_t = 4096)]
    mc_samples: usize,
}

impl GridSel {
    fn build(&self, n: usize, lambda: usize) -> Result<CosetGrid> {
        match (&self.grid, CosetGrid::default_resolution(n, lambda)) {
            (Some(g), _) => CosetGrid::exact(n, &parse_resolution(g)?),
            (None, Some(r)) => CosetGrid::exact(n, &r),
            (None, None) => CosetGrid::monte_carlo(n, self.mc_samples, self.seed),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Consistent,
    PaperVerbatim,
}

impl From<Mode> for ReconstructionMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Consistent => ReconstructionMode::Consistent,
            Mode::PaperVerbatim => ReconstructionMode::PaperVerbatim,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Convention {
    Generic,
    SpinHalf,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[command(flatten)]
    irrep: IrrepArgs,
    /// Comma-separated ordering parameters.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "-1,0,1"
    )]
    s: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Convention::Generic)]
    convention: Convention,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    irrep: IrrepArgs,
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "0"
    )]
    s: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Mode::Consistent)]
    mode: Mode,
    #[command(flatten)]
    grid: GridSel,
    /// Random points and operator pairs per axiom check.
    #[arg(long, default_value_t = 20)]
    samples: usize,
    /// Random operators in the round-trip check.
    #[arg(long, default_value_t = 10)]
    operators: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct SymbolArgs {
    /// Operator file (JSON).
    input: PathBuf,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    s: f64,
    /// Mode recorded for later reconstruction.
    #[arg(long, value_enum, default_value_t = Mode::Consistent)]
    mode: Mode,
    #[command(flatten)]
    grid: GridSel,
    /// Symbol file to write; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct ReconstructArgs {
    /// Symbol file (CSV).
    input: PathBuf,
    /// Overrides the mode recorded in the symbol file.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Operator file to compare against.
    #[arg(long)]
    reference: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Operator file to write; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct GridArgs {
    #[arg(long)]
    n: usize,
    /// Picks the default resolution when `--grid` is absent.
    #[arg(long, default_value_t = 1)]
    lambda: usize,
    #[command(flatten)]
    grid: GridSel,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

/// Outcome of a subcommand: text for stdout, optional diagnostics for
/// stderr and whether every check passed.
struct Outcome {
    stdout: String,
    stderr: String,
    passed: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            passed: true,
        }
    }
}

/// Usage and input errors map to 2, numerical failures to 1.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidIrrep { .. }
        | Error::ModeIndex { .. }
        | Error::AngleRange { .. }
        | Error::PointMismatch { .. }
        | Error::NoExactGrid(_)
        | Error::BadResolution(_)
        | Error::Parse(_)
        | Error::Io(_)
        | Error::Json(_) => 2,
        _ => 1,
    }
}

pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Table(a) => cmd_table(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Symbol(a) => cmd_symbol(&a),
        Command::Reconstruct(a) => cmd_reconstruct(&a),
        Command::Grid(a) => cmd_grid(&a),
    };
    match result {
        Ok(o) => {
            let _ = out.write_all(o.stdout.as_bytes());
            let _ = err.write_all(o.stderr.as_bytes());
            if o.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn join(v: &[f64]) -> String {
    v.iter()
        .map(|x| format!("{:>24}", fmt_f64(*x)))
        .collect::<Vec<_>>()
        .join(" ")
}

// ---------------------------------------------------------------- table

#[derive(Serialize)]
struct TableReport {
    n: usize,
    lambda: usize,
    dim: usize,
    volume: f64,
    block_dims: Vec<usize>,
    tables: Vec<TableEntry>,
}

#[derive(Serialize)]
struct TableEntry {
    #[serde(flatten)]
    coefficients: KernelCoefficients,
    golden: Vec<GoldenRow>,
}

fn cmd_table(a: &TableArgs) -> Result<Outcome> {
    let (n, lambda) = (a.irrep.n, a.irrep.lambda);
    let convention = match a.convention {
        Convention::Generic => CartanConvention::Generic,
        Convention::SpinHalf if n == 2 => CartanConvention::SpinHalf,
        Convention::SpinHalf => {
            return Err(Error::Parse("--convention spin-half needs --n 2".into()))
        }
    };
    let sw = StratonovichWeyl::for_irrep(n, lambda)?;
    let family = sw.family();
    let mut tables = Vec::new();
    for &s in &a.s {
        let kc = KernelCoefficients::compute(family, s, convention)?;
        let golden = golden::compare(n, lambda, &kc);
        tables.push(TableEntry {
            coefficients: kc,
            golden,
        });
    }
    let report = TableReport {
        n,
        lambda,
        dim: sw.space().dim(),
        volume: sw.volume(),
        block_dims: family.block_dims().to_vec(),
        tables,
    };
    let text = match a.format {
        Format::Json => to_json(&report)?,
        Format::Text => table_text(&report),
        Format::Csv => return Err(Error::Parse("table supports json and text".into())),
    };
    Ok(Outcome::ok(text))
}

fn table_text(r: &TableReport) -> String {
    let mut o = String::new();
    let _ = writeln!(
        o,
        "SU({}) lambda={} dim={} vol={}",
        r.n,
        r.lambda,
        r.dim,
        fmt_f64(r.volume)
    );
    let _ = writeln!(o, "block dims: {:?}", r.block_dims);
    if let Some(t) = r.tables.first() {
        let chi = &t.coefficients.chi;
        let _ = writeln!(o, "\nchi~_sigma(w) = sum_k t[sigma][k] exp(i w e_k)");
        let _ = writeln!(o, "  e_k        {}", join(&chi.exponents));
        for (sigma, row) in chi.coeffs.iter().enumerate() {
            let _ = writeln!(o, "  sigma={sigma:<4} {}", join(row));
        }
        let _ = writeln!(o, "\ng (overlap)");
        for row in &t.coefficients.g {
            let _ = writeln!(o, "  {}", join(row));
        }
    }
    for t in &r.tables {
        let k = &t.coefficients;
        let _ = writeln!(o, "\ns = {}", k.s);
        let _ = writeln!(o, "  F  {}", join(&k.f));
        let _ = writeln!(o, "  c  {}", join(&k.c));
        let _ = writeln!(o, "  G  {}", join(&k.synthesis));
        let _ = writeln!(o, "  P  {}", join(&k.p_diagonal));
        if !t.golden.is_empty() {
            let _ = writeln!(o, "  closed forms:");
            for g in &t.golden {
                let _ = writeln!(
                    o,
                    "    {:<8} = {:<30} {:>24}  |diff| {:.1e}",
                    g.quantity,
                    g.symbolic,
                    fmt_f64(g.computed),
                    g.deviation
                );
            }
        }
    }
    o
}

// --------------------------------------------------------------- verify

#[derive(Serialize)]
struct StructureCheck {
    orthonormality_deviation: f64,
    block_dims: Vec<usize>,
    expected_block_dims: Vec<usize>,
    zero_weight_invariants: usize,
    passed: bool,
}

#[derive(Serialize)]
struct RoundTrip {
    operators: usize,
    max_relative_residual: f64,
    tolerance: f64,
    passed: bool,
}

#[derive(Serialize)]
struct DistortionCheck {
    #[serde(flatten)]
    entry: DistortionEntry,
    relative_deviation: f64,
    passed: bool,
}

#[derive(Serialize)]
struct ConfigReport {
    s: f64,
    p_diagonal: Vec<f64>,
    p_rank: usize,
    route_gap: f64,
    route_passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    boundary_deviation: Option<f64>,
    axioms: AxiomReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    round_trip: Option<RoundTrip>,
    #[serde(skip_serializing_if = "Option::is_none")]
    distortion: Option<Vec<DistortionCheck>>,
    golden: Vec<GoldenRow>,
    passed: bool,
}

#[derive(Serialize)]
struct VerifyReport {
    n: usize,
    lambda: usize,
    mode: ReconstructionMode,
    seed: u64,
    grid: GridKind,
    grid_points: usize,
    structure: StructureCheck,
    configs: Vec<ConfigReport>,
    passed: bool,
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome> {
    let (n, lambda) = (a.irrep.n, a.irrep.lambda);
    let mode: ReconstructionMode = a.mode.into();
    let sw = StratonovichWeyl::for_irrep(n, lambda)?;
    let family = sw.family();
    let space = sw.space();
    let grid = a.grid.build(n, lambda)?;

    let expected_block_dims: Vec<usize> = (0..=lambda).map(|s| dim_adjoint_block(n, s)).collect();
    let orth = verify_trace_orthonormality(family);
    let zw = family.zero_weight_invariant_tensors().len();
    let structure = StructureCheck {
        passed: orth < STRUCTURE_TOL
            && family.block_dims() == expected_block_dims
            && zw == lambda + 1,
        orthonormality_deviation: orth,
        block_dims: family.block_dims().to_vec(),
        expected_block_dims,
        zero_weight_invariants: zw,
    };

    let sampling = Sampling::new(space, &grid)?;
    let mut configs = Vec::new();
    for &s in &a.s {
        let direct = p_operator(family, s, Route::Direct)?;
        let integral = p_operator(family, s, Route::Integral)?;
        let route_gap = linalg::frobenius(&(&direct - &integral));
        let p_diagonal: Vec<f64> = direct.diagonal().iter().map(|z| z.re).collect();
        let pmax = p_diagonal.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let p_rank = p_diagonal.iter().filter(|v| v.abs() > 1e-12 * pmax).count();
        let boundary_deviation = ((s + 1.0).abs() < 1e-15).then(|| {
            let hw = space.highest_weight_index();
            let mut proj = crate::CMatrix::zeros(space.dim(), space.dim());
            proj[(hw, hw)] = 1.0.into();
            linalg::frobenius(&(&direct - proj))
        });

        let axioms = sw.axiom_report(s, &grid, a.samples, a.grid.seed)?;
        let map = sw.sampled_map(s, mode, &sampling)?;

        let round_trip = if mode == ReconstructionMode::Consistent && grid.is_exact() {
            let mut rng = ChaCha8Rng::seed_from_u64(a.grid.seed ^ 0x5eed);
            let mut worst: f64 = 0.0;
            for _ in 0..a.operators {
                let x = random_operator(space.dim(), &mut rng);
                let field = map.symbol(&x, "random")?;
                let rel = match map.reconstruct(&field) {
                    Ok(r) => linalg::frobenius(&(&r.operator - &x)) / linalg::frobenius(&x),
                    Err(Error::BandLimit(_)) => f64::INFINITY,
                    Err(e) => return Err(e),
                };
                worst = worst.max(if rel.is_nan() { f64::INFINITY } else { rel });
            }
            Some(RoundTrip {
                operators: a.operators,
                max_relative_residual: worst,
                tolerance: ROUND_TRIP_TOL,
                passed: worst <= ROUND_TRIP_TOL,
            })
        } else {
            None
        };

        let distortion = if mode == ReconstructionMode::PaperVerbatim {
            Some(
                sw.distortion_table(&map)?
                    .into_iter()
                    .map(|entry| {
                        let rel = (entry.correction - entry.expected_correction).abs()
                            / entry.expected_correction;
                        DistortionCheck {
                            passed: rel <= DISTORTION_TOL,
                            relative_deviation: rel,
                            entry,
                        }
                    })
                    .collect::<Vec<_>>(),
            )
        } else {
            None
        };

        let kc = KernelCoefficients::compute(family, s, CartanConvention::Generic)?;
        let golden = golden::compare(n, lambda, &kc);

        let route_passed = route_gap <= ROUTE_TOL;
        let passed = route_passed
            && boundary_deviation.is_none_or(|d| d < GOLDEN_TOL)
            && axioms.passed
            && round_trip.as_ref().is_none_or(|r| r.passed)
            && distortion
                .as_ref()
                .is_none_or(|d| d.iter().all(|c| c.passed))
            && golden.iter().all(|g| g.deviation < GOLDEN_TOL);
        configs.push(ConfigReport {
            s,
            p_diagonal,
            p_rank,
            route_gap,
            route_passed,
            boundary_deviation,
            axioms,
            round_trip,
            distortion,
            golden,
            passed,
        });
    }

    let passed = structure.passed && configs.iter().all(|c| c.passed);
    let report = VerifyReport {
        n,
        lambda,
        mode,
        seed: a.grid.seed,
        grid: grid.kind.clone(),
        grid_points: grid.len(),
        structure,
        configs,
        passed,
    };
    let stdout = match a.format {
        Format::Json => to_json(&report)?,
        Format::Text => verify_text(&report),
        Format::Csv => return Err(Error::Parse("verify supports json and text".into())),
    };
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        passed,
    })
}

fn verify_text(r: &VerifyReport) -> String {
    let flag = |p: bool| if p { "ok" } else { "FAIL" };
    let mut o = String::new();
    let _ = writeln!(
        o,
        "SU({}) lambda={} mode={} grid points={}",
        r.n, r.lambda, r.mode, r.grid_points
    );
    let _ = writeln!(
        o,
        "structure        {:<4} orthonormality {:.2e}, blocks {:?}",
        flag(r.structure.passed),
        r.structure.orthonormality_deviation,
        r.structure.block_dims
    );
    for c in &r.configs {
        let _ = writeln!(o, "s = {}", c.s);
        let _ = writeln!(
            o,
            "  routes         {:<4} gap {:.2e}",
            flag(c.route_passed),
            c.route_gap
        );
        let _ = writeln!(o, "  P rank         {}", c.p_rank);
        for a in &c.axioms.checks {
            let _ = writeln!(
                o,
                "  {:<14} {:<4} {:.2e} (tol {:.0e})",
                a.name,
                flag(a.passed),
                a.max_deviation,
                a.tolerance
            );
        }
        if let Some(rt) = &c.round_trip {
            let _ = writeln!(
                o,
                "  round trip     {:<4} {:.2e}",
                flag(rt.passed),
                rt.max_relative_residual
            );
        }
        if let Some(d) = &c.distortion {
            for e in d {
                let _ = writeln!(
                    o,
                    "  distortion σ={} {:<4} correction {} expected {}",
                    e.entry.sigma,
                    flag(e.passed),
                    fmt_f64(e.entry.correction),
                    fmt_f64(e.entry.expected_correction)
                );
            }
        }
    }
    let _ = writeln!(o, "{}", if r.passed { "PASS" } else { "FAIL" });
    o
}

// --------------------------------------------------------------- symbol

#[derive(Serialize)]
struct SymbolStats {
    points: usize,
    min_re: f64,
    max_re: f64,
    mean_re: f64,
    max_abs_im: f64,
    /// `W(Ω)` at the coset identity, which grids do not contain.
    at_identity_re: f64,
    at_identity_im: f64,
    integral_re: f64,
    integral_im: f64,
}

fn cmd_symbol(a: &SymbolArgs) -> Result<Outcome> {
    let file = OperatorFile::read(&a.input)?;
    let x = file.to_matrix()?;
    let sw = StratonovichWeyl::for_irrep(file.n, file.lambda)?;
    let grid = a.grid.build(file.n, file.lambda)?;
    let field = sw.symbol_field(&x, a.s, &grid)?;
    let header = SymbolHeader {
        n: file.n,
        lambda: file.lambda,
        s: a.s,
        mode: a.mode.into(),
        vol: coset_volume(file.n),
        grid: grid.kind.clone(),
    };
    let csv = crate::io::write_symbol_csv(&header, &grid, &field.values);
    let re: Vec<f64> = field.values.iter().map(|v| v.re).collect();
    let integral = field.integral();
    let at_identity = linalg::trace_product(&x, &sw.kernel(a.s, &CosetPoint::identity(file.n))?);
    let stats = SymbolStats {
        points: re.len(),
        min_re: re.iter().copied().fold(f64::INFINITY, f64::min),
        max_re: re.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        mean_re: re.iter().sum::<f64>() / re.len() as f64,
        max_abs_im: field.max_imag(),
        at_identity_re: at_identity.re,
        at_identity_im: at_identity.im,
        integral_re: integral.re,
        integral_im: integral.im,
    };
    let summary = match a.format {
        Format::Json => to_json(&stats)?,
        _ => format!(
            "points {}\nmin re {}\nmax re {}\nmean re {}\nmax |im| {:.3e}\nat identity {}\n",
            stats.points,
            fmt_f64(stats.min_re),
            fmt_f64(stats.max_re),
            fmt_f64(stats.mean_re),
            stats.max_abs_im,
            fmt_f64(stats.at_identity_re)
        ),
    };
    Ok(match &a.out {
        Some(path) => {
            std::fs::write(path, csv)?;
            Outcome::ok(summary)
        }
        None => Outcome {
            stdout: csv,
            stderr: summary,
            passed: true,
        },
    })
}

// ---------------------------------------------------------- reconstruct

#[derive(Serialize)]
struct ReconstructReport {
    n: usize,
    lambda: usize,
    s: f64,
    mode: ReconstructionMode,
    /// Max relative change of the symbol under reconstruct-then-resample.
    resample_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    reference_residual: Option<f64>,
    tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    distortion: Option<Vec<DistortionEntry>>,
    passed: bool,
}

fn cmd_reconstruct(a: &ReconstructArgs) -> Result<Outcome> {
    let sf = SymbolFile::read(&a.input)?;
    let h = &sf.header;
    let mode = a.mode.map(ReconstructionMode::from).unwrap_or(h.mode);
    let sw = StratonovichWeyl::for_irrep(h.n, h.lambda)?;
    let reference = a
        .reference
        .as_ref()
        .map(|p| OperatorFile::read(p)?.to_matrix())
        .transpose()?;
    let field = crate::phase_space::SymbolField {
        grid: &sf.grid,
        values: sf.values.clone(),
        s: h.s,
        source: a.input.display().to_string(),
    };
    let (rec, resample_residual) = match sw.reconstruct(&field, mode) {
        Ok(r) => {
            let res = r.resample_residual;
            (Some(r), res)
        }
        Err(Error::BandLimit(res)) => (None, res),
        Err(e) => return Err(e),
    };
    let reference_residual = match (&rec, &reference) {
        (Some(r), Some(x)) => {
            if x.shape() != r.operator.shape() {
                return Err(Error::Dimension {
                    expected: r.operator.nrows(),
                    got: x.nrows(),
                });
            }
            Some(linalg::frobenius(&(&r.operator - x)) / linalg::frobenius(x).max(1e-300))
        }
        _ => None,
    };
    let passed = rec.is_some() && reference_residual.is_none_or(|r| r <= a.tol);
    let report = ReconstructReport {
        n: h.n,
        lambda: h.lambda,
        s: h.s,
        mode,
        resample_residual,
        reference_residual,
        tolerance: a.tol,
        distortion: rec.as_ref().and_then(|r| r.distortion.clone()),
        passed,
    };
    let mut stdout = String::new();
    let mut stderr = String::new();
    let summary = match a.format {
        Format::Json => to_json(&report)?,
        _ => {
            let mut s = format!("resample residual {:.3e}\n", report.resample_residual);
            if let Some(r) = report.reference_residual {
                let _ = writeln!(s, "reference residual {r:.3e} (tol {:.1e})", a.tol);
            }
            s
        }
    };
    if rec.is_none() {
        let _ = writeln!(
            stderr,
            "error: grid does not resolve the symbol (resample residual {resample_residual:.3e})"
        );
    }
    if let Some(r) = &rec {
        let file = OperatorFile::from_matrix(
            h.n,
            h.lambda,
            &r.operator,
            Some(format!("reconstructed s={}", h.s)),
        );
        match &a.out {
            Some(path) => {
                file.write(path)?;
                stdout.push_str(&summary);
            }
            None => {
                stdout.push_str(&file.to_json()?);
                stdout.push('\n');
                stderr.push_str(&summary);
            }
        }
    } else {
        stdout.push_str(&summary);
    }
    Ok(Outcome {
        stdout,
        stderr,
        passed,
    })
}

// ----------------------------------------------------------------- grid

#[derive(Serialize)]
struct GridPointOut {
    angles: Vec<f64>,
    weight: f64,
}

#[derive(Serialize)]
struct GridReport {
    n: usize,
    kind: GridKind,
    volume: f64,
    total_weight: f64,
    exact_degree: Option<usize>,
    points: Vec<GridPointOut>,
}

fn cmd_grid(a: &GridArgs) -> Result<Outcome> {
    let grid = a.grid.build(a.n, a.lambda)?;
    let text = match a.format {
        Format::Csv => {
            let mut o = String::new();
            let names: &[&str] = match a.n {
                2 => &["alpha", "beta"],
                3 => &["alpha1", "beta1", "alpha2", "beta2"],
                _ => &[],
            };
            let mut cols = vec!["idx"];
            cols.extend_from_slice(names);
            cols.push("weight");
            let _ = writeln!(o, "{}", cols.join(","));
            for (i, (p, w)) in grid.points.iter().zip(&grid.weights).enumerate() {
                let _ = write!(o, "{i}");
                for x in p.angles() {
                    let _ = write!(o, ",{}", fmt_f64(x));
                }
                let _ = writeln!(o, ",{}", fmt_f64(*w));
            }
            o
        }
        Format::Json => to_json(&GridReport {
            n: a.n,
            kind: grid.kind.clone(),
            volume: coset_volume(a.n),
            total_weight: grid.total_weight(),
            exact_degree: grid.exact_degree(),
            points: grid
                .points
                .iter()
                .zip(&grid.weights)
                .map(|(p, w)| GridPointOut {
                    angles: p.angles(),
                    weight: *w,
                })
                .collect(),
        })?,
        Format::Text => format!(
            "SU({}) grid {:?}\npoints {}\ntotal weight {}\nvolume {}\nexact degree {}\n",
            a.n,
            grid.kind,
            grid.len(),
            fmt_f64(grid.total_weight()),
            fmt_f64(coset_volume(a.n)),
            grid.exact_degree()
                .map_or("none".to_string(), |d| d.to_string())
        ),
    };
    Ok(Outcome::ok(text))
}
