//! The `chebvar` command line. Exit codes: 0 success, 1 computational failure
//! or partial result, 2 invalid input.

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::cheb::{self, ChebKind};
use crate::cosine_solver::{solve_cosine, CosineOptions, TrackerConfig};
use crate::curves::{self, coprime_triple, hyperbolicity_check, ideal_generators, inversion_polynomial, padua_points};
use crate::error::{invalid, Error, Result};
use crate::io::{SolutionFile, SystemFile};
use crate::linalg::C64;
use crate::polytope::ExponentMatrix;
use crate::root_system::GenChebTable;
use crate::system::Basis;
use crate::tensor_solver::{solve_tensor, SolveOptions};
use crate::variety::implicit::{monomials_up_to, relative_residual};
use crate::variety::{cosine_degree, cosine_dimension, implicitize, tensor_degree_bounds, tensor_dimension, ParamKind};
use crate::variety::{VarietyKind, VarietyReport};

pub const SEED_ENV: &str = "CHEBVAR_SEED";

#[derive(Debug, Parser)]
#[command(name = "chebvar", version, about = "Chebyshev varieties: curves, degrees, implicit equations and polynomial systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    T,
    U,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    Tensor,
    Cosine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ParamArg {
    Tensor,
    Cosine,
    Toric,
    A2,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Implicit equation, degree and singular points of a Chebyshev curve.
    Curve {
        /// Exponents, comma separated: `a,b` for a plane curve, more for a space curve.
        #[arg(long = "A", allow_hyphen_values = true)]
        a: String,
        #[arg(long, value_enum, default_value = "t", ignore_case = true)]
        kind: KindArg,
        #[arg(long)]
        json: bool,
        /// Write sampled curve points as CSV.
        #[arg(long)]
        emit_plot_data: Option<PathBuf>,
    },
    /// Dimension, degree or degree bounds of the variety of a system or matrix.
    Analyze {
        #[arg(long)]
        system: Option<PathBuf>,
        /// Matrix rows separated by `;`, entries by `,`.
        #[arg(long = "A", allow_hyphen_values = true, conflicts_with = "system")]
        a: Option<String>,
        #[arg(long, value_enum, default_value = "tensor")]
        basis: BasisArg,
    },
    /// Solve a square system and write its solutions as JSON.
    Solve {
        #[arg(long)]
        system: PathBuf,
        /// Output file; the JSON goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        max_loops: usize,
        #[arg(long)]
        initial_step: Option<f64>,
        #[arg(long)]
        min_step: Option<f64>,
        #[arg(long)]
        max_step: Option<f64>,
        #[arg(long)]
        corrector_tol: Option<f64>,
        /// Record the wall time in the output metadata.
        #[arg(long)]
        timing: bool,
        /// Write the real solutions as CSV.
        #[arg(long)]
        emit_plot_data: Option<PathBuf>,
    },
    /// Real root counts of random combinations of Chebyshev polynomials.
    Scan {
        #[arg(long = "A")]
        a: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
    },
    /// Numerically fit the hypersurface equation of a variety.
    Implicitize {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        degree: u32,
        /// Parametrization; defaults to the basis of the system file.
        #[arg(long, value_enum)]
        kind: Option<ParamArg>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
    },
    /// Table of generalized Chebyshev polynomials of the A2 root system.
    Rootsys {
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
    },
}

/// Outcome of a command that ran to completion.
struct Done {
    partial: bool,
}

const OK: Done = Done { partial: false };

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) | Error::Precondition(_) => 2,
        _ => 1,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(d) => i32::from(d.partial),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::InvalidInput(format!("{}: {e}", path.display()))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    writeln!(out, "{text}").map_err(|e| Error::InternalConsistency(format!("writing output: {e}")))
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::InternalConsistency(e.to_string()))
}

pub fn parse_matrix(s: &str) -> Result<ExponentMatrix> {
    let rows: Vec<Vec<i64>> = s
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| invalid(format!("cannot parse {:?} as an integer", x.trim()))))
                .collect()
        })
        .collect::<Result<_>>()?;
    if let Some(r) = rows.iter().position(|r| r.len() != rows[0].len()) {
        return Err(invalid(format!("row {} of A has {} entries, expected {}", r + 1, rows[r].len(), rows[0].len())));
    }
    ExponentMatrix::from_rows(rows)
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<Done> {
    match cmd {
        Command::Curve { a, kind, json, emit_plot_data } => cmd_curve(&a, kind, json, emit_plot_data.as_deref(), out),
        Command::Analyze { system, a, basis } => cmd_analyze(system.as_deref(), a.as_deref(), basis, out),
        Command::Solve { system, out: path, seed, max_loops, initial_step, min_step, max_step, corrector_tol, timing, emit_plot_data } => {
            let mut tracker = TrackerConfig::default();
            tracker.initial_step = initial_step.unwrap_or(tracker.initial_step);
            tracker.min_step = min_step.unwrap_or(tracker.min_step);
            tracker.max_step = max_step.unwrap_or(tracker.max_step);
            tracker.corrector_tol = corrector_tol.unwrap_or(tracker.corrector_tol);
            tracker.validate()?;
            let opts = CosineOptions { seed, tracker, max_loops };
            cmd_solve(&system, path.as_deref(), &opts, timing, emit_plot_data.as_deref(), out, err)
        }
        Command::Scan { a, samples, seed } => {
            let h = curves::chamber_scan(&parse_matrix(&a)?, samples, seed)?;
            emit(out, &to_json(&h)?)?;
            Ok(OK)
        }
        Command::Implicitize { system, degree, kind, samples, seed } => cmd_implicitize(&system, degree, kind, samples, seed, out),
        Command::Rootsys { max_degree } => {
            let mut table = GenChebTable::new();
            let mut rows = Vec::new();
            for d in 0..=max_degree {
                for a in (0..=d).rev() {
                    let p = table.get(a, d - a);
                    rows.push(json!({"a": a, "b": d - a, "poly": p.display_with(&["x", "y"])}));
                }
            }
            emit(out, &to_json(&rows)?)?;
            Ok(OK)
        }
    }
}

#[derive(Serialize)]
struct CurveOutput {
    exponents: Vec<u64>,
    kind: &'static str,
    degree: u64,
    /// Plane curves only.
    implicit: Option<String>,
    hyperbolic: Option<bool>,
    padua_points: Option<Vec<(f64, f64)>>,
    /// Space curves only: a pairwise coprime triple makes the curve smooth.
    smooth: Option<bool>,
    inversion: Option<String>,
    generators: Option<Vec<String>>,
}

fn cmd_curve(arg: &str, kind: KindArg, json: bool, plot: Option<&Path>, out: &mut dyn Write) -> Result<Done> {
    let a = parse_matrix(arg)?;
    if a.m() != 1 {
        return Err(invalid("curve exponents must form a single row"));
    }
    let exps: Vec<u64> = a.rows()[0]
        .iter()
        .map(|&x| if x > 0 { Ok(x as u64) } else { Err(invalid(format!("curve exponents must be positive, got {x}"))) })
        .collect::<Result<_>>()?;
    if exps.len() < 2 {
        return Err(invalid("a curve needs at least two exponents"));
    }
    let kind_name = if kind == KindArg::T { "T" } else { "U" };
    let ck = if kind == KindArg::T { ChebKind::T } else { ChebKind::U };
    let mut r = CurveOutput {
        exponents: exps.clone(),
        kind: kind_name,
        degree: *exps.iter().max().unwrap(),
        implicit: None,
        hyperbolic: None,
        padua_points: None,
        smooth: None,
        inversion: None,
        generators: None,
    };
    if exps.len() == 2 {
        let (lo, hi) = (exps[0].min(exps[1]), exps[0].max(exps[1]));
        if hi == lo + 1 {
            r.hyperbolic = Some(hyperbolicity_check(lo, ck, 200, 0)?);
        }
        if kind == KindArg::T {
            let pc = curves::plane_curve(lo, hi)?;
            r.degree = pc.degree;
            let names = ["x", "y"];
            r.implicit = Some(pc.implicit.display_with(&names));
            r.padua_points = Some(padua_points(pc.a_prime, pc.b_prime));
        }
    } else if kind == KindArg::T {
        let names: Vec<String> = if exps.len() == 3 {
            ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=exps.len()).map(|i| format!("x{i}")).collect()
        };
        r.smooth = coprime_triple(&exps).map(|_| true);
        if let Some(t) = coprime_triple(&exps) {
            let p = inversion_polynomial(exps[t[0]], exps[t[1]], exps[t[2]])?;
            r.inversion = Some(p.expr(t).render(&names));
        }
        r.generators = ideal_generators(&a).ok().map(|g| g.iter().map(|e| e.render(&names)).collect());
    } else {
        return Err(invalid("space curves are only supported for kind T"));
    }
    if let Some(path) = plot {
        let mut csv = String::from(&(0..exps.len()).map(|i| format!("x{}", i + 1)).collect::<Vec<_>>().join(","));
        csv.push('\n');
        for s in 0..=400 {
            let t = C64::new(-1.0 + s as f64 / 200.0, 0.0);
            let row: Vec<String> = exps.iter().map(|&k| format!("{}", cheb::eval(ck, k as usize, t).re)).collect();
            let _ = writeln!(csv, "{}", row.join(","));
        }
        std::fs::write(path, csv).map_err(|e| io_err(path, e))?;
    }
    if json {
        emit(out, &to_json(&r)?)?;
    } else {
        let mut s = format!("{}-curve {:?}\ndegree: {}\n", kind_name, exps, r.degree);
        if let Some(i) = &r.implicit {
            let _ = writeln!(s, "implicit: {i} = 0");
        }
        if let Some(h) = r.hyperbolic {
            let _ = writeln!(s, "hyperbolic: {h}");
        }
        if let Some(p) = &r.padua_points {
            let _ = writeln!(s, "singular points: {}", p.len());
        }
        if let Some(sm) = r.smooth {
            let _ = writeln!(s, "smooth: {sm}");
        }
        if let Some(p) = &r.inversion {
            let _ = writeln!(s, "P = {p}");
        }
        for g in r.generators.iter().flatten() {
            let _ = writeln!(s, "generator: {g}");
        }
        emit(out, s.trim_end())?;
    }
    Ok(OK)
}

fn cmd_analyze(system: Option<&Path>, a: Option<&str>, basis: BasisArg, out: &mut dyn Write) -> Result<Done> {
    let (a, basis) = match (system, a) {
        (Some(p), _) => {
            let f = SystemFile::read(p)?;
            (f.exponents()?, f.basis)
        }
        (None, Some(s)) => (parse_matrix(s)?, if basis == BasisArg::Tensor { Basis::Tensor } else { Basis::Cosine }),
        (None, None) => return Err(invalid("analyze needs --system or --A")),
    };
    let m = a.m();
    let (kind, dim) = match basis {
        Basis::Tensor => {
            a.require_nonnegative()?;
            (VarietyKind::Tensor, tensor_dimension(&a)?)
        }
        Basis::Cosine => (VarietyKind::Cosine, cosine_dimension(&a)),
    };
    let report = if dim < m {
        VarietyReport {
            kind,
            dimension: dim,
            degree: None,
            bounds: None,
            density_holds: None,
            deg_pi1: None,
            lattice_index: None,
            note: Some(format!("dimension {dim} < m = {m}: m generic equations have an expected empty intersection")),
        }
    } else if basis == Basis::Tensor {
        tensor_degree_bounds(&a)?
    } else {
        cosine_degree(&a)?
    };
    emit(out, &to_json(&report)?)?;
    Ok(OK)
}

fn cmd_solve(
    path: &Path,
    out_path: Option<&Path>,
    opts: &CosineOptions,
    timing: bool,
    plot: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Done> {
    let sys = SystemFile::read(path)?.system()?;
    let m = sys.m();
    let dim = match sys.basis {
        Basis::Tensor => tensor_dimension(&sys.a)?,
        Basis::Cosine => cosine_dimension(&sys.a),
    };
    if dim != m {
        return Err(Error::Precondition(format!(
            "the variety has dimension {dim} but there are {m} equations; expected empty intersection"
        )));
    }
    let start = Instant::now();
    let (mut file, summary) = match sys.basis {
        Basis::Tensor => {
            let set = solve_tensor(&sys, &SolveOptions { seed: opts.seed, ..Default::default() })?;
            let s = format!(
                "{} solutions, {} real, {} in [-1,1]^{m}",
                set.points.len(),
                set.real_count(),
                set.in_box_count()
            );
            (SolutionFile::from_tensor(&set), s)
        }
        Basis::Cosine => {
            let r = solve_cosine(&sys, opts)?;
            let s = format!(
                "{} orbit pairs, {} real u-pairs, {} complex u-pairs, {} real v-pairs",
                r.orbits.len(),
                r.real_u_pairs(),
                r.complex_u_pairs(),
                r.real_v_pairs()
            );
            (SolutionFile::from_cosine(&r, opts.tracker.corrector_tol), s)
        }
    };
    if timing {
        file.meta.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    let text = file.to_json()?;
    if let Some(p) = plot {
        let mut csv = (1..=m).map(|i| format!("t{i}")).collect::<Vec<_>>().join(",");
        csv.push('\n');
        for s in file.solutions.iter().filter(|s| s.is_real) {
            let _ = writeln!(csv, "{}", s.t.iter().map(|z| z[0].to_string()).collect::<Vec<_>>().join(","));
        }
        std::fs::write(p, csv).map_err(|e| io_err(p, e))?;
    }
    match out_path {
        Some(p) => {
            std::fs::write(p, text + "\n").map_err(|e| io_err(p, e))?;
            emit(out, &summary)?;
        }
        None => {
            emit(out, &text)?;
            let _ = writeln!(err, "{summary}");
        }
    }
    for w in &file.meta.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    Ok(Done { partial: !file.meta.warnings.is_empty() })
}

fn cmd_implicitize(
    path: &Path,
    degree: u32,
    kind: Option<ParamArg>,
    samples: Option<usize>,
    seed: u64,
    out: &mut dyn Write,
) -> Result<Done> {
    let f = SystemFile::read(path)?;
    let a = f.exponents()?;
    let kind = match kind {
        Some(ParamArg::Tensor) => ParamKind::Tensor,
        Some(ParamArg::Cosine) => ParamKind::Cosine,
        Some(ParamArg::Toric) => ParamKind::Toric,
        Some(ParamArg::A2) => ParamKind::A2,
        None if f.basis == Basis::Tensor => ParamKind::Tensor,
        None => ParamKind::Cosine,
    };
    let samples = samples.unwrap_or_else(|| 2 * monomials_up_to(a.n(), degree).len() + 20);
    let p = implicitize(kind, &a, degree, samples, seed)?;
    let residual = relative_residual(&p, kind, &a, 50, seed.wrapping_add(1))?;
    let terms: Vec<_> = p.terms.iter().rev().map(|(e, c)| json!({"exponent": e, "coeff": c})).collect();
    let report = json!({
        "degree": p.total_degree(),
        "samples": samples,
        "seed": seed,
        "equation": p.to_string(),
        "terms": terms,
        "residual": residual,
    });
    emit(out, &to_json(&report)?)?;
    Ok(OK)
}
