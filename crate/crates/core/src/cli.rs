//! The `gcodes` command line.
//!
//! Exit status: 0 success, 1 a construction failed below the field-size
//! bound, 2 a theorem violation on a bound-satisfied instance, 3 caps
//! prevented verification, 4 input error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::codes::{Criterion, Distance, LinearCode, MonomialMap};
use crate::combinatorics::binomial;
use crate::construct;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::grassmann::{self, DEFAULT_MAX_PAIRS, DEFAULT_MAX_VERTICES};
use crate::linalg::{self, Subspace};
use crate::sweep::{self, SweepConfig};
use crate::textfmt;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_CAPS: i32 = 3;
pub const EXIT_INPUT: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "gcodes",
    version,
    about = "Linear codes in the Grassmann graph"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dual distance, t_max and MDS/projective/non-degenerate flags of a code
    Classify {
        file: PathBuf,
        /// Also report membership in C_t(n,k)
        #[arg(long)]
        t: Option<usize>,
    },
    /// A geodesic from X to Y inside C_t(n,k)
    Path {
        file_x: PathBuf,
        file_y: PathBuf,
        #[arg(long)]
        t: usize,
    },
    /// An equivalent code opposite to the given one
    Opposite {
        file: PathBuf,
        #[arg(long)]
        t: usize,
    },
    /// Verify connectivity, diameter and isometry over a parameter grid
    Sweep(SweepArgs),
    /// Write every code of C_t(n,k) in canonical form
    Enumerate {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Field orders, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    q: Vec<u32>,
    /// Length, a single value or an inclusive range such as 2..5
    #[arg(long, value_parser = parse_range)]
    n: RangeInclusive<usize>,
    #[arg(long, value_parser = parse_range)]
    k: RangeInclusive<usize>,
    #[arg(long, value_parser = parse_range)]
    t: RangeInclusive<usize>,
    #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
    max_vertices: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_PAIRS)]
    max_pairs: u64,
    /// Instances run concurrently (0 = one per core)
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// JSON-lines report file; a summary CSV is written next to it
    #[arg(long)]
    out: Option<PathBuf>,
    /// Skip instances already present in --out
    #[arg(long, requires = "out")]
    resume: bool,
    /// Format of what goes to stdout
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    no_isometry: bool,
    #[arg(long)]
    no_diameter: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn parse_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let num = |x: &str| {
        x.trim()
            .parse::<usize>()
            .map_err(|_| format!("not a count: {x:?}"))
    };
    let split = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .or_else(|| s.split_once('-'));
    match split {
        Some((a, b)) => Ok(num(a)?..=num(b)?),
        None => {
            let v = num(s)?;
            Ok(v..=v)
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::EnumerationTooLarge { .. } | Error::TooLargeExact { .. } => EXIT_CAPS,
        Error::PathFailed { .. }
        | Error::NoLambda(_)
        | Error::NoStepFound
        | Error::NoShrinkFound => EXIT_FAILED,
        _ => EXIT_INPUT,
    }
}

fn read_code(path: &Path) -> Result<LinearCode> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    textfmt::parse_generator_matrix(&text)
}

fn rows(s: &Subspace) -> Value {
    let r: Vec<Vec<u32>> = (0..s.dim())
        .map(|i| s.basis().row(i).iter().map(|x| x.value()).collect())
        .collect();
    json!(r)
}

fn distance_json(d: Distance) -> Value {
    match d {
        Distance::Finite(v) => json!(v),
        Distance::Infinite => json!("inf"),
    }
}

fn monomial_json(m: &MonomialMap) -> Value {
    json!({
        "perm": m.perm().iter().map(|p| p + 1).collect::<Vec<_>>(),
        "scalars": m.scalars().iter().map(|s| s.value()).collect::<Vec<_>>(),
    })
}

fn print_json(out: &mut dyn Write, v: &Value) -> Result<()> {
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(v).expect("json values serialize")
    )?;
    Ok(())
}

/// Parses `args` (program name first) and runs the command. Returns the exit status.
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
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Classify { file, t } => classify(&file, t, out),
        Command::Path { file_x, file_y, t } => path(&file_x, &file_y, t, out),
        Command::Opposite { file, t } => opposite(&file, t, out),
        Command::Sweep(args) => run_sweep(args, out, err),
        Command::Enumerate {
            q,
            n,
            k,
            t,
            max_vertices,
            out: file,
        } => enumerate(q, n, k, t, max_vertices, file.as_deref(), out, err),
    }
}

fn classify(file: &Path, t: Option<usize>, out: &mut dyn Write) -> Result<i32> {
    let c = read_code(file)?;
    let mut v = json!({
        "q": c.field().q(),
        "n": c.n(),
        "k": c.k(),
        "t_max": c.t_max(),
        "dual_distance": c.dual_min_distance().map(distance_json).unwrap_or(Value::Null),
        "min_distance": c.min_distance().map(distance_json).unwrap_or(Value::Null),
        "non_degenerate": c.is_non_degenerate(),
        "projective": c.is_projective(),
        "mds": c.is_mds(),
        "generator": rows(c.space()),
    });
    if let Some(t) = t {
        v["t"] = json!(t);
        v["in_class"] = json!(c.is_in_ct(t, Criterion::ColumnsIndependent)?);
    }
    print_json(out, &v)?;
    Ok(EXIT_OK)
}

fn bound_holds(c: &LinearCode, t: usize) -> bool {
    c.field().q() as u64 >= binomial(c.n(), t)
}

fn path(fx: &Path, fy: &Path, t: usize, out: &mut dyn Write) -> Result<i32> {
    let x = read_code(fx)?;
    let y = read_code(fy)?;
    let f = x.field().clone();
    if f != *y.field() {
        return Err(Error::FieldMismatch(f.q(), y.field().q()));
    }
    let expected = x
        .k()
        .checked_sub(linalg::intersection_dim(&f, x.space(), y.space()));
    let expected =
        expected.ok_or_else(|| Error::DimensionMismatch("codes of different dimension".into()))?;
    match construct::geodesic_path(&x, &y, t) {
        Ok(p) => {
            let edges: Vec<Value> = p
                .vertices
                .windows(2)
                .map(|w| {
                    json!({
                        "dim_meet": linalg::intersection_dim(&f, w[0].space(), w[1].space()),
                        "distance_to_target": grassmann::grassmann_distance(&f, w[1].space(), y.space()).unwrap_or(usize::MAX),
                        "in_class": w[1].is_in_ct(t, Criterion::CoordMeet).unwrap_or(false),
                    })
                })
                .collect();
            let ok = p.len() == expected
                && edges
                    .iter()
                    .all(|e| e["dim_meet"] == json!(x.k() - 1) && e["in_class"] == json!(true));
            print_json(
                out,
                &json!({
                    "t": t,
                    "length": p.len(),
                    "expected_length": expected,
                    "ok": ok,
                    "vertices": p.vertices.iter().map(|c| rows(c.space())).collect::<Vec<_>>(),
                    "edges": edges,
                    "scan": p.stats,
                }),
            )?;
            Ok(if ok {
                EXIT_OK
            } else if bound_holds(&x, t) {
                EXIT_VIOLATION
            } else {
                EXIT_FAILED
            })
        }
        Err(Error::PathFailed { reason, partial }) => {
            print_json(
                out,
                &json!({
                    "t": t,
                    "expected_length": expected,
                    "ok": false,
                    "error": reason,
                    "partial": partial.iter().map(rows).collect::<Vec<_>>(),
                }),
            )?;
            Ok(if bound_holds(&x, t) {
                EXIT_VIOLATION
            } else {
                EXIT_FAILED
            })
        }
        Err(e) => Err(e),
    }
}

fn opposite(file: &Path, t: usize, out: &mut dyn Write) -> Result<i32> {
    let c = read_code(file)?;
    let f = c.field().clone();
    let op = match construct::opposite_code(&c, t) {
        Ok(op) => op,
        Err(Error::NoLambda(q)) => {
            print_json(
                out,
                &json!({"t": t, "ok": false, "error": Error::NoLambda(q).to_string()}),
            )?;
            let guaranteed = q as usize > c.k().max(c.n() - c.k()) + 1;
            return Ok(if guaranteed {
                EXIT_VIOLATION
            } else {
                EXIT_FAILED
            });
        }
        Err(e) => return Err(e),
    };
    let target = (2 * c.k()).saturating_sub(c.n());
    let dim_meet = linalg::intersect(&f, c.space(), op.code.space())?.dim();
    let equivalent = c.apply_monomial(&op.witness)? == op.code;
    let in_class = op.code.is_in_ct(t, Criterion::CoordMeet)?;
    let distance = grassmann::grassmann_distance(&f, c.space(), op.code.space())?;
    let ok = dim_meet == target && equivalent && in_class && distance == c.k().min(c.n() - c.k());
    print_json(
        out,
        &json!({
            "t": t,
            "ok": ok,
            "code": rows(op.code.space()),
            "lambda": op.lambda.value(),
            "witness": monomial_json(&op.witness),
            "rho": monomial_json(&op.rho),
            "sigma": monomial_json(&op.sigma),
            "checks": {
                "dim_meet": dim_meet,
                "expected_dim_meet": target,
                "equivalent": equivalent,
                "in_class": in_class,
                "distance": distance,
            },
        }),
    )?;
    Ok(if ok { EXIT_OK } else { EXIT_VIOLATION })
}

fn run_sweep(a: SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let cfg = SweepConfig {
        q_list: a.q,
        n_range: a.n,
        k_range: a.k,
        t_range: a.t,
        max_vertices: a.max_vertices,
        max_pairs: a.max_pairs,
        connectivity: true,
        diameter: !a.no_diameter,
        isometry: !a.no_isometry,
        out: a.out.clone(),
        resume: a.resume,
        workers: a.workers,
    };
    let mut sink: Vec<u8> = Vec::new();
    let summary = if a.format == Format::Json {
        sweep::run_sweep_jsonl(&cfg, out)?
    } else {
        sweep::run_sweep_jsonl(&cfg, &mut sink)?
    };
    let csv = sweep::summary_csv(&summary.reports);
    if let Some(p) = &a.out {
        let csv_path = p.with_extension("csv");
        if a.resume && csv_path.exists() {
            let mut f = fs::OpenOptions::new().append(true).open(&csv_path)?;
            for r in &summary.reports {
                writeln!(f, "{}", sweep::csv_row(r))?;
            }
        } else {
            fs::write(csv_path, &csv)?;
        }
    }
    if a.format == Format::Csv {
        write!(out, "{csv}")?;
    }
    for (inst, e) in &summary.errors {
        writeln!(
            err,
            "q={} n={} k={} t={}: {e}",
            inst.q, inst.n, inst.k, inst.t
        )?;
    }
    let violations = summary
        .reports
        .iter()
        .filter(|r| r.violates_theorem())
        .count();
    writeln!(
        err,
        "{} instances, {} skipped, {} errors, {} violations",
        summary.reports.len(),
        summary.skipped,
        summary.errors.len(),
        violations
    )?;
    Ok(summary.exit_code())
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    q: u32,
    n: usize,
    k: usize,
    t: usize,
    max_vertices: u64,
    file: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let field = Field::with_order(q as u64)?;
    if k == 0 || k > n || t == 0 || t > k {
        return Err(Error::Config(format!(
            "need 1 <= t <= k <= n, got t = {t}, k = {k}, n = {n}"
        )));
    }
    let index = grassmann::enumerate_subspaces(&field, n, k, max_vertices)?;
    let mut text = format!("{q} {n} {k}\n");
    let mut count = 0u64;
    for s in index.subspaces() {
        if crate::codes::columns_independent(&field, s.basis(), t) {
            let c = LinearCode::new(field.clone(), s.clone());
            text.push_str(&textfmt::format_flat(&c));
            text.push('\n');
            count += 1;
        }
    }
    match file {
        Some(p) => fs::write(p, text)?,
        None => write!(out, "{text}")?,
    }
    writeln!(err, "{count} codes")?;
    Ok(EXIT_OK)
}
