//! The `leibniz` command line: every operation on catalog entries or
//! user-supplied JSON files. Output is JSON (or DOT for graphs).

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraFile, SeriesKind, Side};
use crate::catalog::{self, deformation_graph, identify, verify_catalog_with, CatalogError, ListFilter, VerifyOptions};
use crate::cohomology::{coboundary, cohomology, Cochain, CochainFile};
use crate::deformation::{deform, leibniz_defect, metric_of_deformation, scan_metric_deformations, GridName, ScanOptions};
use crate::exactnum::Scalar;
use crate::forms::{is_metric, verify_form, BilinearForm};
use crate::linalg::Matrix;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISCREPANCY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "leibniz", version, about = "Exact computations with metric Leibniz algebras")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Right, left, symmetric and Lie identities.
    Check { algebra: String },
    /// Lower central and derived series dimensions.
    Series { algebra: String },
    /// The Leibniz kernel spanned by all squares.
    Kernel { algebra: String },
    /// Decide metricity, or check a given form with `--matrix`.
    Metric {
        algebra: String,
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Leibniz cohomology with adjoint coefficients.
    Cohomology {
        algebra: String,
        #[arg(long)]
        degree: usize,
    },
    /// Check a cochain file, or every bundled cocycle of a catalog entry.
    Cocycles {
        algebra: String,
        #[arg(long)]
        cocycle: Option<String>,
    },
    /// Obstruction analysis of `μ + tφ`.
    Deform {
        algebra: String,
        /// A cochain file or the name of a bundled cocycle.
        #[arg(long)]
        cocycle: String,
        #[arg(long)]
        t0: Option<Scalar>,
        /// Report the residual at this power of `t` instead of the lowest one.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Check that a basis change maps the (deformed) source onto the target.
    Iso {
        algebra: String,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        target: String,
        #[arg(long)]
        cocycle: Option<String>,
        #[arg(long)]
        t0: Option<Scalar>,
    },
    /// Bounded search for metric deformations.
    Scan {
        algebra: String,
        #[arg(long, default_value = "default")]
        grid: GridName,
        #[arg(long)]
        t0: Option<Scalar>,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
    /// Deformation graph of the metric algebras of a dimension.
    Graph {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        unicode: bool,
    },
    /// Bundled catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogCommand,
    },
}

#[derive(Debug, Subcommand)]
enum CatalogCommand {
    List {
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        metric: Option<bool>,
    },
    /// Replay every bundled claim, one JSON verdict per line.
    Verify {
        #[arg(long)]
        no_scans: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("{0}")]
    Compute(String),
}

macro_rules! compute_err {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Compute(e.to_string())
            }
        }
    )*};
}
compute_err!(
    crate::algebra::AlgebraError,
    crate::cohomology::CohomologyError,
    crate::deformation::DeformationError,
    crate::forms::FormError
);

struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn json<T: Serialize>(v: &T, ok: bool) -> Self {
        let text = serde_json::to_string(v).expect("output is serializable") + "\n";
        Output { text, code: if ok { EXIT_OK } else { EXIT_DISCREPANCY } }
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return e.exit_code();
        }
    };
    match execute(cli.command) {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input { path: shown.clone(), message: e.to_string() })?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        CliError::Input { path: shown, message: format!("at `{field}`: {}", e.into_inner()) }
    })
}

/// `catalog:<id>` or a path to an algebra file.
fn resolve(reference: &str) -> Result<(Algebra, Option<&'static catalog::CatalogEntry>), CliError> {
    if let Some(id) = reference.strip_prefix("catalog:") {
        let e = catalog::load(id)?;
        return Ok((e.algebra.clone(), Some(e)));
    }
    let file: AlgebraFile = read_json(Path::new(reference))?;
    let a = file.to_algebra().map_err(|e| CliError::Input { path: reference.to_string(), message: e.to_string() })?;
    Ok((a, None))
}

/// Cochain parts keyed by their power of a literal `t`.
fn resolve_cocycle(
    reference: &str,
    entry: Option<&catalog::CatalogEntry>,
    dim: usize,
) -> Result<Vec<(usize, Cochain)>, CliError> {
    let file = if Path::new(reference).is_file() {
        let f: CochainFile = read_json(Path::new(reference))?;
        if f.arity != 2 || f.dim != dim {
            return Err(CliError::Input {
                path: reference.to_string(),
                message: format!("expected a 2-cochain on a {dim}-dimensional algebra"),
            });
        }
        f
    } else if let Some(e) = entry {
        e.cocycle(reference)?.cochain.clone()
    } else {
        return Err(CliError::Usage(format!("{reference:?} is neither a file nor a bundled cocycle")));
    };
    let parts = file.to_parts().map_err(|e| CliError::Input { path: reference.to_string(), message: e.to_string() })?;
    Ok(parts.into_iter().collect())
}

/// `μ + Σ t^(m+1) φₘ`, so a literal `t` inside the cocycle raises the power.
fn family(a: &Algebra, parts: &[(usize, Cochain)]) -> Result<crate::deformation::PolyAlgebra, CliError> {
    let terms: Vec<(Cochain, usize)> = parts.iter().map(|(m, f)| (f.clone(), m + 1)).collect();
    Ok(deform(a, &terms)?)
}

#[derive(Serialize)]
struct CheckOut {
    right: bool,
    left: bool,
    symmetric: bool,
    lie: bool,
}

#[derive(Serialize)]
struct SeriesOut {
    lower_central: Vec<usize>,
    derived: Vec<usize>,
    nilpotent: bool,
    solvable: bool,
}

#[derive(Serialize)]
struct KernelOut {
    dim: usize,
    basis: Vec<Vec<Scalar>>,
}

fn order_json(o: Option<usize>) -> Value {
    o.map_or(json!("none"), |k| json!(k))
}

fn execute(cmd: Command) -> Result<Output, CliError> {
    match cmd {
        Command::Check { algebra } => {
            let (a, _) = resolve(&algebra)?;
            let h = |s| a.check_identity(s).holds;
            let out = CheckOut { right: h(Side::Right), left: h(Side::Left), symmetric: h(Side::Symmetric), lie: h(Side::Lie) };
            Ok(Output::json(&out, true))
        }
        Command::Series { algebra } => {
            let (a, _) = resolve(&algebra)?;
            let lc = a.series(SeriesKind::LowerCentral);
            let d = a.series(SeriesKind::Derived);
            let out = SeriesOut { lower_central: lc.dims(), derived: d.dims(), nilpotent: lc.nilpotent, solvable: d.solvable };
            Ok(Output::json(&out, true))
        }
        Command::Kernel { algebra } => {
            let (a, _) = resolve(&algebra)?;
            let k = a.leibniz_kernel();
            Ok(Output::json(&KernelOut { dim: k.dim(), basis: k.basis().to_vec() }, true))
        }
        Command::Metric { algebra, matrix } => {
            let (a, _) = resolve(&algebra)?;
            match matrix {
                Some(path) => {
                    let m: Matrix = read_json(&path)?;
                    let b = BilinearForm::new(m)
                        .map_err(|e| CliError::Input { path: path.display().to_string(), message: e.to_string() })?;
                    let report = verify_form(&a, &b)?;
                    Ok(Output::json(&report, report.all()))
                }
                None => Ok(Output::json(&is_metric(&a), true)),
            }
        }
        Command::Cohomology { algebra, degree } => {
            let (a, _) = resolve(&algebra)?;
            Ok(Output::json(&cohomology(&a, degree)?, true))
        }
        Command::Cocycles { algebra, cocycle } => {
            let (a, entry) = resolve(&algebra)?;
            match (cocycle, entry) {
                (Some(r), entry) => {
                    let parts = resolve_cocycle(&r, entry, a.dim())?;
                    let mut ok = true;
                    let mut failing = Vec::new();
                    for (m, f) in &parts {
                        let d = coboundary(&a, f)?;
                        if !d.is_zero() {
                            ok = false;
                            failing.push(json!({ "t_power": m, "coboundary": d }));
                        }
                    }
                    Ok(Output::json(&json!({ "cocycle": ok, "failing": failing }), ok))
                }
                (None, Some(e)) => {
                    let mut text = String::new();
                    let mut ok = true;
                    for c in &e.cocycles {
                        let v = catalog::cocycle_verdict(e, c);
                        ok &= v.is_confirmed();
                        text += &(serde_json::to_string(&v).expect("serializable") + "\n");
                    }
                    Ok(Output { text, code: if ok { EXIT_OK } else { EXIT_DISCREPANCY } })
                }
                (None, None) => Err(CliError::Usage("--cocycle is required for algebra files".into())),
            }
        }
        Command::Deform { algebra, cocycle, t0, order } => {
            let (a, entry) = resolve(&algebra)?;
            let parts = resolve_cocycle(&cocycle, entry, a.dim())?;
            let pa = family(&a, &parts)?;
            let report = leibniz_defect(&pa)?;
            let shown = order.or(report.obstruction_order);
            let residual = shown.map(|k| report.coefficient(k)).unwrap_or_default();
            let mut out = json!({
                "obstruction_order": order_json(report.obstruction_order),
                "residual_order": shown,
                "residual": residual,
            });
            if let Some(t0) = t0 {
                if report.obstruction_order.is_none() {
                    let member = pa.eval(&t0);
                    out["t0"] = json!(t0);
                    out["metric"] = json!(metric_of_deformation(&pa, &t0)?);
                    out["identified"] = json!(identify(&member).map(|e| e.id.clone()));
                    out["algebra"] = json!(AlgebraFile::from(&member));
                }
            }
            Ok(Output::json(&out, true))
        }
        Command::Iso { algebra, matrix, target, cocycle, t0 } => {
            let (a, entry) = resolve(&algebra)?;
            let src = match cocycle {
                Some(r) => {
                    let t0 = t0.ok_or_else(|| CliError::Usage("--cocycle needs --t0".into()))?;
                    family(&a, &resolve_cocycle(&r, entry, a.dim())?)?.eval(&t0)
                }
                None => a,
            };
            let (dst, _) = resolve(&target)?;
            let p: Matrix = read_json(&matrix)?;
            let shown = matrix.display().to_string();
            if !p.is_square() || p.rows() != src.dim() || dst.dim() != src.dim() {
                return Err(CliError::Input { path: shown, message: "matrix and algebra dimensions disagree".into() });
            }
            let singular = p.det().map_err(|e| CliError::Compute(e.to_string()))?.is_zero();
            if singular {
                return Ok(Output::json(&json!({ "isomorphic": false, "singular": true }), false));
            }
            let pairs = src.transport(&p)?.differing_pairs(&dst);
            Ok(Output::json(&json!({ "isomorphic": pairs.is_empty(), "failing_pairs": pairs }), pairs.is_empty()))
        }
        Command::Scan { algebra, grid, t0, max_size } => {
            let (a, _) = resolve(&algebra)?;
            let options = ScanOptions { grid: grid.values(), max_size, t0: t0.unwrap_or_else(Scalar::one) };
            let report = scan_metric_deformations(&a, &options)?;
            let identified: Vec<Option<String>> =
                report.hits.iter().map(|h| identify(&h.algebra).map(|e| e.id.clone())).collect();
            let mut out = json!(report);
            out["identified"] = json!(identified);
            Ok(Output::json(&out, true))
        }
        Command::Graph { dim, format, unicode } => {
            let g = deformation_graph(dim)?;
            let ok = g.edges.iter().all(|e| e.verified);
            match format {
                Format::Json => Ok(Output::json(&g, ok)),
                Format::Dot => Ok(Output { text: g.to_dot(unicode), code: if ok { EXIT_OK } else { EXIT_DISCREPANCY } }),
            }
        }
        Command::Catalog { action: CatalogCommand::List { dim, metric } } => {
            let ids = catalog::list(ListFilter { dim, metric });
            let rows: Vec<Value> = ids
                .iter()
                .map(|id| {
                    let e = catalog::load(id).expect("listed ids exist");
                    json!({ "id": e.id, "dim": e.dim, "label": e.label, "lie": e.lie, "metric": e.metric })
                })
                .collect();
            Ok(Output::json(&rows, true))
        }
        Command::Catalog { action: CatalogCommand::Verify { no_scans } } => {
            let verdicts = verify_catalog_with(&VerifyOptions { scans: !no_scans, ..VerifyOptions::default() });
            let ok = verdicts.iter().all(|v| v.is_confirmed());
            let text = verdicts.iter().map(|v| serde_json::to_string(v).expect("serializable") + "\n").collect();
            Ok(Output { text, code: if ok { EXIT_OK } else { EXIT_DISCREPANCY } })
        }
    }
}
