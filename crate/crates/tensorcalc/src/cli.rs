//! Command-line front end: loads a coordinate system, runs one computation
//! or verification suite, and emits text or JSON.

use crate::continuum::{
    cauchy, displacement_gradients, finger, infinitesimal_strain, traction,
    velocity_gradient_decompose, FieldVector3, Matrix3,
};
use crate::curvature::{einstein, ricci, riemann_second};
use crate::expr::{parse, render, Expr};
use crate::field_ops::{
    curl, divergence, gradient_scalar, laplacian_scalar, physical_components, tensor_components,
    curve_length, PhysicalForm,
};
use crate::geometry::DerivedMetric;
use crate::output::{checks_to_text, CheckDoc, Entry, TableDoc, ValueDoc};
use crate::report::all_passed;
use crate::sysdef::{parse_curve_definition, parse_system_definition};
use crate::systems;
use crate::tensor::{TensorField, Variance};
use crate::verify::{run_suite, VerifyConfig};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "tensorcalc",
    about = "Symbolic tensor calculus over curvilinear coordinate systems",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Coordinate system: builtin:<name> or file:<path>
    #[arg(long, global = true, default_value = "builtin:cartesian")]
    system: String,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for the sampling oracle
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Relative tolerance for the sampling oracle
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Read and emit physical components (orthogonal systems only)
    #[arg(long, global = true)]
    physical: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Metric components and everything derived from them
    ShowMetric,
    /// Christoffel symbols of the first or second kind
    Christoffel {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        kind: u8,
    },
    /// Mixed Riemann curvature tensor
    Riemann,
    /// Ricci tensor and scalar
    Ricci,
    /// Einstein tensor in all three variance forms
    Einstein,
    /// Gradient of a scalar field
    Grad {
        /// Field as name=expr
        #[arg(long, allow_hyphen_values = true)]
        field: String,
    },
    /// Divergence of a vector field (contravariant components)
    Div {
        /// Components as name=expr,name=expr,...
        #[arg(long, allow_hyphen_values = true)]
        field: String,
    },
    /// Curl of a vector field (covariant components; 3D systems)
    Curl {
        #[arg(long, allow_hyphen_values = true)]
        field: String,
    },
    /// Laplacian of a scalar field
    Laplacian {
        #[arg(long, allow_hyphen_values = true)]
        field: String,
    },
    /// Arc length of a curve given by a curve definition file
    Length {
        #[arg(long)]
        curve: PathBuf,
    },
    /// Continuum-mechanics operations over Cartesian coordinates
    Continuum {
        #[command(subcommand)]
        op: ContinuumOp,
    },
    /// Run verification suites
    Verify {
        /// One of epsilon, christoffel, ricci-theorem, curvature, bianchi,
        /// operators, continuum, all
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Subcommand, Debug)]
enum ContinuumOp {
    /// Infinitesimal strain of a displacement field d(x,y,z)
    Strain {
        /// Three components: expr,expr,expr
        #[arg(long, allow_hyphen_values = true)]
        displacement: String,
    },
    /// Traction vector from a stress tensor and a surface normal
    Traction {
        /// Nine entries, row-major: expr,expr,...
        #[arg(long, allow_hyphen_values = true)]
        stress: String,
        /// Three components
        #[arg(long, allow_hyphen_values = true)]
        normal: String,
    },
    /// Finger strain tensor of a motion x(xp,yp,zp)
    Finger {
        /// Three present-coordinate expressions over xp,yp,zp
        #[arg(long, allow_hyphen_values = true)]
        motion: String,
    },
    /// Cauchy strain tensor of a motion x(xp,yp,zp)
    Cauchy {
        #[arg(long, allow_hyphen_values = true)]
        motion: String,
    },
    /// Rate-of-strain / vorticity decomposition of a velocity field
    Decompose {
        /// Three components: expr,expr,expr
        #[arg(long, allow_hyphen_values = true)]
        velocity: String,
    },
}

enum Doc {
    Table(TableDoc),
    Value(ValueDoc),
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

macro_rules! usage {
    ($($arg:tt)*) => { Failure::usage(format!($($arg)*)) };
}

/// Run the CLI against `args` (including the program name), writing all
/// output to `out`. Returns the process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(out, "error: {}", f.message);
            f.code
        }
    }
}

fn load_system(cli: &Cli) -> Result<DerivedMetric, Failure> {
    if let Some(name) = cli.system.strip_prefix("builtin:") {
        if !systems::BUILTIN_NAMES.contains(&name) {
            return Err(usage!(
                "unknown builtin system '{name}' (expected one of {})",
                systems::BUILTIN_NAMES.join(", ")
            ));
        }
        return systems::builtin(name)
            .map(|g| g.reseeded(cli.seed))
            .map_err(|e| usage!("builtin system '{name}': {e}"));
    }
    if let Some(path) = cli.system.strip_prefix("file:") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage!("cannot read system file '{path}': {e}"))?;
        let def = parse_system_definition(&text)
            .map_err(|e| usage!("system file '{path}': {e}"))?;
        return def
            .build(cli.seed)
            .map_err(|e| usage!("system file '{path}': {e}"));
    }
    Err(usage!(
        "system must be builtin:<name> or file:<path>, got '{}'",
        cli.system
    ))
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut docs: Vec<Doc> = Vec::new();
    match &cli.command {
        Command::ShowMetric => {
            let g = load_system(cli)?;
            show_metric(&g, &mut docs);
        }
        Command::Christoffel { kind } => {
            let g = load_system(cli)?;
            christoffel_docs(&g, *kind, &mut docs);
        }
        Command::Riemann => {
            let g = load_system(cli)?;
            let mixed = riemann_second(&g);
            docs.push(Doc::Table(table_doc(cli, &g, "riemann", &mixed)?));
        }
        Command::Ricci => {
            let g = load_system(cli)?;
            let (table, scalar) = ricci(&g).map_err(|e| usage!("{e}"))?;
            docs.push(Doc::Table(table_doc(cli, &g, "ricci", &table)?));
            docs.push(Doc::Table(TableDoc::scalar(
                &g.system().name,
                "ricci-scalar",
                &scalar,
            )));
        }
        Command::Einstein => {
            let g = load_system(cli)?;
            let (lower, upper, mixed) = einstein(&g).map_err(|e| usage!("{e}"))?;
            docs.push(Doc::Table(table_doc(cli, &g, "einstein", &lower)?));
            docs.push(Doc::Table(table_doc(cli, &g, "einstein-upper", &upper)?));
            docs.push(Doc::Table(table_doc(cli, &g, "einstein-mixed", &mixed)?));
        }
        Command::Grad { field } => {
            let g = load_system(cli)?;
            let f = parse_scalar_field(field, &g)?;
            let (cov, con) = gradient_scalar(&f, &g);
            docs.push(Doc::Table(table_doc(cli, &g, "grad", &cov)?));
            if !cli.physical {
                docs.push(Doc::Table(table_doc(cli, &g, "grad-upper", &con)?));
            }
        }
        Command::Div { field } => {
            let g = load_system(cli)?;
            let a = parse_vector_field(field, &g, Variance::Up, cli.physical)?;
            let d = divergence(&a, &g).map_err(|e| usage!("{e}"))?;
            docs.push(Doc::Table(TableDoc::scalar(&g.system().name, "div", &d)));
        }
        Command::Curl { field } => {
            let g = load_system(cli)?;
            let a = parse_vector_field(field, &g, Variance::Down, cli.physical)?;
            let c = curl(&a, &g).map_err(|e| usage!("{e}"))?;
            docs.push(Doc::Table(table_doc(cli, &g, "curl", &c)?));
        }
        Command::Laplacian { field } => {
            let g = load_system(cli)?;
            let f = parse_scalar_field(field, &g)?;
            let lap = laplacian_scalar(&f, &g);
            docs.push(Doc::Table(TableDoc::scalar(
                &g.system().name,
                "laplacian",
                &lap,
            )));
        }
        Command::Length { curve } => {
            let g = load_system(cli)?;
            let text = std::fs::read_to_string(curve)
                .map_err(|e| usage!("cannot read curve file '{}': {e}", curve.display()))?;
            let def = parse_curve_definition(&text)
                .map_err(|e| usage!("curve file '{}': {e}", curve.display()))?;
            let curve = def
                .build(&g)
                .map_err(|e| usage!("curve definition: {e}"))?;
            let len = curve_length(&curve, &g).map_err(|e| usage!("{e}"))?;
            docs.push(Doc::Value(ValueDoc {
                system: g.system().name.clone(),
                operation: "length".into(),
                value: len,
            }));
        }
        Command::Continuum { op } => continuum_docs(op, &mut docs)?,
        Command::Verify { suite } => {
            let cfg = VerifyConfig {
                seed: cli.seed,
                tol: cli.tol,
            };
            let checks = run_suite(suite, cfg).map_err(|e| usage!("{e}"))?;
            match cli.format {
                Format::Text => {
                    let _ = write!(out, "{}", checks_to_text(&checks));
                }
                Format::Json => {
                    let docs: Vec<CheckDoc> = checks.iter().map(CheckDoc::from).collect();
                    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&docs).unwrap());
                }
            }
            return Ok(if all_passed(&checks) {
                EXIT_OK
            } else {
                EXIT_VERIFICATION_FAILED
            });
        }
    }
    emit(cli, &docs, out);
    Ok(EXIT_OK)
}

fn show_metric(g: &DerivedMetric, docs: &mut Vec<Doc>) {
    let n = g.dim();
    let name = &g.system().name;
    let collect = |f: &dyn Fn(usize, usize) -> Expr| -> Vec<Expr> {
        let mut v = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                v.push(f(i, j));
            }
        }
        v
    };
    let lower = collect(&|i, j| g.lower(i, j).clone());
    let upper = collect(&|i, j| g.upper(i, j).clone());
    docs.push(Doc::Table(TableDoc::from_components(
        name, "metric", "dd", n, &lower,
    )));
    docs.push(Doc::Table(TableDoc::from_components(
        name,
        "metric-inverse",
        "uu",
        n,
        &upper,
    )));
    docs.push(Doc::Table(TableDoc::scalar(name, "metric-determinant", g.det())));
    docs.push(Doc::Table(TableDoc::scalar(name, "sqrt-g", g.sqrt_det())));
    if let Ok(h) = g.scale_factors() {
        docs.push(Doc::Table(TableDoc::from_components(
            name,
            "scale-factors",
            "d",
            n,
            h,
        )));
    }
    if let Some(jac) = g.jacobian() {
        docs.push(Doc::Table(TableDoc::scalar(
            name,
            "jacobian-determinant",
            &jac.det,
        )));
    }
}

fn christoffel_docs(g: &DerivedMetric, kind: u8, docs: &mut Vec<Doc>) {
    let gamma = crate::connection::christoffel(g);
    let n = g.dim();
    let name = &g.system().name;
    let mut comps = Vec::with_capacity(n * n * n);
    for idx in crate::tensor::index_tuples(n, 3) {
        let e = match kind {
            1 => gamma.first(idx[1], idx[2], idx[0]),
            _ => gamma.second(idx[0], idx[1], idx[2]),
        };
        comps.push(e.clone());
    }
    let (op, sig) = match kind {
        // first kind listed as [l; i j]
        1 => ("christoffel-1", "ddd"),
        _ => ("christoffel-2", "udd"),
    };
    docs.push(Doc::Table(TableDoc::from_components(name, op, sig, n, &comps)));
}

fn continuum_docs(op: &ContinuumOp, docs: &mut Vec<Doc>) -> Result<(), Failure> {
    let system = "cartesian";
    let matrix_doc = |operation: &str, m: &Matrix3| {
        let comps: Vec<Expr> = (1..=3)
            .flat_map(|i| (1..=3).map(move |j| (i, j)))
            .map(|(i, j)| m.get(i, j).clone())
            .collect();
        Doc::Table(TableDoc::from_components(system, operation, "dd", 3, &comps))
    };
    let vector_doc = |operation: &str, v: &FieldVector3| {
        Doc::Table(TableDoc::from_components(
            system,
            operation,
            "d",
            3,
            v.components(),
        ))
    };
    match op {
        ContinuumOp::Strain { displacement } => {
            let d = parse_vector3(displacement)?;
            docs.push(matrix_doc("strain", &infinitesimal_strain(&d)));
        }
        ContinuumOp::Traction { stress, normal } => {
            let entries = parse_expr_list(stress, 9)?;
            let sigma = Matrix3::from_fn(|i, j| entries[(i - 1) * 3 + (j - 1)].clone());
            let n = parse_vector3(normal)?;
            docs.push(vector_doc("traction", &traction(&sigma, &n)));
        }
        ContinuumOp::Finger { motion } => {
            let m = parse_vector3(motion)?;
            let (e, _) = displacement_gradients(&m).map_err(|err| usage!("{err}"))?;
            docs.push(matrix_doc("displacement-gradient", &e));
            docs.push(matrix_doc("finger", &finger(&e)));
        }
        ContinuumOp::Cauchy { motion } => {
            let m = parse_vector3(motion)?;
            let (_, delta) = displacement_gradients(&m).map_err(|err| usage!("{err}"))?;
            docs.push(matrix_doc("displacement-gradient-inverse", &delta));
            docs.push(matrix_doc("cauchy", &cauchy(&delta)));
        }
        ContinuumOp::Decompose { velocity } => {
            let v = parse_vector3(velocity)?;
            let (s, sbar) = velocity_gradient_decompose(&v);
            docs.push(matrix_doc("rate-of-strain", &s));
            docs.push(matrix_doc("vorticity", &sbar));
        }
    }
    Ok(())
}

fn parse_expr_list(spec: &str, expected: usize) -> Result<Vec<Expr>, Failure> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != expected {
        return Err(usage!(
            "expected {expected} comma-separated expressions, got {}",
            parts.len()
        ));
    }
    parts
        .iter()
        .map(|p| {
            let text = p.split_once('=').map(|(_, e)| e).unwrap_or(p);
            parse(text.trim()).map_err(|e| usage!("in '{p}': {e}"))
        })
        .collect()
}

fn parse_vector3(spec: &str) -> Result<FieldVector3, Failure> {
    let comps = parse_expr_list(spec, 3)?;
    FieldVector3::new(comps).map_err(|e| usage!("{e}"))
}

fn parse_scalar_field(spec: &str, g: &DerivedMetric) -> Result<Expr, Failure> {
    let exprs = parse_expr_list(spec, 1)?;
    let f = exprs.into_iter().next().unwrap();
    check_symbols(&f, g)?;
    Ok(f)
}

fn parse_vector_field(
    spec: &str,
    g: &DerivedMetric,
    variance: Variance,
    physical: bool,
) -> Result<TensorField, Failure> {
    let comps = parse_expr_list(spec, g.dim())?;
    for c in &comps {
        check_symbols(c, g)?;
    }
    if physical {
        let form = PhysicalForm::from_parts(g.dim(), vec![variance], comps);
        return tensor_components(&form, g, "A").map_err(|e| usage!("{e}"));
    }
    TensorField::vector("A", g.dim(), variance, comps).map_err(|e| usage!("{e}"))
}

fn check_symbols(e: &Expr, g: &DerivedMetric) -> Result<(), Failure> {
    for s in e.symbols() {
        if !g.system().coords().contains(&s) {
            return Err(usage!(
                "symbol '{s}' is not a coordinate of system '{}'",
                g.system().name
            ));
        }
    }
    Ok(())
}

fn table_doc(
    cli: &Cli,
    g: &DerivedMetric,
    operation: &str,
    field: &TensorField,
) -> Result<TableDoc, Failure> {
    if cli.physical {
        let phys = physical_components(field, g)
            .map_err(|e| usage!("--physical: {e}"))?;
        let signature: String = field.signature().iter().map(|v| v.letter()).collect();
        let entries: Vec<Entry> = phys
            .indices()
            .into_iter()
            .filter(|idx| !phys.get(idx).is_zero())
            .map(|idx| Entry {
                expr: render(phys.get(&idx)),
                index: idx,
            })
            .collect();
        return Ok(TableDoc {
            system: g.system().name.clone(),
            operation: format!("{operation}-physical"),
            signature,
            weight: field.weight,
            zeros_omitted: true,
            entries,
        });
    }
    Ok(TableDoc::from_field(&g.system().name, operation, field))
}

fn emit(cli: &Cli, docs: &[Doc], out: &mut dyn Write) {
    match cli.format {
        Format::Text => {
            for d in docs {
                match d {
                    Doc::Table(t) => {
                        let _ = write!(out, "{}", t.to_text());
                    }
                    Doc::Value(v) => {
                        let _ = write!(out, "{}", v.to_text());
                    }
                }
            }
        }
        Format::Json => {
            let values: Vec<serde_json::Value> = docs
                .iter()
                .map(|d| match d {
                    Doc::Table(t) => serde_json::to_value(t).unwrap(),
                    Doc::Value(v) => serde_json::to_value(v).unwrap(),
                })
                .collect();
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&serde_json::Value::Array(values)).unwrap()
            );
        }
    }
}
