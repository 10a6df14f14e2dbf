//! Command-line front end.
//!
//! Exit codes: 0 on success (and when an identity holds), 2 when the
//! hypotheses of a computation or identity fail (the expected inequality is
//! still reported), 1 on usage, input or budget errors.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use latticeface_core::ehrhart::{self, Method};
use latticeface_core::integrality::{generality_level, integrality_level};
use latticeface_core::polytope::{Location, DEFAULT_CELL_BUDGET};
use latticeface_core::reduction::reduce_to_full_general;
use latticeface_core::simplex::{svol_simplex_slices, verify_signed_identity, z_values, zero_lemma_sweep};
use latticeface_core::volume::{lattice_volume, normalized_volume, svol, svol_terms, verify_mainvol};
use latticeface_core::{EhrhartPolynomial, Error, LevelCertificate, Polytope, Rat, Report, Sublattice};
use serde_json::{json, Value};

use crate::document::{parse_polytope, PolytopeDocument};

/// Environment variable overriding the lattice-point counting budget.
pub const BUDGET_ENV: &str = "LATTICEFACE_CELL_BUDGET";

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "latticeface", version, about = "Exact integrality levels, slice volumes and Ehrhart polynomials of lattice polytopes")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum LatticeChoice {
    /// The lattice of the linear hull, `lin(P) ∩ Z^D`.
    Lin,
    /// `Z^D` itself (the polytope must be full-dimensional).
    Ambient,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MethodChoice {
    Auto,
    Interpolate,
    KIntegral,
    FullyIntegral,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integrality and generality levels, with failing faces.
    Check { file: PathBuf },
    /// Normalized volume.
    Volume {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = LatticeChoice::Lin)]
        lattice: LatticeChoice,
    },
    /// Sum of slice volumes over projected lattice points.
    Svol {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Checks that the volume equals the k-th S-volume.
    VerifyMainvol {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Ehrhart polynomial.
    Ehrhart {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodChoice::Auto)]
        method: MethodChoice,
        /// Slice level for `--method k-integral` (default: the integrality level).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Slices over the projected lattice points: volumes and Ehrhart polynomials.
    Slices {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Signed decomposition identities of a fully general simplex.
    SimplexIdentities { file: PathBuf },
    /// Checks i(P) = i(projection) + Vol(P).
    VerifyCodim1 { file: PathBuf },
    /// Maps the polytope to a full-dimensional, fully general one.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        /// Also write the reduced polytope to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Result of a command: structured and text renderings plus the exit code.
struct Output {
    json: Value,
    text: String,
    code: i32,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, code: EXIT_OK }
    }
}

fn rat(x: &Rat) -> Value {
    Value::String(x.to_string())
}

fn point(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

fn point_text(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn coefficients(p: &EhrhartPolynomial) -> Value {
    Value::Array(p.coefficients().iter().map(rat).collect())
}

fn coefficients_text(p: &EhrhartPolynomial) -> String {
    let parts: Vec<String> = p.coefficients().iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn location(l: Location) -> &'static str {
    match l {
        Location::Interior => "interior",
        Location::Boundary => "boundary",
        Location::Outside => "outside",
    }
}

fn certificate(c: &LevelCertificate) -> Value {
    json!({
        "condition": c.condition.adjective(),
        "dimension": c.dim,
        "max_level": c.max_level,
        "witness": c.witness.as_ref().map(|w| json!({
            "face_dimension": w.face.dim,
            "vertices": w.vertices.iter().map(|v| point(v)).collect::<Vec<_>>(),
            "failure": w.failure.to_string(),
        })),
    })
}

fn report_json(r: &Report) -> Value {
    json!({
        "identity": r.identity,
        "hypotheses": r.hypotheses.iter().map(|c| json!({
            "name": c.name,
            "holds": c.holds,
            "certificate": c.certificate.as_ref().map(certificate),
        })).collect::<Vec<_>>(),
        "hypotheses_hold": r.hypotheses_hold(),
        "lhs": rat(&r.lhs),
        "rhs": rat(&r.rhs),
        "extra": r.extra.iter().map(|(k, v)| (k.clone(), rat(v))).collect::<serde_json::Map<_, _>>(),
        "equal": r.equal,
    })
}

fn report_output(r: Report) -> Output {
    let code = if r.hypotheses_hold() { EXIT_OK } else { EXIT_HYPOTHESIS };
    Output { json: report_json(&r), text: r.to_string(), code }
}

fn budget() -> anyhow::Result<u64> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().with_context(|| format!("{BUDGET_ENV} must be a non-negative integer, got `{v}`")),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_CELL_BUDGET),
        Err(e) => Err(anyhow!("{BUDGET_ENV}: {e}")),
    }
}

fn load(path: &Path) -> anyhow::Result<Polytope> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_polytope(&text).with_context(|| format!("in {}", path.display()))
}

fn check(p: &Polytope) -> Output {
    let int = integrality_level(p);
    let gen = generality_level(p);
    let json = json!({
        "ambient_dim": p.ambient_dim(),
        "dimension": p.dim(),
        "vertices": p.vertices().len(),
        "integrality": certificate(&int),
        "generality": certificate(&gen),
    });
    let text = format!(
        "dimension {} in R^{} with {} vertices\nintegrality level {}: {int}\ngenerality level {}: {gen}",
        p.dim(),
        p.ambient_dim(),
        p.vertices().len(),
        int.max_level,
        gen.max_level
    );
    Output::ok(json, text)
}

fn volume(p: &Polytope, lattice: LatticeChoice) -> anyhow::Result<Output> {
    let (name, v) = match lattice {
        LatticeChoice::Lin => ("lin", lattice_volume(p)?),
        LatticeChoice::Ambient => ("ambient", normalized_volume(p, &Sublattice::full(p.ambient_dim()))?),
    };
    Ok(Output::ok(json!({ "lattice": name, "volume": rat(&v) }), format!("volume ({name} lattice) = {v}")))
}

fn method_name(m: Method) -> String {
    match m {
        Method::Auto => "auto".into(),
        Method::Interpolate => "interpolate".into(),
        Method::KIntegral(k) => format!("k-integral (k = {k})"),
        Method::FullyIntegral => "fully-integral".into(),
    }
}

fn ehrhart_cmd(p: &Polytope, choice: MethodChoice, k: Option<usize>, budget: u64) -> anyhow::Result<Output> {
    if k.is_some() && choice != MethodChoice::KIntegral {
        bail!("--k only applies to --method k-integral");
    }
    let method = match choice {
        MethodChoice::Auto => ehrhart::resolve_auto(p)?,
        MethodChoice::Interpolate => Method::Interpolate,
        MethodChoice::FullyIntegral => Method::FullyIntegral,
        MethodChoice::KIntegral => Method::KIntegral(match k {
            Some(k) => k,
            None => usize::try_from(integrality_level(p).max_level).map_err(|_| {
                Error::Hypothesis {
                    condition: latticeface_core::Condition::Integral,
                    level: 0,
                    certificate: Box::new(integrality_level(p)),
                }
            })?,
        }),
    };
    let poly = ehrhart::ehrhart(p, method, budget)?;
    let json = json!({
        "method": method_name(method),
        "coefficients": coefficients(&poly),
        "polynomial": poly.to_string(),
    });
    let text = format!("i(P, m) = {poly}\ncoefficients: {}\nmethod: {}", coefficients_text(&poly), method_name(method));
    Ok(Output::ok(json, text))
}

fn svol_cmd(p: &Polytope, k: usize, budget: u64) -> anyhow::Result<Output> {
    let v = svol(p, k, &p.lin_lattice(), budget)?;
    Ok(Output::ok(json!({ "k": k, "svol": rat(&v) }), format!("SVol^{k} = {v}")))
}

fn slice_polynomial(slice: &Polytope, budget: u64) -> anyhow::Result<Option<EhrhartPolynomial>> {
    if slice.is_empty() || !slice.is_integral() {
        return Ok(None);
    }
    Ok(Some(ehrhart::ehrhart_interpolated(slice, budget)?))
}

fn slices_cmd(p: &Polytope, k: usize, budget: u64) -> anyhow::Result<Output> {
    let terms = svol_terms(p, k, &p.lin_lattice(), budget)?;
    let mut total = Rat::from_integer(0.into());
    let mut rows = Vec::new();
    let mut text = String::new();
    writeln!(text, "slices over {} lattice points (k = {k})", terms.len())?;
    for t in &terms {
        total += &t.volume;
        let poly = slice_polynomial(&t.slice, budget)?;
        rows.push(json!({
            "y": point(&t.y),
            "location": location(t.location),
            "volume": rat(&t.volume),
            "slice": PolytopeDocument::from_polytope(&t.slice),
            "ehrhart": poly.as_ref().map(coefficients),
        }));
        let poly_text = poly.map_or_else(|| "-".to_string(), |q| q.to_string());
        writeln!(text, "  y = {:<12} {:<9} volume {:<6} i(slice, m) = {poly_text}", point_text(&t.y), location(t.location), t.volume)?;
    }
    write!(text, "total volume = {total}")?;
    Ok(Output::ok(json!({ "k": k, "slices": rows, "total_volume": rat(&total) }), text))
}

fn simplex_cmd(p: &Polytope) -> anyhow::Result<Output> {
    let identity: Vec<usize> = (0..p.dim()).collect();
    let z = z_values(p, &identity)?;
    let signed = verify_signed_identity(p)?;
    let slices = svol_simplex_slices(p)?;
    let zero = zero_lemma_sweep(p, 2)?;
    let all_zero = zero.iter().all(|r| r.equal);
    let zero_json: Vec<Value> = zero
        .iter()
        .map(|r| {
            let mut m: serde_json::Map<String, Value> = r.extra.iter().map(|(k, v)| (k.clone(), rat(v))).collect();
            m.insert("sum".into(), rat(&r.lhs));
            Value::Object(m)
        })
        .collect();
    let json = json!({
        "z_identity": point(&z),
        "signed_identity": report_json(&signed),
        "slice_svol": rat(&slices),
        "zero_sums": zero_json,
        "zero_sums_vanish": all_zero,
    });
    let text = format!(
        "z(id) = {}\n{signed}\nSVol^1 from the signed decomposition = {slices}\nvanishing sums (degree <= 2): {} checked, {}",
        point_text(&z),
        zero.len(),
        if all_zero { "all zero" } else { "SOME NONZERO" }
    );
    Ok(Output { json, text, code: if signed.equal && all_zero { EXIT_OK } else { EXIT_ERROR } })
}

fn reduce_cmd(p: &Polytope, k: usize, out: Option<&Path>, budget: u64) -> anyhow::Result<Output> {
    let red = reduce_to_full_general(p, k)?;
    let doc = PolytopeDocument::from_polytope(&red.q);
    if let Some(path) = out {
        std::fs::write(path, doc.to_json_string() + "\n").with_context(|| format!("cannot write {}", path.display()))?;
    }
    let vol = lattice_volume(&red.q)?;
    let sv = svol(&red.q, k, &Sublattice::full(red.q.ambient_dim()), budget)?;
    let matrix: Vec<Value> = red.map.matrix.iter_rows().map(point).collect();
    let json = json!({
        "k": k,
        "map": { "matrix": matrix, "offset": point(&red.map.offset) },
        "reduced": doc,
        "integrality_level": red.integrality.max_level,
        "generality_level": red.generality.max_level,
        "volume": rat(&vol),
        "svol": rat(&sv),
    });
    let verts: Vec<String> = red.q.vertices().iter().map(|v| point_text(v)).collect();
    let text = format!(
        "map: {}\nreduced polytope in R^{}: {}\nintegrality level {}, generality level {}\nvolume = {vol}, SVol^{k} = {sv}",
        red.map,
        red.q.ambient_dim(),
        verts.join(", "),
        red.integrality.max_level,
        red.generality.max_level
    );
    Ok(Output::ok(json, text))
}

fn execute(cli: &Cli) -> anyhow::Result<Output> {
    let budget = budget()?;
    match &cli.command {
        Command::Check { file } => Ok(check(&load(file)?)),
        Command::Volume { file, lattice } => volume(&load(file)?, *lattice),
        Command::Svol { file, k } => svol_cmd(&load(file)?, *k, budget),
        Command::VerifyMainvol { file, k } => Ok(report_output(verify_mainvol(&load(file)?, *k, budget)?)),
        Command::Ehrhart { file, method, k } => ehrhart_cmd(&load(file)?, *method, *k, budget),
        Command::Slices { file, k } => slices_cmd(&load(file)?, *k, budget),
        Command::SimplexIdentities { file } => simplex_cmd(&load(file)?),
        Command::VerifyCodim1 { file } => Ok(report_output(ehrhart::verify_codim1(&load(file)?, budget)?)),
        Command::Reduce { file, k, out } => reduce_cmd(&load(file)?, *k, out.as_deref(), budget),
    }
}

fn hypothesis_output(e: &Error) -> Option<Output> {
    let Error::Hypothesis { condition, level, certificate: cert } = e else { return None };
    let json = json!({
        "hypothesis_violation": {
            "condition": condition.adjective(),
            "required_level": level,
            "certificate": certificate(cert),
            "message": e.to_string(),
        }
    });
    Some(Output { json, text: format!("hypothesis violated: {e}"), code: EXIT_HYPOTHESIS })
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let output = match execute(&cli) {
        Ok(o) => o,
        Err(e) => match e.downcast_ref::<Error>().and_then(hypothesis_output) {
            Some(o) => o,
            None => {
                let _ = writeln!(err, "error: {e:#}");
                return EXIT_ERROR;
            }
        },
    };
    let written = match cli.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&output.json).expect("values serialize")),
        Format::Text => writeln!(out, "{}", output.text),
    };
    if written.is_err() {
        return EXIT_ERROR;
    }
    output.code
}
