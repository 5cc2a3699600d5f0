//! Command-line front end. Exit codes: 0 success, 1 a check failed, 2 usage
//! or spec error, 3 unsupported (no complete indecomposable list, or a
//! resolution cut off at the cap).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::algebra::{parse_algebra, BoundAlgebra};
use crate::approx::{is_maximal_orthogonal, minimal_approximation, trivial_candidate, ApproxError, SubcategorySet, Witness};
use crate::catalog::{enumerate_indecomposables, name_module, parse_module_name, CatalogError};
use crate::homology::{
    default_cap, ext_dim, ext_dim_via_injective, injective_dimension, minimal_resolution, projective_dimension,
    HomologyError, ResolutionKind,
};
use crate::rep::{morphism_parts, RepError, Representation, Side};
use crate::verify::{Context, Status, VerifyError};

#[derive(Parser, Debug)]
#[command(name = "boundquiver", version, about = "Homological invariants of monomial bound quiver algebras")]
struct Cli {
    /// Seed for every randomized routine.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Resolution length cap; defaults to 2·|vertices| + 2.
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimensions, Cartan matrix and structure flags.
    Info { spec: PathBuf },
    /// Every indecomposable with pd and id (Nakayama algebras only).
    Indecomposables { spec: PathBuf },
    /// A minimal projective or injective resolution.
    Resolve {
        spec: PathBuf,
        #[arg(short = 'm', long = "module")]
        module: String,
        #[arg(long)]
        injective: bool,
        /// Also print the differentials, one matrix per vertex.
        #[arg(long)]
        matrices: bool,
    },
    /// dim Ext^i(M, N), computed along both resolutions.
    Ext {
        spec: PathBuf,
        #[arg(short = 'm')]
        m: String,
        #[arg(short = 'n')]
        n: String,
        #[arg(short = 'i')]
        degree: usize,
    },
    /// The minimal approximation of a module by add C.
    Approx {
        spec: PathBuf,
        #[arg(short = 'm', long = "module")]
        module: String,
        #[arg(long, value_enum)]
        side: SideArg,
        /// `trivial` or a file with one module name per line.
        #[arg(long, default_value = "trivial")]
        cat: String,
    },
    /// Whether C is maximal n-orthogonal.
    Check {
        spec: PathBuf,
        #[arg(long = "max-orthogonal", required = true)]
        max_orthogonal: bool,
        #[arg(long = "n", default_value_t = 1)]
        n: usize,
        #[arg(long, default_value = "trivial")]
        cat: String,
    },
    /// The full check report.
    Verify {
        spec: PathBuf,
        /// Write the JSON report here (`-` for standard output).
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("{0}")]
    Failed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Unsupported(_) => 3,
        }
    }
}

impl From<HomologyError> for CliError {
    fn from(e: HomologyError) -> Self {
        match e {
            HomologyError::Truncated { .. } => CliError::Unsupported(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<RepError> for CliError {
    fn from(e: RepError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Homology(h) => h.into(),
            CatalogError::Incomplete => CliError::Unsupported(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<ApproxError> for CliError {
    fn from(e: ApproxError) -> Self {
        match e {
            ApproxError::Homology(h) => h.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Homology(h) => h.into(),
            VerifyError::Catalog(c) => c.into(),
            VerifyError::Approx(a) => a.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

fn load(path: &Path) -> Result<Arc<BoundAlgebra>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    parse_algebra(&text)
        .map(Arc::new)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn load_cat(algebra: &Arc<BoundAlgebra>, cat: &str, seed: u64) -> Result<SubcategorySet, CliError> {
    if cat == "trivial" {
        return Ok(trivial_candidate(algebra));
    }
    let text = std::fs::read_to_string(cat).map_err(|e| CliError::Usage(format!("{cat}: {e}")))?;
    let mut named = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        named.push((line.to_string(), parse_module_name(algebra, line)?));
    }
    Ok(SubcategorySet::new(algebra, named, seed)?)
}

fn flag(b: Option<bool>) -> String {
    b.map_or_else(|| "unknown (indecomposable list incomplete)".into(), |b| b.to_string())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let seed = cli.seed;
    let spec = match &cli.command {
        Command::Info { spec }
        | Command::Indecomposables { spec }
        | Command::Resolve { spec, .. }
        | Command::Ext { spec, .. }
        | Command::Approx { spec, .. }
        | Command::Check { spec, .. }
        | Command::Verify { spec, .. } => spec,
    };
    let algebra = load(spec)?;
    let cap = cli.cap.unwrap_or_else(|| default_cap(&algebra));
    if cap == 0 {
        return Err(CliError::Usage("--cap must be at least 1".into()));
    }
    let module = |name: &str| -> Result<Representation, CliError> { Ok(parse_module_name(&algebra, name)?) };

    match &cli.command {
        Command::Info { .. } => {
            writeln!(out, "algebra: {}", algebra.summary())?;
            writeln!(out, "cartan (entry v,w counts paths from w to v):")?;
            for row in algebra.cartan_matrix() {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                writeln!(out, "  {}", cells.join(" "))?;
            }
            let f = Context::new(&algebra, cap, seed)?.flags;
            writeln!(out, "gl.dim: {}", f.gl_dim)?;
            writeln!(out, "nakayama: {}", f.nakayama)?;
            writeln!(out, "gorenstein_1: {}", f.gorenstein_1)?;
            writeln!(out, "auslander_algebra: {}", f.auslander_algebra)?;
            writeln!(out, "almost_hereditary: {}", flag(f.almost_hereditary))?;
            writeln!(out, "trivial_is_maximal_1_orthogonal: {}", flag(f.trivial_is_maximal_1_orthogonal))?;
            writeln!(out, "pd I0(Λ): {}", f.pd_i0)?;
            writeln!(out, "pd I1(Λ): {}", f.pd_i1)?;
            writeln!(out, "id Λ: {}", f.id_regular)?;
            writeln!(out, "id Λ^op: {}", f.id_regular_op)?;
        }
        Command::Indecomposables { .. } => {
            let u = enumerate_indecomposables(&algebra);
            if !u.complete {
                return Err(CliError::Unsupported(
                    "indecomposables are only enumerated for Nakayama algebras".into(),
                ));
            }
            writeln!(out, "{} indecomposables", u.len())?;
            for o in &u.objects {
                let pd = projective_dimension(&o.module, cap)?;
                let id = injective_dimension(&o.module, cap)?;
                writeln!(
                    out,
                    "{:<16} dims {:?}  pd {pd}  id {id}  projective {}  injective {}",
                    o.label(),
                    o.module.dims(),
                    o.is_projective(),
                    o.is_injective()
                )?;
            }
        }
        Command::Resolve {
            module: name,
            injective,
            matrices,
            ..
        } => {
            let m = module(name)?;
            let kind = if *injective {
                ResolutionKind::Injective
            } else {
                ResolutionKind::Projective
            };
            let r = minimal_resolution(&m, kind, cap)?;
            writeln!(out, "{}", r.display_line(name))?;
            let letter = if *injective { "I^" } else { "P_" };
            for (i, t) in r.terms.iter().enumerate() {
                writeln!(out, "{letter}{i} = {}  dims {:?}", r.term_name(i), t.dims())?;
            }
            if *matrices {
                for (i, d) in r.differentials.iter().enumerate() {
                    writeln!(out, "d{i}:")?;
                    for (v, block) in d.blocks().iter().enumerate() {
                        writeln!(out, "  vertex {}: {:?}", algebra.vertex_label(v), block.to_rows())?;
                    }
                }
            }
            writeln!(out, "length: {}", r.length())?;
            if r.truncated {
                return Err(CliError::Unsupported(format!("resolution cut off at cap {cap}")));
            }
        }
        Command::Ext { m, n, degree, .. } => {
            let (m, n) = (module(m)?, module(n)?);
            let a = ext_dim(&m, &n, *degree, cap)?;
            let b = ext_dim_via_injective(&m, &n, *degree, cap)?;
            if a != b {
                writeln!(out, "projective route {a}, injective route {b}")?;
                return Err(CliError::Failed("the two Ext routes disagree".into()));
            }
            writeln!(out, "{a}")?;
        }
        Command::Approx {
            module: name, side, cat, ..
        } => {
            let m = module(name)?;
            let c = load_cat(&algebra, cat, seed)?;
            let f = minimal_approximation(&c, &m, (*side).into())?;
            let parts = morphism_parts(&f);
            let nm = |x: &Representation| name_module(x, seed);
            let mut seq = Vec::new();
            match side {
                SideArg::Right => {
                    if !parts.kernel.is_zero() {
                        seq.push(nm(&parts.kernel));
                    }
                    seq.push(nm(f.source()));
                    seq.push(name.clone());
                    let mut line = format!("0 → {}", seq.join(" → "));
                    if parts.cokernel.is_zero() {
                        line.push_str(" → 0");
                    }
                    writeln!(out, "{line}")?;
                }
                SideArg::Left => {
                    seq.push(name.clone());
                    seq.push(nm(f.target()));
                    if !parts.cokernel.is_zero() {
                        seq.push(nm(&parts.cokernel));
                    }
                    let head = if parts.kernel.is_zero() { "0 → " } else { "" };
                    writeln!(out, "{head}{} → 0", seq.join(" → "))?;
                }
            }
        }
        Command::Check { n, cat, .. } => {
            let c = load_cat(&algebra, cat, seed)?;
            let u = enumerate_indecomposables(&algebra);
            let verdict = is_maximal_orthogonal(&c, *n, &u.as_set(), u.complete, cap, seed)?;
            if !u.complete && !matches!(verdict.witness, Some(Witness::SelfExtension { .. })) {
                return Err(CliError::Unsupported(
                    "maximality needs the full indecomposable list (Nakayama algebras only)".into(),
                ));
            }
            writeln!(out, "C = add({})", c.names().join(", "))?;
            if verdict.maximal {
                writeln!(out, "maximal {n}-orthogonal: true")?;
            } else {
                writeln!(out, "maximal {n}-orthogonal: false")?;
                let w = verdict.witness.expect("a failed verdict has a witness");
                writeln!(out, "witness: {w}")?;
                return Err(CliError::Failed(format!("C is not maximal {n}-orthogonal")));
            }
        }
        Command::Verify { json, .. } => {
            let report = Context::new(&algebra, cap, seed)?.report();
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&report.to_json()).expect("JSON values serialize") + "\n";
                if path.as_os_str() == "-" {
                    write!(out, "{text}")?;
                } else {
                    std::fs::write(path, text)?;
                }
            }
            if json.as_ref().is_none_or(|p| p.as_os_str() != "-") {
                writeln!(out, "algebra: {}", algebra.summary())?;
                for c in &report.checks {
                    writeln!(out, "{:<7} {}", c.id, c.status.as_str())?;
                    if matches!(c.status, Status::Fail | Status::Skipped) {
                        writeln!(out, "        {}", c.details)?;
                    }
                }
                writeln!(out, "overall: {}", if report.passed() { "pass" } else { "fail" })?;
            }
            if !report.passed() {
                return Err(CliError::Failed("some check failed".into()));
            }
        }
    }
    Ok(())
}
