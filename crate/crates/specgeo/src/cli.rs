//! Command-line driver: `gen`, `spectrum`, `dirichlet`, `check`, and
//! `sweep`. Exit codes: 0 on success, 1 on validation/solver errors, 2 on
//! bad arguments. A flat key=value config file supplies defaults that
//! flags override.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::eigen::EigenRequest;
use crate::fem;
use crate::inequality::{self, InequalityError, DEFAULT_EQUALITY_GAP_THRESHOLD};
use crate::mesh::{generators, io as mesh_io, MeshError, SurfaceMesh, TetMesh};
use crate::report::{
    self, KorevaarBlock, KorevaarEntry, Meta, Report, SkippedCheck, SpectraBlock, SweepRow,
};
use crate::spectra::{self, SpectraError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Inequality(#[from] InequalityError),
    #[error(transparent)]
    Fem(#[from] fem::FemError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Parser)]
#[command(
    name = "specgeo",
    version,
    about = "Spectra of closed surfaces and the solids they bound, with verified spectral inequalities"
)]
struct Cli {
    /// Flat key=value config file; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a mesh fixture and write it to disk.
    Gen(GenArgs),
    /// Laplace-Beltrami spectrum of a closed surface.
    Spectrum(SpectrumArgs),
    /// Dirichlet spectrum of a tet mesh.
    Dirichlet(SpectrumArgs),
    /// Run every applicable inequality check on a surface or a
    /// surface+solid pair.
    Check(CheckArgs),
    /// Ratio and margin table over a fixture list.
    Sweep(SweepArgs),
}

/// Mesh source: exactly one of a file path or a generator shape.
#[derive(Args, Clone, Default)]
struct SourceArgs {
    /// Input mesh file: .off/.obj for surfaces, a .node/.ele base for tets.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Generator shape: icosphere | torus | cube | ball-tet | cube-tet |
    /// solid-torus-tet.
    #[arg(long)]
    shape: Option<String>,
    /// Sphere/ball radius.
    #[arg(long)]
    radius: Option<f64>,
    /// Icosphere subdivision count.
    #[arg(long)]
    subdiv: Option<u32>,
    /// Torus major radius.
    #[arg(long)]
    major: Option<f64>,
    /// Torus minor (tube) radius.
    #[arg(long)]
    minor: Option<f64>,
    /// Sectors around the major circle.
    #[arg(long)]
    nu: Option<usize>,
    /// Sectors around the tube.
    #[arg(long)]
    nv: Option<usize>,
    /// Radial rings of the solid-torus disk grid.
    #[arg(long)]
    nr: Option<usize>,
    /// Cube edge length.
    #[arg(long)]
    edge: Option<f64>,
    /// Cells per axis for cube grids.
    #[arg(long)]
    n: Option<usize>,
    /// Ball refinement (1..=6).
    #[arg(long)]
    refine: Option<usize>,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Output path: .off/.obj for surfaces, a base path for tets
    /// (writes base.node and base.ele).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Number of eigenvalues (nonzero ones for surfaces).
    #[arg(long)]
    k: Option<usize>,
    /// Relative residual tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long = "max-iter")]
    max_iter: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Companion solid as a .node/.ele base path.
    #[arg(long)]
    solid: Option<PathBuf>,
    /// Companion solid generator: ball-tet | cube-tet | solid-torus-tet
    /// (radius/edge/major/minor are shared with the surface source).
    #[arg(long = "solid-shape")]
    solid_shape: Option<String>,
    /// Solid ball refinement.
    #[arg(long = "solid-refine")]
    solid_refine: Option<usize>,
    /// Solid cube cells per axis.
    #[arg(long = "solid-n")]
    solid_n: Option<usize>,
    #[arg(long = "solid-nu")]
    solid_nu: Option<usize>,
    #[arg(long = "solid-nr")]
    solid_nr: Option<usize>,
    #[arg(long = "solid-nv")]
    solid_nv: Option<usize>,
    /// Ratio index k.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    /// Candidate universal constant C; enables the proof-chain rows.
    #[arg(long = "C")]
    c_candidate: Option<f64>,
    /// Equality-gap threshold for flagging near-equality cases.
    #[arg(long = "gap-threshold")]
    gap_threshold: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated fixture list: sphere:<subdiv>, cube, torus, ball.
    #[arg(long)]
    fixtures: Option<String>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    /// Candidate universal constant C.
    #[arg(long = "C")]
    c_candidate: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    #[arg(long)]
    verbose: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

/// Parse the process arguments, run, and map errors to the exit-code
/// contract.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    0
                }
                _ => {
                    eprint!("{e}");
                    2
                }
            };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Mesh(MeshError::BadParameter(msg))) => {
            eprintln!("error: parameter out of range: {msg}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let overlay = Overlay::load(cli.config.as_deref())?;
    match cli.command {
        Command::Gen(args) => cmd_gen(args, &overlay),
        Command::Spectrum(args) => cmd_spectrum(args, &overlay),
        Command::Dirichlet(args) => cmd_dirichlet(args, &overlay),
        Command::Check(args) => cmd_check(args, &overlay),
        Command::Sweep(args) => cmd_sweep(args, &overlay),
    }
}

/// Key=value defaults from the config file.
struct Overlay(BTreeMap<String, String>);

impl Overlay {
    fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let mut map = BTreeMap::new();
        if let Some(path) = path {
            let text = fs::read_to_string(path)?;
            for (ln, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let Some((key, value)) = line.split_once('=') else {
                    return Err(CliError::Usage(format!(
                        "config line {} is not key=value: {line:?}",
                        ln + 1
                    )));
                };
                map.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        Ok(Self(map))
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.0.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse().map(Some).map_err(|_| {
                CliError::Usage(format!("config key {key} has unparsable value {raw:?}"))
            }),
        }
    }

    fn merge<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, CliError> {
        Ok(match flag {
            Some(v) => v,
            None => self.get(key)?.unwrap_or(default),
        })
    }

    fn merge_opt<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        Ok(match flag {
            Some(v) => Some(v),
            None => self.get(key)?,
        })
    }
}

enum MeshKind {
    Surface(SurfaceMesh),
    Tet(TetMesh),
}

/// Resolve a mesh source: exactly one of --in or --shape.
fn resolve_source(args: &SourceArgs, overlay: &Overlay) -> Result<(MeshKind, String), CliError> {
    let input = match &args.input {
        Some(p) => Some(p.clone()),
        None => overlay.get::<PathBuf>("in")?,
    };
    let shape = match &args.shape {
        Some(s) => Some(s.clone()),
        None => overlay.get::<String>("shape")?,
    };
    match (input, shape) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "give exactly one mesh source: --in or --shape, not both".into(),
        )),
        (None, None) => Err(CliError::Usage(
            "a mesh source is required: --in <file> or --shape <name>".into(),
        )),
        (Some(path), None) => {
            let echo = path.display().to_string();
            if is_tet_path(&path) {
                let (node, ele) = tet_pair(&path);
                Ok((MeshKind::Tet(mesh_io::load_tet(node, ele)?), echo))
            } else {
                let format = mesh_io::SurfaceFormat::from_path(&path)?;
                Ok((
                    MeshKind::Surface(mesh_io::load_surface(&path, format)?),
                    echo,
                ))
            }
        }
        (None, Some(shape)) => {
            let mesh = generate(&shape, args, overlay)?;
            Ok((mesh, shape))
        }
    }
}

fn is_tet_path(path: &Path) -> bool {
    matches!(
        path.extension().and_then(|e| e.to_str()),
        Some("node") | Some("ele")
    ) || path.extension().is_none()
}

/// node/ele pair from a base path or either member of the pair.
fn tet_pair(path: &Path) -> (PathBuf, PathBuf) {
    let base = path.with_extension("");
    (base.with_extension("node"), base.with_extension("ele"))
}

fn generate(shape: &str, args: &SourceArgs, overlay: &Overlay) -> Result<MeshKind, CliError> {
    let radius = overlay.merge(args.radius, "radius", 1.0)?;
    let subdiv = overlay.merge(args.subdiv, "subdiv", 4)?;
    let major = overlay.merge(args.major, "major", 2.0)?;
    let minor = overlay.merge(args.minor, "minor", 1.0)?;
    let nu = overlay.merge(args.nu, "nu", 32)?;
    let nv = overlay.merge(args.nv, "nv", 16)?;
    let nr = overlay.merge(args.nr, "nr", 4)?;
    let edge = overlay.merge(args.edge, "edge", 1.0)?;
    let n = overlay.merge(args.n, "n", 8)?;
    let refine = overlay.merge(args.refine, "refine", 3)?;
    Ok(match shape {
        "icosphere" => MeshKind::Surface(generators::icosphere(radius, subdiv)?),
        "torus" => MeshKind::Surface(generators::torus(major, minor, nu, nv)?),
        "cube" => MeshKind::Surface(generators::cube_surface(edge, n)?),
        "ball-tet" => MeshKind::Tet(generators::ball_tet(radius, refine)?),
        "cube-tet" => MeshKind::Tet(generators::cube_tet(edge, n)?),
        "solid-torus-tet" => MeshKind::Tet(generators::solid_torus_tet(major, minor, nu, nr, nv)?),
        other => {
            return Err(CliError::Usage(format!(
                "unknown shape {other:?}; expected icosphere | torus | cube | ball-tet | \
                 cube-tet | solid-torus-tet"
            )))
        }
    })
}

fn cmd_gen(args: GenArgs, overlay: &Overlay) -> Result<(), CliError> {
    let out = overlay
        .merge_opt(args.out, "out")?
        .ok_or_else(|| CliError::Usage("gen requires --out".into()))?;
    let (mesh, _) = resolve_source(&args.source, overlay)?;
    match mesh {
        MeshKind::Surface(surface) => {
            let format = mesh_io::SurfaceFormat::from_path(&out)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            mesh_io::save_surface(&surface, &out, format)?;
            eprintln!(
                "wrote {} ({} vertices, {} faces, genus {})",
                out.display(),
                surface.vertex_count(),
                surface.face_count(),
                surface.genus()
            );
        }
        MeshKind::Tet(tet) => {
            let (node, ele) = tet_pair(&out);
            mesh_io::save_tet(&tet, &node, &ele)?;
            eprintln!(
                "wrote {} and {} ({} vertices, {} tets)",
                node.display(),
                ele.display(),
                tet.vertex_count(),
                tet.tet_count()
            );
        }
    }
    Ok(())
}

fn eigen_request(tol: f64, max_iter: usize, verbose: bool) -> EigenRequest {
    EigenRequest {
        tolerance: tol,
        max_iterations: max_iter,
        verbose,
        ..EigenRequest::default()
    }
}

fn config_echo(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn write_output(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_spectrum(args: SpectrumArgs, overlay: &Overlay) -> Result<(), CliError> {
    let k = overlay.merge(args.k, "k", 10)?;
    let tol = overlay.merge(args.tol, "tol", 1e-8)?;
    let max_iter = overlay.merge(args.max_iter, "max-iter", 400)?;
    let format = overlay.merge(args.format, "format", OutputFormat::Csv)?;
    let out = overlay.merge_opt(args.out, "out")?;
    if k < 1 {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }

    let (mesh, source_echo) = resolve_source(&args.source, overlay)?;
    let MeshKind::Surface(surface) = mesh else {
        return Err(CliError::Usage(
            "spectrum needs a surface mesh; use dirichlet for tet meshes".into(),
        ));
    };
    let request = eigen_request(tol, max_iter, args.verbose);
    let spec = spectra::surface_spectrum_with(&surface, k, &request)?;

    let text = match format {
        OutputFormat::Csv => {
            report::spectrum_csv(spec.zero_mode_count, &spec.eigenvalues, &spec.residuals)
        }
        OutputFormat::Json => {
            let echo = config_echo(&[
                ("command", "spectrum".into()),
                ("source", source_echo),
                ("k", k.to_string()),
                ("tol", tol.to_string()),
            ]);
            let mut rep = Report::new(Meta::new(echo, report::surface_hash(&surface)));
            rep.geometry = Some(spec.summary.clone());
            rep.spectra = Some(SpectraBlock {
                surface: spec.eigenvalues.clone(),
                dirichlet: Vec::new(),
                residuals: spec.residuals.clone(),
            });
            rep.to_json()?
        }
    };
    write_output(&text, out.as_deref())
}

fn cmd_dirichlet(args: SpectrumArgs, overlay: &Overlay) -> Result<(), CliError> {
    let k = overlay.merge(args.k, "k", 10)?;
    let tol = overlay.merge(args.tol, "tol", 1e-8)?;
    let max_iter = overlay.merge(args.max_iter, "max-iter", 400)?;
    let format = overlay.merge(args.format, "format", OutputFormat::Csv)?;
    let out = overlay.merge_opt(args.out, "out")?;
    if k < 1 {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }

    let (mesh, source_echo) = resolve_source(&args.source, overlay)?;
    let MeshKind::Tet(tet) = mesh else {
        return Err(CliError::Usage(
            "dirichlet needs a tet mesh (.node/.ele); use spectrum for surfaces".into(),
        ));
    };
    let request = eigen_request(tol, max_iter, args.verbose);
    let spec = spectra::dirichlet_spectrum_with(&tet, k, &request)?;

    let text = match format {
        OutputFormat::Csv => report::spectrum_csv(0, &spec.eigenvalues, &spec.residuals),
        OutputFormat::Json => {
            let echo = config_echo(&[
                ("command", "dirichlet".into()),
                ("source", source_echo),
                ("k", k.to_string()),
                ("tol", tol.to_string()),
            ]);
            let mut rep = Report::new(Meta::new(echo, report::tet_hash(&tet)));
            rep.spectra = Some(SpectraBlock {
                surface: Vec::new(),
                dirichlet: spec.eigenvalues.clone(),
                residuals: spec.residuals.clone(),
            });
            rep.to_json()?
        }
    };
    write_output(&text, out.as_deref())
}

/// All applicable checks for a surface (optionally paired with a solid).
fn cmd_check(args: CheckArgs, overlay: &Overlay) -> Result<(), CliError> {
    let k = overlay.merge(args.k, "k", 1)?;
    let tol = overlay.merge(args.tol, "tol", 1e-8)?;
    let c_candidate = overlay.merge_opt(args.c_candidate, "C")?;
    let gap_threshold = overlay.merge(
        args.gap_threshold,
        "gap-threshold",
        DEFAULT_EQUALITY_GAP_THRESHOLD,
    )?;
    let format = overlay.merge(args.format, "format", OutputFormat::Json)?;
    let out = overlay.merge_opt(args.out.clone(), "out")?;
    if k < 1 {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }
    if format == OutputFormat::Csv {
        return Err(CliError::Usage("check emits JSON reports only".into()));
    }

    let (mesh, source_echo) = resolve_source(&args.source, overlay)?;
    let MeshKind::Surface(surface) = mesh else {
        return Err(CliError::Usage("check needs a surface mesh source".into()));
    };
    let solid = resolve_solid(&args, overlay)?;

    let request = eigen_request(tol, 400, args.verbose);
    let surf_spec = spectra::surface_spectrum_with(&surface, k, &request)?;
    let summary = surf_spec.summary.clone();
    let lambda1 = surf_spec.eigenvalues[0];

    let mut checks = Vec::new();
    let mut skipped = Vec::new();
    let mut ratio = Vec::new();

    checks.push(inequality::check_reilly(
        summary.area,
        lambda1,
        summary.volume,
        2,
    ));
    let yy = inequality::check_yang_yau(lambda1, summary.area, summary.genus);
    checks.push(yy.bound);
    checks.push(yy.floor_bound);
    checks.push(inequality::check_isoperimetric(
        summary.area,
        summary.volume,
    ));
    {
        let centered = surface.center_at_area_centroid();
        let s = fem::assemble_surface_stiffness(&centered);
        let m = fem::assemble_surface_mass(&centered, fem::MassKind::Lumped);
        checks.push(inequality::check_rayleigh_trace(&centered, &s, &m)?);
    }

    // Korevaar envelope over the available surface eigenvalues.
    let c_emp = surf_spec
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(i, &l)| inequality::korevaar_estimate(l, i + 1, summary.area, summary.genus))
        .fold(f64::NEG_INFINITY, f64::max);
    let korevaar = KorevaarBlock {
        c_emp_max: c_emp,
        per_fixture: vec![KorevaarEntry {
            fixture: source_echo.clone(),
            c_emp,
        }],
        k0_at_c_emp_max: inequality::k_g(c_emp, 0),
        k_g_at_candidate: c_candidate.map(|c| inequality::k_g(c, summary.genus)),
    };

    let mut spectra_block = SpectraBlock {
        surface: surf_spec.eigenvalues.clone(),
        dirichlet: Vec::new(),
        residuals: surf_spec.residuals.clone(),
    };

    match &solid {
        Some((tet, _)) => {
            let vol_spec = spectra::dirichlet_spectrum_with(tet, k, &request)?;
            let lambda1d = vol_spec.eigenvalues[0];
            let lambda_kd = vol_spec.eigenvalues[k - 1];
            checks.push(inequality::check_faber_krahn(lambda1d, vol_spec.volume));
            checks.push(inequality::check_li_yau_pointwise(
                lambda_kd,
                k,
                vol_spec.volume,
                3,
            ));
            checks.push(inequality::check_li_yau_average(
                &vol_spec.eigenvalues[..k],
                vol_spec.volume,
                3,
            )?);
            checks.push(inequality::check_polya_dirichlet(
                lambda_kd,
                k,
                vol_spec.volume,
                3,
            ));
            if summary.genus == 0 {
                checks.push(inequality::check_genus0_optimal(
                    lambda1d,
                    lambda1,
                    summary.genus,
                )?);
            } else {
                skipped.push(SkippedCheck {
                    name: "genus0_optimal".to_string(),
                    reason: format!("genus-0 check not applicable at genus {}", summary.genus),
                });
            }
            for j in 1..=k {
                ratio.push(inequality::main_ratio(&surf_spec, &vol_spec, j)?);
            }
            if let Some(c) = c_candidate {
                checks.extend(inequality::proof_chain(&surf_spec, &vol_spec, k, c)?);
            }
            spectra_block.dirichlet = vol_spec.eigenvalues.clone();
            spectra_block.residuals.extend(vol_spec.residuals.iter());
        }
        None => {
            for name in [
                "faber_krahn",
                "li_yau_pointwise",
                "li_yau_average",
                "polya_dirichlet",
                "genus0_optimal",
                "main_ratio",
                "proof_chain",
            ] {
                skipped.push(SkippedCheck {
                    name: name.to_string(),
                    reason: "no solid provided".to_string(),
                });
            }
        }
    }

    for check in &mut checks {
        check.near_equality = Some(check.is_near_equality(gap_threshold));
    }

    let mut hash = report::surface_hash(&surface);
    if let Some((tet, _)) = &solid {
        hash = format!("{hash}:{}", report::tet_hash(tet));
    }
    let echo = config_echo(&[
        ("command", "check".into()),
        ("source", source_echo),
        (
            "solid",
            solid
                .as_ref()
                .map(|(_, echo)| echo.clone())
                .unwrap_or_else(|| "none".into()),
        ),
        ("k", k.to_string()),
        ("tol", tol.to_string()),
        (
            "C",
            c_candidate
                .map(|c| c.to_string())
                .unwrap_or_else(|| "none".into()),
        ),
        ("gap_threshold", gap_threshold.to_string()),
    ]);
    let mut rep = Report::new(Meta::new(echo, hash));
    rep.geometry = Some(summary);
    rep.spectra = Some(spectra_block);
    rep.checks = checks;
    rep.ratio = ratio;
    rep.korevaar = Some(korevaar);
    rep.skipped = skipped;
    write_output(&rep.to_json()?, out.as_deref())
}

fn resolve_solid(
    args: &CheckArgs,
    overlay: &Overlay,
) -> Result<Option<(TetMesh, String)>, CliError> {
    let solid_path = match &args.solid {
        Some(p) => Some(p.clone()),
        None => overlay.get::<PathBuf>("solid")?,
    };
    let solid_shape = match &args.solid_shape {
        Some(s) => Some(s.clone()),
        None => overlay.get::<String>("solid-shape")?,
    };
    match (solid_path, solid_shape) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "give at most one solid source: --solid or --solid-shape".into(),
        )),
        (Some(path), None) => {
            let (node, ele) = tet_pair(&path);
            Ok(Some((
                mesh_io::load_tet(node, ele)?,
                path.display().to_string(),
            )))
        }
        (None, Some(shape)) => {
            let radius = overlay.merge(args.source.radius, "radius", 1.0)?;
            let edge = overlay.merge(args.source.edge, "edge", 1.0)?;
            let major = overlay.merge(args.source.major, "major", 2.0)?;
            let minor = overlay.merge(args.source.minor, "minor", 1.0)?;
            let refine = overlay.merge(args.solid_refine, "solid-refine", 3)?;
            let n = overlay.merge(args.solid_n, "solid-n", 8)?;
            let nu = overlay.merge(args.solid_nu, "solid-nu", 24)?;
            let nr = overlay.merge(args.solid_nr, "solid-nr", 4)?;
            let nv = overlay.merge(args.solid_nv, "solid-nv", 12)?;
            let tet = match shape.as_str() {
                "ball-tet" => generators::ball_tet(radius, refine)?,
                "cube-tet" => generators::cube_tet(edge, n)?,
                "solid-torus-tet" => generators::solid_torus_tet(major, minor, nu, nr, nv)?,
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown solid shape {other:?}; expected ball-tet | cube-tet | \
                         solid-torus-tet"
                    )))
                }
            };
            Ok(Some((tet, shape)))
        }
        (None, None) => Ok(None),
    }
}

/// A named sweep fixture: surface plus optional companion solid.
struct Fixture {
    name: String,
    surface: SurfaceMesh,
    solid: Option<TetMesh>,
}

fn build_fixture(spec: &str) -> Result<Fixture, CliError> {
    let spec = spec.trim();
    if let Some(subdiv) = spec.strip_prefix("sphere:") {
        let subdiv: u32 = subdiv
            .parse()
            .map_err(|_| CliError::Usage(format!("bad sphere fixture {spec:?}")))?;
        let refine = (subdiv as usize).clamp(1, 6);
        return Ok(Fixture {
            name: spec.to_string(),
            surface: generators::icosphere(1.0, subdiv)?,
            solid: Some(generators::ball_tet(1.0, refine)?),
        });
    }
    match spec {
        "cube" => Ok(Fixture {
            name: spec.to_string(),
            surface: generators::cube_surface(1.0, 12)?,
            solid: Some(generators::cube_tet(1.0, 12)?),
        }),
        "torus" => Ok(Fixture {
            name: spec.to_string(),
            surface: generators::torus(2.0, 1.0, 48, 24)?,
            solid: Some(generators::solid_torus_tet(2.0, 1.0, 24, 6, 18)?),
        }),
        "ball" => {
            let ball = generators::ball_tet(1.0, 4)?;
            Ok(Fixture {
                name: spec.to_string(),
                surface: ball.boundary_surface()?,
                solid: Some(ball),
            })
        }
        other => Err(CliError::Usage(format!(
            "unknown fixture {other:?}; expected sphere:<subdiv> | cube | torus | ball"
        ))),
    }
}

pub const DEFAULT_SWEEP_FIXTURES: &str = "sphere:3,sphere:4,sphere:5,cube,torus,ball";

fn cmd_sweep(args: SweepArgs, overlay: &Overlay) -> Result<(), CliError> {
    let k = overlay.merge(args.k, "k", 1)?;
    let tol = overlay.merge(args.tol, "tol", 1e-8)?;
    let c_candidate = overlay.merge_opt(args.c_candidate, "C")?;
    let out = overlay.merge_opt(args.out, "out")?;
    let fixtures_spec = overlay.merge(
        args.fixtures,
        "fixtures",
        DEFAULT_SWEEP_FIXTURES.to_string(),
    )?;
    let format = match overlay.merge_opt(args.format, "format")? {
        Some(f) => f,
        None => match out
            .as_deref()
            .and_then(|p| p.extension())
            .and_then(|e| e.to_str())
        {
            Some("json") => OutputFormat::Json,
            _ => OutputFormat::Csv,
        },
    };
    if k < 1 {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }
    let names: Vec<&str> = fixtures_spec
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if names.is_empty() {
        return Err(CliError::Usage(
            "sweep requires a non-empty fixture list".into(),
        ));
    }

    let request = eigen_request(tol, 400, args.verbose);
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    let mut c_emp_max = f64::NEG_INFINITY;
    for name in &names {
        let fixture = build_fixture(name)?;
        let (row, c_emp) = sweep_row(&fixture, k, &request)?;
        c_emp_max = c_emp_max.max(c_emp);
        entries.push(KorevaarEntry {
            fixture: fixture.name.clone(),
            c_emp,
        });
        rows.push(row);
    }

    let text = match format {
        OutputFormat::Csv => report::sweep_csv(&rows),
        OutputFormat::Json => {
            let echo = config_echo(&[
                ("command", "sweep".into()),
                ("fixtures", fixtures_spec.clone()),
                ("k", k.to_string()),
                ("tol", tol.to_string()),
                (
                    "C",
                    c_candidate
                        .map(|c| c.to_string())
                        .unwrap_or_else(|| "none".into()),
                ),
            ]);
            let hash = format!("{:016x}", {
                let mut h = 0xcbf2_9ce4_8422_2325u64;
                for b in fixtures_spec.bytes() {
                    h ^= b as u64;
                    h = h.wrapping_mul(0x0000_0100_0000_01b3);
                }
                h
            });
            let mut rep = Report::new(Meta::new(echo, hash));
            rep.korevaar = Some(KorevaarBlock {
                c_emp_max,
                per_fixture: entries,
                k0_at_c_emp_max: inequality::k_g(c_emp_max, 0),
                k_g_at_candidate: c_candidate.map(|c| inequality::k_g(c, 0)),
            });
            rep.sweep = Some(rows);
            rep.to_json()?
        }
    };
    write_output(&text, out.as_deref())
}

fn sweep_row(
    fixture: &Fixture,
    k: usize,
    request: &EigenRequest,
) -> Result<(SweepRow, f64), CliError> {
    let surf_spec = spectra::surface_spectrum_with(&fixture.surface, k, request)?;
    let summary = &surf_spec.summary;
    let lambda1 = surf_spec.eigenvalues[0];
    let lambda_k = surf_spec.eigenvalues[k - 1];

    let c_emp = surf_spec
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(i, &l)| inequality::korevaar_estimate(l, i + 1, summary.area, summary.genus))
        .fold(f64::NEG_INFINITY, f64::max);

    let reilly = inequality::check_reilly(summary.area, lambda1, summary.volume, 2);
    let yang_yau = inequality::check_yang_yau(lambda1, summary.area, summary.genus);
    let isop = inequality::check_isoperimetric(summary.area, summary.volume);

    let mut row = SweepRow {
        fixture: fixture.name.clone(),
        genus: summary.genus,
        k,
        lambda_k_surface: lambda_k,
        lambda_k_dirichlet: None,
        ratio: None,
        c_emp,
        margin_reilly: reilly.margin,
        margin_yang_yau: yang_yau.bound.margin,
        margin_isoperimetric: isop.margin,
        margin_faber_krahn: None,
        margin_li_yau: None,
    };
    if let Some(tet) = &fixture.solid {
        let vol_spec = spectra::dirichlet_spectrum_with(tet, k, request)?;
        let lambda_kd = vol_spec.eigenvalues[k - 1];
        row.lambda_k_dirichlet = Some(lambda_kd);
        row.ratio = Some(inequality::main_ratio(&surf_spec, &vol_spec, k)?.ratio);
        row.margin_faber_krahn =
            Some(inequality::check_faber_krahn(vol_spec.eigenvalues[0], vol_spec.volume).margin);
        row.margin_li_yau =
            Some(inequality::check_li_yau_pointwise(lambda_kd, k, vol_spec.volume, 3).margin);
    }
    Ok((row, c_emp))
}

/// Library entry for the sweep used by tests and examples: the default
/// fixture table at the given k.
pub fn default_sweep_rows(
    k: usize,
    request: &EigenRequest,
) -> Result<(Vec<SweepRow>, f64), CliError> {
    let mut rows = Vec::new();
    let mut c_emp_max = f64::NEG_INFINITY;
    for name in DEFAULT_SWEEP_FIXTURES.split(',') {
        let fixture = build_fixture(name)?;
        let (row, c_emp) = sweep_row(&fixture, k, request)?;
        c_emp_max = c_emp_max.max(c_emp);
        rows.push(row);
    }
    Ok((rows, c_emp_max))
}
