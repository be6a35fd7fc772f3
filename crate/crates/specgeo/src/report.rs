//! Machine-readable reports: the JSON document emitted by `check` and
//! `sweep`, CSV tables for spectra and sweeps, and the mesh hash used for
//! provenance. All serialization is deterministic; the timestamp is
//! isolated to the single `meta.timestamp` key.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::inequality::{InequalityReport, RatioResult};
use crate::mesh::{GeometrySummary, SurfaceMesh, TetMesh};

#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub version: String,
    /// Seconds since the Unix epoch at report creation.
    pub timestamp: u64,
    pub config_echo: BTreeMap<String, String>,
    pub mesh_hash: String,
}

impl Meta {
    pub fn new(config_echo: BTreeMap<String, String>, mesh_hash: String) -> Self {
        let timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp,
            config_echo,
            mesh_hash,
        }
    }
}

/// Computed spectra: surface eigenvalues, Dirichlet eigenvalues, and the
/// concatenated residual list (surface first).
#[derive(Debug, Clone, Default, Serialize)]
pub struct SpectraBlock {
    pub surface: Vec<f64>,
    pub dirichlet: Vec<f64>,
    pub residuals: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SkippedCheck {
    pub name: String,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct KorevaarEntry {
    pub fixture: String,
    pub c_emp: f64,
}

/// The Korevaar envelope: the running maximum of C_emp over the fixtures
/// seen, which is a certified lower bound on the universal constant.
#[derive(Debug, Clone, Serialize)]
pub struct KorevaarBlock {
    pub c_emp_max: f64,
    pub per_fixture: Vec<KorevaarEntry>,
    /// K_0 evaluated at c_emp_max via the closed form.
    pub k0_at_c_emp_max: f64,
    /// K_g at a user-supplied candidate C, when one was given.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_g_at_candidate: Option<f64>,
}

/// One sweep table row; solid-dependent columns are absent for
/// surface-only fixtures.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub fixture: String,
    pub genus: u32,
    pub k: usize,
    pub lambda_k_surface: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_k_dirichlet: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    pub c_emp: f64,
    pub margin_reilly: f64,
    pub margin_yang_yau: f64,
    pub margin_isoperimetric: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin_faber_krahn: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin_li_yau: Option<f64>,
}

/// Top-level report document; sections are omitted when a command does
/// not produce them.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub meta: Meta,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geometry: Option<GeometrySummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectra: Option<SpectraBlock>,
    pub checks: Vec<InequalityReport>,
    pub ratio: Vec<RatioResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub korevaar: Option<KorevaarBlock>,
    pub skipped: Vec<SkippedCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Vec<SweepRow>>,
}

impl Report {
    pub fn new(meta: Meta) -> Self {
        Self {
            meta,
            geometry: None,
            spectra: None,
            checks: Vec::new(),
            ratio: Vec::new(),
            korevaar: None,
            skipped: Vec::new(),
            sweep: None,
        }
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }
}

/// FNV-1a over the canonical byte stream of the mesh (little-endian
/// vertex bits, then face indices).
fn fnv1a(bytes: impl Iterator<Item = u8>) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

pub fn surface_hash(mesh: &SurfaceMesh) -> String {
    let vertex_bytes = mesh
        .vertices()
        .iter()
        .flat_map(|p| [p.x, p.y, p.z])
        .flat_map(|v| v.to_bits().to_le_bytes());
    let face_bytes = mesh
        .faces()
        .iter()
        .flatten()
        .flat_map(|&i| (i as u64).to_le_bytes());
    format!("{:016x}", fnv1a(vertex_bytes.chain(face_bytes)))
}

pub fn tet_hash(mesh: &TetMesh) -> String {
    let vertex_bytes = mesh
        .vertices()
        .iter()
        .flat_map(|p| [p.x, p.y, p.z])
        .flat_map(|v| v.to_bits().to_le_bytes());
    let tet_bytes = mesh
        .tets()
        .iter()
        .flatten()
        .flat_map(|&i| (i as u64).to_le_bytes());
    format!("{:016x}", fnv1a(vertex_bytes.chain(tet_bytes)))
}

/// Spectrum CSV: a zero-mode note, a header, then
/// `index,eigenvalue,residual` rows in the 1-based index convention.
pub fn spectrum_csv(zero_modes: usize, eigenvalues: &[f64], residuals: &[f64]) -> String {
    let mut out = format!("# zero modes excluded: {zero_modes}\n");
    out.push_str("index,eigenvalue,residual\n");
    for (i, (l, r)) in eigenvalues.iter().zip(residuals).enumerate() {
        out.push_str(&format!("{},{:.12e},{:.3e}\n", i + 1, l, r));
    }
    out
}

/// Sweep CSV with a fixed column order; absent solid columns stay empty.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(
        "fixture,genus,k,lambda_k_surface,lambda_k_dirichlet,ratio,c_emp,\
         margin_reilly,margin_yang_yau,margin_isoperimetric,margin_faber_krahn,margin_li_yau\n",
    );
    let opt = |v: Option<f64>| v.map(|x| format!("{x:.12e}")).unwrap_or_default();
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{:.12e},{},{},{:.12e},{:.12e},{:.12e},{:.12e},{},{}\n",
            r.fixture,
            r.genus,
            r.k,
            r.lambda_k_surface,
            opt(r.lambda_k_dirichlet),
            opt(r.ratio),
            r.c_emp,
            r.margin_reilly,
            r.margin_yang_yau,
            r.margin_isoperimetric,
            opt(r.margin_faber_krahn),
            opt(r.margin_li_yau),
        ));
    }
    out
}
