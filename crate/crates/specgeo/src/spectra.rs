//! High-level spectrum computations with the paper-style index convention
//! (lambda_1 is the first nonzero eigenvalue on closed surfaces; Dirichlet
//! spectra start at lambda_1^D), plus analytic reference spectra for the
//! sphere, ball, and cube.

use serde::Serialize;
use thiserror::Error;

use crate::eigen::{self, EigenError, EigenRequest};
use crate::fem::{self, FemError, MassKind};
use crate::inequality::Constants;
use crate::mesh::{GeometrySummary, MeshError, SurfaceMesh, TetMesh};

#[derive(Debug, Error)]
pub enum SpectraError {
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Fem(#[from] FemError),
    #[error(transparent)]
    Eigen(#[from] EigenError),
}

/// Laplace-Beltrami spectrum of a closed surface: the single zero mode is
/// stripped, `eigenvalues[0]` is lambda_1.
#[derive(Debug, Clone, Serialize)]
pub struct SurfaceSpectrum {
    pub summary: GeometrySummary,
    /// lambda_1 <= lambda_2 <= ... (nonzero, ascending).
    pub eigenvalues: Vec<f64>,
    /// Pencil residuals matching `eigenvalues`.
    pub residuals: Vec<f64>,
    pub zero_mode_count: usize,
}

impl SurfaceSpectrum {
    /// Wrap externally known values (analytic inputs for the equality
    /// cases); residuals are zero by convention.
    pub fn from_values(summary: GeometrySummary, eigenvalues: Vec<f64>) -> Self {
        let residuals = vec![0.0; eigenvalues.len()];
        Self {
            summary,
            eigenvalues,
            residuals,
            zero_mode_count: 1,
        }
    }

    /// lambda_k in the 1-based convention.
    pub fn lambda(&self, k: usize) -> Option<f64> {
        if k == 0 {
            None
        } else {
            self.eigenvalues.get(k - 1).copied()
        }
    }
}

/// Dirichlet spectrum of a tet mesh; indexing starts at lambda_1^D.
#[derive(Debug, Clone, Serialize)]
pub struct VolumeSpectrum {
    pub volume: f64,
    pub boundary_area: f64,
    /// lambda_1^D <= lambda_2^D <= ... (all positive).
    pub eigenvalues: Vec<f64>,
    pub residuals: Vec<f64>,
}

impl VolumeSpectrum {
    pub fn from_values(volume: f64, boundary_area: f64, eigenvalues: Vec<f64>) -> Self {
        let residuals = vec![0.0; eigenvalues.len()];
        Self {
            volume,
            boundary_area,
            eigenvalues,
            residuals,
        }
    }

    pub fn lambda(&self, k: usize) -> Option<f64> {
        if k == 0 {
            None
        } else {
            self.eigenvalues.get(k - 1).copied()
        }
    }
}

/// First k nonzero Laplace-Beltrami eigenvalues of `mesh`.
///
/// Assembles the cotangent pencil with lumped mass, solves k + 1 pairs at
/// a small negative shift, checks that exactly one zero mode exists, and
/// strips it.
pub fn surface_spectrum(mesh: &SurfaceMesh, k: usize) -> Result<SurfaceSpectrum, SpectraError> {
    surface_spectrum_with(mesh, k, &EigenRequest::default())
}

/// As [`surface_spectrum`] with explicit solver parameters. `count` is
/// overridden with k + 1; a zero shift is replaced by the standard small
/// negative shift for the singular closed-surface stiffness.
pub fn surface_spectrum_with(
    mesh: &SurfaceMesh,
    k: usize,
    request: &EigenRequest,
) -> Result<SurfaceSpectrum, SpectraError> {
    surface_spectrum_with_mass(mesh, k, request, MassKind::Lumped)
}

/// Surface spectrum with an explicit mass discretization. The consistent
/// mass is the one to use for convergence studies: it restores the plain
/// O(h^2) eigenvalue error from above, where the lumped mass is
/// superconvergent from below on vertex-on-sphere meshes.
pub fn surface_spectrum_with_mass(
    mesh: &SurfaceMesh,
    k: usize,
    request: &EigenRequest,
    mass_kind: MassKind,
) -> Result<SurfaceSpectrum, SpectraError> {
    let summary = mesh.summary()?;
    let stiffness = fem::assemble_surface_stiffness(mesh);
    let mass = fem::assemble_surface_mass(mesh, mass_kind);
    let mut request = request.clone();
    request.count = k + 1;
    if request.shift == 0.0 {
        request.shift = -1e-3 * stiffness.trace() / stiffness.dim() as f64;
    }
    let result = eigen::solve_generalized(&stiffness, &mass, &request)?;

    let scale = result
        .eigenvalues
        .last()
        .copied()
        .unwrap_or(1.0)
        .max(f64::MIN_POSITIVE);
    let split = eigen::classify_zero_modes(&result, scale);
    split.require(1)?;

    let mut eigenvalues = Vec::with_capacity(k);
    let mut residuals = Vec::with_capacity(k);
    for (lambda, res) in result.eigenvalues.iter().zip(&result.residuals) {
        if lambda.abs() > split.threshold {
            eigenvalues.push(*lambda);
            residuals.push(*res);
        }
    }
    Ok(SurfaceSpectrum {
        summary,
        eigenvalues,
        residuals,
        zero_mode_count: split.zero_count,
    })
}

/// First k Dirichlet eigenvalues of the solid `tet`.
pub fn dirichlet_spectrum(tet: &TetMesh, k: usize) -> Result<VolumeSpectrum, SpectraError> {
    dirichlet_spectrum_with(tet, k, &EigenRequest::default())
}

pub fn dirichlet_spectrum_with(
    tet: &TetMesh,
    k: usize,
    request: &EigenRequest,
) -> Result<VolumeSpectrum, SpectraError> {
    let stiffness = fem::assemble_tet_stiffness(tet);
    let mass = fem::assemble_tet_mass(tet, MassKind::Lumped);
    let reduced = fem::apply_dirichlet(&stiffness, &mass, tet.boundary_vertices())?;
    let mut request = request.clone();
    request.count = k;
    let result = eigen::solve_generalized(&reduced.stiffness, &reduced.mass, &request)?;

    let scale = result
        .eigenvalues
        .last()
        .copied()
        .unwrap_or(1.0)
        .max(f64::MIN_POSITIVE);
    eigen::classify_zero_modes(&result, scale).require(0)?;

    Ok(VolumeSpectrum {
        volume: tet.volume(),
        boundary_area: tet.boundary_surface()?.area(),
        eigenvalues: result.eigenvalues,
        residuals: result.residuals,
    })
}

/// Analytic sphere spectrum: l(l+1)/r^2 with multiplicity 2l + 1, nonzero
/// part only, truncated to `count`.
pub fn sphere_reference(radius: f64, count: usize) -> Vec<f64> {
    let mut values = Vec::with_capacity(count);
    let mut l = 1u64;
    while values.len() < count {
        let lambda = (l * (l + 1)) as f64 / (radius * radius);
        for _ in 0..(2 * l + 1) {
            values.push(lambda);
            if values.len() == count {
                break;
            }
        }
        l += 1;
    }
    values
}

/// Analytic Dirichlet ball spectrum: squared positive roots of the
/// spherical Bessel functions j_l divided by r^2, multiplicity 2l + 1.
///
/// Roots are bracketed in ((m-1) pi + l pi/2, m pi + l pi/2), scanned for
/// sign changes, and bisected to 1e-12. Every root below the count-th j_0
/// root (= count * pi) is enumerated before truncation, so no eigenvalue
/// is missed by multiplicity.
pub fn ball_dirichlet_reference(radius: f64, count: usize) -> Vec<f64> {
    let barrier = count as f64 * std::f64::consts::PI + 1e-9;
    let mut roots: Vec<(f64, u64)> = Vec::new();
    // l = 0: j_0 = sin(x)/x, roots are exactly m pi.
    for m in 1..=count {
        roots.push((m as f64 * std::f64::consts::PI, 1));
    }
    let mut l = 1u64;
    loop {
        let all = spherical_bessel_roots(l, barrier);
        if all.is_empty() {
            break;
        }
        let mult = 2 * l + 1;
        for r in all {
            roots.push((r, mult));
        }
        l += 1;
    }
    let mut values: Vec<f64> = roots
        .iter()
        .flat_map(|&(r, mult)| {
            let lambda = (r / radius) * (r / radius);
            std::iter::repeat_n(lambda, mult as usize)
        })
        .collect();
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    values.truncate(count);
    values
}

/// Positive roots of j_l below `barrier`.
fn spherical_bessel_roots(l: u64, barrier: f64) -> Vec<f64> {
    let pi = std::f64::consts::PI;
    let mut roots = Vec::new();
    let mut m = 1usize;
    loop {
        let lo = (m as f64 - 1.0) * pi + l as f64 * pi / 2.0;
        let hi = m as f64 * pi + l as f64 * pi / 2.0;
        if lo > barrier {
            break;
        }
        // Scan the nominal bracket for sign changes; the first few roots
        // sit above the asymptotic positions, so a plain endpoint check
        // is not enough.
        const STEPS: usize = 64;
        let mut prev_x = lo.max(1e-9);
        let mut prev_f = spherical_bessel_j(l, prev_x);
        for s in 1..=STEPS {
            let x = lo + (hi - lo) * s as f64 / STEPS as f64;
            let f = spherical_bessel_j(l, x);
            if prev_f == 0.0 {
                roots.push(prev_x);
            } else if prev_f * f < 0.0 {
                roots.push(bisect_bessel(l, prev_x, x, prev_f));
            }
            prev_x = x;
            prev_f = f;
        }
        m += 1;
    }
    roots.retain(|&r| r <= barrier);
    roots
}

fn bisect_bessel(l: u64, mut lo: f64, mut hi: f64, f_lo: f64) -> f64 {
    let sign_lo = f_lo.signum();
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        let f = spherical_bessel_j(l, mid);
        if f == 0.0 {
            return mid;
        }
        if f.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// j_l(x) by upward recurrence from the closed forms of j_0 and j_1;
/// adequate in the root region x > l.
fn spherical_bessel_j(l: u64, x: f64) -> f64 {
    let j0 = x.sin() / x;
    if l == 0 {
        return j0;
    }
    let j1 = x.sin() / (x * x) - x.cos() / x;
    if l == 1 {
        return j1;
    }
    let mut prev = j0;
    let mut cur = j1;
    for k in 1..l {
        let next = (2 * k + 1) as f64 / x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Analytic Dirichlet cube spectrum: pi^2 (i^2 + j^2 + k^2) / edge^2 over
/// positive integer triples, enumerated exhaustively below a sufficient
/// index bound and truncated to `count`.
pub fn cube_dirichlet_reference(edge: f64, count: usize) -> Vec<f64> {
    // Octant lattice points with i^2+j^2+k^2 <= b number about
    // (pi/6) b^{3/2}; pad the bound and grow it if the estimate was shy.
    let mut bound = ((6.0 * count as f64 / std::f64::consts::PI).powf(2.0 / 3.0)).ceil() + 10.0;
    loop {
        let imax = bound.sqrt() as u64 + 1;
        let mut sums = Vec::new();
        for i in 1..=imax {
            for j in 1..=imax {
                for k in 1..=imax {
                    let s = i * i + j * j + k * k;
                    if (s as f64) <= bound {
                        sums.push(s);
                    }
                }
            }
        }
        if sums.len() >= count {
            sums.sort_unstable();
            let scale = std::f64::consts::PI.powi(2) / (edge * edge);
            return sums[..count].iter().map(|&s| s as f64 * scale).collect();
        }
        bound *= 1.5;
    }
}

/// Ratio of each eigenvalue to the Weyl asymptote
/// `C_dim (k / volume)^{2/dim}`.
pub fn weyl_trend(eigenvalues: &[f64], volume: f64, dim: u32) -> Vec<f64> {
    let constants = Constants::new(dim);
    eigenvalues
        .iter()
        .enumerate()
        .map(|(i, &lambda)| {
            let k = (i + 1) as f64;
            lambda / (constants.weyl * (k / volume).powf(2.0 / dim as f64))
        })
        .collect()
}
