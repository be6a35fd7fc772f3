//! Sparse symmetric generalized eigensolver: shift-invert Lanczos with
//! full reorthogonalization in the M-inner product.
//!
//! The pencil is S x = lambda M x with S symmetric positive semidefinite
//! and M symmetric positive definite. The operator (S - sigma M)^{-1} M is
//! factored once per shift; eigenvalues come back as sigma + 1/theta from
//! the projected tridiagonal problem. Residuals are always measured on the
//! original pencil.

use thiserror::Error;

use crate::fem::SparseSymmetricMatrix;

mod skyline;
mod tridiag;

pub use skyline::{rcm_ordering, FactorError, SkylineLdlt};
pub use tridiag::symmetric_tridiagonal_eigen;

/// Eigenvalues below `ZERO_MODE_REL * scale` classify as zero modes.
pub const ZERO_MODE_REL: f64 = 1e-6;

/// Absolute residual floor: a pair whose pencil residual norm is below
/// `ABS_RESIDUAL_REL * (max|S| + |lambda| max|M|) * ||x||` counts as
/// converged even when the relative residual quotient is all roundoff.
/// That is the situation for the zero mode of a closed surface, where
/// both `||S x||` and `|lambda| ||M x||` vanish together.
pub const ABS_RESIDUAL_REL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum EigenError {
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("factorization failed at shift {shift:.6e} after {attempts} attempts: {source}")]
    Factorization {
        shift: f64,
        attempts: usize,
        source: FactorError,
    },
    #[error(
        "expected {expected} zero mode(s) but found {found}: disconnected mesh or solver failure"
    )]
    UnexpectedZeroModes { expected: usize, found: usize },
}

/// Parameters of one generalized eigensolve.
#[derive(Debug, Clone)]
pub struct EigenRequest {
    /// Eigenpairs requested, counted from the bottom of the spectrum and
    /// including any zero modes.
    pub count: usize,
    /// Relative residual target on the original pencil.
    pub tolerance: f64,
    /// Spectral shift sigma; 0 for positive definite S, a small negative
    /// value for the singular closed-surface stiffness.
    pub shift: f64,
    pub max_iterations: usize,
    /// Emit an iteration trace to stderr.
    pub verbose: bool,
}

impl Default for EigenRequest {
    fn default() -> Self {
        Self {
            count: 10,
            tolerance: 1e-8,
            shift: 0.0,
            max_iterations: 400,
            verbose: false,
        }
    }
}

impl EigenRequest {
    pub fn with_count(count: usize) -> Self {
        Self {
            count,
            ..Self::default()
        }
    }
}

/// Solved eigenpairs, ascending, with residual certificates.
#[derive(Debug, Clone)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<f64>,
    /// M-orthonormal eigenvectors, one per eigenvalue.
    pub eigenvectors: Option<Vec<Vec<f64>>>,
    /// Per pair: ||S x - lambda M x|| / (||S x|| + |lambda| ||M x||).
    pub residuals: Vec<f64>,
    pub converged: Vec<bool>,
    pub iterations: usize,
}

impl SpectrumResult {
    pub fn all_converged(&self) -> bool {
        self.converged.iter().all(|&c| c)
    }
}

/// Partition of a spectrum into numerically-zero modes and the rest.
#[derive(Debug, Clone)]
pub struct ZeroModeSplit {
    pub zero_count: usize,
    pub nonzero: Vec<f64>,
    pub threshold: f64,
}

impl ZeroModeSplit {
    /// Error unless exactly `expected` zero modes were found. One zero mode
    /// is the signature of a closed connected surface; a Dirichlet problem
    /// must have none.
    pub fn require(&self, expected: usize) -> Result<(), EigenError> {
        if self.zero_count != expected {
            return Err(EigenError::UnexpectedZeroModes {
                expected,
                found: self.zero_count,
            });
        }
        Ok(())
    }
}

/// Split eigenvalues below `ZERO_MODE_REL * scale` from the rest.
pub fn classify_zero_modes(result: &SpectrumResult, scale: f64) -> ZeroModeSplit {
    let threshold = ZERO_MODE_REL * scale.abs();
    let zero_count = result
        .eigenvalues
        .iter()
        .filter(|l| l.abs() <= threshold)
        .count();
    let nonzero = result
        .eigenvalues
        .iter()
        .filter(|l| l.abs() > threshold)
        .copied()
        .collect();
    ZeroModeSplit {
        zero_count,
        nonzero,
        threshold,
    }
}

/// Solve for the `count` algebraically smallest eigenpairs of
/// S x = lambda M x.
pub fn solve_generalized(
    s: &SparseSymmetricMatrix,
    m: &SparseSymmetricMatrix,
    request: &EigenRequest,
) -> Result<SpectrumResult, EigenError> {
    let dim = s.dim();
    if m.dim() != dim {
        return Err(EigenError::InvalidRequest(format!(
            "pencil shapes differ: S is {dim}, M is {}",
            m.dim()
        )));
    }
    if request.count == 0 || request.count > dim {
        return Err(EigenError::InvalidRequest(format!(
            "count must be in 1..=dimension ({dim}), got {}",
            request.count
        )));
    }
    if !(request.tolerance > 0.0 && request.tolerance <= 1e-2) {
        return Err(EigenError::InvalidRequest(format!(
            "tolerance must lie in (0, 1e-2], got {}",
            request.tolerance
        )));
    }

    let (factor, shift) = factor_with_retries(s, m, request)?;
    let count = request.count;
    let max_steps = dim.min(request.max_iterations.max(count));
    let check_every = 8;

    // Lanczos basis in the M-inner product; mbasis caches M * v.
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut mbasis: Vec<Vec<f64>> = Vec::new();
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();

    let mut seed = 0x5eed_5eed_5eedu64;
    {
        let mut v = seeded_vector(dim, seed);
        let mut mv = m.mul_vec_alloc(&v);
        let nrm = dot(&mv, &v).max(0.0).sqrt();
        scale_in_place(&mut v, 1.0 / nrm);
        scale_in_place(&mut mv, 1.0 / nrm);
        basis.push(v);
        mbasis.push(mv);
    }

    let mut solution: Option<Vec<(f64, Vec<f64>)>> = None;
    let mut alpha_scale = 0.0f64;

    for step in 0..max_steps {
        // w = (S - sigma M)^{-1} M v_step, then the three-term recurrence.
        let mut w = factor.solve(&mbasis[step]);
        if step > 0 {
            axpy(&mut w, -betas[step - 1], &basis[step - 1]);
        }
        let alpha = dot(&mbasis[step], &w);
        axpy(&mut w, -alpha, &basis[step]);
        alphas.push(alpha);
        alpha_scale = alpha_scale.max(alpha.abs());

        // Full reorthogonalization, two passes.
        for _ in 0..2 {
            for (v, mv) in basis.iter().zip(&mbasis) {
                let c = dot(mv, &w);
                axpy(&mut w, -c, v);
            }
        }

        let mut mw = m.mul_vec_alloc(&w);
        let mut beta = dot(&mw, &w).max(0.0).sqrt();

        let last = step + 1 == max_steps;
        let breakdown = beta <= 1e-13 * alpha_scale.max(1.0);

        if basis.len() >= count && ((step + 1) % check_every == 0 || last || breakdown) {
            let pairs = ritz_pairs(&alphas, &betas, &basis, shift, count);
            let all_ok = pairs
                .iter()
                .all(|(lambda, x)| pencil_residual(s, m, *lambda, x).0 <= request.tolerance);
            if request.verbose {
                eprintln!(
                    "eigen: step {}, basis {}, wanted {}, converged = {all_ok}",
                    step + 1,
                    basis.len(),
                    count
                );
            }
            solution = Some(pairs);
            if all_ok {
                break;
            }
        }
        if last {
            break;
        }

        if breakdown {
            // Invariant subspace found; continue with a fresh direction
            // orthogonal to everything so far.
            let mut restarted = false;
            for _ in 0..3 {
                seed = seed.wrapping_add(0x1234_5678);
                let mut fresh = seeded_vector(dim, seed);
                for _ in 0..2 {
                    for (v, mv) in basis.iter().zip(&mbasis) {
                        let c = dot(mv, &fresh);
                        axpy(&mut fresh, -c, v);
                    }
                }
                let mfresh = m.mul_vec_alloc(&fresh);
                let nrm = dot(&mfresh, &fresh).max(0.0).sqrt();
                if nrm > 1e-10 {
                    w = fresh;
                    mw = mfresh;
                    beta = nrm;
                    restarted = true;
                    break;
                }
            }
            if !restarted {
                break;
            }
            scale_in_place(&mut w, 1.0 / beta);
            scale_in_place(&mut mw, 1.0 / beta);
            // The new direction is decoupled from the previous block.
            betas.push(0.0);
        } else {
            scale_in_place(&mut w, 1.0 / beta);
            scale_in_place(&mut mw, 1.0 / beta);
            betas.push(beta);
        }
        basis.push(w);
        mbasis.push(mw);
    }

    let iterations = alphas.len();
    let pairs = match solution {
        Some(p) => p,
        None => {
            // Fewer steps than requested pairs never happens (max_steps is
            // clamped below by count), but a final Ritz extraction keeps
            // this total.
            ritz_pairs(&alphas, &betas, &basis, shift, count.min(alphas.len()))
        }
    };

    // M-normalize the returned vectors and certify residuals on the pencil.
    let s_scale = s.max_abs();
    let m_scale = m.max_abs();
    let mut eigenvalues = Vec::with_capacity(pairs.len());
    let mut eigenvectors = Vec::with_capacity(pairs.len());
    let mut residuals = Vec::with_capacity(pairs.len());
    let mut converged = Vec::with_capacity(pairs.len());
    for (lambda, mut x) in pairs {
        let mx = m.mul_vec_alloc(&x);
        let nrm = dot(&mx, &x).max(0.0).sqrt();
        scale_in_place(&mut x, 1.0 / nrm);
        let (rel, abs_num, xnorm) = pencil_residual(s, m, lambda, &x);
        let abs_ok =
            abs_num <= ABS_RESIDUAL_REL * (s_scale + lambda.abs() * m_scale) * xnorm.max(1e-300);
        eigenvalues.push(lambda);
        eigenvectors.push(x);
        residuals.push(rel);
        converged.push(rel <= request.tolerance || abs_ok);
    }

    Ok(SpectrumResult {
        eigenvalues,
        eigenvectors: Some(eigenvectors),
        residuals,
        converged,
        iterations,
    })
}

/// Factor S - sigma M, retrying on shift collisions: a failed zero shift
/// falls back to -1e-3 * trace(S)/dim, further failures perturb the shift
/// by a factor (1 + 1e-3), up to three retries.
fn factor_with_retries(
    s: &SparseSymmetricMatrix,
    m: &SparseSymmetricMatrix,
    request: &EigenRequest,
) -> Result<(SkylineLdlt, f64), EigenError> {
    let mut shift = request.shift;
    let mut attempts = 0;
    let mut last_err = None;
    while attempts < 4 {
        attempts += 1;
        let shifted = if shift == 0.0 {
            s.clone()
        } else {
            s.add_scaled(m, -shift)
        };
        let perm = rcm_ordering(&shifted);
        match SkylineLdlt::factor(&shifted, perm) {
            Ok(f) => return Ok((f, shift)),
            Err(e) => {
                if request.verbose {
                    eprintln!("eigen: factorization at shift {shift:.6e} failed ({e}), retrying");
                }
                last_err = Some(e);
                if shift == 0.0 {
                    shift = -1e-3 * s.trace() / s.dim() as f64;
                    if shift == 0.0 {
                        shift = -1e-3;
                    }
                } else {
                    shift *= 1.0 + 1e-3;
                }
            }
        }
    }
    Err(EigenError::Factorization {
        shift,
        attempts,
        source: last_err.expect("at least one attempt"),
    })
}

/// The `count` smallest Ritz pairs of the pencil from the current Lanczos
/// projection, eigenvalues ascending.
fn ritz_pairs(
    alphas: &[f64],
    betas: &[f64],
    basis: &[Vec<f64>],
    shift: f64,
    count: usize,
) -> Vec<(f64, Vec<f64>)> {
    let dim = basis[0].len();
    let (thetas, yvecs) = symmetric_tridiagonal_eigen(alphas, betas);
    // Largest theta of the inverted operator <-> smallest pencil eigenvalue.
    let mut order: Vec<usize> = (0..thetas.len()).collect();
    order.sort_by(|&a, &b| thetas[b].partial_cmp(&thetas[a]).unwrap());
    let mut pairs: Vec<(f64, Vec<f64>)> = order[..count]
        .iter()
        .map(|&i| {
            let lambda = shift + 1.0 / thetas[i];
            let mut x = vec![0.0; dim];
            for (v, &coef) in basis.iter().zip(&yvecs[i]) {
                axpy(&mut x, coef, v);
            }
            (lambda, x)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    pairs
}

/// (relative residual, absolute residual norm, ||x||) on the original pencil.
fn pencil_residual(
    s: &SparseSymmetricMatrix,
    m: &SparseSymmetricMatrix,
    lambda: f64,
    x: &[f64],
) -> (f64, f64, f64) {
    let sx = s.mul_vec_alloc(x);
    let mx = m.mul_vec_alloc(x);
    let mut num = 0.0;
    for (a, b) in sx.iter().zip(&mx) {
        let d = a - lambda * b;
        num += d * d;
    }
    let num = num.sqrt();
    let denom = norm2(&sx) + lambda.abs() * norm2(&mx);
    let rel = if denom > 0.0 { num / denom } else { num };
    (rel, num, norm2(x))
}

/// Deterministic start vector from a splitmix64 stream.
fn seeded_vector(n: usize, seed: u64) -> Vec<f64> {
    let mut state = seed;
    (0..n)
        .map(|_| {
            state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
            z ^= z >> 31;
            (z >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        })
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

fn scale_in_place(x: &mut [f64], s: f64) {
    for xi in x {
        *xi *= s;
    }
}
