//! Spectral geometry of closed embedded surfaces and the solids they bound.
//!
//! The crate computes Laplace-Beltrami spectra of closed oriented triangle
//! meshes, Dirichlet spectra of tetrahedral meshes, and evaluates the chain of
//! classical spectral inequalities (Reilly, Berezin-Li-Yau, Yang-Yau,
//! Korevaar, Faber-Krahn, isoperimetric) that relate the two spectra through
//! the eigenvalue ratio `lambda_k^D(Omega)^{3/2} / (lambda_k(Sigma) sqrt(lambda_1(Sigma)))`
//! and its genus-dependent lower bound.
//!
//! Entry points:
//! - [`mesh`]: mesh types, generators, and OFF/OBJ/node-ele file IO.
//! - [`fem`]: cotangent and P1 stiffness/mass assembly, Dirichlet reduction.
//! - [`eigen`]: shift-invert Lanczos for the sparse symmetric pencil.
//! - [`spectra`]: surface/Dirichlet spectra plus analytic reference oracles.
//! - [`inequality`]: inequality reports, ratio bounds, and constants.
//! - [`cli`]: the `specgeo` command-line driver (gen/spectrum/dirichlet/check/sweep).
//!
//! The `examples/` directory holds one runnable example per major capability.

pub mod cli;
pub mod eigen;
pub mod fem;
pub mod inequality;
pub mod mesh;
pub mod report;
pub mod spectra;
