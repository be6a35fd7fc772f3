//! Dirichlet spectrum of the unit ball against the spherical-Bessel-root
//! oracle, plus the Weyl trend of the analytic cube spectrum.
//!
//!     cargo run --release --example ball_dirichlet

use specgeo::mesh::generators;
use specgeo::spectra::{
    ball_dirichlet_reference, cube_dirichlet_reference, dirichlet_spectrum, weyl_trend,
};

fn main() {
    let refinement = 5;
    let k = 5;
    let ball = generators::ball_tet(1.0, refinement).unwrap();
    println!(
        "ball_tet(1, {refinement}): {} vertices, {} tets, volume {:.6} (4 pi/3 = {:.6})",
        ball.vertex_count(),
        ball.tet_count(),
        ball.volume(),
        4.0 * std::f64::consts::PI / 3.0
    );

    let spec = dirichlet_spectrum(&ball, k).unwrap();
    let reference = ball_dirichlet_reference(1.0, k);
    println!(
        "{:>3} {:>14} {:>12} {:>10}",
        "k", "computed", "Bessel", "rel err"
    );
    for (i, (lambda, exact)) in spec.eigenvalues.iter().zip(&reference).enumerate() {
        println!(
            "{:>3} {:>14.8} {:>12.8} {:>10.2e}",
            i + 1,
            lambda,
            exact,
            (lambda - exact) / exact
        );
    }
    println!(
        "(lambda_1^D of the unit ball is pi^2 = {:.8})\n",
        std::f64::consts::PI.powi(2)
    );

    // Weyl growth on the exact cube spectrum: lambda_k ~ C_3 (k/vol)^{2/3}.
    let eigs = cube_dirichlet_reference(1.0, 1000);
    let trend = weyl_trend(&eigs, 1.0, 3);
    println!("cube Weyl trend lambda_k / (C_3 (k/vol)^(2/3)):");
    for k in [1usize, 10, 100, 1000] {
        println!("  k = {k:>4}: {:.4}", trend[k - 1]);
    }
}
