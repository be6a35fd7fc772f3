//! Every inequality check on the sphere/ball pair: Reilly, Yang-Yau,
//! isoperimetric, Faber-Krahn, Berezin-Li-Yau, Polya, the Rayleigh-trace
//! chain, the genus-0 optimal ratio bound, and the three-factor proof
//! chain at the candidate C = 8 pi.
//!
//!     cargo run --release --example inequality_report

use std::f64::consts::PI;

use specgeo::fem::{assemble_surface_mass, assemble_surface_stiffness, MassKind};
use specgeo::inequality::*;
use specgeo::mesh::generators;
use specgeo::spectra::{dirichlet_spectrum, surface_spectrum};

fn show(report: &InequalityReport) {
    println!(
        "  {:<26} lhs={:>12.6} rhs={:>12.6} margin={:>+12.6} gap={:>9.2e} {}{}",
        report.name,
        report.lhs,
        report.rhs,
        report.margin,
        report.equality_gap,
        if report.satisfied_within(DISCRETIZATION_TOL) {
            "ok"
        } else {
            "VIOLATED"
        },
        if report.conjectural {
            " (conjectural)"
        } else {
            ""
        },
    );
}

fn main() {
    let sphere = generators::icosphere(1.0, 4).unwrap();
    let ball = generators::ball_tet(1.0, 5).unwrap();
    let surf = surface_spectrum(&sphere, 4).unwrap();
    let vol = dirichlet_spectrum(&ball, 4).unwrap();
    let summary = &surf.summary;
    let lambda1 = surf.eigenvalues[0];

    println!(
        "sphere/ball pair: area={:.6} volume={:.6} lambda_1={:.8} lambda_1^D={:.6}\n",
        summary.area, summary.volume, lambda1, vol.eigenvalues[0]
    );

    println!("surface checks:");
    show(&check_reilly(summary.area, lambda1, summary.volume, 2));
    let yy = check_yang_yau(lambda1, summary.area, summary.genus);
    show(&yy.bound);
    show(&yy.floor_bound);
    show(&check_isoperimetric(summary.area, summary.volume));
    {
        let centered = sphere.center_at_area_centroid();
        let s = assemble_surface_stiffness(&centered);
        let m = assemble_surface_mass(&centered, MassKind::Lumped);
        show(&check_rayleigh_trace(&centered, &s, &m).unwrap());
    }

    println!("solid checks:");
    show(&check_faber_krahn(vol.eigenvalues[0], vol.volume));
    show(&check_li_yau_pointwise(
        vol.eigenvalues[3],
        4,
        vol.volume,
        3,
    ));
    show(&check_li_yau_average(&vol.eigenvalues, vol.volume, 3).unwrap());
    show(&check_polya_dirichlet(vol.eigenvalues[3], 4, vol.volume, 3));
    show(&check_genus0_optimal(vol.eigenvalues[0], lambda1, 0).unwrap());

    let ratio = main_ratio(&surf, &vol, 1).unwrap();
    println!(
        "\nmain ratio R_1 = {:.6} (sphere/ball optimum pi^3/(2 sqrt 2) = {:.6})",
        ratio.ratio,
        PI.powi(3) / (2.0 * 2.0f64.sqrt())
    );

    let c = 8.0 * PI;
    let c_emp = korevaar_estimate(lambda1, 1, summary.area, 0);
    println!(
        "C_emp = {:.6} (the sphere forces any universal C up to 8 pi = {:.6})",
        c_emp, c
    );
    println!("K_0({c:.4}) = {:.6}\n", k_g(c, 0));

    println!("proof chain at C = 8 pi:");
    for report in proof_chain(&surf, &vol, 1, c).unwrap() {
        show(&report);
    }
}
