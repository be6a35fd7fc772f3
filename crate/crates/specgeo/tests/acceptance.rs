//! Acceptance suite: one test per shipped guarantee, each printing a
//! PASS line with the measured numbers (run with `-- --nocapture` to see
//! them). Tolerances are pinned in the assertions.

mod common;

use std::f64::consts::PI;
use std::time::Instant;

use nalgebra::{Point3, Rotation3, Vector3};
use specgeo::eigen::EigenRequest;
use specgeo::fem::{self, MassKind};
use specgeo::inequality::*;
use specgeo::mesh::{generators, io as mesh_io, SurfaceMesh};
use specgeo::spectra::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// The closed-surface fixtures exercised by the whole-suite criteria.
fn surface_suite() -> Vec<(&'static str, SurfaceMesh)> {
    vec![
        ("sphere", generators::icosphere(1.0, 4).unwrap()),
        ("cube", generators::cube_surface(1.0, 12).unwrap()),
        ("torus", generators::torus(2.0, 1.0, 48, 24).unwrap()),
        (
            "genus2",
            mesh_io::load_surface(
                common::fixture_path("genus2.off"),
                mesh_io::SurfaceFormat::Off,
            )
            .unwrap(),
        ),
        (
            "ball-boundary",
            generators::ball_tet(1.0, 3)
                .unwrap()
                .boundary_surface()
                .unwrap(),
        ),
    ]
}

#[test]
fn criterion_01_sphere_surface_spectrum() {
    let start = Instant::now();
    let mesh = generators::icosphere(1.0, 5).unwrap();
    let spec = surface_spectrum(&mesh, 12).unwrap();
    let elapsed = start.elapsed();

    let e = &spec.eigenvalues;
    for (i, lambda) in e[..3].iter().enumerate() {
        assert!(rel(*lambda, 2.0) < 0.01, "lambda_{} = {lambda}", i + 1);
    }
    for (i, lambda) in e[3..8].iter().enumerate() {
        assert!(rel(*lambda, 6.0) < 0.03, "lambda_{} = {lambda}", i + 4);
    }
    let spread1 = e[2] - e[0];
    let spread2 = e[7] - e[3];
    let spread3 = e[11] - e[8];
    let gap12 = e[3] - e[2];
    let gap23 = e[8] - e[7];
    assert!(
        gap12 > 10.0 * spread1.max(spread2),
        "gap12 {gap12} vs spreads {spread1} {spread2}"
    );
    assert!(
        gap23 > 10.0 * spread2.max(spread3),
        "gap23 {gap23} vs spreads {spread2} {spread3}"
    );
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "ACCEPTANCE 1 PASS sphere spectrum: cluster1 err {:.2e}, cluster2 err {:.2e}, \
         gaps {:.3}/{:.3}, {elapsed:.2?}",
        rel(e[0], 2.0),
        rel(e[3], 6.0),
        gap12,
        gap23
    );
}

#[test]
fn criterion_02_ball_dirichlet_spectrum() {
    let ball = generators::ball_tet(1.0, 6).unwrap();
    let spec = dirichlet_spectrum(&ball, 5).unwrap();
    let reference = ball_dirichlet_reference(1.0, 5);
    assert!(
        rel(spec.eigenvalues[0], PI * PI) < 0.03,
        "lambda_1^D = {}",
        spec.eigenvalues[0]
    );
    for (j, (got, want)) in spec.eigenvalues.iter().zip(&reference).enumerate().skip(1) {
        assert!(
            rel(*got, *want) < 0.05,
            "lambda_{}^D = {got} vs {want}",
            j + 1
        );
    }
    println!(
        "ACCEPTANCE 2 PASS ball Dirichlet: lambda_1 err {:.2e}, lambda_2..4 err {:.2e}",
        rel(spec.eigenvalues[0], PI * PI),
        rel(spec.eigenvalues[1], reference[1])
    );
}

#[test]
fn criterion_03_main_ratio_genus_zero() {
    let target = PI.powi(3) / (2.0 * 2.0f64.sqrt());

    // Exact on the analytic inputs (2, pi^2).
    let sphere = SurfaceSpectrum::from_values(
        specgeo::mesh::GeometrySummary {
            area: 4.0 * PI,
            volume: 4.0 * PI / 3.0,
            genus: 0,
            euler_characteristic: 2,
            area_centroid: [0.0; 3],
        },
        vec![2.0],
    );
    let ball = VolumeSpectrum::from_values(4.0 * PI / 3.0, 4.0 * PI, vec![PI * PI]);
    let analytic = main_ratio(&sphere, &ball, 1).unwrap();
    assert!(rel(analytic.ratio, target) < 1e-12, "{}", analytic.ratio);

    // Within 5% on computed spectra.
    let mesh = generators::icosphere(1.0, 4).unwrap();
    let solid = generators::ball_tet(1.0, 5).unwrap();
    let surf = surface_spectrum(&mesh, 1).unwrap();
    let vol = dirichlet_spectrum(&solid, 1).unwrap();
    let computed = main_ratio(&surf, &vol, 1).unwrap();
    assert!(rel(computed.ratio, target) < 0.05, "{}", computed.ratio);
    println!(
        "ACCEPTANCE 3 PASS main ratio: analytic {:.12} (err {:.1e}), computed {:.4} (err {:.2e})",
        analytic.ratio,
        rel(analytic.ratio, target),
        computed.ratio,
        rel(computed.ratio, target)
    );
}

#[test]
fn criterion_04_reilly_saturation_and_suite() {
    let mut sphere_gap = f64::NAN;
    for (name, mesh) in surface_suite() {
        let spec = surface_spectrum(&mesh, 1).unwrap();
        let report = check_reilly(
            spec.summary.area,
            spec.eigenvalues[0],
            spec.summary.volume,
            2,
        );
        assert!(
            report.satisfied_within(DISCRETIZATION_TOL),
            "{name}: margin {} rhs {}",
            report.margin,
            report.rhs
        );
        if name == "sphere" {
            sphere_gap = report.equality_gap;
            assert!(sphere_gap <= 0.02, "sphere gap {sphere_gap}");
        }
    }
    println!(
        "ACCEPTANCE 4 PASS Reilly: sphere gap {sphere_gap:.2e}, all fixtures within tolerance"
    );
}

#[test]
fn criterion_05_yang_yau() {
    let sphere = generators::icosphere(1.0, 4).unwrap();
    let spec = surface_spectrum(&sphere, 1).unwrap();
    let product = spec.eigenvalues[0] * spec.summary.area;
    assert!(rel(product, 8.0 * PI) < 0.02, "sphere product {product}");

    let torus = generators::torus(2.0, 1.0, 48, 24).unwrap();
    let tspec = surface_spectrum(&torus, 1).unwrap();
    let tproduct = tspec.eigenvalues[0] * tspec.summary.area;
    assert!(tproduct < 16.0 * PI, "torus product {tproduct}");
    let reports = check_yang_yau(tspec.eigenvalues[0], tspec.summary.area, 1);
    assert!(reports.bound.satisfied && reports.bound.margin > 0.0);
    println!(
        "ACCEPTANCE 5 PASS Yang-Yau: sphere product {product:.4} (8 pi = {:.4}), torus {tproduct:.4} < {:.4}",
        8.0 * PI,
        16.0 * PI
    );
}

#[test]
fn criterion_06_berezin_li_yau() {
    // Exact arithmetic on the closed-form cube spectrum, k <= 1000.
    let eigs = cube_dirichlet_reference(1.0, 1000);
    let mut sum = 0.0;
    for (i, &lambda) in eigs.iter().enumerate() {
        let k = i + 1;
        let pointwise = check_li_yau_pointwise(lambda, k, 1.0, 3);
        assert!(pointwise.satisfied, "pointwise violated at k = {k}");
        sum += lambda;
        // The averaged form via the running sum (avoids re-slicing).
        let c3 = Constants::new(3).weyl;
        let rhs = 3.0 / 5.0 * c3 * (k as f64).powf(2.0 / 3.0);
        assert!(
            sum / k as f64 >= rhs - 1e-9 * rhs,
            "average violated at k = {k}"
        );
    }
    let averaged = check_li_yau_average(&eigs, 1.0, 3).unwrap();
    assert!(averaged.satisfied);

    // Computed ball spectrum, k <= 5.
    let ball = generators::ball_tet(1.0, 4).unwrap();
    let spec = dirichlet_spectrum(&ball, 5).unwrap();
    for (i, &lambda) in spec.eigenvalues.iter().enumerate() {
        let report = check_li_yau_pointwise(lambda, i + 1, spec.volume, 3);
        assert!(report.satisfied, "ball pointwise violated at k = {}", i + 1);
    }
    let report = check_li_yau_average(&spec.eigenvalues, spec.volume, 3).unwrap();
    assert!(report.satisfied);
    println!("ACCEPTANCE 6 PASS Berezin-Li-Yau: cube k <= 1000 and computed ball k <= 5");
}

#[test]
fn criterion_07_coordinate_energy_identity() {
    let mut worst = 0.0f64;
    for (name, mesh) in surface_suite() {
        let s = fem::assemble_surface_stiffness(&mesh);
        let mut energy = 0.0;
        for k in 0..3 {
            let x: Vec<f64> = mesh.vertices().iter().map(|p| p[k]).collect();
            energy += s.quadratic_form(&x, &x);
        }
        let target = 2.0 * mesh.area();
        let err = rel(energy, target);
        assert!(
            err < 1e-9,
            "{name}: sum x^T S x = {energy} vs 2 area = {target}"
        );
        worst = worst.max(err);
    }
    println!("ACCEPTANCE 7 PASS coordinate energy identity: worst relative error {worst:.2e}");
}

#[test]
fn criterion_08_rayleigh_trace_chain() {
    let mut sphere_gap = f64::NAN;
    for (name, mesh) in surface_suite() {
        let centered = mesh.center_at_area_centroid();
        let s = fem::assemble_surface_stiffness(&centered);
        let m = fem::assemble_surface_mass(&centered, MassKind::Lumped);
        let report = check_rayleigh_trace(&centered, &s, &m).unwrap();
        assert!(
            report.satisfied_within(DISCRETIZATION_TOL),
            "{name}: margin {}",
            report.margin
        );
        if name == "sphere" {
            sphere_gap = report.equality_gap;
            assert!(sphere_gap <= 0.02, "sphere gap {sphere_gap}");
        }
    }
    println!("ACCEPTANCE 8 PASS Rayleigh trace: sphere gap {sphere_gap:.2e}, all fixtures hold");
}

#[test]
fn criterion_09_isoperimetric_and_faber_krahn() {
    // Sphere saturates the isoperimetric inequality to <= 1%.
    let sphere = generators::icosphere(1.0, 4).unwrap();
    let summary = sphere.summary().unwrap();
    let isop = check_isoperimetric(summary.area, summary.volume);
    assert!(isop.satisfied_within(DISCRETIZATION_TOL));
    assert!(
        isop.equality_gap <= 0.01,
        "sphere isop gap {}",
        isop.equality_gap
    );

    // Ball saturates Faber-Krahn to <= 3%.
    let ball = generators::ball_tet(1.0, 6).unwrap();
    let spec = dirichlet_spectrum(&ball, 1).unwrap();
    let fk = check_faber_krahn(spec.eigenvalues[0], spec.volume);
    assert!(
        fk.satisfied_within(DISCRETIZATION_TOL),
        "ball FK margin {}",
        fk.margin
    );
    assert!(fk.equality_gap <= 0.03, "ball FK gap {}", fk.equality_gap);

    // Strict satisfaction away from the ball.
    let cube = generators::cube_surface(1.0, 8).unwrap().summary().unwrap();
    let isop_cube = check_isoperimetric(cube.area, cube.volume);
    assert!(isop_cube.margin > 0.1);
    let cube_solid = generators::cube_tet(1.0, 10).unwrap();
    let cube_spec = dirichlet_spectrum(&cube_solid, 1).unwrap();
    let fk_cube = check_faber_krahn(cube_spec.eigenvalues[0], cube_spec.volume);
    assert!(fk_cube.margin > 1.0);

    let torus = generators::torus(2.0, 1.0, 32, 16)
        .unwrap()
        .summary()
        .unwrap();
    let isop_torus = check_isoperimetric(torus.area, torus.volume);
    assert!(isop_torus.margin > 1.0);
    let solid_torus = generators::solid_torus_tet(2.0, 1.0, 24, 4, 12).unwrap();
    let st_spec = dirichlet_spectrum(&solid_torus, 1).unwrap();
    let fk_torus = check_faber_krahn(st_spec.eigenvalues[0], st_spec.volume);
    assert!(fk_torus.margin > 1.0);

    println!(
        "ACCEPTANCE 9 PASS isoperimetric/Faber-Krahn: sphere gap {:.2e}, ball gap {:.2e}, \
         strict margins on cube and torus",
        isop.equality_gap, fk.equality_gap
    );
}

#[test]
fn criterion_10_korevaar_envelope() {
    // Suite: three sphere refinements, the cube pair, the torus pair.
    let mut c_emp_max = f64::NEG_INFINITY;
    let mut ratios: Vec<(String, u32, f64)> = Vec::new();

    let ball = generators::ball_tet(1.0, 4).unwrap();
    let ball_spec = dirichlet_spectrum(&ball, 1).unwrap();
    for subdiv in [3u32, 4, 5] {
        let mesh = generators::icosphere(1.0, subdiv).unwrap();
        let spec = surface_spectrum(&mesh, 1).unwrap();
        let c = korevaar_estimate(spec.eigenvalues[0], 1, spec.summary.area, 0);
        c_emp_max = c_emp_max.max(c);
        let r = main_ratio(&spec, &ball_spec, 1).unwrap();
        ratios.push((format!("sphere:{subdiv}"), 0, r.ratio));
    }
    {
        let surf = generators::cube_surface(1.0, 12).unwrap();
        let solid = generators::cube_tet(1.0, 12).unwrap();
        let spec = surface_spectrum(&surf, 1).unwrap();
        let vol = dirichlet_spectrum(&solid, 1).unwrap();
        c_emp_max = c_emp_max.max(korevaar_estimate(
            spec.eigenvalues[0],
            1,
            spec.summary.area,
            0,
        ));
        ratios.push(("cube".into(), 0, main_ratio(&spec, &vol, 1).unwrap().ratio));
    }
    {
        let surf = generators::torus(2.0, 1.0, 48, 24).unwrap();
        let solid = generators::solid_torus_tet(2.0, 1.0, 24, 6, 18).unwrap();
        let spec = surface_spectrum(&surf, 1).unwrap();
        let vol = dirichlet_spectrum(&solid, 1).unwrap();
        c_emp_max = c_emp_max.max(korevaar_estimate(
            spec.eigenvalues[0],
            1,
            spec.summary.area,
            1,
        ));
        ratios.push(("torus".into(), 1, main_ratio(&spec, &vol, 1).unwrap().ratio));
    }

    assert!(
        (8.0 * PI * 0.98..=8.0 * PI * 1.02).contains(&c_emp_max),
        "c_emp_max = {c_emp_max}"
    );
    let k0 = k_g(c_emp_max, 0);
    for (name, _genus, ratio) in &ratios {
        assert!(*ratio > k0, "{name}: R_1 = {ratio} vs K_0 = {k0}");
    }
    println!(
        "ACCEPTANCE 10 PASS Korevaar envelope: C_emp max {c_emp_max:.4} in [{:.4}, {:.4}], \
         K_0(C_emp) = {k0:.4}, min R_1 = {:.4}",
        8.0 * PI * 0.98,
        8.0 * PI * 1.02,
        ratios.iter().map(|r| r.2).fold(f64::INFINITY, f64::min)
    );
}

#[test]
fn criterion_11_convergence_order() {
    // Sphere lambda_1 with the consistent mass (the convergence-study
    // discretization): one subdivision halves h.
    let request = EigenRequest::default();
    let mut errors = Vec::new();
    for subdiv in [3u32, 4, 5] {
        let mesh = generators::icosphere(1.0, subdiv).unwrap();
        let spec = surface_spectrum_with_mass(&mesh, 1, &request, MassKind::Consistent).unwrap();
        errors.push((spec.eigenvalues[0] - 2.0).abs());
    }
    let sphere_ratios = [errors[0] / errors[1], errors[1] / errors[2]];
    for ratio in sphere_ratios {
        assert!((2.5..=6.0).contains(&ratio), "sphere error ratio {ratio}");
    }

    // The same consistent-mass sequence approaches 2 from above,
    // decreasing over successive subdivisions.
    let mut lambdas = Vec::new();
    for subdiv in [3u32, 4, 5] {
        let mesh = generators::icosphere(1.0, subdiv).unwrap();
        let spec = surface_spectrum_with_mass(&mesh, 1, &request, MassKind::Consistent).unwrap();
        lambdas.push(spec.eigenvalues[0]);
    }
    assert!(lambdas[0] > lambdas[1] && lambdas[1] > lambdas[2] && lambdas[2] > 2.0);

    // Ball lambda_1^D: refinements 3 -> 6 halve h.
    let mut ball_errors = Vec::new();
    for refinement in [3usize, 6] {
        let ball = generators::ball_tet(1.0, refinement).unwrap();
        let spec = dirichlet_spectrum(&ball, 1).unwrap();
        ball_errors.push((spec.eigenvalues[0] - PI * PI).abs());
    }
    let ball_ratio = ball_errors[0] / ball_errors[1];
    assert!(
        (2.5..=6.0).contains(&ball_ratio),
        "ball error ratio {ball_ratio}"
    );

    // Cube lambda_1^D against the closed form, n = 8 -> 16.
    let mut cube_errors = Vec::new();
    for n in [8usize, 16] {
        let tet = generators::cube_tet(1.0, n).unwrap();
        let spec = dirichlet_spectrum(&tet, 1).unwrap();
        cube_errors.push((spec.eigenvalues[0] - 3.0 * PI * PI).abs());
    }
    let cube_ratio = cube_errors[0] / cube_errors[1];
    assert!(
        (2.5..=6.0).contains(&cube_ratio),
        "cube error ratio {cube_ratio}"
    );

    println!(
        "ACCEPTANCE 11 PASS convergence order: sphere ratios {:.2}/{:.2}, ball {ball_ratio:.2}, cube {cube_ratio:.2}",
        sphere_ratios[0], sphere_ratios[1]
    );
}

#[test]
fn criterion_12_solver_oracle_equivalence() {
    // Every pencil of dimension <= 300 in the fixture zoo, against the
    // dense brute-force diagonalization.
    let mut pencils: Vec<(
        String,
        fem::SparseSymmetricMatrix,
        fem::SparseSymmetricMatrix,
    )> = Vec::new();
    for (name, mesh) in [
        ("icosphere-1", generators::icosphere(1.0, 1).unwrap()),
        ("icosphere-2", generators::icosphere(1.0, 2).unwrap()),
        ("torus", generators::torus(2.0, 1.0, 12, 8).unwrap()),
        ("cube-surface", generators::cube_surface(1.0, 4).unwrap()),
        (
            "genus2",
            mesh_io::load_surface(
                common::fixture_path("genus2.off"),
                mesh_io::SurfaceFormat::Off,
            )
            .unwrap(),
        ),
    ] {
        let s = fem::assemble_surface_stiffness(&mesh);
        let m = fem::assemble_surface_mass(&mesh, MassKind::Lumped);
        pencils.push((name.to_string(), s, m));
    }
    for (name, tet) in [
        ("cube-tet", generators::cube_tet(1.0, 5).unwrap()),
        ("ball-tet", generators::ball_tet(1.0, 1).unwrap()),
        (
            "solid-torus",
            generators::solid_torus_tet(2.0, 1.0, 8, 2, 6).unwrap(),
        ),
    ] {
        let s = fem::assemble_tet_stiffness(&tet);
        let m = fem::assemble_tet_mass(&tet, MassKind::Lumped);
        let red = fem::apply_dirichlet(&s, &m, tet.boundary_vertices()).unwrap();
        pencils.push((name.to_string(), red.stiffness, red.mass));
    }

    let mut worst = 0.0f64;
    for (name, s, m) in &pencils {
        let dim = s.dim();
        assert!(dim <= 300, "{name} has dimension {dim}");
        let count = dim.min(12);
        let mut request = EigenRequest::with_count(count);
        // Surface pencils are singular; take the standard negative shift.
        if s.max_abs_row_sum() <= 1e-8 * s.max_abs() {
            request.shift = -1e-3 * s.trace() / dim as f64;
        }
        let lanczos = specgeo::eigen::solve_generalized(s, m, &request).unwrap();
        let dense = common::dense_generalized_eigenvalues(s, m);
        let scale = dense[count - 1].abs().max(1e-300);
        for (a, b) in lanczos.eigenvalues.iter().zip(&dense[..count]) {
            if b.abs() <= 1e-6 * scale {
                assert!(
                    a.abs() <= 1e-6 * scale,
                    "{name}: zero mode mismatch {a} vs {b}"
                );
            } else {
                let err = rel(*a, *b);
                assert!(err <= 1e-8, "{name}: {a} vs {b} (rel {err})");
                worst = worst.max(err);
            }
        }
    }
    println!(
        "ACCEPTANCE 12 PASS solver oracle: {} pencils, worst nonzero relative error {worst:.2e}",
        pencils.len()
    );
}

#[test]
fn criterion_13_scale_and_rigid_motion_invariance() {
    let rotation = Rotation3::from_axis_angle(
        &nalgebra::Unit::new_normalize(Vector3::new(1.0, 2.0, 3.0)),
        0.7431,
    );
    let surf = generators::icosphere(1.0, 3).unwrap();
    let solid = generators::ball_tet(1.0, 3).unwrap();

    let base_surf = surface_spectrum(&surf, 1).unwrap();
    let base_vol = dirichlet_spectrum(&solid, 1).unwrap();
    let base_reports = fixture_reports(&base_surf, &base_vol);
    let base_ratio = main_ratio(&base_surf, &base_vol, 1).unwrap().ratio;

    // Rigid motion: everything is unchanged.
    {
        let rs = surf
            .transformed(|p| Point3::from(rotation * p.coords))
            .unwrap();
        let rt = solid
            .transformed(|p| Point3::from(rotation * p.coords))
            .unwrap();
        let spec = surface_spectrum(&rs, 1).unwrap();
        let vol = dirichlet_spectrum(&rt, 1).unwrap();
        assert!(rel(spec.eigenvalues[0], base_surf.eigenvalues[0]) < 1e-8);
        assert!(rel(vol.eigenvalues[0], base_vol.eigenvalues[0]) < 1e-8);
        compare_reports(&base_reports, &fixture_reports(&spec, &vol), "rotation");
        let ratio = main_ratio(&spec, &vol, 1).unwrap().ratio;
        assert!(rel(ratio, base_ratio) < 1e-6);
    }

    // Scaling by t: eigenvalues scale by t^{-2}; verdicts and gaps do not
    // move.
    for t in [0.5f64, 3.0] {
        let ss = surf.transformed(|p| Point3::from(p.coords * t)).unwrap();
        let st = solid.transformed(|p| Point3::from(p.coords * t)).unwrap();
        let spec = surface_spectrum(&ss, 1).unwrap();
        let vol = dirichlet_spectrum(&st, 1).unwrap();
        assert!(
            rel(spec.eigenvalues[0] * t * t, base_surf.eigenvalues[0]) < 1e-6,
            "surface covariance at t = {t}"
        );
        assert!(
            rel(vol.eigenvalues[0] * t * t, base_vol.eigenvalues[0]) < 1e-6,
            "Dirichlet covariance at t = {t}"
        );
        compare_reports(&base_reports, &fixture_reports(&spec, &vol), "scaling");
        let ratio = main_ratio(&spec, &vol, 1).unwrap().ratio;
        assert!(rel(ratio, base_ratio) < 1e-6, "ratio at t = {t}");
    }
    println!("ACCEPTANCE 13 PASS invariance: rotation and t in {{0.5, 3}} leave all verdicts and gaps fixed");
}

fn fixture_reports(surf: &SurfaceSpectrum, vol: &VolumeSpectrum) -> Vec<InequalityReport> {
    let summary = &surf.summary;
    let lambda1 = surf.eigenvalues[0];
    let yy = check_yang_yau(lambda1, summary.area, summary.genus);
    vec![
        check_reilly(summary.area, lambda1, summary.volume, 2),
        yy.bound,
        yy.floor_bound,
        check_isoperimetric(summary.area, summary.volume),
        check_faber_krahn(vol.eigenvalues[0], vol.volume),
        check_li_yau_pointwise(vol.eigenvalues[0], 1, vol.volume, 3),
        check_polya_dirichlet(vol.eigenvalues[0], 1, vol.volume, 3),
        check_genus0_optimal(vol.eigenvalues[0], lambda1, summary.genus).unwrap(),
    ]
}

fn compare_reports(base: &[InequalityReport], got: &[InequalityReport], label: &str) {
    for (a, b) in base.iter().zip(got) {
        assert_eq!(
            a.satisfied, b.satisfied,
            "{label}: {} verdict flipped",
            a.name
        );
        assert!(
            (a.equality_gap - b.equality_gap).abs() < 1e-6,
            "{label}: {} gap moved {} -> {}",
            a.name,
            a.equality_gap,
            b.equality_gap
        );
    }
}

#[test]
fn criterion_14_dimension_two_consistency() {
    let mut state = 0xfeed_f00du64;
    let mut worst = 0.0f64;
    for _ in 0..20 {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let c = 0.5 + (state >> 11) as f64 / (1u64 << 53) as f64 * 200.0;
        let a = k_n(2, c);
        let b = k_g(c, 0);
        let err = rel(a, b);
        assert!(err < 1e-12, "C = {c}: k_n = {a}, k_g = {b}");
        worst = worst.max(err);
    }
    println!("ACCEPTANCE 14 PASS K(2) == K_0 over 20 candidates, worst rel err {worst:.2e}");
}
