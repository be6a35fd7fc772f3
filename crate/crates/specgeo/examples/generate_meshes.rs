//! Generate every built-in fixture (plus the voxel genus-2 surface that
//! ships under fixtures/) and write them to an output directory.
//!
//!     cargo run --release --example generate_meshes -- [out_dir]

use std::collections::{BTreeSet, HashMap};
use std::path::Path;

use nalgebra::Point3;
use specgeo::mesh::io::{save_surface, save_tet, SurfaceFormat};
use specgeo::mesh::{generators, SurfaceMesh};

fn main() {
    let out = std::env::args().nth(1).unwrap_or_else(|| "out".to_string());
    let out = Path::new(&out);
    std::fs::create_dir_all(out).expect("create output directory");

    let sphere = generators::icosphere(1.0, 4).unwrap();
    save_surface(&sphere, out.join("sphere.off"), SurfaceFormat::Off).unwrap();
    println!(
        "sphere.off      V={:5} F={:5} genus={} area={:.6} volume={:.6}",
        sphere.vertex_count(),
        sphere.face_count(),
        sphere.genus(),
        sphere.area(),
        sphere.enclosed_volume().unwrap()
    );

    let torus = generators::torus(2.0, 1.0, 48, 24).unwrap();
    save_surface(&torus, out.join("torus.obj"), SurfaceFormat::Obj).unwrap();
    println!(
        "torus.obj       V={:5} F={:5} genus={} area={:.6} (4 pi^2 R r = {:.6})",
        torus.vertex_count(),
        torus.face_count(),
        torus.genus(),
        torus.area(),
        8.0 * std::f64::consts::PI * std::f64::consts::PI
    );

    let cube = generators::cube_surface(1.0, 8).unwrap();
    save_surface(&cube, out.join("cube.off"), SurfaceFormat::Off).unwrap();
    println!(
        "cube.off        V={:5} F={:5} genus={} area={:.6} (exactly 6)",
        cube.vertex_count(),
        cube.face_count(),
        cube.genus(),
        cube.area()
    );

    let ball = generators::ball_tet(1.0, 3).unwrap();
    save_tet(&ball, out.join("ball.node"), out.join("ball.ele")).unwrap();
    println!(
        "ball.node/.ele  V={:5} T={:5} volume={:.6} (4 pi / 3 = {:.6})",
        ball.vertex_count(),
        ball.tet_count(),
        ball.volume(),
        4.0 * std::f64::consts::PI / 3.0
    );

    let cube_tet = generators::cube_tet(1.0, 8).unwrap();
    save_tet(&cube_tet, out.join("cube.node"), out.join("cube.ele")).unwrap();
    println!(
        "cube.node/.ele  V={:5} T={:5} volume={:.6} (exactly 1)",
        cube_tet.vertex_count(),
        cube_tet.tet_count(),
        cube_tet.volume()
    );

    let solid_torus = generators::solid_torus_tet(2.0, 1.0, 24, 4, 12).unwrap();
    save_tet(
        &solid_torus,
        out.join("solid_torus.node"),
        out.join("solid_torus.ele"),
    )
    .unwrap();
    println!(
        "solid_torus     V={:5} T={:5} volume={:.6} (2 pi^2 R r^2 = {:.6})",
        solid_torus.vertex_count(),
        solid_torus.tet_count(),
        solid_torus.volume(),
        2.0 * std::f64::consts::PI * std::f64::consts::PI * 2.0
    );

    let genus2 = genus2_slab();
    save_surface(&genus2, out.join("genus2.off"), SurfaceFormat::Off).unwrap();
    println!(
        "genus2.off      V={:5} F={:5} genus={} chi={} volume={:.6}",
        genus2.vertex_count(),
        genus2.face_count(),
        genus2.genus(),
        genus2.euler_characteristic(),
        genus2.enclosed_volume().unwrap()
    );
}

/// Boundary surface of a 6 x 3 x 1 voxel slab with two square
/// through-holes: a watertight genus-2 polyhedron. This is the builder
/// behind fixtures/genus2.off; genus >= 2 surfaces enter the toolkit by
/// import only.
fn genus2_slab() -> SurfaceMesh {
    let mut voxels = BTreeSet::new();
    for x in 0..6i64 {
        for y in 0..3i64 {
            voxels.insert((x, y, 0i64));
        }
    }
    voxels.remove(&(1, 1, 0));
    voxels.remove(&(4, 1, 0));

    // Outward-oriented quad corners per face direction.
    type VoxelFace = ((i64, i64, i64), [(i64, i64, i64); 4]);
    let faces: [VoxelFace; 6] = [
        ((1, 0, 0), [(1, 0, 0), (1, 1, 0), (1, 1, 1), (1, 0, 1)]),
        ((-1, 0, 0), [(0, 0, 0), (0, 0, 1), (0, 1, 1), (0, 1, 0)]),
        ((0, 1, 0), [(0, 1, 0), (0, 1, 1), (1, 1, 1), (1, 1, 0)]),
        ((0, -1, 0), [(0, 0, 0), (1, 0, 0), (1, 0, 1), (0, 0, 1)]),
        ((0, 0, 1), [(0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1)]),
        ((0, 0, -1), [(0, 0, 0), (0, 1, 0), (1, 1, 0), (1, 0, 0)]),
    ];

    let mut lattice: HashMap<(i64, i64, i64), usize> = HashMap::new();
    let mut vertices: Vec<Point3<f64>> = Vec::new();
    let mut tris: Vec<[usize; 3]> = Vec::new();
    for &(x, y, z) in &voxels {
        for (normal, corners) in &faces {
            if voxels.contains(&(x + normal.0, y + normal.1, z + normal.2)) {
                continue;
            }
            let quad: Vec<usize> = corners
                .iter()
                .map(|&(dx, dy, dz)| {
                    let key = (x + dx, y + dy, z + dz);
                    *lattice.entry(key).or_insert_with(|| {
                        vertices.push(Point3::new(key.0 as f64, key.1 as f64, key.2 as f64));
                        vertices.len() - 1
                    })
                })
                .collect();
            tris.push([quad[0], quad[1], quad[2]]);
            tris.push([quad[0], quad[2], quad[3]]);
        }
    }
    SurfaceMesh::new(vertices, tris).expect("voxel boundary is watertight")
}
