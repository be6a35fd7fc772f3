//! Built-in mesh generators: deterministic fixtures for the spectral tests.
//!
//! Surfaces: icosphere, torus, cube surface. Solids: ball (radially remapped
//! cube grid), cube, and solid torus (swept disk). Genus >= 2 fixtures are
//! import-only.

use std::collections::HashMap;

use nalgebra::Point3;

use super::{signed_tet_volume, MeshError, SurfaceMesh, TetMesh};

/// Geodesic sphere: subdivided icosahedron with every vertex projected to
/// radius `radius`. Face count is `20 * 4^subdivisions`.
pub fn icosphere(radius: f64, subdivisions: u32) -> Result<SurfaceMesh, MeshError> {
    if !radius.is_finite() || radius <= 0.0 {
        return Err(MeshError::BadParameter(format!(
            "icosphere radius must be positive, got {radius}"
        )));
    }
    if subdivisions > 8 {
        return Err(MeshError::BadParameter(format!(
            "icosphere subdivisions must be <= 8, got {subdivisions}"
        )));
    }

    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    let mut vertices: Vec<Point3<f64>> = [
        [-1.0, phi, 0.0],
        [1.0, phi, 0.0],
        [-1.0, -phi, 0.0],
        [1.0, -phi, 0.0],
        [0.0, -1.0, phi],
        [0.0, 1.0, phi],
        [0.0, -1.0, -phi],
        [0.0, 1.0, -phi],
        [phi, 0.0, -1.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, -1.0],
        [-phi, 0.0, 1.0],
    ]
    .iter()
    .map(|v| project_to_sphere(Point3::new(v[0], v[1], v[2]), radius))
    .collect();

    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];

    for _ in 0..subdivisions {
        let mut midpoints: HashMap<(usize, usize), usize> = HashMap::new();
        let mut next = Vec::with_capacity(faces.len() * 4);
        for &[a, b, c] in &faces {
            let ab = edge_midpoint(&mut vertices, &mut midpoints, a, b, radius);
            let bc = edge_midpoint(&mut vertices, &mut midpoints, b, c, radius);
            let ca = edge_midpoint(&mut vertices, &mut midpoints, c, a, radius);
            next.push([a, ab, ca]);
            next.push([b, bc, ab]);
            next.push([c, ca, bc]);
            next.push([ab, bc, ca]);
        }
        faces = next;
    }

    SurfaceMesh::new(vertices, faces)
}

fn project_to_sphere(p: Point3<f64>, radius: f64) -> Point3<f64> {
    Point3::from(p.coords * (radius / p.coords.norm()))
}

fn edge_midpoint(
    vertices: &mut Vec<Point3<f64>>,
    cache: &mut HashMap<(usize, usize), usize>,
    a: usize,
    b: usize,
    radius: f64,
) -> usize {
    let key = (a.min(b), a.max(b));
    if let Some(&idx) = cache.get(&key) {
        return idx;
    }
    let mid = Point3::from((vertices[a].coords + vertices[b].coords) / 2.0);
    let idx = vertices.len();
    vertices.push(project_to_sphere(mid, radius));
    cache.insert(key, idx);
    idx
}

/// Structured torus of revolution: `nu` sectors around the major circle,
/// `nv` around the tube, each quad split into two triangles.
///
/// Requires `0 < minor_radius < major_radius`; a near-degenerate tube
/// (`minor_radius > 0.98 * major_radius`) is allowed with a warning.
pub fn torus(
    major_radius: f64,
    minor_radius: f64,
    nu: usize,
    nv: usize,
) -> Result<SurfaceMesh, MeshError> {
    if !minor_radius.is_finite() || minor_radius <= 0.0 || minor_radius >= major_radius {
        return Err(MeshError::BadParameter(format!(
            "torus requires 0 < minor_radius < major_radius, got {minor_radius}, {major_radius}"
        )));
    }
    if nu < 3 || nv < 3 {
        return Err(MeshError::BadParameter(format!(
            "torus requires nu >= 3 and nv >= 3, got {nu}, {nv}"
        )));
    }
    if minor_radius > 0.98 * major_radius {
        eprintln!(
            "warning: torus minor radius {minor_radius} is within 2% of major radius \
             {major_radius}; the embedding is nearly degenerate"
        );
    }

    let mut vertices = Vec::with_capacity(nu * nv);
    for iu in 0..nu {
        let u = 2.0 * std::f64::consts::PI * iu as f64 / nu as f64;
        for iv in 0..nv {
            let v = 2.0 * std::f64::consts::PI * iv as f64 / nv as f64;
            let ring = major_radius + minor_radius * v.cos();
            vertices.push(Point3::new(
                ring * u.cos(),
                ring * u.sin(),
                minor_radius * v.sin(),
            ));
        }
    }

    let idx = |iu: usize, iv: usize| (iu % nu) * nv + (iv % nv);
    let mut faces = Vec::with_capacity(2 * nu * nv);
    for iu in 0..nu {
        for iv in 0..nv {
            let a = idx(iu, iv);
            let b = idx(iu + 1, iv);
            let c = idx(iu + 1, iv + 1);
            let d = idx(iu, iv + 1);
            faces.push([a, b, c]);
            faces.push([a, c, d]);
        }
    }
    SurfaceMesh::new(vertices, faces)
}

/// Surface of an axis-aligned cube spanning `[0, edge]^3`, each of the six
/// faces split into an `n x n` quad grid and then into triangles. The area
/// is exactly `6 * edge^2` since all faces are planar.
pub fn cube_surface(edge: f64, n: usize) -> Result<SurfaceMesh, MeshError> {
    if !edge.is_finite() || edge <= 0.0 {
        return Err(MeshError::BadParameter(format!(
            "cube edge must be positive, got {edge}"
        )));
    }
    if n == 0 {
        return Err(MeshError::BadParameter("cube needs n >= 1".into()));
    }

    let mut lattice: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut vertices = Vec::new();
    let h = edge / n as f64;
    let mut vertex_at = |i: usize, j: usize, k: usize| -> usize {
        *lattice.entry((i, j, k)).or_insert_with(|| {
            vertices.push(Point3::new(i as f64 * h, j as f64 * h, k as f64 * h));
            vertices.len() - 1
        })
    };

    // One map per cube face, (u, v) ordered so the winding is outward.
    type Corner = fn(usize, usize, usize) -> (usize, usize, usize);
    let sides: [Corner; 6] = [
        |_, u, v| (0, v, u), // x = 0, normal -x
        |n, u, v| (n, u, v), // x = n, normal +x
        |_, u, v| (u, 0, v), // y = 0, normal -y
        |n, u, v| (v, n, u), // y = n, normal +y
        |_, u, v| (v, u, 0), // z = 0, normal -z
        |n, u, v| (u, v, n), // z = n, normal +z
    ];
    let mut faces = Vec::with_capacity(12 * n * n);
    for corner in sides {
        for u in 0..n {
            for v in 0..n {
                let quad = [
                    corner(n, u, v),
                    corner(n, u + 1, v),
                    corner(n, u + 1, v + 1),
                    corner(n, u, v + 1),
                ];
                let q: Vec<usize> = quad.iter().map(|&(i, j, k)| vertex_at(i, j, k)).collect();
                faces.push([q[0], q[1], q[2]]);
                faces.push([q[0], q[2], q[3]]);
            }
        }
    }
    SurfaceMesh::new(vertices, faces)
}

/// Tetrahedralized ball: a structured cube grid, six tets per cell, with
/// vertices radially remapped so cubical shells land on spheres. Boundary
/// vertices sit at exact distance `radius`; `refinement` steps from 1 to 6
/// give `4 * refinement` grid cells per axis.
pub fn ball_tet(radius: f64, refinement: usize) -> Result<TetMesh, MeshError> {
    if !radius.is_finite() || radius <= 0.0 {
        return Err(MeshError::BadParameter(format!(
            "ball radius must be positive, got {radius}"
        )));
    }
    if refinement == 0 || refinement > 6 {
        return Err(MeshError::BadParameter(format!(
            "ball refinement must be in 1..=6, got {refinement}"
        )));
    }
    let n = 4 * refinement;
    let (grid, tets) = kuhn_grid(n);
    let vertices = grid
        .into_iter()
        .map(|p| {
            // Map the cube [-1,1]^3 onto the ball: the shell |p|_inf = s
            // goes to the sphere of radius s * radius.
            let q = Point3::new(
                2.0 * p.x / n as f64 - 1.0,
                2.0 * p.y / n as f64 - 1.0,
                2.0 * p.z / n as f64 - 1.0,
            );
            let linf = q.x.abs().max(q.y.abs()).max(q.z.abs());
            if linf == 0.0 {
                Point3::origin()
            } else {
                Point3::from(q.coords * (radius * linf / q.coords.norm()))
            }
        })
        .collect();
    TetMesh::new(vertices, tets)
}

/// Kuhn-split cube: `n^3` cells, six tets per cell, volume exactly `edge^3`.
pub fn cube_tet(edge: f64, n: usize) -> Result<TetMesh, MeshError> {
    if !edge.is_finite() || edge <= 0.0 {
        return Err(MeshError::BadParameter(format!(
            "cube edge must be positive, got {edge}"
        )));
    }
    if n == 0 {
        return Err(MeshError::BadParameter("cube needs n >= 1".into()));
    }
    let (grid, tets) = kuhn_grid(n);
    let h = edge / n as f64;
    let vertices = grid
        .into_iter()
        .map(|p| Point3::new(p.x * h, p.y * h, p.z * h))
        .collect();
    TetMesh::new(vertices, tets)
}

/// Integer lattice `[0, n]^3` and the Kuhn six-tet split of every cell.
/// Returned points carry lattice coordinates as floats.
fn kuhn_grid(n: usize) -> (Vec<Point3<f64>>, Vec<[usize; 4]>) {
    let m = n + 1;
    let idx = |i: usize, j: usize, k: usize| (k * m + j) * m + i;
    let mut points = Vec::with_capacity(m * m * m);
    for k in 0..m {
        for j in 0..m {
            for i in 0..m {
                points.push(Point3::new(i as f64, j as f64, k as f64));
            }
        }
    }

    // Six tets around the main diagonal of each cell, one per permutation
    // of the axes; odd permutations need a swap to stay positively oriented.
    const PERMS: [([usize; 3], bool); 6] = [
        ([0, 1, 2], true),
        ([0, 2, 1], false),
        ([1, 0, 2], false),
        ([1, 2, 0], true),
        ([2, 0, 1], true),
        ([2, 1, 0], false),
    ];
    let mut tets = Vec::with_capacity(6 * n * n * n);
    for k in 0..n {
        for j in 0..n {
            for i in 0..n {
                let base = [i, j, k];
                for (perm, even) in PERMS {
                    let mut p = base;
                    let v0 = idx(p[0], p[1], p[2]);
                    p[perm[0]] += 1;
                    let v1 = idx(p[0], p[1], p[2]);
                    p[perm[1]] += 1;
                    let v2 = idx(p[0], p[1], p[2]);
                    p[perm[2]] += 1;
                    let v3 = idx(p[0], p[1], p[2]);
                    if even {
                        tets.push([v0, v1, v2, v3]);
                    } else {
                        tets.push([v0, v1, v3, v2]);
                    }
                }
            }
        }
    }
    (points, tets)
}

/// Solid torus: a polar disk grid (`nr` rings of `nv` vertices plus the
/// center) swept through `nu` sectors around the major circle. Prisms are
/// split into tets with the index-based rule so facets match across
/// neighbors. The boundary is a structured genus-1 torus.
pub fn solid_torus_tet(
    major_radius: f64,
    minor_radius: f64,
    nu: usize,
    nr: usize,
    nv: usize,
) -> Result<TetMesh, MeshError> {
    if !minor_radius.is_finite() || minor_radius <= 0.0 || minor_radius >= major_radius {
        return Err(MeshError::BadParameter(format!(
            "solid torus requires 0 < minor_radius < major_radius, got {minor_radius}, {major_radius}"
        )));
    }
    if nu < 3 || nv < 3 || nr < 1 {
        return Err(MeshError::BadParameter(format!(
            "solid torus requires nu >= 3, nv >= 3, nr >= 1, got {nu}, {nr}, {nv}"
        )));
    }

    // Disk triangulation shared by every sector slice. Local vertex 0 is
    // the center; ring m (1-based) occupies 1 + (m-1)*nv ...
    let disk_vertex = |ring: usize, spoke: usize| -> usize {
        if ring == 0 {
            0
        } else {
            1 + (ring - 1) * nv + (spoke % nv)
        }
    };
    let mut disk_tris: Vec<[usize; 3]> = Vec::new();
    for s in 0..nv {
        disk_tris.push([disk_vertex(0, 0), disk_vertex(1, s), disk_vertex(1, s + 1)]);
    }
    for ring in 1..nr {
        for s in 0..nv {
            let a = disk_vertex(ring, s);
            let b = disk_vertex(ring + 1, s);
            let c = disk_vertex(ring + 1, s + 1);
            let d = disk_vertex(ring, s + 1);
            disk_tris.push([a, b, c]);
            disk_tris.push([a, c, d]);
        }
    }
    let n_disk = 1 + nr * nv;

    let mut vertices = Vec::with_capacity(nu * n_disk);
    for iu in 0..nu {
        let theta = 2.0 * std::f64::consts::PI * iu as f64 / nu as f64;
        let push = |rho: f64, phi: f64, out: &mut Vec<Point3<f64>>| {
            let ring = major_radius + rho * phi.cos();
            out.push(Point3::new(
                ring * theta.cos(),
                ring * theta.sin(),
                rho * phi.sin(),
            ));
        };
        push(0.0, 0.0, &mut vertices);
        for ring in 1..=nr {
            let rho = minor_radius * ring as f64 / nr as f64;
            for s in 0..nv {
                let phi = 2.0 * std::f64::consts::PI * s as f64 / nv as f64;
                push(rho, phi, &mut vertices);
            }
        }
    }

    let mut tets = Vec::with_capacity(nu * disk_tris.len() * 3);
    for iu in 0..nu {
        let lo = iu * n_disk;
        let hi = ((iu + 1) % nu) * n_disk;
        for tri in &disk_tris {
            let prism = [
                lo + tri[0],
                lo + tri[1],
                lo + tri[2],
                hi + tri[0],
                hi + tri[1],
                hi + tri[2],
            ];
            for mut tet in split_prism(prism) {
                let vol = signed_tet_volume(
                    &vertices[tet[0]],
                    &vertices[tet[1]],
                    &vertices[tet[2]],
                    &vertices[tet[3]],
                );
                if vol < 0.0 {
                    tet.swap(2, 3);
                }
                tets.push(tet);
            }
        }
    }
    TetMesh::new(vertices, tets)
}

/// Split a triangular prism (bottom v0 v1 v2, top v3 v4 v5, vi below vi+3)
/// into three tets. Quad faces are cut along the diagonal through their
/// smallest global vertex index, which makes adjacent prisms agree.
fn split_prism(p: [usize; 6]) -> [[usize; 4]; 3] {
    // Rotate so the smallest index sits at corner 0 (flipping top to bottom
    // when the smallest index is in the top triangle).
    let (min_pos, _) = p.iter().enumerate().min_by_key(|&(_, &v)| v).unwrap();
    let r = match min_pos {
        0 => [p[0], p[1], p[2], p[3], p[4], p[5]],
        1 => [p[1], p[2], p[0], p[4], p[5], p[3]],
        2 => [p[2], p[0], p[1], p[5], p[3], p[4]],
        3 => [p[3], p[5], p[4], p[0], p[2], p[1]],
        4 => [p[4], p[3], p[5], p[1], p[0], p[2]],
        _ => [p[5], p[4], p[3], p[2], p[1], p[0]],
    };
    // Quads (r1 r2 r5 r4) and (r2 r0 r3 r5) both contain r0's diagonal
    // partner choice; the remaining quad picks the diagonal through the
    // smaller of r1, r5 versus r2, r4.
    if r[1].min(r[5]) < r[2].min(r[4]) {
        [
            [r[0], r[1], r[2], r[5]],
            [r[0], r[1], r[5], r[4]],
            [r[0], r[4], r[5], r[3]],
        ]
    } else {
        [
            [r[0], r[1], r[2], r[4]],
            [r[0], r[4], r[2], r[5]],
            [r[0], r[4], r[5], r[3]],
        ]
    }
}
