//! Discrete Dirichlet-energy (stiffness) and mass operators.
//!
//! Surfaces get the cotangent-weight stiffness and lumped or consistent P1
//! mass; tet meshes get the linear-element stiffness (per-tet barycentric
//! gradients) and the matching mass. Dirichlet conditions are imposed by
//! eliminating boundary rows and columns, never by penalty.

use nalgebra::{Matrix3, Point3, Vector3};
use thiserror::Error;

use crate::mesh::{SurfaceMesh, TetMesh};

mod sparse;
pub use sparse::{SparseError, SparseSymmetricMatrix};

#[derive(Debug, Error)]
pub enum FemError {
    #[error("no boundary vertices given: Dirichlet reduction applied to a closed manifold?")]
    EmptyBoundary,
    #[error("no interior degrees of freedom: every vertex is on the boundary")]
    NoInteriorDof,
    #[error("boundary vertex index {0} out of range for dimension {1}")]
    BoundaryOutOfRange(usize, usize),
    #[error(transparent)]
    Sparse(#[from] SparseError),
}

/// Mass discretization: lumped (diagonal, one third / one quarter of the
/// incident element measure) or consistent (full P1 Gram matrix).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MassKind {
    Lumped,
    Consistent,
}

/// Cotangent stiffness: each edge (i, j) with opposite angles alpha, beta
/// carries weight `(cot alpha + cot beta) / 2`. The constant vector spans
/// the kernel; row sums vanish to assembly roundoff.
pub fn assemble_surface_stiffness(mesh: &SurfaceMesh) -> SparseSymmetricMatrix {
    let mut triplets = Vec::with_capacity(12 * mesh.face_count());
    for f in 0..mesh.face_count() {
        let [a, b, c] = mesh.faces()[f];
        let [pa, pb, pc] = mesh.triangle(f);
        // Half-cotangent at each corner goes to the opposite edge.
        for (corner, u, v, pu, pv) in [(pa, b, c, pb, pc), (pb, c, a, pc, pa), (pc, a, b, pa, pb)] {
            let e1 = pu - corner;
            let e2 = pv - corner;
            let w = 0.5 * e1.dot(&e2) / e1.cross(&e2).norm();
            triplets.push((u, v, -w));
            triplets.push((v, u, -w));
            triplets.push((u, u, w));
            triplets.push((v, v, w));
        }
    }
    SparseSymmetricMatrix::from_triplets(mesh.vertex_count(), triplets)
        .expect("validated mesh indices are in range")
}

/// Surface mass matrix. Lumped: diagonal with one third of the incident
/// triangle area. Consistent: per-triangle `(area/12) * (2 I + ones)`.
/// Either way `1^T M 1` equals the surface area.
pub fn assemble_surface_mass(mesh: &SurfaceMesh, kind: MassKind) -> SparseSymmetricMatrix {
    let mut triplets = Vec::new();
    for f in 0..mesh.face_count() {
        let face = mesh.faces()[f];
        let area = mesh.face_area(f);
        match kind {
            MassKind::Lumped => {
                for &v in &face {
                    triplets.push((v, v, area / 3.0));
                }
            }
            MassKind::Consistent => {
                for (i, &u) in face.iter().enumerate() {
                    for (j, &v) in face.iter().enumerate() {
                        let w = if i == j { area / 6.0 } else { area / 12.0 };
                        triplets.push((u, v, w));
                    }
                }
            }
        }
    }
    SparseSymmetricMatrix::from_triplets(mesh.vertex_count(), triplets)
        .expect("validated mesh indices are in range")
}

/// P1 stiffness on tets: `S_ab = vol * grad(phi_a) . grad(phi_b)` with the
/// constant barycentric gradients of each element.
pub fn assemble_tet_stiffness(mesh: &TetMesh) -> SparseSymmetricMatrix {
    let mut triplets = Vec::with_capacity(16 * mesh.tet_count());
    for tet in mesh.tets() {
        let p: Vec<Point3<f64>> = tet.iter().map(|&v| mesh.vertices()[v]).collect();
        let (grads, vol) = barycentric_gradients(&p);
        for a in 0..4 {
            for b in 0..4 {
                triplets.push((tet[a], tet[b], vol * grads[a].dot(&grads[b])));
            }
        }
    }
    SparseSymmetricMatrix::from_triplets(mesh.vertex_count(), triplets)
        .expect("validated mesh indices are in range")
}

/// P1 mass on tets. Lumped: `vol/4` per vertex. Consistent: `vol/10` on
/// the diagonal, `vol/20` off. `1^T M 1` equals the volume either way.
pub fn assemble_tet_mass(mesh: &TetMesh, kind: MassKind) -> SparseSymmetricMatrix {
    let mut triplets = Vec::new();
    for tet in mesh.tets() {
        let p: Vec<Point3<f64>> = tet.iter().map(|&v| mesh.vertices()[v]).collect();
        let vol = crate::mesh::signed_tet_volume(&p[0], &p[1], &p[2], &p[3]);
        match kind {
            MassKind::Lumped => {
                for &v in tet {
                    triplets.push((v, v, vol / 4.0));
                }
            }
            MassKind::Consistent => {
                for (i, &u) in tet.iter().enumerate() {
                    for (j, &v) in tet.iter().enumerate() {
                        let w = if i == j { vol / 10.0 } else { vol / 20.0 };
                        triplets.push((u, v, w));
                    }
                }
            }
        }
    }
    SparseSymmetricMatrix::from_triplets(mesh.vertex_count(), triplets)
        .expect("validated mesh indices are in range")
}

/// Gradients of the four barycentric basis functions and the element volume.
fn barycentric_gradients(p: &[Point3<f64>]) -> ([Vector3<f64>; 4], f64) {
    let e = Matrix3::from_columns(&[p[1] - p[0], p[2] - p[0], p[3] - p[0]]);
    let vol = e.determinant() / 6.0;
    let inv = e.try_inverse().expect("validated tets are non-degenerate");
    // Rows of e^{-1} are the gradients of phi_1..phi_3.
    let g1 = Vector3::new(inv[(0, 0)], inv[(0, 1)], inv[(0, 2)]);
    let g2 = Vector3::new(inv[(1, 0)], inv[(1, 1)], inv[(1, 2)]);
    let g3 = Vector3::new(inv[(2, 0)], inv[(2, 1)], inv[(2, 2)]);
    ([-(g1 + g2 + g3), g1, g2, g3], vol)
}

/// The reduced pencil after eliminating Dirichlet boundary vertices.
#[derive(Debug, Clone)]
pub struct DirichletReduction {
    /// Reduced index -> original vertex index, ascending.
    pub interior_to_full: Vec<usize>,
    pub stiffness: SparseSymmetricMatrix,
    pub mass: SparseSymmetricMatrix,
}

impl DirichletReduction {
    pub fn reduced_dim(&self) -> usize {
        self.interior_to_full.len()
    }
}

/// Remove boundary rows and columns from the pencil (S, M).
pub fn apply_dirichlet(
    stiffness: &SparseSymmetricMatrix,
    mass: &SparseSymmetricMatrix,
    boundary_vertices: &[usize],
) -> Result<DirichletReduction, FemError> {
    let dim = stiffness.dim();
    if boundary_vertices.is_empty() {
        return Err(FemError::EmptyBoundary);
    }
    let mut on_boundary = vec![false; dim];
    for &b in boundary_vertices {
        if b >= dim {
            return Err(FemError::BoundaryOutOfRange(b, dim));
        }
        on_boundary[b] = true;
    }
    let interior: Vec<usize> = (0..dim).filter(|&v| !on_boundary[v]).collect();
    if interior.is_empty() {
        return Err(FemError::NoInteriorDof);
    }
    Ok(DirichletReduction {
        stiffness: stiffness.restrict(&interior),
        mass: mass.restrict(&interior),
        interior_to_full: interior,
    })
}
