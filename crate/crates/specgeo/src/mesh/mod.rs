//! Mesh data types, generators, file IO, and the geometric quantities
//! (area, enclosed volume, genus, centering) consumed by every inequality.

use std::collections::HashMap;

use nalgebra::Point3;
use serde::Serialize;
use thiserror::Error;

pub mod generators;
pub mod io;

/// Relative threshold below which a triangle counts as degenerate,
/// measured against the squared bounding-box diagonal.
pub const DEGENERATE_AREA_REL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("face {face} has out-of-range vertex index {index}")]
    IndexOutOfRange { face: usize, index: usize },
    #[error("face {face} repeats a vertex")]
    RepeatedVertex { face: usize },
    #[error("degenerate triangle {face}: area {area:.3e} below threshold {threshold:.3e}")]
    DegenerateTriangle {
        face: usize,
        area: f64,
        threshold: f64,
    },
    #[error("open surface: boundary edge found between vertices {0} and {1}")]
    OpenSurface(usize, usize),
    #[error("non-manifold edge between vertices {0} and {1}: shared by {2} faces")]
    NonManifoldEdge(usize, usize, usize),
    #[error("inconsistent orientation: edge {0}-{1} traversed twice in the same direction")]
    InconsistentOrientation(usize, usize),
    #[error("disconnected: mesh has {0} components")]
    Disconnected(usize),
    #[error("invalid topology: Euler characteristic {0} is not of the form 2 - 2g")]
    InvalidTopology(i64),
    #[error("inward orientation: signed enclosed volume is {0:.6e} (must be positive)")]
    InwardOrientation(f64),
    #[error("tet {tet} has non-positive signed volume {volume:.3e}")]
    InvertedTet { tet: usize, volume: f64 },
    #[error("tet {tet} has out-of-range vertex index {index}")]
    TetIndexOutOfRange { tet: usize, index: usize },
    #[error("tet {tet} repeats a vertex")]
    TetRepeatedVertex { tet: usize },
    #[error("non-manifold facet shared by {0} tets")]
    NonManifoldFacet(usize),
    #[error("boundary surface is invalid: {0}")]
    InvalidBoundary(Box<MeshError>),
    #[error("parameter out of range: {0}")]
    BadParameter(String),
    #[error("parse error at {path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Closed oriented triangle mesh embedded in R^3.
///
/// Construction validates closedness, global orientation consistency,
/// connectedness, index sanity, and non-degeneracy of every triangle;
/// a value of this type always satisfies those invariants.
#[derive(Debug, Clone)]
pub struct SurfaceMesh {
    vertices: Vec<Point3<f64>>,
    faces: Vec<[usize; 3]>,
    edge_count: usize,
}

/// Area, volume, and topology summary of a closed surface.
#[derive(Debug, Clone, Serialize)]
pub struct GeometrySummary {
    pub area: f64,
    pub volume: f64,
    pub genus: u32,
    pub euler_characteristic: i64,
    pub area_centroid: [f64; 3],
}

impl SurfaceMesh {
    /// Build a mesh and validate every invariant, reporting the first violation.
    pub fn new(vertices: Vec<Point3<f64>>, faces: Vec<[usize; 3]>) -> Result<Self, MeshError> {
        let edge_count = validate_surface(&vertices, &faces)?;
        Ok(Self {
            vertices,
            faces,
            edge_count,
        })
    }

    /// Same combinatorics, translated vertices; invariants are preserved.
    fn translated_unchecked(&self, shift: nalgebra::Vector3<f64>) -> Self {
        Self {
            vertices: self.vertices.iter().map(|p| p + shift).collect(),
            faces: self.faces.clone(),
            edge_count: self.edge_count,
        }
    }

    pub fn vertices(&self) -> &[Point3<f64>] {
        &self.vertices
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edge_count as i64 + self.faces.len() as i64
    }

    /// Genus g = (2 - chi) / 2; integrality is guaranteed by validation.
    pub fn genus(&self) -> u32 {
        ((2 - self.euler_characteristic()) / 2) as u32
    }

    /// Corner positions of face `f`.
    pub fn triangle(&self, f: usize) -> [Point3<f64>; 3] {
        let [a, b, c] = self.faces[f];
        [self.vertices[a], self.vertices[b], self.vertices[c]]
    }

    /// Sum of triangle areas.
    pub fn area(&self) -> f64 {
        (0..self.faces.len()).map(|f| self.face_area(f)).sum()
    }

    pub fn face_area(&self, f: usize) -> f64 {
        let [a, b, c] = self.triangle(f);
        0.5 * (b - a).cross(&(c - a)).norm()
    }

    /// Signed enclosed volume, `(1/6) sum_faces det(v1, v2, v3)`.
    ///
    /// The signed form is exact for polyhedra and translation invariant;
    /// a non-positive result signals inward orientation and is reported,
    /// never silently fixed.
    pub fn enclosed_volume(&self) -> Result<f64, MeshError> {
        let v = self.signed_volume();
        if v <= 0.0 {
            return Err(MeshError::InwardOrientation(v));
        }
        Ok(v)
    }

    /// Signed volume without the orientation check.
    pub fn signed_volume(&self) -> f64 {
        self.faces
            .iter()
            .map(|&[a, b, c]| {
                let (p, q, r) = (self.vertices[a], self.vertices[b], self.vertices[c]);
                p.coords.dot(&q.coords.cross(&r.coords)) / 6.0
            })
            .sum()
    }

    /// Surface-measure centroid using the lumped (one-third incident area)
    /// vertex weights.
    pub fn area_centroid(&self) -> Point3<f64> {
        let mut acc = nalgebra::Vector3::zeros();
        let mut total = 0.0;
        for f in 0..self.faces.len() {
            let area = self.face_area(f);
            let [a, b, c] = self.triangle(f);
            acc += area / 3.0 * (a.coords + b.coords + c.coords);
            total += area;
        }
        Point3::from(acc / total)
    }

    /// Translate so the lumped surface-measure mean of every coordinate
    /// vanishes. Idempotent up to roundoff.
    pub fn center_at_area_centroid(&self) -> SurfaceMesh {
        let c = self.area_centroid();
        self.translated_unchecked(-c.coords)
    }

    /// Apply a point transformation and re-validate the result.
    pub fn transformed(
        &self,
        f: impl Fn(&Point3<f64>) -> Point3<f64>,
    ) -> Result<SurfaceMesh, MeshError> {
        SurfaceMesh::new(self.vertices.iter().map(f).collect(), self.faces.clone())
    }

    pub fn bounding_box(&self) -> (Point3<f64>, Point3<f64>) {
        bounding_box(&self.vertices)
    }

    pub fn bounding_box_diagonal(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        (hi - lo).norm()
    }

    pub fn summary(&self) -> Result<GeometrySummary, MeshError> {
        let volume = self.enclosed_volume()?;
        let c = self.area_centroid();
        Ok(GeometrySummary {
            area: self.area(),
            volume,
            genus: self.genus(),
            euler_characteristic: self.euler_characteristic(),
            area_centroid: [c.x, c.y, c.z],
        })
    }
}

/// Tetrahedral mesh of a bounded domain with its boundary surface identified.
#[derive(Debug, Clone)]
pub struct TetMesh {
    vertices: Vec<Point3<f64>>,
    tets: Vec<[usize; 4]>,
    boundary_vertices: Vec<usize>,
    boundary_faces: Vec<[usize; 3]>,
}

impl TetMesh {
    /// Validate and build. Boundary vertices are inferred from facet
    /// incidence: a facet on exactly one tet is a boundary facet. The
    /// extracted boundary triangulation must itself be a valid closed
    /// surface.
    pub fn new(vertices: Vec<Point3<f64>>, tets: Vec<[usize; 4]>) -> Result<Self, MeshError> {
        let n = vertices.len();
        for (t, tet) in tets.iter().enumerate() {
            for &i in tet {
                if i >= n {
                    return Err(MeshError::TetIndexOutOfRange { tet: t, index: i });
                }
            }
            for a in 0..4 {
                for b in (a + 1)..4 {
                    if tet[a] == tet[b] {
                        return Err(MeshError::TetRepeatedVertex { tet: t });
                    }
                }
            }
            let vol = signed_tet_volume(
                &vertices[tet[0]],
                &vertices[tet[1]],
                &vertices[tet[2]],
                &vertices[tet[3]],
            );
            if vol <= 0.0 {
                return Err(MeshError::InvertedTet {
                    tet: t,
                    volume: vol,
                });
            }
        }

        // Facet incidence; boundary facets keep their outward orientation.
        let mut facets: HashMap<[usize; 3], (usize, [usize; 3])> = HashMap::new();
        for tet in &tets {
            for face in outward_faces(tet) {
                let key = sorted3(face);
                let entry = facets.entry(key).or_insert((0, face));
                entry.0 += 1;
            }
        }
        let mut boundary_faces = Vec::new();
        for (key, (count, face)) in &facets {
            match count {
                1 => boundary_faces.push(*face),
                2 => {}
                c => {
                    let _ = key;
                    return Err(MeshError::NonManifoldFacet(*c));
                }
            }
        }
        boundary_faces.sort_unstable();

        let mut boundary_vertices: Vec<usize> = boundary_faces.iter().flatten().copied().collect();
        boundary_vertices.sort_unstable();
        boundary_vertices.dedup();

        let mesh = Self {
            vertices,
            tets,
            boundary_vertices,
            boundary_faces,
        };
        mesh.boundary_surface()
            .map_err(|e| MeshError::InvalidBoundary(Box::new(e)))?;
        Ok(mesh)
    }

    pub fn vertices(&self) -> &[Point3<f64>] {
        &self.vertices
    }

    pub fn tets(&self) -> &[[usize; 4]] {
        &self.tets
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn tet_count(&self) -> usize {
        self.tets.len()
    }

    /// Indices of vertices on the boundary, ascending.
    pub fn boundary_vertices(&self) -> &[usize] {
        &self.boundary_vertices
    }

    /// Boundary facets in original vertex indices, outward oriented.
    pub fn boundary_faces(&self) -> &[[usize; 3]] {
        &self.boundary_faces
    }

    /// Sum of signed tet volumes (all positive by construction).
    pub fn volume(&self) -> f64 {
        self.tets
            .iter()
            .map(|t| {
                signed_tet_volume(
                    &self.vertices[t[0]],
                    &self.vertices[t[1]],
                    &self.vertices[t[2]],
                    &self.vertices[t[3]],
                )
            })
            .sum()
    }

    /// Extract the boundary triangulation as a compact `SurfaceMesh`.
    pub fn boundary_surface(&self) -> Result<SurfaceMesh, MeshError> {
        let mut remap: HashMap<usize, usize> = HashMap::new();
        let mut points = Vec::with_capacity(self.boundary_vertices.len());
        for &v in &self.boundary_vertices {
            remap.insert(v, points.len());
            points.push(self.vertices[v]);
        }
        let faces = self
            .boundary_faces
            .iter()
            .map(|f| [remap[&f[0]], remap[&f[1]], remap[&f[2]]])
            .collect();
        SurfaceMesh::new(points, faces)
    }

    /// Apply a point transformation and re-validate the result.
    pub fn transformed(
        &self,
        f: impl Fn(&Point3<f64>) -> Point3<f64>,
    ) -> Result<TetMesh, MeshError> {
        TetMesh::new(self.vertices.iter().map(f).collect(), self.tets.clone())
    }
}

/// Signed volume of the tet (a, b, c, d), positive for right-handed order.
pub fn signed_tet_volume(
    a: &Point3<f64>,
    b: &Point3<f64>,
    c: &Point3<f64>,
    d: &Point3<f64>,
) -> f64 {
    (b - a).dot(&(c - a).cross(&(d - a))) / 6.0
}

/// The four faces of a positively oriented tet, wound so normals point
/// away from the opposite vertex.
fn outward_faces(t: &[usize; 4]) -> [[usize; 3]; 4] {
    [
        [t[1], t[2], t[3]],
        [t[0], t[3], t[2]],
        [t[0], t[1], t[3]],
        [t[0], t[2], t[1]],
    ]
}

fn sorted3(mut f: [usize; 3]) -> [usize; 3] {
    f.sort_unstable();
    f
}

fn bounding_box(vertices: &[Point3<f64>]) -> (Point3<f64>, Point3<f64>) {
    let mut lo = vertices[0];
    let mut hi = vertices[0];
    for p in vertices {
        for k in 0..3 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    (lo, hi)
}

/// Full invariant scan; returns the unique-edge count on success.
fn validate_surface(vertices: &[Point3<f64>], faces: &[[usize; 3]]) -> Result<usize, MeshError> {
    if vertices.is_empty() || faces.is_empty() {
        return Err(MeshError::BadParameter(
            "mesh must have vertices and faces".into(),
        ));
    }
    let n = vertices.len();
    for (f, face) in faces.iter().enumerate() {
        for &i in face {
            if i >= n {
                return Err(MeshError::IndexOutOfRange { face: f, index: i });
            }
        }
        if face[0] == face[1] || face[1] == face[2] || face[0] == face[2] {
            return Err(MeshError::RepeatedVertex { face: f });
        }
    }

    let (lo, hi) = bounding_box(vertices);
    let threshold = DEGENERATE_AREA_REL * (hi - lo).norm_squared();
    for (f, &[a, b, c]) in faces.iter().enumerate() {
        let area = 0.5
            * (vertices[b] - vertices[a])
                .cross(&(vertices[c] - vertices[a]))
                .norm();
        if area <= threshold {
            return Err(MeshError::DegenerateTriangle {
                face: f,
                area,
                threshold,
            });
        }
    }

    // Each undirected edge must be used exactly twice, once per direction.
    let mut edges: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for &[a, b, c] in faces {
        for (u, v) in [(a, b), (b, c), (c, a)] {
            let key = (u.min(v), u.max(v));
            let entry = edges.entry(key).or_insert((0, 0));
            if u < v {
                entry.0 += 1;
            } else {
                entry.1 += 1;
            }
        }
    }
    for (&(u, v), &(fwd, rev)) in &edges {
        let total = fwd + rev;
        if total == 1 {
            return Err(MeshError::OpenSurface(u, v));
        }
        if total > 2 {
            return Err(MeshError::NonManifoldEdge(u, v, total));
        }
        if fwd != 1 || rev != 1 {
            return Err(MeshError::InconsistentOrientation(u, v));
        }
    }

    // Connectedness over the vertex-edge graph (also catches stray vertices).
    let mut adjacency = vec![Vec::new(); n];
    for &(u, v) in edges.keys() {
        adjacency[u].push(v);
        adjacency[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut visited = 1usize;
    while let Some(u) = stack.pop() {
        for &v in &adjacency[u] {
            if !seen[v] {
                seen[v] = true;
                visited += 1;
                stack.push(v);
            }
        }
    }
    if visited != n {
        // Count components for the diagnostic.
        let mut components = 1;
        for s in 0..n {
            if !seen[s] {
                components += 1;
                seen[s] = true;
                let mut stack = vec![s];
                while let Some(u) = stack.pop() {
                    for &v in &adjacency[u] {
                        if !seen[v] {
                            seen[v] = true;
                            stack.push(v);
                        }
                    }
                }
            }
        }
        return Err(MeshError::Disconnected(components));
    }

    let edge_count = edges.len();
    let chi = n as i64 - edge_count as i64 + faces.len() as i64;
    if chi > 2 || chi % 2 != 0 {
        return Err(MeshError::InvalidTopology(chi));
    }
    Ok(edge_count)
}
