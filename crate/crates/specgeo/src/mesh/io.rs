//! Mesh file IO: ASCII OFF, an OBJ subset (`v`/`f` records only), and the
//! node/ele pair for tet meshes. Loaded meshes are fully validated; the
//! first violated invariant is reported.

use std::fs;
use std::path::Path;

use nalgebra::Point3;

use super::{MeshError, SurfaceMesh, TetMesh};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceFormat {
    Off,
    Obj,
}

impl SurfaceFormat {
    /// Pick a format from a file extension (`.off`, `.obj`).
    pub fn from_path(path: &Path) -> Result<Self, MeshError> {
        match path.extension().and_then(|e| e.to_str()) {
            Some("off") | Some("OFF") => Ok(SurfaceFormat::Off),
            Some("obj") | Some("OBJ") => Ok(SurfaceFormat::Obj),
            other => Err(MeshError::BadParameter(format!(
                "cannot infer surface format from extension {other:?}"
            ))),
        }
    }
}

pub fn load_surface(
    path: impl AsRef<Path>,
    format: SurfaceFormat,
) -> Result<SurfaceMesh, MeshError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    let name = path.display().to_string();
    match format {
        SurfaceFormat::Off => parse_off(&text, &name),
        SurfaceFormat::Obj => parse_obj(&text, &name),
    }
}

pub fn save_surface(
    mesh: &SurfaceMesh,
    path: impl AsRef<Path>,
    format: SurfaceFormat,
) -> Result<(), MeshError> {
    let mut out = String::new();
    match format {
        SurfaceFormat::Off => {
            out.push_str("OFF\n");
            out.push_str(&format!(
                "{} {} 0\n",
                mesh.vertex_count(),
                mesh.face_count()
            ));
            for p in mesh.vertices() {
                out.push_str(&format!("{} {} {}\n", p.x, p.y, p.z));
            }
            for f in mesh.faces() {
                out.push_str(&format!("3 {} {} {}\n", f[0], f[1], f[2]));
            }
        }
        SurfaceFormat::Obj => {
            for p in mesh.vertices() {
                out.push_str(&format!("v {} {} {}\n", p.x, p.y, p.z));
            }
            for f in mesh.faces() {
                out.push_str(&format!("f {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1));
            }
        }
    }
    fs::write(path, out)?;
    Ok(())
}

/// Load a tet mesh from a node/ele file pair (1-based indices). Boundary
/// vertices are inferred from facet incidence during validation.
pub fn load_tet(
    node_path: impl AsRef<Path>,
    ele_path: impl AsRef<Path>,
) -> Result<TetMesh, MeshError> {
    let node_path = node_path.as_ref();
    let ele_path = ele_path.as_ref();
    let vertices = parse_node(
        &fs::read_to_string(node_path)?,
        &node_path.display().to_string(),
    )?;
    let tets = parse_ele(
        &fs::read_to_string(ele_path)?,
        &ele_path.display().to_string(),
        vertices.len(),
    )?;
    TetMesh::new(vertices, tets)
}

pub fn save_tet(
    mesh: &TetMesh,
    node_path: impl AsRef<Path>,
    ele_path: impl AsRef<Path>,
) -> Result<(), MeshError> {
    let mut node = format!("{}\n", mesh.vertex_count());
    for (i, p) in mesh.vertices().iter().enumerate() {
        node.push_str(&format!("{} {} {} {}\n", i + 1, p.x, p.y, p.z));
    }
    fs::write(node_path, node)?;

    let mut ele = format!("{}\n", mesh.tet_count());
    for (i, t) in mesh.tets().iter().enumerate() {
        ele.push_str(&format!(
            "{} {} {} {} {}\n",
            i + 1,
            t[0] + 1,
            t[1] + 1,
            t[2] + 1,
            t[3] + 1
        ));
    }
    fs::write(ele_path, ele)?;
    Ok(())
}

/// Content lines with their 1-based line numbers; blanks and '#' comments
/// are skipped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            None
        } else {
            Some((i + 1, trimmed))
        }
    })
}

fn parse_error(path: &str, line: usize, message: impl Into<String>) -> MeshError {
    MeshError::Parse {
        path: path.to_string(),
        line,
        message: message.into(),
    }
}

fn parse_f64(tok: &str, path: &str, line: usize) -> Result<f64, MeshError> {
    tok.parse()
        .map_err(|_| parse_error(path, line, format!("expected a number, got {tok:?}")))
}

fn parse_usize(tok: &str, path: &str, line: usize) -> Result<usize, MeshError> {
    tok.parse()
        .map_err(|_| parse_error(path, line, format!("expected an integer, got {tok:?}")))
}

fn parse_off(text: &str, path: &str) -> Result<SurfaceMesh, MeshError> {
    let mut lines = content_lines(text);
    let (ln, header) = lines
        .next()
        .ok_or_else(|| parse_error(path, 1, "empty file"))?;
    if header != "OFF" {
        return Err(parse_error(
            path,
            ln,
            format!("expected OFF header, got {header:?}"),
        ));
    }
    let (ln, counts) = lines
        .next()
        .ok_or_else(|| parse_error(path, ln, "missing counts line"))?;
    let toks: Vec<&str> = counts.split_whitespace().collect();
    if toks.len() < 2 {
        return Err(parse_error(
            path,
            ln,
            "counts line needs vertex and face counts",
        ));
    }
    let nv = parse_usize(toks[0], path, ln)?;
    let nf = parse_usize(toks[1], path, ln)?;

    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| parse_error(path, 0, "unexpected end of file in vertex block"))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() < 3 {
            return Err(parse_error(path, ln, "vertex line needs three coordinates"));
        }
        vertices.push(Point3::new(
            parse_f64(toks[0], path, ln)?,
            parse_f64(toks[1], path, ln)?,
            parse_f64(toks[2], path, ln)?,
        ));
    }

    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| parse_error(path, 0, "unexpected end of file in face block"))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.is_empty() || toks[0] != "3" {
            return Err(parse_error(path, ln, "only triangular faces are supported"));
        }
        if toks.len() < 4 {
            return Err(parse_error(
                path,
                ln,
                "face line needs three vertex indices",
            ));
        }
        faces.push([
            parse_usize(toks[1], path, ln)?,
            parse_usize(toks[2], path, ln)?,
            parse_usize(toks[3], path, ln)?,
        ]);
    }
    SurfaceMesh::new(vertices, faces)
}

fn parse_obj(text: &str, path: &str) -> Result<SurfaceMesh, MeshError> {
    let mut vertices = Vec::new();
    let mut faces = Vec::new();
    for (ln, line) in content_lines(text) {
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("v") => {
                let xyz: Vec<&str> = toks.collect();
                if xyz.len() < 3 {
                    return Err(parse_error(path, ln, "v record needs three coordinates"));
                }
                vertices.push(Point3::new(
                    parse_f64(xyz[0], path, ln)?,
                    parse_f64(xyz[1], path, ln)?,
                    parse_f64(xyz[2], path, ln)?,
                ));
            }
            Some("f") => {
                let idx: Vec<&str> = toks.collect();
                if idx.len() != 3 {
                    return Err(parse_error(
                        path,
                        ln,
                        "only triangular f records are supported",
                    ));
                }
                let mut face = [0usize; 3];
                for (slot, tok) in face.iter_mut().zip(&idx) {
                    if tok.contains('/') {
                        return Err(parse_error(
                            path,
                            ln,
                            "texture/normal slots are not supported",
                        ));
                    }
                    let one_based = parse_usize(tok, path, ln)?;
                    if one_based == 0 {
                        return Err(parse_error(path, ln, "f indices are 1-based"));
                    }
                    *slot = one_based - 1;
                }
                faces.push(face);
            }
            // Harmless records of the wider format are skipped.
            Some("o") | Some("g") | Some("s") | Some("usemtl") | Some("mtllib") => {}
            Some(other) => {
                return Err(parse_error(
                    path,
                    ln,
                    format!("unsupported record {other:?}"),
                ));
            }
            None => {}
        }
    }
    SurfaceMesh::new(vertices, faces)
}

fn parse_node(text: &str, path: &str) -> Result<Vec<Point3<f64>>, MeshError> {
    let mut lines = content_lines(text);
    let (ln, counts) = lines
        .next()
        .ok_or_else(|| parse_error(path, 1, "empty node file"))?;
    let count = parse_usize(counts.split_whitespace().next().unwrap_or(""), path, ln)?;
    let mut vertices = Vec::with_capacity(count);
    for expect in 1..=count {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| parse_error(path, 0, "unexpected end of node file"))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() < 4 {
            return Err(parse_error(
                path,
                ln,
                "node line needs index and three coordinates",
            ));
        }
        let index = parse_usize(toks[0], path, ln)?;
        if index != expect {
            return Err(parse_error(
                path,
                ln,
                format!(
                    "node indices must be sequential and 1-based; expected {expect}, got {index}"
                ),
            ));
        }
        vertices.push(Point3::new(
            parse_f64(toks[1], path, ln)?,
            parse_f64(toks[2], path, ln)?,
            parse_f64(toks[3], path, ln)?,
        ));
    }
    Ok(vertices)
}

fn parse_ele(text: &str, path: &str, vertex_count: usize) -> Result<Vec<[usize; 4]>, MeshError> {
    let mut lines = content_lines(text);
    let (ln, counts) = lines
        .next()
        .ok_or_else(|| parse_error(path, 1, "empty ele file"))?;
    let count = parse_usize(counts.split_whitespace().next().unwrap_or(""), path, ln)?;
    let mut tets = Vec::with_capacity(count);
    for expect in 1..=count {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| parse_error(path, 0, "unexpected end of ele file"))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() < 5 {
            return Err(parse_error(
                path,
                ln,
                "ele line needs index and four vertex indices",
            ));
        }
        let index = parse_usize(toks[0], path, ln)?;
        if index != expect {
            return Err(parse_error(
                path,
                ln,
                format!(
                    "ele indices must be sequential and 1-based; expected {expect}, got {index}"
                ),
            ));
        }
        let mut tet = [0usize; 4];
        for (slot, tok) in tet.iter_mut().zip(&toks[1..5]) {
            let one_based = parse_usize(tok, path, ln)?;
            if one_based == 0 || one_based > vertex_count {
                return Err(parse_error(
                    path,
                    ln,
                    format!("vertex index {one_based} out of range 1..={vertex_count}"),
                ));
            }
            *slot = one_based - 1;
        }
        tets.push(tet);
    }
    Ok(tets)
}
