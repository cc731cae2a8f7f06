//! Mesh import/export: OFF (triangle surfaces) and a JSON schema.
//!
//! Both parsers accept untrusted bytes: every failure is a typed error,
//! never a panic, and the allocation size is bounded by the input length.
//!
//! JSON schema:
//! ```json
//! {
//!   "dim": 2,
//!   "vertices": [[x, y], ...],
//!   "cells": [[a, b, c], ...],
//!   "periodic_pairs": [[i, j], ...],   // optional
//!   "genus": 0                         // optional
//! }
//! ```
//! Exporting and re-importing reproduces the mesh bit-exactly.

use super::SimplicialMesh;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum MeshFormat {
    Off,
    Json,
}

#[derive(Serialize, Deserialize)]
struct MeshJson {
    dim: usize,
    vertices: Vec<Vec<f64>>,
    cells: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    periodic_pairs: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    genus: Option<i64>,
}

/// Read a mesh file and validate it against all mesh invariants.
pub fn import_mesh(path: &Path, format: MeshFormat) -> Result<SimplicialMesh> {
    let bytes = std::fs::read(path)?;
    match format {
        MeshFormat::Off => parse_off(&bytes),
        MeshFormat::Json => parse_json_mesh(&bytes),
    }
}

/// Parse an OFF triangle mesh. Vertices carry 3 coordinates; if all z are
/// zero within 1e-12 the mesh is imported as a flat 2D domain, otherwise as
/// a surface embedded in 3-space.
pub fn parse_off(bytes: &[u8]) -> Result<SimplicialMesh> {
    let text = std::str::from_utf8(bytes)
        .map_err(|_| Error::ParseFailure("OFF file is not valid UTF-8".into()))?;
    let mut tokens = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split_whitespace());
    let header = tokens
        .next()
        .ok_or_else(|| Error::ParseFailure("empty OFF file".into()))?;
    if header != "OFF" {
        return Err(Error::ParseFailure(format!(
            "expected OFF header, found {header:?}"
        )));
    }
    let mut next_usize = |what: &str, tokens: &mut dyn Iterator<Item = &str>| -> Result<usize> {
        let t = tokens
            .next()
            .ok_or_else(|| Error::ParseFailure(format!("missing {what}")))?;
        t.parse::<usize>()
            .map_err(|_| Error::ParseFailure(format!("bad {what}: {t:?}")))
    };
    let nv = next_usize("vertex count", &mut tokens)?;
    let nf = next_usize("face count", &mut tokens)?;
    let _ne = next_usize("edge count", &mut tokens)?;
    // each vertex needs >= 3 tokens, each face >= 4; cap counts by input size
    if nv.saturating_mul(3) + nf.saturating_mul(4) > bytes.len() {
        return Err(Error::ParseFailure(
            "vertex/face counts exceed file size".into(),
        ));
    }
    let mut coords = Vec::with_capacity(nv * 3);
    for i in 0..nv {
        for k in 0..3 {
            let t = tokens.next().ok_or_else(|| {
                Error::ParseFailure(format!("vertex {i}: missing coordinate {k}"))
            })?;
            let v: f64 = t
                .parse()
                .map_err(|_| Error::ParseFailure(format!("vertex {i}: bad coordinate {t:?}")))?;
            if !v.is_finite() {
                return Err(Error::ParseFailure(format!(
                    "vertex {i}: non-finite coordinate"
                )));
            }
            coords.push(v);
        }
    }
    let mut cells = Vec::with_capacity(nf * 3);
    for f in 0..nf {
        let arity = next_usize("face arity", &mut tokens)?;
        if arity != 3 {
            return Err(Error::ParseFailure(format!(
                "face {f}: only triangles supported, got arity {arity}"
            )));
        }
        for _ in 0..3 {
            cells.push(next_usize("face index", &mut tokens)?);
        }
    }
    let flat = coords.chunks(3).all(|c| c[2].abs() <= 1e-12);
    let (ambient, verts) = if flat {
        (
            2,
            coords
                .chunks(3)
                .flat_map(|c| [c[0], c[1]])
                .collect::<Vec<f64>>(),
        )
    } else {
        (3, coords)
    };
    SimplicialMesh::from_parts(2, ambient, verts, cells, Vec::new(), None, None)
}

/// Parse the JSON mesh schema.
pub fn parse_json_mesh(bytes: &[u8]) -> Result<SimplicialMesh> {
    let mj: MeshJson =
        serde_json::from_slice(bytes).map_err(|e| Error::ParseFailure(e.to_string()))?;
    if mj.vertices.is_empty() {
        return Err(Error::ParseFailure("no vertices".into()));
    }
    let width = mj.vertices[0].len();
    if width != mj.dim && width != mj.dim + 1 {
        return Err(Error::ParseFailure(format!(
            "vertex coordinate length {width} incompatible with dim {}",
            mj.dim
        )));
    }
    let mut verts = Vec::with_capacity(mj.vertices.len() * width);
    for (i, v) in mj.vertices.iter().enumerate() {
        if v.len() != width {
            return Err(Error::ParseFailure(format!(
                "vertex {i} has {} coordinates, expected {width}",
                v.len()
            )));
        }
        verts.extend_from_slice(v);
    }
    let mut cells = Vec::with_capacity(mj.cells.len() * (mj.dim + 1));
    for (c, cell) in mj.cells.iter().enumerate() {
        if cell.len() != mj.dim + 1 {
            return Err(Error::ParseFailure(format!(
                "cell {c} has {} vertices, expected {}",
                cell.len(),
                mj.dim + 1
            )));
        }
        cells.extend_from_slice(cell);
    }
    SimplicialMesh::from_parts(
        mj.dim,
        width,
        verts,
        cells,
        mj.periodic_pairs.unwrap_or_default(),
        mj.genus,
        None,
    )
}

impl SimplicialMesh {
    /// Serialize to the JSON schema (pretty-printed, shortest round-trip
    /// float form, so export → import is bit-exact).
    pub fn to_json(&self) -> String {
        let mj = MeshJson {
            dim: self.dim(),
            vertices: (0..self.n_vertices())
                .map(|i| self.vertex(i).to_vec())
                .collect(),
            cells: self.cells().map(|c| c.to_vec()).collect(),
            periodic_pairs: if self.periodic_pairs().is_empty() {
                None
            } else {
                Some(self.periodic_pairs().to_vec())
            },
            genus: self.genus(),
        };
        serde_json::to_string_pretty(&mj).expect("mesh serialization cannot fail")
    }
}
