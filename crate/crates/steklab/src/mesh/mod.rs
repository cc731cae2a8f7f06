//! Simplicial meshes of domains and closed manifolds.
//!
//! A [`SimplicialMesh`] holds straight-sided simplices: segments, triangles
//! or tetrahedra. `dim` is the cell dimension; `ambient` is the coordinate
//! length, which exceeds `dim` for embedded hypersurfaces (the boundary of a
//! ball is a triangulated sphere with 3D coordinates, an imported genus-γ
//! surface likewise). Flat cylinders carry `periodic_pairs`; paired vertices
//! are distinct in the coordinate list but collapse to one degree of freedom
//! everywhere topology or assembly is concerned.

mod generate;
mod io;
mod refine;

pub use generate::{make_domain, DomainSpec};
pub use io::MeshFormat;

use crate::{Error, Result};
use std::collections::BTreeMap;

/// Tolerance below which two vertices count as duplicates (model coordinates
/// are O(1) by construction).
pub const DUPLICATE_TOL: f64 = 1e-12;

/// Analytic boundary description used by [`SimplicialMesh::refine`] to push
/// new boundary vertices back onto the exact shape. Imported meshes carry
/// `None` and refine along their polylines.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryShape {
    /// Circle of the given radius about the origin.
    Circle { radius: f64 },
    /// Star-shaped curve r(θ) sampled uniformly in θ, linearly interpolated.
    RadialProfile { samples: Vec<f64> },
    /// Annulus boundary: whichever circle is closer claims the midpoint.
    ConcentricCircles { r_in: f64, r_out: f64 },
    /// Sphere of the given radius about the origin.
    Sphere { radius: f64 },
}

#[derive(Debug, Clone)]
pub struct SimplicialMesh {
    dim: usize,
    ambient: usize,
    /// Flat coordinate list, `ambient`-strided.
    vertices: Vec<f64>,
    /// Flat cell list, `(dim+1)`-strided.
    cells: Vec<usize>,
    /// Flat oriented boundary facet list, `dim`-strided (original indices).
    boundary_facets: Vec<usize>,
    /// Sorted original indices of vertices on the boundary.
    boundary_vertices: Vec<usize>,
    periodic_pairs: Vec<(usize, usize)>,
    genus: Option<i64>,
    shape: Option<BoundaryShape>,
    /// vertex -> dof (periodic pairs collapsed), plus dof count.
    dof_of: Vec<usize>,
    n_dofs: usize,
}

/// Plain disjoint-set over vertex indices.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller root wins so representatives are deterministic
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

impl SimplicialMesh {
    /// Build and fully validate a mesh from raw parts. Boundary facets and
    /// vertices are always derived here, never trusted from input.
    pub fn from_parts(
        dim: usize,
        ambient: usize,
        vertices: Vec<f64>,
        cells: Vec<usize>,
        periodic_pairs: Vec<(usize, usize)>,
        genus: Option<i64>,
        shape: Option<BoundaryShape>,
    ) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidMesh(format!("unsupported dim {dim}")));
        }
        if ambient != dim && ambient != dim + 1 {
            return Err(Error::InvalidMesh(format!(
                "ambient {ambient} must be dim or dim+1 (dim {dim})"
            )));
        }
        if ambient == 0 || vertices.len() % ambient != 0 {
            return Err(Error::InvalidMesh(
                "vertex coordinate list length not a multiple of ambient".into(),
            ));
        }
        let nv = vertices.len() / ambient;
        if nv == 0 {
            return Err(Error::InvalidMesh("no vertices".into()));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidMesh("non-finite vertex coordinate".into()));
        }
        let cs = dim + 1;
        if cells.is_empty() || cells.len() % cs != 0 {
            return Err(Error::InvalidMesh(
                "cell list empty or length not a multiple of dim+1".into(),
            ));
        }
        for &v in &cells {
            if v >= nv {
                return Err(Error::InvalidMesh(format!(
                    "cell references vertex {v} out of range (n={nv})"
                )));
            }
        }
        for cell in cells.chunks(cs) {
            for i in 0..cs {
                for j in i + 1..cs {
                    if cell[i] == cell[j] {
                        return Err(Error::InvalidMesh(format!(
                            "cell {cell:?} repeats vertex {}",
                            cell[i]
                        )));
                    }
                }
            }
        }
        for &(a, b) in &periodic_pairs {
            if a >= nv || b >= nv || a == b {
                return Err(Error::InvalidMesh(format!(
                    "bad periodic pair ({a}, {b})"
                )));
            }
        }

        let (dof_of, n_dofs) = build_dof_map(nv, &periodic_pairs);

        let mut mesh = Self {
            dim,
            ambient,
            vertices,
            cells,
            boundary_facets: Vec::new(),
            boundary_vertices: Vec::new(),
            periodic_pairs,
            genus,
            shape,
            dof_of,
            n_dofs,
        };
        mesh.compute_boundary()?;
        mesh.check_orientation()?;
        mesh.check_duplicates()?;
        mesh.check_connected()?;
        mesh.check_boundary_not_degenerate()?;
        if mesh.genus.is_none() && mesh.dim == 2 {
            mesh.genus = Some(mesh.genus_from_euler());
        }
        Ok(mesh)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len() / self.ambient
    }

    pub fn vertex(&self, i: usize) -> &[f64] {
        &self.vertices[i * self.ambient..(i + 1) * self.ambient]
    }

    /// Flat coordinate storage, `ambient`-strided.
    pub fn coords(&self) -> &[f64] {
        &self.vertices
    }

    pub fn n_cells(&self) -> usize {
        self.cells.len() / (self.dim + 1)
    }

    pub fn cell(&self, c: usize) -> &[usize] {
        &self.cells[c * (self.dim + 1)..(c + 1) * (self.dim + 1)]
    }

    pub fn cells(&self) -> impl Iterator<Item = &[usize]> {
        self.cells.chunks(self.dim + 1)
    }

    pub fn n_boundary_facets(&self) -> usize {
        self.boundary_facets.len() / self.dim.max(1)
    }

    pub fn boundary_facet(&self, f: usize) -> &[usize] {
        &self.boundary_facets[f * self.dim..(f + 1) * self.dim]
    }

    pub fn boundary_facets(&self) -> impl Iterator<Item = &[usize]> {
        self.boundary_facets.chunks(self.dim.max(1))
    }

    /// Sorted original indices of vertices lying on the boundary.
    pub fn boundary_vertices(&self) -> &[usize] {
        &self.boundary_vertices
    }

    pub fn periodic_pairs(&self) -> &[(usize, usize)] {
        &self.periodic_pairs
    }

    pub fn genus(&self) -> Option<i64> {
        self.genus
    }

    pub(crate) fn shape(&self) -> Option<&BoundaryShape> {
        self.shape.as_ref()
    }

    pub fn is_closed(&self) -> bool {
        self.boundary_facets.is_empty()
    }

    /// Number of degrees of freedom after periodic identification.
    pub fn n_dofs(&self) -> usize {
        self.n_dofs
    }

    /// Degree of freedom owning vertex `v`.
    pub fn dof_of(&self, v: usize) -> usize {
        self.dof_of[v]
    }

    /// Sorted, deduplicated dof indices of the boundary.
    pub fn boundary_dofs(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.boundary_vertices.iter().map(|&v| self.dof_of[v]).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// One representative original vertex per dof, by ascending dof index.
    pub fn dof_representatives(&self) -> Vec<usize> {
        let mut rep = vec![usize::MAX; self.n_dofs];
        for v in (0..self.n_vertices()).rev() {
            rep[self.dof_of[v]] = v;
        }
        rep
    }

    /// Compress a per-vertex vector to per-dof values, reading the canonical
    /// representative of each identified group.
    pub fn vertex_values_to_dof(&self, values: &[f64]) -> Vec<f64> {
        assert_eq!(values.len(), self.n_vertices());
        let rep = self.dof_representatives();
        rep.iter().map(|&v| values[v]).collect()
    }

    /// Measure (length/area/volume) of cell `c`; signed when `ambient == dim`.
    pub fn cell_measure(&self, c: usize) -> f64 {
        let cell = self.cell(c);
        simplex_measure(self.dim, self.ambient, cell, &self.vertices)
    }

    /// Sum of cell measures.
    pub fn total_measure(&self) -> f64 {
        (0..self.n_cells()).map(|c| self.cell_measure(c)).sum()
    }

    /// Euclidean measure of boundary facet `f` (always unsigned).
    pub fn boundary_facet_measure(&self, f: usize) -> f64 {
        let facet = self.boundary_facet(f);
        simplex_measure(self.dim - 1, self.ambient, facet, &self.vertices)
            .abs()
    }

    /// Connected components of the boundary, as sorted dof-index sets.
    pub fn boundary_components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.n_dofs);
        for facet in self.boundary_facets() {
            let d0 = self.dof_of[facet[0]];
            for &v in &facet[1..] {
                uf.union(d0, self.dof_of[v]);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut bdofs = self.boundary_dofs();
        bdofs.sort_unstable();
        for d in bdofs {
            let root = uf.find(d);
            groups.entry(root).or_default().push(d);
        }
        groups.into_values().collect()
    }

    /// Euler characteristic in dof space: V - E + F (- T in 3D).
    pub fn euler_characteristic(&self) -> i64 {
        let v = self.n_dofs as i64;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for cell in self.cells() {
            let n = cell.len();
            for i in 0..n {
                for j in i + 1..n {
                    let (a, b) = (self.dof_of[cell[i]], self.dof_of[cell[j]]);
                    edges.push(if a < b { (a, b) } else { (b, a) });
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let e = edges.len() as i64;
        match self.dim {
            1 => v - e,
            2 => v - e + self.n_cells() as i64,
            3 => {
                let mut faces: Vec<[usize; 3]> = Vec::new();
                for cell in self.cells() {
                    for skip in 0..4 {
                        let mut f: Vec<usize> = (0..4)
                            .filter(|&i| i != skip)
                            .map(|i| self.dof_of[cell[i]])
                            .collect();
                        f.sort_unstable();
                        faces.push([f[0], f[1], f[2]]);
                    }
                }
                faces.sort_unstable();
                faces.dedup();
                v - e + faces.len() as i64 - self.n_cells() as i64
            }
            _ => unreachable!(),
        }
    }

    /// Genus of a surface mesh from χ and boundary component count:
    /// γ = (2 - χ - b) / 2.
    pub fn genus_from_euler(&self) -> i64 {
        debug_assert_eq!(self.dim, 2);
        let chi = self.euler_characteristic();
        let b = self.boundary_components().len() as i64;
        (2 - chi - b) / 2
    }

    /// Extract the boundary as a closed mesh of dimension `dim - 1`.
    /// Periodic pairs are merged, so a flat cylinder yields two genuine
    /// circles; coordinates come from the canonical representative.
    pub fn boundary_of(&self) -> Result<SimplicialMesh> {
        if self.dim < 2 {
            return Err(Error::InvalidInput(
                "boundary extraction needs a mesh of dimension >= 2".into(),
            ));
        }
        if self.boundary_facets.is_empty() {
            return Err(Error::InvalidInput("mesh is closed: empty boundary".into()));
        }
        let rep = self.dof_representatives();
        let mut used: Vec<usize> = self
            .boundary_facets
            .iter()
            .map(|&v| self.dof_of[v])
            .collect();
        used.sort_unstable();
        used.dedup();
        let mut new_index = vec![usize::MAX; self.n_dofs];
        let mut coords = Vec::with_capacity(used.len() * self.ambient);
        for (k, &d) in used.iter().enumerate() {
            new_index[d] = k;
            coords.extend_from_slice(self.vertex(rep[d]));
        }
        let cells: Vec<usize> = self
            .boundary_facets
            .iter()
            .map(|&v| new_index[self.dof_of[v]])
            .collect();
        SimplicialMesh::from_parts(
            self.dim - 1,
            self.ambient,
            coords,
            cells,
            Vec::new(),
            None,
            self.shape.clone(),
        )
    }

    // ---- validation pieces -------------------------------------------------

    /// Enumerate facets of all cells, counting incidence in dof space.
    /// Exactly-once facets form the boundary (with their induced outward
    /// orientation); three or more incidences is non-manifold.
    fn compute_boundary(&mut self) -> Result<()> {
        let cs = self.dim + 1;
        // key: sorted dof tuple -> (count, oriented original facet)
        let mut incidence: BTreeMap<Vec<usize>, (usize, Vec<usize>)> = BTreeMap::new();
        for cell in self.cells.chunks(cs) {
            for skip in 0..cs {
                let mut facet: Vec<usize> = Vec::with_capacity(self.dim);
                for (i, &v) in cell.iter().enumerate() {
                    if i != skip {
                        facet.push(v);
                    }
                }
                // boundary orientation: ∂[v0..vd] = Σ (-1)^i [.. v̂i ..]
                if skip % 2 == 1 && facet.len() >= 2 {
                    facet.swap(0, 1);
                }
                let mut key: Vec<usize> = facet.iter().map(|&v| self.dof_of[v]).collect();
                key.sort_unstable();
                let entry = incidence.entry(key).or_insert((0, facet));
                entry.0 += 1;
            }
        }
        let mut facets = Vec::new();
        for (key, (count, facet)) in incidence {
            match count {
                1 => facets.extend_from_slice(&facet),
                2 => {}
                n => {
                    return Err(Error::NonManifold(format!(
                        "facet {key:?} belongs to {n} cells"
                    )))
                }
            }
        }
        self.boundary_facets = facets;
        let mut bv: Vec<usize> = self.boundary_facets.clone();
        bv.sort_unstable();
        bv.dedup();
        self.boundary_vertices = bv;
        Ok(())
    }

    fn check_orientation(&self) -> Result<()> {
        if self.ambient == self.dim {
            for c in 0..self.n_cells() {
                let m = self.cell_measure(c);
                if !(m > 0.0) {
                    return Err(Error::Orientation(format!(
                        "cell {c} has non-positive signed measure {m:e}"
                    )));
                }
            }
            return Ok(());
        }
        // Embedded mesh: interior facets must be traversed in opposite
        // directions by their two cells.
        let cs = self.dim + 1;
        let mut seen: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
        for cell in self.cells.chunks(cs) {
            for skip in 0..cs {
                let mut facet: Vec<usize> = Vec::with_capacity(self.dim);
                for (i, &v) in cell.iter().enumerate() {
                    if i != skip {
                        facet.push(v);
                    }
                }
                if skip % 2 == 1 && facet.len() >= 2 {
                    facet.swap(0, 1);
                }
                let oriented: Vec<usize> = facet.iter().map(|&v| self.dof_of[v]).collect();
                let mut key = oriented.clone();
                key.sort_unstable();
                seen.entry(key).or_default().push(oriented);
            }
        }
        for (key, orients) in seen {
            if orients.len() == 2 && !opposite_orientation(&orients[0], &orients[1]) {
                return Err(Error::Orientation(format!(
                    "facet {key:?} traversed twice in the same direction"
                )));
            }
        }
        // degenerate cells (zero measure) are orientation errors too
        for c in 0..self.n_cells() {
            if self.cell_measure(c).abs() < 1e-300 {
                return Err(Error::Orientation(format!("cell {c} is degenerate")));
            }
        }
        Ok(())
    }

    fn check_duplicates(&self) -> Result<()> {
        let n = self.n_vertices();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            self.vertex(a)[0]
                .partial_cmp(&self.vertex(b)[0])
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        for (k, &i) in order.iter().enumerate() {
            for &j in order[k + 1..].iter() {
                if self.vertex(j)[0] - self.vertex(i)[0] > DUPLICATE_TOL {
                    break;
                }
                let d2: f64 = self
                    .vertex(i)
                    .iter()
                    .zip(self.vertex(j))
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                if d2.sqrt() <= DUPLICATE_TOL {
                    return Err(Error::InvalidMesh(format!(
                        "duplicate vertices {i} and {j}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_connected(&self) -> Result<()> {
        let mut uf = UnionFind::new(self.n_dofs);
        for cell in self.cells() {
            let d0 = self.dof_of[cell[0]];
            for &v in &cell[1..] {
                uf.union(d0, self.dof_of[v]);
            }
        }
        let root = uf.find(0);
        for d in 1..self.n_dofs {
            if uf.find(d) != root {
                return Err(Error::InvalidMesh(format!(
                    "mesh is disconnected (dof {d} unreachable)"
                )));
            }
        }
        Ok(())
    }

    fn check_boundary_not_degenerate(&self) -> Result<()> {
        for comp in self.boundary_components() {
            if comp.len() < 3 {
                return Err(Error::DegenerateMesh(format!(
                    "boundary component with only {} vertices",
                    comp.len()
                )));
            }
        }
        Ok(())
    }
}

/// True when two listings of the same facet walk it with opposite
/// orientation (even vs odd permutation of each other).
fn opposite_orientation(a: &[usize], b: &[usize]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    match a.len() {
        1 => false,
        2 => a[0] == b[1] && a[1] == b[0],
        3 => {
            // cyclic rotations of b give the same orientation
            let same = (0..3).any(|r| (0..3).all(|i| a[i] == b[(i + r) % 3]));
            !same
        }
        _ => unreachable!(),
    }
}

fn build_dof_map(nv: usize, pairs: &[(usize, usize)]) -> (Vec<usize>, usize) {
    let mut uf = UnionFind::new(nv);
    for &(a, b) in pairs {
        uf.union(a, b);
    }
    let mut map = vec![usize::MAX; nv];
    let mut next = 0usize;
    let mut root_id: BTreeMap<usize, usize> = BTreeMap::new();
    for v in 0..nv {
        let r = uf.find(v);
        let id = *root_id.entry(r).or_insert_with(|| {
            let id = next;
            next += 1;
            id
        });
        map[v] = id;
    }
    (map, next)
}

/// Measure of a k-simplex given by `verts` indices into a flat coordinate
/// array. Signed for `k == ambient`, unsigned otherwise.
pub fn simplex_measure(k: usize, ambient: usize, verts: &[usize], coords: &[f64]) -> f64 {
    let p = |i: usize| &coords[verts[i] * ambient..(verts[i] + 1) * ambient];
    match (k, ambient) {
        (0, _) => 1.0,
        (1, _) => {
            let (a, b) = (p(0), p(1));
            a.iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt()
        }
        (2, 2) => {
            let (a, b, c) = (p(0), p(1), p(2));
            0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
        }
        (2, 3) => {
            let (a, b, c) = (p(0), p(1), p(2));
            let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
            let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
            let cx = u[1] * v[2] - u[2] * v[1];
            let cy = u[2] * v[0] - u[0] * v[2];
            let cz = u[0] * v[1] - u[1] * v[0];
            0.5 * (cx * cx + cy * cy + cz * cz).sqrt()
        }
        (3, 3) => {
            let (a, b, c, d) = (p(0), p(1), p(2), p(3));
            let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
            let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
            let w = [d[0] - a[0], d[1] - a[1], d[2] - a[2]];
            let det = u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0])
                + u[2] * (v[0] * w[1] - v[1] * w[0]);
            det / 6.0
        }
        _ => panic!("unsupported simplex (k={k}, ambient={ambient})"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_triangle() -> SimplicialMesh {
        SimplicialMesh::from_parts(
            2,
            2,
            vec![0.0, 0.0, 1.0, 0.0, 0.0, 1.0],
            vec![0, 1, 2],
            Vec::new(),
            None,
            None,
        )
        .unwrap()
    }

    #[test]
    fn triangle_boundary_and_measure() {
        let m = single_triangle();
        assert_eq!(m.n_boundary_facets(), 3);
        assert_eq!(m.boundary_vertices(), &[0, 1, 2]);
        assert!((m.total_measure() - 0.5).abs() < 1e-15);
        assert_eq!(m.genus(), Some(0));
    }

    #[test]
    fn inverted_triangle_is_orientation_error() {
        let err = SimplicialMesh::from_parts(
            2,
            2,
            vec![0.0, 0.0, 1.0, 0.0, 0.0, 1.0],
            vec![0, 2, 1],
            Vec::new(),
            None,
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Orientation(_)));
    }

    #[test]
    fn nonmanifold_edge_detected() {
        // three triangles sharing edge (0,1)
        let err = SimplicialMesh::from_parts(
            2,
            2,
            vec![0.0, 0.0, 1.0, 0.0, 0.5, 1.0, 0.5, -1.0, 2.0, 0.5],
            vec![0, 1, 2, 0, 3, 1, 0, 1, 4],
            Vec::new(),
            None,
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonManifold(_)));
    }

    #[test]
    fn duplicate_vertex_detected() {
        let err = SimplicialMesh::from_parts(
            2,
            2,
            vec![0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 1e-14, 1e-14],
            vec![0, 1, 2, 1, 3, 2],
            Vec::new(),
            None,
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidMesh(_)));
    }

    #[test]
    fn disconnected_mesh_detected() {
        let err = SimplicialMesh::from_parts(
            2,
            2,
            vec![
                0.0, 0.0, 1.0, 0.0, 0.0, 1.0, // first triangle
                10.0, 10.0, 11.0, 10.0, 10.0, 11.0, // far away second
            ],
            vec![0, 1, 2, 3, 4, 5],
            Vec::new(),
            None,
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidMesh(_)));
    }

    #[test]
    fn two_triangle_square_boundary() {
        let m = SimplicialMesh::from_parts(
            2,
            2,
            vec![0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0],
            vec![0, 1, 2, 0, 2, 3],
            Vec::new(),
            None,
            None,
        )
        .unwrap();
        assert_eq!(m.n_boundary_facets(), 4);
        assert!((m.total_measure() - 1.0).abs() < 1e-15);
        // boundary walks CCW: each directed edge appears head-to-tail
        let b = m.boundary_of().unwrap();
        assert_eq!(b.dim(), 1);
        assert!(b.is_closed());
        assert_eq!(b.n_cells(), 4);
    }

    #[test]
    fn periodic_pairs_merge_dofs() {
        // strip of two squares, right edge glued to left edge
        // x: 0, 1, 2 with (x=0) ~ (x=2)
        let mut verts = Vec::new();
        for j in 0..2 {
            for i in 0..3 {
                verts.extend_from_slice(&[i as f64, j as f64]);
            }
        }
        let cells = vec![0, 1, 4, 0, 4, 3, 1, 2, 5, 1, 5, 4];
        let pairs = vec![(0, 2), (3, 5)];
        let m = SimplicialMesh::from_parts(2, 2, verts, cells, pairs, None, None).unwrap();
        assert_eq!(m.n_dofs(), 4);
        // seam edge is interior now: boundary is top and bottom loops
        assert_eq!(m.boundary_components().len(), 2);
        assert_eq!(m.euler_characteristic(), 0); // cylinder
        assert_eq!(m.genus(), Some(0));
    }

    #[test]
    fn tet_boundary_is_closed_sphere() {
        let m = SimplicialMesh::from_parts(
            3,
            3,
            vec![0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0],
            vec![0, 1, 2, 3],
            Vec::new(),
            None,
            None,
        )
        .unwrap();
        assert!((m.total_measure() - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(m.n_boundary_facets(), 4);
        let s = m.boundary_of().unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.ambient(), 3);
        assert!(s.is_closed());
        assert_eq!(s.euler_characteristic(), 2);
    }

    #[test]
    fn outward_face_orientation_via_divergence() {
        // volume = (1/3) ∮ x·n dA over outward faces, checked per facet
        // ordering produced by compute_boundary for a positive tet
        let m = SimplicialMesh::from_parts(
            3,
            3,
            vec![0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0],
            vec![0, 1, 2, 3],
            Vec::new(),
            None,
            None,
        )
        .unwrap();
        let mut flux = 0.0;
        for f in 0..m.n_boundary_facets() {
            let fa = m.boundary_facet(f);
            let (a, b, c) = (m.vertex(fa[0]), m.vertex(fa[1]), m.vertex(fa[2]));
            let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
            let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
            let n = [
                u[1] * v[2] - u[2] * v[1],
                u[2] * v[0] - u[0] * v[2],
                u[0] * v[1] - u[1] * v[0],
            ];
            let centroid = [
                (a[0] + b[0] + c[0]) / 3.0,
                (a[1] + b[1] + c[1]) / 3.0,
                (a[2] + b[2] + c[2]) / 3.0,
            ];
            flux += 0.5 * (n[0] * centroid[0] + n[1] * centroid[1] + n[2] * centroid[2]);
        }
        let vol = flux / 3.0;
        assert!((vol - 1.0 / 6.0).abs() < 1e-14, "flux volume {vol}");
    }
}
