//! Midpoint refinement with analytic boundary projection.

use super::{simplex_measure, BoundaryShape, SimplicialMesh};
use crate::Result;
use std::collections::BTreeMap;

impl SimplicialMesh {
    /// Split every cell through its edge midpoints: 2 children per segment,
    /// 4 per triangle, 8 per tetrahedron (Bey's rule). When the mesh carries
    /// a generator shape, midpoints created on the analytic boundary are
    /// projected back onto it; imported meshes refine along their polylines.
    /// Periodic pairs propagate to midpoints of paired edges.
    pub fn refine(&self) -> Result<SimplicialMesh> {
        let ambient = self.ambient;
        let mut verts = self.vertices.clone();
        let mut midpoint: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut mid_of = |a: usize, b: usize, verts: &mut Vec<f64>| -> usize {
            let key = if a < b { (a, b) } else { (b, a) };
            if let Some(&m) = midpoint.get(&key) {
                return m;
            }
            let idx = verts.len() / ambient;
            for k in 0..ambient {
                let va = verts[a * ambient + k];
                let vb = verts[b * ambient + k];
                verts.push(0.5 * (va + vb));
            }
            midpoint.insert(key, idx);
            idx
        };

        let mut cells = Vec::with_capacity(self.cells.len() * 4);
        match self.dim {
            1 => {
                for cell in self.cells() {
                    let (a, b) = (cell[0], cell[1]);
                    let m = mid_of(a, b, &mut verts);
                    cells.extend_from_slice(&[a, m, m, b]);
                }
            }
            2 => {
                for cell in self.cells() {
                    let (a, b, c) = (cell[0], cell[1], cell[2]);
                    let mab = mid_of(a, b, &mut verts);
                    let mbc = mid_of(b, c, &mut verts);
                    let mca = mid_of(c, a, &mut verts);
                    cells.extend_from_slice(&[a, mab, mca]);
                    cells.extend_from_slice(&[b, mbc, mab]);
                    cells.extend_from_slice(&[c, mca, mbc]);
                    cells.extend_from_slice(&[mab, mbc, mca]);
                }
            }
            3 => {
                for cell in self.cells() {
                    let v = [cell[0], cell[1], cell[2], cell[3]];
                    let m01 = mid_of(v[0], v[1], &mut verts);
                    let m02 = mid_of(v[0], v[2], &mut verts);
                    let m03 = mid_of(v[0], v[3], &mut verts);
                    let m12 = mid_of(v[1], v[2], &mut verts);
                    let m13 = mid_of(v[1], v[3], &mut verts);
                    let m23 = mid_of(v[2], v[3], &mut verts);
                    let children = [
                        [v[0], m01, m02, m03],
                        [m01, v[1], m12, m13],
                        [m02, m12, v[2], m23],
                        [m03, m13, m23, v[3]],
                        // central octahedron around the (m02, m13) diagonal
                        [m02, m13, m01, m03],
                        [m02, m13, m03, m23],
                        [m02, m13, m23, m12],
                        [m02, m13, m12, m01],
                    ];
                    for child in children {
                        let mut child = child;
                        if simplex_measure(3, 3, &child, &verts) < 0.0 {
                            child.swap(2, 3);
                        }
                        cells.extend_from_slice(&child);
                    }
                }
            }
            _ => unreachable!(),
        }

        // project newly created boundary midpoints onto the analytic shape
        if let Some(shape) = &self.shape {
            let mut boundary_mids: Vec<usize> = Vec::new();
            if self.is_closed() {
                // the whole mesh lies on the shape (boundary circle/sphere)
                boundary_mids.extend(midpoint.values().copied());
            } else {
                for facet in self.boundary_facets() {
                    match facet.len() {
                        1 => {}
                        2 => {
                            let key = sorted2(facet[0], facet[1]);
                            if let Some(&m) = midpoint.get(&key) {
                                boundary_mids.push(m);
                            }
                        }
                        3 => {
                            for (i, j) in [(0, 1), (1, 2), (2, 0)] {
                                let key = sorted2(facet[i], facet[j]);
                                if let Some(&m) = midpoint.get(&key) {
                                    boundary_mids.push(m);
                                }
                            }
                        }
                        _ => unreachable!(),
                    }
                }
            }
            boundary_mids.sort_unstable();
            boundary_mids.dedup();
            for m in boundary_mids {
                let p = &mut verts[m * ambient..(m + 1) * ambient];
                project(shape, p);
            }
        }

        // midpoints of periodically identified edges pair up as well
        let mut partner: BTreeMap<usize, usize> = BTreeMap::new();
        for &(a, b) in &self.periodic_pairs {
            partner.insert(a, b);
            partner.insert(b, a);
        }
        let mut pairs = self.periodic_pairs.clone();
        for (&(a, b), &m) in midpoint.iter() {
            if let (Some(&pa), Some(&pb)) = (partner.get(&a), partner.get(&b)) {
                let pkey = sorted2(pa, pb);
                if let Some(&pm) = midpoint.get(&pkey) {
                    if m < pm {
                        pairs.push((m, pm));
                    }
                }
            }
        }

        SimplicialMesh::from_parts(
            self.dim,
            ambient,
            verts,
            cells,
            pairs,
            self.genus,
            self.shape.clone(),
        )
    }
}

fn sorted2(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn project(shape: &BoundaryShape, p: &mut [f64]) {
    match shape {
        BoundaryShape::Circle { radius } => scale_to_radius(p, *radius),
        BoundaryShape::Sphere { radius } => scale_to_radius(p, *radius),
        BoundaryShape::ConcentricCircles { r_in, r_out } => {
            let r = norm(p);
            let target = if (r - r_in).abs() <= (r - r_out).abs() {
                *r_in
            } else {
                *r_out
            };
            scale_to_radius(p, target);
        }
        BoundaryShape::RadialProfile { samples } => {
            let theta = p[1].atan2(p[0]);
            let r = super::generate::eval_profile(samples, theta);
            p[0] = r * theta.cos();
            p[1] = r * theta.sin();
        }
    }
}

fn norm(p: &[f64]) -> f64 {
    p.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn scale_to_radius(p: &mut [f64], radius: f64) {
    let r = norm(p);
    if r > 0.0 {
        let s = radius / r;
        for x in p {
            *x *= s;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{make_domain, DomainSpec};
    use std::f64::consts::PI;

    #[test]
    fn disk_refine_quadruples_cells_and_projects() {
        let m = make_domain(&DomainSpec::UnitDisk { refinement: 2 }).unwrap();
        let r = m.refine().unwrap();
        assert_eq!(r.n_cells(), 4 * m.n_cells());
        assert_eq!(
            r.boundary_vertices().len(),
            2 * m.boundary_vertices().len()
        );
        // all boundary vertices on the unit circle after projection
        for &v in r.boundary_vertices() {
            let p = r.vertex(v);
            assert!((norm(p) - 1.0).abs() < 1e-14);
        }
        // perimeter strictly increases toward 2π
        let len_m: f64 = (0..m.n_boundary_facets())
            .map(|f| m.boundary_facet_measure(f))
            .sum();
        let len_r: f64 = (0..r.n_boundary_facets())
            .map(|f| r.boundary_facet_measure(f))
            .sum();
        assert!(len_m < len_r && len_r < 2.0 * PI);
    }

    #[test]
    fn imported_mesh_keeps_polyline_boundary() {
        // a mesh without a shape tag: midpoints stay on the chords
        let m = crate::mesh::SimplicialMesh::from_parts(
            2,
            2,
            vec![0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0],
            vec![0, 1, 2, 0, 2, 3],
            Vec::new(),
            None,
            None,
        )
        .unwrap();
        let r = m.refine().unwrap();
        for &v in r.boundary_vertices() {
            let p = r.vertex(v);
            let on_square = p[0].abs() < 1e-15
                || p[1].abs() < 1e-15
                || (p[0] - 1.0).abs() < 1e-15
                || (p[1] - 1.0).abs() < 1e-15;
            assert!(on_square, "vertex {p:?} left the square");
        }
        assert_eq!(r.n_cells(), 8);
    }

    #[test]
    fn cylinder_refine_preserves_pairing_and_components() {
        let m = make_domain(&DomainSpec::FlatCylinder {
            circumference: 2.0 * PI,
            length: 2.0,
            refinement: 1,
        })
        .unwrap();
        let r = m.refine().unwrap();
        assert_eq!(r.boundary_components().len(), 2);
        assert_eq!(r.euler_characteristic(), 0);
        assert!(r.periodic_pairs().len() > m.periodic_pairs().len());
        assert!((r.total_measure() - 4.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn ball_refine_keeps_positive_volumes() {
        let m = make_domain(&DomainSpec::UnitBall { refinement: 1 }).unwrap();
        let r = m.refine().unwrap();
        assert_eq!(r.n_cells(), 8 * m.n_cells());
        // from_parts would have rejected non-positive cells; volume grows
        // toward 4π/3 as the boundary is projected outward
        assert!(r.total_measure() > m.total_measure());
        for &v in r.boundary_vertices() {
            assert!((norm(r.vertex(v)) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn refined_circle_boundary_doubles_vertices() {
        let m = make_domain(&DomainSpec::UnitDisk { refinement: 1 }).unwrap();
        let b = m.boundary_of().unwrap();
        let rb = b.refine().unwrap();
        assert_eq!(rb.n_vertices(), 2 * b.n_vertices());
        // inherited circle shape: refined midpoints pushed onto the circle
        for v in 0..rb.n_vertices() {
            assert!((norm(rb.vertex(v)) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn star_refine_projects_to_profile() {
        let samples: Vec<f64> = (0..64)
            .map(|i| {
                let th = 2.0 * PI * i as f64 / 64.0;
                1.0 + 0.1 * (3.0 * th).cos()
            })
            .collect();
        let m = make_domain(&DomainSpec::StarShaped {
            radius_samples: samples.clone(),
            refinement: 2,
        })
        .unwrap();
        let r = m.refine().unwrap();
        for &v in r.boundary_vertices() {
            let p = r.vertex(v);
            let theta = p[1].atan2(p[0]);
            let want = crate::mesh::generate::eval_profile(&samples, theta);
            assert!((norm(p) - want).abs() < 1e-12);
        }
    }
}
