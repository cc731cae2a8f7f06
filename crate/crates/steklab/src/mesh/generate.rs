//! Structured generators for the built-in domain families.

use super::{BoundaryShape, SimplicialMesh};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Built-in domain families plus file import.
///
/// `refinement` halves the mesh size parameter per unit: a disk at
/// refinement `r` has `6·2^r` boundary vertices and `6·4^r` triangles.
/// `flat_cylinder` spans `[0, circumference] × [-length/2, length/2]` with
/// the vertical seam identified, so its boundary is two circles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DomainSpec {
    UnitDisk {
        refinement: u32,
    },
    StarShaped {
        /// r(θ) sampled at uniformly spaced angles, linearly interpolated.
        radius_samples: Vec<f64>,
        refinement: u32,
    },
    Annulus {
        r_in: f64,
        r_out: f64,
        refinement: u32,
    },
    FlatCylinder {
        circumference: f64,
        /// Full length 2L.
        length: f64,
        refinement: u32,
    },
    UnitBall {
        refinement: u32,
    },
    Import {
        path: String,
        format: super::MeshFormat,
    },
}

const MAX_REFINEMENT: u32 = 10;

/// Build the mesh described by `spec`.
pub fn make_domain(spec: &DomainSpec) -> Result<SimplicialMesh> {
    match spec {
        DomainSpec::UnitDisk { refinement } => {
            check_refinement(*refinement)?;
            radial_mesh(&[1.0], *refinement, BoundaryShape::Circle { radius: 1.0 })
        }
        DomainSpec::StarShaped {
            radius_samples,
            refinement,
        } => {
            check_refinement(*refinement)?;
            if radius_samples.is_empty() {
                return Err(Error::InvalidSpec("star profile needs radius samples".into()));
            }
            if radius_samples.iter().any(|&r| !(r > 0.0) || !r.is_finite()) {
                return Err(Error::InvalidSpec(
                    "star radius samples must be positive and finite".into(),
                ));
            }
            radial_mesh(
                radius_samples,
                *refinement,
                BoundaryShape::RadialProfile {
                    samples: radius_samples.clone(),
                },
            )
        }
        DomainSpec::Annulus {
            r_in,
            r_out,
            refinement,
        } => {
            check_refinement(*refinement)?;
            if !(*r_in > 0.0) || !(*r_out > 0.0) || !r_in.is_finite() || !r_out.is_finite() {
                return Err(Error::InvalidSpec("annulus radii must be positive".into()));
            }
            if r_in >= r_out {
                return Err(Error::InvalidSpec(format!(
                    "annulus needs r_in < r_out (got {r_in} >= {r_out})"
                )));
            }
            annulus_mesh(*r_in, *r_out, *refinement)
        }
        DomainSpec::FlatCylinder {
            circumference,
            length,
            refinement,
        } => {
            check_refinement(*refinement)?;
            if !(*circumference > 0.0) || !(*length > 0.0) {
                return Err(Error::InvalidSpec(
                    "cylinder circumference and length must be positive".into(),
                ));
            }
            cylinder_mesh(*circumference, *length, *refinement)
        }
        DomainSpec::UnitBall { refinement } => {
            if *refinement > 6 {
                return Err(Error::InvalidSpec(format!(
                    "ball refinement {refinement} too large (max 6)"
                )));
            }
            ball_mesh(*refinement)
        }
        DomainSpec::Import { path, format } => super::io::import_mesh(path.as_ref(), *format),
    }
}

fn check_refinement(r: u32) -> Result<()> {
    if r > MAX_REFINEMENT {
        return Err(Error::InvalidSpec(format!(
            "refinement {r} too large (max {MAX_REFINEMENT})"
        )));
    }
    Ok(())
}

/// Periodic linear interpolation of r(θ) from uniform samples.
pub(crate) fn eval_profile(samples: &[f64], theta: f64) -> f64 {
    let n = samples.len();
    if n == 1 {
        return samples[0];
    }
    let t = theta.rem_euclid(TAU) / TAU * n as f64;
    let i = (t.floor() as usize) % n;
    let frac = t - t.floor();
    let a = samples[i];
    let b = samples[(i + 1) % n];
    a + frac * (b - a)
}

/// Hexagonal-ring triangulation of a star-shaped region: ring `i` of `R`
/// carries `6i` vertices at radius `(i/R)·r(θ)`, stitched sextant by
/// sextant. A constant profile reproduces the unit disk exactly.
fn radial_mesh(profile: &[f64], refinement: u32, shape: BoundaryShape) -> Result<SimplicialMesh> {
    let rings = 1usize << refinement;
    let mut verts: Vec<f64> = vec![0.0, 0.0];
    for i in 1..=rings {
        let n = 6 * i;
        let frac = i as f64 / rings as f64;
        for m in 0..n {
            let theta = TAU * m as f64 / n as f64;
            let r = frac * eval_profile(profile, theta);
            verts.push(r * theta.cos());
            verts.push(r * theta.sin());
        }
    }
    // vertex index of ring i, position m (mod 6i)
    let rv = |i: usize, m: usize| -> usize {
        if i == 0 {
            0
        } else {
            1 + 3 * i * (i - 1) + (m % (6 * i))
        }
    };
    let mut cells = Vec::with_capacity(3 * 6 * rings * rings);
    for i in 1..=rings {
        for s in 0..6usize {
            for t in 0..i {
                // outer-edge triangle
                cells.extend_from_slice(&[
                    rv(i, s * i + t),
                    rv(i, s * i + t + 1),
                    rv(i - 1, s * (i - 1) + t),
                ]);
                if t + 1 < i {
                    // inner-edge triangle
                    cells.extend_from_slice(&[
                        rv(i - 1, s * (i - 1) + t),
                        rv(i, s * i + t + 1),
                        rv(i - 1, s * (i - 1) + t + 1),
                    ]);
                }
            }
        }
    }
    SimplicialMesh::from_parts(2, 2, verts, cells, Vec::new(), None, Some(shape))
}

fn annulus_mesh(r_in: f64, r_out: f64, refinement: u32) -> Result<SimplicialMesh> {
    let n_theta = 6 * (1usize << refinement);
    let spacing = TAU * 0.5 * (r_in + r_out) / n_theta as f64;
    let n_r = (((r_out - r_in) / spacing).round() as usize).max(1);
    let mut verts = Vec::with_capacity(2 * n_theta * (n_r + 1));
    for j in 0..=n_r {
        let r = r_in + (r_out - r_in) * j as f64 / n_r as f64;
        for m in 0..n_theta {
            let theta = TAU * m as f64 / n_theta as f64;
            verts.push(r * theta.cos());
            verts.push(r * theta.sin());
        }
    }
    let v = |j: usize, m: usize| j * n_theta + (m % n_theta);
    let mut cells = Vec::with_capacity(6 * n_theta * n_r);
    for j in 0..n_r {
        for m in 0..n_theta {
            cells.extend_from_slice(&[v(j, m), v(j + 1, m), v(j + 1, m + 1)]);
            cells.extend_from_slice(&[v(j, m), v(j + 1, m + 1), v(j, m + 1)]);
        }
    }
    SimplicialMesh::from_parts(
        2,
        2,
        verts,
        cells,
        Vec::new(),
        None,
        Some(BoundaryShape::ConcentricCircles { r_in, r_out }),
    )
}

/// Flat cylinder `[0, ℓ] × [-L, L]` with the seam `θ=0 ~ θ=ℓ` recorded as
/// periodic pairs. The seam column is duplicated in the vertex list; the
/// dof map collapses it, which leaves two circles as the boundary.
fn cylinder_mesh(circumference: f64, length: f64, refinement: u32) -> Result<SimplicialMesh> {
    let n_theta = 6 * (1usize << refinement);
    let dx = circumference / n_theta as f64;
    let n_y = ((length / dx).round() as usize).max(1);
    let half = length / 2.0;
    let mut verts = Vec::with_capacity(2 * (n_theta + 1) * (n_y + 1));
    for j in 0..=n_y {
        for i in 0..=n_theta {
            verts.push(circumference * i as f64 / n_theta as f64);
            verts.push(-half + length * j as f64 / n_y as f64);
        }
    }
    let v = |i: usize, j: usize| j * (n_theta + 1) + i;
    let mut cells = Vec::with_capacity(6 * n_theta * n_y);
    for j in 0..n_y {
        for i in 0..n_theta {
            cells.extend_from_slice(&[v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
            cells.extend_from_slice(&[v(i, j), v(i + 1, j + 1), v(i, j + 1)]);
        }
    }
    let pairs: Vec<(usize, usize)> = (0..=n_y).map(|j| (v(0, j), v(n_theta, j))).collect();
    SimplicialMesh::from_parts(2, 2, verts, cells, pairs, None, None)
}

/// Unit ball: octahedron split into 8 tetrahedra around the origin, then
/// midpoint-refined with boundary vertices pushed back to the sphere.
fn ball_mesh(refinement: u32) -> Result<SimplicialMesh> {
    let verts = vec![
        0.0, 0.0, 0.0, // center
        1.0, 0.0, 0.0, -1.0, 0.0, 0.0, // ±x
        0.0, 1.0, 0.0, 0.0, -1.0, 0.0, // ±y
        0.0, 0.0, 1.0, 0.0, 0.0, -1.0, // ±z
    ];
    let x = [1usize, 2];
    let y = [3usize, 4];
    let z = [5usize, 6];
    let mut cells = Vec::new();
    for (sx, &vx) in x.iter().enumerate() {
        for (sy, &vy) in y.iter().enumerate() {
            for (sz, &vz) in z.iter().enumerate() {
                // parity of sign flips decides the handedness
                if (sx + sy + sz) % 2 == 0 {
                    cells.extend_from_slice(&[0, vx, vy, vz]);
                } else {
                    cells.extend_from_slice(&[0, vy, vx, vz]);
                }
            }
        }
    }
    let mut mesh = SimplicialMesh::from_parts(
        3,
        3,
        verts,
        cells,
        Vec::new(),
        None,
        Some(BoundaryShape::Sphere { radius: 1.0 }),
    )?;
    for _ in 0..refinement {
        mesh = mesh.refine()?;
    }
    Ok(mesh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// Independent shoelace area over the boundary polygon.
    fn shoelace_area(mesh: &SimplicialMesh) -> f64 {
        let mut acc = 0.0;
        for f in mesh.boundary_facets() {
            let a = mesh.vertex(f[0]);
            let b = mesh.vertex(f[1]);
            acc += a[0] * b[1] - b[0] * a[1];
        }
        acc / 2.0
    }

    fn boundary_length(mesh: &SimplicialMesh) -> f64 {
        (0..mesh.n_boundary_facets())
            .map(|f| mesh.boundary_facet_measure(f))
            .sum()
    }

    #[test]
    fn disk_counts_and_measures() {
        let m = make_domain(&DomainSpec::UnitDisk { refinement: 3 }).unwrap();
        assert_eq!(m.n_cells(), 6 * 4usize.pow(3));
        assert_eq!(m.boundary_vertices().len(), 6 * 2usize.pow(3));
        assert_eq!(m.boundary_components().len(), 1);
        // inscribed polygon: area below π, length below 2π, both close
        let area = m.total_measure();
        assert!(area < PI && area > 0.98 * PI, "area {area}");
        let len = boundary_length(&m);
        assert!(len < 2.0 * PI && len > 0.99 * 2.0 * PI, "length {len}");
        // signed cell volumes match the shoelace oracle
        assert!((area - shoelace_area(&m)).abs() < 1e-12);
    }

    #[test]
    fn disk_boundary_length_converges_to_circle() {
        let mut prev_err = f64::INFINITY;
        for r in 1..=4 {
            let m = make_domain(&DomainSpec::UnitDisk { refinement: r }).unwrap();
            let err = 2.0 * PI - boundary_length(&m);
            assert!(err > 0.0 && err < prev_err);
            prev_err = err;
        }
    }

    #[test]
    fn star_with_unit_profile_matches_disk() {
        let d = make_domain(&DomainSpec::UnitDisk { refinement: 2 }).unwrap();
        let s = make_domain(&DomainSpec::StarShaped {
            radius_samples: vec![1.0; 16],
            refinement: 2,
        })
        .unwrap();
        assert_eq!(d.n_vertices(), s.n_vertices());
        for i in 0..d.n_vertices() {
            assert_eq!(d.vertex(i), s.vertex(i));
        }
        let dc: Vec<&[usize]> = d.cells().collect();
        let sc: Vec<&[usize]> = s.cells().collect();
        assert_eq!(dc, sc);
    }

    #[test]
    fn annulus_has_two_boundary_circles() {
        let m = make_domain(&DomainSpec::Annulus {
            r_in: 0.5,
            r_out: 1.0,
            refinement: 2,
        })
        .unwrap();
        let comps = m.boundary_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(m.genus(), Some(0));
        let area = m.total_measure();
        let exact = PI * (1.0 - 0.25);
        assert!((area - exact).abs() / exact < 0.02, "area {area}");
        assert!((area - shoelace_area(&m)).abs() < 1e-12);
    }

    #[test]
    fn cylinder_two_components_and_product_area() {
        let m = make_domain(&DomainSpec::FlatCylinder {
            circumference: TAU,
            length: 2.0,
            refinement: 2,
        })
        .unwrap();
        assert_eq!(m.boundary_components().len(), 2);
        // flat rectangles: area is exact
        assert!((m.total_measure() - 2.0 * TAU).abs() < 1e-12);
        // each circle has n_theta edges of length ℓ/n_theta
        assert!((boundary_length(&m) - 2.0 * TAU).abs() < 1e-12);
        assert_eq!(m.euler_characteristic(), 0);
    }

    #[test]
    fn cylinder_components_stable_under_refinement() {
        for r in 0..=3 {
            let m = make_domain(&DomainSpec::FlatCylinder {
                circumference: TAU,
                length: 2.0,
                refinement: r,
            })
            .unwrap();
            assert_eq!(m.boundary_components().len(), 2, "refinement {r}");
        }
    }

    #[test]
    fn ball_volume_and_sphere_boundary() {
        let m = make_domain(&DomainSpec::UnitBall { refinement: 2 }).unwrap();
        let vol = m.total_measure();
        let exact = 4.0 * PI / 3.0;
        // inscribed polyhedron volume approaches 4π/3 from below
        assert!(vol < exact && vol > 0.9 * exact, "vol {vol}");
        let s = m.boundary_of().unwrap();
        assert!(s.is_closed());
        assert_eq!(s.euler_characteristic(), 2);
        // divergence-theorem volume oracle against summed signed volumes
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
            let g = [
                (a[0] + b[0] + c[0]) / 3.0,
                (a[1] + b[1] + c[1]) / 3.0,
                (a[2] + b[2] + c[2]) / 3.0,
            ];
            flux += 0.5 * (n[0] * g[0] + n[1] * g[1] + n[2] * g[2]);
        }
        assert!((flux / 3.0 - vol).abs() < 1e-12);
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(matches!(
            make_domain(&DomainSpec::Annulus {
                r_in: 1.0,
                r_out: 0.5,
                refinement: 2
            }),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            make_domain(&DomainSpec::FlatCylinder {
                circumference: -1.0,
                length: 2.0,
                refinement: 2
            }),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            make_domain(&DomainSpec::StarShaped {
                radius_samples: vec![1.0, -0.2],
                refinement: 2
            }),
            Err(Error::InvalidSpec(_))
        ));
    }
}
