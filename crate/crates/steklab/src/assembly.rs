//! P1 finite-element operators under a conformal metric.
//!
//! For `g = ρ·g_euclid` on a d-dimensional mesh the weak forms pick up
//! powers of the linearly interpolated factor ρ:
//!
//! - stiffness density   ρ^{(d-2)/2} |∇f|² dx   (identically 1 in d = 2,
//!   where the Dirichlet energy is conformally invariant — that path never
//!   evaluates ρ at all, so the 2D stiffness is bitwise independent of it)
//! - volume element      ρ^{d/2} dx
//! - boundary element    ρ^{(d-1)/2} ds, times the density δ for the
//!   boundary mass
//!
//! ρ is integrated by fixed barycentric quadrature: 2-point Gauss on edges,
//! the symmetric 3-point rule on triangles, the 4-point rule on tetrahedra.
//! Element contributions are accumulated through sorted triplets, which
//! makes the operators exactly symmetric and run-to-run reproducible.

use crate::mesh::SimplicialMesh;
use crate::metric::{BoundaryDensity, MetricField};
use crate::sparse::{CsrMatrix, TripletBuffer};
use crate::{Error, Result};
use nalgebra::Matrix3;

/// Assembled operators plus the geometric measures of the weighted domain.
#[derive(Debug, Clone)]
pub struct OperatorBundle {
    /// Conformally weighted stiffness, positive semidefinite, kernel =
    /// constants per connected component.
    pub k: CsrMatrix,
    /// δ-weighted boundary mass, supported on boundary dofs.
    pub m_bnd: CsrMatrix,
    /// Volume (or closed-manifold) mass under g, positive definite.
    pub m_vol: CsrMatrix,
    /// |Σ|_g = ∫_Σ ρ^{(d-1)/2} ds.
    pub sigma_area: f64,
    /// |Ω|_g = ∫_Ω ρ^{d/2} dx.
    pub omega_volume: f64,
    /// Sorted dof indices of the boundary (all dofs for closed manifolds).
    pub boundary_index: Vec<usize>,
    /// Dimension of the boundary manifold Σ.
    pub n_bdim: usize,
}

impl OperatorBundle {
    /// m(Σ,δ) = (1/|Σ|) ∫_Σ δ dv_Σ = 1ᵀ M_bnd 1 / |Σ|_g.
    pub fn mean_density(&self) -> f64 {
        self.m_bnd.entry_sum() / self.sigma_area
    }

    pub fn n_dofs(&self) -> usize {
        self.k.nrows()
    }

    /// Sorted dof indices not on the boundary.
    pub fn interior_index(&self) -> Vec<usize> {
        let mut on_boundary = vec![false; self.n_dofs()];
        for &b in &self.boundary_index {
            on_boundary[b] = true;
        }
        (0..self.n_dofs()).filter(|&i| !on_boundary[i]).collect()
    }

    /// Write K, M_bnd, M_vol as sorted `row col value` triplet files under
    /// `dir` (debugging interface).
    pub fn dump_triplets(&self, dir: &std::path::Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        for (name, m) in [("K", &self.k), ("M_bnd", &self.m_bnd), ("M_vol", &self.m_vol)] {
            let f = std::fs::File::create(dir.join(format!("{name}.txt")))?;
            m.dump_triplets(std::io::BufWriter::new(f))?;
        }
        Ok(())
    }
}

/// Quadrature rule on the reference k-simplex: barycentric points + weights
/// summing to 1.
fn simplex_quadrature(k: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    match k {
        1 => {
            // 2-point Gauss on [0,1], degree 3
            let g = 0.5 / 3.0f64.sqrt();
            (
                vec![vec![0.5 + g, 0.5 - g], vec![0.5 - g, 0.5 + g]],
                vec![0.5, 0.5],
            )
        }
        2 => {
            // symmetric 3-point rule, degree 2
            let (a, b) = (2.0 / 3.0, 1.0 / 6.0);
            (
                vec![vec![a, b, b], vec![b, a, b], vec![b, b, a]],
                vec![1.0 / 3.0; 3],
            )
        }
        3 => {
            // symmetric 4-point rule, degree 2
            let a = (5.0 + 3.0 * 5.0f64.sqrt()) / 20.0;
            let b = (5.0 - 5.0f64.sqrt()) / 20.0;
            (
                vec![
                    vec![a, b, b, b],
                    vec![b, a, b, b],
                    vec![b, b, a, b],
                    vec![b, b, b, a],
                ],
                vec![0.25; 4],
            )
        }
        _ => panic!("no quadrature for k = {k}"),
    }
}

/// Unweighted local stiffness `measure · ∇φᵢ·∇φⱼ` of one cell, plus the
/// cell measure (unsigned for embedded cells).
fn local_stiffness(mesh: &SimplicialMesh, cell: &[usize]) -> (Vec<Vec<f64>>, f64) {
    let dim = mesh.dim();
    match dim {
        1 => {
            let (a, b) = (mesh.vertex(cell[0]), mesh.vertex(cell[1]));
            let len: f64 = a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt();
            let s = 1.0 / len;
            (vec![vec![s, -s], vec![-s, s]], len)
        }
        2 => {
            // edge-vector form: measure·∇φᵢ·∇φⱼ = (eᵢ·eⱼ)/(4A),
            // eᵢ the edge opposite vertex i, valid in ambient 2 or 3
            let p: Vec<&[f64]> = cell.iter().map(|&v| mesh.vertex(v)).collect();
            let amb = mesh.ambient();
            let mut e = vec![vec![0.0; amb]; 3];
            for i in 0..3 {
                let (a, b) = (p[(i + 2) % 3], p[(i + 1) % 3]);
                for k in 0..amb {
                    e[i][k] = a[k] - b[k];
                }
            }
            let area = crate::mesh::simplex_measure(2, amb, cell, raw_coords(mesh)).abs();
            let mut s = vec![vec![0.0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    let dot: f64 = e[i].iter().zip(&e[j]).map(|(x, y)| x * y).sum();
                    s[i][j] = dot / (4.0 * area);
                }
            }
            (s, area)
        }
        3 => {
            let p: Vec<&[f64]> = cell.iter().map(|&v| mesh.vertex(v)).collect();
            let d = Matrix3::from_columns(&[
                nalgebra::Vector3::new(p[1][0] - p[0][0], p[1][1] - p[0][1], p[1][2] - p[0][2]),
                nalgebra::Vector3::new(p[2][0] - p[0][0], p[2][1] - p[0][1], p[2][2] - p[0][2]),
                nalgebra::Vector3::new(p[3][0] - p[0][0], p[3][1] - p[0][1], p[3][2] - p[0][2]),
            ]);
            let vol = d.determinant() / 6.0;
            let dinv = d.try_inverse().expect("validated cells are non-degenerate");
            // rows of D⁻¹ are ∇φ₁, ∇φ₂, ∇φ₃; ∇φ₀ closes the partition
            let mut grads = [[0.0f64; 3]; 4];
            for i in 0..3 {
                for k in 0..3 {
                    grads[i + 1][k] = dinv[(i, k)];
                    grads[0][k] -= dinv[(i, k)];
                }
            }
            let mut s = vec![vec![0.0; 4]; 4];
            for i in 0..4 {
                for j in 0..4 {
                    let dot: f64 = (0..3).map(|k| grads[i][k] * grads[j][k]).sum();
                    s[i][j] = vol * dot;
                }
            }
            (s, vol)
        }
        _ => unreachable!(),
    }
}

fn raw_coords(mesh: &SimplicialMesh) -> &[f64] {
    // SAFETY of layout: vertex(i) slices the same flat array
    // (helper so simplex_measure can reuse the mesh storage)
    unsafe { std::slice::from_raw_parts(mesh.vertex(0).as_ptr(), mesh.n_vertices() * mesh.ambient()) }
}

/// Assemble the weighted Steklov operators for a domain mesh.
pub fn assemble(
    mesh: &SimplicialMesh,
    metric: &MetricField,
    density: &BoundaryDensity,
) -> Result<OperatorBundle> {
    if mesh.is_closed() {
        return Err(Error::InvalidInput(
            "domain mesh must have a boundary; use lb_operators for closed manifolds".into(),
        ));
    }
    let rho = metric.vertex_values(mesh)?;
    let delta = density.vertex_values(mesh)?;
    let d = mesh.dim();
    let bundle = assemble_inner(mesh, &rho, Some(&delta), d - 1)?;
    Ok(bundle)
}

/// Stiffness and mass for the Laplace–Beltrami problem on a closed manifold
/// (the boundary Σ itself). `M_bnd` is unused and left empty;
/// `boundary_index` covers every dof.
pub fn lb_operators(closed_mesh: &SimplicialMesh, metric: &MetricField) -> Result<OperatorBundle> {
    if !closed_mesh.is_closed() {
        return Err(Error::InvalidInput(
            "Laplace–Beltrami operators need a closed mesh".into(),
        ));
    }
    let rho = metric.vertex_values(closed_mesh)?;
    assemble_inner(closed_mesh, &rho, None, closed_mesh.dim())
}

fn assemble_inner(
    mesh: &SimplicialMesh,
    rho: &[f64],
    delta: Option<&[f64]>,
    n_bdim: usize,
) -> Result<OperatorBundle> {
    let d = mesh.dim();
    let ndofs = mesh.n_dofs();
    let stiff_exp = (d as f64 - 2.0) / 2.0;
    let vol_exp = d as f64 / 2.0;
    let bnd_exp = (d as f64 - 1.0) / 2.0;

    let (qpts, qwts) = simplex_quadrature(d);
    let mut k_buf = TripletBuffer::new();
    let mut mvol_buf = TripletBuffer::new();
    let mut omega_volume = 0.0;

    for cell in mesh.cells() {
        let (s_loc, measure) = local_stiffness(mesh, cell);
        let nloc = cell.len();
        // conformal weights at the quadrature points (ρ linear on the cell)
        let mut w_stiff = 0.0;
        let mut w_vol = 0.0;
        let mut mass_q = vec![vec![0.0; nloc]; nloc];
        for (pt, &wq) in qpts.iter().zip(&qwts) {
            let rho_q: f64 = pt.iter().zip(cell).map(|(&l, &v)| l * rho[v]).sum();
            // d = 2: stiffness weight is identically 1, no evaluation
            if d != 2 {
                w_stiff += wq * rho_q.powf(stiff_exp);
            }
            let wv = wq * rho_q.powf(vol_exp);
            w_vol += wv;
            for i in 0..nloc {
                for j in 0..nloc {
                    mass_q[i][j] += wv * pt[i] * pt[j];
                }
            }
        }
        if d == 2 {
            w_stiff = 1.0;
        }
        omega_volume += measure * w_vol;
        for i in 0..nloc {
            let di = mesh.dof_of(cell[i]);
            for j in 0..nloc {
                let dj = mesh.dof_of(cell[j]);
                k_buf.push(di, dj, w_stiff * s_loc[i][j]);
                mvol_buf.push(di, dj, measure * mass_q[i][j]);
            }
        }
    }

    let mut mbnd_buf = TripletBuffer::new();
    let mut sigma_area = 0.0;
    if mesh.is_closed() {
        // the manifold itself is Σ: its measure under g is the "area"
        sigma_area = omega_volume;
    } else {
        let (qpts, qwts) = simplex_quadrature(d - 1);
        for f in 0..mesh.n_boundary_facets() {
            let facet = mesh.boundary_facet(f);
            let measure = mesh.boundary_facet_measure(f);
            let nloc = facet.len();
            let mut area_w = 0.0;
            let mut mass_q = vec![vec![0.0; nloc]; nloc];
            for (pt, &wq) in qpts.iter().zip(&qwts) {
                let rho_q: f64 = pt.iter().zip(facet).map(|(&l, &v)| l * rho[v]).sum();
                let rw = rho_q.powf(bnd_exp);
                area_w += wq * rw;
                if let Some(delta) = delta {
                    let delta_q: f64 = pt.iter().zip(facet).map(|(&l, &v)| l * delta[v]).sum();
                    let m = wq * rw * delta_q;
                    for i in 0..nloc {
                        for j in 0..nloc {
                            mass_q[i][j] += m * pt[i] * pt[j];
                        }
                    }
                }
            }
            sigma_area += measure * area_w;
            for i in 0..nloc {
                let di = mesh.dof_of(facet[i]);
                for j in 0..nloc {
                    let dj = mesh.dof_of(facet[j]);
                    mbnd_buf.push(di, dj, measure * mass_q[i][j]);
                }
            }
        }
    }

    let k = CsrMatrix::from_triplets(ndofs, ndofs, k_buf);
    let m_vol = CsrMatrix::from_triplets(ndofs, ndofs, mvol_buf);
    let m_bnd = if mbnd_buf.is_empty() {
        CsrMatrix::zeros(ndofs, ndofs)
    } else {
        CsrMatrix::from_triplets(ndofs, ndofs, mbnd_buf)
    };
    let boundary_index = if mesh.is_closed() {
        (0..ndofs).collect()
    } else {
        mesh.boundary_dofs()
    };
    Ok(OperatorBundle {
        k,
        m_bnd,
        m_vol,
        sigma_area,
        omega_volume,
        boundary_index,
        n_bdim,
    })
}
