//! Conformal metric fields and boundary densities.
//!
//! A [`MetricField`] encodes `g = ρ · g_euclid` through the per-vertex
//! conformal factor `ρ > 0`. The presets are round space forms in their
//! standard charts:
//!
//! - spherical (stereographic):  ρ(x) = 4R⁴ / (R² + |x|²)²
//! - hyperbolic (Poincaré ball): ρ(x) = 4R⁴ / (R² − |x|²)²,  |x| < R
//!
//! with `R = curvature_scale` (curvature ±1/R²). `R = 1` reproduces
//! 4/(1+|x|²)² and 4/(1−|x|²)².

use crate::mesh::SimplicialMesh;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MetricField {
    Euclidean,
    SphericalStereographic {
        #[serde(default = "one")]
        curvature_scale: f64,
    },
    HyperbolicPoincare {
        #[serde(default = "one")]
        curvature_scale: f64,
    },
    Custom {
        /// ρ at every mesh vertex, in vertex order.
        values: Vec<f64>,
    },
}

fn one() -> f64 {
    1.0
}

impl MetricField {
    pub fn euclidean() -> Self {
        MetricField::Euclidean
    }

    pub fn spherical() -> Self {
        MetricField::SphericalStereographic {
            curvature_scale: 1.0,
        }
    }

    pub fn hyperbolic() -> Self {
        MetricField::HyperbolicPoincare {
            curvature_scale: 1.0,
        }
    }

    pub fn custom(values: Vec<f64>) -> Self {
        MetricField::Custom { values }
    }

    /// Evaluate ρ at every vertex of `mesh`, validating positivity (and the
    /// chart domain for the hyperbolic preset).
    pub fn vertex_values(&self, mesh: &SimplicialMesh) -> Result<Vec<f64>> {
        let n = mesh.n_vertices();
        let rho = match self {
            MetricField::Euclidean => vec![1.0; n],
            MetricField::SphericalStereographic { curvature_scale } => {
                let scale = *curvature_scale;
                if !(scale > 0.0) {
                    return Err(Error::InvalidMetric("curvature_scale must be positive".into()));
                }
                (0..n)
                    .map(|i| {
                        let r2: f64 = mesh.vertex(i).iter().map(|x| x * x).sum();
                        let d = scale * scale + r2;
                        4.0 * scale.powi(4) / (d * d)
                    })
                    .collect()
            }
            MetricField::HyperbolicPoincare { curvature_scale } => {
                let scale = *curvature_scale;
                if !(scale > 0.0) {
                    return Err(Error::InvalidMetric("curvature_scale must be positive".into()));
                }
                let mut vals = Vec::with_capacity(n);
                for i in 0..n {
                    let r2: f64 = mesh.vertex(i).iter().map(|x| x * x).sum();
                    let d = scale * scale - r2;
                    if d <= 0.0 {
                        return Err(Error::InvalidMetric(format!(
                            "vertex {i} outside the Poincaré ball of radius {scale}"
                        )));
                    }
                    vals.push(4.0 * scale.powi(4) / (d * d));
                }
                vals
            }
            MetricField::Custom { values } => {
                if values.len() != n {
                    return Err(Error::InvalidMetric(format!(
                        "custom metric has {} values for {} vertices",
                        values.len(),
                        n
                    )));
                }
                values.clone()
            }
        };
        for (i, &v) in rho.iter().enumerate() {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidMetric(format!(
                    "conformal factor at vertex {i} is {v}, must be positive"
                )));
            }
        }
        Ok(rho)
    }
}

/// Boundary density δ ≥ 0, not identically zero. Values align with
/// [`SimplicialMesh::boundary_vertices`] (sorted vertex order); vertices
/// identified by periodic pairs must carry equal values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundaryDensity {
    Uniform { value: f64 },
    PerVertex { values: Vec<f64> },
}

impl BoundaryDensity {
    pub fn uniform(value: f64) -> Self {
        BoundaryDensity::Uniform { value }
    }

    /// δ at every boundary vertex of `mesh`, as a full-length per-vertex
    /// vector (zero off the boundary), validated.
    pub fn vertex_values(&self, mesh: &SimplicialMesh) -> Result<Vec<f64>> {
        let bverts = mesh.boundary_vertices();
        let mut full = vec![0.0; mesh.n_vertices()];
        match self {
            BoundaryDensity::Uniform { value } => {
                if !(*value > 0.0) || !value.is_finite() {
                    return Err(Error::InvalidDensity(format!(
                        "uniform density {value} must be positive"
                    )));
                }
                for &v in bverts {
                    full[v] = *value;
                }
            }
            BoundaryDensity::PerVertex { values } => {
                if values.len() != bverts.len() {
                    return Err(Error::InvalidDensity(format!(
                        "{} density values for {} boundary vertices",
                        values.len(),
                        bverts.len()
                    )));
                }
                let mut any_positive = false;
                for (&v, &d) in bverts.iter().zip(values) {
                    if !(d >= 0.0) || !d.is_finite() {
                        return Err(Error::InvalidDensity(format!(
                            "density at boundary vertex {v} is {d}, must be >= 0"
                        )));
                    }
                    any_positive |= d > 0.0;
                    full[v] = d;
                }
                if !any_positive {
                    return Err(Error::InvalidDensity(
                        "density is identically zero on the boundary".into(),
                    ));
                }
                // identified vertices are one dof: their δ must agree
                for &(a, b) in mesh.periodic_pairs() {
                    if full[a] != full[b] {
                        return Err(Error::InvalidDensity(format!(
                            "periodic vertices {a} and {b} carry different densities"
                        )));
                    }
                }
            }
        }
        Ok(full)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{make_domain, DomainSpec};

    #[test]
    fn presets_match_formulas() {
        let m = make_domain(&DomainSpec::UnitDisk { refinement: 1 }).unwrap();
        let sph = MetricField::spherical().vertex_values(&m).unwrap();
        for (i, &rho) in sph.iter().enumerate() {
            let r2: f64 = m.vertex(i).iter().map(|x| x * x).sum();
            let want = 4.0 / (1.0 + r2).powi(2);
            assert!((rho - want).abs() < 1e-15);
        }
        // hyperbolic diverges toward |x| = 1: shrink the disk chart
        let small = make_domain(&DomainSpec::Annulus {
            r_in: 0.1,
            r_out: 0.5,
            refinement: 0,
        })
        .unwrap();
        let hyp = MetricField::hyperbolic().vertex_values(&small).unwrap();
        for (i, &rho) in hyp.iter().enumerate() {
            let r2: f64 = small.vertex(i).iter().map(|x| x * x).sum();
            assert!((rho - 4.0 / (1.0 - r2).powi(2)).abs() < 1e-12);
        }
    }

    #[test]
    fn hyperbolic_rejects_vertices_outside_ball() {
        let m = make_domain(&DomainSpec::UnitDisk { refinement: 1 }).unwrap();
        // boundary sits at |x| = 1 exactly: outside the open ball
        assert!(matches!(
            MetricField::hyperbolic().vertex_values(&m),
            Err(Error::InvalidMetric(_))
        ));
    }

    #[test]
    fn custom_metric_validated() {
        let m = make_domain(&DomainSpec::UnitDisk { refinement: 0 }).unwrap();
        let n = m.n_vertices();
        assert!(MetricField::custom(vec![1.0; n]).vertex_values(&m).is_ok());
        let mut bad = vec![1.0; n];
        bad[2] = 0.0;
        assert!(matches!(
            MetricField::custom(bad).vertex_values(&m),
            Err(Error::InvalidMetric(_))
        ));
        assert!(matches!(
            MetricField::custom(vec![1.0; n - 1]).vertex_values(&m),
            Err(Error::InvalidMetric(_))
        ));
    }

    #[test]
    fn density_zero_everywhere_rejected() {
        let m = make_domain(&DomainSpec::UnitDisk { refinement: 0 }).unwrap();
        let nb = m.boundary_vertices().len();
        assert!(matches!(
            BoundaryDensity::PerVertex {
                values: vec![0.0; nb]
            }
            .vertex_values(&m),
            Err(Error::InvalidDensity(_))
        ));
        // one positive value suffices
        let mut vals = vec![0.0; nb];
        vals[0] = 2.0;
        assert!(BoundaryDensity::PerVertex { values: vals }
            .vertex_values(&m)
            .is_ok());
    }
}
