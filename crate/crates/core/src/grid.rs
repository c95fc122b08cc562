//! Polar sampling grids on the unit disk and data-parallel curve
//! evaluation.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A polar grid of rays and concentric circles inside the disk.
#[derive(Debug, Clone, Copy)]
pub struct DiskGrid {
    pub n_rays: u32,
    pub n_circles: u32,
    pub r_max: f64,
    pub samples_per_curve: u32,
}

impl Default for DiskGrid {
    fn default() -> Self {
        DiskGrid {
            n_rays: 16,
            n_circles: 12,
            r_max: 0.98,
            samples_per_curve: 256,
        }
    }
}

impl DiskGrid {
    pub fn validate(&self) -> Result<()> {
        if self.n_rays < 1 && self.n_circles < 1 {
            return Err(Error::Param("grid needs at least one curve".into()));
        }
        if !(self.r_max > 0.0 && self.r_max < 1.0) {
            return Err(Error::Param(format!("r_max = {} not in (0, 1)", self.r_max)));
        }
        if self.samples_per_curve < 16 {
            return Err(Error::Param(format!(
                "samples_per_curve = {} < 16",
                self.samples_per_curve
            )));
        }
        Ok(())
    }
}

/// Kind and index of a grid curve, in deterministic emission order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveLabel {
    Ray(u32),
    Circle(u32),
}

/// A discretized grid curve in the source disk.
#[derive(Debug, Clone)]
pub struct Curve {
    pub label: CurveLabel,
    pub points: Vec<Complex64>,
}

/// Rays (by angle), then circles (by radius), each with
/// `samples_per_curve` points.
pub fn generate_grid(g: &DiskGrid) -> Result<Vec<Curve>> {
    g.validate()?;
    let m = g.samples_per_curve as usize;
    let mut curves = Vec::with_capacity((g.n_rays + g.n_circles) as usize);
    for k in 0..g.n_rays {
        let angle = 2.0 * std::f64::consts::PI * k as f64 / g.n_rays as f64;
        let dir = Complex64::from_polar(1.0, angle);
        let points = (0..m)
            .map(|i| dir * (g.r_max * i as f64 / (m - 1) as f64))
            .collect();
        curves.push(Curve {
            label: CurveLabel::Ray(k),
            points,
        });
    }
    for j in 0..g.n_circles {
        let r = g.r_max * (j + 1) as f64 / g.n_circles as f64;
        let points = (0..m)
            .map(|i| {
                Complex64::from_polar(r, 2.0 * std::f64::consts::PI * i as f64 / (m - 1) as f64)
            })
            .collect();
        curves.push(Curve {
            label: CurveLabel::Circle(j),
            points,
        });
    }
    Ok(curves)
}

/// A curve together with its image under the evaluated map.
#[derive(Debug, Clone)]
pub struct MappedCurve {
    pub label: CurveLabel,
    pub source: Vec<Complex64>,
    pub image: Vec<Complex64>,
}

/// Map every curve point through `f`. Points are evaluated in parallel
/// when the `parallel` feature is enabled; output order is fixed by the
/// grid ordering either way.
pub fn map_curves<F>(curves: &[Curve], f: F) -> Result<Vec<MappedCurve>>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    curves
        .iter()
        .map(|curve| {
            let image = map_points(&curve.points, &f)?;
            Ok(MappedCurve {
                label: curve.label,
                source: curve.points.clone(),
                image,
            })
        })
        .collect()
}

/// Evaluate `f` at each point, preserving order.
pub fn map_points<F>(points: &[Complex64], f: &F) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        points.par_iter().map(|&z| f(z)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        points.iter().map(|&z| f(z)).collect()
    }
}

/// Sequential reference path for the same evaluation; the criterion bench
/// compares this against the rayon path.
pub fn map_points_seq<F>(points: &[Complex64], f: &F) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    points.iter().map(|&z| f(z)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_counts() {
        let g = DiskGrid::default();
        let curves = generate_grid(&g).unwrap();
        assert_eq!(curves.len(), 28);
        for c in &curves {
            assert_eq!(c.points.len(), 256);
            for p in &c.points {
                assert!(p.norm() <= 0.98 + 1e-12);
            }
        }
    }

    #[test]
    fn single_ray() {
        let g = DiskGrid {
            n_rays: 1,
            n_circles: 0,
            ..Default::default()
        };
        let curves = generate_grid(&g).unwrap();
        assert_eq!(curves.len(), 1);
        let pts = &curves[0].points;
        assert_eq!(pts[0], Complex64::new(0.0, 0.0));
        let last = pts[pts.len() - 1];
        assert!((last - Complex64::new(0.98, 0.0)).norm() < 1e-12);
        assert!(pts.iter().all(|p| p.im == 0.0));
    }

    #[test]
    fn four_rays_axes() {
        let g = DiskGrid {
            n_rays: 4,
            n_circles: 0,
            ..Default::default()
        };
        let curves = generate_grid(&g).unwrap();
        let dirs: Vec<Complex64> = curves
            .iter()
            .map(|c| c.points[c.points.len() - 1] / 0.98)
            .collect();
        let expect = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, -1.0),
        ];
        for (d, e) in dirs.iter().zip(expect) {
            assert!((d - e).norm() < 1e-12);
        }
    }

    #[test]
    fn map_points_routes_agree() {
        let pts: Vec<Complex64> = (0..100)
            .map(|i| Complex64::from_polar(0.009 * i as f64, i as f64))
            .collect();
        let f = |z: Complex64| Ok(z * z + 1.0);
        let a = map_points(&pts, &f).unwrap();
        let b = map_points_seq(&pts, &f).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn invalid_grid_rejected() {
        let g = DiskGrid {
            r_max: 1.5,
            ..Default::default()
        };
        assert!(generate_grid(&g).is_err());
        let g2 = DiskGrid {
            samples_per_curve: 4,
            ..Default::default()
        };
        assert!(generate_grid(&g2).is_err());
    }
}
