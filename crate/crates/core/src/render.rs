//! Deterministic exporters: CSV point tables, SVG line plots of planar
//! images, and OBJ meshes of lifted surfaces.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{generate_grid, map_curves, CurveLabel, DiskGrid, MappedCurve};
use crate::maps::{slit_omitted_halflines, ConformalMapSpec, HalfLine};
use crate::minsurf::{surface_point, SurfaceSample};
use crate::numerics::QuadratureConfig;
use crate::shear::{shear_eval, MonomialDilatation};

/// Output format of a render job.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Svg,
    Csv,
    Obj,
}

/// Everything needed to produce one export file.
#[derive(Debug, Clone)]
pub struct RenderJob {
    pub map: ConformalMapSpec,
    pub dilatation: MonomialDilatation,
    pub grid: DiskGrid,
    pub format: OutputFormat,
    pub quadrature: QuadratureConfig,
}

fn curve_id(label: CurveLabel) -> String {
    match label {
        CurveLabel::Ray(k) => format!("ray{k}"),
        CurveLabel::Circle(j) => format!("circle{j}"),
    }
}

/// Evaluate the grid under the harmonic shear f (or phi itself when the
/// dilatation is omega == 0).
pub fn evaluate_grid(job: &RenderJob) -> Result<Vec<MappedCurve>> {
    let curves = generate_grid(&job.grid)?;
    map_curves(&curves, |z| {
        Ok(shear_eval(&job.map, &job.dilatation, z, &job.quadrature)?.f)
    })
}

/// Render a planar image as CSV: one row per point,
/// `curve_id,point_index,z_re,z_im,w_re,w_im` at full (17 digit) precision.
pub fn render_map_csv(job: &RenderJob) -> Result<String> {
    let curves = evaluate_grid(job)?;
    let mut out = String::new();
    out.push_str("curve_id,point_index,z_re,z_im,w_re,w_im\n");
    for curve in &curves {
        let id = curve_id(curve.label);
        for (i, (z, w)) in curve.source.iter().zip(&curve.image).enumerate() {
            writeln!(
                out,
                "{id},{i},{:.16e},{:.16e},{:.16e},{:.16e}",
                z.re, z.im, w.re, w.im
            )
            .expect("string write");
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy)]
struct BoundingBox {
    min_x: f64,
    max_x: f64,
    min_y: f64,
    max_y: f64,
}

impl BoundingBox {
    fn of(points: impl Iterator<Item = Complex64>) -> Option<BoundingBox> {
        let mut bb: Option<BoundingBox> = None;
        for p in points {
            if !p.is_finite() {
                continue;
            }
            let b = bb.get_or_insert(BoundingBox {
                min_x: p.re,
                max_x: p.re,
                min_y: p.im,
                max_y: p.im,
            });
            b.min_x = b.min_x.min(p.re);
            b.max_x = b.max_x.max(p.re);
            b.min_y = b.min_y.min(p.im);
            b.max_y = b.max_y.max(p.im);
        }
        bb
    }

    fn with_margin(self, fraction: f64) -> BoundingBox {
        let dx = (self.max_x - self.min_x).max(1e-9) * fraction;
        let dy = (self.max_y - self.min_y).max(1e-9) * fraction;
        BoundingBox {
            min_x: self.min_x - dx,
            max_x: self.max_x + dx,
            min_y: self.min_y - dy,
            max_y: self.max_y + dy,
        }
    }
}

fn svg_path(points: &[Complex64]) -> String {
    let mut d = String::new();
    for (i, p) in points.iter().enumerate() {
        // SVG y grows downward; flip to keep the mathematical orientation
        let cmd = if i == 0 { 'M' } else { 'L' };
        write!(d, "{cmd}{:.6} {:.6} ", p.re, -p.im).expect("string write");
    }
    d.trim_end().to_string()
}

/// Render a planar image as an SVG line plot. The omitted half-lines of a
/// supported slit map are drawn dashed and clipped to the view box.
pub fn render_map_svg(job: &RenderJob) -> Result<String> {
    let curves = evaluate_grid(job)?;
    let halflines: Vec<HalfLine> = match &job.map {
        ConformalMapSpec::FourSlit(p) => slit_omitted_halflines(p).unwrap_or_default(),
        _ => Vec::new(),
    };
    let bb = BoundingBox::of(
        curves
            .iter()
            .flat_map(|c| c.image.iter().copied())
            .chain(halflines.iter().map(|h| h.anchor)),
    )
    .ok_or_else(|| Error::Domain("no finite points to plot".into()))?
    .with_margin(0.05);
    let width = bb.max_x - bb.min_x;
    let height = bb.max_y - bb.min_y;
    let stroke = 0.004 * width.max(height);
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{:.6} {:.6} {:.6} {:.6}\">",
        bb.min_x, -bb.max_y, width, height
    )
    .expect("string write");
    writeln!(
        out,
        "  <g fill=\"none\" stroke=\"#1f4e79\" stroke-width=\"{stroke:.6}\">"
    )
    .expect("string write");
    for curve in &curves {
        writeln!(
            out,
            "    <path id=\"{}\" d=\"{}\"/>",
            curve_id(curve.label),
            svg_path(&curve.image)
        )
        .expect("string write");
    }
    out.push_str("  </g>\n");
    if !halflines.is_empty() {
        writeln!(
            out,
            "  <g fill=\"none\" stroke=\"#c0392b\" stroke-width=\"{stroke:.6}\" stroke-dasharray=\"{:.6} {:.6}\">",
            4.0 * stroke,
            3.0 * stroke
        )
        .expect("string write");
        for (i, hl) in halflines.iter().enumerate() {
            // clip the infinite ray to the view box
            let x_far = if hl.toward_plus_infinity {
                bb.max_x
            } else {
                bb.min_x
            };
            let seg = [hl.anchor, Complex64::new(x_far, hl.anchor.im)];
            writeln!(out, "    <path id=\"slit{i}\" d=\"{}\"/>", svg_path(&seg))
                .expect("string write");
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Sample the lifted surface over the polar grid. Row-major order over
/// (circle index, ray index) with a single shared center vertex first.
pub fn sample_surface(job: &RenderJob) -> Result<Vec<SurfaceSample>> {
    job.grid.validate()?;
    if !job.dilatation.is_liftable() {
        return Err(Error::NotLiftable(job.dilatation.m));
    }
    let g = &job.grid;
    let mut sources = Vec::with_capacity(1 + (g.n_circles * g.n_rays) as usize);
    sources.push(Complex64::default());
    for j in 0..g.n_circles {
        let r = g.r_max * (j + 1) as f64 / g.n_circles as f64;
        for k in 0..g.n_rays {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / g.n_rays as f64;
            sources.push(Complex64::from_polar(r, angle));
        }
    }
    let samples: Vec<SurfaceSample> = {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            sources
                .par_iter()
                .map(|&z| surface_point(&job.map, &job.dilatation, z, &job.quadrature))
                .collect::<Result<Vec<_>>>()?
        }
        #[cfg(not(feature = "parallel"))]
        {
            sources
                .iter()
                .map(|&z| surface_point(&job.map, &job.dilatation, z, &job.quadrature))
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(samples)
}

/// Render the lifted surface as a Wavefront OBJ quad-dominant mesh:
/// triangles fan out from the shared center vertex, quads connect
/// neighboring rings.
pub fn render_surface_obj(job: &RenderJob) -> Result<String> {
    let samples = sample_surface(job)?;
    let rays = job.grid.n_rays as usize;
    let circles = job.grid.n_circles as usize;
    let mut out = String::new();
    for s in &samples {
        writeln!(out, "v {:.12} {:.12} {:.12}", s.u, s.v, s.w).expect("string write");
    }
    // OBJ indices are 1-based; vertex 1 is the center
    let ring = |j: usize, k: usize| 2 + j * rays + (k % rays);
    if circles > 0 {
        for k in 0..rays {
            writeln!(out, "f 1 {} {}", ring(0, k), ring(0, k + 1)).expect("string write");
        }
        for j in 0..circles - 1 {
            for k in 0..rays {
                writeln!(
                    out,
                    "f {} {} {} {}",
                    ring(j, k),
                    ring(j + 1, k),
                    ring(j + 1, k + 1),
                    ring(j, k + 1)
                )
                .expect("string write");
            }
        }
    }
    Ok(out)
}

/// Produce the job's output as a string in its requested format.
pub fn render(job: &RenderJob) -> Result<String> {
    match job.format {
        OutputFormat::Csv => render_map_csv(job),
        OutputFormat::Svg => render_map_svg(job),
        OutputFormat::Obj => render_surface_obj(job),
    }
}
