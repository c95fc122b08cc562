//! The invariant suite behind the `verify` CLI command: runs the shear and
//! surface identities over fixed deterministic sample sets and reports the
//! worst residual per invariant.

use num_complex::Complex64;

use crate::error::Result;
use crate::maps::{ConformalMapSpec, NGonParams, SlitMapParams};
use crate::minsurf::{psi_eval, psi_oracle, surface_point, weierstrass_triple};
use crate::numerics::QuadratureConfig;
use crate::shear::{shear_eval, verify_shear, MonomialDilatation};

/// Which part of the invariant suite to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    All,
    Slit,
    Polygon,
    Surface,
}

/// One line of the verification report.
#[derive(Debug, Clone)]
pub struct CheckLine {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    /// true when smaller-is-better (residuals); false for lower bounds
    /// such as the Jacobian, where the value must exceed the threshold
    pub upper_bound: bool,
}

impl CheckLine {
    pub fn passed(&self) -> bool {
        if self.upper_bound {
            self.residual < self.threshold
        } else {
            self.residual > self.threshold
        }
    }
}

/// Deterministic pseudo-random points in |z| <= r_cap (xorshift; fixed seed).
pub fn sample_points(count: usize, r_cap: f64, seed: u64) -> Vec<Complex64> {
    let mut state = seed | 1;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    (0..count)
        .map(|_| Complex64::from_polar(r_cap * next().sqrt(), 2.0 * std::f64::consts::PI * next()))
        .collect()
}

fn shear_checks(
    lines: &mut Vec<CheckLine>,
    name: &str,
    map: &ConformalMapSpec,
    dil: &MonomialDilatation,
    cfg: &QuadratureConfig,
) -> Result<()> {
    let samples = sample_points(30, 0.9, 0x9E3779B97F4A7C15);
    let report = verify_shear(map, dil, &samples, cfg)?;
    lines.push(CheckLine {
        name: format!("{name}: |h - g - phi|"),
        residual: report.construction_residual,
        threshold: 1e-10,
        upper_bound: true,
    });
    lines.push(CheckLine {
        name: format!("{name}: |g' - omega h'| / |h'|"),
        residual: report.dilatation_residual,
        threshold: 1e-7,
        upper_bound: true,
    });
    lines.push(CheckLine {
        name: format!("{name}: min J_f"),
        residual: report.min_jacobian,
        threshold: 0.0,
        upper_bound: false,
    });
    if let Some(d) = report.closed_vs_oracle {
        lines.push(CheckLine {
            name: format!("{name}: closed form vs oracle"),
            residual: d,
            threshold: 1e-9,
            upper_bound: true,
        });
    }
    Ok(())
}

fn slit_suite(lines: &mut Vec<CheckLine>, cfg: &QuadratureConfig) -> Result<()> {
    for n in 1..=4u32 {
        let p = SlitMapParams::new(1.0, 1.0, std::f64::consts::FRAC_PI_2).unwrap();
        shear_checks(
            lines,
            &format!("slit gamma=pi/2 n={n}"),
            &ConformalMapSpec::FourSlit(p),
            &MonomialDilatation::new(n),
            cfg,
        )?;
    }
    // resonant gamma = 2 pi / n
    for n in [3u32, 5] {
        let p = SlitMapParams::resonant(1.0, 0.5, 1, n).unwrap();
        shear_checks(
            lines,
            &format!("slit resonant 2pi/{n} n={n}"),
            &ConformalMapSpec::FourSlit(p),
            &MonomialDilatation::new(n),
            cfg,
        )?;
    }
    // alpha family
    let p = SlitMapParams::alpha_family(std::f64::consts::FRAC_PI_3).unwrap();
    for n in [1u32, 2] {
        shear_checks(
            lines,
            &format!("alpha-family alpha=pi/3 n={n}"),
            &ConformalMapSpec::FourSlit(p),
            &MonomialDilatation::new(n),
            cfg,
        )?;
    }
    Ok(())
}

fn polygon_suite(lines: &mut Vec<CheckLine>, cfg: &QuadratureConfig) -> Result<()> {
    for n in 3..=6u32 {
        let p = NGonParams::new(n).unwrap();
        shear_checks(
            lines,
            &format!("{n}-gon omega=z^{}", 2 * n),
            &ConformalMapSpec::RegularNGon(p),
            &MonomialDilatation::new(2 * n),
            cfg,
        )?;
        if n % 2 == 1 {
            shear_checks(
                lines,
                &format!("{n}-gon omega=z^2"),
                &ConformalMapSpec::RegularNGon(p),
                &MonomialDilatation::new(2),
                cfg,
            )?;
        }
    }
    Ok(())
}

fn surface_suite(lines: &mut Vec<CheckLine>, cfg: &QuadratureConfig) -> Result<()> {
    let samples = sample_points(30, 0.85, 0xA5A5A5A5DEADBEEF);
    let mut iso = 0.0_f64;
    let mut proj = 0.0_f64;
    let mut lift = 0.0_f64;
    let mut real_axis_w = 0.0_f64;
    for n in [3u32, 4, 5] {
        let p = NGonParams::new(n).unwrap();
        let map = ConformalMapSpec::RegularNGon(p);
        for m in [2 * n, if n % 2 == 1 { 2 } else { 2 * n }] {
            let dil = MonomialDilatation::new(m);
            for &z in &samples {
                let ev = shear_eval(&map, &dil, z, cfg)?;
                let q = dil.sqrt_eval(z)?;
                iso = iso.max(weierstrass_triple(ev.h_prime, ev.g_prime, q).isothermal_residual());
                let s = surface_point(&map, &dil, z, cfg)?;
                proj = proj
                    .max((s.u - ev.f.re).abs())
                    .max((s.v - ev.f.im).abs());
                lift = lift.max(
                    (psi_eval(&map, &dil, z, cfg)? - psi_oracle(&map, &dil, z, cfg)?).norm(),
                );
            }
            for i in 0..10 {
                let x = Complex64::new(-0.9 + 0.2 * i as f64, 0.0);
                real_axis_w = real_axis_w.max(surface_point(&map, &dil, x, cfg)?.w.abs());
            }
        }
    }
    lines.push(CheckLine {
        name: "surface: isothermal |phi1^2+phi2^2+phi3^2| (relative)".into(),
        residual: iso,
        threshold: 1e-12,
        upper_bound: true,
    });
    lines.push(CheckLine {
        name: "surface: projection (u,v) = f".into(),
        residual: proj,
        threshold: 1e-10,
        upper_bound: true,
    });
    lines.push(CheckLine {
        name: "surface: closed-form psi vs oracle".into(),
        residual: lift,
        threshold: 1e-9,
        upper_bound: true,
    });
    lines.push(CheckLine {
        name: "surface: w = 0 on the real axis".into(),
        residual: real_axis_w,
        threshold: 1e-10,
        upper_bound: true,
    });
    Ok(())
}

/// Run the suite for a scope. Returns the per-invariant lines; the run
/// passes iff every line does.
pub fn run_suite(scope: Scope, cfg: &QuadratureConfig) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    match scope {
        Scope::Slit => slit_suite(&mut lines, cfg)?,
        Scope::Polygon => polygon_suite(&mut lines, cfg)?,
        Scope::Surface => surface_suite(&mut lines, cfg)?,
        Scope::All => {
            slit_suite(&mut lines, cfg)?;
            polygon_suite(&mut lines, cfg)?;
            surface_suite(&mut lines, cfg)?;
        }
    }
    Ok(lines)
}
