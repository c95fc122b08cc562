//! The conformal-map catalog: the four-slit map and the regular n-gon map,
//! their derivatives, and the closed-form geometry of their images.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{integrate_segment, principal_log, QuadratureConfig};

/// Evaluation is restricted to |z| <= R_MAX; every singularity of the
/// catalog maps sits on the unit circle.
pub const R_MAX: f64 = 0.9999;

fn check_disk(z: Complex64) -> Result<()> {
    if z.norm() > R_MAX * (1.0 + 1e-12) {
        return Err(Error::Domain(format!("|z| = {} > {R_MAX}", z.norm())));
    }
    Ok(())
}

/// Angle parameter of the slit map, c = -2 cos(gamma).
///
/// The generic branch keeps gamma in (0, pi); the endpoints c = -2 and
/// c = +2 are separate tags because the 1/sin(gamma) factors of the
/// closed forms blow up there. A gamma constructed as 2*pi*m/n carries the
/// rational so resonance detection is exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SlitAngle {
    Generic {
        gamma: f64,
        /// gamma / (2 pi) as an exact rational, when known.
        rational: Option<(u32, u32)>,
    },
    /// c = -2 (slits extend to -infinity)
    CMinusTwo,
    /// c = +2 (slits extend to +infinity)
    CPlusTwo,
}

/// Parameters of the four-slit conformal map
/// phi(z) = A log((1+z)/(1-z)) + B z / (1 + c z + z^2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlitMapParams {
    pub a: f64,
    pub b: f64,
    pub angle: SlitAngle,
}

impl SlitMapParams {
    /// Generic branch, gamma in (0, pi).
    pub fn new(a: f64, b: f64, gamma: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) {
            return Err(Error::Param(format!("A = {a}, B = {b} must be positive")));
        }
        if !(gamma > 0.0 && gamma < std::f64::consts::PI) {
            return Err(Error::Param(format!("gamma = {gamma} not in (0, pi)")));
        }
        Ok(SlitMapParams {
            a,
            b,
            angle: SlitAngle::Generic {
                gamma,
                rational: None,
            },
        })
    }

    /// From c in [-2, 2]; the endpoints select the degenerate tags.
    pub fn from_c(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) {
            return Err(Error::Param(format!("A = {a}, B = {b} must be positive")));
        }
        if c == -2.0 {
            return Ok(SlitMapParams {
                a,
                b,
                angle: SlitAngle::CMinusTwo,
            });
        }
        if c == 2.0 {
            return Ok(SlitMapParams {
                a,
                b,
                angle: SlitAngle::CPlusTwo,
            });
        }
        if !(-2.0..=2.0).contains(&c) {
            return Err(Error::Param(format!("c = {c} not in [-2, 2]")));
        }
        let gamma = (-c / 2.0).acos();
        let rational = if c == 0.0 { Some((1, 4)) } else { None };
        Ok(SlitMapParams {
            a,
            b,
            angle: SlitAngle::Generic { gamma, rational },
        })
    }

    /// Resonant angle gamma = 2 pi m / n, which must land in (0, pi).
    pub fn resonant(a: f64, b: f64, m: u32, n: u32) -> Result<Self> {
        if n == 0 || m == 0 || 2 * m >= n {
            return Err(Error::Param(format!(
                "gamma = 2 pi {m}/{n} not in (0, pi)"
            )));
        }
        if !(a > 0.0 && b > 0.0) {
            return Err(Error::Param(format!("A = {a}, B = {b} must be positive")));
        }
        let gamma = 2.0 * std::f64::consts::PI * m as f64 / n as f64;
        Ok(SlitMapParams {
            a,
            b,
            angle: SlitAngle::Generic {
                gamma,
                rational: Some((m, n)),
            },
        })
    }

    /// One-parameter family A = sin^2(alpha)/2, B = cos^2(alpha), c = 0.
    pub fn alpha_family(alpha: f64) -> Result<Self> {
        let a = 0.5 * alpha.sin().powi(2);
        let b = alpha.cos().powi(2);
        Self::from_c(a, b, 0.0)
    }

    /// c = -2 cos(gamma); the degenerate tags give exactly -2 and +2.
    pub fn c(&self) -> f64 {
        match self.angle {
            SlitAngle::Generic { gamma, .. } => -2.0 * gamma.cos(),
            SlitAngle::CMinusTwo => -2.0,
            SlitAngle::CPlusTwo => 2.0,
        }
    }

    pub fn gamma(&self) -> Option<f64> {
        match self.angle {
            SlitAngle::Generic { gamma, .. } => Some(gamma),
            _ => None,
        }
    }
}

/// Parameters of the regular n-gon map phi(z) = int_0^z (1 - zeta^n)^(-2/n).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NGonParams {
    pub n: u32,
}

impl NGonParams {
    pub fn new(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::Param(format!("n = {n} < 3")));
        }
        Ok(NGonParams { n })
    }
}

/// One of the catalog maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConformalMapSpec {
    FourSlit(SlitMapParams),
    RegularNGon(NGonParams),
}

impl ConformalMapSpec {
    /// phi(z), by the closed form (slit) or the binomial series (n-gon).
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        match self {
            ConformalMapSpec::FourSlit(p) => slit_phi(p, z),
            ConformalMapSpec::RegularNGon(p) => ngon_phi_series(p, z),
        }
    }

    /// phi'(z).
    pub fn derivative(&self, z: Complex64) -> Result<Complex64> {
        match self {
            ConformalMapSpec::FourSlit(p) => slit_phi_prime(p, z),
            ConformalMapSpec::RegularNGon(p) => ngon_phi_prime(p, z),
        }
    }
}

/// A horizontal half-line omitted from the image of a slit map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfLine {
    /// finite endpoint (the slit tip)
    pub anchor: Complex64,
    /// true: extends to +infinity; false: extends to -infinity
    pub toward_plus_infinity: bool,
}

/// The n-th roots of unity z_k = e^(2 pi i k / n), k = 0..n-1.
pub fn roots_of_unity(n: u32) -> Vec<Complex64> {
    (0..n)
        .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect()
}

/// Right-hand side of the partial-fraction identity
/// 1/(1 - z^n) = -(1/n) sum_k z_k / (z - z_k); a test oracle.
pub fn partial_fraction_inv_one_minus_zn(n: u32, z: Complex64) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::Param("n must be positive".into()));
    }
    let mut sum = Complex64::default();
    for zk in roots_of_unity(n) {
        let d = z - zk;
        if d.norm() < 1e-14 {
            return Err(Error::Pole(zk));
        }
        sum += zk / d;
    }
    Ok(-sum / n as f64)
}

/// phi(z) = A log((1+z)/(1-z)) + B z / (1 + c z + z^2).
pub fn slit_phi(p: &SlitMapParams, z: Complex64) -> Result<Complex64> {
    check_disk(z)?;
    let one = Complex64::new(1.0, 0.0);
    let log_part = principal_log((one + z) / (one - z))?;
    let c = p.c();
    let denom = one + c * z + z * z;
    Ok(p.a * log_part + p.b * z / denom)
}

/// phi'(z) = 2A/(1 - z^2) + B (1 - z^2)/(1 + c z + z^2)^2.
///
/// This rational form is valid for every c in [-2, 2], including the
/// degenerate tags, and avoids the 1/sin(gamma) of the bracket form.
pub fn slit_phi_prime(p: &SlitMapParams, z: Complex64) -> Result<Complex64> {
    check_disk(z)?;
    let one = Complex64::new(1.0, 0.0);
    let c = p.c();
    let denom = one + c * z + z * z;
    Ok(2.0 * p.a / (one - z * z) + p.b * (one - z * z) / (denom * denom))
}

/// Slit tips paired with the boundary direction from which the tip is
/// approached: (z* on the unit circle, tip value).
///
/// Tips are the critical values of phi on |z| = 1, available in closed
/// form for c in {-2, 0, 2}.
pub fn slit_tip_approaches(p: &SlitMapParams) -> Result<Vec<(Complex64, Complex64)>> {
    let (a, b) = (p.a, p.b);
    let s = (2.0 * a / b).sqrt();
    let i = Complex64::new(0.0, 1.0);
    let half_height = a * std::f64::consts::FRAC_PI_2;
    match p.angle {
        SlitAngle::CMinusTwo => {
            // (1+z)/(1-z) = +- i s at the critical points
            let x_tip = 0.5 * a * (2.0 * a / b).ln() - (2.0 * a + b) / 4.0;
            let z_plus = (i * s - 1.0) / (i * s + 1.0);
            Ok(vec![
                (z_plus, Complex64::new(x_tip, half_height)),
                (z_plus.conj(), Complex64::new(x_tip, -half_height)),
            ])
        }
        SlitAngle::CPlusTwo => {
            let x_tip = -0.5 * a * (2.0 * a / b).ln() + (2.0 * a + b) / 4.0;
            let z_plus = -(i * s - 1.0) / (i * s + 1.0);
            Ok(vec![
                (z_plus, Complex64::new(x_tip, -half_height)),
                (z_plus.conj(), Complex64::new(x_tip, half_height)),
            ])
        }
        SlitAngle::Generic { gamma, .. }
            if (gamma - std::f64::consts::FRAC_PI_2).abs() < 1e-12 =>
        {
            // c = 0: (1 - z^2)/(1 + z^2) = +- i s
            let x_tip = c0_anchor_abscissa(a, b);
            let z2 = (Complex64::new(1.0, 0.0) - i * s) / (Complex64::new(1.0, 0.0) + i * s);
            let z = z2.sqrt();
            let mut out = Vec::with_capacity(4);
            for zc in [z, -z, z.conj(), -z.conj()] {
                let re_sign = if zc.re >= 0.0 { 1.0 } else { -1.0 };
                let im_sign = if zc.im >= 0.0 { 1.0 } else { -1.0 };
                out.push((zc, Complex64::new(re_sign * x_tip, im_sign * half_height)));
            }
            Ok(out)
        }
        _ => Err(Error::Unsupported(
            "slit tips are known in closed form only for c in {-2, 0, 2}".into(),
        )),
    }
}

/// |Re| of the c = 0 slit anchors:
/// (A/2) log((sqrt(2A+B) + sqrt(B))/(sqrt(2A+B) - sqrt(B))) + sqrt(B(2A+B))/2.
fn c0_anchor_abscissa(a: f64, b: f64) -> f64 {
    let lam = (2.0 * a + b).sqrt();
    let sb = b.sqrt();
    0.5 * a * ((lam + sb) / (lam - sb)).ln() + 0.5 * sb * lam
}

/// The omitted half-lines of the slit-map image, for c in {-2, 0, 2}.
pub fn slit_omitted_halflines(p: &SlitMapParams) -> Result<Vec<HalfLine>> {
    let tips = slit_tip_approaches(p)?;
    let toward_plus = match p.angle {
        SlitAngle::CMinusTwo => false,
        SlitAngle::CPlusTwo => true,
        // c = 0: each tip's half-line runs away from the origin
        _ => true,
    };
    Ok(tips
        .into_iter()
        .map(|(_, tip)| HalfLine {
            anchor: tip,
            toward_plus_infinity: match p.angle {
                SlitAngle::Generic { .. } => tip.re >= 0.0,
                _ => toward_plus,
            },
        })
        .collect())
}

/// n-gon map by segment quadrature of the defining integral.
pub fn ngon_phi(p: &NGonParams, z: Complex64, cfg: &QuadratureConfig) -> Result<Complex64> {
    check_disk(z)?;
    let n = p.n;
    integrate_segment(
        |zeta| ngon_integrand(n, zeta),
        Complex64::default(),
        z,
        cfg,
    )
}

fn ngon_integrand(n: u32, zeta: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    ((one - zeta.powu(n)).ln() * (-2.0 / n as f64)).exp()
}

/// n-gon map by the termwise-integrated binomial series:
/// sum_k ((2/n)_k / k!) z^(nk+1) / (nk+1).
pub fn ngon_phi_series(p: &NGonParams, z: Complex64) -> Result<Complex64> {
    check_disk(z)?;
    let n = p.n as f64;
    let rn = z.norm().powi(p.n as i32);
    let zn = z.powu(p.n);
    let mut coeff = 1.0_f64; // (2/n)_k / k!, real and positive
    let mut zp = z; // z^(nk+1)
    let mut sum = Complex64::default();
    for k in 0..200_000u32 {
        let term = coeff * zp / (n * k as f64 + 1.0);
        sum += term;
        // coefficient ratio (2/n + k)/(k + 1) <= 1 for n >= 2, so the tail
        // is dominated by a geometric series with ratio rn
        if rn < 1.0 {
            let tail = term.norm() * rn / (1.0 - rn);
            if tail < 1e-15 * sum.norm().max(1e-300) {
                return Ok(sum);
            }
        }
        coeff *= (2.0 / n + k as f64) / (k as f64 + 1.0);
        zp *= zn;
    }
    Err(Error::SeriesNonConvergence(200_000))
}

/// phi'(z) = (1 - z^n)^(-2/n), principal branch.
pub fn ngon_phi_prime(p: &NGonParams, z: Complex64) -> Result<Complex64> {
    check_disk(z)?;
    Ok(ngon_integrand(p.n, z))
}
