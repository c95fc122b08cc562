//! Complex arithmetic helpers and adaptive quadrature.
//!
//! Two kernels cover every integral in the crate: a Gauss-Kronrod 7-15
//! adaptive rule along straight segments in the complex plane (all
//! integrands are analytic on the segments we use), and a tanh-sinh rule
//! on the unit interval that tolerates integrable power singularities at
//! the endpoints (Euler-type integrals).

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerances and depth limit for the adaptive quadrature kernels.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-12,
            abs_tol: 1e-14,
            max_depth: 40,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) || self.max_depth < 1 {
            return Err(Error::Param(format!(
                "invalid quadrature config: rel_tol={}, abs_tol={}, max_depth={}",
                self.rel_tol, self.abs_tol, self.max_depth
            )));
        }
        Ok(())
    }
}

/// Pochhammer symbol (alpha)_n = alpha (alpha+1) ... (alpha+n-1), with ()_0 = 1.
pub fn pochhammer(alpha: Complex64, n: u32) -> Result<Complex64> {
    let mut acc = Complex64::new(1.0, 0.0);
    for k in 0..n {
        acc *= alpha + k as f64;
        if !acc.is_finite() {
            return Err(Error::Overflow("pochhammer"));
        }
    }
    Ok(acc)
}

/// Principal branch of log, imaginary part in (-pi, pi].
pub fn principal_log(z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("log of zero".into()));
    }
    Ok(z.ln())
}

// Gauss-Kronrod 7-15 nodes on [0, 1] (mapped from the standard [-1, 1] rule).
// Even indices are the Kronrod extension points, odd indices the Gauss-7 nodes.
const GK_NODES: [f64; 8] = [
    0.991_455_371_120_812_639_207,
    0.949_107_912_342_758_524_526,
    0.864_864_423_359_769_072_789,
    0.741_531_185_599_394_439_864,
    0.586_087_235_467_691_130_294,
    0.405_845_151_377_397_166_907,
    0.207_784_955_007_898_467_601,
    0.0,
];
const GK_WK: [f64; 8] = [
    0.022_935_322_010_529_224_964,
    0.063_092_092_629_978_553_291,
    0.104_790_010_322_250_183_824,
    0.140_653_259_715_525_918_745,
    0.169_004_726_639_267_902_827,
    0.190_350_578_064_785_409_913,
    0.204_432_940_075_298_892_414,
    0.209_482_141_084_727_828_013,
];
const GK_WG: [f64; 4] = [
    0.129_484_966_168_869_693_271,
    0.279_705_391_489_276_667_901,
    0.381_830_050_505_118_944_950,
    0.417_959_183_673_469_387_755,
];

/// One GK15 panel on [a, b]: returns (kronrod value, error estimate).
fn gk15<F>(f: &F, a: f64, b: f64) -> Result<(Complex64, f64)>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let fc = f(mid)?;
    let mut kron = GK_WK[7] * fc;
    let mut gauss = GK_WG[3] * fc;
    for i in 0..7 {
        let dx = half * GK_NODES[i];
        let fl = f(mid - dx)?;
        let fr = f(mid + dx)?;
        let sum = fl + fr;
        kron += GK_WK[i] * sum;
        if i % 2 == 1 {
            gauss += GK_WG[i / 2] * sum;
        }
    }
    kron *= half;
    gauss *= half;
    let diff = (kron - gauss).norm();
    Ok((kron, diff.max(50.0 * f64::EPSILON * kron.norm())))
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
    depth: u32,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Globally adaptive GK15 over a real parameter interval [0, 1] with a
/// complex-valued integrand. Splits the worst panel until the summed error
/// estimate is below tolerance.
fn adaptive_gk<F>(f: &F, cfg: &QuadratureConfig) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    cfg.validate()?;
    let (v0, e0) = gk15(f, 0.0, 1.0)?;
    let mut heap = BinaryHeap::new();
    heap.push(Panel {
        a: 0.0,
        b: 1.0,
        value: v0,
        err: e0,
        depth: 0,
    });
    let mut total = v0;
    let mut total_err = e0;
    let mut max_depth_seen = 0;
    loop {
        let tol = cfg.abs_tol.max(cfg.rel_tol * total.norm());
        if total_err <= tol {
            return Ok(total);
        }
        let worst = heap.pop().expect("heap never empty");
        if worst.depth >= cfg.max_depth {
            return Err(Error::NonConvergence {
                estimate: total_err,
                depth: worst.depth,
            });
        }
        let mid = 0.5 * (worst.a + worst.b);
        let (vl, el) = gk15(f, worst.a, mid)?;
        let (vr, er) = gk15(f, mid, worst.b)?;
        total += vl + vr - worst.value;
        total_err += el + er - worst.err;
        max_depth_seen = max_depth_seen.max(worst.depth + 1);
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: vl,
            err: el,
            depth: worst.depth + 1,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: vr,
            err: er,
            depth: worst.depth + 1,
        });
    }
}

/// Contour integral of `integrand` along the straight segment from `from` to `to`.
///
/// The integrand must be analytic on the closed segment.
pub fn integrate_segment<F>(
    integrand: F,
    from: Complex64,
    to: Complex64,
    cfg: &QuadratureConfig,
) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    let delta = to - from;
    if delta == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let g = |t: f64| -> Result<Complex64> {
        let zeta = from + delta * t;
        let v = integrand(zeta);
        if !v.is_finite() {
            return Err(Error::NonFinite { at: zeta });
        }
        Ok(v)
    };
    Ok(delta * adaptive_gk(&g, cfg)?)
}

/// Integral of a complex-valued function over (0, 1) by tanh-sinh quadrature.
///
/// Endpoint power singularities t^(a-1), (1-t)^(b-1) with Re a, Re b in (0, 1)
/// are integrable and handled by the double-exponential decay of the weights;
/// the endpoints themselves are never evaluated. The integrand receives
/// both t and 1 - t, each computed stably near its own endpoint, so factors
/// like (1 - t)^(b-1) keep full precision.
pub fn integrate_unit_interval<F>(integrand: F, cfg: &QuadratureConfig) -> Result<Complex64>
where
    F: Fn(f64, f64) -> Complex64,
{
    cfg.validate()?;
    let eval = |t: f64, tc: f64| -> Result<Complex64> {
        let v = integrand(t, tc);
        if !v.is_finite() {
            return Err(Error::NonFinite {
                at: Complex64::new(t, 0.0),
            });
        }
        Ok(v)
    };
    // node at parameter u: x = 1/(1 + exp(-pi*sinh(u))), complement
    // 1 - x = 1/(1 + exp(pi*sinh(u))), weight from the transform derivative
    let node = |u: f64| -> Option<(f64, f64, f64)> {
        let s = std::f64::consts::FRAC_PI_2 * u.sinh();
        if s.abs() > 350.0 {
            return None;
        }
        let x = 1.0 / (1.0 + (-2.0 * s).exp());
        let xc = 1.0 / (1.0 + (2.0 * s).exp());
        let ch = s.cosh();
        let w = std::f64::consts::FRAC_PI_2 * u.cosh() / (2.0 * ch * ch);
        if x <= 0.0 || xc <= 0.0 || w < 1e-290 {
            return None;
        }
        Some((x, xc, w))
    };

    let u_max = 6.5_f64;
    let mut h = 1.0_f64;
    // level 0: nodes at integer multiples of h
    let mut sum = node(0.0)
        .map(|(x, xc, w)| Ok::<_, Error>(w * eval(x, xc)?))
        .transpose()?
        .unwrap_or_default();
    let mut k = 1;
    while (k as f64) * h <= u_max {
        let u = k as f64 * h;
        for su in [u, -u] {
            if let Some((x, xc, w)) = node(su) {
                sum += w * eval(x, xc)?;
            }
        }
        k += 1;
    }
    let mut value = sum * h;
    let max_level = cfg.max_depth.min(12);
    for _level in 1..=max_level {
        h *= 0.5;
        // add the new (odd-multiple) nodes
        let mut new_sum = Complex64::default();
        let mut j = 1;
        while (j as f64) * h <= u_max {
            let u = j as f64 * h;
            for su in [u, -u] {
                if let Some((x, xc, w)) = node(su) {
                    new_sum += w * eval(x, xc)?;
                }
            }
            j += 2;
        }
        sum += new_sum;
        let new_value = sum * h;
        let err = (new_value - value).norm();
        value = new_value;
        if err <= cfg.abs_tol.max(cfg.rel_tol * value.norm()) && _level >= 3 {
            return Ok(value);
        }
    }
    // one more comparison pass would not improve: report failure
    Err(Error::NonConvergence {
        estimate: f64::NAN,
        depth: max_level,
    })
}
