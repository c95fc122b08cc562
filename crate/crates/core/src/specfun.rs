//! Gauss 2F1 and Appell F1 hypergeometric functions for complex arguments
//! inside the unit bidisk.
//!
//! Each function has two independent evaluation routes: a truncated series
//! with a certified geometric tail bound, and an Euler-integral fallback
//! used near the boundary (where the series slows down). The two routes
//! cross-validate each other in the test suite.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{integrate_unit_interval, QuadratureConfig};

const SERIES_TOL: f64 = 1e-14;
const MAX_TERMS: usize = 100_000;
/// max(|x|, |y|) above which the Euler route is preferred.
pub const EULER_SWITCH: f64 = 0.7;

/// Parameters of the Gauss hypergeometric function 2F1(a, b; c; z).
#[derive(Debug, Clone, Copy)]
pub struct Gauss2F1Params {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

/// Parameters of the first Appell function F1(a, b1, b2; c; x, y).
#[derive(Debug, Clone, Copy)]
pub struct AppellF1Params {
    pub a: Complex64,
    pub b1: Complex64,
    pub b2: Complex64,
    pub c: Complex64,
}

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

fn check_c(c: Complex64) -> Result<()> {
    if is_nonpositive_integer(c) {
        return Err(Error::Param(format!("c = {c} is zero or a negative integer")));
    }
    Ok(())
}

// Lanczos approximation, g = 607/128, 15 terms.
const LANCZOS_G: f64 = 4.742_187_5;
const LANCZOS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_746,
    -0.491_913_816_097_620_2,
    3.399_464_998_481_189e-5,
    4.652_362_892_704_858e-5,
    -9.837_447_530_487_956e-5,
    1.580_887_032_249_125e-4,
    -2.102_644_417_241_049e-4,
    2.174_396_181_152_126e-4,
    -1.643_181_065_367_639e-4,
    8.441_822_398_385_274e-5,
    -2.619_083_840_158_141e-5,
    3.689_918_265_953_162e-6,
];

/// Principal log-Gamma. Reflection formula for Re z <= 0.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(z));
    }
    if z.re < 0.5 {
        // log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
        let pi = std::f64::consts::PI;
        let s = (pi * z).sin();
        if s == Complex64::default() {
            return Err(Error::Pole(z));
        }
        return Ok((Complex64::new(pi, 0.0) / s).ln() - log_gamma(Complex64::new(1.0, 0.0) - z)?);
    }
    let mut acc = Complex64::new(LANCZOS[0], 0.0);
    for (i, &ci) in LANCZOS.iter().enumerate().skip(1) {
        acc += ci / (z - 1.0 + i as f64);
    }
    let t = z + LANCZOS_G - 0.5;
    let half_log_two_pi = 0.918_938_533_204_672_74;
    Ok(half_log_two_pi + (z - 0.5) * t.ln() - t + acc.ln())
}

/// Gamma function value via `log_gamma`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}

/// Gauss hypergeometric 2F1(a, b; c; z) for |z| < 1.
///
/// Series route for moderate |z|; Euler route near the boundary when the
/// parameter condition Re c > Re b > 0 admits it.
pub fn gauss_2f1(p: &Gauss2F1Params, z: Complex64) -> Result<Complex64> {
    check_c(p.c)?;
    if z.norm() >= 1.0 {
        return Err(Error::Domain(format!("|z| = {} >= 1", z.norm())));
    }
    let euler_ok = (p.c.re > p.b.re && p.b.re > 0.0) || (p.c.re > p.a.re && p.a.re > 0.0);
    if z.norm() <= EULER_SWITCH || !euler_ok {
        gauss_2f1_series(p, z)
    } else {
        gauss_2f1_euler(p, z, &QuadratureConfig::default())
    }
}

/// Truncated-series 2F1 with a certified geometric tail bound.
pub fn gauss_2f1_series(p: &Gauss2F1Params, z: Complex64) -> Result<Complex64> {
    check_c(p.c)?;
    let r = z.norm();
    if r >= 1.0 {
        return Err(Error::Domain(format!("|z| = {r} >= 1")));
    }
    let (a, b, c) = (p.a, p.b, p.c);
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let a1 = (a - 1.0).norm();
    let bc = (b - c).norm();
    let cn = c.norm();
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        // tail majorant: for j >= k+1 the term ratio modulus is at most rho
        let j = kf + 1.0;
        if j > cn + 1.0 {
            let rho = r * (1.0 + a1 / (j + 1.0)) * (1.0 + bc / (j - cn));
            if rho < 1.0 {
                let tail = term.norm() * rho / (1.0 - rho);
                if tail <= SERIES_TOL * sum.norm().max(1e-300) {
                    return Ok(sum);
                }
            }
        }
    }
    Err(Error::SeriesNonConvergence(MAX_TERMS))
}

/// Euler-integral 2F1; requires Re c > Re b > 0 after possibly swapping
/// a and b (the function is symmetric in them).
pub fn gauss_2f1_euler(
    p: &Gauss2F1Params,
    z: Complex64,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    check_c(p.c)?;
    let (a, b) = if p.c.re > p.b.re && p.b.re > 0.0 {
        (p.a, p.b)
    } else if p.c.re > p.a.re && p.a.re > 0.0 {
        (p.b, p.a)
    } else {
        return Err(Error::Param(
            "Euler route requires Re c > Re b > 0 for one of a, b".into(),
        ));
    };
    let c = p.c;
    let prefactor = (log_gamma(c)? - log_gamma(b)? - log_gamma(c - b)?).exp();
    let integral = integrate_unit_interval(
        |t, tc| {
            let kern = (b - 1.0) * t.ln() + (c - b - 1.0) * tc.ln();
            let tail = -a * (Complex64::new(1.0, 0.0) - z * t).ln();
            (kern + tail).exp()
        },
        cfg,
    )?;
    Ok(prefactor * integral)
}

/// Appell F1(a, b1, b2; c; x, y): double series inside the bidisk, Euler
/// integral near its boundary.
pub fn appell_f1(p: &AppellF1Params, x: Complex64, y: Complex64) -> Result<Complex64> {
    check_c(p.c)?;
    let r = x.norm().max(y.norm());
    if r >= 1.0 {
        return Err(Error::Domain(format!("max(|x|,|y|) = {r} >= 1")));
    }
    if r <= EULER_SWITCH || !(p.c.re > p.a.re && p.a.re > 0.0) {
        appell_f1_series(p, x, y)
    } else {
        appell_f1_euler(p, x, y, &QuadratureConfig::default())
    }
}

/// Double series for F1, summed along diagonals k + l = s with a certified
/// tail bound obtained from the Vandermonde majorant of each diagonal.
pub fn appell_f1_series(p: &AppellF1Params, x: Complex64, y: Complex64) -> Result<Complex64> {
    check_c(p.c)?;
    let r = x.norm().max(y.norm());
    if r >= 1.0 {
        return Err(Error::Domain(format!("max(|x|,|y|) = {r} >= 1")));
    }
    let (a, b1, b2, c) = (p.a, p.b1, p.b2, p.c);
    // u[k] = (b1)_k x^k / k!, v[l] = (b2)_l y^l / l!
    let mut u = vec![Complex64::new(1.0, 0.0)];
    let mut v = vec![Complex64::new(1.0, 0.0)];
    let mut ac = Complex64::new(1.0, 0.0); // (a)_s / (c)_s
    let mut majorant = 1.0; // |ac| * (|b1|+|b2|)_s / s! * r^s
    let beta = b1.norm() + b2.norm();
    let ac_gap = (a - c).norm();
    let cn = c.norm();
    let mut sum = Complex64::default();
    for s in 0..MAX_TERMS {
        let sf = s as f64;
        let mut diag = Complex64::default();
        for k in 0..=s {
            diag += u[k] * v[s - k];
        }
        sum += ac * diag;
        // advance recurrences to s + 1
        let k = sf;
        u.push(u[s] * (b1 + k) * x / (k + 1.0));
        v.push(v[s] * (b2 + k) * y / (k + 1.0));
        ac *= (a + sf) / (c + sf);
        majorant *= ((a + sf) / (c + sf)).norm() * (beta + sf) / (sf + 1.0) * r.max(1e-300);
        // sup over j >= s+1 of the majorant's term ratio
        let j = sf + 1.0;
        if j > cn + 1.0 {
            let rho = r
                * (1.0 + ac_gap / (j - cn))
                * (1.0 + (beta - 1.0).max(0.0) / (j + 1.0));
            if rho < 1.0 {
                let tail = majorant / (1.0 - rho);
                if tail <= SERIES_TOL * sum.norm().max(1e-300) {
                    return Ok(sum);
                }
            }
        }
    }
    Err(Error::SeriesNonConvergence(MAX_TERMS))
}

/// Euler integral for F1; requires Re c > Re a > 0.
pub fn appell_f1_euler(
    p: &AppellF1Params,
    x: Complex64,
    y: Complex64,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    check_c(p.c)?;
    if !(p.c.re > p.a.re && p.a.re > 0.0) {
        return Err(Error::Param(
            "Euler route requires Re c > Re a > 0".into(),
        ));
    }
    let (a, b1, b2, c) = (p.a, p.b1, p.b2, p.c);
    let prefactor = (log_gamma(c)? - log_gamma(a)? - log_gamma(c - a)?).exp();
    let one = Complex64::new(1.0, 0.0);
    let integral = integrate_unit_interval(
        |t, tc| {
            let kern = (a - 1.0) * t.ln() + (c - a - 1.0) * tc.ln();
            let tail = -b1 * (one - x * t).ln() - b2 * (one - y * t).ln();
            (kern + tail).exp()
        },
        cfg,
    )?;
    Ok(prefactor * integral)
}
