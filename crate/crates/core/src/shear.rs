//! The shear engine.
//!
//! `shear_oracle` evaluates the defining integrals of the shear
//! construction by quadrature for any catalog map and monomial dilatation.
//! The closed forms (slit-map log sums and polygon Appell-F1 formulas) are
//! implemented alongside and validated against the oracle.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::maps::{
    roots_of_unity, slit_phi, slit_phi_prime, ConformalMapSpec, NGonParams, SlitAngle,
    SlitMapParams,
};
use crate::numerics::{integrate_segment, principal_log, QuadratureConfig};
use crate::specfun::{appell_f1, AppellF1Params};

/// Monomial dilatation omega(z) = z^m; m = 0 stands for omega == 0 (the
/// identity shear), not z^0 = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonomialDilatation {
    pub m: u32,
}

impl MonomialDilatation {
    pub fn new(m: u32) -> Self {
        MonomialDilatation { m }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        if self.m == 0 {
            Complex64::default()
        } else {
            z.powu(self.m)
        }
    }

    /// Liftable to a minimal surface iff omega = q^2 for analytic q.
    pub fn is_liftable(&self) -> bool {
        self.m % 2 == 0
    }

    /// q(z) = z^(m/2) for even m >= 2; q == 0 for m = 0.
    pub fn sqrt_eval(&self, z: Complex64) -> Result<Complex64> {
        if !self.is_liftable() {
            return Err(Error::NotLiftable(self.m));
        }
        if self.m == 0 {
            Ok(Complex64::default())
        } else {
            Ok(z.powu(self.m / 2))
        }
    }
}

/// Values of the shear pieces at one point.
#[derive(Debug, Clone, Copy)]
pub struct ShearEvaluation {
    pub h: Complex64,
    pub g: Complex64,
    pub f: Complex64,
    pub h_prime: Complex64,
    pub g_prime: Complex64,
}

impl ShearEvaluation {
    /// Assemble from h and phi using the pointwise identities
    /// g = h - phi, f = h + conj(g), h' = phi'/(1 - omega), g' = omega h'.
    fn from_h(
        h: Complex64,
        phi: Complex64,
        phi_prime: Complex64,
        omega: Complex64,
    ) -> ShearEvaluation {
        let g = h - phi;
        let h_prime = phi_prime / (Complex64::new(1.0, 0.0) - omega);
        ShearEvaluation {
            h,
            g,
            f: h + g.conj(),
            h_prime,
            g_prime: omega * h_prime,
        }
    }
}

/// Quadrature oracle for the shear of any catalog map with omega(z) = z^m:
/// h = int_0^z phi'(zeta) / (1 - zeta^m) d zeta, g = h - phi.
pub fn shear_oracle(
    map: &ConformalMapSpec,
    dil: &MonomialDilatation,
    z: Complex64,
    cfg: &QuadratureConfig,
) -> Result<ShearEvaluation> {
    let m = *dil;
    let h = integrate_segment(
        |zeta| {
            let dphi = map.derivative(zeta).unwrap_or(Complex64::new(f64::NAN, 0.0));
            dphi / (Complex64::new(1.0, 0.0) - m.eval(zeta))
        },
        Complex64::default(),
        z,
        cfg,
    )?;
    Ok(ShearEvaluation::from_h(
        h,
        map.eval(z)?,
        map.derivative(z)?,
        m.eval(z),
    ))
}

// ---------------------------------------------------------------------------
// Slit-map closed-form pieces
// ---------------------------------------------------------------------------

/// I_{1,0} = int_0^z d zeta / ((1-zeta)^2 (1+zeta))
///         = z/(2(1-z)) + (1/4) log((1+z)/(1-z)).
pub fn slit_i10(z: Complex64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    Ok(z / (2.0 * (one - z)) + principal_log((one + z) / (one - z))? / 4.0)
}

/// I_{1,n/2} = int_0^z d zeta / ((1+zeta)^2 (1-zeta))
///           = z/(2(1+z)) + (1/4) log((1+z)/(1-z)); even n only.
pub fn slit_i1_half(z: Complex64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    Ok(z / (2.0 * (one + z)) + principal_log((one + z) / (one - z))? / 4.0)
}

/// I_{1,k} for z_k = e^(2 pi i k/n), z_k != +-1:
/// -z_k log(1-z)/(2(z_k-1)) + z_k log(1+z)/(2(z_k+1))
/// + z_k/(z_k^2-1) log((z_k - z)/z_k).
pub fn slit_i1k(z: Complex64, k: u32, n: u32) -> Result<Complex64> {
    if k >= n {
        return Err(Error::Index(format!("k = {k} out of 0..{n}")));
    }
    let zk = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64);
    if (zk - 1.0).norm() < 1e-12 || (zk + 1.0).norm() < 1e-12 {
        return Err(Error::Index(format!(
            "z_k = {zk} is +-1; use I_(1,0) or I_(1,n/2)"
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    Ok(
        -zk * principal_log(one - z)? / (2.0 * (zk - 1.0))
            + zk * principal_log(one + z)? / (2.0 * (zk + 1.0))
            + zk / (zk * zk - 1.0) * principal_log((zk - z) / zk)?,
    )
}

/// One partial-fraction summand of I_eta (z_k-weighted; the weight is
/// required for the sum to reproduce the defining integral).
fn i_eta_summand(eta: Complex64, zk: Complex64, z: Complex64) -> Result<Complex64> {
    let d = eta - zk;
    let lg = principal_log((eta - z) / eta)? - principal_log((zk - z) / zk)?;
    Ok(zk * ((1.0 / d) * (1.0 / (eta - z) - 1.0 / eta) - lg / (d * d)))
}

/// I_eta = int_0^z d zeta / ((zeta - eta)^2 (1 - zeta^n)) for eta on the
/// unit circle with eta^n != 1.
pub fn slit_i_eta(eta: Complex64, n: u32, z: Complex64) -> Result<Complex64> {
    if (eta.powu(n) - 1.0).norm() < 1e-9 {
        return Err(Error::Resonance);
    }
    let mut sum = Complex64::default();
    for zk in roots_of_unity(n) {
        sum += i_eta_summand(eta, zk, z)?;
    }
    Ok(-sum / n as f64)
}

/// I_{3,m} = int_0^z d zeta / ((zeta - z_m)^2 (1 - zeta^n)), the resonant
/// companion of I_eta: the k = m summand degenerates to a third-order pole
/// whose integral is (z_m/(2n)) [1/(z - z_m)^2 - 1/z_m^2].
pub fn slit_i3m(m: u32, n: u32, z: Complex64) -> Result<Complex64> {
    if m >= n {
        return Err(Error::Index(format!("m = {m} out of 0..{n}")));
    }
    let roots = roots_of_unity(n);
    let zm = roots[m as usize];
    let mut sum = Complex64::default();
    for (k, &zk) in roots.iter().enumerate() {
        if k as u32 == m {
            continue;
        }
        sum += i_eta_summand(zm, zk, z)?;
    }
    let d = z - zm;
    let cube = zm / (2.0 * n as f64) * (1.0 / (d * d) - 1.0 / (zm * zm));
    Ok(-sum / n as f64 + cube)
}

/// I_1 assembled over the n-th roots of unity: I_{1,0} for z_0 = 1,
/// I_{1,n/2} for z_{n/2} = -1 (even n only), I_{1,k} otherwise.
fn slit_i1(n: u32, z: Complex64) -> Result<Complex64> {
    let mut sum = slit_i10(z)?;
    for k in 1..n {
        if n % 2 == 0 && k == n / 2 {
            sum += slit_i1_half(z)?;
        } else {
            sum += slit_i1k(z, k, n)?;
        }
    }
    Ok(sum / n as f64)
}

/// Resonance test for gamma against the dilatation power n: returns the m
/// with gamma = 2 pi m / n when one exists (exactly for rationally
/// constructed angles, within 1e-6 otherwise).
fn resonant_index(angle: &SlitAngle, n: u32) -> Option<u32> {
    let SlitAngle::Generic { gamma, rational } = angle else {
        return None;
    };
    if let Some((p, q)) = rational {
        // gamma / (2 pi) = p / q (reduced); resonant iff q divides n
        if n % q == 0 {
            return Some(p * (n / q));
        }
        return None;
    }
    let frac = gamma / (2.0 * std::f64::consts::PI) * n as f64;
    let m = frac.round();
    if m >= 1.0 && (frac - m).abs() * 2.0 * std::f64::consts::PI / (n as f64) < 1e-6 {
        Some(m as u32)
    } else {
        None
    }
}

/// Closed-form shear of the slit map with dilatation omega(z) = z^n:
/// h = 2 A I_1 - (B/(2 sin gamma)) i (e^(-i gamma) I_2 - e^(i gamma) I_3),
/// with I_2, I_3 routed through I_eta or I_{3,m} depending on resonance.
pub fn slit_shear_closed(p: &SlitMapParams, n: u32, z: Complex64) -> Result<ShearEvaluation> {
    if n == 0 {
        return Err(Error::Param("dilatation power n must be >= 1".into()));
    }
    let SlitAngle::Generic { gamma, .. } = p.angle else {
        return Err(Error::Unsupported(
            "closed-form shears are not available for the degenerate tags c = +-2".into(),
        ));
    };
    let i1 = slit_i1(n, z)?;
    let (i2, i3) = match resonant_index(&p.angle, n) {
        Some(m) => (slit_i3m(n - m, n, z)?, slit_i3m(m, n, z)?),
        None => {
            let eta = Complex64::from_polar(1.0, gamma);
            (slit_i_eta(eta.conj(), n, z)?, slit_i_eta(eta, n, z)?)
        }
    };
    let e_pos = Complex64::from_polar(1.0, gamma);
    let i = Complex64::new(0.0, 1.0);
    // the minus sign on the B term is pinned by the quadrature oracle
    let h = 2.0 * p.a * i1 - p.b / (2.0 * gamma.sin()) * i * (e_pos.conj() * i2 - e_pos * i3);
    let omega = z.powu(n);
    Ok(ShearEvaluation::from_h(
        h,
        slit_phi(p, z)?,
        slit_phi_prime(p, z)?,
        omega,
    ))
}

// ---------------------------------------------------------------------------
// Polygon closed forms
// ---------------------------------------------------------------------------

fn f1_real(a: f64, b1: f64, b2: f64, c: f64, x: Complex64, y: Complex64) -> Result<Complex64> {
    appell_f1(
        &AppellF1Params {
            a: Complex64::new(a, 0.0),
            b1: Complex64::new(b1, 0.0),
            b2: Complex64::new(b2, 0.0),
            c: Complex64::new(c, 0.0),
        },
        x,
        y,
    )
}

/// Shear of the regular n-gon with dilatation omega(z) = z^(2n):
/// h(z) = z F1(1/n, 1+2/n, 1; 1+1/n; z^n, -z^n),
/// g(z) = z^(2n+1)/(2n+1) F1(2+1/n, 1+2/n, 1; 3+1/n; z^n, -z^n).
pub fn polygon_shear_z2n(p: &NGonParams, z: Complex64) -> Result<ShearEvaluation> {
    let n = p.n as f64;
    let zn = z.powu(p.n);
    let map = ConformalMapSpec::RegularNGon(*p);
    let h = z * f1_real(1.0 / n, 1.0 + 2.0 / n, 1.0, 1.0 + 1.0 / n, zn, -zn)?;
    let g = z.powu(2 * p.n + 1) / (2.0 * n + 1.0)
        * f1_real(2.0 + 1.0 / n, 1.0 + 2.0 / n, 1.0, 3.0 + 1.0 / n, zn, -zn)?;
    let phi_prime = map.derivative(z)?;
    let omega = z.powu(2 * p.n);
    let h_prime = phi_prime / (Complex64::new(1.0, 0.0) - omega);
    Ok(ShearEvaluation {
        h,
        g,
        f: h + g.conj(),
        h_prime,
        g_prime: omega * h_prime,
    })
}

/// Shear of the regular n-gon (n odd) with dilatation omega(z) = z^2:
/// h and g are the Appell-F1 sums over k = 0..n-1 and k = 1..n.
pub fn polygon_shear_z2(p: &NGonParams, z: Complex64) -> Result<ShearEvaluation> {
    if p.n % 2 == 0 {
        return Err(Error::Parity(p.n));
    }
    let n = p.n as f64;
    let zn = z.powu(p.n);
    let term = |k: u32| -> Result<Complex64> {
        let kk = k as f64;
        Ok(z.powu(2 * k + 1) / (2.0 * kk + 1.0)
            * f1_real(
                (2.0 * kk + 1.0) / n,
                1.0 + 2.0 / n,
                1.0,
                1.0 + (2.0 * kk + 1.0) / n,
                zn,
                -zn,
            )?)
    };
    let mut h = Complex64::default();
    let mut g = Complex64::default();
    for k in 0..p.n {
        let t = term(k)?;
        h += t;
        if k >= 1 {
            g += t;
        }
    }
    g += term(p.n)?;
    let map = ConformalMapSpec::RegularNGon(*p);
    let phi_prime = map.derivative(z)?;
    let omega = z * z;
    let h_prime = phi_prime / (Complex64::new(1.0, 0.0) - omega);
    Ok(ShearEvaluation {
        h,
        g,
        f: h + g.conj(),
        h_prime,
        g_prime: omega * h_prime,
    })
}

/// Closed-form shear when the catalog has one for (map, dilatation):
/// slit maps with generic gamma and omega = z^n; polygons with omega =
/// z^(2n) or (odd n) z^2; and the trivial omega == 0 shear of any map.
pub fn closed_form_shear(
    map: &ConformalMapSpec,
    dil: &MonomialDilatation,
    z: Complex64,
) -> Result<Option<ShearEvaluation>> {
    if dil.m == 0 {
        let phi = map.eval(z)?;
        return Ok(Some(ShearEvaluation::from_h(
            phi,
            phi,
            map.derivative(z)?,
            Complex64::default(),
        )));
    }
    match map {
        ConformalMapSpec::FourSlit(p) => match p.angle {
            SlitAngle::Generic { .. } => Ok(Some(slit_shear_closed(p, dil.m, z)?)),
            _ => Ok(None),
        },
        ConformalMapSpec::RegularNGon(p) => {
            if dil.m == 2 * p.n {
                Ok(Some(polygon_shear_z2n(p, z)?))
            } else if dil.m == 2 && p.n % 2 == 1 {
                Ok(Some(polygon_shear_z2(p, z)?))
            } else {
                Ok(None)
            }
        }
    }
}

/// Evaluate the shear at `z`, preferring a closed form and falling back to
/// the quadrature oracle.
pub fn shear_eval(
    map: &ConformalMapSpec,
    dil: &MonomialDilatation,
    z: Complex64,
    cfg: &QuadratureConfig,
) -> Result<ShearEvaluation> {
    match closed_form_shear(map, dil, z)? {
        Some(ev) => Ok(ev),
        None => shear_oracle(map, dil, z, cfg),
    }
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

/// Maximum residuals of the shear identities over a sample set.
#[derive(Debug, Clone, Copy)]
pub struct VerifyReport {
    /// max |h - g - phi|
    pub construction_residual: f64,
    /// max |g' - omega h'| / |h'| with finite-difference derivatives
    pub dilatation_residual: f64,
    /// min of J_f = |h'|^2 - |g'|^2 (must be positive)
    pub min_jacobian: f64,
    /// max |closed form - oracle| over h, g, when a closed form exists
    pub closed_vs_oracle: Option<f64>,
    pub samples: usize,
}

impl VerifyReport {
    pub fn passes(&self, residual_tol: f64) -> bool {
        self.construction_residual < residual_tol
            && self.dilatation_residual < 1e-7
            && self.min_jacobian > 0.0
            && self.closed_vs_oracle.map_or(true, |d| d < residual_tol)
    }
}

fn verify_at(
    map: &ConformalMapSpec,
    dil: &MonomialDilatation,
    z: Complex64,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64, f64, Option<f64>)> {
    let closed = closed_form_shear(map, dil, z)?;
    let oracle = shear_oracle(map, dil, z, cfg)?;
    let ev = closed.unwrap_or(oracle);
    let phi = map.eval(z)?;
    let construction = (ev.h - ev.g - phi).norm();
    // finite-difference dilatation check on the evaluated h and g
    let step = 1e-4;
    let fd = |select: fn(&ShearEvaluation) -> Complex64| -> Result<Complex64> {
        let mut acc = Complex64::default();
        for (offset, weight) in [
            (2.0, -1.0),
            (1.0, 8.0),
            (-1.0, -8.0),
            (-2.0, 1.0),
        ] {
            let zz = z + Complex64::new(offset * step, 0.0);
            let e = shear_eval(map, dil, zz, cfg)?;
            acc += weight * select(&e);
        }
        Ok(acc / (12.0 * step))
    };
    let h_fd = fd(|e| e.h)?;
    let g_fd = fd(|e| e.g)?;
    let omega = dil.eval(z);
    let dil_res = (g_fd - omega * h_fd).norm() / h_fd.norm().max(1e-300);
    let jac = ev.h_prime.norm_sqr() - ev.g_prime.norm_sqr();
    let cvo = closed.map(|cf| {
        (cf.h - oracle.h)
            .norm()
            .max((cf.g - oracle.g).norm())
    });
    Ok((construction, dil_res, jac, cvo))
}

/// Run the shear identities at every sample point and aggregate the worst
/// residuals. Sample evaluation is data-parallel.
pub fn verify_shear(
    map: &ConformalMapSpec,
    dil: &MonomialDilatation,
    samples: &[Complex64],
    cfg: &QuadratureConfig,
) -> Result<VerifyReport> {
    let per_point: Vec<(f64, f64, f64, Option<f64>)> = {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            samples
                .par_iter()
                .map(|&z| verify_at(map, dil, z, cfg))
                .collect::<Result<Vec<_>>>()?
        }
        #[cfg(not(feature = "parallel"))]
        {
            samples
                .iter()
                .map(|&z| verify_at(map, dil, z, cfg))
                .collect::<Result<Vec<_>>>()?
        }
    };
    let mut report = VerifyReport {
        construction_residual: 0.0,
        dilatation_residual: 0.0,
        min_jacobian: f64::INFINITY,
        closed_vs_oracle: None,
        samples: samples.len(),
    };
    for (cons, dilr, jac, cvo) in per_point {
        report.construction_residual = report.construction_residual.max(cons);
        report.dilatation_residual = report.dilatation_residual.max(dilr);
        report.min_jacobian = report.min_jacobian.min(jac);
        if let Some(d) = cvo {
            report.closed_vs_oracle =
                Some(report.closed_vs_oracle.unwrap_or(0.0).max(d));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{ngon_phi_series, NGonParams};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn quad_i(integrand: impl Fn(Complex64) -> Complex64, z: Complex64) -> Complex64 {
        integrate_segment(integrand, Complex64::default(), z, &cfg()).unwrap()
    }

    #[test]
    fn identity_shear_m0() {
        let p = SlitMapParams::new(1.0, 1.0, 1.2).unwrap();
        let map = ConformalMapSpec::FourSlit(p);
        let z = c(0.4, 0.2);
        let ev = shear_oracle(&map, &MonomialDilatation::new(0), z, &cfg()).unwrap();
        let phi = slit_phi(&p, z).unwrap();
        assert!((ev.h - phi).norm() < 1e-12);
        assert!(ev.g.norm() < 1e-12);
        assert!((ev.f - phi).norm() < 1e-12);
        assert!(ev.g_prime.norm() == 0.0);
    }

    #[test]
    fn i_terms_vanish_at_zero() {
        assert!(slit_i10(c(0.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(slit_i1_half(c(0.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(slit_i1k(c(0.0, 0.0), 1, 4).unwrap().norm() < 1e-15);
        assert!(slit_i_eta(Complex64::from_polar(1.0, 1.0), 2, c(0.0, 0.0))
            .unwrap()
            .norm()
            < 1e-15);
        assert!(slit_i3m(1, 3, c(0.0, 0.0)).unwrap().norm() < 1e-13);
    }

    #[test]
    fn i10_derivative() {
        let z = c(0.4, 0.0);
        let h = 1e-6;
        let fd = (slit_i10(z + c(h, 0.0)).unwrap() - slit_i10(z - c(h, 0.0)).unwrap()) / (2.0 * h);
        let one = Complex64::new(1.0, 0.0);
        let expect = ((one - z) * (one - z) * (one + z)).inv();
        assert!((fd - expect).norm() < 1e-8);
    }

    #[test]
    fn i1k_matches_quadrature() {
        let n = 4u32;
        let k = 1u32;
        let zk = c(0.0, 1.0);
        let z = c(0.5, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let num = quad_i(|w| zk / ((one - w) * (one + w) * (zk - w)), z);
        let cf = slit_i1k(z, k, n).unwrap();
        assert!((cf - num).norm() < 1e-10, "{cf} vs {num}");
    }

    #[test]
    fn i1k_rejects_real_roots() {
        assert!(slit_i1k(c(0.1, 0.0), 0, 4).is_err());
        assert!(slit_i1k(c(0.1, 0.0), 2, 4).is_err());
    }

    #[test]
    fn i_eta_matches_quadrature() {
        let eta = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_3);
        let n = 2u32;
        let z = c(0.4, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let num = quad_i(|w| ((w - eta) * (w - eta) * (one - w * w)).inv(), z);
        let cf = slit_i_eta(eta, n, z).unwrap();
        assert!((cf - num).norm() < 1e-10, "{cf} vs {num}");
    }

    #[test]
    fn i_eta_conjugate_pairing() {
        let eta = Complex64::from_polar(1.0, 0.9);
        let z = c(0.3, 0.2);
        let a = slit_i_eta(eta.conj(), 3, z.conj()).unwrap();
        let b = slit_i_eta(eta, 3, z).unwrap().conj();
        assert!((a - b).norm() < 1e-13);
    }

    #[test]
    fn i_eta_resonance_guard() {
        let eta = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        assert!(matches!(
            slit_i_eta(eta, 3, c(0.2, 0.0)),
            Err(Error::Resonance)
        ));
    }

    #[test]
    fn i3m_matches_quadrature() {
        let n = 3u32;
        let m = 1u32;
        let zm = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let z = c(0.3, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let num = quad_i(|w| ((w - zm) * (w - zm) * (one - w.powu(n))).inv(), z);
        let cf = slit_i3m(m, n, z).unwrap();
        assert!((cf - num).norm() < 1e-10, "{cf} vs {num}");
    }

    #[test]
    fn cube_pole_term_n1() {
        // n = 1, m = 0: I_{3,0}(z) at z = 0.5 contains the cube-pole value
        // (1/2)[1/(z-1)^2 - 1] = 1.5 plus no other summands
        let v = slit_i3m(0, 1, c(0.5, 0.0)).unwrap();
        assert!((v - c(1.5, 0.0)).norm() < 1e-13, "got {v}");
    }

    #[test]
    fn slit_closed_matches_oracle() {
        let p = SlitMapParams::new(1.0, 1.0, std::f64::consts::FRAC_PI_2).unwrap();
        let map = ConformalMapSpec::FourSlit(p);
        let z = c(0.4, 0.1);
        let cf = slit_shear_closed(&p, 2, z).unwrap();
        let or = shear_oracle(&map, &MonomialDilatation::new(2), z, &cfg()).unwrap();
        assert!((cf.h - or.h).norm() < 1e-9, "{} vs {}", cf.h, or.h);
        assert!((cf.g - or.g).norm() < 1e-9);
    }

    #[test]
    fn slit_closed_resonant_matches_oracle() {
        // gamma = 2 pi / 3 is resonant with n = 3 (m = 1)
        let p = SlitMapParams::resonant(1.0, 1.0, 1, 3).unwrap();
        let map = ConformalMapSpec::FourSlit(p);
        let z = c(0.35, 0.15);
        let cf = slit_shear_closed(&p, 3, z).unwrap();
        let or = shear_oracle(&map, &MonomialDilatation::new(3), z, &cfg()).unwrap();
        assert!((cf.h - or.h).norm() < 1e-9, "{} vs {}", cf.h, or.h);
    }

    #[test]
    fn alpha_family_assembly_matches_oracle() {
        let p = SlitMapParams::alpha_family(std::f64::consts::FRAC_PI_3).unwrap();
        let map = ConformalMapSpec::FourSlit(p);
        let z = c(0.35, 0.0);
        let cf = slit_shear_closed(&p, 1, z).unwrap();
        let or = shear_oracle(&map, &MonomialDilatation::new(1), z, &cfg()).unwrap();
        assert!((cf.h - or.h).norm() < 1e-9, "{} vs {}", cf.h, or.h);
    }

    #[test]
    fn flipped_b_sign_is_wrong() {
        // regression pin for the sign of the B-term: flipping it must
        // produce an O(1) deviation from the oracle
        let p = SlitMapParams::new(1.0, 1.0, std::f64::consts::FRAC_PI_2).unwrap();
        let map = ConformalMapSpec::FourSlit(p);
        let z = c(0.4, 0.1);
        let gamma = std::f64::consts::FRAC_PI_2;
        let e_pos = Complex64::from_polar(1.0, gamma);
        let i = Complex64::new(0.0, 1.0);
        let i1 = slit_i1(2, z).unwrap();
        let i2 = slit_i_eta(e_pos.conj(), 2, z).unwrap();
        let i3 = slit_i_eta(e_pos, 2, z).unwrap();
        let h_flipped =
            2.0 * p.a * i1 + p.b / (2.0 * gamma.sin()) * i * (e_pos.conj() * i2 - e_pos * i3);
        let or = shear_oracle(&map, &MonomialDilatation::new(2), z, &cfg()).unwrap();
        assert!((h_flipped - or.h).norm() > 0.05, "flip went unnoticed");
    }

    #[test]
    fn polygon_z2n_matches_oracle_and_phi() {
        let p = NGonParams::new(4).unwrap();
        let map = ConformalMapSpec::RegularNGon(p);
        let z = c(0.3, 0.0);
        let cf = polygon_shear_z2n(&p, z).unwrap();
        let or = shear_oracle(&map, &MonomialDilatation::new(8), z, &cfg()).unwrap();
        assert!((cf.h - or.h).norm() < 1e-10, "{} vs {}", cf.h, or.h);
        let p3 = NGonParams::new(3).unwrap();
        let z = c(0.5, 0.0);
        let ev = polygon_shear_z2n(&p3, z).unwrap();
        let phi = ngon_phi_series(&p3, z).unwrap();
        assert!((ev.h - ev.g - phi).norm() < 1e-10);
    }

    #[test]
    fn polygon_z2_matches_oracle() {
        let p = NGonParams::new(5).unwrap();
        let map = ConformalMapSpec::RegularNGon(p);
        let z = c(0.25, 0.2);
        let cf = polygon_shear_z2(&p, z).unwrap();
        let or = shear_oracle(&map, &MonomialDilatation::new(2), z, &cfg()).unwrap();
        assert!((cf.h - or.h).norm() < 1e-10, "{} vs {}", cf.h, or.h);
        let p3 = NGonParams::new(3).unwrap();
        let z = c(0.4, 0.0);
        let ev = polygon_shear_z2(&p3, z).unwrap();
        let phi = ngon_phi_series(&p3, z).unwrap();
        assert!((ev.h - ev.g - phi).norm() < 1e-10);
    }

    #[test]
    fn polygon_z2_needs_odd_n() {
        let p = NGonParams::new(4).unwrap();
        assert!(matches!(
            polygon_shear_z2(&p, c(0.1, 0.0)),
            Err(Error::Parity(4))
        ));
    }

    #[test]
    fn verify_reports_clean_shears() {
        let samples: Vec<Complex64> = (0..20)
            .map(|i| Complex64::from_polar(0.05 + 0.04 * i as f64, 0.37 * i as f64))
            .collect();
        let map = ConformalMapSpec::RegularNGon(NGonParams::new(3).unwrap());
        let rep = verify_shear(&map, &MonomialDilatation::new(6), &samples, &cfg()).unwrap();
        assert!(rep.construction_residual < 1e-9, "{rep:?}");
        assert!(rep.min_jacobian > 0.0);
        assert!(rep.closed_vs_oracle.unwrap() < 1e-9, "{rep:?}");
        assert!(rep.dilatation_residual < 1e-7, "{rep:?}");
    }
}
