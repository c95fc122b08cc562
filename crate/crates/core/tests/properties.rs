//! Property-based invariants: quadrature algebra, hypergeometric
//! identities, and symmetries of the catalog maps.

use num_complex::Complex64;
use proptest::prelude::*;
use shearlab::maps::{ngon_phi_series, slit_phi, ConformalMapSpec, NGonParams, SlitMapParams};
use shearlab::numerics::integrate_segment;
use shearlab::shear::{shear_eval, MonomialDilatation};
use shearlab::specfun::{appell_f1, gauss_2f1, AppellF1Params, Gauss2F1Params};
use shearlab::QuadratureConfig;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn disk_point(r_cap: f64) -> impl Strategy<Value = Complex64> {
    (0.0..1.0f64, 0.0..std::f64::consts::TAU)
        .prop_map(move |(r, th)| Complex64::from_polar(r_cap * r.sqrt(), th))
}

fn poly_eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::default(), |acc, &a| acc * z + a)
}

fn poly_derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &a)| a * k as f64)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn quadrature_linearity(
        z in disk_point(0.9),
        af in -2.0..2.0f64,
        bf in -2.0..2.0f64,
    ) {
        let cfg = QuadratureConfig::default();
        let f = |w: Complex64| w * w + 1.0;
        let g = |w: Complex64| w.powu(3) - 2.0 * w;
        let combined = integrate_segment(
            |w| af * f(w) + bf * g(w),
            Complex64::default(),
            z,
            &cfg,
        ).unwrap();
        let separate = af * integrate_segment(f, Complex64::default(), z, &cfg).unwrap()
            + bf * integrate_segment(g, Complex64::default(), z, &cfg).unwrap();
        prop_assert!((combined - separate).norm() < 1e-11);
    }

    #[test]
    fn quadrature_antiderivative(
        z in disk_point(0.9),
        coeffs in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 2..11),
    ) {
        let cfg = QuadratureConfig::default();
        let p: Vec<Complex64> = coeffs.iter().map(|&(re, im)| c(re, im)).collect();
        let dp = poly_derivative(&p);
        let integral = integrate_segment(|w| poly_eval(&dp, w), Complex64::default(), z, &cfg).unwrap();
        let expect = poly_eval(&p, z) - poly_eval(&p, Complex64::default());
        prop_assert!((integral - expect).norm() < 1e-11);
    }

    #[test]
    fn appell_f1_argument_symmetry(
        x in disk_point(0.6),
        y in disk_point(0.6),
        b1 in -1.0..1.5f64,
        b2 in -1.0..1.5f64,
    ) {
        let p = AppellF1Params {
            a: c(0.6, 0.1),
            b1: c(b1, 0.0),
            b2: c(b2, 0.0),
            c: c(1.8, 0.0),
        };
        let swapped = AppellF1Params { b1: p.b2, b2: p.b1, ..p };
        let lhs = appell_f1(&p, x, y).unwrap();
        let rhs = appell_f1(&swapped, y, x).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-12 * lhs.norm().max(1.0));
    }

    #[test]
    fn gauss_2f1_contiguous_relation(
        z in disk_point(0.6),
        a_re in 0.2..1.5f64,
        b_re in 0.2..1.5f64,
    ) {
        // c F(a,b;c;z) - c F(a,b+1;c;z) + a z F(a+1,b+1;c+1;z) = 0
        let a = c(a_re, 0.1);
        let b = c(b_re, -0.2);
        let cc = c(2.1, 0.0);
        let f = |aa, bb, ccc| gauss_2f1(&Gauss2F1Params { a: aa, b: bb, c: ccc }, z).unwrap();
        let one = c(1.0, 0.0);
        let lhs = cc * f(a, b, cc) - cc * f(a, b + one, cc) + a * z * f(a + one, b + one, cc + one);
        prop_assert!(lhs.norm() < 1e-10, "residual {:.3e}", lhs.norm());
    }

    #[test]
    fn conjugate_symmetry_of_maps(z in disk_point(0.85)) {
        let slit = SlitMapParams::new(1.0, 1.0, 1.1).unwrap();
        let lhs = slit_phi(&slit, z.conj()).unwrap();
        let rhs = slit_phi(&slit, z).unwrap().conj();
        prop_assert!((lhs - rhs).norm() < 1e-12);
        let p = NGonParams::new(5).unwrap();
        let lhs = ngon_phi_series(&p, z.conj()).unwrap();
        let rhs = ngon_phi_series(&p, z).unwrap().conj();
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn conjugate_symmetry_of_shears(z in disk_point(0.85)) {
        let cfg = QuadratureConfig::default();
        let cases = [
            (
                ConformalMapSpec::FourSlit(SlitMapParams::new(1.0, 1.0, std::f64::consts::FRAC_PI_2).unwrap()),
                MonomialDilatation::new(2),
            ),
            (
                ConformalMapSpec::RegularNGon(NGonParams::new(4).unwrap()),
                MonomialDilatation::new(8),
            ),
        ];
        for (map, dil) in &cases {
            let lhs = shear_eval(map, dil, z.conj(), &cfg).unwrap().f;
            let rhs = shear_eval(map, dil, z, &cfg).unwrap().f.conj();
            prop_assert!((lhs - rhs).norm() < 1e-10);
        }
    }
}

#[test]
fn ngon_boundary_shape() {
    // near the boundary the image approaches a regular n-gon: edge-midpoint
    // directions have equal modulus and consecutive vertices differ by a
    // rotation of 2 pi / n
    let r = 0.999;
    for n in [3u32, 4, 5, 6] {
        let p = NGonParams::new(n).unwrap();
        let mids: Vec<Complex64> = (0..n)
            .map(|k| {
                let th = std::f64::consts::PI * (2 * k + 1) as f64 / n as f64;
                ngon_phi_series(&p, Complex64::from_polar(r, th)).unwrap()
            })
            .collect();
        let m0 = mids[0].norm();
        for m in &mids {
            assert!((m.norm() - m0).abs() / m0 < 1e-3, "n = {n}");
        }
        let rot = Complex64::from_polar(1.0, std::f64::consts::TAU / n as f64);
        let v0 = ngon_phi_series(&p, c(r, 0.0)).unwrap();
        for k in 0..n {
            let zk = Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / n as f64);
            let vk = ngon_phi_series(&p, zk).unwrap();
            assert!((vk - rot.powu(k) * v0).norm() < 1e-6 * v0.norm(), "n = {n}, k = {k}");
        }
    }
}
