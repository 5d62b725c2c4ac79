use hyperlap_core::geometry::{an_volume_density, vc_volume_density};
use hyperlap_core::kernels::{an_heat, hc_heat, hn_heat, k2_direct, odd_heat_expr, AnHeat, HcHeat, HnHeat};
use hyperlap_core::quadrature::{integrate, integrate_to_infinity};
use hyperlap_core::scalar::ln_sinh;
use hyperlap_core::special_fn::sphere_area;
use hyperlap_core::QuadratureSpec;

fn radial_mass<F: Fn(f64) -> f64>(f: F, q: &QuadratureSpec<f64>) -> f64 {
    integrate(&f, 0.0, 1.0, q).unwrap() + integrate_to_infinity(&f, 1.0, 1.0, q).unwrap()
}

#[test]
fn hn_mass_is_one() {
    let q = QuadratureSpec::<f64>::default().with_rel_tol(1e-9);
    for n in [2usize, 3, 4, 5] {
        let k = HnHeat::<f64>::new(n).unwrap();
        let omega = sphere_area::<f64>(n).unwrap();
        for t in [0.1, 1.0] {
            let m = radial_mass(|r| k.eval(t, r, &q).unwrap() * omega * ((n - 1) as f64 * ln_sinh(r)).exp(), &q);
            assert!((m - 1.0).abs() < 1e-7, "n={n} t={t}: {m}");
        }
    }
}

#[test]
fn complex_mass_is_one() {
    let q = QuadratureSpec::<f64>::default().with_rel_tol(1e-9);
    for n in [2usize, 3] {
        let k = HcHeat::<f64>::new(n).unwrap();
        for t in [0.5, 1.0] {
            let m = radial_mass(|r| k.eval(t, r, &q).unwrap() * vc_volume_density::<f64>(n, r).unwrap(), &q);
            assert!((m - 1.0).abs() < 1e-6, "n={n} t={t}: {m}");
        }
    }
}

#[test]
fn an_mass_is_one() {
    let q = QuadratureSpec::<f64>::default().with_rel_tol(1e-9);
    for (two_n, m) in [(2usize, 1usize), (4, 3), (2, 2), (4, 4)] {
        let k = AnHeat::<f64>::new(two_n, m).unwrap();
        let mass = radial_mass(|r| k.eval(1.0, r, &q).unwrap() * an_volume_density::<f64>(two_n, m, r).unwrap(), &q);
        assert!((mass - 1.0).abs() < 1e-6, "({two_n},{m}): {mass}");
    }
}

#[test]
fn k2_double_route() {
    let q = QuadratureSpec::<f64>::default();
    for t in [0.5, 1.0] {
        for r in [0.5, 1.0, 2.0] {
            let a = hn_heat(2, t, r, &q).unwrap();
            let b = k2_direct(t, r, &q).unwrap();
            assert!((a - b).abs() < 1e-8 * b, "t={t} r={r}: {a} {b}");
        }
    }
}

#[test]
fn k3_fixture() {
    let v = odd_heat_expr::<f64>(3).unwrap().eval(1.0, 1.0);
    let expect = (-1.0f64).exp() * (4.0 * std::f64::consts::PI).powf(-1.5) / 1.0f64.sinh() * (-0.25f64).exp();
    assert!((v - expect).abs() < 1e-15 * expect);
}

#[test]
fn positive_decreasing_and_ordered_in_dimension() {
    let q = QuadratureSpec::<f64>::default();
    let ks: Vec<HnHeat<f64>> = (2..=6).map(|n| HnHeat::new(n).unwrap()).collect();
    for t in [0.3, 1.0, 3.0] {
        let mut prev = vec![f64::INFINITY; ks.len()];
        for i in 0..=16 {
            let r = 0.4 * i as f64;
            let vals: Vec<f64> = ks.iter().map(|k| k.eval(t, r, &q).unwrap()).collect();
            for (j, v) in vals.iter().enumerate() {
                assert!(*v > 0.0 && *v < prev[j], "n={} t={t} r={r}", j + 2);
            }
            if r >= 1.0 {
                assert!(vals.windows(2).all(|w| w[1] < w[0]), "t={t} r={r}");
            }
            prev = vals;
        }
    }
}

#[test]
fn heat_semigroup_in_time() {
    // K(t+s, ρ) = ∫ K(t, r) K(s, d(ξ, h)) dμ(ξ) in polar coordinates around the origin.
    let q = QuadratureSpec::<f64>::default().with_rel_tol(1e-7);
    let (t, s, rho) = (0.4, 0.6, 0.8_f64);
    for n in [2usize, 3] {
        let k = HnHeat::<f64>::new(n).unwrap();
        let inner = |r: f64| -> f64 {
            let ang = |th: f64| {
                let c = r.cosh() * rho.cosh() - r.sinh() * rho.sinh() * th.cos();
                let d = c.max(1.0).acosh();
                let w = if n == 2 { 2.0 } else { 2.0 * std::f64::consts::PI * th.sin() };
                w * k.eval(s, d, &q).unwrap()
            };
            let a = integrate(ang, 0.0, std::f64::consts::PI, &q).unwrap();
            k.eval(t, r, &q).unwrap() * r.sinh().powi(n as i32 - 1) * a
        };
        let conv = integrate(inner, 0.0, 4.0, &q).unwrap() + integrate(inner, 4.0, 12.0, &q).unwrap();
        let direct = k.eval(t + s, rho, &q).unwrap();
        assert!((conv - direct).abs() < 1e-3 * direct, "n={n}: {conv} {direct}");
    }
}

#[test]
fn h21_an_kernel_is_proportional_to_complex_kernel() {
    let q = QuadratureSpec::<f64>::default();
    let mut ratios = Vec::new();
    for t in [0.3, 1.0, 2.5] {
        for r in [0.2, 1.0, 3.0] {
            ratios.push(an_heat(2, 1, t, r, &q).unwrap() / hc_heat(2, t, r, &q).unwrap());
        }
    }
    let r0 = ratios[0];
    assert!(ratios.iter().all(|r| (r / r0 - 1.0).abs() < 1e-8));
}
