use std::f64::consts::PI;

use hyperlap_core::geometry::{htype_mul, HTypeDescriptor, HTypePoint};
use hyperlap_core::maximal::{
    euclid_maximal_radial, heisenberg_spherical_maximal, hn_discrete_maximal, hn_maximal_many, log_grid, lp_norm,
    HalfSpaceGrid, NamedTestFunction, OpnormProbe, SampledField, SphereQuadrature, TestFunction,
};
use hyperlap_core::profile::Profile;
use hyperlap_core::QuadratureSpec;

/// Volume of B(0, 1) ∩ B(c, r) with |c| = t.
fn lens_volume(t: f64, r: f64) -> f64 {
    if t >= 1.0 + r {
        return 0.0;
    }
    if t + r <= 1.0 {
        return 4.0 / 3.0 * PI * r.powi(3);
    }
    if t + 1.0 <= r {
        return 4.0 / 3.0 * PI;
    }
    PI * (1.0 + r - t).powi(2) * (t * t + 2.0 * t * r - 3.0 * r * r + 2.0 * t + 6.0 * r - 3.0) / (12.0 * t)
}

#[test]
fn euclidean_maximal_of_ball_indicator_matches_lens_oracle() {
    let q = QuadratureSpec::default();
    let psi = Profile::Indicator { lo: 0.0, hi: 1.0 };
    for t in [1.5, 2.0, 3.0] {
        let mut oracle = 0.0f64;
        for i in 1..200_000 {
            let r = i as f64 * 5e-5;
            oracle = oracle.max(lens_volume(t, r) / (4.0 / 3.0 * PI * r.powi(3)));
        }
        let v = euclid_maximal_radial(3, &psi, t, &q).unwrap();
        assert!((v - oracle).abs() < 5e-3 * oracle, "t={t}: {v} vs {oracle}");
        assert!(v <= oracle * (1.0 + 1e-9));
    }
    assert!((euclid_maximal_radial(3, &Profile::Constant { value: 1.0 }, 1.0, &q).unwrap() - 1.0).abs() < 1e-9);
    assert!((euclid_maximal_radial(4, &psi, 0.0, &q).unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn spike_maximal_is_attained_at_smallest_ball() {
    let g = HalfSpaceGrid::<f64>::new(2, 1.0, 9, 1.0, 9).unwrap();
    let c = g.center_index();
    let mut v = vec![0.0; g.len()];
    v[c] = 3.0;
    let g = g.with_values(v).unwrap();
    let r = g.default_r_grid();
    let m = hn_discrete_maximal(&g, c, &r).unwrap();
    assert_eq!(m, 3.0);
    let coarse = [0.5, 1.0, 2.0];
    let m_coarse = hn_discrete_maximal(&g, c, &coarse).unwrap();
    let m_half = hn_discrete_maximal(&g, c, &coarse[..1]).unwrap();
    assert_eq!(m_coarse, m_half);
    assert!(m_half < 3.0);
}

#[test]
fn lp_norm_of_constant_is_mass_power() {
    let g = HalfSpaceGrid::<f64>::new(3, 1.0, 7, 1.0, 7).unwrap();
    let mass: f64 = (0..g.len()).map(|i| g.weight(i)).sum();
    let one = vec![1.0; g.len()];
    for p in [1.0, 1.5, 2.0, 4.0] {
        let v = lp_norm(&g, &one, p).unwrap();
        assert!((v - mass.powf(1.0 / p)).abs() < 1e-12 * v);
    }
    let f: Vec<f64> = (0..g.len()).map(|i| (i % 5) as f64).collect();
    let direct: f64 = f.iter().enumerate().map(|(i, v)| v * v * g.weight(i)).sum();
    assert!((lp_norm(&g, &f, 2.0).unwrap().powi(2) - direct).abs() < 1e-12 * direct);
    assert!(lp_norm(&g, &f, 0.5).is_err());
}

#[test]
fn opnorm_ratio_grows_as_p_decreases_on_spikes() {
    let suite = vec![NamedTestFunction { name: "spike".into(), function: TestFunction::Spike }];
    let g = HalfSpaceGrid::<f64>::default_for(2).unwrap();
    let r = g.default_r_grid();
    let probe = OpnormProbe::new(g, &suite, &r).unwrap();
    let low = probe.max_ratio(1.1).unwrap();
    let high = probe.max_ratio(4.0).unwrap();
    assert!(low > high && high >= 1.0, "{low} {high}");
}

#[test]
fn maximal_is_monotone_under_domination() {
    let g = HalfSpaceGrid::<f64>::new(2, 1.2, 13, 1.5, 13).unwrap();
    let f: Vec<f64> = (0..g.len()).map(|i| ((i * 7919) % 13) as f64).collect();
    let h: Vec<f64> = f.iter().enumerate().map(|(i, v)| v + (i % 3) as f64).collect();
    let centers: Vec<usize> = (0..g.len()).collect();
    let m = hn_maximal_many(&g, &[&f, &h], &centers, &g.default_r_grid()).unwrap();
    assert!(m[0].iter().zip(&m[1]).all(|(a, b)| a <= b));
}

#[test]
fn heisenberg_spherical_maximal_basics() {
    let d = HTypeDescriptor::<f64>::heisenberg(1);
    let sphere = SphereQuadrature::circle(64).unwrap();
    let r = log_grid(0.05, 3.0, 16);
    let o = HTypePoint::zero(&d);
    let one = |_: &HTypePoint<f64>| 1.0;
    assert!((heisenberg_spherical_maximal(&d, &one, &o, &r, &sphere).unwrap() - 1.0).abs() < 1e-12);
    let gauge = |p: &HTypePoint<f64>| {
        let x2 = p.x[0] * p.x[0] + p.x[1] * p.x[1];
        (-(x2 * x2 / 16.0 + p.rho[0] * p.rho[0]).sqrt()).exp()
    };
    let v = heisenberg_spherical_maximal(&d, &gauge, &o, &r, &sphere).unwrap();
    assert!(v <= 1.0 && v > 0.9);
}

#[test]
fn heisenberg_spherical_maximal_translation_covariance() {
    let d = HTypeDescriptor::<f64>::heisenberg(1);
    let sphere = SphereQuadrature::circle(48).unwrap();
    let r = log_grid(0.05, 1.5, 12);
    let f = |p: &HTypePoint<f64>| (-(p.x[0] * p.x[0] + 0.5 * p.x[1] * p.x[1] + p.rho[0] * p.rho[0])).exp();
    let g = HTypePoint { x: vec![0.3, -0.2], rho: vec![0.1] };
    let moved = |p: &HTypePoint<f64>| f(&htype_mul(&d, &g, p).unwrap());
    let base = SampledField::sample(&f, 4.0, 161, 4.0, 161).unwrap();
    let shifted = SampledField::sample(&moved, 4.0, 161, 4.0, 161).unwrap();
    for x in [HTypePoint { x: vec![0.0, 0.0], rho: vec![0.0] }, HTypePoint { x: vec![-0.5, 0.4], rho: vec![0.3] }] {
        let lhs = heisenberg_spherical_maximal(&d, &shifted, &x, &r, &sphere).unwrap();
        let gx = htype_mul(&d, &g, &x).unwrap();
        let rhs = heisenberg_spherical_maximal(&d, &base, &gx, &r, &sphere).unwrap();
        assert!((lhs - rhs).abs() < 2e-3, "{lhs} {rhs}");
    }
}
