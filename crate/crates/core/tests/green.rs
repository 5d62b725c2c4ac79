use hyperlap_core::green::{
    green_hc, green_hc_oracle, green_hn, green_lower_bound_hn, hn_rho_sq, resolvent_apply_radial, s_epsilon_radial,
};
use hyperlap_core::kernels::hn_heat;
use hyperlap_core::quadrature::integrate_to_infinity;
use hyperlap_core::QuadratureSpec;

#[test]
fn resolvent_identity_through_laplace_transforms() {
    // ∫e^{−λt}K − ∫e^{−μt}K = (μ − λ)∫∫e^{−λt−μs}K(t + s) dt ds at n = 3, r = 1, (λ, μ) = (0, 1)
    let q = QuadratureSpec::default().with_rel_tol(1e-8);
    let lhs = green_hn(3, 0.0, 1.0, &q).unwrap() - green_hn(3, 1.0, 1.0, &q).unwrap();
    let inner = |s: f64| integrate_to_infinity(|t| hn_heat(3, t + s, 1.0, &q).unwrap(), 0.0, 1.0, &q).unwrap();
    let rhs = integrate_to_infinity(|s| (-s).exp() * inner(s), 0.0, 1.0, &q).unwrap();
    assert!((lhs - rhs).abs() < 1e-3 * lhs, "{lhs} {rhs}");
}

#[test]
fn green_decreasing_and_log_convex_in_r() {
    let q = QuadratureSpec::default();
    for n in [3usize, 5, 7] {
        for l in [0.0, 1.0] {
            let ln: Vec<f64> = (1..=25).map(|i| green_hn(n, l, 0.2 * i as f64, &q).unwrap().ln()).collect();
            for w in ln.windows(3) {
                assert!(w[1] < w[0] && w[2] < w[1]);
                assert!(w[0] + w[2] - 2.0 * w[1] > -1e-10, "n={n} λ={l}");
            }
        }
    }
}

#[test]
fn lower_bound_holds_at_sample_points() {
    let q = QuadratureSpec::default();
    for n in [5usize, 9] {
        let rho_sq: f64 = hn_rho_sq(n);
        let rho = rho_sq.sqrt();
        let alpha = 0.5 * (0.5 / rho + 1.0 - 1.0 / rho);
        for r in [0.2, 1.0, 3.0] {
            let g = green_hn(n, -(1.0 - alpha * alpha) * rho_sq, r, &q).unwrap();
            let b = green_lower_bound_hn(n, alpha, r).unwrap();
            assert!(g > b, "n={n} r={r}: {g} {b}");
        }
    }
}

#[test]
fn complex_closed_form_matches_laplace_route() {
    let q = QuadratureSpec::default();
    for (n, l, s) in [(2usize, 0.5f64, 1.0f64), (3, 0.0, 0.7), (3, 1.0, 2.0)] {
        let a = green_hc(n, l, s, &q).unwrap();
        let b = green_hc_oracle(n, l, s, &q).unwrap();
        assert!((a - b).abs() < 1e-6 * b, "n={n}: {a} {b}");
    }
}

#[test]
fn radial_fixtures() {
    let q = QuadratureSpec::default();
    // n = 3, λ = 1, f = 1_[1,2]: ∫₁² e^{−√2 r} sinh r dr
    let s2 = 2f64.sqrt();
    let anti = |r: f64| 0.5 * ((1.0 - s2) * r).exp() / (1.0 - s2) + 0.5 * (-(1.0 + s2) * r).exp() / (1.0 + s2);
    let ind = |r: f64| if (1.0..2.0).contains(&r) { 1.0 } else { 0.0 };
    let v = resolvent_apply_radial(3, 1.0, ind, &[1.0, 2.0], &q).unwrap();
    assert!((v - (anti(2.0) - anti(1.0))).abs() < 1e-9 * v);
    // ε = 1, f = 1_[1,2], n = 3: ∫₁² V′/V = ln(V(2)/V(1)), V(r) = π(sinh 2r − 2r)
    let vol = |r: f64| std::f64::consts::PI * ((2.0 * r).sinh() - 2.0 * r);
    let s = s_epsilon_radial(3, 1.0, ind, &[1.0, 2.0], &q).unwrap();
    let e = (vol(2.0) / vol(1.0)).ln();
    assert!((s - e).abs() < 1e-9 * e, "{s} {e}");
}
