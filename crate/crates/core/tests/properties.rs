use hyperlap_core::geometry::{
    an_distance, an_inv, an_mul, ball_contains, hn_distance, htype_dilate, htype_inv, htype_mul, ANBall, ANPoint,
    HTypeDescriptor, HTypePoint, HnPoint,
};
use hyperlap_core::inequalities::{f_beta, phi, s_o_solve};
use hyperlap_core::kernels::sl_kernel;
use hyperlap_core::maximal::{convolution_majorization_1d, hn_maximal_many, lp_norm, maximal_1d, HalfSpaceGrid};
use hyperlap_core::quadrature::integrate;
use hyperlap_core::QuadratureSpec;
use proptest::prelude::*;

fn descriptor(which: usize) -> HTypeDescriptor<f64> {
    match which % 3 {
        0 => HTypeDescriptor::heisenberg(1),
        1 => HTypeDescriptor::heisenberg(2),
        _ => HTypeDescriptor::quaternionic(3).unwrap(),
    }
}

fn point(d: &HTypeDescriptor<f64>, raw: &[f64]) -> HTypePoint<f64> {
    HTypePoint { x: raw[..d.two_n].to_vec(), rho: raw[d.two_n..d.two_n + d.m].to_vec() }
}

fn close(p: &HTypePoint<f64>, q: &HTypePoint<f64>, tol: f64) -> bool {
    p.x.iter().chain(&p.rho).zip(q.x.iter().chain(&q.rho)).all(|(a, b)| (a - b).abs() <= tol * (1.0 + b.abs()))
}

fn coords() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0..3.0f64, 7)
}

fn small_grid() -> HalfSpaceGrid<f64> {
    HalfSpaceGrid::new(2, 1.5, 11, 2.0, 11).unwrap()
}

fn field() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0..10.0f64, 121)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn htype_associative_with_inverses(w in 0usize..3, a in coords(), b in coords(), c in coords()) {
        let d = descriptor(w);
        let (p, q, s) = (point(&d, &a), point(&d, &b), point(&d, &c));
        let l = htype_mul(&d, &htype_mul(&d, &p, &q).unwrap(), &s).unwrap();
        let r = htype_mul(&d, &p, &htype_mul(&d, &q, &s).unwrap()).unwrap();
        prop_assert!(close(&l, &r, 1e-12));
        let e = htype_mul(&d, &htype_inv(&p), &p).unwrap();
        prop_assert!(close(&e, &HTypePoint::zero(&d), 1e-12));
    }

    #[test]
    fn dilations_are_automorphisms(w in 0usize..3, a in coords(), b in coords(), t in 0.1..5.0f64) {
        let d = descriptor(w);
        let (p, q) = (point(&d, &a), point(&d, &b));
        let l = htype_dilate(&htype_mul(&d, &p, &q).unwrap(), t);
        let r = htype_mul(&d, &htype_dilate(&p, t), &htype_dilate(&q, t)).unwrap();
        prop_assert!(close(&l, &r, 1e-12));
    }

    #[test]
    fn an_distance_is_left_invariant_and_symmetric(
        w in 0usize..3, a in coords(), b in coords(), c in coords(), la in -1.5..1.5f64, lb in -1.5..1.5f64, lc in -1.5..1.5f64,
    ) {
        let d = descriptor(w);
        let g = ANPoint::new(la.exp(), point(&d, &a)).unwrap();
        let h = ANPoint::new(lb.exp(), point(&d, &b)).unwrap();
        let k = ANPoint::new(lc.exp(), point(&d, &c)).unwrap();
        let dhk = an_distance(&d, &h, &k).unwrap();
        let moved = an_distance(&d, &an_mul(&d, &g, &h).unwrap(), &an_mul(&d, &g, &k).unwrap()).unwrap();
        prop_assert!((dhk - moved).abs() <= 1e-8 * (1.0 + dhk));
        prop_assert!((dhk - an_distance(&d, &k, &h).unwrap()).abs() <= 1e-8 * (1.0 + dhk));
        let back = an_mul(&d, &an_inv(&g), &g).unwrap();
        prop_assert!((back.a - 1.0).abs() < 1e-12 && close(&back.n_part, &HTypePoint::zero(&d), 1e-12));
    }

    #[test]
    fn ball_membership_matches_distance(w in 0usize..3, a in coords(), b in coords(), la in -1.0..1.0f64, lb in -1.0..1.0f64, r in 0.1..4.0f64) {
        let d = descriptor(w);
        let g = ANPoint::new(la.exp(), point(&d, &a)).unwrap();
        let h = ANPoint::new(lb.exp(), point(&d, &b)).unwrap();
        let dist = an_distance(&d, &g, &h).unwrap();
        prop_assume!((dist - r).abs() > 1e-9);
        prop_assert_eq!(ball_contains(&d, &ANBall { center: g, radius: r }, &h).unwrap(), dist < r);
    }

    #[test]
    fn hn_distance_is_a_metric(y in prop::collection::vec(0.1..5.0f64, 3), x in prop::collection::vec(-3.0..3.0f64, 6)) {
        let p = HnPoint::new(y[0], x[0..2].to_vec()).unwrap();
        let q = HnPoint::new(y[1], x[2..4].to_vec()).unwrap();
        let s = HnPoint::new(y[2], x[4..6].to_vec()).unwrap();
        let (pq, qs, ps) = (hn_distance(&p, &q), hn_distance(&q, &s), hn_distance(&p, &s));
        prop_assert!((pq - hn_distance(&q, &p)).abs() < 1e-12 * (1.0 + pq));
        prop_assert!(ps <= pq + qs + 1e-9);
    }

    #[test]
    fn phi_strictly_decreasing(a in 1e-3..10.0f64, gap in 1e-3..5.0f64) {
        prop_assert!(phi(a) > phi(a + gap));
        prop_assert!(phi(a) < 0.5);
    }

    #[test]
    fn critical_point_is_the_maximum(k in 3i32..12, frac in 0.0..1.0f64) {
        let beta = 0.5f64.powi(k);
        let res = s_o_solve(beta, 1e-14).unwrap();
        let s = beta * frac * 0.999;
        prop_assert!(f_beta(beta, s).unwrap() <= res.sup_value * (1.0 + 1e-9));
        prop_assert!(res.s_o > 0.0 && res.s_o < beta && res.sup_value > 0.0);
    }

    #[test]
    fn sturm_liouville_kernel_is_markov(alpha in 0.5..6.0f64, t in 0.05..3.0f64, y in 0.2..5.0f64) {
        let q = QuadratureSpec::default().with_rel_tol(1e-9);
        let (c, w) = (-alpha * t, 20.0 * t.sqrt());
        let mass = integrate(|u: f64| { let v = y * u.exp(); sl_kernel(alpha, t, y, v) * v.powf(-alpha) }, c - w, c + w, &q).unwrap();
        prop_assert!((mass - 1.0).abs() < 1e-6, "mass {}", mass);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn grid_maximal_sublinear_homogeneous_and_bounded(f in field(), g in field(), c in 0.1..10.0f64) {
        let grid = small_grid();
        let r = grid.default_r_grid();
        let sum: Vec<f64> = f.iter().zip(&g).map(|(a, b)| a + b).collect();
        let scaled: Vec<f64> = f.iter().map(|a| c * a).collect();
        let centers: Vec<usize> = (0..grid.len()).collect();
        let m = hn_maximal_many(&grid, &[&f, &g, &sum, &scaled], &centers, &r).unwrap();
        let sup = f.iter().fold(0.0f64, |a, &b| a.max(b));
        #[allow(clippy::needless_range_loop)]
        for i in 0..centers.len() {
            prop_assert!(m[2][i] <= (m[0][i] + m[1][i]) * (1.0 + 1e-12));
            prop_assert!((m[3][i] - c * m[0][i]).abs() <= 1e-12 * c * m[0][i]);
            prop_assert!(m[0][i] <= sup * (1.0 + 1e-12));
        }
    }

    #[test]
    fn lp_norm_is_homogeneous(f in field(), c in 0.1..10.0f64, p in 1.0..6.0f64) {
        let grid = small_grid();
        let scaled: Vec<f64> = f.iter().map(|a| c * a).collect();
        let a = lp_norm(&grid, &f, p).unwrap();
        prop_assert!((lp_norm(&grid, &scaled, p).unwrap() - c * a).abs() <= 1e-12 * c * a);
    }

    #[test]
    fn one_dimensional_majorization(f in prop::collection::vec(0.0..5.0f64, 1..40), raw in prop::collection::vec(0.0..1.0f64, 1..6)) {
        let mf = maximal_1d(&f);
        prop_assert!(mf.iter().zip(&f).all(|(m, v)| m >= v));
        let mut half = raw.clone();
        half.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let mut phi_k: Vec<f64> = half.iter().rev().copied().collect();
        phi_k.extend_from_slice(&half[1..]);
        prop_assert!(convolution_majorization_1d(&f, &phi_k).unwrap() <= 1.0 + 1e-12);
    }
}
