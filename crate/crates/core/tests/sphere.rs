use facetwise::sphere::special::regularized_incomplete_beta;
use facetwise::sphere::{
    cone_complement_radial, exact_cap_measure, exp_cap_bound, measure_mc, near_orthogonal_exact_union_bound,
    near_orthogonal_lower_bound, sample_sphere, sharp_cap_bound, sphere_area, unit_ball_volume,
    NearOrthogonalSet, SeedStream,
};
use proptest::prelude::*;
use statrs::function::beta::beta_reg;

/// Cap measure by Simpson's rule on the density `(1 - t^2)^{(n-3)/2}` of one
/// coordinate of a uniform point on `S^{n-1}`.
fn cap_by_quadrature(n: usize, h: f64) -> f64 {
    let k = 0.5 * (n as f64 - 3.0);
    let density = |t: f64| (1.0 - t * t).max(0.0).powf(k);
    let simpson = |a: f64, b: f64| {
        let steps = 20_000;
        let w = (b - a) / steps as f64;
        let mut s = density(a) + density(b);
        for i in 1..steps {
            s += density(a + i as f64 * w) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        s * w / 3.0
    };
    simpson(h, 1.0) / simpson(-1.0, 1.0)
}

#[test]
fn low_dimensional_closed_forms() {
    for k in 1..100 {
        let h = k as f64 / 100.0;
        assert!((exact_cap_measure(3, h).unwrap() - (1.0 - h) / 2.0).abs() <= 1e-12);
        assert!((exact_cap_measure(2, h).unwrap() - h.acos() / std::f64::consts::PI).abs() <= 1e-12);
        // n = 5: density (1 - t^2), antiderivative t - t^3/3, total 4/3
        let five = (2.0 / 3.0 - h + h * h * h / 3.0) * 0.75;
        assert!((exact_cap_measure(5, h).unwrap() - five).abs() <= 1e-12);
    }
}

#[test]
fn matches_quadrature_in_higher_dimensions() {
    for &n in &[5usize, 7, 10, 20] {
        for &h in &[0.05, 0.2, 0.5, 0.8] {
            let q = cap_by_quadrature(n, h);
            let e = exact_cap_measure(n, h).unwrap();
            assert!((q - e).abs() < 1e-9, "n={n} h={h}: {q} vs {e}");
        }
    }
}

#[test]
fn caps_are_dominated_by_both_bounds() {
    for n in 3..=40 {
        for k in 1..=19 {
            let h = 0.05 * k as f64;
            let exact = exact_cap_measure(n, h).unwrap();
            assert!(exact <= exp_cap_bound(n, h).unwrap());
            assert!(exact <= sharp_cap_bound(n, h).unwrap().value());
        }
    }
}

#[test]
fn cap_measure_is_monotone() {
    for n in [2usize, 3, 8, 50] {
        let mut prev = 0.5 + 1e-15;
        for k in 0..100 {
            let cur = exact_cap_measure(n, k as f64 / 100.0).unwrap();
            assert!(cur <= prev);
            prev = cur;
        }
    }
    for h in [0.1, 0.5, 0.9] {
        let mut prev = 1.0;
        for n in 2..60 {
            let cur = exact_cap_measure(n, h).unwrap();
            assert!(cur < prev);
            prev = cur;
        }
    }
}

#[test]
fn ball_volume_and_area_recursion() {
    // kappa_n = 2 pi / n * kappa_{n-2}
    for n in 3..30 {
        let rec = 2.0 * std::f64::consts::PI / n as f64 * unit_ball_volume(n - 2);
        assert!((unit_ball_volume(n) / rec - 1.0).abs() < 1e-12);
        assert!((sphere_area(n) / (n as f64 * unit_ball_volume(n)) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn band_measure_matches_monte_carlo() {
    // one center: A_eps is the band |<u, theta>| <= eps, of measure 1 - 2 cap(n, eps)
    for &(n, eps) in &[(3usize, 0.3), (6, 0.2), (12, 0.1)] {
        let mut center = vec![0.0; n];
        center[0] = 2.0;
        let set = NearOrthogonalSet::new(n, &[center], eps).unwrap();
        let est = measure_mc(&set, 40_000, &SeedStream::new(n as u64)).unwrap();
        let truth = 1.0 - 2.0 * exact_cap_measure(n, eps).unwrap();
        assert!((est.mean - truth).abs() < 4.0 * est.stderr + 1e-12, "n={n}: {} vs {truth}", est.mean);
        let bound = near_orthogonal_exact_union_bound(1, n, eps).unwrap();
        assert!((bound.value - truth).abs() < 1e-15);
    }
}

#[test]
fn union_bounds_hold_for_several_centers() {
    let n = 8;
    let eps = 0.45;
    let s = SeedStream::new(9);
    let centers: Vec<Vec<f64>> = (0..3).map(|i| sample_sphere(n, &mut s.fork(1).rng(i))).collect();
    let set = NearOrthogonalSet::new(n, &centers, eps).unwrap();
    let est = measure_mc(&set, 50_000, &s).unwrap();
    let exact = near_orthogonal_exact_union_bound(3, n, eps).unwrap();
    let loose = near_orthogonal_lower_bound(3, n, eps).unwrap();
    assert!(!exact.vacuous);
    assert!(exact.value >= loose.value);
    assert!(est.mean >= exact.value - 3.0 * est.stderr);
}

#[test]
fn sphere_samples_are_unit_and_reproducible() {
    let s = SeedStream::new(77);
    for i in 0..100 {
        let a = sample_sphere(7, &mut s.rng(i));
        let b = sample_sphere(7, &mut s.rng(i));
        assert_eq!(a, b);
        let len: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((len - 1.0).abs() < 1e-14);
    }
    // first moments vanish and second moments are 1/n
    let n = 4;
    let draws = 40_000;
    let mut m2 = 0.0;
    let mut m1 = 0.0;
    for i in 0..draws {
        let v = sample_sphere(n, &mut s.rng(i));
        m1 += v[0];
        m2 += v[0] * v[0];
    }
    assert!((m1 / draws as f64).abs() < 0.02);
    assert!((m2 / draws as f64 - 0.25).abs() < 0.01);
}

/// Distance from `t e_1` to the set `{x : |x_1| <= eps |x|}` in the plane,
/// by scanning the boundary ray at angle `asin(eps)` above the `x_2` axis.
fn distance_to_band_cone(t: f64, eps: f64) -> f64 {
    let phi = eps.asin();
    let dir = [phi.sin(), phi.cos()];
    let mut best = f64::INFINITY;
    let steps = 200_000;
    for i in 0..=steps {
        let s = 2.0 * t * i as f64 / steps as f64;
        let d = ((t - s * dir[0]).powi(2) + (s * dir[1]).powi(2)).sqrt();
        best = best.min(d);
    }
    best
}

#[test]
fn cone_radial_matches_planar_distance() {
    for &eps in &[0.1, 0.3, 0.6, 0.9] {
        let (mut lo, mut hi) = (0.5, 10.0);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if distance_to_band_cone(mid, eps) < 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let closed = cone_complement_radial(eps).unwrap();
        assert!((lo - closed).abs() < 1e-6, "eps={eps}: {lo} vs {closed}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn incomplete_beta_matches_statrs(a in 0.5f64..40.0, b in 0.5f64..5.0, x in 0.0f64..1.0) {
        let ours = regularized_incomplete_beta(a, b, x).unwrap();
        let theirs = beta_reg(a, b, x);
        prop_assert!((ours - theirs).abs() < 1e-12, "{ours} vs {theirs}");
    }

    #[test]
    fn cap_matches_statrs_beta(n in 2usize..60, h in 0.0f64..0.99) {
        let c = exact_cap_measure(n, h).unwrap();
        prop_assert!((0.0..=0.5).contains(&c));
        let x = 1.0 - h * h;
        let direct = 0.5 * beta_reg(0.5 * (n as f64 - 1.0), 0.5, x);
        prop_assert!((c - direct).abs() < 1e-12);
    }

    #[test]
    fn sharp_bound_beats_exp_bound_for_large_h(n in 20usize..200, h in 0.9f64..0.99) {
        prop_assert!(sharp_cap_bound(n, h).unwrap().value() <= exp_cap_bound(n, h).unwrap());
    }
}
