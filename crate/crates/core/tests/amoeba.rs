use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropica::amoeba::*;
use tropica::exact::q;
use tropica::hypersurface::corner_locus;
use tropica::par;

fn line() -> ComplexLaurentPolynomial {
    ComplexLaurentPolynomial::from_real([([0, 0], 1.0), ([1, 0], 1.0), ([0, 1], 1.0)]).unwrap()
}

/// Conic with coefficients e^(-c(j1² + j1 j2 + j2²)): well separated magnitudes.
fn staircase_conic(c: f64) -> ComplexLaurentPolynomial {
    let terms = (0..=2i64).flat_map(|i| (0..=2 - i).map(move |j| ([i, j], (-c * (i * i + i * j + j * j) as f64).exp())));
    ComplexLaurentPolynomial::from_real(terms).unwrap()
}

#[test]
fn slices_of_the_line() {
    let f = line();
    let s = amoeba_slice(&f, 0.0, 720).unwrap();
    // w = -1 - z: |w| = 2 at z = 1, |w| → 0 as θ → π
    assert!(s.values.iter().any(|v| (v - 2f64.ln()).abs() < 1e-12));
    assert!(s.values[0] < -5.0);
    let far = amoeba_slice(&f, 3.0, 720).unwrap();
    assert!(far.values.iter().all(|v| *v >= (3f64.exp() - 1.0).ln() - 1e-12));
    assert!(is_member(&f, [0.0, 0.0], 64).unwrap());
}

#[test]
fn roots_recover_a_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let n = rng.random_range(3..9);
        let roots: Vec<Complex64> = (0..n)
            .map(|_| Complex64::from_polar(10f64.powf(rng.random_range(-2.0..2.0)), rng.random_range(0.0..std::f64::consts::TAU)))
            .collect();
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for r in &roots {
            let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
            for (k, a) in c.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= a * r;
            }
            c = next;
        }
        let found = poly_roots(&c).unwrap();
        assert_eq!(found.len(), n);
        for r in &roots {
            let best = found.iter().map(|f| (f - r).norm() / r.norm()).fold(f64::INFINITY, f64::min);
            assert!(best < 1e-6, "root {r} missed by {best}");
        }
    }
}

#[test]
fn line_complement_components() {
    let rep = complement_components(&line(), Window::square(6.0), &AmoebaOptions::default()).unwrap();
    assert_eq!(rep.components.len(), 3);
    assert_eq!(rep.indices(), vec![[0, 0], [0, 1], [1, 0]]);
    for c in &rep.components {
        let ix = c.index.unwrap();
        assert!((c.gradient[0] - ix[0] as f64).abs() < 0.05 && (c.gradient[1] - ix[1] as f64).abs() < 0.05);
    }
}

#[test]
fn monomial_complement_is_everything() {
    let f = ComplexLaurentPolynomial::from_real([([2, 1], 3.0)]).unwrap();
    let opts = AmoebaOptions { resolution: 20, ..Default::default() };
    let rep = complement_components(&f, Window::square(3.0), &opts).unwrap();
    assert_eq!(rep.components.len(), 1);
    assert_eq!(rep.indices(), vec![[2, 1]]);
    assert_eq!(rep.raster.member_count(), 0);
}

#[test]
fn conic_with_separated_coefficients_has_six_components() {
    let f = staircase_conic(2.0);
    let rep = complement_components(&f, Window::square(10.0), &AmoebaOptions::default()).unwrap();
    assert_eq!(rep.indices(), vec![[0, 0], [0, 1], [0, 2], [1, 0], [1, 1], [2, 0]]);
    assert_eq!(rep.indeterminate(), 0);
}

#[test]
fn ronkin_closed_forms() {
    let one_plus_z = ComplexLaurentPolynomial::from_real([([0, 0], 1.0), ([1, 0], 1.0)]).unwrap();
    for k in -30..=30 {
        let x = k as f64 / 10.0;
        let v = ronkin_value(&one_plus_z, [x, 0.0], 4096, 9).unwrap().value;
        assert!((v - x.max(0.0)).abs() < 1e-6);
    }
    let c = ComplexLaurentPolynomial::new([([0, 0], Complex64::new(2.0, 2.0))]).unwrap();
    assert!((ronkin_value(&c, [4.0, -1.0], 16, 0).unwrap().value - 8f64.sqrt().ln()).abs() < 1e-12);
    let m = ComplexLaurentPolynomial::from_real([([-1, 3], 0.5)]).unwrap();
    assert!((ronkin_value(&m, [1.0, 1.0], 16, 0).unwrap().value - (0.5f64.ln() + 2.0)).abs() < 1e-12);
}

#[test]
fn jensen_reduction_matches_tensor_rule_off_the_amoeba() {
    let f = staircase_conic(1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    while checked < 10 {
        let x = [rng.random_range(-6.0..6.0), rng.random_range(-6.0..6.0)];
        if !f.dominated_at(x) {
            continue;
        }
        let a = ronkin_value(&f, x, 256, 0).unwrap().value;
        let b = ronkin_tensor(&f, x, 256, 0.37);
        assert!((a - b).abs() < 1e-9, "{x:?}: {a} vs {b}");
        checked += 1;
    }
}

#[test]
fn ronkin_is_convex_along_segments() {
    let f = staircase_conic(1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..40 {
        let a = [rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)];
        let b = [rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)];
        let m = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
        let (ea, eb, em) = (
            ronkin_value(&f, a, 512, 4).unwrap(),
            ronkin_value(&f, b, 512, 4).unwrap(),
            ronkin_value(&f, m, 512, 4).unwrap(),
        );
        let slack = 3.0 * (ea.error_estimate + eb.error_estimate + em.error_estimate) + 1e-12;
        assert!(em.value <= (ea.value + eb.value) / 2.0 + slack);
    }
}

#[test]
fn ronkin_gradients_stay_in_the_newton_polygon() {
    let f = ComplexLaurentPolynomial::new([
        ([0, 0], Complex64::new(1.0, 0.5)),
        ([2, 0], Complex64::new(-0.3, 0.0)),
        ([1, 1], Complex64::new(0.0, 2.0)),
        ([0, 2], Complex64::new(1.5, -1.0)),
        ([1, 0], Complex64::new(0.7, 0.0)),
    ])
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let x = [rng.random_range(-4.0..4.0), rng.random_range(-4.0..4.0)];
        // errors if the gradient leaves Δ by more than 0.05
        let g = ronkin_gradient(&f, x, 1024, 0.05, 1).unwrap();
        assert!(g[0] >= -0.05 && g[1] >= -0.05 && g[0] + g[1] <= 2.05);
    }
    let g = ronkin_gradient(&line(), [-5.0, -5.0], 512, 0.1, 0).unwrap();
    assert!(g[0].abs() < 1e-6 && g[1].abs() < 1e-6);
    let g = ronkin_gradient(&line(), [5.0, 0.0], 512, 0.1, 0).unwrap();
    assert!((g[0] - 1.0).abs() < 1e-6 && g[1].abs() < 1e-6);
}

#[test]
fn spine_of_the_line() {
    let f = line();
    let rep = complement_components(&f, Window::square(6.0), &AmoebaOptions::default()).unwrap();
    let s = spine(&f, &rep, 1024, 0).unwrap();
    assert_eq!(s.terms.len(), 3);
    assert!(s.terms.iter().all(|t| t.coefficient.abs() < 1e-3));
    assert_eq!(s.complex.vertices, vec![[q(0), q(0)]]);
    assert_eq!(s.complex.rays.len(), 3);
    assert!(spine_containment(&s, &rep.raster).passed());
}

#[test]
fn spine_vertex_moves_with_the_constant() {
    let c = 4f64.exp();
    let f = ComplexLaurentPolynomial::from_real([([0, 0], c), ([1, 0], 1.0), ([0, 1], 1.0)]).unwrap();
    let rep = complement_components(&f, Window::new(-4.0, 12.0, -4.0, 12.0).unwrap(), &AmoebaOptions::default()).unwrap();
    let s = spine(&f, &rep, 1024, 0).unwrap();
    let v = s.complex.vertex_f64(0);
    assert!((v[0] - 4.0).abs() < 1e-6 && (v[1] - 4.0).abs() < 1e-6);
    assert!(spine_containment(&s, &rep.raster).passed());
}

#[test]
fn spine_of_a_monomial_is_empty() {
    let f = ComplexLaurentPolynomial::from_real([([1, 1], 2.0)]).unwrap();
    let opts = AmoebaOptions { resolution: 16, ..Default::default() };
    let rep = complement_components(&f, Window::square(2.0), &opts).unwrap();
    let s = spine(&f, &rep, 64, 0).unwrap();
    assert!(s.empty && s.complex.is_empty());
}

#[test]
fn conic_spine_matches_index_regions() {
    let f = staircase_conic(2.0);
    let rep = complement_components(&f, Window::square(10.0), &AmoebaOptions::default()).unwrap();
    let s = spine(&f, &rep, 1024, 0).unwrap();
    assert!(spine_containment(&s, &rep.raster).passed());
    // each component lies in the linearity region of its own index
    for c in &rep.components {
        let ev = s.polynomial.eval_f64(&c.point);
        let own = s.coefficient(c.index.unwrap()).unwrap() + c.index.unwrap()[0] as f64 * c.point[0] + c.index.unwrap()[1] as f64 * c.point[1];
        assert!((ev - own).abs() < 1e-6);
    }
}

fn line_terms() -> Vec<DequantTerm> {
    [[0, 0], [1, 0], [0, 1]]
        .into_iter()
        .map(|e| DequantTerm { exponent: e, phase: Complex64::new(1.0, 0.0), valuation: q(0) })
        .collect()
}

#[test]
fn dequantized_line_converges() {
    let pitch = 0.02;
    let d: Vec<DequantDistance> = [10.0, 100.0, 1000.0]
        .into_iter()
        .map(|t| dequant_distance(&line_terms(), t, Window::square(5.0), pitch, 64).unwrap())
        .collect();
    assert!(d[0].distance > d[1].distance && d[1].distance > d[2].distance);
    for x in &d {
        assert!(x.distance <= x.scale + 2.0 * pitch);
        // the point (-log_t 2, -log_t 2) is in the amoeba, log_t 2 from the line
        assert!((x.distance - 2f64.ln() / x.t.ln()).abs() < 2.0 * pitch);
    }
    let f = dequant_family(&line_terms(), 10.0).unwrap();
    let cloud = amoeba_point_cloud(&f, Window::square(5.0), pitch, 64).unwrap();
    assert_eq!(hausdorff_distance(&cloud, &cloud, &Window::square(5.0)), 0.0);
}

#[test]
fn dequantized_conic_tends_to_the_tropical_conic() {
    let terms: Vec<DequantTerm> = (0..=2i64)
        .flat_map(|i| (0..=2 - i).map(move |j| (i, j)))
        .map(|(i, j)| DequantTerm { exponent: [i, j], phase: Complex64::new(1.0, 0.0), valuation: q(-(i * i + i * j + j * j)) })
        .collect();
    let limit = corner_locus(&tropical_limit(&terms).unwrap()).unwrap();
    assert_eq!(limit.vertices.len(), 4);
    let d: Vec<f64> = [10.0, 100.0, 1000.0]
        .into_iter()
        .map(|t| dequant_distance(&terms, t, Window::square(5.0), 0.02, 64).unwrap().distance)
        .collect();
    assert!(d[0] > d[1] && d[1] > d[2], "{d:?}");
}

#[test]
fn contour_of_the_line() {
    let f = line();
    let w = Window::square(4.0);
    let c = log_gauss_contour(&f, w, 160, 64).unwrap();
    assert!(c.warnings.is_empty());
    // real points (log|z|, log|1+z|) for real z lie on the contour
    let grid = 0.05;
    for k in 1..60 {
        let z = -3.0 + 0.1 * k as f64;
        if z.abs() < 1e-9 || (1.0 + z).abs() < 1e-9 {
            continue;
        }
        let p = [z.abs().ln(), (1.0 + z).abs().ln()];
        if !w.contains(p) {
            continue;
        }
        let near = c.points.iter().map(|a| ((a[0] - p[0]).powi(2) + (a[1] - p[1]).powi(2)).sqrt()).fold(f64::INFINITY, f64::min);
        assert!(near < grid, "real point {p:?} is {near} from the contour");
    }
}

#[test]
fn contour_reaches_raster_boundary_after_rotation() {
    let f = ComplexLaurentPolynomial::new([
        ([0, 0], Complex64::new(1.0, 0.0)),
        ([1, 0], Complex64::from_polar(1.0, 0.9)),
        ([0, 1], Complex64::from_polar(1.5, -2.1)),
    ])
    .unwrap();
    let w = Window::square(4.0);
    let r = amoeba_raster(&f, w, 80, 64).unwrap();
    let c = log_gauss_contour(&f, w, 160, 64).unwrap();
    let h = r.cell_size()[0];
    for (i, j) in r.boundary_cells() {
        let p = r.center(i, j);
        let near = c.points.iter().map(|a| ((a[0] - p[0]).powi(2) + (a[1] - p[1]).powi(2)).sqrt()).fold(f64::INFINITY, f64::min);
        assert!(near < 1.5 * h, "boundary cell {p:?} is {near} from the contour");
    }
}

#[test]
fn line_amoeba_area() {
    let target = PI * PI / 2.0;
    for seed in [1, 2, 3] {
        let a = area_estimate(&line(), Window::square(8.0), 1_000_000, seed, 64).unwrap();
        assert!((a.area - target).abs() < 0.02 * target, "seed {seed}: {}", a.area);
        assert!(a.diagnostic.is_none());
    }
    let m = ComplexLaurentPolynomial::from_real([([1, 0], 1.0)]).unwrap();
    assert_eq!(area_estimate(&m, Window::square(8.0), 1000, 0, 64).unwrap().area, 0.0);
}

#[test]
fn random_conic_areas_respect_the_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..20 {
        let terms: Vec<([i64; 2], f64)> = (0..=2i64)
            .flat_map(|i| (0..=2 - i).map(move |j| [i, j]))
            .map(|e| (e, rng.random_range(0.2..3.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 }))
            .collect();
        let f = ComplexLaurentPolynomial::from_real(terms).unwrap();
        let a = area_estimate(&f, Window::square(8.0), 100_000, rng.random(), 64).unwrap();
        assert!(a.area <= a.bound + 3.0 * a.sigma);
        assert!((a.bound - 2.0 * PI * PI).abs() < 1e-12);
    }
}

#[test]
fn results_do_not_depend_on_threads() {
    let f = staircase_conic(1.0);
    let a = area_estimate(&f, Window::square(6.0), 50_000, 7, 64).unwrap();
    let b = par::sequential(|| area_estimate(&f, Window::square(6.0), 50_000, 7, 64).unwrap());
    assert_eq!(a, b);
    let r1 = amoeba_raster(&f, Window::square(6.0), 60, 64).unwrap();
    let r2 = par::sequential(|| amoeba_raster(&f, Window::square(6.0), 60, 64).unwrap());
    assert_eq!(r1, r2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn membership_agrees_with_dominance(x in -6.0f64..6.0, y in -6.0f64..6.0, a in 0.1f64..10.0, b in 0.1f64..10.0) {
        let f = ComplexLaurentPolynomial::from_real([([0, 0], 1.0), ([1, 0], a), ([0, 1], b)]).unwrap();
        if f.dominated_at([x, y]) {
            prop_assert!(!is_member(&f, [x, y], 64).unwrap());
        }
        // for a line the amoeba is exactly the set where no term dominates
        let (u, v, w) = (1.0, a * x.exp(), b * y.exp());
        let strict = u < v + w && v < u + w && w < u + v;
        if strict && (u - v - w).abs().min((v - u - w).abs()).min((w - u - v).abs()) > 1e-6 * (u + v + w) {
            prop_assert!(is_member(&f, [x, y], 64).unwrap());
        }
    }

    #[test]
    fn slice_roots_satisfy_the_polynomial(x1 in -3.0f64..3.0, seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = ComplexLaurentPolynomial::new((0..=3i64).flat_map(|i| (0..=3 - i).map(move |j| [i, j])).map(|e| (e, Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))))).unwrap();
        let s = amoeba_slice(&f, x1, 8).unwrap();
        prop_assert!(s.values.len() <= 8 * 3);
        prop_assert!(s.values.iter().all(|v| v.is_finite()));
    }
}

#[test]
fn ronkin_requires_enough_nodes() {
    assert!(ronkin_value(&line(), [0.0, 0.0], 15, 0).is_err());
}
