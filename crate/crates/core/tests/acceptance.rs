//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p tropica --test acceptance`. The process exits
//! non-zero when a criterion fails, unless it is listed in
//! `EXPECTED_FAILURES`; those are still printed as FAIL.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropica::amoeba::*;
use tropica::curves::{expected_dim, is_superabundant, local_deformation_dim, supercubic, TropicalCurve};
use tropica::enumeration::{count_n, count_n_irr, kontsevich_oracle, num_ends, LambdaOrder};
use tropica::exact::{q, qf, rank};
use tropica::hypersurface::{balancing_check, corner_locus, duality_check, TropicalComplex};
use tropica::lattice::{lattice_length, newton_polygon, LatticePolygon, LatticeSegment, Point};
use tropica::patchwork::{build_real_set, check_compatibility, count_components, signs_from_lattice};
use tropica::tropical::{deq_add, trop_add, trop_mul, DequantParameter, TropicalPolynomial, TropicalScalar};

const COUNT_BUDGET: Duration = Duration::from_secs(60);
const RONKIN_TOL: f64 = 1e-6;
const RONKIN_BUDGET: Duration = Duration::from_secs(5);
const GRADIENT_TOL: f64 = 0.05;
const SPINE_TOL: f64 = 1e-3;
const DEQUANT_TARGET: f64 = 0.05;
const DEQUANT_PITCH: f64 = 0.01;
const AREA_REL_TOL: f64 = 0.02;
const SEMIRING_CASES: usize = 100_000;

/// The amoeba of the all-ones line contains (-log_t 2, -log_t 2), which is
/// log_t 2 ≈ 0.1003 from the tropical line at t = 10³.
const EXPECTED_FAILURES: &[u32] = &[9];

struct Outcome {
    passed: bool,
    detail: String,
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn tri(d: i64) -> LatticePolygon {
    LatticePolygon::standard_triangle(d)
}

fn random_lambda(rng: &mut ChaCha8Rng, delta: &LatticePolygon) -> LambdaOrder {
    loop {
        let lam = LambdaOrder::new(qf(rng.random_range(-97..97), rng.random_range(1..50)), qf(rng.random_range(-97..97), rng.random_range(1..50)));
        if lam.sort_points(delta).is_ok() {
            return lam;
        }
    }
}

fn line() -> ComplexLaurentPolynomial {
    ComplexLaurentPolynomial::from_real([([0, 0], 1.0), ([1, 0], 1.0), ([0, 1], 1.0)]).unwrap()
}

/// Generic perturbation of the strictly concave lift -(i² + ij + j²).
fn smooth_complex(delta: &LatticePolygon, rng: &mut ChaCha8Rng) -> TropicalComplex {
    let terms = delta.lattice_points().into_iter().map(|p| {
        let base = -(p[0] * p[0] + p[0] * p[1] + p[1] * p[1]);
        (p.to_vec(), q(base) + qf(rng.random_range(-100..100), 1000))
    });
    corner_locus(&TropicalPolynomial::from_terms(2, terms).unwrap()).unwrap()
}

fn random_subpolygon(rng: &mut ChaCha8Rng, within: &LatticePolygon) -> LatticePolygon {
    let all = within.lattice_points();
    loop {
        let pick: Vec<Point> = all.iter().copied().filter(|_| rng.random_bool(0.4)).collect();
        if let Ok(p) = newton_polygon(&pick) {
            if !p.is_degenerate() {
                return p;
            }
        }
    }
}

fn curve_counting() -> Outcome {
    let lam = LambdaOrder::default();
    let start = Instant::now();
    let irr: Vec<u64> = (1..=4).map(|d| count_n_irr(0, &tri(d), &lam).unwrap().n_irr).collect();
    let all_4 = count_n(0, &tri(4), &lam).unwrap().n;
    let small = start.elapsed();
    let oracle: Vec<BigInt> = (1..=5).map(kontsevich_oracle).collect();
    let oracle_ok = irr.iter().zip(&oracle).all(|(n, o)| BigInt::from(*n) == *o);
    let start = Instant::now();
    let irr_5 = count_n_irr(0, &tri(5), &lam).unwrap().n_irr;
    let t5 = start.elapsed();
    let passed = irr == [1, 1, 12, 620] && oracle_ok && all_4 == 620 + 55 && BigInt::from(irr_5) == oracle[4] && small < COUNT_BUDGET;
    outcome(
        passed,
        format!("N_irr(0, dΔ) = {irr:?}, d = 5: {irr_5}, N(0, 4Δ) = {all_4} with reducible, d ≤ 4 in {small:.2?}, d = 5 in {t5:.2?}"),
    )
}

fn path_audit() -> Outcome {
    let r = count_n(0, &tri(3), &LambdaOrder::default()).unwrap();
    let mus: Vec<u64> = r.paths.iter().map(|p| p.mu_plus * p.mu_minus).collect();
    let mut sorted = mus.clone();
    sorted.sort();
    let passed = mus.len() == 5 && sorted == [1, 2, 2, 3, 4] && r.n == 12;
    outcome(passed, format!("{} positive paths, multiplicities {mus:?}, N = {}", mus.len(), r.n))
}

/// Every lattice polygon fitting in a 3×3, 4×2 or 5×1 box with at most 12
/// lattice points, up to translation.
fn small_polygons() -> Vec<LatticePolygon> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (w, h) in [(3, 3), (4, 2), (5, 1)] {
        let grid: Vec<Point> = (0..=w).flat_map(|i| (0..=h).map(move |j| [i, j])).collect();
        for mask in 1u32..(1 << grid.len()) {
            if mask.count_ones() < 3 {
                continue;
            }
            let pts: Vec<Point> = (0..grid.len()).filter(|k| mask >> k & 1 == 1).map(|k| grid[k]).collect();
            let Ok(p) = newton_polygon(&pts) else { continue };
            if p.is_degenerate() || p.lattice_points().len() > 12 {
                continue;
            }
            let v = p.vertices();
            let lo = [v.iter().map(|x| x[0]).min().unwrap(), v.iter().map(|x| x[1]).min().unwrap()];
            let key: Vec<Point> = v.iter().map(|x| [x[0] - lo[0], x[1] - lo[1]]).collect();
            if seen.insert(key) {
                out.push(p);
            }
        }
    }
    out
}

fn lambda_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let polys = small_polygons();
    let (mut cases, mut bad) = (0usize, Vec::new());
    for delta in &polys {
        let x = num_ends(delta).unwrap();
        let lams: Vec<LambdaOrder> = (0..3).map(|_| random_lambda(&mut rng, delta)).collect();
        for g in (2 - x)..=delta.interior_points().unwrap() {
            let base = count_n(g, delta, &LambdaOrder::default()).unwrap().n;
            cases += 1;
            for lam in &lams {
                let n = count_n(g, delta, lam).unwrap().n;
                if n != base {
                    bad.push(format!("{:?} g = {g} λ = {}: {n} vs {base}", delta.vertices(), lam.describe()));
                }
            }
        }
    }
    let first = bad.first().map(|b| format!(", first: {b}")).unwrap_or_default();
    outcome(bad.is_empty(), format!("{} polygons, {cases} (g, Δ) pairs, {} mismatches{first}", polys.len(), bad.len()))
}

fn genus_one_cubic() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let pts: Vec<(i64, i64)> = (0..9).map(|_| (rng.random_range(-50..50), rng.random_range(-50..50))).collect();
    let rows = pts
        .iter()
        .map(|&(x, y)| (0..=3u32).flat_map(|i| (0..=3 - i).map(move |j| q(x.pow(i) * y.pow(j)))).collect())
        .collect();
    let kernel = 10 - rank(rows);
    let n = count_n(1, &tri(3), &LambdaOrder::default()).unwrap().n;
    outcome(n == 1 && kernel == 1, format!("N(1, 3Δ) = {n}, linear-algebra oracle kernel dimension {kernel}"))
}

fn balancing_and_duality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = 0;
    for _ in 0..200 {
        let size = rng.random_range(1..=10);
        let mut terms = BTreeMap::new();
        while terms.len() < size {
            terms.insert(vec![rng.random_range(-2i64..4), rng.random_range(-2i64..4)], qf(rng.random_range(-40..40), rng.random_range(1..6)));
        }
        let f = TropicalPolynomial::from_terms(2, terms).unwrap();
        let c = corner_locus(&f).unwrap();
        let mut ok = balancing_check(&c).passed() && duality_check(&c).passed();
        if let Some(d) = &c.dual {
            ok &= c.vertices.len() == d.cells.len();
            for e in &c.edges {
                let (a, b) = e.dual.unwrap();
                ok &= e.weight == lattice_length(&LatticeSegment::new(a, b)).unwrap();
                ok &= e.direction[0] * (b[0] - a[0]) + e.direction[1] * (b[1] - a[1]) == 0;
            }
        }
        failures += usize::from(!ok);
    }
    outcome(failures == 0, format!("200 random polynomials, {failures} failures"))
}

fn ronkin_vs_jensen() -> Outcome {
    let f = ComplexLaurentPolynomial::from_real([([0, 0], 1.0), ([1, 0], 1.0)]).unwrap();
    let start = Instant::now();
    let worst = (-30..=30)
        .map(|k| {
            let x = k as f64 / 10.0;
            (ronkin_value(&f, [x, 0.0], 4096, 0).unwrap().value - x.max(0.0)).abs()
        })
        .fold(0.0, f64::max);
    let took = start.elapsed();
    outcome(worst < RONKIN_TOL && took < RONKIN_BUDGET, format!("max error {worst:.2e} over 61 points, {took:.2?}"))
}

fn complement_indices() -> Outcome {
    let rep = complement_components(&line(), Window::square(6.0), &AmoebaOptions::default()).unwrap();
    let worst = rep
        .components
        .iter()
        .map(|c| match c.index {
            Some(ix) => (c.gradient[0] - ix[0] as f64).abs().max((c.gradient[1] - ix[1] as f64).abs()),
            None => f64::INFINITY,
        })
        .fold(0.0, f64::max);
    let passed = rep.components.len() == 3 && rep.indices() == [[0, 0], [0, 1], [1, 0]] && worst < GRADIENT_TOL;
    outcome(passed, format!("{} components, indices {:?}, max gradient offset {worst:.4}", rep.components.len(), rep.indices()))
}

fn spine_of_the_line() -> Outcome {
    let f = line();
    let rep = complement_components(&f, Window::square(6.0), &AmoebaOptions::default()).unwrap();
    let s = spine(&f, &rep, 1024, 0).unwrap();
    let indices: BTreeSet<[i64; 2]> = s.terms.iter().map(|t| t.index).collect();
    let worst = s.terms.iter().map(|t| t.coefficient.abs()).fold(0.0, f64::max);
    let contained = spine_containment(&s, &rep.raster);
    let passed = indices == BTreeSet::from([[0, 0], [1, 0], [0, 1]]) && worst < SPINE_TOL && contained.passed();
    outcome(passed, format!("terms {indices:?}, max |c| {worst:.2e}, containment {}", if contained.passed() { "ok" } else { "violated" }))
}

fn dequantization() -> Outcome {
    let terms: Vec<DequantTerm> = [[0, 0], [1, 0], [0, 1]]
        .into_iter()
        .map(|e| DequantTerm { exponent: e, phase: Complex64::new(1.0, 0.0), valuation: q(0) })
        .collect();
    let d: Vec<DequantDistance> = [10.0, 100.0, 1000.0]
        .into_iter()
        .map(|t| dequant_distance(&terms, t, Window::square(5.0), DEQUANT_PITCH, 64).unwrap())
        .collect();
    let decreasing = d.windows(2).all(|w| w[0].distance > w[1].distance);
    let scaled = d.iter().all(|x| x.distance <= x.scale + 2.0 * DEQUANT_PITCH);
    let last = d[2].distance;
    let dist: Vec<String> = d.iter().map(|x| format!("{:.4}", x.distance)).collect();
    let scale: Vec<String> = d.iter().map(|x| format!("{:.4}", x.scale)).collect();
    outcome(
        decreasing && scaled && last < DEQUANT_TARGET,
        format!(
            "d_H = [{}] vs scale log 3/log t = [{}]: decreasing {decreasing}, within scale {scaled}, t = 10³ value {last:.4} vs target {DEQUANT_TARGET}",
            dist.join(", "),
            scale.join(", ")
        ),
    )
}

fn area() -> Outcome {
    let target = PI * PI / 2.0;
    let line_areas: Vec<f64> =
        [1, 2, 3].into_iter().map(|seed| area_estimate(&line(), Window::square(8.0), 1_000_000, seed, 64).unwrap().area).collect();
    let line_ok = line_areas.iter().all(|a| (a - target).abs() < AREA_REL_TOL * target);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let support = tri(2).lattice_points();
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..20 {
        let terms: Vec<(Point, f64)> = loop {
            let mut t: Vec<(Point, f64)> = Vec::new();
            for &e in &support {
                if rng.random_bool(0.75) {
                    t.push((e, rng.random_range(0.2..3.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 }));
                }
            }
            let pts: Vec<Point> = t.iter().map(|x| x.0).collect();
            if newton_polygon(&pts).is_ok_and(|p| !p.is_degenerate()) {
                break t;
            }
        };
        let f = ComplexLaurentPolynomial::from_real(terms).unwrap();
        let a = area_estimate(&f, Window::square(8.0), 100_000, rng.random(), 64).unwrap();
        worst = worst.max(a.area - (a.bound + 3.0 * a.sigma));
    }
    let areas: Vec<String> = line_areas.iter().map(|a| format!("{a:.4}")).collect();
    outcome(
        line_ok && worst <= 0.0,
        format!("line [{}] vs π²/2 = {target:.4}; 20 random curves in 2Δ, max excess over π²·Area + 3σ = {worst:.4}", areas.join(", ")),
    )
}

fn riemann_roch() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let box4 = LatticePolygon::from_vertices(&[[0, 0], [4, 0], [4, 4], [0, 4]]).unwrap();
    let (mut checked, mut bad) = (0, 0);
    while checked < 100 {
        let delta = random_subpolygon(&mut rng, &box4);
        let c = smooth_complex(&delta, &mut rng);
        if !c.dual.as_ref().is_some_and(|d| d.is_unimodular()) {
            continue;
        }
        let curve = TropicalCurve::from_complex(&c).unwrap();
        if !curve.is_simple() {
            continue;
        }
        checked += 1;
        let k = local_deformation_dim(&curve.graph, &curve.map).unwrap();
        bad += usize::from(k != expected_dim(curve.num_ends() as i64, curve.genus(), 2));
    }
    let s = supercubic();
    let flagged = is_superabundant(&s.graph, &s.map).unwrap();
    let k = local_deformation_dim(&s.graph, &s.map).unwrap();
    outcome(bad == 0 && flagged, format!("{checked} simple plane curves, {bad} mismatches; spatial cubic dim {k}, superabundant {flagged}"))
}

fn patchworking() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let cubic = tri(3);
    let c = smooth_complex(&cubic, &mut rng);
    let harnack: BTreeMap<Point, bool> = cubic.lattice_points().into_iter().map(|p| (p, p[0] % 2 == 0 && p[1] % 2 == 0)).collect();
    let h = count_components(&build_real_set(&signs_from_lattice(&c, &harnack).unwrap()).unwrap()).components;
    let (mut over, mut incompatible, mut most) = (0, 0, 0);
    for _ in 0..100 {
        let delta = random_subpolygon(&mut rng, &tri(4));
        let c = smooth_complex(&delta, &mut rng);
        let signs: BTreeMap<Point, bool> = delta.lattice_points().into_iter().map(|p| (p, rng.random_bool(0.5))).collect();
        let s = signs_from_lattice(&c, &signs).unwrap();
        incompatible += usize::from(!check_compatibility(&s).passed());
        let n = count_components(&build_real_set(&s).unwrap());
        over += usize::from(!n.within_bound() || n.harnack_bound != Some(delta.interior_points().unwrap() + 1));
        most = most.max(n.components);
    }
    outcome(
        h == 2 && over == 0 && incompatible == 0,
        format!("Harnack cubic: {h} components; 100 random assignments in 4Δ: {incompatible} incompatible, {over} above I + 1, largest count {most}"),
    )
}

fn random_scalar(rng: &mut ChaCha8Rng) -> TropicalScalar {
    if rng.random_bool(0.1) {
        TropicalScalar::NegInf
    } else {
        TropicalScalar::Finite(qf(rng.random_range(-50..50), rng.random_range(1..8)))
    }
}

fn semiring_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let (zero, one) = (TropicalScalar::zero(), TropicalScalar::one());
    let mut law_failures = 0;
    for _ in 0..SEMIRING_CASES {
        let (a, b, c) = (random_scalar(&mut rng), random_scalar(&mut rng), random_scalar(&mut rng));
        let ok = trop_add(&a, &b) == trop_add(&b, &a)
            && trop_mul(&a, &b) == trop_mul(&b, &a)
            && trop_add(&trop_add(&a, &b), &c) == trop_add(&a, &trop_add(&b, &c))
            && trop_mul(&trop_mul(&a, &b), &c) == trop_mul(&a, &trop_mul(&b, &c))
            && trop_mul(&a, &trop_add(&b, &c)) == trop_add(&trop_mul(&a, &b), &trop_mul(&a, &c))
            && trop_add(&a, &zero) == a
            && trop_mul(&a, &one) == a
            && trop_mul(&a, &zero) == zero
            && trop_add(&a, &a) == a;
        law_failures += usize::from(!ok);
    }
    let mut sandwich_failures = 0;
    for _ in 0..SEMIRING_CASES {
        let (x, y) = (rng.random_range(-50.0..50.0), rng.random_range(-50.0..50.0));
        let t = 10f64.powf(rng.random_range(0.005..6.0));
        let s = deq_add(x, y, DequantParameter::new(t).unwrap());
        let m = f64::max(x, y);
        sandwich_failures += usize::from(!(m <= s && s <= m + 2f64.ln() / t.ln() + 1e-12));
    }
    outcome(
        law_failures == 0 && sandwich_failures == 0,
        format!("{SEMIRING_CASES} law cases: {law_failures} failures; {SEMIRING_CASES} sandwich cases: {sandwich_failures} failures"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        (1, "curve counting", curve_counting),
        (2, "path audit", path_audit),
        (3, "λ-invariance", lambda_invariance),
        (4, "genus-1 cubic", genus_one_cubic),
        (5, "balancing and duality", balancing_and_duality),
        (6, "Ronkin vs Jensen", ronkin_vs_jensen),
        (7, "complement indices", complement_indices),
        (8, "spine", spine_of_the_line),
        (9, "dequantization convergence", dequantization),
        (10, "amoeba area", area),
        (11, "Riemann-Roch", riemann_roch),
        (12, "patchworking", patchworking),
        (13, "semiring and dequantization laws", semiring_laws),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let start = Instant::now();
        let o = run();
        let tag = if o.passed { "PASS" } else { "FAIL" };
        let note = if !o.passed && EXPECTED_FAILURES.contains(&id) { " (expected)" } else { "" };
        println!("{tag} {id:>2} {name}: {} [{:.2?}]{note}", o.detail, start.elapsed());
        if !o.passed && note.is_empty() {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
