use std::collections::BTreeMap;

use proptest::prelude::*;
use tropica::curves::{expected_dim, is_superabundant, local_deformation_dim, TropicalCurve};
use tropica::exact::{q, qf, Q};
use tropica::hypersurface::{balancing_check, corner_locus, duality_check, membership};
use tropica::lattice::{lattice_length, mixed_area, newton_polygon, regular_subdivision, LatticePolygon, LatticeSegment, Point};
use tropica::tropical::{
    deq_add, is_concave_lift, legendre_dual, legendre_of_lift, trop_add, trop_mul, DequantParameter, Lift,
    TropicalPolynomial, TropicalScalar,
};

fn scalar() -> impl Strategy<Value = TropicalScalar> {
    prop_oneof![
        1 => Just(TropicalScalar::NegInf),
        9 => (-50i64..50, 1i64..8).prop_map(|(n, d)| TropicalScalar::Finite(qf(n, d))),
    ]
}

fn rational() -> impl Strategy<Value = Q> {
    (-40i64..40, 1i64..6).prop_map(|(n, d)| qf(n, d))
}

fn polygon(max: i64) -> impl Strategy<Value = LatticePolygon> {
    prop::collection::vec((0..=max, 0..=max), 3..8).prop_filter_map("degenerate", |pts| {
        let pts: Vec<Point> = pts.into_iter().map(|(a, b)| [a, b]).collect();
        newton_polygon(&pts).ok().filter(|p| !p.is_degenerate())
    })
}

fn lifted(max: i64) -> impl Strategy<Value = (LatticePolygon, BTreeMap<Point, Q>)> {
    polygon(max).prop_flat_map(|p| {
        let pts = p.lattice_points();
        let n = pts.len();
        (Just(p), prop::collection::vec(rational(), n)).prop_map(move |(p, vals)| {
            let lift = pts.iter().copied().zip(vals).collect();
            (p, lift)
        })
    })
}

/// Random support of at most 10 points with random rational coefficients.
fn polynomial() -> impl Strategy<Value = TropicalPolynomial> {
    prop::collection::btree_map((-2i64..4, -2i64..4), rational(), 1..=10).prop_map(|m| {
        TropicalPolynomial::from_terms(2, m.into_iter().map(|((a, b), c)| (vec![a, b], c))).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100_000))]

    #[test]
    fn semiring_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(trop_add(&a, &b), trop_add(&b, &a));
        prop_assert_eq!(trop_mul(&a, &b), trop_mul(&b, &a));
        prop_assert_eq!(trop_add(&trop_add(&a, &b), &c), trop_add(&a, &trop_add(&b, &c)));
        prop_assert_eq!(trop_mul(&trop_mul(&a, &b), &c), trop_mul(&a, &trop_mul(&b, &c)));
        prop_assert_eq!(trop_mul(&a, &trop_add(&b, &c)), trop_add(&trop_mul(&a, &b), &trop_mul(&a, &c)));
        prop_assert_eq!(trop_add(&a, &TropicalScalar::zero()), a.clone());
        prop_assert_eq!(trop_mul(&a, &TropicalScalar::one()), a.clone());
        prop_assert_eq!(trop_mul(&a, &TropicalScalar::zero()), TropicalScalar::zero());
        prop_assert_eq!(trop_add(&a, &a), a);
    }

    #[test]
    fn dequantized_sum_is_sandwiched(x in -50.0f64..50.0, y in -50.0f64..50.0, t in 1.01f64..1e6) {
        let p = DequantParameter::new(t).unwrap();
        let s = deq_add(x, y, p);
        let m = x.max(y);
        prop_assert!(m <= s);
        prop_assert!(s <= m + 2f64.ln() / t.ln() + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn evaluation_is_convex(f in polynomial(), x in (rational(), rational()), y in (rational(), rational()), l in 0i64..=10) {
        let lam = qf(l, 10);
        let mid = [&lam * &x.0 + (q(1) - &lam) * &y.0, &lam * &x.1 + (q(1) - &lam) * &y.1];
        let fm = f.eval(&mid).unwrap().value;
        let fx = f.eval(&[x.0, x.1]).unwrap().value;
        let fy = f.eval(&[y.0, y.1]).unwrap().value;
        prop_assert!(fm <= &lam * fx + (q(1) - &lam) * fy);
    }

    #[test]
    fn legendre_roundtrip_iff_concave((p, lift) in lifted(3)) {
        let v: Lift = lift.iter().map(|(k, c)| (k.to_vec(), c.clone())).collect();
        let back = legendre_dual(&legendre_of_lift(&v).unwrap());
        let same = v.iter().all(|(k, c)| back.get(k) == Some(c));
        prop_assert_eq!(same, is_concave_lift(&v).unwrap());
        prop_assert_eq!(back.len(), p.lattice_points().len());
    }

    #[test]
    fn envelope_of_a_concave_lift_is_itself(p in polygon(3), planes in prop::collection::vec((rational(), rational(), rational()), 1..4)) {
        // minimum of affine functions is concave
        let v: Lift = p.lattice_points().into_iter().map(|pt| {
            let val = planes.iter().map(|(a, b, c)| a * q(pt[0]) + b * q(pt[1]) + c).min().unwrap();
            (pt.to_vec(), val)
        }).collect();
        prop_assert!(is_concave_lift(&v).unwrap());
        prop_assert_eq!(legendre_dual(&legendre_of_lift(&v).unwrap()), v);
    }

    #[test]
    fn pick(p in polygon(6)) {
        let i = p.interior_points().unwrap();
        let b = p.boundary_points().unwrap();
        prop_assert_eq!(p.doubled_area(), 2 * i + b - 2);
        let brute = p.lattice_points().len() as i64;
        prop_assert_eq!(brute, i + b);
    }

    #[test]
    fn subdivision_tiles_and_lies_on_the_upper_hull((p, lift) in lifted(3), probes in prop::collection::vec((1i64..96, 1i64..96), 8)) {
        let s = regular_subdivision(&p, &lift).unwrap();
        let total: i64 = s.cells.iter().map(|c| c.polygon.doubled_area()).sum();
        prop_assert_eq!(total, p.doubled_area());
        for c in &s.cells {
            for (pt, h) in &lift {
                let plane = &c.slope[0] * q(pt[0]) + &c.slope[1] * q(pt[1]) + &c.offset;
                prop_assert!(*h <= plane);
                prop_assert_eq!(*h == plane, c.points.contains(pt));
            }
        }
        // cells cover Δ and their interiors are disjoint
        const N: i64 = 97;
        for (a, b) in probes {
            let probe = [a * 3, b * 3];
            let scale = |c: &LatticePolygon| {
                let v: Vec<Point> = c.vertices().iter().map(|v| [v[0] * 3 * N, v[1] * 3 * N]).collect();
                LatticePolygon::from_vertices(&v).unwrap()
            };
            if !scale(&p).contains_strictly(probe) {
                continue;
            }
            let closed = s.cells.iter().filter(|c| scale(&c.polygon).contains(probe)).count();
            let open = s.cells.iter().filter(|c| scale(&c.polygon).contains_strictly(probe)).count();
            prop_assert!(closed >= 1 && open <= 1);
        }
    }

    #[test]
    fn mixed_area_properties(p in polygon(3), r in polygon(3), s in polygon(3), shift in (-5i64..5, -5i64..5)) {
        prop_assert_eq!(mixed_area(&p, &r), mixed_area(&r, &p));
        prop_assert_eq!(mixed_area(&p.translate([shift.0, shift.1]), &r), mixed_area(&p, &r));
        prop_assert_eq!(mixed_area(&p.minkowski_sum(&s), &r), mixed_area(&p, &r) + mixed_area(&s, &r));
        prop_assert_eq!(mixed_area(&p, &p), p.doubled_area());
        // support-function oracle: sum over edges of r of h_p at the outward edge normal
        let v = r.vertices();
        let oracle: i64 = (0..v.len()).map(|i| {
            let (a, b) = (v[i], v[(i + 1) % v.len()]);
            let n = [b[1] - a[1], a[0] - b[0]];
            p.vertices().iter().map(|x| x[0] * n[0] + x[1] * n[1]).max().unwrap()
        }).sum();
        prop_assert_eq!(mixed_area(&p, &r), oracle);
    }

    #[test]
    fn balancing_and_duality(f in polynomial()) {
        let c = corner_locus(&f).unwrap();
        prop_assert!(balancing_check(&c).passed());
        prop_assert!(duality_check(&c).passed());
        if let Some(d) = &c.dual {
            prop_assert_eq!(c.vertices.len(), d.cells.len());
            for e in &c.edges {
                let (a, b) = e.dual.unwrap();
                prop_assert_eq!(e.weight, lattice_length(&LatticeSegment::new(a, b)).unwrap());
                prop_assert_eq!(e.direction[0] * (b[0] - a[0]) + e.direction[1] * (b[1] - a[1]), 0);
            }
            if d.is_unimodular() && !d.parent.is_degenerate() {
                prop_assert_eq!(c.cycle_rank() as i64, d.parent.interior_points().unwrap());
            }
        }
        // points sampled on cells are members, the vertices' neighbours off cells are not
        for e in &c.edges {
            let (a, b) = (&c.vertices[e.ends.0], &c.vertices[e.ends.1]);
            let t = qf(2, 7);
            let x = [&a[0] + &t * (&b[0] - &a[0]), &a[1] + &t * (&b[1] - &a[1])];
            prop_assert!(membership(&f, &x, &q(0)).unwrap());
        }
        for r in &c.rays {
            let a = &c.vertices[r.base];
            let x = [&a[0] + qf(5, 3) * q(r.direction[0]), &a[1] + qf(5, 3) * q(r.direction[1])];
            prop_assert!(membership(&f, &x, &q(0)).unwrap());
        }
        let probe = [qf(1, 1009), qf(-3, 1013)];
        let on = f.eval(&probe).unwrap().argmax.len() > 1;
        prop_assert_eq!(membership(&f, &probe, &q(0)).unwrap(), on);
    }
}

/// Smooth plane curve from a generic lift of all lattice points of Δ.
fn smooth_curve(p: &LatticePolygon, seed: u64) -> Option<TropicalCurve> {
    let mut x = seed;
    let mut next = || {
        x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((x >> 33) % 200) as i64 - 100
    };
    let terms = p.lattice_points().into_iter().map(|pt| {
        let base = -(pt[0] * pt[0] + pt[0] * pt[1] + pt[1] * pt[1]) * 1000;
        (pt.to_vec(), q(base + next()))
    });
    let c = corner_locus(&TropicalPolynomial::from_terms(2, terms).unwrap()).ok()?;
    c.dual.as_ref()?.is_unimodular().then(|| TropicalCurve::from_complex(&c).ok()).flatten()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn plane_curves_are_regular(p in polygon(4), seed in any::<u64>()) {
        if let Some(c) = smooth_curve(&p, seed) {
            prop_assert!(c.validate().is_valid());
            prop_assert!(c.is_simple());
            let k = local_deformation_dim(&c.graph, &c.map).unwrap();
            let x = c.num_ends() as i64;
            prop_assert_eq!(k, expected_dim(x, c.genus(), 2));
            prop_assert!(!is_superabundant(&c.graph, &c.map).unwrap());
            prop_assert_eq!(c.genus(), p.interior_points().unwrap());
            prop_assert_eq!(c.multiplicity().unwrap(), 1);
            let deg = tropica::curves::degree(&c.graph, &c.map).unwrap();
            let sum = deg.0.iter().fold([0i64; 2], |s, v| [s[0] + v[0], s[1] + v[1]]);
            prop_assert_eq!(sum, [0, 0]);
        }
    }
}
