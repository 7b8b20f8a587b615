mod common;

use conecorr::geometry::{convex_hull, directed_excess, hausdorff, minkowski_sum, scale};
use conecorr::radstrom::{class_add, class_norm, class_scale, classes_equal};
use conecorr::{CompactSet, Cone, ConeCoords, NormSpec, Point, RadstromClass};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pt2() -> impl Strategy<Value = Point> {
    (-5.0..5.0f64, -5.0..5.0f64).prop_map(|(a, b)| Point::from([a, b]))
}

fn polygon() -> impl Strategy<Value = CompactSet> {
    prop::collection::vec(pt2(), 1..7).prop_map(|p| CompactSet::hull(p).unwrap())
}

fn finite_set() -> impl Strategy<Value = CompactSet> {
    prop::collection::vec(pt2(), 1..5).prop_map(|p| CompactSet::finite(p).unwrap())
}

fn cross(o: &[f64], a: &[f64], b: &[f64]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Strict vertices of a planar point set by Andrew's monotone chain.
fn monotone_chain(points: &[Point]) -> Vec<Vec<f64>> {
    let mut p: Vec<Vec<f64>> = points.iter().map(|q| q.coords().to_vec()).collect();
    p.sort_by(|a, b| a.partial_cmp(b).unwrap());
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let mut hull: Vec<Vec<f64>> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Vec<f64>>> =
            if pass == 0 { Box::new(p.iter()) } else { Box::new(p.iter().rev()) };
        for q in iter {
            while hull.len() >= start + 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], q) <= 1e-12 {
                hull.pop();
            }
            hull.push(q.clone());
        }
        hull.pop();
    }
    hull.sort_by(|a, b| a.partial_cmp(b).unwrap());
    hull
}

fn support(set: &CompactSet, d: &[f64]) -> f64 {
    set.points()
        .iter()
        .map(|p| p.coords().iter().zip(d).map(|(a, b)| a * b).sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max)
}

#[test]
fn hull_of_square_cloud_is_its_corners() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut pts: Vec<Point> = (0..100).map(|_| Point::from([rng.random::<f64>(), rng.random::<f64>()])).collect();
    pts.extend([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]].map(Point::from));
    let h = convex_hull(pts).unwrap();
    let expected: Vec<Point> = [[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]].map(Point::from).to_vec();
    assert_eq!(h.points(), expected.as_slice());
}

#[test]
fn hull_of_cube_cloud_is_its_corners() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut pts: Vec<Point> =
        (0..100).map(|_| Point::from([rng.random::<f64>(), rng.random::<f64>(), rng.random::<f64>()])).collect();
    for i in 0..8 {
        pts.push(Point::from([(i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64]));
    }
    assert_eq!(convex_hull(pts).unwrap().len(), 8);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn planar_hull_matches_monotone_chain(points in prop::collection::vec(pt2(), 1..25)) {
        let h = convex_hull(points.clone()).unwrap();
        let ours: Vec<Vec<f64>> = h.points().iter().map(|p| p.coords().to_vec()).collect();
        prop_assert_eq!(ours, monotone_chain(&points));
    }

    #[test]
    fn spatial_hull_preserves_support(raw in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64), 1..30)) {
        let points: Vec<Point> = raw.iter().map(|(a, b, c)| Point::from([*a, *b, *c])).collect();
        let input = CompactSet::finite(points.clone()).unwrap();
        let h = convex_hull(points).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let d = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
            prop_assert!((support(&input, &d) - support(&h, &d)).abs() < 1e-9);
        }
    }

    #[test]
    fn hausdorff_is_a_metric(a in polygon(), b in polygon(), c in polygon()) {
        let e = NormSpec::Euclidean;
        let ab = hausdorff(&a, &b, &e).unwrap();
        prop_assert!(hausdorff(&a, &a, &e).unwrap() <= 1e-9);
        prop_assert!((ab - hausdorff(&b, &a, &e).unwrap()).abs() <= 1e-9);
        prop_assert!(ab <= hausdorff(&a, &c, &e).unwrap() + hausdorff(&c, &b, &e).unwrap() + 1e-9);
    }

    #[test]
    fn hausdorff_metric_in_polyhedral_norms(a in polygon(), b in polygon(), c in polygon()) {
        for norm in [NormSpec::Coord1, NormSpec::CoordInf] {
            let ab = hausdorff(&a, &b, &norm).unwrap();
            prop_assert!((ab - hausdorff(&b, &a, &norm).unwrap()).abs() <= 1e-7);
            prop_assert!(ab <= hausdorff(&a, &c, &norm).unwrap() + hausdorff(&c, &b, &norm).unwrap() + 1e-7);
        }
    }

    #[test]
    fn excess_is_zero_on_subsets(a in polygon(), extra in pt2()) {
        let mut pts = a.points().to_vec();
        pts.push(extra);
        let bigger = CompactSet::hull(pts).unwrap();
        prop_assert!(directed_excess(&a, &bigger, &NormSpec::Euclidean).unwrap() <= 1e-9);
    }

    #[test]
    fn minkowski_commutes_and_associates(a in polygon(), b in polygon(), c in finite_set()) {
        prop_assert!(minkowski_sum(&a, &b).unwrap().approx_eq(&minkowski_sum(&b, &a).unwrap(), 1e-9).unwrap());
        let left = minkowski_sum(&minkowski_sum(&a, &b).unwrap(), &c).unwrap();
        let right = minkowski_sum(&a, &minkowski_sum(&b, &c).unwrap()).unwrap();
        prop_assert!(left.approx_eq(&right, 1e-9).unwrap());
    }

    #[test]
    fn minkowski_support_adds(a in polygon(), b in polygon(), dx in -1.0..1.0f64, dy in -1.0..1.0f64) {
        let s = minkowski_sum(&a, &b).unwrap();
        let d = [dx, dy];
        prop_assert!((support(&s, &d) - support(&a, &d) - support(&b, &d)).abs() < 1e-9);
    }

    #[test]
    fn scaling_distributes(a in polygon(), b in polygon(), l in 0.0..4.0f64) {
        let left = scale(l, &minkowski_sum(&a, &b).unwrap());
        let right = minkowski_sum(&scale(l, &a), &scale(l, &b)).unwrap();
        prop_assert!(left.approx_eq(&right, 1e-8).unwrap());
    }

    #[test]
    fn hausdorff_is_translation_invariant_and_homogeneous(a in polygon(), b in polygon(), t in pt2(), l in 0.1..3.0f64) {
        let e = NormSpec::Euclidean;
        let shift = CompactSet::singleton(t);
        let h = hausdorff(&a, &b, &e).unwrap();
        let ht = hausdorff(&minkowski_sum(&a, &shift).unwrap(), &minkowski_sum(&b, &shift).unwrap(), &e).unwrap();
        prop_assert!((h - ht).abs() < 1e-8);
        let hl = hausdorff(&scale(l, &a), &scale(l, &b), &e).unwrap();
        prop_assert!((hl - l * h).abs() < 1e-8);
    }

    #[test]
    fn radstrom_cancellation(a in polygon(), b in polygon(), c in polygon()) {
        let p = RadstromClass::new(a.clone(), b.clone()).unwrap();
        let q = RadstromClass::new(minkowski_sum(&a, &c).unwrap(), minkowski_sum(&b, &c).unwrap()).unwrap();
        prop_assert!(classes_equal(&p, &q).unwrap());
        prop_assert!((class_norm(&p).unwrap() - class_norm(&q).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn radstrom_vector_space_laws(a in polygon(), b in polygon(), c in polygon(), d in polygon(), l in -3.0..3.0f64) {
        let p = RadstromClass::new(a, b).unwrap();
        let q = RadstromClass::new(c, d).unwrap();
        let neg = class_scale(-1.0, &p);
        prop_assert!(classes_equal(&class_add(&p, &neg).unwrap(), &RadstromClass::zero(2)).unwrap());
        prop_assert!((class_norm(&class_scale(l, &p)).unwrap() - l.abs() * class_norm(&p).unwrap()).abs() < 1e-8);
        let lhs = class_scale(l, &class_add(&p, &q).unwrap());
        let rhs = class_add(&class_scale(l, &p), &class_scale(l, &q)).unwrap();
        prop_assert!(classes_equal(&lhs, &rhs).unwrap());
        let tri = class_norm(&class_add(&p, &q).unwrap()).unwrap();
        prop_assert!(tri <= class_norm(&p).unwrap() + class_norm(&q).unwrap() + 1e-8);
    }

    #[test]
    fn cone_coordinates_round_trip(w in prop::collection::vec(0.0..3.0f64, 3), seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cone: Cone = common::random_cone(3, &mut rng);
        let x = cone.from_coords(&ConeCoords(w.clone()));
        let back = cone.coords(&x).unwrap();
        for (a, b) in back.0.iter().zip(&w) {
            prop_assert!((a - b).abs() < 1e-9);
        }
        prop_assert!(cone.contains(&x));
    }
}
