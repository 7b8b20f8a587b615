#![allow(dead_code)]

use conecorr::{CompactSet, Cone, ConeCoords, LinearCorrespondence, Point, SublinearCorrespondence};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Either the standard orthant or a random oblique cone with well-separated generators.
pub fn random_cone(n: usize, rng: &mut ChaCha8Rng) -> Cone {
    if rng.random::<f64>() < 0.5 {
        return Cone::standard(n);
    }
    loop {
        let basis: Vec<Point> = (0..n)
            .map(|j| {
                let v: Vec<f64> = (0..n)
                    .map(|i| if i == j { 1.0 } else { rng.random_range(-0.4..0.4) })
                    .collect();
                Point::new(v).unwrap()
            })
            .collect();
        if let Ok(c) = Cone::new(basis) {
            return c;
        }
    }
}

pub fn random_cone_point(cone: &Cone, rng: &mut ChaCha8Rng) -> Point {
    let w: Vec<f64> = (0..cone.rank()).map(|_| rng.random_range(0.0..2.0)).collect();
    cone.from_coords(&ConeCoords(w))
}

/// Basis images with 1 to 4 points inside the cone.
pub fn random_images(cone: &Cone, convex: bool, rng: &mut ChaCha8Rng) -> Vec<CompactSet> {
    (0..cone.rank())
        .map(|_| {
            let k = rng.random_range(1..=4);
            let pts = (0..k).map(|_| random_cone_point(cone, rng)).collect();
            CompactSet::new(pts, convex).unwrap()
        })
        .collect()
}

pub fn random_endomorphism(n: usize, convex: bool, rng: &mut ChaCha8Rng) -> LinearCorrespondence {
    let cone = random_cone(n, rng);
    let images = random_images(&cone, convex, rng);
    LinearCorrespondence::endomorphism(cone, images).unwrap()
}

pub fn random_endomorphism_on(cone: &Cone, convex: bool, rng: &mut ChaCha8Rng) -> LinearCorrespondence {
    LinearCorrespondence::endomorphism(cone.clone(), random_images(cone, convex, rng)).unwrap()
}

/// A random built-in sublinear endomorphism: linear, interval-scalar or the planar example.
pub fn random_sublinear(rng: &mut ChaCha8Rng) -> SublinearCorrespondence {
    match rng.random_range(0..4) {
        0 => {
            let n = rng.random_range(1..=2);
            SublinearCorrespondence::from_linear(random_endomorphism(n, true, rng))
        }
        1 => {
            let n = rng.random_range(1..=2);
            SublinearCorrespondence::from_linear(random_endomorphism(n, false, rng))
        }
        2 => {
            let n = rng.random_range(1..=2);
            let cone = random_cone(n, rng);
            let lo = rng.random_range(0.0..1.5);
            let hi = lo + rng.random_range(0.0..1.5);
            SublinearCorrespondence::interval_scalar(cone, lo, hi).unwrap()
        }
        _ => SublinearCorrespondence::paper_example(),
    }
}

/// Random convex polytope in the plane with 1 to 5 vertices.
pub fn random_polygon(rng: &mut ChaCha8Rng) -> CompactSet {
    let k = rng.random_range(1..=5);
    let pts = (0..k)
        .map(|_| Point::new(vec![rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)]).unwrap())
        .collect();
    CompactSet::hull(pts).unwrap()
}

/// Euclidean norm of `M w` maximized over a fine angle grid of the closed
/// first quadrant, for a 2x2 row-major matrix.
pub fn quadrant_operator_norm(m: [f64; 4], steps: usize) -> f64 {
    (0..=steps)
        .map(|i| {
            let th = std::f64::consts::FRAC_PI_2 * i as f64 / steps as f64;
            let (c, s) = (th.cos(), th.sin());
            let (a, b) = (m[0] * c + m[1] * s, m[2] * c + m[3] * s);
            (a * a + b * b).sqrt()
        })
        .fold(0.0, f64::max)
}
