//! Compact polytopic sets, pluggable norms and the Hausdorff metric.
//!
//! A [`CompactSet`] is a nonempty finite point list. With `convex = true` it
//! stands for the convex hull of its points, which are then stored
//! hull-reduced (extreme points only, deduplicated within [`TOL_GEOM`]).

mod minnorm;

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::cone::Cone;
use crate::simplex::{sup_over_simplex, SupEstimate};
use crate::{Error, Result, TOL_GEOM};

use minnorm::{euclidean_distance_to_hull, polyhedral_distance_to_hull, Polyhedral};

/// Largest ambient dimension accepted by convex-hull computations.
pub const MAX_DIM: usize = 6;

/// A point with finite coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptySet);
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self(coords))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![0.0; dim.max(1)])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, factor: f64) -> Point {
        Point(self.0.iter().map(|a| a * factor).collect())
    }

    pub fn euclidean_norm(&self) -> f64 {
        self.0.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    /// Largest absolute coordinate difference.
    pub fn max_abs_diff(&self, other: &Point) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Point::new(v)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.0
    }
}

impl<const N: usize> From<[f64; N]> for Point {
    /// Panics on an empty array or non-finite entries.
    fn from(a: [f64; N]) -> Self {
        Point::new(a.to_vec()).expect("point literal must be nonempty and finite")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// Nonempty compact set given by finitely many points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCompactSet", into = "RawCompactSet")]
pub struct CompactSet {
    points: Vec<Point>,
    convex: bool,
}

#[derive(Serialize, Deserialize)]
struct RawCompactSet {
    points: Vec<Point>,
    #[serde(default)]
    convex: bool,
}

impl TryFrom<RawCompactSet> for CompactSet {
    type Error = Error;

    fn try_from(raw: RawCompactSet) -> Result<Self> {
        CompactSet::new(raw.points, raw.convex)
    }
}

impl From<CompactSet> for RawCompactSet {
    fn from(s: CompactSet) -> Self {
        RawCompactSet { points: s.points, convex: s.convex }
    }
}

impl CompactSet {
    /// Builds a set from points. Convex sets are hull-reduced, finite sets deduplicated.
    pub fn new(points: Vec<Point>, convex: bool) -> Result<Self> {
        if convex {
            convex_hull(points)
        } else {
            Self::finite(points)
        }
    }

    /// A finite (non-convex) point set, deduplicated within tolerance.
    pub fn finite(points: Vec<Point>) -> Result<Self> {
        validate(&points)?;
        Ok(Self { points: dedupe(points), convex: false })
    }

    /// The convex hull of `points`.
    pub fn hull(points: Vec<Point>) -> Result<Self> {
        convex_hull(points)
    }

    pub fn singleton(p: Point) -> Self {
        Self { points: vec![p], convex: true }
    }

    pub fn origin(dim: usize) -> Self {
        Self::singleton(Point::zeros(dim))
    }

    /// Wraps points without hull reduction. Callers must only use the result
    /// where the value depends on the hull alone (suprema of convex functions).
    pub(crate) fn unreduced(points: Vec<Point>, convex: bool) -> Self {
        Self { points, convex }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn is_convex(&self) -> bool {
        self.convex
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_singleton(&self) -> bool {
        self.points.len() == 1
    }

    /// The same set with `convex = true`.
    pub fn to_convex(&self) -> Result<Self> {
        if self.convex {
            Ok(self.clone())
        } else {
            convex_hull(self.points.clone())
        }
    }

    pub fn minkowski_sum(&self, other: &CompactSet) -> Result<CompactSet> {
        minkowski_sum(self, other)
    }

    pub fn scale(&self, factor: f64) -> CompactSet {
        scale(factor, self)
    }

    /// Mutual directed excess within `tol` under the euclidean norm.
    pub fn approx_eq(&self, other: &CompactSet, tol: f64) -> Result<bool> {
        Ok(hausdorff(self, other, &NormSpec::Euclidean)? <= tol)
    }
}

fn validate(points: &[Point]) -> Result<usize> {
    let first = points.first().ok_or(Error::EmptySet)?;
    let dim = first.dim();
    for p in points {
        check_dim(dim, p.dim())?;
    }
    Ok(dim)
}

fn dedupe(points: Vec<Point>) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(points.len());
    for p in points {
        if !out.iter().any(|q| q.max_abs_diff(&p) <= TOL_GEOM) {
            out.push(p);
        }
    }
    out
}

/// Extreme points of the convex hull of `points`.
///
/// Points within [`TOL_GEOM`] of each other are merged; a point is dropped
/// when its euclidean distance to the hull of the remaining points is at most
/// [`TOL_GEOM`]. Output is sorted lexicographically.
pub fn convex_hull(points: Vec<Point>) -> Result<CompactSet> {
    let dim = validate(&points)?;
    if dim > MAX_DIM {
        return Err(Error::DimensionTooLarge(dim));
    }
    let mut pts = dedupe(points);
    pts.sort_by(|a, b| {
        a.coords()
            .iter()
            .zip(b.coords())
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    if dim == 1 {
        let lo = pts.first().cloned().unwrap();
        let hi = pts.last().cloned().unwrap();
        let points = if hi.max_abs_diff(&lo) <= TOL_GEOM { vec![lo] } else { vec![lo, hi] };
        return Ok(CompactSet { points, convex: true });
    }
    let mut keep = vec![true; pts.len()];
    for i in 0..pts.len() {
        let others: Vec<Vec<f64>> = pts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i && keep[j])
            .map(|(_, p)| p.coords().to_vec())
            .collect();
        if others.is_empty() {
            continue;
        }
        if euclidean_distance_to_hull(pts[i].coords(), &others) <= TOL_GEOM {
            keep[i] = false;
        }
    }
    let points = pts.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect();
    Ok(CompactSet { points, convex: true })
}

/// Convexity of a Minkowski combination: a singleton is both finite and convex.
pub(crate) fn combined_convexity<'a>(sets: impl IntoIterator<Item = &'a CompactSet>) -> bool {
    let mut any_convex_body = false;
    let mut all_singletons = true;
    let mut any_flag = false;
    for s in sets {
        any_flag |= s.is_convex();
        if !s.is_singleton() {
            all_singletons = false;
            any_convex_body |= s.is_convex();
        }
    }
    any_convex_body || (all_singletons && any_flag)
}

/// `A + B = {a + b}`. The result is convex (hull-reduced) when either input is
/// a convex set with more than one point; otherwise it is the finite set of
/// pairwise sums.
pub fn minkowski_sum(a: &CompactSet, b: &CompactSet) -> Result<CompactSet> {
    check_dim(a.dim(), b.dim())?;
    let sums: Vec<Point> =
        a.points.iter().flat_map(|p| b.points.iter().map(move |q| p.add(q))).collect();
    CompactSet::new(sums, combined_convexity([a, b]))
}

/// `lambda * A`; `lambda = 0` gives the origin.
pub fn scale(lambda: f64, a: &CompactSet) -> CompactSet {
    if lambda == 0.0 {
        return CompactSet { points: vec![Point::zeros(a.dim())], convex: a.convex };
    }
    CompactSet { points: a.points.iter().map(|p| p.scaled(lambda)).collect(), convex: a.convex }
}

/// Norm applied to points of a [`CompactSet`].
#[derive(Clone, Debug, PartialEq, Default)]
pub enum NormSpec {
    #[default]
    Euclidean,
    /// Sum of absolute coordinates.
    Coord1,
    /// Largest absolute coordinate.
    CoordInf,
    /// The matrix norm a cone induces on row-major `n*n` matrices (points of dimension `n^2`).
    ConeInduced(Arc<ConeNorm>),
}

/// Data of a cone-induced matrix norm. The ambient norm is never itself cone-induced.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeNorm {
    pub cone: Cone,
    ambient: NormSpec,
    pub resolution: usize,
}

impl ConeNorm {
    pub fn ambient(&self) -> &NormSpec {
        &self.ambient
    }
}

impl NormSpec {
    pub fn cone_induced(cone: Cone, ambient: NormSpec, resolution: usize) -> Result<Self> {
        if matches!(ambient, NormSpec::ConeInduced(_)) {
            return Err(Error::InvalidParameter(
                "cone-induced norm cannot wrap another cone-induced norm".into(),
            ));
        }
        if resolution < 2 {
            return Err(Error::Resolution(resolution));
        }
        Ok(NormSpec::ConeInduced(Arc::new(ConeNorm { cone, ambient, resolution })))
    }

    pub fn name(&self) -> &'static str {
        match self {
            NormSpec::Euclidean => "euclidean",
            NormSpec::Coord1 => "coord-1",
            NormSpec::CoordInf => "coord-inf",
            NormSpec::ConeInduced(_) => "cone-induced",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "euclidean" => Ok(NormSpec::Euclidean),
            "coord-1" => Ok(NormSpec::Coord1),
            "coord-inf" => Ok(NormSpec::CoordInf),
            other => Err(Error::InvalidParameter(format!("unknown norm '{other}'"))),
        }
    }

    pub fn norm(&self, v: &[f64]) -> Result<f64> {
        Ok(match self {
            NormSpec::Euclidean => v.iter().map(|a| a * a).sum::<f64>().sqrt(),
            NormSpec::Coord1 => v.iter().map(|a| a.abs()).sum(),
            NormSpec::CoordInf => v.iter().map(|a| a.abs()).fold(0.0, f64::max),
            NormSpec::ConeInduced(cn) => {
                let n = cn.cone.rank();
                check_dim(n * n, v.len())?;
                let a = DMatrix::from_row_slice(n, n, v);
                matrix_cone_norm(&a, &cn.cone, &cn.ambient, cn.resolution)?.value
            }
        })
    }

    pub fn point_norm(&self, p: &Point) -> Result<f64> {
        self.norm(p.coords())
    }

    pub fn distance(&self, a: &Point, b: &Point) -> Result<f64> {
        self.norm(a.sub(b).coords())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum NormRepr {
    Name(String),
    Tagged {
        kind: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cone: Option<Cone>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ambient: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        resolution: Option<usize>,
    },
}

/// Default grid resolution for cone-induced norms loaded without one.
pub const DEFAULT_CONE_NORM_RESOLUTION: usize = 200;

impl Serialize for NormSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            NormSpec::ConeInduced(cn) => NormRepr::Tagged {
                kind: "cone-induced".into(),
                cone: Some(cn.cone.clone()),
                ambient: Some(cn.ambient.name().into()),
                resolution: Some(cn.resolution),
            },
            other => NormRepr::Name(other.name().into()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NormSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = NormRepr::deserialize(d)?;
        let out = match repr {
            NormRepr::Name(name) => NormSpec::from_name(&name),
            NormRepr::Tagged { kind, cone, ambient, resolution } => {
                if kind == "cone-induced" {
                    let cone = cone.ok_or_else(|| D::Error::custom("cone-induced norm needs a cone"))?;
                    let ambient = NormSpec::from_name(ambient.as_deref().unwrap_or("euclidean"))
                        .map_err(D::Error::custom)?;
                    NormSpec::cone_induced(
                        cone,
                        ambient,
                        resolution.unwrap_or(DEFAULT_CONE_NORM_RESOLUTION),
                    )
                } else {
                    NormSpec::from_name(&kind)
                }
            }
        };
        out.map_err(D::Error::custom)
    }
}

/// `d(p, B) = inf_{b in B} ||p - b||`.
pub fn distance_point_to_set(p: &Point, set: &CompactSet, norm: &NormSpec) -> Result<f64> {
    check_dim(set.dim(), p.dim())?;
    if !set.convex || set.is_singleton() {
        let mut best = f64::INFINITY;
        for q in &set.points {
            best = best.min(norm.distance(p, q)?);
        }
        return Ok(best);
    }
    if set.dim() > MAX_DIM {
        return Err(Error::DimensionTooLarge(set.dim()));
    }
    let vertices: Vec<Vec<f64>> = set.points.iter().map(|q| q.coords().to_vec()).collect();
    match norm {
        NormSpec::Euclidean => Ok(euclidean_distance_to_hull(p.coords(), &vertices)),
        NormSpec::Coord1 => polyhedral_distance_to_hull(p.coords(), &vertices, Polyhedral::Coord1),
        NormSpec::CoordInf => {
            polyhedral_distance_to_hull(p.coords(), &vertices, Polyhedral::CoordInf)
        }
        NormSpec::ConeInduced(_) => Err(Error::Unsupported(
            "distance to a non-singleton convex set under a cone-induced norm".into(),
        )),
    }
}

/// `e(A, B) = sup_{a in A} d(a, B)`. The distance to a convex set is a convex
/// function, so for convex `A` the supremum is attained at a stored point.
pub fn directed_excess(a: &CompactSet, b: &CompactSet, norm: &NormSpec) -> Result<f64> {
    check_dim(a.dim(), b.dim())?;
    let mut worst = 0.0_f64;
    for p in &a.points {
        worst = worst.max(distance_point_to_set(p, b, norm)?);
    }
    Ok(worst)
}

/// Hausdorff distance `max(e(A,B), e(B,A))`.
pub fn hausdorff(a: &CompactSet, b: &CompactSet, norm: &NormSpec) -> Result<f64> {
    Ok(directed_excess(a, b, norm)?.max(directed_excess(b, a, norm)?))
}

/// `||A|| = sup_{y in A} ||y||`, attained at a stored point.
pub fn set_norm(a: &CompactSet, norm: &NormSpec) -> Result<f64> {
    let mut best = 0.0_f64;
    for p in &a.points {
        best = best.max(norm.point_norm(p)?);
    }
    Ok(best)
}

/// The matrix norm induced by a cone:
/// `sup { || sum_i (sum_j w_j a_ij) e_i || : x = sum_j w_j e_j in C, ||x|| = 1 }`.
///
/// Computed on the weight simplex via positive homogeneity, with
/// `resolution` grid points per edge plus one refinement pass. The returned
/// `grid_gap` is the improvement the refinement found over the grid.
pub fn matrix_cone_norm(
    a: &DMatrix<f64>,
    cone: &Cone,
    ambient: &NormSpec,
    resolution: usize,
) -> Result<SupEstimate> {
    let n = cone.rank();
    if a.nrows() != n || a.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, got: a.nrows().max(a.ncols()) });
    }
    if matches!(ambient, NormSpec::ConeInduced(_)) {
        return Err(Error::InvalidParameter("ambient norm must not be cone-induced".into()));
    }
    let basis = cone.basis_matrix();
    sup_over_simplex(n, resolution, |w| {
        let w = nalgebra::DVector::from_column_slice(w);
        let x = basis * &w;
        let image = basis * (a * &w);
        Ok(ambient.norm(image.as_slice())? / ambient.norm(x.as_slice())?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[f64]]) -> Vec<Point> {
        v.iter().map(|c| Point::new(c.to_vec()).unwrap()).collect()
    }

    fn unit_square() -> CompactSet {
        CompactSet::hull(pts(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]])).unwrap()
    }

    #[test]
    fn hull_drops_interior_point() {
        let h = convex_hull(pts(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], &[0.25, 0.25]])).unwrap();
        assert_eq!(h.points(), pts(&[&[0.0, 0.0], &[0.0, 1.0], &[1.0, 0.0]]).as_slice());
        assert!(h.is_convex());
    }

    #[test]
    fn hull_of_singleton() {
        let h = convex_hull(pts(&[&[0.0, 0.0]])).unwrap();
        assert_eq!(h.len(), 1);
    }

    #[test]
    fn hull_drops_collinear_midpoint() {
        let h = convex_hull(pts(&[&[0.0, 0.0], &[1.0, 1.0], &[2.0, 2.0]])).unwrap();
        assert_eq!(h.len(), 2);
    }

    #[test]
    fn hull_errors() {
        assert_eq!(convex_hull(vec![]).unwrap_err(), Error::EmptySet);
        assert!(matches!(
            convex_hull(pts(&[&[0.0], &[1.0, 2.0]])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            convex_hull(vec![Point::zeros(7)]),
            Err(Error::DimensionTooLarge(7))
        ));
    }

    #[test]
    fn minkowski_of_squares() {
        let s = unit_square();
        let sum = minkowski_sum(&s, &s).unwrap();
        let expected =
            CompactSet::hull(pts(&[&[0.0, 0.0], &[2.0, 0.0], &[0.0, 2.0], &[2.0, 2.0]])).unwrap();
        assert_eq!(sum, expected);
    }

    #[test]
    fn minkowski_with_singleton_translates() {
        let s = unit_square();
        let t = minkowski_sum(&CompactSet::singleton(Point::from([3.0, -1.0])), &s).unwrap();
        let expected =
            CompactSet::hull(pts(&[&[3.0, -1.0], &[4.0, -1.0], &[3.0, 0.0], &[4.0, 0.0]])).unwrap();
        assert_eq!(t, expected);
    }

    #[test]
    fn minkowski_nonconvex_pairwise_sums() {
        let a = CompactSet::finite(pts(&[&[0.0], &[2.0]])).unwrap();
        let sum = minkowski_sum(&a, &a).unwrap();
        assert!(!sum.is_convex());
        assert_eq!(sum.points(), pts(&[&[0.0], &[2.0], &[4.0]]).as_slice());
    }

    #[test]
    fn minkowski_dimension_mismatch() {
        let a = CompactSet::singleton(Point::from([1.0]));
        assert!(minkowski_sum(&a, &unit_square()).is_err());
    }

    #[test]
    fn scaling() {
        assert_eq!(
            scale(2.0, &CompactSet::singleton(Point::from([1.0, 1.0]))).points(),
            &[Point::from([2.0, 2.0])]
        );
        assert_eq!(scale(0.0, &unit_square()).points(), &[Point::zeros(2)]);
        let seg = CompactSet::hull(pts(&[&[0.0, 0.0], &[1.0, 0.0]])).unwrap();
        let refl = scale(-1.0, &seg);
        let expected = CompactSet::hull(pts(&[&[0.0, 0.0], &[-1.0, 0.0]])).unwrap();
        assert!(refl.approx_eq(&expected, 1e-15).unwrap());
        assert!(refl.is_convex());
    }

    #[test]
    fn point_distances() {
        let e = NormSpec::Euclidean;
        let d = distance_point_to_set(&Point::from([3.0, 4.0]), &CompactSet::origin(2), &e).unwrap();
        assert_eq!(d, 5.0);
        let seg = CompactSet::hull(pts(&[&[0.0, -1.0], &[0.0, 1.0]])).unwrap();
        let d = distance_point_to_set(&Point::from([2.0, 0.0]), &seg, &e).unwrap();
        assert!((d - 2.0).abs() < 1e-12);
        let inside = distance_point_to_set(&Point::from([0.5, 0.5]), &unit_square(), &e).unwrap();
        assert!(inside <= TOL_GEOM);
    }

    #[test]
    fn distance_to_hull_matches_weight_grid() {
        // Dense grid over the hull weights of a segment.
        let seg = CompactSet::hull(pts(&[&[0.0, -1.0], &[0.0, 1.0]])).unwrap();
        let p = Point::from([2.0, 0.0]);
        let oracle = (0..=1000)
            .map(|k| {
                let t = k as f64 / 1000.0;
                let q = Point::from([0.0, -1.0 + 2.0 * t]);
                p.sub(&q).euclidean_norm()
            })
            .fold(f64::INFINITY, f64::min);
        let d = distance_point_to_set(&p, &seg, &NormSpec::Euclidean).unwrap();
        assert!((d - oracle).abs() < 1e-9);
    }

    #[test]
    fn excess_and_hausdorff_basics() {
        let e = NormSpec::Euclidean;
        let s = unit_square();
        assert_eq!(directed_excess(&s, &s, &e).unwrap(), 0.0);
        let seg = CompactSet::hull(pts(&[&[0.0], &[1.0]])).unwrap();
        assert_eq!(directed_excess(&seg, &CompactSet::origin(1), &e).unwrap(), 1.0);
        let a = CompactSet::singleton(Point::from([0.0]));
        let b = CompactSet::singleton(Point::from([5.0]));
        assert_eq!(hausdorff(&a, &b, &e).unwrap(), 5.0);
        assert_eq!(hausdorff(&a, &b, &e).unwrap(), hausdorff(&b, &a, &e).unwrap());
    }

    #[test]
    fn set_norm_examples() {
        assert_eq!(set_norm(&CompactSet::origin(3), &NormSpec::Euclidean).unwrap(), 0.0);
        let s = CompactSet::hull(pts(&[&[-1.0, 0.0], &[0.0, 2.0]])).unwrap();
        assert_eq!(set_norm(&s, &NormSpec::Euclidean).unwrap(), 2.0);
        assert_eq!(set_norm(&s, &NormSpec::Coord1).unwrap(), 2.0);
    }

    #[test]
    fn polyhedral_norm_distances() {
        let s = unit_square();
        let p = Point::from([2.0, 3.0]);
        let d1 = distance_point_to_set(&p, &s, &NormSpec::Coord1).unwrap();
        let dinf = distance_point_to_set(&p, &s, &NormSpec::CoordInf).unwrap();
        assert!((d1 - 3.0).abs() < 1e-9);
        assert!((dinf - 2.0).abs() < 1e-9);
    }

    #[test]
    fn norm_serde() {
        let n: NormSpec = serde_json::from_str("\"coord-inf\"").unwrap();
        assert_eq!(n, NormSpec::CoordInf);
        let n: NormSpec = serde_json::from_str(r#"{"kind":"coord-1"}"#).unwrap();
        assert_eq!(n, NormSpec::Coord1);
        let n: NormSpec = serde_json::from_str(
            r#"{"kind":"cone-induced","cone":{"basis":[[1,0],[0,1]]},"ambient":"euclidean","resolution":50}"#,
        )
        .unwrap();
        assert_eq!(n.name(), "cone-induced");
        assert!(serde_json::from_str::<NormSpec>("\"taxicab\"").is_err());
    }

    #[test]
    fn compact_set_serde_hull_reduces() {
        let s: CompactSet =
            serde_json::from_str(r#"{"points": [[0,0],[1,0],[0,1],[0.2,0.2]], "convex": true}"#)
                .unwrap();
        assert_eq!(s.len(), 3);
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.contains("\"convex\":true"));
        assert!(serde_json::from_str::<CompactSet>(r#"{"points": [], "convex": false}"#).is_err());
    }

    #[test]
    fn cone_induced_norm_of_identity_is_one() {
        let cone = Cone::new(pts(&[&[1.0, 0.0], &[1.0, 1.0]])).unwrap();
        let norm = NormSpec::cone_induced(cone, NormSpec::Euclidean, 50).unwrap();
        let v = norm.norm(&[1.0, 0.0, 0.0, 1.0]).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        let nested = NormSpec::cone_induced(
            Cone::standard(2),
            norm.clone(),
            10,
        );
        assert!(nested.is_err());
    }

    #[test]
    fn matrix_norm_examples() {
        let cone = Cone::standard(2);
        let id = DMatrix::<f64>::identity(2, 2);
        assert!((matrix_cone_norm(&id, &cone, &NormSpec::Euclidean, 10).unwrap().value - 1.0).abs() < 1e-12);
        let c = DMatrix::from_element(1, 1, -3.5);
        let half_line = Cone::standard(1);
        assert_eq!(matrix_cone_norm(&c, &half_line, &NormSpec::Euclidean, 2).unwrap().value, 3.5);
        assert_eq!(
            matrix_cone_norm(&id, &cone, &NormSpec::Euclidean, 1).unwrap_err(),
            Error::Resolution(1)
        );
    }
}
