//! Finitely generated convex cones and their coordinate isomorphism.
//!
//! A cone `C = { sum_j w_j e_j : w_j >= 0 }` is stored by its linearly
//! independent basis. [`Cone::coords`] is the map `l` sending
//! `sum_j w_j e_j` to `(w_1, ..., w_n)`; it is defined on the span `C - C`
//! and maps `C` onto the nonnegative orthant.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::geometry::{NormSpec, Point};
use crate::simplex::simplex_grid;
use crate::{Error, Result, TOL_GEOM};

/// Coordinates of a point with respect to a cone basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConeCoords(pub Vec<f64>);

impl ConeCoords {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn unit(n: usize, j: usize) -> Self {
        let mut v = vec![0.0; n];
        v[j] = 1.0;
        ConeCoords(v)
    }
}

/// Whether [`Cone::coords_with`] rejects points outside the cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Enforce,
    /// Only require the point to lie in the span (`C - C`).
    SpanOnly,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawCone", into = "RawCone")]
pub struct Cone {
    basis: Vec<Point>,
    /// Columns are the basis vectors (m x n).
    matrix: DMatrix<f64>,
    /// Left inverse of `matrix` (n x m).
    pinv: DMatrix<f64>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

#[derive(Serialize, Deserialize)]
struct RawCone {
    basis: Vec<Point>,
}

impl TryFrom<RawCone> for Cone {
    type Error = Error;

    fn try_from(raw: RawCone) -> Result<Self> {
        Cone::new(raw.basis)
    }
}

impl From<Cone> for RawCone {
    fn from(c: Cone) -> Self {
        RawCone { basis: c.basis }
    }
}

impl Cone {
    /// Builds a cone from a linearly independent basis.
    pub fn new(basis: Vec<Point>) -> Result<Self> {
        let first = basis.first().ok_or(Error::EmptyBasis)?;
        let m = first.dim();
        for p in &basis {
            if p.dim() != m {
                return Err(Error::DimensionMismatch { expected: m, got: p.dim() });
            }
        }
        let n = basis.len();
        if n > m {
            return Err(Error::TooManyBasisVectors { n, m });
        }
        let matrix = DMatrix::from_fn(m, n, |r, c| basis[c].coords()[r]);
        let svd = matrix.clone().svd(true, true);
        let smallest = svd.singular_values.min();
        if smallest <= TOL_GEOM {
            return Err(Error::DependentBasis(smallest));
        }
        let pinv = svd
            .pseudo_inverse(0.0)
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        Ok(Self { basis, matrix, pinv })
    }

    /// The nonnegative orthant of `R^n`.
    pub fn standard(n: usize) -> Self {
        let basis = (0..n)
            .map(|j| {
                let mut v = vec![0.0; n];
                v[j] = 1.0;
                Point::new(v).expect("standard basis vector")
            })
            .collect();
        Self::new(basis).expect("standard basis is independent")
    }

    pub fn basis(&self) -> &[Point] {
        &self.basis
    }

    /// Number of basis vectors `n`.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Ambient dimension `m`.
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub(crate) fn basis_matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Coordinates of `x`, rejecting points outside the cone.
    pub fn coords(&self, x: &Point) -> Result<ConeCoords> {
        self.coords_with(x, Membership::Enforce)
    }

    /// Coordinates of `x`. With [`Membership::Enforce`] coordinates in
    /// `[-TOL_GEOM, 0)` are clamped to zero and anything below is an error.
    pub fn coords_with(&self, x: &Point, membership: Membership) -> Result<ConeCoords> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: x.dim() });
        }
        let xv = DVector::from_column_slice(x.coords());
        let lambda = &self.pinv * &xv;
        let residual = (&self.matrix * &lambda - &xv).norm();
        let scale = xv.norm().max(1.0);
        if residual > TOL_GEOM * scale {
            return Err(Error::OutsideSpan(residual));
        }
        let mut out: Vec<f64> = lambda.iter().copied().collect();
        if membership == Membership::Enforce {
            for (index, value) in out.iter_mut().enumerate() {
                if *value < -TOL_GEOM * scale {
                    return Err(Error::OutsideCone { index, value: *value });
                }
                if *value < 0.0 {
                    *value = 0.0;
                }
            }
        }
        Ok(ConeCoords(out))
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.coords(x).is_ok()
    }

    /// `sum_j w_j e_j`.
    pub fn from_coords(&self, lambda: &ConeCoords) -> Point {
        self.combine(lambda.as_slice())
    }

    pub(crate) fn combine(&self, w: &[f64]) -> Point {
        let v = &self.matrix * DVector::from_column_slice(w);
        Point::new(v.iter().copied().collect()).expect("finite combination")
    }

    /// Grid points of the unit sphere of the cone: simplex weights with
    /// `resolution` points per edge, each rescaled to norm one. The grid
    /// includes every basis direction.
    pub fn unit_sphere_sample(&self, norm: &NormSpec, resolution: usize) -> Result<Vec<Point>> {
        let grid = simplex_grid(self.rank(), resolution)?;
        grid.iter()
            .map(|w| {
                let x = self.combine(w);
                let r = norm.point_norm(&x)?;
                Ok(x.scaled(1.0 / r))
            })
            .collect()
    }

    /// Whether `other` has the same basis within tolerance.
    pub fn approx_eq(&self, other: &Cone) -> bool {
        self.rank() == other.rank()
            && self.dim() == other.dim()
            && self.basis.iter().zip(&other.basis).all(|(a, b)| a.max_abs_diff(b) <= TOL_GEOM)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oblique() -> Cone {
        Cone::new(vec![Point::from([1.0, 0.0]), Point::from([1.0, 1.0])]).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Cone::new(vec![]).unwrap_err(), Error::EmptyBasis);
        assert!(matches!(
            Cone::new(vec![Point::from([1.0, 0.0]), Point::from([2.0, 0.0])]),
            Err(Error::DependentBasis(_))
        ));
        assert!(matches!(
            Cone::new(vec![Point::from([1.0, 0.0]), Point::from([2.0])]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            Cone::new(vec![Point::from([1.0]), Point::from([2.0])]),
            Err(Error::TooManyBasisVectors { n: 2, m: 1 })
        ));
    }

    #[test]
    fn standard_coords_are_identity() {
        let c = Cone::standard(3);
        let x = Point::from([0.5, 2.0, 0.0]);
        assert_eq!(c.coords(&x).unwrap().0, vec![0.5, 2.0, 0.0]);
        assert_eq!(c.coords(&Point::from([0.0, 1.0, 0.0])).unwrap().0, vec![0.0, 1.0, 0.0]);
        assert_eq!(c.coords(&Point::from([1.0, 1.0, 1.0])).unwrap().0, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn oblique_coords_reconstruct() {
        let c = oblique();
        let x = Point::from([2.0, 1.0]);
        let l = c.coords(&x).unwrap();
        assert!((l.0[0] - 1.0).abs() < 1e-12 && (l.0[1] - 1.0).abs() < 1e-12);
        assert!(c.from_coords(&l).max_abs_diff(&x) < 1e-12);
    }

    #[test]
    fn membership_and_span() {
        let c = oblique();
        // (0, 1) = -e1 + e2 lies in C - C but not in C.
        let x = Point::from([0.0, 1.0]);
        assert!(matches!(c.coords(&x), Err(Error::OutsideCone { index: 0, .. })));
        let l = c.coords_with(&x, Membership::SpanOnly).unwrap();
        assert!((l.0[0] + 1.0).abs() < 1e-12);

        let plane = Cone::new(vec![Point::from([1.0, 0.0, 0.0])]).unwrap();
        assert!(matches!(plane.coords(&Point::from([1.0, 1.0, 0.0])), Err(Error::OutsideSpan(_))));
    }

    #[test]
    fn tiny_negative_coordinates_are_clamped() {
        let c = Cone::standard(2);
        let l = c.coords(&Point::from([1.0, -1e-12])).unwrap();
        assert_eq!(l.0[1], 0.0);
    }

    #[test]
    fn from_coords_basics() {
        let c = oblique();
        assert_eq!(c.from_coords(&ConeCoords::unit(2, 1)), Point::from([1.0, 1.0]));
        assert_eq!(c.from_coords(&ConeCoords(vec![0.0, 0.0])), Point::zeros(2));
    }

    #[test]
    fn unit_sphere_examples() {
        let line = Cone::new(vec![Point::from([3.0])]).unwrap();
        assert_eq!(line.unit_sphere_sample(&NormSpec::Euclidean, 7).unwrap(), vec![Point::from([1.0])]);

        let c = oblique();
        let s = c.unit_sphere_sample(&NormSpec::Euclidean, 3).unwrap();
        assert_eq!(s.len(), 3);
        let r = 1.0 / 2f64.sqrt();
        assert!(s.iter().any(|p| p.max_abs_diff(&Point::from([1.0, 0.0])) < 1e-12));
        assert!(s.iter().any(|p| p.max_abs_diff(&Point::from([r, r])) < 1e-12));
        assert_eq!(c.unit_sphere_sample(&NormSpec::Euclidean, 1).unwrap_err(), Error::Resolution(1));
    }

    #[test]
    fn serde_roundtrip() {
        let c: Cone = serde_json::from_str(r#"{"basis": [[1,0],[1,1]]}"#).unwrap();
        assert_eq!(c, oblique());
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"basis":[[1.0,0.0],[1.0,1.0]]}"#);
        assert!(serde_json::from_str::<Cone>(r#"{"basis": [[1,0],[2,0]]}"#).is_err());
    }
}
