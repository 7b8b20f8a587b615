//! Pairs of convex compact sets modulo `(A,B) ~ (C,D) <=> A + D = B + C`.
//!
//! The quotient is a real normed space with
//! `[A,B] + [C,D] = [A+C, B+D]`, `l[A,B] = [lA, lB]` for `l >= 0`,
//! `l[A,B] = [-lB, -lA]` for `l < 0` and `||[A,B]|| = h(A,B)`.
//! Classes are kept as representative pairs; equality is decided by the
//! defining relation with Minkowski sums and the Hausdorff metric.

use serde::{Deserialize, Serialize};

use crate::correspondence::{LinearCorrespondence, SetMap};
use crate::geometry::{hausdorff, minkowski_sum, scale, CompactSet, NormSpec, Point};
use crate::{Error, Result, TOL_GEOM};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadstromClass {
    rep_a: CompactSet,
    rep_b: CompactSet,
    /// Set when a non-convex input had to be replaced by its hull.
    hulled: bool,
}

impl RadstromClass {
    /// The class of `(a, b)`. Non-convex inputs are replaced by their convex
    /// hulls and the result is flagged via [`RadstromClass::was_hulled`].
    pub fn new(a: CompactSet, b: CompactSet) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), got: b.dim() });
        }
        let hulled = !a.is_convex() || !b.is_convex();
        Ok(Self { rep_a: a.to_convex()?, rep_b: b.to_convex()?, hulled })
    }

    pub fn zero(dim: usize) -> Self {
        Self { rep_a: CompactSet::origin(dim), rep_b: CompactSet::origin(dim), hulled: false }
    }

    pub fn rep_a(&self) -> &CompactSet {
        &self.rep_a
    }

    pub fn rep_b(&self) -> &CompactSet {
        &self.rep_b
    }

    pub fn was_hulled(&self) -> bool {
        self.hulled
    }

    pub fn dim(&self) -> usize {
        self.rep_a.dim()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        class_add(self, other)
    }

    pub fn scale(&self, lambda: f64) -> Self {
        class_scale(lambda, self)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        class_add(self, &class_scale(-1.0, other))
    }

    pub fn norm(&self) -> Result<f64> {
        class_norm(self)
    }
}

/// `[A,B] ~ [C,D]` iff `h(A+D, B+C) <= TOL_GEOM`.
pub fn classes_equal(p: &RadstromClass, q: &RadstromClass) -> Result<bool> {
    Ok(class_distance_defect(p, q)? <= TOL_GEOM)
}

/// `h(A+D, B+C)` for `p = [A,B]`, `q = [C,D]`.
pub fn class_distance_defect(p: &RadstromClass, q: &RadstromClass) -> Result<f64> {
    let left = minkowski_sum(&p.rep_a, &q.rep_b)?;
    let right = minkowski_sum(&p.rep_b, &q.rep_a)?;
    hausdorff(&left, &right, &NormSpec::Euclidean)
}

pub fn class_add(p: &RadstromClass, q: &RadstromClass) -> Result<RadstromClass> {
    Ok(RadstromClass {
        rep_a: minkowski_sum(&p.rep_a, &q.rep_a)?,
        rep_b: minkowski_sum(&p.rep_b, &q.rep_b)?,
        hulled: p.hulled || q.hulled,
    })
}

pub fn class_scale(lambda: f64, p: &RadstromClass) -> RadstromClass {
    let (a, b) = if lambda >= 0.0 {
        (scale(lambda, &p.rep_a), scale(lambda, &p.rep_b))
    } else {
        (scale(-lambda, &p.rep_b), scale(-lambda, &p.rep_a))
    };
    RadstromClass { rep_a: a, rep_b: b, hulled: p.hulled }
}

/// `||[A,B]|| = h(A,B)` under the euclidean norm.
pub fn class_norm(p: &RadstromClass) -> Result<f64> {
    class_norm_with(p, &NormSpec::Euclidean)
}

pub fn class_norm_with(p: &RadstromClass, norm: &NormSpec) -> Result<f64> {
    hausdorff(&p.rep_a, &p.rep_b, norm)
}

/// `f(x) = [phi(x), {0}]`.
pub fn embed(phi: &LinearCorrespondence, x: &Point) -> Result<RadstromClass> {
    let value = phi.eval(x)?;
    let dim = value.dim();
    RadstromClass::new(value, CompactSet::origin(dim))
}
