//! Linear and sublinear correspondences on a cone.
//!
//! A linear correspondence is additive and positively homogeneous, so it is
//! determined by the images of the cone basis:
//! `phi(sum_j w_j e_j) = sum_j w_j phi(e_j)` (Minkowski sum). A sublinear one
//! only satisfies `phi(x + y) ⊆ phi(x) + phi(y)` and therefore carries an
//! executable evaluation rule; its basis images are cached for the hat
//! extension `phi_hat(x) = sum_j w_j co(phi(e_j))`, which contains it.

mod doc;
mod multimatrix;
mod norms;
mod probes;

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cone::Cone;
use crate::geometry::{
    combined_convexity, directed_excess, hausdorff, minkowski_sum, scale, CompactSet, NormSpec,
    Point,
};
use crate::{Error, Result, TOL_GEOM};

pub use doc::{CorrespondenceDoc, TableEntryDoc, CORRESPONDENCE_KINDS};
pub use multimatrix::{
    eval_via_multimatrix, invertibility_certificate, multimatrix, multimatrix_h1_to_identity,
    CertStatus, CertificateEntry, H1Estimate, InvertibilityReport, Multimatrix, SelectionMatrix,
    MAX_SELECTIONS,
};
pub use norms::{corollary1_check, corr_norm, dist_to_identity, Corollary1};
pub use probes::{lsc_probe, usc_probe, LadderRow, ProbeParams, ProbeResult, ProbeWitness};

/// Products of basis-image sizes above this fall back to hull-reduced evaluation.
const MAX_GENERATORS: usize = 4096;

/// A set-valued map from a cone into some `R^m`.
pub trait SetMap: Send + Sync {
    fn cone(&self) -> &Cone;
    fn target_dim(&self) -> usize;
    /// Whether every value lies in the domain cone.
    fn is_endomorphism(&self) -> bool;
    fn eval(&self, x: &Point) -> Result<CompactSet>;
    /// A generating point list of `eval(x)`, possibly not hull-reduced. Only
    /// valid where the caller needs suprema of convex functions over the value.
    fn eval_generators(&self, x: &Point) -> Result<CompactSet> {
        self.eval(x)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearCorrespondence {
    cone: Cone,
    target_dim: usize,
    basis_images: Vec<CompactSet>,
    endomorphism: bool,
}

impl LinearCorrespondence {
    /// A linear correspondence into `R^m` with the given basis images.
    pub fn new(cone: Cone, basis_images: Vec<CompactSet>) -> Result<Self> {
        if basis_images.len() != cone.rank() {
            return Err(Error::DimensionMismatch { expected: cone.rank(), got: basis_images.len() });
        }
        let target_dim = basis_images[0].dim();
        for img in &basis_images {
            if img.dim() != target_dim {
                return Err(Error::DimensionMismatch { expected: target_dim, got: img.dim() });
            }
        }
        Ok(Self { cone, target_dim, basis_images, endomorphism: false })
    }

    /// A linear correspondence `C -> C`; every image point must lie in `C`.
    pub fn endomorphism(cone: Cone, basis_images: Vec<CompactSet>) -> Result<Self> {
        let mut phi = Self::new(cone, basis_images)?;
        if phi.target_dim != phi.cone.dim() {
            return Err(Error::NotEndomorphism);
        }
        for img in &phi.basis_images {
            for p in img.points() {
                phi.cone.coords(p)?;
            }
        }
        phi.endomorphism = true;
        Ok(phi)
    }

    /// `phi(x) = {x}`.
    pub fn identity(cone: Cone) -> Self {
        Self::scalar(cone, 1.0)
    }

    /// `phi(x) = {c x}` for `c >= 0`.
    pub fn scalar(cone: Cone, c: f64) -> Self {
        let basis_images =
            cone.basis().iter().map(|e| CompactSet::singleton(e.scaled(c))).collect();
        let target_dim = cone.dim();
        Self { cone, target_dim, basis_images, endomorphism: c >= 0.0 }
    }

    pub fn basis_images(&self) -> &[CompactSet] {
        &self.basis_images
    }

    pub fn is_convex_valued(&self) -> bool {
        self.basis_images.iter().all(|s| s.is_convex())
    }

    /// `sum_j w_j phi(e_j)` with `w = l(x)`; `phi(0) = {0}`.
    pub fn eval_linear(&self, x: &Point) -> Result<CompactSet> {
        let w = self.cone.coords(x)?;
        let mut acc = CompactSet::origin(self.target_dim);
        for (wj, img) in w.as_slice().iter().zip(&self.basis_images) {
            if *wj == 0.0 {
                continue;
            }
            acc = minkowski_sum(&acc, &scale(*wj, img))?;
        }
        Ok(acc)
    }

    fn generators(&self, x: &Point) -> Result<CompactSet> {
        let w = self.cone.coords(x)?;
        let active: Vec<(f64, &CompactSet)> = w
            .as_slice()
            .iter()
            .zip(&self.basis_images)
            .filter(|(wj, _)| **wj != 0.0)
            .map(|(wj, img)| (*wj, img))
            .collect();
        let count = active.iter().try_fold(1usize, |acc, (_, img)| acc.checked_mul(img.len()));
        match count {
            Some(c) if c <= MAX_GENERATORS => {}
            _ => return self.eval_linear(x),
        }
        let mut points = vec![Point::zeros(self.target_dim)];
        for (wj, img) in &active {
            points = points
                .iter()
                .flat_map(|p| img.points().iter().map(move |q| p.add(&q.scaled(*wj))))
                .collect();
        }
        let convex = combined_convexity(active.iter().map(|(_, s)| *s));
        Ok(CompactSet::unreduced(points, convex || active.is_empty()))
    }
}

impl SetMap for LinearCorrespondence {
    fn cone(&self) -> &Cone {
        &self.cone
    }

    fn target_dim(&self) -> usize {
        self.target_dim
    }

    fn is_endomorphism(&self) -> bool {
        self.endomorphism
    }

    fn eval(&self, x: &Point) -> Result<CompactSet> {
        self.eval_linear(x)
    }

    fn eval_generators(&self, x: &Point) -> Result<CompactSet> {
        self.generators(x)
    }
}

/// Signature of a user-supplied evaluation rule.
pub type RuleFn = dyn Fn(&Point) -> Result<CompactSet> + Send + Sync;

#[derive(Clone)]
pub struct CustomRule {
    pub name: String,
    pub f: Arc<RuleFn>,
}

impl fmt::Debug for CustomRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomRule").field("name", &self.name).finish()
    }
}

/// Piecewise-constant table rule on the weight simplex.
///
/// For `x` with weights `w = l(x)` and `s = sum w`, the value is `s * V_k`
/// where `V_k` is the entry whose direction is nearest to `w / s` in the
/// 1-norm (ties go to the earliest entry); `phi(0) = {0}`. Directions are
/// stored normalized to the simplex, and every basis direction must appear.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRule {
    pub entries: Vec<(Vec<f64>, CompactSet)>,
}

impl TableRule {
    pub fn new(n: usize, entries: Vec<(Vec<f64>, CompactSet)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidParameter("table rule needs at least one entry".into()));
        }
        let dim = entries[0].1.dim();
        let mut normalized = Vec::with_capacity(entries.len());
        for (dir, value) in entries {
            if dir.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: dir.len() });
            }
            if value.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: value.dim() });
            }
            let s: f64 = dir.iter().sum();
            if dir.iter().any(|d| *d < 0.0) || s <= 0.0 {
                return Err(Error::InvalidParameter(
                    "table directions must be nonnegative and nonzero".into(),
                ));
            }
            normalized.push((dir.iter().map(|d| d / s).collect::<Vec<_>>(), value));
        }
        for j in 0..n {
            let has = normalized.iter().any(|(d, _)| (d[j] - 1.0).abs() <= TOL_GEOM);
            if !has {
                return Err(Error::InvalidParameter(format!("table lacks basis direction {j}")));
            }
        }
        Ok(Self { entries: normalized })
    }

    fn lookup(&self, u: &[f64]) -> &CompactSet {
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (k, (dir, _)) in self.entries.iter().enumerate() {
            let d: f64 = dir.iter().zip(u).map(|(a, b)| (a - b).abs()).sum();
            if d < best_d {
                best_d = d;
                best = k;
            }
        }
        &self.entries[best].1
    }
}

#[derive(Clone, Debug)]
pub enum Rule {
    /// A linear correspondence viewed as sublinear.
    Linear(LinearCorrespondence),
    /// `phi(x) = [lo, hi] x = { t x : lo <= t <= hi }`.
    IntervalScalar { lo: f64, hi: f64 },
    /// On the closed first quadrant: `phi(x, y) = {(0,0)}` for `y > 0` and
    /// `{(t, 0) : 0 <= t <= x}` for `y = 0`. Sublinear, upper but not lower
    /// semicontinuous along the positive x-axis.
    PaperExample,
    Table(TableRule),
    Custom(CustomRule),
}

impl Rule {
    pub fn name(&self) -> &str {
        match self {
            Rule::Linear(_) => "linear",
            Rule::IntervalScalar { .. } => "interval-scalar",
            Rule::PaperExample => "paper-example",
            Rule::Table(_) => "table",
            Rule::Custom(c) => &c.name,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SublinearCorrespondence {
    cone: Cone,
    rule: Rule,
    target_dim: usize,
    endomorphism: bool,
    basis_images: Vec<CompactSet>,
}

impl SublinearCorrespondence {
    fn with_rule(cone: Cone, rule: Rule, target_dim: usize, endomorphism: bool) -> Result<Self> {
        let mut phi = Self { cone, rule, target_dim, endomorphism, basis_images: Vec::new() };
        phi.basis_images = phi
            .cone
            .basis()
            .to_vec()
            .iter()
            .map(|e| phi.eval_rule(e))
            .collect::<Result<Vec<_>>>()?;
        for img in &phi.basis_images {
            if img.dim() != target_dim {
                return Err(Error::DimensionMismatch { expected: target_dim, got: img.dim() });
            }
        }
        Ok(phi)
    }

    pub fn from_linear(phi: LinearCorrespondence) -> Self {
        Self {
            cone: phi.cone.clone(),
            target_dim: phi.target_dim,
            endomorphism: phi.endomorphism,
            basis_images: phi.basis_images.clone(),
            rule: Rule::Linear(phi),
        }
    }

    /// `phi(x) = [lo, hi] x`; an endomorphism when `lo >= 0`.
    pub fn interval_scalar(cone: Cone, lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::InvalidParameter(format!("need lo <= hi, got [{lo}, {hi}]")));
        }
        let dim = cone.dim();
        Self::with_rule(cone, Rule::IntervalScalar { lo, hi }, dim, lo >= 0.0)
    }

    /// The sublinear, not lower semicontinuous example on `[0, inf)^2`.
    pub fn paper_example() -> Self {
        Self::with_rule(Cone::standard(2), Rule::PaperExample, 2, true)
            .expect("built-in example is well formed")
    }

    pub fn table(cone: Cone, entries: Vec<(Vec<f64>, CompactSet)>) -> Result<Self> {
        let table = TableRule::new(cone.rank(), entries)?;
        let dim = table.entries[0].1.dim();
        let endo = dim == cone.dim()
            && table.entries.iter().all(|(_, v)| v.points().iter().all(|p| cone.contains(p)));
        Self::with_rule(cone, Rule::Table(table), dim, endo)
    }

    /// A user rule. It must be pure; `endomorphism` is the caller's claim.
    pub fn custom<F>(
        cone: Cone,
        target_dim: usize,
        endomorphism: bool,
        name: &str,
        f: F,
    ) -> Result<Self>
    where
        F: Fn(&Point) -> Result<CompactSet> + Send + Sync + 'static,
    {
        let rule = Rule::Custom(CustomRule { name: name.to_string(), f: Arc::new(f) });
        Self::with_rule(cone, rule, target_dim, endomorphism)
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    pub fn basis_images(&self) -> &[CompactSet] {
        &self.basis_images
    }

    pub fn as_linear(&self) -> Option<&LinearCorrespondence> {
        match &self.rule {
            Rule::Linear(l) => Some(l),
            _ => None,
        }
    }

    fn eval_rule(&self, x: &Point) -> Result<CompactSet> {
        match &self.rule {
            Rule::Linear(l) => l.eval_linear(x),
            Rule::IntervalScalar { lo, hi } => {
                self.cone.coords(x)?;
                CompactSet::hull(vec![x.scaled(*lo), x.scaled(*hi)])
            }
            Rule::PaperExample => {
                let w = self.cone.coords(x)?;
                let (a, b) = (w.0[0], w.0[1]);
                if b > 0.0 {
                    Ok(CompactSet::origin(2))
                } else {
                    CompactSet::hull(vec![Point::zeros(2), Point::from([a, 0.0])])
                }
            }
            Rule::Table(t) => {
                let w = self.cone.coords(x)?;
                let s: f64 = w.as_slice().iter().sum();
                if s == 0.0 {
                    return Ok(CompactSet::origin(self.target_dim));
                }
                let u: Vec<f64> = w.as_slice().iter().map(|v| v / s).collect();
                Ok(scale(s, t.lookup(&u)))
            }
            Rule::Custom(c) => {
                self.cone.coords(x)?;
                (c.f)(x)
            }
        }
    }
}

impl SetMap for SublinearCorrespondence {
    fn cone(&self) -> &Cone {
        &self.cone
    }

    fn target_dim(&self) -> usize {
        self.target_dim
    }

    fn is_endomorphism(&self) -> bool {
        self.endomorphism
    }

    fn eval(&self, x: &Point) -> Result<CompactSet> {
        self.eval_rule(x)
    }

    fn eval_generators(&self, x: &Point) -> Result<CompactSet> {
        match &self.rule {
            Rule::Linear(l) => l.generators(x),
            _ => self.eval_rule(x),
        }
    }
}

/// `phi_hat(x) = sum_j w_j co(phi(e_j))`.
pub fn hat_extension(phi: &SublinearCorrespondence) -> Result<LinearCorrespondence> {
    let images =
        phi.basis_images.iter().map(|s| s.to_convex()).collect::<Result<Vec<_>>>()?;
    let mut hat = LinearCorrespondence::new(phi.cone.clone(), images)?;
    hat.endomorphism = phi.endomorphism;
    Ok(hat)
}

/// Union of `outer(v)` over the generators `v` of `inner(x)`, hulled when
/// any piece is a convex body. For convex-valued maps this is the convex hull
/// of `(outer ∘ inner)(x)`.
pub fn compose_eval(outer: &dyn SetMap, inner: &dyn SetMap, x: &Point) -> Result<CompactSet> {
    let inner_value = inner.eval(x)?;
    union_of_images(outer, &inner_value)
}

pub(crate) fn union_of_images(outer: &dyn SetMap, value: &CompactSet) -> Result<CompactSet> {
    let mut points = Vec::new();
    let mut pieces = vec![value.clone()];
    for v in value.points() {
        let img = outer.eval(v)?;
        points.extend(img.points().iter().cloned());
        pieces.push(img);
    }
    CompactSet::new(points, combined_convexity(pieces.iter()))
}

/// `(psi ∘ phi)(x) = ∪_{y in phi(x)} psi(y)`, as a linear correspondence on
/// the domain of `phi`. Basis images are `co(∪_v psi(v))` over the vertices
/// `v` of `phi(e_j)` for convex-valued inputs and the plain union otherwise.
pub fn compose(psi: &LinearCorrespondence, phi: &LinearCorrespondence) -> Result<LinearCorrespondence> {
    if psi.cone.dim() != phi.target_dim {
        return Err(Error::ConeMismatch(format!(
            "inner target dimension {} vs outer cone dimension {}",
            phi.target_dim,
            psi.cone.dim()
        )));
    }
    for img in &phi.basis_images {
        for p in img.points() {
            if !psi.cone.contains(p) {
                return Err(Error::ConeMismatch(format!("inner value {p} is outside the outer cone")));
            }
        }
    }
    let images = phi
        .basis_images
        .iter()
        .map(|img| union_of_images(psi, img))
        .collect::<Result<Vec<_>>>()?;
    let mut out = LinearCorrespondence::new(phi.cone.clone(), images)?;
    out.endomorphism = psi.endomorphism && phi.endomorphism && psi.cone.approx_eq(&phi.cone);
    Ok(out)
}

/// Random cone points with weights in `[0, 1)`; each weight is zeroed with
/// probability 1/4 so faces of the cone get sampled too.
pub fn sample_cone_points(cone: &Cone, count: usize, rng: &mut ChaCha8Rng) -> Vec<Point> {
    let n = cone.rank();
    (0..count)
        .map(|_| {
            let mut w: Vec<f64> = (0..n)
                .map(|_| if rng.random::<f64>() < 0.25 { 0.0 } else { rng.random::<f64>() })
                .collect();
            if w.iter().all(|v| *v == 0.0) {
                w[rng.random_range(0..n)] = 1.0;
            }
            cone.combine(&w)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    Subadditivity,
    Homogeneity,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub x: Point,
    /// Second point for subadditivity checks.
    pub y: Option<Point>,
    /// Scale factor for homogeneity checks.
    pub lambda: Option<f64>,
    pub excess: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SublinearityReport {
    pub samples: usize,
    pub max_excess: f64,
    pub violations: Vec<Violation>,
}

impl SublinearityReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Samples `phi(x + y) ⊆ phi(x) + phi(y)` and `phi(l x) = l phi(x)` for random
/// `x, y` in the cone and `l` in `[0.1, 10)`.
pub fn check_sublinearity(phi: &dyn SetMap, samples: usize, seed: u64) -> Result<SublinearityReport> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cone = phi.cone();
    let xs = sample_cone_points(cone, samples, &mut rng);
    let ys = sample_cone_points(cone, samples, &mut rng);
    let norm = NormSpec::Euclidean;
    let mut report = SublinearityReport { samples, max_excess: 0.0, violations: Vec::new() };
    for (x, y) in xs.iter().zip(&ys) {
        let lambda = 0.1 + rng.random::<f64>() * 9.9;
        let fx = phi.eval(x)?;
        let sum = minkowski_sum(&fx, &phi.eval(y)?)?;
        let excess = directed_excess(&phi.eval(&x.add(y))?, &sum, &norm)?;
        report.max_excess = report.max_excess.max(excess);
        if excess > TOL_GEOM {
            report.violations.push(Violation {
                kind: ViolationKind::Subadditivity,
                x: x.clone(),
                y: Some(y.clone()),
                lambda: None,
                excess,
            });
        }
        let h = hausdorff(&phi.eval(&x.scaled(lambda))?, &scale(lambda, &fx), &norm)?;
        report.max_excess = report.max_excess.max(h);
        if h > TOL_GEOM {
            report.violations.push(Violation {
                kind: ViolationKind::Homogeneity,
                x: x.clone(),
                y: None,
                lambda: Some(lambda),
                excess: h,
            });
        }
    }
    Ok(report)
}
