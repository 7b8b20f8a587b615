//! Iteration semigroups `{phi^t : t >= 0}` with `phi^t ∘ phi^s = phi^(t+s)`.
//!
//! Real time is only available for families with a closed-form rule; an
//! arbitrary correspondence gets the discrete-power semigroup at integer `t`.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cone::Cone;
use crate::correspondence::{
    compose_eval, corr_norm, dist_to_identity, hat_extension, sample_cone_points, union_of_images,
    CorrespondenceDoc, LinearCorrespondence, SetMap, SublinearCorrespondence,
};
use crate::geometry::{hausdorff, CompactSet, NormSpec, Point};
use crate::{Error, Result, TOL_GEOM};

pub type FamilyFn = dyn Fn(f64) -> Result<SublinearCorrespondence> + Send + Sync;

#[derive(Clone)]
pub enum FamilyRule {
    /// `phi^t = {x}`.
    Identity,
    /// `phi^t(x) = [e^(a t), e^(b t)] x` with `0 <= a <= b`.
    IntervalScalar { a: f64, b: f64 },
    /// `phi^n = psi ∘ ... ∘ psi` (n factors) at integer `t = n`.
    DiscretePower(SublinearCorrespondence),
    /// `phi^0 = {x}` and `phi^t = phi` for `t > 0`; a semigroup iff `phi ∘ phi = phi`.
    Idempotent(SublinearCorrespondence),
    /// The hat extension of another family at every `t`.
    HatOf(Box<FamilyRule>),
    Custom { name: String, f: Arc<FamilyFn> },
}

impl fmt::Debug for FamilyRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyRule::Identity => write!(f, "Identity"),
            FamilyRule::IntervalScalar { a, b } => write!(f, "IntervalScalar({a}, {b})"),
            FamilyRule::DiscretePower(psi) => write!(f, "DiscretePower({})", psi.rule().name()),
            FamilyRule::Idempotent(phi) => write!(f, "Idempotent({})", phi.rule().name()),
            FamilyRule::HatOf(inner) => write!(f, "HatOf({inner:?})"),
            FamilyRule::Custom { name, .. } => write!(f, "Custom({name})"),
        }
    }
}

impl FamilyRule {
    pub fn name(&self) -> String {
        match self {
            FamilyRule::Identity => "identity".into(),
            FamilyRule::IntervalScalar { .. } => "interval-scalar".into(),
            FamilyRule::DiscretePower(_) => "discrete-power".into(),
            FamilyRule::Idempotent(_) => "idempotent".into(),
            FamilyRule::HatOf(inner) => format!("hat-of({})", inner.name()),
            FamilyRule::Custom { name, .. } => name.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SemigroupFamily {
    cone: Cone,
    rule: FamilyRule,
}

fn power_value(psi: &SublinearCorrespondence, n: u64, x: &Point) -> Result<CompactSet> {
    psi.cone().coords(x)?;
    let mut value = CompactSet::singleton(x.clone());
    for _ in 0..n {
        value = union_of_images(psi, &value)?;
    }
    Ok(value)
}

fn linear_power(psi: &LinearCorrespondence, n: u64) -> Result<LinearCorrespondence> {
    let mut acc = LinearCorrespondence::identity(psi.cone().clone());
    for _ in 0..n {
        acc = crate::correspondence::compose(psi, &acc)?;
    }
    Ok(acc)
}

impl SemigroupFamily {
    pub fn identity(cone: Cone) -> Self {
        Self { cone, rule: FamilyRule::Identity }
    }

    pub fn interval_scalar(cone: Cone, a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && 0.0 <= a && a <= b) {
            return Err(Error::InvalidParameter(format!("need 0 <= a <= b, got a={a}, b={b}")));
        }
        Ok(Self { cone, rule: FamilyRule::IntervalScalar { a, b } })
    }

    pub fn discrete_power(psi: SublinearCorrespondence) -> Result<Self> {
        if !psi.is_endomorphism() {
            return Err(Error::NotEndomorphism);
        }
        Ok(Self { cone: psi.cone().clone(), rule: FamilyRule::DiscretePower(psi) })
    }

    pub fn idempotent(phi: SublinearCorrespondence) -> Result<Self> {
        if !phi.is_endomorphism() {
            return Err(Error::NotEndomorphism);
        }
        Ok(Self { cone: phi.cone().clone(), rule: FamilyRule::Idempotent(phi) })
    }

    pub fn hat_of(inner: SemigroupFamily) -> Self {
        Self { cone: inner.cone, rule: FamilyRule::HatOf(Box::new(inner.rule)) }
    }

    /// A user family; `f` must be pure and return endomorphisms of `cone`.
    pub fn custom<F>(cone: Cone, name: &str, f: F) -> Self
    where
        F: Fn(f64) -> Result<SublinearCorrespondence> + Send + Sync + 'static,
    {
        Self { cone, rule: FamilyRule::Custom { name: name.to_string(), f: Arc::new(f) } }
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn rule(&self) -> &FamilyRule {
        &self.rule
    }

    pub fn name(&self) -> String {
        self.rule.name()
    }

    /// Whether `at` accepts non-integer times.
    pub fn is_real_time(&self) -> bool {
        fn real(rule: &FamilyRule) -> bool {
            match rule {
                FamilyRule::DiscretePower(_) => false,
                FamilyRule::HatOf(inner) => real(inner),
                _ => true,
            }
        }
        real(&self.rule)
    }

    /// The member `phi^t`.
    pub fn at(&self, t: f64) -> Result<SublinearCorrespondence> {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::InvalidParameter(format!("time must be finite and >= 0, got {t}")));
        }
        self.rule_at(&self.rule, t)
    }

    fn rule_at(&self, rule: &FamilyRule, t: f64) -> Result<SublinearCorrespondence> {
        let identity = || SublinearCorrespondence::from_linear(LinearCorrespondence::identity(self.cone.clone()));
        match rule {
            FamilyRule::Identity => Ok(identity()),
            FamilyRule::IntervalScalar { a, b } => {
                SublinearCorrespondence::interval_scalar(self.cone.clone(), (a * t).exp(), (b * t).exp())
            }
            FamilyRule::DiscretePower(psi) => {
                if t.fract() != 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "discrete-power family is defined at integer times only, got {t}"
                    )));
                }
                let n = t as u64;
                if let Some(lin) = psi.as_linear() {
                    return Ok(SublinearCorrespondence::from_linear(linear_power(lin, n)?));
                }
                let psi = psi.clone();
                let dim = self.cone.dim();
                SublinearCorrespondence::custom(self.cone.clone(), dim, true, &format!("power-{n}"), move |x| {
                    power_value(&psi, n, x)
                })
            }
            FamilyRule::Idempotent(phi) => Ok(if t == 0.0 { identity() } else { phi.clone() }),
            FamilyRule::HatOf(inner) => {
                let member = self.rule_at(inner, t)?;
                Ok(SublinearCorrespondence::from_linear(hat_extension(&member)?))
            }
            FamilyRule::Custom { f, .. } => f(t),
        }
    }

    /// `phi^t(x)`.
    pub fn eval(&self, t: f64, x: &Point) -> Result<CompactSet> {
        self.at(t)?.eval(x)
    }
}

/// JSON form: `{"family": "interval-scalar", "a": 0.5, "b": 1.0}` and so on.
/// `cone` defaults to `[0, inf)` for `identity` and `interval-scalar`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FamilyDoc {
    Identity {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cone: Option<Cone>,
    },
    IntervalScalar {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cone: Option<Cone>,
        a: f64,
        b: f64,
    },
    DiscretePower {
        of: CorrespondenceDoc,
    },
    Idempotent {
        of: CorrespondenceDoc,
    },
    HatOf {
        of: Box<FamilyDoc>,
    },
}

pub const FAMILY_KINDS: [&str; 5] = ["identity", "interval-scalar", "discrete-power", "idempotent", "hat-of"];

impl FamilyDoc {
    pub fn build(&self) -> Result<SemigroupFamily> {
        let default_cone = |c: &Option<Cone>| c.clone().unwrap_or_else(|| Cone::standard(1));
        match self {
            FamilyDoc::Identity { cone } => Ok(SemigroupFamily::identity(default_cone(cone))),
            FamilyDoc::IntervalScalar { cone, a, b } => {
                SemigroupFamily::interval_scalar(default_cone(cone), *a, *b)
            }
            FamilyDoc::DiscretePower { of } => SemigroupFamily::discrete_power(of.build()?),
            FamilyDoc::Idempotent { of } => SemigroupFamily::idempotent(of.build()?),
            FamilyDoc::HatOf { of } => Ok(SemigroupFamily::hat_of(of.build()?)),
        }
    }
}

fn check_grid(ts: &[f64]) -> Result<()> {
    if ts.is_empty() {
        return Err(Error::InvalidParameter("time grid is empty".into()));
    }
    if let Some(t) = ts.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
        return Err(Error::InvalidParameter(format!("time grid values must be >= 0, got {t}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DefectWitness {
    pub t: f64,
    pub s: f64,
    pub x: Point,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SemigroupDefect {
    pub max_defect: f64,
    /// The `(t, s, x)` attaining `max_defect` (first in grid order on ties).
    pub witness: Option<DefectWitness>,
}

/// `max h(phi^(t+s)(x), (phi^t ∘ phi^s)(x))` over the grid and samples.
pub fn semigroup_defect(
    family: &SemigroupFamily,
    ts: &[f64],
    xs: &[Point],
    norm: &NormSpec,
) -> Result<SemigroupDefect> {
    check_grid(ts)?;
    let pairs: Vec<(f64, f64)> = ts.iter().flat_map(|t| ts.iter().map(move |s| (*t, *s))).collect();
    let rows: Vec<Vec<f64>> = pairs
        .par_iter()
        .map(|(t, s)| {
            let (ft, fs, fts) = (family.at(*t)?, family.at(*s)?, family.at(t + s)?);
            xs.iter()
                .map(|x| hausdorff(&fts.eval(x)?, &compose_eval(&ft, &fs, x)?, norm))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = SemigroupDefect { max_defect: 0.0, witness: None };
    for ((t, s), row) in pairs.iter().zip(&rows) {
        for (x, d) in xs.iter().zip(row) {
            if out.witness.is_none() || *d > out.max_defect {
                out.max_defect = *d;
                out.witness = Some(DefectWitness { t: *t, s: *s, x: x.clone() });
            }
        }
    }
    Ok(out)
}

/// `max h(phi^0(x), {x})` over the samples.
pub fn identity_defect(family: &SemigroupFamily, xs: &[Point], norm: &NormSpec) -> Result<f64> {
    let phi0 = family.at(0.0)?;
    let mut worst = 0.0_f64;
    for x in xs {
        worst = worst.max(hausdorff(&phi0.eval(x)?, &CompactSet::singleton(x.clone()), norm)?);
    }
    Ok(worst)
}

/// Log-linear upper envelope `||phi^t|| <= beta0 e^(gamma t)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthFit {
    pub beta0: f64,
    pub gamma: f64,
    pub ts: Vec<f64>,
    pub norms: Vec<f64>,
    /// `log ||phi^t|| - (log beta0 + gamma t)`; all `<= 0`.
    pub residuals: Vec<f64>,
}

/// Least-squares line through `(t, log ||phi^t||)`, shifted up until it lies
/// above every point.
pub fn growth_fit(family: &SemigroupFamily, ts: &[f64], norm: &NormSpec, resolution: usize) -> Result<GrowthFit> {
    check_grid(ts)?;
    let norms = ts
        .par_iter()
        .map(|t| Ok(corr_norm(&family.at(*t)?, norm, resolution)?.value))
        .collect::<Result<Vec<f64>>>()?;
    if let Some(v) = norms.iter().find(|v| v.is_nan() || **v <= 0.0) {
        return Err(Error::InvalidParameter(format!("cannot fit a log-linear envelope to norm {v}")));
    }
    let ys: Vec<f64> = norms.iter().map(|v| v.ln()).collect();
    let k = ts.len() as f64;
    let t_mean = ts.iter().sum::<f64>() / k;
    let y_mean = ys.iter().sum::<f64>() / k;
    let sxx: f64 = ts.iter().map(|t| (t - t_mean).powi(2)).sum();
    let sxy: f64 = ts.iter().zip(&ys).map(|(t, y)| (t - t_mean) * (y - y_mean)).sum();
    let gamma = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = y_mean - gamma * t_mean;
    let shift = ts
        .iter()
        .zip(&ys)
        .map(|(t, y)| y - intercept - gamma * t)
        .fold(f64::NEG_INFINITY, f64::max);
    let log_beta0 = intercept + shift;
    let residuals = ts.iter().zip(&ys).map(|(t, y)| (y - log_beta0 - gamma * t).min(0.0)).collect();
    Ok(GrowthFit { beta0: log_beta0.exp(), gamma, ts: ts.to_vec(), norms, residuals })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModulusRow {
    pub delta: f64,
    /// `sup h(phi_hat^s(x), phi_hat^w(x))` over sampled `|s - w| <= delta`,
    /// taken as a running maximum over all smaller deltas.
    pub modulus: f64,
    /// The `s` attaining the modulus.
    pub s: f64,
}

/// Per-delta sampled continuity modulus of `s -> phi_hat^s(x)` at `w`.
/// Each delta samples `s = w + delta k / samples` for `|k| <= samples`
/// (dropping `s < 0`); rows come back in the order of `deltas`.
pub fn continuity_modulus(
    family: &SemigroupFamily,
    w: f64,
    x: &Point,
    deltas: &[f64],
    samples: usize,
    norm: &NormSpec,
) -> Result<Vec<ModulusRow>> {
    if !(w.is_finite() && w >= 0.0) {
        return Err(Error::InvalidParameter(format!("w must be >= 0, got {w}")));
    }
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    if let Some(d) = deltas.iter().find(|d| !(d.is_finite() && **d >= 0.0)) {
        return Err(Error::InvalidParameter(format!("deltas must be >= 0, got {d}")));
    }
    let hat = |t: f64| -> Result<LinearCorrespondence> { hat_extension(&family.at(t)?) };
    let fw = hat(w)?.eval_linear(x)?;
    let raw = deltas
        .par_iter()
        .map(|delta| {
            let mut best = (0.0_f64, w);
            let k = samples as i64;
            for i in -k..=k {
                let s = w + delta * (i as f64) / (samples as f64);
                if s < 0.0 || s == w {
                    continue;
                }
                let h = hausdorff(&hat(s)?.eval_linear(x)?, &fw, norm)?;
                if h > best.0 {
                    best = (h, s);
                }
            }
            Ok(best)
        })
        .collect::<Result<Vec<(f64, f64)>>>()?;
    let mut order: Vec<usize> = (0..deltas.len()).collect();
    order.sort_by(|a, b| deltas[*a].total_cmp(&deltas[*b]));
    let mut rows = vec![ModulusRow { delta: 0.0, modulus: 0.0, s: w }; deltas.len()];
    let mut running = (0.0_f64, w);
    for i in order {
        if raw[i].0 > running.0 {
            running = raw[i];
        }
        rows[i] = ModulusRow { delta: deltas[i], modulus: running.0, s: running.1 };
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinuniEstimate {
    /// Smallest `M >= 1` with `h(phi(x), phi(y)) <= M ||phi|| ||x - y||` on the pairs.
    pub m_est: f64,
    pub phi_norm: f64,
    /// The pair attaining the unclamped maximum.
    pub pair: Option<(Point, Point)>,
}

/// Random pairs of cone points for [`lemma_linuni_constant`].
pub fn sample_pairs(cone: &Cone, count: usize, seed: u64) -> Vec<(Point, Point)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs = sample_cone_points(cone, count, &mut rng);
    let ys = sample_cone_points(cone, count, &mut rng);
    xs.into_iter().zip(ys).collect()
}

/// Sampled constant of the uniform Lipschitz bound for linear correspondences.
/// Pairs with `||x - y|| <= TOL_GEOM` are skipped.
pub fn lemma_linuni_constant(
    phi: &LinearCorrespondence,
    pairs: &[(Point, Point)],
    norm: &NormSpec,
    resolution: usize,
) -> Result<LinuniEstimate> {
    let phi_norm = corr_norm(phi, norm, resolution)?.value;
    let ratios = pairs
        .par_iter()
        .map(|(x, y)| {
            let d = norm.distance(x, y)?;
            if d <= TOL_GEOM || phi_norm == 0.0 {
                return Ok(None);
            }
            let h = hausdorff(&phi.eval_linear(x)?, &phi.eval_linear(y)?, norm)?;
            Ok(Some(h / (phi_norm * d)))
        })
        .collect::<Result<Vec<Option<f64>>>>()?;
    let mut best: Option<(f64, usize)> = None;
    for (i, r) in ratios.iter().enumerate() {
        if let Some(r) = r {
            if best.is_none_or(|(b, _)| *r > b) {
                best = Some((*r, i));
            }
        }
    }
    Ok(LinuniEstimate {
        m_est: best.map_or(1.0, |(r, _)| r.max(1.0)),
        phi_norm,
        pair: best.map(|(_, i)| pairs[i].clone()),
    })
}

/// `||phi_hat^t - phi^0|| := sup { h(phi_hat^t(z), {z}) : z in C, ||z|| = 1 }`.
pub fn deviation_norm(family: &SemigroupFamily, t: f64, norm: &NormSpec, resolution: usize) -> Result<f64> {
    let hat = hat_extension(&family.at(t)?)?;
    Ok(dist_to_identity(&hat, norm, resolution)?.value)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lemma32 {
    pub lhs: f64,
    pub rhs: f64,
    pub m_est: f64,
    pub hat_w_norm: f64,
    pub deviation: f64,
    pub holds: bool,
}

/// Checks `h(phi_hat^(w+s)(x), phi_hat^w(x)) <= M ||phi_hat^w|| ||phi_hat^s - phi^0|| ||x||`
/// with `M` estimated for `phi_hat^w` on the given pairs.
#[allow(clippy::too_many_arguments)]
pub fn lemma32_check(
    family: &SemigroupFamily,
    w: f64,
    s: f64,
    x: &Point,
    pairs: &[(Point, Point)],
    norm: &NormSpec,
    resolution: usize,
    tol: f64,
) -> Result<Lemma32> {
    family.cone().coords(x)?;
    let hat_w = hat_extension(&family.at(w)?)?;
    let hat_ws = hat_extension(&family.at(w + s)?)?;
    let lhs = hausdorff(&hat_ws.eval_linear(x)?, &hat_w.eval_linear(x)?, norm)?;
    let linuni = lemma_linuni_constant(&hat_w, pairs, norm, resolution)?;
    let deviation = deviation_norm(family, s, norm, resolution)?;
    let rhs = linuni.m_est * linuni.phi_norm * deviation * norm.point_norm(x)?;
    Ok(Lemma32 {
        lhs,
        rhs,
        m_est: linuni.m_est,
        hat_w_norm: linuni.phi_norm,
        deviation,
        holds: lhs <= rhs + tol,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayRow {
    pub t: f64,
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeviationDecay {
    pub rows: Vec<DecayRow>,
    /// Whether the deviation strictly decreases from `k = strict_from` on.
    pub strictly_decreasing: bool,
    pub strict_from: u32,
}

/// `||phi_hat^t - phi^0||` at `t = 2^-k` for `k = 1..=k_max`.
pub fn deviation_decay(
    family: &SemigroupFamily,
    k_max: u32,
    strict_from: u32,
    norm: &NormSpec,
    resolution: usize,
) -> Result<DeviationDecay> {
    let rows = (1..=k_max)
        .into_par_iter()
        .map(|k| {
            let t = 2f64.powi(-(k as i32));
            Ok(DecayRow { t, deviation: deviation_norm(family, t, norm, resolution)? })
        })
        .collect::<Result<Vec<_>>>()?;
    let start = strict_from.saturating_sub(1) as usize;
    let strictly_decreasing = rows
        .windows(2)
        .skip(start)
        .all(|p| p[1].deviation < p[0].deviation);
    Ok(DeviationDecay { rows, strictly_decreasing, strict_from })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closing() -> SemigroupFamily {
        SemigroupFamily::interval_scalar(Cone::standard(1), 0.5, 1.0).unwrap()
    }

    fn ones() -> Vec<Point> {
        vec![Point::from([1.0]), Point::from([2.5])]
    }

    #[test]
    fn interval_family_is_a_semigroup() {
        let ts = [0.0, 0.25, 0.5, 1.0];
        let d = semigroup_defect(&closing(), &ts, &ones(), &NormSpec::Euclidean).unwrap();
        assert!(d.max_defect <= 1e-9, "{}", d.max_defect);
        assert!(identity_defect(&closing(), &ones(), &NormSpec::Euclidean).unwrap() <= TOL_GEOM);
    }

    #[test]
    fn time_varying_family_has_defect() {
        let f = SemigroupFamily::custom(Cone::standard(1), "drift", |t| {
            SublinearCorrespondence::interval_scalar(Cone::standard(1), (0.5 * t).exp(), (t + t * t).exp())
        });
        let d = semigroup_defect(&f, &[0.0, 0.5, 1.0], &ones(), &NormSpec::Euclidean).unwrap();
        assert!(d.max_defect > 0.1);
        let w = d.witness.unwrap();
        assert!(w.t > 0.0 && w.s > 0.0);
    }

    #[test]
    fn growth_of_closing_family() {
        let ts: Vec<f64> = (0..=8).map(|k| k as f64 * 0.25).collect();
        let fit = growth_fit(&closing(), &ts, &NormSpec::Euclidean, 2).unwrap();
        assert!((fit.gamma - 1.0).abs() < 1e-9 && (fit.beta0 - 1.0).abs() < 1e-9);
        assert!(fit.residuals.iter().all(|r| *r <= 0.0));
    }

    #[test]
    fn growth_of_identity_and_doubling() {
        let ts = [0.0, 1.0, 2.0, 3.0];
        let id = SemigroupFamily::identity(Cone::standard(2));
        let fit = growth_fit(&id, &ts, &NormSpec::Euclidean, 10).unwrap();
        assert!(fit.gamma.abs() < 1e-12 && (fit.beta0 - 1.0).abs() < 1e-12);

        let two = SublinearCorrespondence::from_linear(LinearCorrespondence::scalar(Cone::standard(2), 2.0));
        let fam = SemigroupFamily::discrete_power(two).unwrap();
        let fit = growth_fit(&fam, &ts, &NormSpec::Euclidean, 10).unwrap();
        assert!((fit.gamma - 2f64.ln()).abs() < 1e-9);
        assert!(fam.at(0.5).is_err());
    }

    #[test]
    fn nonlinear_power_matches_composition() {
        let ex = SublinearCorrespondence::paper_example();
        let fam = SemigroupFamily::discrete_power(ex).unwrap();
        let d = semigroup_defect(&fam, &[0.0, 1.0, 2.0], &[Point::from([1.0, 0.0])], &NormSpec::Euclidean)
            .unwrap();
        assert!(d.max_defect <= TOL_GEOM);
    }

    #[test]
    fn modulus_matches_closed_form() {
        let x = Point::from([1.0]);
        let deltas = [0.0, 0.25, 0.125];
        let rows = continuity_modulus(&closing(), 1.0, &x, &deltas, 8, &NormSpec::Euclidean).unwrap();
        assert_eq!(rows[0].modulus, 0.0);
        let e = std::f64::consts::E;
        assert!((rows[1].modulus - (e * 0.25f64.exp() - e)).abs() < 1e-12);
        assert!(rows[2].modulus <= rows[1].modulus);
    }

    #[test]
    fn linuni_examples() {
        let cone = Cone::standard(1);
        let pairs = sample_pairs(&cone, 50, 3);
        let id = LinearCorrespondence::identity(cone.clone());
        let est = lemma_linuni_constant(&id, &pairs, &NormSpec::Euclidean, 2).unwrap();
        assert!((est.m_est - 1.0).abs() < 1e-12);
        let iv = LinearCorrespondence::new(
            cone.clone(),
            vec![CompactSet::hull(vec![Point::from([1.0]), Point::from([2.0])]).unwrap()],
        )
        .unwrap();
        let est = lemma_linuni_constant(&iv, &pairs, &NormSpec::Euclidean, 2).unwrap();
        assert!((est.m_est - 1.0).abs() < 1e-12 && (est.phi_norm - 2.0).abs() < 1e-12);
    }

    #[test]
    fn lemma32_cases() {
        let pairs = sample_pairs(&Cone::standard(1), 20, 0);
        let x = Point::from([1.0]);
        let e = NormSpec::Euclidean;
        let r = lemma32_check(&closing(), 0.5, 0.0, &x, &pairs, &e, 2, 1e-6).unwrap();
        assert_eq!(r.lhs, 0.0);
        assert!(r.holds);
        let r = lemma32_check(&closing(), 0.5, 0.5, &x, &pairs, &e, 2, 1e-6).unwrap();
        assert!(r.holds, "{r:?}");
        let id = SemigroupFamily::identity(Cone::standard(1));
        let r = lemma32_check(&id, 0.3, 0.7, &x, &pairs, &e, 2, 1e-6).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (0.0, 0.0, true));
    }

    #[test]
    fn deviation_decays() {
        let d = deviation_decay(&closing(), 12, 3, &NormSpec::Euclidean, 2).unwrap();
        assert!(d.strictly_decreasing);
        assert!((d.rows[0].deviation - (0.5f64.exp() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn family_docs() {
        let f: FamilyDoc = serde_json::from_str(r#"{"family":"interval-scalar","a":0.5,"b":1.0}"#).unwrap();
        assert_eq!(f.build().unwrap().name(), "interval-scalar");
        let f: FamilyDoc =
            serde_json::from_str(r#"{"family":"hat-of","of":{"family":"idempotent","of":{"kind":"paper-example"}}}"#)
                .unwrap();
        let fam = f.build().unwrap();
        assert_eq!(fam.name(), "hat-of(idempotent)");
        assert!(serde_json::from_str::<FamilyDoc>(r#"{"family":"interval-scalar","a":2,"b":1}"#)
            .unwrap()
            .build()
            .is_err());
    }
}
