//! The check catalog: typed parameters and implementations.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::correspondence::{
    corollary1_check, corr_norm, dist_to_identity, eval_via_multimatrix, hat_extension, invertibility_certificate,
    lsc_probe, multimatrix, multimatrix_h1_to_identity, sample_cone_points, usc_probe, CertStatus, ProbeParams,
    ProbeResult, SetMap, SublinearCorrespondence,
};
use crate::geometry::{directed_excess, NormSpec, Point};
use crate::semigroup::{
    continuity_modulus, deviation_decay, growth_fit, identity_defect, lemma32_check, sample_pairs,
    semigroup_defect, SemigroupFamily,
};
use crate::{Error, Result, TOL_GEOM};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Subject {
    Correspondence,
    Family,
}

pub struct CheckInfo {
    pub name: &'static str,
    pub subject: Subject,
    pub summary: &'static str,
    /// `(field, type, default)`; an empty default means required.
    pub params: &'static [(&'static str, &'static str, &'static str)],
    pub example: &'static str,
}

pub const CATALOG: &[CheckInfo] = &[
    CheckInfo {
        name: "sublinearity",
        subject: Subject::Correspondence,
        summary: "sampled subadditivity and positive homogeneity",
        params: &[("samples", "integer", "100")],
        example: r#"{"samples": 50}"#,
    },
    CheckInfo {
        name: "corr-norm",
        subject: Subject::Correspondence,
        summary: "sup of ||phi(x)|| over the unit sphere of the cone (INFO)",
        params: &[],
        example: "{}",
    },
    CheckInfo {
        name: "dist-to-identity",
        subject: Subject::Correspondence,
        summary: "sup of h(phi(x), {x}) over the unit sphere (INFO)",
        params: &[],
        example: "{}",
    },
    CheckInfo {
        name: "eval-equivalence",
        subject: Subject::Correspondence,
        summary: "hat extension evaluated by Minkowski sums vs by its multimatrix",
        params: &[("samples", "integer", "100")],
        example: r#"{"samples": 20}"#,
    },
    CheckInfo {
        name: "lemma-equality",
        subject: Subject::Correspondence,
        summary: "h_1(M_phi_hat, {I}) equals sup h(phi_hat(x), {x}) within tol",
        params: &[],
        example: "{}",
    },
    CheckInfo {
        name: "corollary1",
        subject: Subject::Correspondence,
        summary: "h_1(M_phi_hat, {I}) >= sup h(phi(x), {x}) - tol",
        params: &[],
        example: "{}",
    },
    CheckInfo {
        name: "invertibility",
        subject: Subject::Correspondence,
        summary: "per-selection invertibility certificates of the hat multimatrix",
        params: &[("interior_samples", "integer", "16")],
        example: r#"{"interior_samples": 8}"#,
    },
    CheckInfo {
        name: "usc-probe",
        subject: Subject::Correspondence,
        summary: "epsilon-delta probe of upper semicontinuity at x",
        params: &[
            ("x", "point", ""),
            ("eps", "number", ""),
            ("delta0", "number", "1"),
            ("ladder_steps", "integer", "20"),
            ("radii", "number list", "[0.5, 0.9]"),
            ("sphere_resolution", "integer", "5"),
        ],
        example: r#"{"x": [1.0, 1.0], "eps": 0.5}"#,
    },
    CheckInfo {
        name: "lsc-probe",
        subject: Subject::Correspondence,
        summary: "epsilon-delta probe of lower semicontinuity at x",
        params: &[
            ("x", "point", ""),
            ("eps", "number", ""),
            ("delta0", "number", "1"),
            ("ladder_steps", "integer", "20"),
            ("radii", "number list", "[0.5, 0.9]"),
            ("sphere_resolution", "integer", "5"),
        ],
        example: r#"{"x": [1.0, 1.0], "eps": 0.5}"#,
    },
    CheckInfo {
        name: "usc-at-zero",
        subject: Subject::Correspondence,
        summary: "usc probe at 0 accepts delta = eps / ||phi|| for every eps",
        params: &[("eps", "number list", "[1, 0.1, 0.01]")],
        example: r#"{"eps": [1.0, 0.1]}"#,
    },
    CheckInfo {
        name: "semigroup-defect",
        subject: Subject::Family,
        summary: "max h(phi^(t+s)(x), (phi^t o phi^s)(x)) over the grid",
        params: &[
            ("ts", "number list", ""),
            ("xs", "point list", "sampled"),
            ("samples", "integer", "8"),
            ("max_defect", "number", "1e-9"),
        ],
        example: r#"{"ts": [0.0, 1.0]}"#,
    },
    CheckInfo {
        name: "identity-at-zero",
        subject: Subject::Family,
        summary: "max h(phi^0(x), {x}) <= 1e-9 on sampled x",
        params: &[("samples", "integer", "16")],
        example: "{}",
    },
    CheckInfo {
        name: "growth-fit",
        subject: Subject::Family,
        summary: "log-linear envelope ||phi^t|| <= beta0 e^(gamma t)",
        params: &[
            ("ts", "number list", ""),
            ("expect_gamma", "number", "none"),
            ("expect_beta0", "number", "none"),
            ("fit_tol", "number", "1e-6"),
        ],
        example: r#"{"ts": [0.0, 1.0, 2.0]}"#,
    },
    CheckInfo {
        name: "continuity-modulus",
        subject: Subject::Family,
        summary: "sampled sup of h(phi_hat^s(x), phi_hat^w(x)) over |s - w| <= delta",
        params: &[
            ("w", "number", ""),
            ("x", "point", ""),
            ("deltas", "number list", "[0, 2^-10, ..., 1]"),
            ("samples", "integer", "16"),
            ("target", "number", "none"),
        ],
        example: r#"{"w": 1.0, "x": [1.0]}"#,
    },
    CheckInfo {
        name: "lemma32",
        subject: Subject::Family,
        summary: "h(phi_hat^(w+s)(x), phi_hat^w(x)) <= M ||phi_hat^w|| ||phi_hat^s - phi^0|| ||x||",
        params: &[
            ("ws", "number list", "[0, 0.25, 0.5, 0.75, 1]"),
            ("ss", "number list", "[0, 0.25, 0.5, 0.75, 1]"),
            ("xs", "point list", "basis vectors and their sum"),
            ("pairs", "integer", "64"),
        ],
        example: r#"{"ws": [0.5], "ss": [0.5]}"#,
    },
    CheckInfo {
        name: "deviation-decay",
        subject: Subject::Family,
        summary: "||phi_hat^t - phi^0|| at t = 2^-k strictly decreases from k = strict_from",
        params: &[("k_max", "integer", "12"), ("strict_from", "integer", "3")],
        example: r#"{"k_max": 6}"#,
    },
];

pub fn info(name: &str) -> Option<&'static CheckInfo> {
    CATALOG.iter().find(|c| c.name == name)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplesParams {
    #[serde(default = "default_samples")]
    pub samples: usize,
}

fn default_samples() -> usize {
    100
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoParams {}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvertibilityParams {
    #[serde(default = "default_interior")]
    pub interior_samples: usize,
}

fn default_interior() -> usize {
    16
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeCheckParams {
    pub x: Point,
    pub eps: f64,
    #[serde(default = "one")]
    pub delta0: f64,
    #[serde(default = "default_ladder")]
    pub ladder_steps: usize,
    #[serde(default = "default_radii")]
    pub radii: Vec<f64>,
    #[serde(default = "default_sphere")]
    pub sphere_resolution: usize,
}

fn one() -> f64 {
    1.0
}

fn default_ladder() -> usize {
    20
}

fn default_radii() -> Vec<f64> {
    vec![0.5, 0.9]
}

fn default_sphere() -> usize {
    5
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UscAtZeroParams {
    #[serde(default = "default_eps")]
    pub eps: Vec<f64>,
}

fn default_eps() -> Vec<f64> {
    vec![1.0, 0.1, 0.01]
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefectParams {
    pub ts: Vec<f64>,
    #[serde(default)]
    pub xs: Option<Vec<Point>>,
    #[serde(default = "default_defect_samples")]
    pub samples: usize,
    #[serde(default = "default_max_defect")]
    pub max_defect: f64,
}

fn default_defect_samples() -> usize {
    8
}

fn default_max_defect() -> f64 {
    TOL_GEOM
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityParams {
    #[serde(default = "default_identity_samples")]
    pub samples: usize,
}

fn default_identity_samples() -> usize {
    16
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrowthParams {
    pub ts: Vec<f64>,
    #[serde(default)]
    pub expect_gamma: Option<f64>,
    #[serde(default)]
    pub expect_beta0: Option<f64>,
    #[serde(default = "default_fit_tol")]
    pub fit_tol: f64,
}

fn default_fit_tol() -> f64 {
    1e-6
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModulusParams {
    pub w: f64,
    pub x: Point,
    #[serde(default = "default_deltas")]
    pub deltas: Vec<f64>,
    #[serde(default = "default_identity_samples")]
    pub samples: usize,
    #[serde(default)]
    pub target: Option<f64>,
}

pub fn default_deltas() -> Vec<f64> {
    std::iter::once(0.0).chain((0..=10).rev().map(|k| 2f64.powi(-k))).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lemma32Params {
    #[serde(default = "default_unit_grid")]
    pub ws: Vec<f64>,
    #[serde(default = "default_unit_grid")]
    pub ss: Vec<f64>,
    #[serde(default)]
    pub xs: Option<Vec<Point>>,
    #[serde(default = "default_pairs")]
    pub pairs: usize,
}

fn default_unit_grid() -> Vec<f64> {
    vec![0.0, 0.25, 0.5, 0.75, 1.0]
}

fn default_pairs() -> usize {
    64
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecayParams {
    #[serde(default = "default_k_max")]
    pub k_max: u32,
    #[serde(default = "default_strict_from")]
    pub strict_from: u32,
}

fn default_k_max() -> u32 {
    12
}

fn default_strict_from() -> u32 {
    3
}

/// A parsed check with typed parameters.
#[derive(Clone, Debug)]
pub enum Check {
    Sublinearity(SamplesParams),
    CorrNorm(NoParams),
    DistToIdentity(NoParams),
    EvalEquivalence(SamplesParams),
    LemmaEquality(NoParams),
    Corollary1(NoParams),
    Invertibility(InvertibilityParams),
    UscProbe(ProbeCheckParams),
    LscProbe(ProbeCheckParams),
    UscAtZero(UscAtZeroParams),
    SemigroupDefect(DefectParams),
    IdentityAtZero(IdentityParams),
    GrowthFit(GrowthParams),
    ContinuityModulus(ModulusParams),
    Lemma32(Lemma32Params),
    DeviationDecay(DecayParams),
}

impl Check {
    /// Parses `params` for the named check; `Err` carries a config message.
    pub fn parse(name: &str, params: &Value) -> std::result::Result<Self, String> {
        let params = if params.is_null() { json!({}) } else { params.clone() };
        fn p<T: for<'de> Deserialize<'de>>(name: &str, v: Value) -> std::result::Result<T, String> {
            serde_json::from_value(v).map_err(|e| format!("params of check {name:?}: {e}"))
        }
        Ok(match name {
            "sublinearity" => Check::Sublinearity(p(name, params)?),
            "corr-norm" => Check::CorrNorm(p(name, params)?),
            "dist-to-identity" => Check::DistToIdentity(p(name, params)?),
            "eval-equivalence" => Check::EvalEquivalence(p(name, params)?),
            "lemma-equality" => Check::LemmaEquality(p(name, params)?),
            "corollary1" => Check::Corollary1(p(name, params)?),
            "invertibility" => Check::Invertibility(p(name, params)?),
            "usc-probe" => Check::UscProbe(p(name, params)?),
            "lsc-probe" => Check::LscProbe(p(name, params)?),
            "usc-at-zero" => Check::UscAtZero(p(name, params)?),
            "semigroup-defect" => Check::SemigroupDefect(p(name, params)?),
            "identity-at-zero" => Check::IdentityAtZero(p(name, params)?),
            "growth-fit" => Check::GrowthFit(p(name, params)?),
            "continuity-modulus" => Check::ContinuityModulus(p(name, params)?),
            "lemma32" => Check::Lemma32(p(name, params)?),
            "deviation-decay" => Check::DeviationDecay(p(name, params)?),
            other => return Err(format!("unknown check {other:?}")),
        })
    }

    /// Parameters with defaults filled in, for echoing in the report.
    pub fn echo(&self) -> Value {
        let v = match self {
            Check::Sublinearity(p) | Check::EvalEquivalence(p) => serde_json::to_value(p),
            Check::CorrNorm(p) | Check::DistToIdentity(p) | Check::LemmaEquality(p) | Check::Corollary1(p) => {
                serde_json::to_value(p)
            }
            Check::Invertibility(p) => serde_json::to_value(p),
            Check::UscProbe(p) | Check::LscProbe(p) => serde_json::to_value(p),
            Check::UscAtZero(p) => serde_json::to_value(p),
            Check::SemigroupDefect(p) => serde_json::to_value(p),
            Check::IdentityAtZero(p) => serde_json::to_value(p),
            Check::GrowthFit(p) => serde_json::to_value(p),
            Check::ContinuityModulus(p) => serde_json::to_value(p),
            Check::Lemma32(p) => serde_json::to_value(p),
            Check::DeviationDecay(p) => serde_json::to_value(p),
        };
        v.expect("parameters serialize")
    }

    pub fn subject(&self) -> Subject {
        match self {
            Check::SemigroupDefect(_)
            | Check::IdentityAtZero(_)
            | Check::GrowthFit(_)
            | Check::ContinuityModulus(_)
            | Check::Lemma32(_)
            | Check::DeviationDecay(_) => Subject::Family,
            _ => Subject::Correspondence,
        }
    }

    /// Points given in the parameters, for dimension validation.
    pub fn points(&self) -> Vec<&Point> {
        match self {
            Check::UscProbe(p) | Check::LscProbe(p) => vec![&p.x],
            Check::ContinuityModulus(p) => vec![&p.x],
            Check::SemigroupDefect(p) => p.xs.iter().flatten().collect(),
            Check::Lemma32(p) => p.xs.iter().flatten().collect(),
            _ => Vec::new(),
        }
    }
}

/// A CSV table emitted next to the report.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// What a check computed. `passed == None` marks an INFO record.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub passed: Option<bool>,
    pub values: Value,
    pub tolerance: Option<f64>,
    pub witness: Option<Value>,
    pub table: Option<Table>,
}

impl Outcome {
    fn info(values: Value) -> Self {
        Self { passed: None, values, tolerance: None, witness: None, table: None }
    }

    fn verdict(passed: bool, values: Value, tolerance: f64) -> Self {
        Self { passed: Some(passed), values, tolerance: Some(tolerance), witness: None, table: None }
    }

    fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }
}

/// Shared run settings.
pub struct Context<'a> {
    pub norm: &'a NormSpec,
    pub resolution: usize,
    pub tol: f64,
    pub seed: u64,
}

fn fmt(v: f64) -> String {
    format!("{v:e}")
}

fn probe_outcome(r: ProbeResult, eps: f64) -> Outcome {
    let table = Table {
        headers: vec!["delta", "samples", "max_excess"],
        rows: r
            .ladder
            .iter()
            .map(|row| vec![fmt(row.delta), row.samples.to_string(), fmt(row.max_excess)])
            .collect(),
    };
    let values = json!({"accepted_delta": r.accepted_delta, "constructive": r.constructive});
    let mut out = Outcome::verdict(r.accepted(), values, eps).with_table(table);
    if let Some(w) = r.witness {
        out = out.with_witness(serde_json::to_value(w).expect("witness serializes"));
    }
    out
}

fn probe_params(p: &ProbeCheckParams, ctx: &Context) -> ProbeParams {
    ProbeParams {
        delta0: p.delta0,
        ladder_steps: p.ladder_steps,
        radii: p.radii.clone(),
        sphere_resolution: p.sphere_resolution,
        norm: ctx.norm.clone(),
        norm_resolution: ctx.resolution,
    }
}

fn sampled_points(cone: &crate::Cone, xs: &Option<Vec<Point>>, samples: usize, seed: u64) -> Vec<Point> {
    match xs {
        Some(xs) => xs.clone(),
        None => sample_cone_points(cone, samples, &mut ChaCha8Rng::seed_from_u64(seed)),
    }
}

pub fn run_on_correspondence(check: &Check, phi: &SublinearCorrespondence, ctx: &Context) -> Result<Outcome> {
    let norm = ctx.norm;
    match check {
        Check::Sublinearity(p) => {
            let r = crate::correspondence::check_sublinearity(phi, p.samples, ctx.seed)?;
            let values = json!({"samples": r.samples, "max_excess": r.max_excess, "violations": r.violations.len()});
            let mut out = Outcome::verdict(r.ok(), values, TOL_GEOM);
            if let Some(v) = r.violations.first() {
                out = out.with_witness(serde_json::to_value(v).expect("violation serializes"));
            }
            Ok(out)
        }
        Check::CorrNorm(_) => {
            let est = corr_norm(phi, norm, ctx.resolution)?;
            Ok(Outcome::info(serde_json::to_value(est).expect("estimate serializes")))
        }
        Check::DistToIdentity(_) => {
            let est = dist_to_identity(phi, norm, ctx.resolution)?;
            Ok(Outcome::info(serde_json::to_value(est).expect("estimate serializes")))
        }
        Check::EvalEquivalence(p) => {
            let hat = hat_extension(phi)?;
            let m = multimatrix(&hat)?;
            let xs = sample_cone_points(phi.cone(), p.samples, &mut ChaCha8Rng::seed_from_u64(ctx.seed));
            let mut worst = (0.0_f64, None);
            let mut rows = Vec::new();
            for x in &xs {
                let a = hat.eval_linear(x)?;
                let b = eval_via_multimatrix(&m, phi.cone(), x, hat.is_convex_valued())?;
                let e = directed_excess(&a, &b, norm)?.max(directed_excess(&b, &a, norm)?);
                rows.push(vec![x.to_string(), fmt(e)]);
                if e > worst.0 || worst.1.is_none() {
                    worst = (e, Some(x.clone()));
                }
            }
            let pass = worst.0 <= 1e-8;
            let mut out = Outcome::verdict(pass, json!({"max_mutual_excess": worst.0}), 1e-8)
                .with_table(Table { headers: vec!["x", "mutual_excess"], rows });
            if !pass {
                out = out.with_witness(json!({"x": worst.1}));
            }
            Ok(out)
        }
        Check::LemmaEquality(_) => {
            let hat = hat_extension(phi)?;
            let h1 = multimatrix_h1_to_identity(&multimatrix(&hat)?, phi.cone(), norm, ctx.resolution)?;
            let d = dist_to_identity(&hat, norm, ctx.resolution)?;
            let gap = (h1.value - d.value).abs();
            let pass = gap <= ctx.tol;
            let values = json!({"h1": h1.value, "dist_to_identity": d.value, "gap": gap});
            let mut out = Outcome::verdict(pass, values, ctx.tol);
            if !pass {
                out = out.with_witness(json!({"selection": h1.selection, "argmax_weights": d.argmax}));
            }
            Ok(out)
        }
        Check::Corollary1(_) => {
            let c = corollary1_check(phi, norm, ctx.resolution, ctx.tol)?;
            let mut out = Outcome::verdict(c.holds, json!({"lhs": c.lhs, "rhs": c.rhs}), ctx.tol);
            if !c.holds {
                let d = dist_to_identity(phi, norm, ctx.resolution)?;
                out = out.with_witness(json!({"argmax_weights": d.argmax}));
            }
            Ok(out)
        }
        Check::Invertibility(p) => {
            let m = multimatrix(&hat_extension(phi)?)?;
            let report = invertibility_certificate(&m, phi.cone(), p.interior_samples, ctx.seed)?;
            let rows = report
                .entries
                .iter()
                .map(|e| {
                    let status = serde_json::to_value(e.status).expect("status serializes");
                    vec![
                        e.vertex.to_string(),
                        format!("{:?}", e.selection.provenance),
                        fmt(e.determinant),
                        fmt(e.condition),
                        fmt(e.deviation),
                        status.as_str().unwrap_or_default().to_string(),
                    ]
                })
                .collect();
            let count = |s: CertStatus| report.entries.iter().filter(|e| e.status == s).count();
            let values = json!({
                "certified": count(CertStatus::Certified),
                "invertible_at_sample": count(CertStatus::InvertibleAtSample),
                "singular": count(CertStatus::Singular),
            });
            let mut out = Outcome::verdict(!report.any_singular(), values, TOL_GEOM).with_table(Table {
                headers: vec!["vertex", "provenance", "determinant", "condition", "deviation", "status"],
                rows,
            });
            if let Some(e) = report.first_singular() {
                out = out.with_witness(serde_json::to_value(e).expect("entry serializes"));
            }
            Ok(out)
        }
        Check::UscProbe(p) => Ok(probe_outcome(usc_probe(phi, &p.x, p.eps, &probe_params(p, ctx))?, p.eps)),
        Check::LscProbe(p) => Ok(probe_outcome(lsc_probe(phi, &p.x, p.eps, &probe_params(p, ctx))?, p.eps)),
        Check::UscAtZero(p) => {
            let params = ProbeParams { norm: norm.clone(), norm_resolution: ctx.resolution, ..Default::default() };
            let phi_norm = corr_norm(phi, norm, ctx.resolution)?.value;
            let zero = Point::zeros(phi.cone().dim());
            let mut rows = Vec::new();
            let mut failed = None;
            for eps in &p.eps {
                let r = usc_probe(phi, &zero, *eps, &params)?;
                let ok = r.constructive && r.accepted();
                rows.push(vec![fmt(*eps), fmt(eps / phi_norm), ok.to_string()]);
                if !ok && failed.is_none() {
                    let excess = r.ladder.first().map_or(f64::NAN, |row| row.max_excess);
                    failed = Some(json!({"eps": eps, "delta": eps / phi_norm, "max_excess": excess}));
                }
            }
            let mut out = Outcome::verdict(failed.is_none(), json!({"corr_norm": phi_norm}), 0.0)
                .with_table(Table { headers: vec!["eps", "delta", "accepted"], rows });
            if let Some(w) = failed {
                out = out.with_witness(w);
            }
            Ok(out)
        }
        _ => Err(Error::InvalidParameter("check needs a semigroup family".into())),
    }
}

pub fn run_on_family(check: &Check, family: &SemigroupFamily, ctx: &Context) -> Result<Outcome> {
    let norm = ctx.norm;
    match check {
        Check::SemigroupDefect(p) => {
            let xs = sampled_points(family.cone(), &p.xs, p.samples, ctx.seed);
            let d = semigroup_defect(family, &p.ts, &xs, norm)?;
            let pass = d.max_defect <= p.max_defect;
            let mut out = Outcome::verdict(pass, json!({"max_defect": d.max_defect}), p.max_defect);
            if !pass {
                out = out.with_witness(serde_json::to_value(d.witness).expect("witness serializes"));
            }
            Ok(out)
        }
        Check::IdentityAtZero(p) => {
            let xs = sampled_points(family.cone(), &None, p.samples, ctx.seed);
            let d = identity_defect(family, &xs, norm)?;
            Ok(Outcome::verdict(d <= TOL_GEOM, json!({"max_defect": d}), TOL_GEOM).with_witness(json!({"t": 0.0})))
        }
        Check::GrowthFit(p) => {
            let fit = growth_fit(family, &p.ts, norm, ctx.resolution)?;
            let gamma_ok = p.expect_gamma.is_none_or(|g| (fit.gamma - g).abs() <= p.fit_tol);
            let beta_ok = p.expect_beta0.is_none_or(|b| (fit.beta0 - b).abs() <= p.fit_tol);
            let envelope_ok = fit.residuals.iter().all(|r| *r <= 0.0);
            let rows = fit
                .ts
                .iter()
                .zip(&fit.norms)
                .zip(&fit.residuals)
                .map(|((t, n), r)| vec![fmt(*t), fmt(*n), fmt(*r)])
                .collect();
            let pass = gamma_ok && beta_ok && envelope_ok;
            let values = json!({"gamma": fit.gamma, "beta0": fit.beta0});
            let mut out = Outcome::verdict(pass, values, p.fit_tol)
                .with_table(Table { headers: vec!["t", "norm", "fit_residual"], rows });
            if !pass {
                let worst = fit
                    .ts
                    .iter()
                    .zip(&fit.residuals)
                    .max_by(|a, b| a.1.total_cmp(b.1))
                    .map(|(t, _)| *t);
                out = out.with_witness(json!({"t": worst, "gamma": fit.gamma, "beta0": fit.beta0}));
            }
            Ok(out)
        }
        Check::ContinuityModulus(p) => {
            let rows = continuity_modulus(family, p.w, &p.x, &p.deltas, p.samples, norm)?;
            let mut sorted = rows.clone();
            sorted.sort_by(|a, b| a.delta.total_cmp(&b.delta));
            let monotone = sorted.windows(2).all(|q| q[0].modulus <= q[1].modulus);
            let zero_ok = sorted.iter().filter(|r| r.delta == 0.0).all(|r| r.modulus == 0.0);
            let smallest = sorted.iter().find(|r| r.delta > 0.0).or(sorted.first());
            let target_ok = match (p.target, smallest) {
                (Some(t), Some(r)) => r.modulus <= t,
                _ => true,
            };
            let pass = monotone && zero_ok && target_ok;
            let values = json!({
                "monotone": monotone,
                "smallest_delta": smallest.map(|r| r.delta),
                "modulus_at_smallest_delta": smallest.map(|r| r.modulus),
            });
            let table = Table {
                headers: vec!["delta", "modulus"],
                rows: rows.iter().map(|r| vec![fmt(r.delta), fmt(r.modulus)]).collect(),
            };
            let mut out = Outcome::verdict(pass, values, p.target.unwrap_or(0.0)).with_table(table);
            if !pass {
                out = out.with_witness(json!({"delta": smallest.map(|r| r.delta), "s": smallest.map(|r| r.s)}));
            }
            Ok(out)
        }
        Check::Lemma32(p) => {
            let cone = family.cone();
            let xs = match &p.xs {
                Some(xs) => xs.clone(),
                None => {
                    let mut xs = cone.basis().to_vec();
                    if xs.len() > 1 {
                        xs.push(cone.combine(&vec![1.0; cone.rank()]));
                    }
                    xs
                }
            };
            let pairs = sample_pairs(cone, p.pairs, ctx.seed);
            let mut rows = Vec::new();
            let mut failed = None;
            for w in &p.ws {
                for s in &p.ss {
                    for x in &xs {
                        let r = lemma32_check(family, *w, *s, x, &pairs, norm, ctx.resolution, ctx.tol)?;
                        rows.push(vec![fmt(*w), fmt(*s), x.to_string(), fmt(r.lhs), fmt(r.rhs), fmt(r.m_est)]);
                        if !r.holds && failed.is_none() {
                            failed = Some(json!({"w": w, "s": s, "x": x, "lhs": r.lhs, "rhs": r.rhs}));
                        }
                    }
                }
            }
            let values = json!({"cases": rows.len()});
            let mut out = Outcome::verdict(failed.is_none(), values, ctx.tol)
                .with_table(Table { headers: vec!["w", "s", "x", "lhs", "rhs", "m_est"], rows });
            if let Some(w) = failed {
                out = out.with_witness(w);
            }
            Ok(out)
        }
        Check::DeviationDecay(p) => {
            let d = deviation_decay(family, p.k_max, p.strict_from, norm, ctx.resolution)?;
            let table = Table {
                headers: vec!["t", "deviation"],
                rows: d.rows.iter().map(|r| vec![fmt(r.t), fmt(r.deviation)]).collect(),
            };
            let mut out = Outcome::verdict(d.strictly_decreasing, json!({"rows": d.rows.len()}), 0.0).with_table(table);
            if !d.strictly_decreasing {
                let k = p.strict_from.saturating_sub(1) as usize;
                let bad = d.rows.windows(2).skip(k).find(|q| q[1].deviation >= q[0].deviation);
                out = out.with_witness(json!({"t": bad.map(|q| q[1].t)}));
            }
            Ok(out)
        }
        _ => Err(Error::InvalidParameter("check needs a correspondence".into())),
    }
}
