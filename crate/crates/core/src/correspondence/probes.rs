//! Sampled epsilon-delta probes for upper and lower semicontinuity.
//!
//! For compact values, upper semicontinuity at `x` is probed as
//! `e(phi(z), phi(x)) <= eps` and lower semicontinuity as
//! `e(phi(x), phi(z)) <= eps` for all sampled `z` in the cone with
//! `||z - x|| < delta`. Deltas run down the ladder `delta0 / 2^k`.

use serde::{Deserialize, Serialize};

use crate::geometry::{directed_excess, CompactSet, NormSpec, Point};
use crate::{Error, Result, TOL_GEOM};

use super::{corr_norm, SetMap};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ProbeParams {
    pub delta0: f64,
    /// Ladder exponents run over `0..=ladder_steps`.
    pub ladder_steps: usize,
    /// Sample radii as fractions of delta.
    pub radii: Vec<f64>,
    /// Resolution of the unit-sphere directions added to the basis directions.
    pub sphere_resolution: usize,
    pub norm: NormSpec,
    /// Resolution of the norm estimate behind the constructive delta at zero.
    pub norm_resolution: usize,
}

impl Default for ProbeParams {
    fn default() -> Self {
        Self {
            delta0: 1.0,
            ladder_steps: 20,
            radii: vec![0.5, 0.9],
            sphere_resolution: 5,
            norm: NormSpec::Euclidean,
            norm_resolution: 64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeWitness {
    pub z: Point,
    pub delta: f64,
    pub excess: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LadderRow {
    pub delta: f64,
    pub samples: usize,
    pub max_excess: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeResult {
    /// The accepted delta, or `None` when every delta on the ladder failed.
    pub accepted_delta: Option<f64>,
    /// Whether the accepted delta is `eps / ||phi||` at the origin.
    pub constructive: bool,
    /// Worst sample at the smallest tried delta, when the probe failed.
    pub witness: Option<ProbeWitness>,
    pub ladder: Vec<LadderRow>,
}

impl ProbeResult {
    pub fn accepted(&self) -> bool {
        self.accepted_delta.is_some()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Upper,
    Lower,
}

fn directions(phi: &dyn SetMap, params: &ProbeParams) -> Result<Vec<Point>> {
    let cone = phi.cone();
    let mut dirs: Vec<Point> = Vec::new();
    for e in cone.basis() {
        let u = e.scaled(1.0 / params.norm.point_norm(e)?);
        dirs.push(u.clone());
        dirs.push(u.scaled(-1.0));
    }
    for u in cone.unit_sphere_sample(&params.norm, params.sphere_resolution)? {
        dirs.push(u.clone());
        dirs.push(u.scaled(-1.0));
    }
    let mut unique: Vec<Point> = Vec::new();
    for d in dirs {
        if !unique.iter().any(|q| q.max_abs_diff(&d) <= TOL_GEOM) {
            unique.push(d);
        }
    }
    Ok(unique)
}

fn sweep(
    phi: &dyn SetMap,
    x: &Point,
    fx: &CompactSet,
    dirs: &[Point],
    delta: f64,
    side: Side,
    params: &ProbeParams,
) -> Result<(LadderRow, Option<ProbeWitness>)> {
    let mut row = LadderRow { delta, samples: 0, max_excess: 0.0 };
    let mut worst: Option<ProbeWitness> = None;
    for r in &params.radii {
        for d in dirs {
            let z = x.add(&d.scaled(r * delta));
            if !phi.cone().contains(&z) {
                continue;
            }
            let fz = phi.eval(&z)?;
            let excess = match side {
                Side::Upper => directed_excess(&fz, fx, &params.norm)?,
                Side::Lower => directed_excess(fx, &fz, &params.norm)?,
            };
            row.samples += 1;
            if worst.as_ref().is_none_or(|w| excess > w.excess) {
                worst = Some(ProbeWitness { z, delta, excess });
            }
            row.max_excess = row.max_excess.max(excess);
        }
    }
    Ok((row, worst))
}

fn probe(phi: &dyn SetMap, x: &Point, eps: f64, params: &ProbeParams, side: Side) -> Result<ProbeResult> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::InvalidParameter(format!("epsilon must be positive, got {eps}")));
    }
    if params.delta0.is_nan() || params.delta0 <= 0.0 || params.radii.iter().any(|r| !(0.0..1.0).contains(r) || *r == 0.0) {
        return Err(Error::InvalidParameter("need delta0 > 0 and radii in (0, 1)".into()));
    }
    phi.cone().coords(x)?;
    let fx = phi.eval(x)?;
    let dirs = directions(phi, params)?;
    let mut ladder = Vec::new();

    let at_origin = params.norm.point_norm(x)? <= TOL_GEOM;
    if side == Side::Upper && at_origin {
        let m = corr_norm(phi, &params.norm, params.norm_resolution)?.value;
        let delta = if m > 0.0 { eps / m } else { params.delta0 };
        let (row, _) = sweep(phi, x, &fx, &dirs, delta, side, params)?;
        let ok = row.max_excess <= eps;
        ladder.push(row);
        if ok {
            return Ok(ProbeResult { accepted_delta: Some(delta), constructive: true, witness: None, ladder });
        }
    }

    let mut last_witness = None;
    for k in 0..=params.ladder_steps {
        let delta = params.delta0 / 2f64.powi(k as i32);
        let (row, witness) = sweep(phi, x, &fx, &dirs, delta, side, params)?;
        let ok = row.max_excess <= eps;
        ladder.push(row);
        if ok {
            return Ok(ProbeResult { accepted_delta: Some(delta), constructive: false, witness: None, ladder });
        }
        last_witness = witness;
    }
    Ok(ProbeResult { accepted_delta: None, constructive: false, witness: last_witness, ladder })
}

/// Upper semicontinuity probe; at the origin it first tries `delta = eps / ||phi||`.
pub fn usc_probe(phi: &dyn SetMap, x: &Point, eps: f64, params: &ProbeParams) -> Result<ProbeResult> {
    probe(phi, x, eps, params, Side::Upper)
}

/// Lower semicontinuity probe.
pub fn lsc_probe(phi: &dyn SetMap, x: &Point, eps: f64, params: &ProbeParams) -> Result<ProbeResult> {
    probe(phi, x, eps, params, Side::Lower)
}
