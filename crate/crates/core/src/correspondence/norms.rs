//! Suprema over the unit sphere of the domain cone.

use serde::{Deserialize, Serialize};

use crate::geometry::{set_norm, NormSpec};
use crate::simplex::{sup_over_simplex, SupEstimate};
use crate::{Error, Result};

use super::{hat_extension, multimatrix, multimatrix_h1_to_identity, SetMap, SublinearCorrespondence};

/// Values above this are treated as an unbounded rule.
const OVERFLOW_GUARD: f64 = 1e150;

/// `||phi|| = sup { ||phi(x)|| : x in C, ||x|| = 1 }`, where `||A||` is the
/// largest norm of a point of `A`.
pub fn corr_norm(phi: &dyn SetMap, norm: &NormSpec, resolution: usize) -> Result<SupEstimate> {
    let cone = phi.cone();
    let est = sup_over_simplex(cone.rank(), resolution, |w| {
        let x = cone.combine(w);
        let value = set_norm(&phi.eval_generators(&x)?, norm)? / norm.point_norm(&x)?;
        if !value.is_finite() || value > OVERFLOW_GUARD {
            return Err(Error::Unbounded(value));
        }
        Ok(value)
    })?;
    Ok(est)
}

/// `sup { h(phi(x), {x}) : x in C, ||x|| = 1 }`.
///
/// Against a singleton the Hausdorff distance is the largest distance from a
/// point of `phi(x)` to `x`.
pub fn dist_to_identity(phi: &dyn SetMap, norm: &NormSpec, resolution: usize) -> Result<SupEstimate> {
    if !phi.is_endomorphism() {
        return Err(Error::NotEndomorphism);
    }
    let cone = phi.cone();
    sup_over_simplex(cone.rank(), resolution, |w| {
        let x = cone.combine(w);
        let value = phi.eval_generators(&x)?;
        let mut worst = 0.0_f64;
        for p in value.points() {
            worst = worst.max(norm.distance(p, &x)?);
        }
        Ok(worst / norm.point_norm(&x)?)
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Corollary1 {
    /// `h_1(M_hat, {I})`.
    pub lhs: f64,
    /// `sup h(phi(x), {x})` over the unit sphere.
    pub rhs: f64,
    pub tol: f64,
    pub holds: bool,
}

/// Compares `h_1(M_{phi_hat}, {I})` with `sup { h(phi(x), {x}) : ||x|| = 1 }`;
/// the first must dominate up to `tol`.
pub fn corollary1_check(
    phi: &SublinearCorrespondence,
    norm: &NormSpec,
    resolution: usize,
    tol: f64,
) -> Result<Corollary1> {
    if !phi.is_endomorphism() {
        return Err(Error::NotEndomorphism);
    }
    let hat = hat_extension(phi)?;
    let m = multimatrix(&hat)?;
    let lhs = multimatrix_h1_to_identity(&m, phi.cone(), norm, resolution)?.value;
    let rhs = dist_to_identity(phi, norm, resolution)?.value;
    Ok(Corollary1 { lhs, rhs, tol, holds: lhs >= rhs - tol })
}
