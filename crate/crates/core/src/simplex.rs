//! Deterministic suprema over the weight simplex `{w >= 0, sum w = 1}`.
//!
//! Every "sup over the unit sphere of a cone" in this crate is reduced to a
//! sup over simplex weights by positive homogeneity, then computed by a grid
//! sweep followed by one local refinement pass.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Number of times the refinement pass halves its step around the maximizer.
pub const REFINE_HALVINGS: usize = 20;
const MAX_GRID_POINTS: u128 = 5_000_000;
const CLIMB_STEPS_PER_LEVEL: usize = 8;

/// Result of a grid-plus-refinement supremum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupEstimate {
    /// Refined maximum.
    pub value: f64,
    /// Maximum over the grid alone.
    pub grid_value: f64,
    /// Improvement found by refinement; used as the grid gap estimate.
    pub grid_gap: f64,
    /// Simplex weights of the maximizer.
    pub argmax: Vec<f64>,
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of grid points with `resolution` points per simplex edge.
pub(crate) fn grid_size(n: usize, resolution: usize) -> u128 {
    let steps = (resolution - 1) as u128;
    binomial(steps + n as u128 - 1, n as u128 - 1)
}

/// All weight vectors `k / (resolution - 1)` with integer `k` summing to `resolution - 1`,
/// in lexicographic order of `k`.
pub(crate) fn simplex_grid(n: usize, resolution: usize) -> Result<Vec<Vec<f64>>> {
    if resolution < 2 {
        return Err(Error::Resolution(resolution));
    }
    if n == 0 {
        return Err(Error::EmptyBasis);
    }
    let size = grid_size(n, resolution);
    if size > MAX_GRID_POINTS {
        return Err(Error::GridTooLarge(size));
    }
    let steps = resolution - 1;
    let mut out = Vec::with_capacity(size as usize);
    let mut counts = vec![0usize; n];
    fill(&mut counts, 0, steps, steps, &mut out);
    Ok(out)
}

fn fill(counts: &mut [usize], idx: usize, remaining: usize, steps: usize, out: &mut Vec<Vec<f64>>) {
    let n = counts.len();
    if idx == n - 1 {
        counts[idx] = remaining;
        out.push(counts.iter().map(|&c| c as f64 / steps as f64).collect());
        return;
    }
    for c in (0..=remaining).rev() {
        counts[idx] = c;
        fill(counts, idx + 1, remaining - c, steps, out);
    }
}

/// Supremum of `f` over the weight simplex of dimension `n`.
///
/// The grid sweep runs in parallel; ties resolve to the earliest grid point so
/// the result does not depend on scheduling.
pub(crate) fn sup_over_simplex<F>(n: usize, resolution: usize, f: F) -> Result<SupEstimate>
where
    F: Fn(&[f64]) -> Result<f64> + Sync,
{
    let grid = simplex_grid(n, resolution)?;
    let values: Vec<f64> = grid.par_iter().map(|w| f(w)).collect::<Result<Vec<_>>>()?;
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] || values[best].is_nan() {
            best = i;
        }
    }
    let grid_value = values[best];
    let mut argmax = grid[best].clone();
    let mut value = grid_value;

    if n > 1 {
        let mut step = 1.0 / (resolution - 1) as f64;
        for _ in 0..REFINE_HALVINGS {
            step *= 0.5;
            for _ in 0..CLIMB_STEPS_PER_LEVEL {
                let mut improved = false;
                let mut cand_best = (value, None::<Vec<f64>>);
                for i in 0..n {
                    for j in 0..n {
                        if i == j || argmax[j] <= 0.0 {
                            continue;
                        }
                        let shift = step.min(argmax[j]);
                        let mut w = argmax.clone();
                        w[i] += shift;
                        w[j] -= shift;
                        let v = f(&w)?;
                        if v > cand_best.0 {
                            cand_best = (v, Some(w));
                        }
                    }
                }
                if let (v, Some(w)) = cand_best {
                    value = v;
                    argmax = w;
                    improved = true;
                }
                if !improved {
                    break;
                }
            }
        }
    }

    Ok(SupEstimate { value, grid_value, grid_gap: value - grid_value, argmax })
}
