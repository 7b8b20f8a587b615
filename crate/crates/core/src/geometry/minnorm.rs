//! Distance from a point to the convex hull of finitely many points.
//!
//! Euclidean distances use Wolfe's minimum-norm-point algorithm over the
//! translated vertex set; coordinate 1- and inf-norm distances are posed as
//! small linear programs over the convex weights.

use microlp::{ComparisonOp, OptimizationDirection, Problem};
use nalgebra::{DMatrix, DVector};

use crate::{Error, Result};

const MAX_MAJOR: usize = 500;
const MAX_MINOR: usize = 500;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Minimum-norm point of `conv(vertices)` and its convex weights.
///
/// `vertices` must be nonempty and share one dimension.
pub(crate) fn min_norm_point(vertices: &[Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    let k = vertices.len();
    let dim = vertices[0].len();
    if k == 1 {
        return (vertices[0].clone(), vec![1.0]);
    }
    let scale = vertices
        .iter()
        .map(|v| dot(v, v))
        .fold(0.0_f64, f64::max)
        .max(f64::MIN_POSITIVE);

    let start = (0..k)
        .min_by(|&a, &b| dot(&vertices[a], &vertices[a]).total_cmp(&dot(&vertices[b], &vertices[b])))
        .unwrap_or(0);
    let mut corral: Vec<usize> = vec![start];
    let mut weights: Vec<f64> = vec![1.0];
    let mut x = vertices[start].clone();

    for _ in 0..MAX_MAJOR {
        let xx = dot(&x, &x);
        if xx <= 1e-28 * scale {
            break;
        }
        let (j, xv) = (0..k)
            .map(|i| (i, dot(&x, &vertices[i])))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if xx - xv <= 1e-13 * scale || corral.contains(&j) {
            break;
        }
        corral.push(j);
        weights.push(0.0);

        for _ in 0..MAX_MINOR {
            let alpha = affine_min_weights(vertices, &corral);
            if alpha.iter().all(|&a| a > 1e-15) {
                weights = alpha;
                break;
            }
            // Step from the current weights toward alpha until a weight hits zero.
            let mut theta = 1.0_f64;
            let mut hit = None;
            for (i, (&w, &a)) in weights.iter().zip(&alpha).enumerate() {
                if a <= 1e-15 {
                    let denom = w - a;
                    let t = if denom > 0.0 { w / denom } else { 0.0 };
                    if t <= theta {
                        theta = t;
                        hit = Some(i);
                    }
                }
            }
            for (w, a) in weights.iter_mut().zip(&alpha) {
                *w = (1.0 - theta) * *w + theta * a;
            }
            if let Some(h) = hit {
                weights[h] = 0.0;
            }
            let mut i = 0;
            while i < corral.len() {
                if weights[i] <= 1e-15 && corral.len() > 1 {
                    corral.remove(i);
                    weights.remove(i);
                } else {
                    i += 1;
                }
            }
            let total: f64 = weights.iter().sum();
            weights.iter_mut().for_each(|w| *w /= total);
        }

        let mut next = vec![0.0; dim];
        for (&idx, &w) in corral.iter().zip(&weights) {
            for (n, v) in next.iter_mut().zip(&vertices[idx]) {
                *n += w * v;
            }
        }
        if dot(&next, &next) >= xx * (1.0 - 1e-15) {
            x = next;
            break;
        }
        x = next;
    }

    let mut full = vec![0.0; k];
    for (&idx, &w) in corral.iter().zip(&weights) {
        full[idx] = w;
    }
    (x, full)
}

/// Weights (summing to one) of the minimum-norm point of the affine hull of
/// `vertices[corral]`.
fn affine_min_weights(vertices: &[Vec<f64>], corral: &[usize]) -> Vec<f64> {
    let dim = vertices[0].len();
    let base = &vertices[corral[0]];
    let cols = corral.len() - 1;
    if cols == 0 {
        return vec![1.0];
    }
    let d = DMatrix::from_fn(dim, cols, |r, c| vertices[corral[c + 1]][r] - base[r]);
    let rhs = DVector::from_fn(dim, |r, _| -base[r]);
    let svd = d.svd(true, true);
    let beta = svd
        .solve(&rhs, 1e-13 * svd.singular_values.max().max(1.0))
        .unwrap_or_else(|_| DVector::zeros(cols));
    let mut out = Vec::with_capacity(corral.len());
    out.push(1.0 - beta.sum());
    out.extend(beta.iter().copied());
    out
}

/// Euclidean distance from `p` to `conv(vertices)`.
pub(crate) fn euclidean_distance_to_hull(p: &[f64], vertices: &[Vec<f64>]) -> f64 {
    let shifted: Vec<Vec<f64>> = vertices
        .iter()
        .map(|v| v.iter().zip(p).map(|(a, b)| a - b).collect())
        .collect();
    let (x, _) = min_norm_point(&shifted);
    dot(&x, &x).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Polyhedral {
    Coord1,
    CoordInf,
}

/// Distance from `p` to `conv(vertices)` in the coordinate 1- or inf-norm.
pub(crate) fn polyhedral_distance_to_hull(
    p: &[f64],
    vertices: &[Vec<f64>],
    kind: Polyhedral,
) -> Result<f64> {
    let dim = p.len();
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let weights: Vec<_> = vertices.iter().map(|_| lp.add_var(0.0, (0.0, 1.0))).collect();
    let slacks: Vec<_> = match kind {
        Polyhedral::Coord1 => (0..dim).map(|_| lp.add_var(1.0, (0.0, f64::INFINITY))).collect(),
        Polyhedral::CoordInf => {
            let t = lp.add_var(1.0, (0.0, f64::INFINITY));
            vec![t; dim]
        }
    };
    let simplex: Vec<_> = weights.iter().map(|&w| (w, 1.0)).collect();
    lp.add_constraint(simplex.as_slice(), ComparisonOp::Eq, 1.0);
    for d in 0..dim {
        // |sum_i w_i v_i[d] - p[d]| <= t_d
        let mut upper: Vec<_> = weights.iter().zip(vertices).map(|(&w, v)| (w, v[d])).collect();
        upper.push((slacks[d], -1.0));
        lp.add_constraint(upper.as_slice(), ComparisonOp::Le, p[d]);
        let mut lower: Vec<_> = weights.iter().zip(vertices).map(|(&w, v)| (w, -v[d])).collect();
        lower.push((slacks[d], -1.0));
        lp.add_constraint(lower.as_slice(), ComparisonOp::Le, -p[d]);
    }
    let solution = lp
        .solve()
        .map_err(|e| Error::LinearProgram(e.to_string()))?
        .into_solution()
        .map_err(|_| Error::LinearProgram("solve interrupted".into()))?;
    // Re-evaluate the norm at the optimal weights to strip LP slack noise.
    let mut q = vec![0.0; dim];
    for (&w, v) in weights.iter().zip(vertices) {
        let wv = solution.var_value(w).max(0.0);
        for (qd, vd) in q.iter_mut().zip(v) {
            *qd += wv * vd;
        }
    }
    let diff = q.iter().zip(p).map(|(a, b)| (a - b).abs());
    Ok(match kind {
        Polyhedral::Coord1 => diff.sum(),
        Polyhedral::CoordInf => diff.fold(0.0, f64::max),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_inside_triangle_has_zero_distance() {
        let tri = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]];
        assert!(euclidean_distance_to_hull(&[0.25, 0.25], &tri) < 1e-12);
    }

    #[test]
    fn distance_to_segment() {
        let seg = vec![vec![0.0, -1.0], vec![0.0, 1.0]];
        assert!((euclidean_distance_to_hull(&[2.0, 0.0], &seg) - 2.0).abs() < 1e-12);
        assert!((euclidean_distance_to_hull(&[3.0, 5.0], &seg) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn point_on_edge_with_full_step() {
        let others = vec![vec![0.0, 0.0], vec![0.0, 2.0], vec![2.0, 0.0], vec![2.0, 1.0], vec![2.0, 2.0]];
        assert!(euclidean_distance_to_hull(&[1.0, 2.0], &others) < 1e-12);
    }

    #[test]
    fn min_norm_weights_are_convex() {
        let pts = vec![vec![1.0, 1.0, 1.0], vec![2.0, -1.0, 0.5], vec![1.5, 0.2, -1.0], vec![3.0, 3.0, 3.0]];
        let (x, w) = min_norm_point(&pts);
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(w.iter().all(|&v| v >= 0.0));
        let recon: Vec<f64> = (0..3).map(|d| pts.iter().zip(&w).map(|(p, wi)| p[d] * wi).sum()).collect();
        for (a, b) in x.iter().zip(recon) {
            assert!((a - b).abs() < 1e-12);
        }
        // Optimality: <x, v - x> >= 0 for every vertex.
        let xx = dot(&x, &x);
        for p in &pts {
            assert!(dot(&x, p) - xx >= -1e-12);
        }
    }

    #[test]
    fn lp_distances_match_closed_forms() {
        let seg = vec![vec![0.0, -1.0], vec![0.0, 1.0]];
        let d1 = polyhedral_distance_to_hull(&[2.0, 3.0], &seg, Polyhedral::Coord1).unwrap();
        let dinf = polyhedral_distance_to_hull(&[2.0, 3.0], &seg, Polyhedral::CoordInf).unwrap();
        assert!((d1 - 4.0).abs() < 1e-9);
        assert!((dinf - 2.0).abs() < 1e-9);
    }
}
