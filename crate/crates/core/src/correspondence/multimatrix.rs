//! Multimatrices `M = M_1 x ... x M_n` with `M_j ⊆ R^n`.
//!
//! For a linear endomorphism `phi` the multimatrix is
//! `M_phi = l(phi(e_1)) x ... x l(phi(e_n))`, and
//! `phi(x) = { l^-1 A l(x) : A in M_phi }` for nonzero `x`. A selection
//! matrix takes its column `j` from `M_j`.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cone::Cone;
use crate::geometry::{matrix_cone_norm, CompactSet, NormSpec, Point};
use crate::{Error, Result, TOL_GEOM};

use super::{LinearCorrespondence, SetMap};

/// Cap on the number of enumerated selection matrices.
pub const MAX_SELECTIONS: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Multimatrix {
    coord_sets: Vec<CompactSet>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelectionMatrix {
    /// Row-major `n x n` entries.
    pub entries: Vec<Vec<f64>>,
    /// Index of the chosen point of each coordinate set.
    pub provenance: Vec<usize>,
}

impl SelectionMatrix {
    pub fn matrix(&self) -> DMatrix<f64> {
        let n = self.entries.len();
        DMatrix::from_fn(n, n, |r, c| self.entries[r][c])
    }

    fn from_matrix(m: &DMatrix<f64>, provenance: Vec<usize>) -> Self {
        let entries = (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect()).collect();
        Self { entries, provenance }
    }
}

impl Multimatrix {
    pub fn new(coord_sets: Vec<CompactSet>) -> Result<Self> {
        let n = coord_sets.len();
        if n == 0 {
            return Err(Error::EmptySet);
        }
        for s in &coord_sets {
            if s.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, got: s.dim() });
            }
        }
        Ok(Self { coord_sets })
    }

    pub fn coord_sets(&self) -> &[CompactSet] {
        &self.coord_sets
    }

    pub fn rank(&self) -> usize {
        self.coord_sets.len()
    }

    pub fn selection_count(&self) -> u128 {
        self.coord_sets.iter().map(|s| s.len() as u128).product()
    }

    /// The multimatrix with every coordinate set replaced by its hull.
    pub fn to_convex(&self) -> Result<Self> {
        Ok(Self {
            coord_sets: self.coord_sets.iter().map(|s| s.to_convex()).collect::<Result<_>>()?,
        })
    }

    fn check_cap(&self) -> Result<()> {
        let count = self.selection_count();
        if count > MAX_SELECTIONS {
            return Err(Error::EnumerationCap(count));
        }
        Ok(())
    }

    /// Calls `f` on every selection built from stored points, in
    /// mixed-radix order with the first column varying slowest.
    pub fn for_each_selection<F>(&self, mut f: F) -> Result<()>
    where
        F: FnMut(&DMatrix<f64>, &[usize]) -> Result<()>,
    {
        self.check_cap()?;
        let n = self.rank();
        let mut idx = vec![0usize; n];
        let mut m = DMatrix::zeros(n, n);
        loop {
            for (j, &k) in idx.iter().enumerate() {
                let col = self.coord_sets[j].points()[k].coords();
                for r in 0..n {
                    m[(r, j)] = col[r];
                }
            }
            f(&m, &idx)?;
            let mut j = n;
            loop {
                if j == 0 {
                    return Ok(());
                }
                j -= 1;
                idx[j] += 1;
                if idx[j] < self.coord_sets[j].len() {
                    break;
                }
                idx[j] = 0;
            }
        }
    }

    pub fn vertex_selections(&self) -> Result<Vec<SelectionMatrix>> {
        let mut out = Vec::new();
        self.for_each_selection(|m, idx| {
            out.push(SelectionMatrix::from_matrix(m, idx.to_vec()));
            Ok(())
        })?;
        Ok(out)
    }

    /// Whether column `j` of `a` lies in `coord_sets[j]` within tolerance.
    pub fn contains(&self, a: &DMatrix<f64>) -> Result<bool> {
        let n = self.rank();
        for j in 0..n {
            let col = Point::new(a.column(j).iter().copied().collect())?;
            let d = crate::geometry::distance_point_to_set(
                &col,
                &self.coord_sets[j],
                &NormSpec::Euclidean,
            )?;
            if d > TOL_GEOM {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `M_phi = l(phi(e_1)) x ... x l(phi(e_n))`.
pub fn multimatrix(phi: &LinearCorrespondence) -> Result<Multimatrix> {
    if !phi.is_endomorphism() {
        return Err(Error::NotEndomorphism);
    }
    let cone = phi.cone();
    let sets = phi
        .basis_images()
        .iter()
        .map(|img| {
            let pts = img
                .points()
                .iter()
                .map(|p| Point::new(cone.coords(p)?.0))
                .collect::<Result<Vec<_>>>()?;
            CompactSet::new(pts, img.is_convex())
        })
        .collect::<Result<Vec<_>>>()?;
    Multimatrix::new(sets)
}

/// `{ l^-1 A l(x) : A a stored-point selection of M }`, hulled when `convex`.
/// Returns `{0}` at `x = 0`.
pub fn eval_via_multimatrix(m: &Multimatrix, cone: &Cone, x: &Point, convex: bool) -> Result<CompactSet> {
    if m.rank() != cone.rank() {
        return Err(Error::DimensionMismatch { expected: cone.rank(), got: m.rank() });
    }
    let w = DVector::from_vec(cone.coords(x)?.0);
    if w.iter().all(|v| *v == 0.0) {
        return Ok(CompactSet::origin(cone.dim()));
    }
    let mut points = Vec::new();
    m.for_each_selection(|a, _| {
        points.push(cone.combine((a * &w).as_slice()));
        Ok(())
    })?;
    CompactSet::new(points, convex)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct H1Estimate {
    pub value: f64,
    pub grid_gap: f64,
    /// A selection attaining `value`.
    pub selection: SelectionMatrix,
}

/// `h_1(M, {I}) = sup_{A in M} ||A - I||` in the cone-induced matrix norm.
///
/// `||A - I||` is convex in `A` and `M` is a product of convex sets, so the
/// supremum is attained at a vertex selection; non-convex coordinate sets
/// are hulled first.
pub fn multimatrix_h1_to_identity(
    m: &Multimatrix,
    cone: &Cone,
    ambient: &NormSpec,
    resolution: usize,
) -> Result<H1Estimate> {
    if m.rank() != cone.rank() {
        return Err(Error::DimensionMismatch { expected: cone.rank(), got: m.rank() });
    }
    let hull = m.to_convex()?;
    let n = m.rank();
    let identity = DMatrix::<f64>::identity(n, n);
    let mut best: Option<H1Estimate> = None;
    hull.for_each_selection(|a, idx| {
        let est = matrix_cone_norm(&(a - &identity), cone, ambient, resolution)?;
        if best.as_ref().is_none_or(|b| est.value > b.value) {
            best = Some(H1Estimate {
                value: est.value,
                grid_gap: est.grid_gap,
                selection: SelectionMatrix::from_matrix(a, idx.to_vec()),
            });
        }
        Ok(())
    })?;
    Ok(best.expect("multimatrix has at least one selection"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum CertStatus {
    /// `||A - I||_2 < 1`, so `A` is invertible by a Neumann series.
    Certified,
    /// Not certified but numerically nonsingular.
    InvertibleAtSample,
    Singular,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateEntry {
    /// `true` for vertex selections, `false` for sampled interior matrices.
    pub vertex: bool,
    pub selection: SelectionMatrix,
    pub determinant: f64,
    /// `sigma_max / sigma_min` (infinite when singular).
    pub condition: f64,
    /// Spectral norm of `A - I`.
    pub deviation: f64,
    pub status: CertStatus,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvertibilityReport {
    pub entries: Vec<CertificateEntry>,
}

impl InvertibilityReport {
    pub fn all_vertices_certified(&self) -> bool {
        self.entries.iter().filter(|e| e.vertex).all(|e| e.status == CertStatus::Certified)
    }

    pub fn any_singular(&self) -> bool {
        self.entries.iter().any(|e| e.status == CertStatus::Singular)
    }

    pub fn first_singular(&self) -> Option<&CertificateEntry> {
        self.entries.iter().find(|e| e.status == CertStatus::Singular)
    }
}

fn certify(a: &DMatrix<f64>, vertex: bool, provenance: Vec<usize>) -> CertificateEntry {
    let n = a.nrows();
    let svd = a.clone().svd(false, false);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    let deviation = (a - DMatrix::<f64>::identity(n, n)).svd(false, false).singular_values.max();
    let status = if deviation < 1.0 {
        CertStatus::Certified
    } else if smin > TOL_GEOM * smax.max(1.0) {
        CertStatus::InvertibleAtSample
    } else {
        CertStatus::Singular
    };
    CertificateEntry {
        vertex,
        selection: SelectionMatrix::from_matrix(a, provenance),
        determinant: a.determinant(),
        condition,
        deviation,
        status,
    }
}

/// Per-matrix invertibility certificates for every vertex selection of the
/// hulled multimatrix, its centroid selection and `interior_samples` random
/// convex combinations.
pub fn invertibility_certificate(
    m: &Multimatrix,
    cone: &Cone,
    interior_samples: usize,
    seed: u64,
) -> Result<InvertibilityReport> {
    if m.rank() != cone.rank() {
        return Err(Error::DimensionMismatch { expected: cone.rank(), got: m.rank() });
    }
    let hull = m.to_convex()?;
    let mut entries = Vec::new();
    hull.for_each_selection(|a, idx| {
        entries.push(certify(a, true, idx.to_vec()));
        Ok(())
    })?;

    let n = m.rank();
    let column_mix = |weights: &dyn Fn(usize, usize) -> Vec<f64>| {
        let mut a = DMatrix::zeros(n, n);
        for (j, set) in hull.coord_sets.iter().enumerate() {
            let w = weights(j, set.len());
            for (p, wk) in set.points().iter().zip(&w) {
                for r in 0..n {
                    a[(r, j)] += wk * p.coords()[r];
                }
            }
        }
        a
    };
    let centroid = column_mix(&|_, k| vec![1.0 / k as f64; k]);
    entries.push(certify(&centroid, false, Vec::new()));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..interior_samples {
        let draws: Vec<Vec<f64>> = hull
            .coord_sets
            .iter()
            .map(|s| {
                let raw: Vec<f64> =
                    (0..s.len()).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
                let total: f64 = raw.iter().sum();
                raw.iter().map(|v| v / total).collect()
            })
            .collect();
        let a = column_mix(&|j, _| draws[j].clone());
        entries.push(certify(&a, false, Vec::new()));
    }
    Ok(InvertibilityReport { entries })
}
