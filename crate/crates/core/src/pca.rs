//! Principal component analysis by spectral decomposition of the sample
//! covariance matrix.
//!
//! The eigensolver is a cyclic Jacobi iteration: exact enough at the sizes
//! used here (a few hundred dimensions), dependency-free, and deterministic
//! across platforms. Components are returned in decreasing eigenvalue order
//! with a deterministic sign convention (largest-magnitude loading
//! positive).

// Indexed loops mirror the usual statement of the Jacobi rotations.
#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};
use crate::float::Float;

/// A fitted PCA model.
#[derive(Debug, Clone)]
pub struct Pca<F: Float = f64> {
    /// Per-feature mean of the training data.
    pub mean: Vec<F>,
    /// `k` orthonormal component directions, rows of length `dim`.
    pub components: Vec<Vec<F>>,
    /// Eigenvalues (sample variances along each component), decreasing.
    pub explained_variance: Vec<F>,
    /// Eigenvalue over total variance, per component.
    pub explained_variance_ratio: Vec<F>,
    /// Trace of the covariance matrix.
    pub total_variance: F,
}

impl<F: Float> Pca<F> {
    /// Fits a `k`-component PCA to row vectors of equal dimension.
    ///
    /// Requires at least `k + 1` rows; errors on dimension mismatches and on
    /// data with no variance at all.
    pub fn fit(data: &[Vec<F>], k: usize) -> Result<Pca<F>> {
        if k == 0 {
            return Err(Error::InvalidParameter("k must be positive".into()));
        }
        if data.len() < k + 1 {
            return Err(Error::Degenerate(format!(
                "pca with k={k} needs at least {} rows, got {}",
                k + 1,
                data.len()
            )));
        }
        let dim = data[0].len();
        if dim < k {
            return Err(Error::Degenerate(format!(
                "pca with k={k} needs at least {k}-dimensional data, got {dim}"
            )));
        }
        if data.iter().any(|row| row.len() != dim) {
            return Err(Error::InvalidParameter("pca rows differ in dimension".into()));
        }

        let n = data.len();
        let mut mean = vec![F::zero(); dim];
        for row in data {
            for (m, &x) in mean.iter_mut().zip(row) {
                *m = *m + x;
            }
        }
        let inv_n = F::one() / F::cast_usize(n);
        for m in &mut mean {
            *m = *m * inv_n;
        }

        // Sample covariance (denominator n - 1).
        let inv_nm1 = F::one() / F::cast_usize(n - 1);
        let mut cov = vec![vec![F::zero(); dim]; dim];
        let mut centered = vec![F::zero(); dim];
        for row in data {
            for (c, (&x, &m)) in centered.iter_mut().zip(row.iter().zip(&mean)) {
                *c = x - m;
            }
            for i in 0..dim {
                if centered[i] == F::zero() {
                    continue;
                }
                let ci = centered[i];
                let cov_i = &mut cov[i];
                for j in i..dim {
                    cov_i[j] = cov_i[j] + ci * centered[j];
                }
            }
        }
        for i in 0..dim {
            for j in i..dim {
                let v = cov[i][j] * inv_nm1;
                cov[i][j] = v;
                cov[j][i] = v;
            }
        }

        let total_variance: F = (0..dim).map(|i| cov[i][i]).sum();
        if total_variance <= F::zero() {
            return Err(Error::Degenerate("pca input has zero variance".into()));
        }

        let (eigenvalues, vectors) = symmetric_eigen(cov);
        let mut components = Vec::with_capacity(k);
        let mut explained_variance = Vec::with_capacity(k);
        for i in 0..k {
            let mut v = vectors[i].clone();
            orient(&mut v);
            components.push(v);
            explained_variance.push(eigenvalues[i].max(F::zero()));
        }
        let explained_variance_ratio = explained_variance
            .iter()
            .map(|&l| l / total_variance)
            .collect();

        Ok(Pca {
            mean,
            components,
            explained_variance,
            explained_variance_ratio,
            total_variance,
        })
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    /// Coordinates of `v` in the component basis: centered dot products.
    pub fn project(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.dim(), "projection dimension mismatch");
        self.components
            .iter()
            .map(|c| {
                c.iter()
                    .zip(v.iter().zip(&self.mean))
                    .map(|(&ci, (&xi, &mi))| ci * (xi - mi))
                    .sum()
            })
            .collect()
    }

    /// Maps coordinates back into feature space.
    pub fn reconstruct(&self, coords: &[F]) -> Vec<F> {
        assert_eq!(coords.len(), self.n_components());
        let mut out = self.mean.clone();
        for (c, &w) in self.components.iter().zip(coords) {
            for (o, &ci) in out.iter_mut().zip(c) {
                *o = *o + w * ci;
            }
        }
        out
    }

    /// Flips the sign of one component in place.
    pub fn flip_component(&mut self, idx: usize) {
        for x in &mut self.components[idx] {
            *x = -*x;
        }
    }
}

/// Deterministic sign: the largest-magnitude loading is positive.
fn orient<F: Float>(v: &mut [F]) {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    if v[best] < F::zero() {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi
/// rotations. Returns `(eigenvalues, eigenvectors)` sorted by decreasing
/// eigenvalue; eigenvectors are rows.
pub fn symmetric_eigen<F: Float>(mut a: Vec<Vec<F>>) -> (Vec<F>, Vec<Vec<F>>) {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    let mut v = vec![vec![F::zero(); n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = F::one();
    }
    if n == 0 {
        return (Vec::new(), v);
    }

    let frob: F = a
        .iter()
        .flat_map(|row| row.iter())
        .map(|&x| x * x)
        .sum::<F>()
        .sqrt();
    let tol = F::cast(1e-30).max(frob * F::epsilon());

    for _sweep in 0..128 {
        let mut off = F::zero();
        for i in 0..n {
            for j in (i + 1)..n {
                off = off + a[i][j] * a[i][j];
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq.abs() <= tol * F::cast(1e-3) {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (F::cast(2.0) * apq);
                let t = {
                    let sign = if theta >= F::zero() { F::one() } else { -F::one() };
                    sign / (theta.abs() + (theta * theta + F::one()).sqrt())
                };
                let c = F::one() / (t * t + F::one()).sqrt();
                let s = t * c;

                for i in 0..n {
                    let aip = a[i][p];
                    let aiq = a[i][q];
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for i in 0..n {
                    let api = a[p][i];
                    let aqi = a[q][i];
                    a[p][i] = c * api - s * aqi;
                    a[q][i] = s * api + c * aqi;
                }
                for i in 0..n {
                    let vip = v[p][i];
                    let viq = v[q][i];
                    v[p][i] = c * vip - s * viq;
                    v[q][i] = s * vip + c * viq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j][j].partial_cmp(&a[i][i]).expect("finite eigenvalues"));
    let eigenvalues = order.iter().map(|&i| a[i][i]).collect();
    let vectors = order.iter().map(|&i| v[i].clone()).collect();
    (eigenvalues, vectors)
}
