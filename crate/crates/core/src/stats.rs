//! Scalar statistics used across the analyses: Shannon entropy, Pearson and
//! Spearman correlation, and simple ordinary least squares.

use crate::error::{Error, Result};
use crate::float::Float;

/// Shannon entropy in nats, with `0 * ln 0 = 0`.
pub fn entropy_nats<F: Float>(probs: &[F]) -> F {
    probs
        .iter()
        .filter(|p| **p > F::zero())
        .map(|&p| -p * p.ln())
        .sum()
}

pub fn mean<F: Float>(xs: &[F]) -> F {
    if xs.is_empty() {
        return F::zero();
    }
    xs.iter().copied().sum::<F>() / F::cast_usize(xs.len())
}

/// Pearson correlation coefficient. Errors on length mismatch, fewer than
/// two points, or zero variance in either input.
pub fn pearson<F: Float>(xs: &[F], ys: &[F]) -> Result<F> {
    if xs.len() != ys.len() {
        return Err(Error::InvalidParameter(format!(
            "correlation inputs differ in length: {} vs {}",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 2 {
        return Err(Error::Degenerate("correlation needs at least 2 points".into()));
    }
    let mx = mean(xs);
    let my = mean(ys);
    let mut sxy = F::zero();
    let mut sxx = F::zero();
    let mut syy = F::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        let dx = x - mx;
        let dy = y - my;
        sxy = sxy + dx * dy;
        sxx = sxx + dx * dx;
        syy = syy + dy * dy;
    }
    if sxx == F::zero() || syy == F::zero() {
        return Err(Error::Degenerate("zero variance in correlation input".into()));
    }
    Ok(sxy / (sxx * syy).sqrt())
}

/// Spearman rank correlation (Pearson over average ranks).
pub fn spearman<F: Float>(xs: &[F], ys: &[F]) -> Result<F> {
    pearson(&ranks(xs), &ranks(ys))
}

fn ranks<F: Float>(xs: &[F]) -> Vec<F> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].partial_cmp(&xs[b]).expect("rankable values"));
    let mut out = vec![F::zero(); xs.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && xs[idx[j + 1]] == xs[idx[i]] {
            j += 1;
        }
        // average rank for ties, 1-based
        let avg = F::cast((i + j) as f64 / 2.0 + 1.0);
        for &k in &idx[i..=j] {
            out[k] = avg;
        }
        i = j + 1;
    }
    out
}

/// A fitted line `y = intercept + slope * x`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct OlsFit<F> {
    pub slope: F,
    pub intercept: F,
}

impl<F: Float> OlsFit<F> {
    pub fn predict(&self, x: F) -> F {
        self.intercept + self.slope * x
    }
}

/// Ordinary least squares of `y` on `x` with an intercept. Errors when
/// fewer than two points are given or all `x` coincide.
pub fn ols<F: Float>(xs: &[F], ys: &[F]) -> Result<OlsFit<F>> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::Degenerate(format!(
            "ols needs >= 2 paired points, got {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    let mx = mean(xs);
    let my = mean(ys);
    let mut sxy = F::zero();
    let mut sxx = F::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        sxy = sxy + (x - mx) * (y - my);
        sxx = sxx + (x - mx) * (x - mx);
    }
    if sxx == F::zero() {
        return Err(Error::Degenerate("all x values coincide in ols".into()));
    }
    let slope = sxy / sxx;
    Ok(OlsFit {
        slope,
        intercept: my - slope * mx,
    })
}

/// Residuals of `ys` against the fitted line.
pub fn residuals<F: Float>(fit: &OlsFit<F>, xs: &[F], ys: &[F]) -> Vec<F> {
    xs.iter().zip(ys).map(|(&x, &y)| y - fit.predict(x)).collect()
}
