//! Per-syllogism probability distributions over the nine responses.

use crate::error::{Error, Result};
use crate::float::Float;
use crate::stats;
use crate::syllogism::{Response, Syllogism};

/// A probability vector over the nine responses for one syllogism, together
/// with the number of underlying observations.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseDistribution<F: Float = f64> {
    pub syllogism: Syllogism,
    /// Probabilities indexed by [`Response::index`]; nonnegative, sum 1.
    pub probs: [F; 9],
    /// Underlying observation count.
    pub n: u32,
}

impl<F: Float> ResponseDistribution<F> {
    /// Normalizes nonnegative weights into a distribution. `n` is the
    /// observation count the weights came from.
    pub fn from_weights(syllogism: Syllogism, weights: [F; 9], n: u32) -> Result<Self> {
        if weights.iter().any(|w| *w < F::zero() || !w.is_finite()) {
            return Err(Error::Degenerate(format!(
                "negative or non-finite response weight for {syllogism}"
            )));
        }
        let total: F = weights.iter().copied().sum();
        if total <= F::zero() {
            return Err(Error::Degenerate(format!("no response mass for {syllogism}")));
        }
        let mut probs = [F::zero(); 9];
        for (p, w) in probs.iter_mut().zip(weights) {
            *p = w / total;
        }
        Ok(ResponseDistribution { syllogism, probs, n })
    }

    pub fn from_counts(syllogism: Syllogism, counts: [u32; 9]) -> Result<Self> {
        let n = counts.iter().sum();
        let mut weights = [F::zero(); 9];
        for (w, c) in weights.iter_mut().zip(counts) {
            *w = F::cast_usize(c as usize);
        }
        Self::from_weights(syllogism, weights, n)
    }

    /// All mass on a single response.
    pub fn point_mass(syllogism: Syllogism, r: Response) -> Self {
        let mut probs = [F::zero(); 9];
        probs[r.index()] = F::one();
        ResponseDistribution {
            syllogism,
            probs,
            n: 1,
        }
    }

    /// Uniform over all nine responses.
    pub fn uniform(syllogism: Syllogism) -> Self {
        let p = F::one() / F::cast(9.0);
        ResponseDistribution {
            syllogism,
            probs: [p; 9],
            n: 9,
        }
    }

    /// Uniform over a given response set.
    pub fn uniform_over(syllogism: Syllogism, responses: impl IntoIterator<Item = Response>) -> Result<Self> {
        let mut weights = [F::zero(); 9];
        let mut k = 0;
        for r in responses {
            weights[r.index()] = F::one();
            k += 1;
        }
        Self::from_weights(syllogism, weights, k)
    }

    pub fn prob(&self, r: Response) -> F {
        self.probs[r.index()]
    }

    /// Total probability of a response set.
    pub fn mass_on<'a>(&self, responses: impl IntoIterator<Item = &'a Response>) -> F {
        responses.into_iter().map(|r| self.prob(*r)).sum()
    }

    /// Shannon entropy in nats over the full nine-way distribution.
    pub fn entropy(&self) -> F {
        stats::entropy_nats(&self.probs)
    }

    /// The eight quantified-response probabilities in canonical order
    /// (NVC excluded, not renormalized).
    pub fn quantified_block(&self) -> [F; 8] {
        let mut out = [F::zero(); 8];
        out.copy_from_slice(&self.probs[..8]);
        out
    }

    /// The response with the greatest probability; ties break in canonical
    /// response order.
    pub fn argmax(&self) -> Response {
        let mut best = Response::Aac;
        let mut best_p = self.probs[0];
        for r in Response::ALL.iter().skip(1) {
            let p = self.prob(*r);
            if p > best_p {
                best = *r;
                best_p = p;
            }
        }
        best
    }

    /// Largest absolute deviation from `other`'s probabilities.
    pub fn max_abs_diff(&self, other: &Self) -> F {
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (*a - *b).abs())
            .fold(F::zero(), F::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn syl(id: &str) -> Syllogism {
        id.parse().unwrap()
    }

    #[test]
    fn weights_normalize_and_sum_to_one() {
        let mut w = [0.0f64; 9];
        w[Response::Iac.index()] = 20.0;
        w[Response::Eac.index()] = 10.0;
        let d = ResponseDistribution::from_weights(syl("II1"), w, 30).unwrap();
        assert_abs_diff_eq!(d.prob(Response::Iac), 2.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(d.prob(Response::Eac), 1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(d.probs.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
        assert_eq!(d.n, 30);
    }

    #[test]
    fn empty_weights_are_rejected() {
        assert!(ResponseDistribution::<f64>::from_weights(syl("AA1"), [0.0; 9], 0).is_err());
    }

    #[test]
    fn point_mass_has_zero_entropy() {
        let d = ResponseDistribution::<f64>::point_mass(syl("AA1"), Response::Nvc);
        assert_eq!(d.entropy(), 0.0);
        assert_eq!(d.argmax(), Response::Nvc);
    }

    #[test]
    fn uniform_entropy_is_ln_nine() {
        let d = ResponseDistribution::<f64>::uniform(syl("AA1"));
        assert_abs_diff_eq!(d.entropy(), 9.0f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn argmax_ties_break_in_canonical_order() {
        let mut w = [0.0f64; 9];
        w[Response::Oca.index()] = 1.0;
        w[Response::Eac.index()] = 1.0;
        let d = ResponseDistribution::from_weights(syl("AA1"), w, 2).unwrap();
        assert_eq!(d.argmax(), Response::Eac);
    }

    #[test]
    fn quantified_block_drops_nvc_mass() {
        let d = ResponseDistribution::<f64>::point_mass(syl("AA1"), Response::Nvc);
        assert_eq!(d.quantified_block(), [0.0; 8]);
        let d = ResponseDistribution::<f64>::point_mass(syl("AA1"), Response::Aac);
        assert_eq!(d.quantified_block()[0], 1.0);
    }

    #[test]
    fn generic_at_f32() {
        let d = ResponseDistribution::<f32>::uniform(syl("EA1"));
        assert!((d.probs.iter().sum::<f32>() - 1.0).abs() < 1e-6);
    }
}
