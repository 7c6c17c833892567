//! Comparative statistics over reasoner profiles: accuracy against the
//! oracle, chance baselines, inter-reasoner correlation, the variable
//! ordering effect, entropy/accuracy residuals, and NVC rates.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::dist::ResponseDistribution;
use crate::error::{Error, Result};
use crate::mental::Reasoner;
use crate::oracle::OracleTable;
use crate::stats::{self, OlsFit};
use crate::syllogism::{enumerate_syllogisms, Direction, Figure, Response, Syllogism};

/// A labeled reasoner: one response distribution per covered syllogism.
#[derive(Debug, Clone, PartialEq)]
pub struct ReasonerProfile {
    pub label: String,
    pub distributions: BTreeMap<Syllogism, ResponseDistribution>,
}

impl ReasonerProfile {
    pub fn new(label: impl Into<String>) -> ReasonerProfile {
        ReasonerProfile {
            label: label.into(),
            distributions: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, dist: ResponseDistribution) {
        self.distributions.insert(dist.syllogism, dist);
    }

    pub fn get(&self, s: &Syllogism) -> Option<&ResponseDistribution> {
        self.distributions.get(s)
    }

    pub fn len(&self) -> usize {
        self.distributions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distributions.is_empty()
    }

    /// The logically correct reasoner that answers uniformly at random
    /// among the valid responses of each syllogism.
    pub fn oracle_uniform(oracle: &OracleTable) -> ReasonerProfile {
        let mut profile = ReasonerProfile::new("oracle-uniform");
        for s in enumerate_syllogisms() {
            profile.insert(
                ResponseDistribution::uniform_over(s, oracle.valid(&s).iter().copied())
                    .expect("valid sets are nonempty"),
            );
        }
        profile
    }

    /// Uniform guessing over all nine responses.
    pub fn uniform_nine() -> ReasonerProfile {
        let mut profile = ReasonerProfile::new("uniform-9");
        for s in enumerate_syllogisms() {
            profile.insert(ResponseDistribution::uniform(s));
        }
        profile
    }

    /// Simulates a mental-models reasoner over all 64 syllogisms.
    pub fn simulated(label: impl Into<String>, reasoner: &Reasoner, n_runs: u32, seed: u64) -> ReasonerProfile {
        let mut profile = ReasonerProfile::new(label);
        for (idx, s) in enumerate_syllogisms().into_iter().enumerate() {
            let item_seed = crate::seeding::derive_seed(seed, &[idx as u64]);
            profile.insert(reasoner.response_distribution(&s, n_runs, item_seed));
        }
        profile
    }
}

/// Which syllogisms an analysis runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    /// The 27 syllogisms with quantified valid conclusions.
    Valid27,
    /// The 37 whose only valid response is NVC.
    Nvc37,
    All64,
}

impl Scope {
    pub fn syllogisms(self, oracle: &OracleTable) -> Vec<Syllogism> {
        match self {
            Scope::Valid27 => oracle.valid_syllogisms(),
            Scope::Nvc37 => oracle.nvc_syllogisms(),
            Scope::All64 => enumerate_syllogisms(),
        }
    }
}

/// Per-syllogism and mean probability of answering with a valid response.
#[derive(Debug, Clone, Serialize)]
pub struct AccuracyReport {
    pub scope: Scope,
    pub per_syllogism: BTreeMap<Syllogism, f64>,
    /// Unweighted mean over covered syllogisms.
    pub mean: f64,
    /// Scope syllogisms the profile does not cover.
    pub missing: Vec<Syllogism>,
}

/// Probability mass each syllogism's distribution places on its oracle-valid
/// responses (for the NVC-only syllogisms that valid response is NVC).
pub fn accuracy(profile: &ReasonerProfile, oracle: &OracleTable, scope: Scope) -> AccuracyReport {
    let mut per_syllogism = BTreeMap::new();
    let mut missing = Vec::new();
    for s in scope.syllogisms(oracle) {
        match profile.get(&s) {
            Some(dist) => {
                per_syllogism.insert(s, dist.mass_on(oracle.valid(&s)));
            }
            None => missing.push(s),
        }
    }
    let mean = if per_syllogism.is_empty() {
        f64::NAN
    } else {
        per_syllogism.values().sum::<f64>() / per_syllogism.len() as f64
    };
    AccuracyReport {
        scope,
        per_syllogism,
        mean,
        missing,
    }
}

/// Chance accuracy per syllogism: |valid responses| / 9.
pub fn random_baseline(oracle: &OracleTable) -> BTreeMap<Syllogism, f64> {
    enumerate_syllogisms()
        .into_iter()
        .map(|s| {
            let k = oracle.valid(&s).len() as f64;
            (s, k / 9.0)
        })
        .collect()
}

/// Correlation between two profiles' response probabilities.
#[derive(Debug, Clone, Serialize)]
pub struct CorrelationReport {
    pub overall: f64,
    /// Pearson r over each syllogism's nine entries; `None` where a side
    /// has zero variance.
    pub per_syllogism: BTreeMap<Syllogism, Option<f64>>,
    pub n_entries: usize,
}

/// Pearson correlation over the concatenated nine-way probability vectors
/// of the syllogisms both profiles cover within `scope`.
pub fn correlate(
    a: &ReasonerProfile,
    b: &ReasonerProfile,
    oracle: &OracleTable,
    scope: Scope,
) -> Result<CorrelationReport> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut per_syllogism = BTreeMap::new();
    for s in scope.syllogisms(oracle) {
        let (Some(da), Some(db)) = (a.get(&s), b.get(&s)) else {
            continue;
        };
        xs.extend_from_slice(&da.probs);
        ys.extend_from_slice(&db.probs);
        per_syllogism.insert(s, stats::pearson(&da.probs, &db.probs).ok());
    }
    if per_syllogism.len() < 2 {
        return Err(Error::MissingData(
            "correlation needs at least two syllogisms covered by both profiles".into(),
        ));
    }
    Ok(CorrelationReport {
        overall: stats::pearson(&xs, &ys)?,
        n_entries: xs.len(),
        per_syllogism,
    })
}

/// Marginal direction preferences among one figure's pooled responses.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OrderingEffect {
    /// Pooled probability of A-C ordered conclusions.
    pub p_ac: f64,
    /// Pooled probability of C-A ordered conclusions.
    pub p_ca: f64,
    /// |p_ac - p_ca|.
    pub magnitude: f64,
}

/// Pools response counts across each figure's syllogisms, normalizes, and
/// marginalizes conclusion direction (NVC mass stays out of both sides).
pub fn ordering_effect(profile: &ReasonerProfile) -> BTreeMap<Figure, OrderingEffect> {
    let mut pooled: BTreeMap<Figure, [f64; 9]> = BTreeMap::new();
    let mut totals: BTreeMap<Figure, f64> = BTreeMap::new();
    for (s, dist) in &profile.distributions {
        let weights = pooled.entry(s.figure).or_insert([0.0; 9]);
        let n = dist.n.max(1) as f64;
        for (w, p) in weights.iter_mut().zip(&dist.probs) {
            *w += p * n;
        }
        *totals.entry(s.figure).or_insert(0.0) += n;
    }
    pooled
        .into_iter()
        .map(|(figure, weights)| {
            let total = totals[&figure];
            let mass = |dir: Direction| -> f64 {
                Response::QUANTIFIED
                    .iter()
                    .filter(|r| r.parts().unwrap().1 == dir)
                    .map(|r| weights[r.index()] / total)
                    .sum()
            };
            let p_ac = mass(Direction::Ac);
            let p_ca = mass(Direction::Ca);
            (
                figure,
                OrderingEffect {
                    p_ac,
                    p_ca,
                    magnitude: (p_ac - p_ca).abs(),
                },
            )
        })
        .collect()
}

/// One syllogism's point in the accuracy-versus-entropy plane.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FallacyRow {
    pub syllogism: Syllogism,
    pub accuracy: f64,
    pub entropy: f64,
    /// Distance above the fitted accuracy-on-entropy line; confident
    /// fallacies sit far below zero.
    pub residual: f64,
}

/// Residuals of accuracy regressed on response entropy over the valid-27.
#[derive(Debug, Clone, Serialize)]
pub struct FallacyReport {
    pub fit: OlsFit<f64>,
    /// Rows in enumeration order.
    pub rows: Vec<FallacyRow>,
    /// Syllogisms ranked by ascending residual; the leading entries are
    /// the candidate fallacies.
    pub ranked: Vec<Syllogism>,
}

/// Fits accuracy ~ entropy over the profile's valid-27 coverage and
/// reports per-syllogism residuals.
pub fn fallacy_residuals(profile: &ReasonerProfile, oracle: &OracleTable) -> Result<FallacyReport> {
    let mut rows: Vec<FallacyRow> = Vec::new();
    for s in oracle.valid_syllogisms() {
        let Some(dist) = profile.get(&s) else { continue };
        rows.push(FallacyRow {
            syllogism: s,
            accuracy: dist.mass_on(oracle.valid(&s)),
            entropy: dist.entropy(),
            residual: 0.0,
        });
    }
    if rows.len() < 3 {
        return Err(Error::MissingData(format!(
            "residual analysis needs >= 3 valid syllogisms, profile {} covers {}",
            profile.label,
            rows.len()
        )));
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.entropy).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.accuracy).collect();
    let fit = stats::ols(&xs, &ys)?;
    for (row, res) in rows.iter_mut().zip(stats::residuals(&fit, &xs, &ys)) {
        row.residual = res;
    }
    let mut ranked: Vec<(Syllogism, f64)> = rows.iter().map(|r| (r.syllogism, r.residual)).collect();
    ranked.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("finite residuals"));
    Ok(FallacyReport {
        fit,
        rows,
        ranked: ranked.into_iter().map(|(s, _)| s).collect(),
    })
}

/// Pearson correlation between two profiles' fallacy residuals over their
/// shared syllogisms.
pub fn residual_correlation(a: &FallacyReport, b: &FallacyReport) -> Result<f64> {
    let b_by_syll: BTreeMap<Syllogism, f64> = b.rows.iter().map(|r| (r.syllogism, r.residual)).collect();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for row in &a.rows {
        if let Some(&res) = b_by_syll.get(&row.syllogism) {
            xs.push(row.residual);
            ys.push(res);
        }
    }
    stats::pearson(&xs, &ys)
}

/// Mean NVC probability within each scope.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct NvcRates {
    /// Over the 37 syllogisms where NVC is the correct answer.
    pub on_nvc37: f64,
    /// Over the 27 where it is not.
    pub on_valid27: f64,
}

pub fn nvc_rate(profile: &ReasonerProfile, oracle: &OracleTable) -> NvcRates {
    let mean_nvc = |syllogisms: Vec<Syllogism>| -> f64 {
        let probs: Vec<f64> = syllogisms
            .iter()
            .filter_map(|s| profile.get(s))
            .map(|d| d.prob(Response::Nvc))
            .collect();
        if probs.is_empty() {
            f64::NAN
        } else {
            probs.iter().sum::<f64>() / probs.len() as f64
        }
    };
    NvcRates {
        on_nvc37: mean_nvc(oracle.nvc_syllogisms()),
        on_valid27: mean_nvc(oracle.valid_syllogisms()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn oracle() -> OracleTable {
        OracleTable::default()
    }

    fn syl(id: &str) -> Syllogism {
        id.parse().unwrap()
    }

    #[test]
    fn oracle_uniform_is_perfect_on_valid27() {
        let oracle = oracle();
        let profile = ReasonerProfile::oracle_uniform(&oracle);
        let report = accuracy(&profile, &oracle, Scope::Valid27);
        assert_eq!(report.per_syllogism.len(), 27);
        assert_abs_diff_eq!(report.mean, 1.0, epsilon = 1e-12);
        assert!(report.missing.is_empty());
        // ...and on the NVC-37 too, since it answers NVC there.
        let report = accuracy(&profile, &oracle, Scope::Nvc37);
        assert_abs_diff_eq!(report.mean, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn uniform_nine_matches_the_random_baseline_everywhere() {
        let oracle = oracle();
        let profile = ReasonerProfile::uniform_nine();
        let baseline = random_baseline(&oracle);
        let report = accuracy(&profile, &oracle, Scope::All64);
        for (s, acc) in &report.per_syllogism {
            assert_abs_diff_eq!(*acc, baseline[s], epsilon = 1e-12);
        }
        // Two valid conclusions -> 2/9.
        assert_abs_diff_eq!(report.per_syllogism[&syl("AA4")], 2.0 / 9.0, epsilon = 1e-12);
        assert_abs_diff_eq!(baseline[&syl("EA1")], 1.0 / 9.0, epsilon = 1e-12);
        assert_abs_diff_eq!(baseline[&syl("II1")], 1.0 / 9.0, epsilon = 1e-12);
        assert_abs_diff_eq!(baseline[&syl("AE1")], 4.0 / 9.0, epsilon = 1e-12);
    }

    #[test]
    fn missing_syllogisms_are_reported_not_averaged() {
        let oracle = oracle();
        let mut profile = ReasonerProfile::new("partial");
        profile.insert(ResponseDistribution::point_mass(syl("EA1"), Response::Oca));
        let report = accuracy(&profile, &oracle, Scope::Valid27);
        assert_eq!(report.per_syllogism.len(), 1);
        assert_eq!(report.missing.len(), 26);
        assert_abs_diff_eq!(report.mean, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn self_correlation_is_one() {
        let oracle = oracle();
        let profile = ReasonerProfile::oracle_uniform(&oracle);
        let report = correlate(&profile, &profile, &oracle, Scope::All64).unwrap();
        assert_abs_diff_eq!(report.overall, 1.0, epsilon = 1e-12);
        assert_eq!(report.n_entries, 64 * 9);
    }

    #[test]
    fn independent_noise_decorrelates() {
        use rand::Rng;
        let oracle = oracle();
        let noisy = |label: &str, seed: u64| {
            let mut rng = crate::seeding::rng_for(seed, &[]);
            let mut p = ReasonerProfile::new(label);
            for s in enumerate_syllogisms() {
                let mut w = [0.0f64; 9];
                for x in &mut w {
                    *x = rng.random::<f64>();
                }
                p.insert(ResponseDistribution::from_weights(s, w, 1).unwrap());
            }
            p
        };
        // Sampling noise over 576 entries has sd ~ 0.04; individual pairs
        // stay within ~3.5 sd and the average is an order smaller.
        let mut rs = Vec::new();
        for seed in 0..8u64 {
            let a = noisy("a", 2 * seed);
            let b = noisy("b", 2 * seed + 1);
            let r = correlate(&a, &b, &oracle, Scope::All64).unwrap().overall;
            assert!(r.abs() < 0.15, "seed {seed}: r {r}");
            rs.push(r);
        }
        let mean = rs.iter().sum::<f64>() / rs.len() as f64;
        assert!(mean.abs() < 0.05, "mean r {mean}");
    }

    #[test]
    fn correlation_requires_overlap() {
        let oracle = oracle();
        let mut a = ReasonerProfile::new("a");
        a.insert(ResponseDistribution::point_mass(syl("AA1"), Response::Aac));
        let b = ReasonerProfile::oracle_uniform(&oracle);
        assert!(correlate(&a, &b, &oracle, Scope::All64).is_err());
    }

    #[test]
    fn direction_symmetric_profile_has_zero_ordering_magnitude() {
        let mut profile = ReasonerProfile::new("symmetric");
        for s in enumerate_syllogisms() {
            let mut w = [0.0f64; 9];
            w[Response::Iac.index()] = 1.0;
            w[Response::Ica.index()] = 1.0;
            profile.insert(ResponseDistribution::from_weights(s, w, 2).unwrap());
        }
        for (_, effect) in ordering_effect(&profile) {
            assert_abs_diff_eq!(effect.magnitude, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn all_iac_profile_has_full_figure_one_magnitude() {
        let mut profile = ReasonerProfile::new("ac-biased");
        for s in enumerate_syllogisms() {
            profile.insert(ResponseDistribution::point_mass(s, Response::Iac));
        }
        let effects = ordering_effect(&profile);
        let fig1 = effects[&Figure::One];
        assert_abs_diff_eq!(fig1.p_ac, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(fig1.magnitude, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn nvc_mass_shrinks_ordering_marginals() {
        let mut profile = ReasonerProfile::new("half-nvc");
        for s in enumerate_syllogisms() {
            let mut w = [0.0f64; 9];
            w[Response::Iac.index()] = 1.0;
            w[Response::Nvc.index()] = 1.0;
            profile.insert(ResponseDistribution::from_weights(s, w, 2).unwrap());
        }
        let effects = ordering_effect(&profile);
        assert_abs_diff_eq!(effects[&Figure::One].p_ac, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(effects[&Figure::One].magnitude, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn exact_line_gives_zero_residuals() {
        let oracle = oracle();
        let mut profile = ReasonerProfile::new("linear");
        // Distributions whose (entropy, accuracy) pairs vary; then check the
        // OLS residual bookkeeping on hand-made data instead.
        for s in oracle.valid_syllogisms() {
            profile.insert(ResponseDistribution::uniform_over(s, oracle.valid(&s).iter().copied()).unwrap());
        }
        // All accuracies are 1.0 here, entropies vary with |valid|; the fit
        // is then flat with zero residuals.
        let report = fallacy_residuals(&profile, &oracle).unwrap();
        for row in &report.rows {
            assert_abs_diff_eq!(row.residual, 0.0, epsilon = 1e-9);
        }
        let sum: f64 = report.rows.iter().map(|r| r.residual).sum();
        assert_abs_diff_eq!(sum, 0.0, epsilon = 1e-9);
    }

    #[test]
    fn residual_ranking_surfaces_confident_errors() {
        let oracle = oracle();
        let mut profile = ReasonerProfile::new("fallacious");
        for s in oracle.valid_syllogisms() {
            // Mostly calibrated: uniform over valid plus some spread.
            let dist = if s == syl("EA1") {
                // Confident and wrong.
                ResponseDistribution::point_mass(s, Response::Eac)
            } else {
                ResponseDistribution::uniform_over(s, oracle.valid(&s).iter().copied()).unwrap()
            };
            profile.insert(dist);
        }
        let report = fallacy_residuals(&profile, &oracle).unwrap();
        assert_eq!(report.ranked[0], syl("EA1"));
        let residual_sum: f64 = report.rows.iter().map(|r| r.residual).sum();
        assert_abs_diff_eq!(residual_sum, 0.0, epsilon = 1e-9);
    }

    #[test]
    fn nvc_rates_for_reference_profiles() {
        let oracle = oracle();
        let rates = nvc_rate(&ReasonerProfile::oracle_uniform(&oracle), &oracle);
        assert_abs_diff_eq!(rates.on_nvc37, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rates.on_valid27, 0.0, epsilon = 1e-12);

        let mut all_nvc = ReasonerProfile::new("always-nvc");
        for s in enumerate_syllogisms() {
            all_nvc.insert(ResponseDistribution::point_mass(s, Response::Nvc));
        }
        let rates = nvc_rate(&all_nvc, &oracle);
        assert_abs_diff_eq!(rates.on_nvc37, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rates.on_valid27, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn residual_correlation_of_identical_reports_is_one() {
        let oracle = oracle();
        let reasoner = Reasoner::new(crate::mental::ReasonerParams::default());
        let profile = ReasonerProfile::simulated("sim", &reasoner, 50, 4);
        let a = fallacy_residuals(&profile, &oracle).unwrap();
        let r = residual_correlation(&a, &a).unwrap();
        assert_abs_diff_eq!(r, 1.0, epsilon = 1e-12);
    }
}
