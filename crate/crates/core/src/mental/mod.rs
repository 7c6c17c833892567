//! A stochastic mental-models reasoner.
//!
//! The reasoner answers a syllogism by building a small model of entities
//! that instantiate the premises, reading an initial conclusion off it,
//! and, with some propensity, scrutinizing that conclusion by searching for
//! a counterexample. A falsified conclusion is either weakened (all -> some,
//! no -> some-not) or abandoned for "nothing follows".
//!
//! Behavior is governed by four parameters:
//!
//! * `len` (lambda >= 1): Poisson mean of the model size;
//! * `broad` (epsilon in [0,1]): probability of drawing an individual from
//!   the broad rather than the canonical set;
//! * `systm2` (sigma in [0,1]): propensity to search for counterexamples;
//! * `weaken` (omega in [0,1]): preference for weakening a falsified
//!   conclusion over answering "nothing follows".

mod build;
mod entity;
mod model;
mod scan;
mod search;
mod sets;

pub use build::build_model;
pub use entity::{Entity, TriState};
pub use model::{MentalModel, Origin};
pub use scan::scan_conclusion;
pub use search::{search_counterexample, DEFAULT_MAX_ATTEMPTS};
pub use sets::{IndividualSets, MoodSets, Pattern};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dist::ResponseDistribution;
use crate::error::{Error, Result};
use crate::seeding;
use crate::syllogism::{Mood, Response, Syllogism};

/// The four reasoner parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReasonerParams {
    /// Poisson mean of the model size; at least 1.
    pub len: f64,
    /// Probability of sampling from the broad individual set; in [0, 1].
    pub broad: f64,
    /// Probability of scrutinizing the initial conclusion; in [0, 1].
    pub systm2: f64,
    /// Probability of weakening rather than abandoning a falsified
    /// conclusion; in [0, 1].
    pub weaken: f64,
}

impl ReasonerParams {
    pub fn new(len: f64, broad: f64, systm2: f64, weaken: f64) -> Result<ReasonerParams> {
        if !len.is_finite() || len < 1.0 {
            return Err(Error::InvalidParameter(format!("len must be >= 1, got {len}")));
        }
        for (name, v) in [("broad", broad), ("systm2", systm2), ("weaken", weaken)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be in [0, 1], got {v}"
                )));
            }
        }
        Ok(ReasonerParams {
            len,
            broad,
            systm2,
            weaken,
        })
    }
}

impl Default for ReasonerParams {
    /// Mid-grid settings.
    fn default() -> Self {
        ReasonerParams {
            len: 3.0,
            broad: 0.4,
            systm2: 0.4,
            weaken: 0.4,
        }
    }
}

/// Downgrades a universal conclusion to its particular counterpart in the
/// same direction; particular conclusions cannot weaken.
pub fn weaken(r: Response) -> Option<Response> {
    let (mood, dir) = r.parts()?;
    match mood {
        Mood::A => Some(Response::quantified(Mood::I, dir)),
        Mood::E => Some(Response::quantified(Mood::O, dir)),
        Mood::I | Mood::O => None,
    }
}

/// What one `respond` call did, for auditing and work accounting.
#[derive(Debug, Clone)]
pub struct RespondOutcome {
    pub response: Response,
    /// The conclusion read off the initial model.
    pub initial: Response,
    /// The counterexample model, when the search found one.
    pub counterexample: Option<MentalModel>,
    /// Work units consumed: one per model built plus one per mutation
    /// attempt.
    pub work: u64,
}

/// A configured mental-models reasoner.
#[derive(Debug, Clone)]
pub struct Reasoner {
    pub params: ReasonerParams,
    pub sets: IndividualSets,
    /// Mutation budget per counterexample search.
    pub max_attempts: usize,
}

impl Reasoner {
    pub fn new(params: ReasonerParams) -> Reasoner {
        Reasoner {
            params,
            sets: IndividualSets::default(),
            max_attempts: DEFAULT_MAX_ATTEMPTS,
        }
    }

    pub fn with_sets(mut self, sets: IndividualSets) -> Reasoner {
        self.sets = sets;
        self
    }

    pub fn with_max_attempts(mut self, max_attempts: usize) -> Reasoner {
        self.max_attempts = max_attempts;
        self
    }

    pub fn build_model(&self, s: &Syllogism, rng: &mut impl Rng) -> MentalModel {
        build_model(s, &self.params, &self.sets, rng)
    }

    /// One full response: build, scan, and possibly scrutinize.
    pub fn respond(&self, s: &Syllogism, rng: &mut impl Rng) -> Response {
        self.respond_traced(s, rng).response
    }

    /// Like [`Reasoner::respond`], exposing the initial conclusion, any
    /// counterexample, and the work spent.
    pub fn respond_traced(&self, s: &Syllogism, rng: &mut impl Rng) -> RespondOutcome {
        let model = self.build_model(s, rng);
        let initial = scan_conclusion(&model, s, rng);
        let mut work = 1 + model.len() as u64;

        if initial == Response::Nvc {
            return RespondOutcome {
                response: Response::Nvc,
                initial,
                counterexample: None,
                work,
            };
        }
        if rng.random::<f64>() >= self.params.systm2 {
            return RespondOutcome {
                response: initial,
                initial,
                counterexample: None,
                work,
            };
        }

        work += self.max_attempts as u64;
        let found = search_counterexample(&model, s, &self.sets, initial, self.max_attempts, rng);
        let Some(counterexample) = found else {
            return RespondOutcome {
                response: initial,
                initial,
                counterexample: None,
                work,
            };
        };

        let response = if rng.random::<f64>() < self.params.weaken {
            match weaken(initial) {
                Some(weaker) if counterexample.conclusion_holds(weaker) => weaker,
                _ => Response::Nvc,
            }
        } else {
            Response::Nvc
        };
        RespondOutcome {
            response,
            initial,
            counterexample: Some(counterexample),
            work,
        }
    }

    /// Empirical response frequencies over `n_runs` independent responses.
    pub fn response_distribution(
        &self,
        s: &Syllogism,
        n_runs: u32,
        seed: u64,
    ) -> ResponseDistribution {
        let mut budget = u64::MAX;
        self.response_distribution_budgeted(s, n_runs, seed, &mut budget)
            .expect("unbounded budget")
    }

    /// Budgeted variant for grid sweeps: decrements `budget` by the work
    /// spent and returns `None` when it runs out mid-way.
    pub fn response_distribution_budgeted(
        &self,
        s: &Syllogism,
        n_runs: u32,
        seed: u64,
        budget: &mut u64,
    ) -> Option<ResponseDistribution> {
        assert!(n_runs >= 1, "n_runs must be positive");
        let mut counts = [0u32; 9];
        let mut rng = seeding::rng_for(seed, &[]);
        for _ in 0..n_runs {
            let outcome = self.respond_traced(s, &mut rng);
            *budget = budget.saturating_sub(outcome.work);
            if *budget == 0 {
                return None;
            }
            counts[outcome.response.index()] += 1;
        }
        Some(ResponseDistribution::from_counts(*s, counts).expect("counts sum to n_runs"))
    }
}
