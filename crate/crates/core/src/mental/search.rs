//! System-2 counterexample search.
//!
//! The search perturbs a working copy of the model with three operators:
//! ADD appends an individual from a premise's broad set, MOVE relocates one
//! property token between entities, and BREAK decomposes an entity into two
//! entities carrying covering subsets of its properties. A mutation that
//! leaves a premise unsatisfied is rolled back; one that preserves both
//! premises is kept, so successive attempts explore premise-satisfying
//! models. The first working model in which the candidate conclusion fails
//! is returned as the counterexample.
//!
//! Conclusions relate only the end terms A and C, so the search is
//! goal-directed: each operator prefers instantiations that touch an end
//! term (breaking an A-and-C individual apart, moving an A or C token,
//! adding an individual that carries its premise's end term) and falls
//! back to an unrestricted draw when no such instantiation exists.

use rand::Rng;

use crate::syllogism::{Response, Syllogism, Term};

use super::entity::{Entity, TriState};
use super::model::MentalModel;
use super::sets::{IndividualSets, Pattern};

/// Default budget of mutation attempts per search. At 16 targeted
/// attempts the search falsifies roughly half of the falsifiable
/// conclusions it scrutinizes, enough for the scrutiny propensity to show
/// up as the dominant behavioral dimension.
pub const DEFAULT_MAX_ATTEMPTS: usize = 16;

#[derive(Debug, Clone, Copy)]
enum Operator {
    Add,
    Move,
    Break,
}

/// Searches for a premise-satisfying mutation of `model` that falsifies
/// `candidate` (a conclusion read off `model`, so holding in it). Each of
/// the up-to-`max_attempts` attempts applies one operator; rejected
/// mutations consume budget too, keeping the total work deterministic.
pub fn search_counterexample(
    model: &MentalModel,
    s: &Syllogism,
    sets: &IndividualSets,
    candidate: Response,
    max_attempts: usize,
    rng: &mut impl Rng,
) -> Option<MentalModel> {
    debug_assert!(candidate != Response::Nvc, "NVC has no counterexample");
    let mut current = model.clone();
    for _ in 0..max_attempts {
        let op = match rng.random_range(0..3u8) {
            0 => Operator::Add,
            1 => Operator::Move,
            _ => Operator::Break,
        };
        let mutated = match op {
            Operator::Add => Some(add(&current, s, sets, rng)),
            Operator::Move => move_property(&current, rng),
            Operator::Break => break_entity(&current, rng),
        };
        if let Some(mutated) = mutated {
            if mutated.satisfies_premises(s) {
                current = mutated;
                if !current.conclusion_holds(candidate) {
                    return Some(current);
                }
            }
        }
    }
    None
}

/// Appends one individual drawn from a random premise's broad set,
/// preferring patterns that carry the premise's end term.
fn add(model: &MentalModel, s: &Syllogism, sets: &IndividualSets, rng: &mut impl Rng) -> MentalModel {
    use super::model::Origin;
    let premises = s.premises();
    let which = rng.random_range(0..2usize);
    let premise = &premises[which];
    let end_term = if premise.subject == Term::B {
        premise.object
    } else {
        premise.subject
    };
    let pool = &sets.for_mood(premise.mood).broad;
    let preferred: Vec<Pattern> = pool
        .iter()
        .copied()
        .filter(|p| p.state_for(premise, end_term) == Some(TriState::Present))
        .collect();
    let pattern = if preferred.is_empty() {
        pool[rng.random_range(0..pool.len())]
    } else {
        preferred[rng.random_range(0..preferred.len())]
    };
    let mut out = model.clone();
    let origin = if which == 0 {
        Origin::FirstPremise
    } else {
        Origin::SecondPremise
    };
    out.push(pattern.entity(premise), origin);
    out
}

/// Moves one specified property token from an entity that can spare it to
/// an entity with that slot open, preferring end-term tokens (only those
/// can change a conclusion's truth). Entity count is preserved; a move
/// that would blank its source is not considered.
fn move_property(model: &MentalModel, rng: &mut impl Rng) -> Option<MentalModel> {
    let mut options: Vec<(usize, Term, TriState, usize)> = Vec::new();
    for (src, e) in model.entities().iter().enumerate() {
        if e.specified_count() < 2 {
            continue;
        }
        for (term, state) in e.specified() {
            for (dst, d) in model.entities().iter().enumerate() {
                if dst != src && !d.get(term).is_specified() {
                    options.push((src, term, state, dst));
                }
            }
        }
    }
    if options.is_empty() {
        return None;
    }
    let preferred: Vec<(usize, Term, TriState, usize)> = options
        .iter()
        .copied()
        .filter(|(_, term, _, _)| *term != Term::B)
        .collect();
    let pool = if preferred.is_empty() { &options } else { &preferred };
    let (src, term, state, dst) = pool[rng.random_range(0..pool.len())];
    let mut out = model.clone();
    out.entity_mut(src).set(term, TriState::Unspecified);
    out.entity_mut(dst).set(term, state);
    Some(out)
}

/// Splits one entity into two entities whose specified properties are
/// covering, nonempty, proper subsets of the original's (they may overlap,
/// e.g. [A B C] into [A B] and [B C]). Entities carrying both end terms
/// are split first; pulling A and C apart is what removes a conclusion's
/// witness.
fn break_entity(model: &MentalModel, rng: &mut impl Rng) -> Option<MentalModel> {
    let candidates: Vec<usize> = model
        .entities()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.specified_count() >= 2)
        .map(|(i, _)| i)
        .collect();
    if candidates.is_empty() {
        return None;
    }
    let preferred: Vec<usize> = candidates
        .iter()
        .copied()
        .filter(|&i| {
            let e = model.entity(i);
            e.has(Term::A) && e.has(Term::C)
        })
        .collect();
    let pool = if preferred.is_empty() { &candidates } else { &preferred };
    let idx = pool[rng.random_range(0..pool.len())];
    let original = *model.entity(idx);
    let tokens: Vec<(Term, TriState)> = original.specified().collect();

    // Assign each token to the first part, the second, or both; keep only
    // splits where both parts are nonempty proper subsets.
    for _ in 0..16 {
        let mut first = Entity::new();
        let mut second = Entity::new();
        for &(term, state) in &tokens {
            match rng.random_range(0..3u8) {
                0 => first.set(term, state),
                1 => second.set(term, state),
                _ => {
                    first.set(term, state);
                    second.set(term, state);
                }
            }
        }
        let proper = |e: &Entity| !e.is_blank() && e.specified_count() < tokens.len();
        if proper(&first) && proper(&second) {
            let mut out = model.clone();
            let origin = out.origins()[idx];
            out.replace(idx, first);
            out.push(second, origin);
            return Some(out);
        }
    }
    None
}
