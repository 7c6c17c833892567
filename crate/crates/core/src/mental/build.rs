//! Stochastic construction of a mental model from a syllogism's premises.
//!
//! The model size is Poisson-distributed (truncated to at least two, since
//! two premises must both be representable). Each premise first contributes
//! its witness individual, then padding individuals drawn from its
//! canonical set with probability `1 - broad`, otherwise from its broad
//! set. Contributions whose pattern carries the middle term B fuse into an
//! existing B-carrying entity when they add information; otherwise they
//! become new entities. Finally, universal premises are folded into every
//! entity they constrain, to a fixpoint, mirroring how a reasoner conjoins
//! "all B are C" onto each B individual in the model.

use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::syllogism::{Mood, Premise, Syllogism, Term};

use super::entity::{Entity, TriState};
use super::model::{MentalModel, Origin};
use super::sets::{IndividualSets, Pattern};
use super::ReasonerParams;

/// Poisson sample conditioned on `>= 2`.
pub(crate) fn truncated_poisson(lambda: f64, rng: &mut impl Rng) -> usize {
    let dist = Poisson::new(lambda).expect("validated lambda");
    for _ in 0..64 {
        let k = dist.sample(rng) as usize;
        if k >= 2 {
            return k;
        }
    }
    2
}

fn draw_pattern(sets: &IndividualSets, mood: Mood, broad_prob: f64, rng: &mut impl Rng) -> Pattern {
    let ms = sets.for_mood(mood);
    let pool = if broad_prob > 0.0 && rng.random::<f64>() < broad_prob {
        &ms.broad
    } else {
        &ms.canonical
    };
    pool[rng.random_range(0..pool.len())]
}

/// Whether `pattern` (over `premise`'s terms) can extend `entity` through
/// the middle term: the entity must carry B, the pattern must assert B, and
/// every specified pattern slot must agree with or fill the entity's slot.
/// Returns the fused entity only when it adds information.
fn fuse(entity: &Entity, premise: &Premise, pattern: Pattern) -> Option<Entity> {
    if pattern.state_for(premise, Term::B) != Some(TriState::Present) || !entity.has(Term::B) {
        return None;
    }
    let mut fused = *entity;
    let mut informative = false;
    for (term, state) in [(premise.subject, pattern.subject), (premise.object, pattern.object)] {
        if !state.is_specified() {
            continue;
        }
        match entity.get(term) {
            TriState::Unspecified => {
                fused.set(term, state);
                informative = true;
            }
            existing if existing == state => {}
            _ => return None,
        }
    }
    informative.then_some(fused)
}

/// Adds one drawn pattern for `premise` to the model: fuse when possible,
/// append otherwise. Returns true when the model grew.
fn integrate(model: &mut MentalModel, premise: &Premise, pattern: Pattern, origin: Origin) -> bool {
    for idx in 0..model.len() {
        if let Some(fused) = fuse(model.entity(idx), premise, pattern) {
            model.replace(idx, fused);
            return false;
        }
    }
    model.push(pattern.entity(premise), origin);
    true
}

/// Folds a universal premise into every entity it constrains: for "all S
/// are O" every S-entity gains O; for "no S are O" S-entities gain not-O
/// and O-entities gain not-S. Open slots only; specified slots are never
/// overwritten. Returns whether anything changed.
fn close_universal(model: &mut MentalModel, premise: &Premise) -> bool {
    let mut changed = false;
    match premise.mood {
        Mood::A => {
            for idx in 0..model.len() {
                let e = model.entity(idx);
                if e.has(premise.subject) && !e.get(premise.object).is_specified() {
                    model.entity_mut(idx).set(premise.object, TriState::Present);
                    changed = true;
                }
            }
        }
        Mood::E => {
            for idx in 0..model.len() {
                let e = *model.entity(idx);
                if e.has(premise.subject) && !e.get(premise.object).is_specified() {
                    model.entity_mut(idx).set(premise.object, TriState::Absent);
                    changed = true;
                }
                if e.has(premise.object) && !e.get(premise.subject).is_specified() {
                    model.entity_mut(idx).set(premise.subject, TriState::Absent);
                    changed = true;
                }
            }
        }
        Mood::I | Mood::O => {}
    }
    changed
}

/// Universal closure over both premises, iterated to a fixpoint (one
/// premise's fill can bring an entity under the other's scope, as in
/// figure 2 where "all C are B" feeds "all B are A").
fn close_premises(model: &mut MentalModel, premises: &[Premise; 2]) {
    loop {
        let mut changed = false;
        for p in premises {
            changed |= close_universal(model, p);
        }
        if !changed {
            break;
        }
    }
}

/// Builds a mental model for `s` under `params`, drawing individuals from
/// `sets`.
pub fn build_model(
    s: &Syllogism,
    params: &ReasonerParams,
    sets: &IndividualSets,
    rng: &mut impl Rng,
) -> MentalModel {
    let [p1, p2] = s.premises();
    let target = truncated_poisson(params.len, rng);

    let mut model = MentalModel::new();
    model.push(sets.for_mood(p1.mood).witness().entity(&p1), Origin::FirstPremise);
    integrate(&mut model, &p2, sets.for_mood(p2.mood).witness(), Origin::SecondPremise);

    while model.len() < target {
        let (premise, origin) = if rng.random::<f64>() < 0.5 {
            (&p1, Origin::FirstPremise)
        } else {
            (&p2, Origin::SecondPremise)
        };
        let pattern = draw_pattern(sets, premise.mood, params.broad, rng);
        integrate(&mut model, premise, pattern, origin);
    }

    close_premises(&mut model, &[p1, p2]);
    model
}
