//! Mental models and what holds in them.
//!
//! A model is an ordered multiset of entities. A quantified statement is
//! read off the model with open slots counting as "not the case": the model
//! represents exactly what it marks true. Under that reading a statement
//! holds in a model precisely when it is true in the monadic world whose
//! inhabited regions are the entities' present-property patterns, which is
//! what makes counterexample search sound against the validity oracle.

use crate::syllogism::{Direction, Mood, Premise, Response, Syllogism, Term};

use super::entity::Entity;

/// Which premise created an entity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    FirstPremise,
    SecondPremise,
}

/// An ordered multiset of entities instantiating the premises.
#[derive(Debug, Clone, PartialEq)]
pub struct MentalModel {
    entities: Vec<Entity>,
    origins: Vec<Origin>,
}

impl MentalModel {
    pub fn new() -> MentalModel {
        MentalModel {
            entities: Vec::new(),
            origins: Vec::new(),
        }
    }

    pub fn from_entities(entities: Vec<Entity>, origin: Origin) -> MentalModel {
        let origins = vec![origin; entities.len()];
        MentalModel { entities, origins }
    }

    pub fn push(&mut self, entity: Entity, origin: Origin) {
        debug_assert!(!entity.is_blank(), "entities carry at least one property");
        self.entities.push(entity);
        self.origins.push(origin);
    }

    pub fn len(&self) -> usize {
        self.entities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entities.is_empty()
    }

    pub fn entities(&self) -> &[Entity] {
        &self.entities
    }

    pub fn origins(&self) -> &[Origin] {
        &self.origins
    }

    pub fn entity(&self, idx: usize) -> &Entity {
        &self.entities[idx]
    }

    pub(crate) fn entity_mut(&mut self, idx: usize) -> &mut Entity {
        &mut self.entities[idx]
    }

    pub(crate) fn replace(&mut self, idx: usize, entity: Entity) {
        self.entities[idx] = entity;
    }

    /// Truth of `mood(subject, object)` read off the model. Universal moods
    /// also require a subject witness, mirroring existential import.
    pub fn statement_holds(&self, mood: Mood, subject: Term, object: Term) -> bool {
        let subj_witness = || self.entities.iter().any(|e| e.has(subject));
        match mood {
            Mood::A => {
                subj_witness()
                    && self
                        .entities
                        .iter()
                        .all(|e| !e.has(subject) || e.has(object))
            }
            Mood::E => {
                subj_witness()
                    && !self
                        .entities
                        .iter()
                        .any(|e| e.has(subject) && e.has(object))
            }
            Mood::I => self.entities.iter().any(|e| e.has(subject) && e.has(object)),
            Mood::O => self.entities.iter().any(|e| e.has(subject) && !e.has(object)),
        }
    }

    pub fn premise_holds(&self, premise: &Premise) -> bool {
        self.statement_holds(premise.mood, premise.subject, premise.object)
    }

    /// True when both premises of `s` hold in the model.
    pub fn satisfies_premises(&self, s: &Syllogism) -> bool {
        s.premises().iter().all(|p| self.premise_holds(p))
    }

    /// Truth of a conclusion in the model; NVC is not a statement and reads
    /// as false.
    pub fn conclusion_holds(&self, r: Response) -> bool {
        match r.parts() {
            None => false,
            Some((mood, dir)) => {
                let (subj, obj) = dir.terms();
                self.statement_holds(mood, subj, obj)
            }
        }
    }

    /// The quantified conclusions of one direction that hold, strongest
    /// first.
    pub(crate) fn holding_mood(&self, mood: Mood, dir: Direction) -> bool {
        self.conclusion_holds(Response::quantified(mood, dir))
    }
}

impl Default for MentalModel {
    fn default() -> Self {
        MentalModel::new()
    }
}
