//! Entities: tri-state property assignments over the three terms.

use std::fmt;

use crate::syllogism::Term;

/// Whether an entity has a property, lacks it, or leaves it open (the
/// "blank space" of a mental-model diagram).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TriState {
    Present,
    Absent,
    #[default]
    Unspecified,
}

impl TriState {
    /// Reading a model off treats an open slot like an absent property.
    pub fn is_present(self) -> bool {
        matches!(self, TriState::Present)
    }

    pub fn is_specified(self) -> bool {
        !matches!(self, TriState::Unspecified)
    }
}

/// One individual in a mental model: a tri-state assignment over {A, B, C}.
/// At least one property is specified.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Entity {
    states: [TriState; 3],
}

impl Entity {
    pub fn new() -> Entity {
        Entity::default()
    }

    pub fn get(&self, term: Term) -> TriState {
        self.states[term.index()]
    }

    pub fn set(&mut self, term: Term, state: TriState) {
        self.states[term.index()] = state;
    }

    pub fn with(mut self, term: Term, state: TriState) -> Entity {
        self.set(term, state);
        self
    }

    pub fn has(&self, term: Term) -> bool {
        self.get(term).is_present()
    }

    /// The specified (term, state) pairs.
    pub fn specified(&self) -> impl Iterator<Item = (Term, TriState)> + '_ {
        Term::ALL
            .iter()
            .map(|&t| (t, self.get(t)))
            .filter(|(_, s)| s.is_specified())
    }

    pub fn specified_count(&self) -> usize {
        self.specified().count()
    }

    pub fn is_blank(&self) -> bool {
        self.specified_count() == 0
    }
}

impl fmt::Debug for Entity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        let mut first = true;
        for (term, state) in self.specified() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            match state {
                TriState::Present => write!(f, "{term:?}")?,
                TriState::Absent => write!(f, "!{term:?}")?,
                TriState::Unspecified => unreachable!(),
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_and_read_back() {
        let e = Entity::new()
            .with(Term::A, TriState::Present)
            .with(Term::B, TriState::Absent);
        assert!(e.has(Term::A));
        assert!(!e.has(Term::B));
        assert!(!e.has(Term::C));
        assert_eq!(e.specified_count(), 2);
        assert_eq!(format!("{e:?}"), "[A !B]");
    }

    #[test]
    fn blank_entity_is_detected() {
        assert!(Entity::new().is_blank());
        assert!(!Entity::new().with(Term::C, TriState::Present).is_blank());
    }
}
