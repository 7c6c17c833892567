//! Canonical and broad individual sets per premise mood.
//!
//! A pattern describes one individual a premise can contribute, as a
//! tri-state pair over the premise's (subject, object) terms. The canonical
//! set holds the preferred individuals; the broad set is its superset of
//! every premise-consistent pattern (a pattern is premise-consistent when
//! some completion of its open slots satisfies the premise). The first
//! canonical pattern of each mood is the witness that makes the premise
//! true and is always instantiated.
//!
//! The built-in sets are declared substitutes for the original tool's
//! hand-derived tables, and can be replaced by a data file (see
//! [`IndividualSets::parse`] for the format).

use std::fmt;
use std::path::Path;
use std::sync::LazyLock;

use crate::error::{Error, Result};
use crate::syllogism::{Mood, Premise, Term};

use super::entity::{Entity, TriState};

/// A tri-state (subject, object) pair; not both open.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pattern {
    pub subject: TriState,
    pub object: TriState,
}

impl Pattern {
    pub fn new(subject: TriState, object: TriState) -> Pattern {
        Pattern { subject, object }
    }

    /// Instantiates the pattern as an entity over the premise's terms.
    pub fn entity(&self, premise: &Premise) -> Entity {
        let mut e = Entity::new();
        if self.subject.is_specified() {
            e.set(premise.subject, self.subject);
        }
        if self.object.is_specified() {
            e.set(premise.object, self.object);
        }
        e
    }

    /// How the pattern constrains a given term of its premise, if at all.
    pub fn state_for(&self, premise: &Premise, term: Term) -> Option<TriState> {
        if term == premise.subject {
            Some(self.subject)
        } else if term == premise.object {
            Some(self.object)
        } else {
            None
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        let mut parts: Vec<String> = Vec::new();
        match self.subject {
            TriState::Present => parts.push("S".into()),
            TriState::Absent => parts.push("-S".into()),
            TriState::Unspecified => {}
        }
        match self.object {
            TriState::Present => parts.push("O".into()),
            TriState::Absent => parts.push("-O".into()),
            TriState::Unspecified => {}
        }
        write!(f, "{}]", parts.join(" "))
    }
}

/// Canonical and broad patterns for one premise mood.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoodSets {
    pub canonical: Vec<Pattern>,
    pub broad: Vec<Pattern>,
}

impl MoodSets {
    /// The pattern that makes the premise true; always the first canonical
    /// entry.
    pub fn witness(&self) -> Pattern {
        self.canonical[0]
    }
}

/// The per-mood individual sets a reasoner samples from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndividualSets {
    a: MoodSets,
    e: MoodSets,
    i: MoodSets,
    o: MoodSets,
}

impl IndividualSets {
    pub fn for_mood(&self, mood: Mood) -> &MoodSets {
        match mood {
            Mood::A => &self.a,
            Mood::E => &self.e,
            Mood::I => &self.i,
            Mood::O => &self.o,
        }
    }

    /// Parses the individual-set file format: one line per (mood, set),
    ///
    /// ```text
    /// # comment
    /// A canonical: [S O]
    /// A broad: [S O] [S] [-S O] [-S -O] [-S] [O] [-O]
    /// ```
    ///
    /// Pattern atoms are `S`/`-S` for subject present/absent and `O`/`-O`
    /// for object present/absent; an omitted atom leaves the slot open.
    /// Every mood needs both lines; each broad set must contain its
    /// canonical set, and every canonical set must be nonempty.
    pub fn parse(text: &str) -> Result<IndividualSets> {
        let mut slots: [[Option<Vec<Pattern>>; 2]; 4] = Default::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (head, rest) = line.split_once(':').ok_or_else(|| Error::Schema {
                file: "individual sets".into(),
                line: lineno as u64 + 1,
                message: "expected `<mood> <canonical|broad>: patterns`".into(),
            })?;
            let mut words = head.split_whitespace();
            let mood = words
                .next()
                .and_then(|w| w.chars().next())
                .and_then(Mood::from_code)
                .ok_or_else(|| Error::Schema {
                    file: "individual sets".into(),
                    line: lineno as u64 + 1,
                    message: format!("unknown mood in {head:?}"),
                })?;
            let kind = match words.next() {
                Some("canonical") => 0,
                Some("broad") => 1,
                other => {
                    return Err(Error::Schema {
                        file: "individual sets".into(),
                        line: lineno as u64 + 1,
                        message: format!("expected canonical or broad, got {other:?}"),
                    })
                }
            };
            let patterns = parse_patterns(rest).map_err(|message| Error::Schema {
                file: "individual sets".into(),
                line: lineno as u64 + 1,
                message,
            })?;
            let mood_idx = Mood::ALL.iter().position(|&m| m == mood).unwrap();
            slots[mood_idx][kind] = Some(patterns);
        }

        let mut sets = Vec::with_capacity(4);
        for (idx, mood) in Mood::ALL.into_iter().enumerate() {
            let [canonical, broad] = std::mem::take(&mut slots[idx]);
            let canonical = canonical.ok_or_else(|| {
                Error::Parse(format!("individual sets: missing `{} canonical` line", mood.code()))
            })?;
            let broad = broad.ok_or_else(|| {
                Error::Parse(format!("individual sets: missing `{} broad` line", mood.code()))
            })?;
            if canonical.is_empty() {
                return Err(Error::Parse(format!(
                    "individual sets: empty canonical set for {}",
                    mood.code()
                )));
            }
            for p in &canonical {
                if !broad.contains(p) {
                    return Err(Error::Parse(format!(
                        "individual sets: canonical pattern {p} for {} missing from broad set",
                        mood.code()
                    )));
                }
            }
            sets.push(MoodSets { canonical, broad });
        }
        let mut it = sets.into_iter();
        Ok(IndividualSets {
            a: it.next().unwrap(),
            e: it.next().unwrap(),
            i: it.next().unwrap(),
            o: it.next().unwrap(),
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<IndividualSets> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }
}

impl Default for IndividualSets {
    fn default() -> Self {
        BUILTIN.clone()
    }
}

impl fmt::Display for IndividualSets {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for mood in Mood::ALL {
            let sets = self.for_mood(mood);
            let join = |ps: &[Pattern]| ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
            writeln!(f, "{} canonical: {}", mood.code(), join(&sets.canonical))?;
            writeln!(f, "{} broad: {}", mood.code(), join(&sets.broad))?;
        }
        Ok(())
    }
}

fn parse_patterns(text: &str) -> std::result::Result<Vec<Pattern>, String> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let open = rest
            .find('[')
            .ok_or_else(|| format!("expected `[` in {rest:?}"))?;
        let close = rest[open..]
            .find(']')
            .ok_or_else(|| format!("unterminated pattern in {rest:?}"))?
            + open;
        let body = &rest[open + 1..close];
        let mut subject = TriState::Unspecified;
        let mut object = TriState::Unspecified;
        for atom in body.split_whitespace() {
            match atom {
                "S" => subject = TriState::Present,
                "-S" => subject = TriState::Absent,
                "O" => object = TriState::Present,
                "-O" => object = TriState::Absent,
                other => return Err(format!("unknown pattern atom {other:?}")),
            }
        }
        if !subject.is_specified() && !object.is_specified() {
            return Err("pattern must specify subject or object".into());
        }
        out.push(Pattern::new(subject, object));
        rest = rest[close + 1..].trim_start();
    }
    if out.is_empty() {
        return Err("no patterns given".into());
    }
    Ok(out)
}

/// The bundled default sets (see `data/individual_sets.txt`).
static BUILTIN: LazyLock<IndividualSets> = LazyLock::new(|| {
    IndividualSets::parse(include_str!("../../data/individual_sets.txt"))
        .expect("bundled individual sets are valid")
});

#[cfg(test)]
mod tests {
    use super::*;

    const P: TriState = TriState::Present;
    const N: TriState = TriState::Absent;
    const U: TriState = TriState::Unspecified;

    #[test]
    fn builtin_sets_have_expected_shape() {
        let sets = IndividualSets::default();
        assert_eq!(sets.for_mood(Mood::A).canonical, vec![Pattern::new(P, P)]);
        assert_eq!(
            sets.for_mood(Mood::I).canonical,
            vec![Pattern::new(P, P), Pattern::new(P, U)]
        );
        assert_eq!(
            sets.for_mood(Mood::E).canonical,
            vec![Pattern::new(P, N), Pattern::new(N, P)]
        );
        assert_eq!(
            sets.for_mood(Mood::O).canonical,
            vec![Pattern::new(P, N), Pattern::new(P, P), Pattern::new(N, P)]
        );
    }

    #[test]
    fn broad_contains_canonical_and_excludes_contradictions() {
        let sets = IndividualSets::default();
        for mood in Mood::ALL {
            let ms = sets.for_mood(mood);
            for p in &ms.canonical {
                assert!(ms.broad.contains(p), "{mood:?}: {p} not in broad");
            }
        }
        // "All S are O" admits no S-without-O individual.
        assert!(!sets.for_mood(Mood::A).broad.contains(&Pattern::new(P, N)));
        // "No S are O" admits no S-and-O individual.
        assert!(!sets.for_mood(Mood::E).broad.contains(&Pattern::new(P, P)));
        // Existential premises constrain no single individual.
        assert_eq!(sets.for_mood(Mood::I).broad.len(), 8);
        assert_eq!(sets.for_mood(Mood::O).broad.len(), 8);
    }

    #[test]
    fn witnesses_satisfy_their_premise() {
        let sets = IndividualSets::default();
        assert_eq!(sets.for_mood(Mood::A).witness(), Pattern::new(P, P));
        assert_eq!(sets.for_mood(Mood::E).witness(), Pattern::new(P, N));
        assert_eq!(sets.for_mood(Mood::I).witness(), Pattern::new(P, P));
        assert_eq!(sets.for_mood(Mood::O).witness(), Pattern::new(P, N));
    }

    #[test]
    fn format_round_trips() {
        let sets = IndividualSets::default();
        let text = sets.to_string();
        let reparsed = IndividualSets::parse(&text).unwrap();
        assert_eq!(reparsed, sets);
    }

    #[test]
    fn parse_rejects_broken_files() {
        assert!(IndividualSets::parse("").is_err());
        assert!(IndividualSets::parse("A canonical: [S O]").is_err());
        let mut text = IndividualSets::default().to_string();
        text = text.replace("A broad:", "A broad: [Q]");
        assert!(IndividualSets::parse(&text).is_err());
        // canonical pattern outside broad
        let bad = "A canonical: [S O]\nA broad: [S]\n\
                   E canonical: [S -O]\nE broad: [S -O]\n\
                   I canonical: [S O]\nI broad: [S O]\n\
                   O canonical: [S -O]\nO broad: [S -O]\n";
        assert!(IndividualSets::parse(bad).is_err());
    }

    #[test]
    fn pattern_instantiates_over_premise_terms() {
        let premise = Premise {
            mood: Mood::A,
            subject: Term::B,
            object: Term::C,
        };
        let e = Pattern::new(P, N).entity(&premise);
        assert_eq!(e.get(Term::B), P);
        assert_eq!(e.get(Term::C), N);
        assert_eq!(e.get(Term::A), U);
    }
}
