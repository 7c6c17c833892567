//! Ground-truth validity by exhaustive enumeration of monadic models.
//!
//! Two monadic premises over {A, B, C} cannot distinguish worlds beyond
//! which of the 8 sign regions (one per assignment of A, B, C) are
//! inhabited, so a world is just an 8-bit emptiness mask and "all models"
//! is the 256 possible masks. A conclusion is valid when it is true in
//! every world satisfying both premises.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use crate::error::{Error, Result};
use crate::syllogism::{enumerate_syllogisms, Mood, Premise, Response, Syllogism, Term};

/// A monadic model: one inhabited/empty flag per sign region over {A,B,C}.
///
/// Region `r` (0..8) is the set of individuals for which term `t` holds iff
/// bit `t` of `r` is set; bit `r` of the mask says the region is inhabited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct World(pub u8);

impl World {
    /// All 256 worlds.
    pub fn all() -> impl Iterator<Item = World> {
        (0u16..256).map(|m| World(m as u8))
    }

    pub fn region_inhabited(self, region: u8) -> bool {
        debug_assert!(region < 8);
        self.0 & (1 << region) != 0
    }

    fn regions(self) -> impl Iterator<Item = u8> {
        (0u8..8).filter(move |&r| self.region_inhabited(r))
    }

    /// True when some inhabited region contains the term.
    pub fn term_nonempty(self, term: Term) -> bool {
        self.regions().any(|r| r & (1 << term.index()) != 0)
    }
}

/// Validity convention. With `existential_import` on (the default), every
/// term is presupposed nonempty and A/E statements additionally require a
/// nonempty subject; off gives plain classical semantics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Semantics {
    pub existential_import: bool,
}

impl Default for Semantics {
    fn default() -> Self {
        Semantics {
            existential_import: true,
        }
    }
}

impl Semantics {
    pub const CLASSICAL: Semantics = Semantics {
        existential_import: false,
    };
}

/// Truth of a single quantified statement in a world.
///
/// A: subject is a subset of object; E: subject and object are disjoint;
/// I: they overlap; O: subject minus object is inhabited. Under existential
/// import, A and E additionally require a nonempty subject.
pub fn statement_holds(mood: Mood, subject: Term, object: Term, world: World, sem: Semantics) -> bool {
    let s = 1u8 << subject.index();
    let o = 1u8 << object.index();
    let any = |pred: &dyn Fn(u8) -> bool| world.regions().any(pred);
    let classical = match mood {
        Mood::A => !any(&|r| r & s != 0 && r & o == 0),
        Mood::E => !any(&|r| r & s != 0 && r & o != 0),
        Mood::I => any(&|r| r & s != 0 && r & o != 0),
        Mood::O => any(&|r| r & s != 0 && r & o == 0),
    };
    if sem.existential_import && mood.is_universal() {
        classical && world.term_nonempty(subject)
    } else {
        classical
    }
}

/// Truth of a premise in a world.
pub fn premise_holds(p: &Premise, world: World, sem: Semantics) -> bool {
    statement_holds(p.mood, p.subject, p.object, world, sem)
}

fn world_admissible(world: World, sem: Semantics) -> bool {
    !sem.existential_import || Term::ALL.iter().all(|&t| world.term_nonempty(t))
}

/// The worlds a syllogism's premises admit under the given semantics.
fn models_of(s: &Syllogism, sem: Semantics) -> Vec<World> {
    let [p1, p2] = s.premises();
    World::all()
        .filter(|&w| world_admissible(w, sem))
        .filter(|&w| premise_holds(&p1, w, sem) && premise_holds(&p2, w, sem))
        .collect()
}

/// The set of responses valid for `s`: every quantified conclusion true in
/// all premise-satisfying worlds, or `{NVC}` when there is none. NVC never
/// appears alongside a quantified response.
pub fn valid_conclusions(s: &Syllogism, sem: Semantics) -> BTreeSet<Response> {
    let worlds = models_of(s, sem);
    let mut out: BTreeSet<Response> = Response::QUANTIFIED
        .iter()
        .copied()
        .filter(|r| {
            let (mood, dir) = r.parts().expect("quantified");
            let (subj, obj) = dir.terms();
            !worlds.is_empty() && worlds.iter().all(|&w| statement_holds(mood, subj, obj, w, sem))
        })
        .collect();
    if out.is_empty() {
        out.insert(Response::Nvc);
    }
    out
}

/// Counts of syllogisms with quantified valid conclusions vs. NVC-only.
pub fn partition_counts(sem: Semantics) -> (usize, usize) {
    let table = OracleTable::new(sem);
    table.partition_counts()
}

/// The full valid-conclusion table, precomputed for all 64 syllogisms.
#[derive(Debug, Clone)]
pub struct OracleTable {
    semantics: Semantics,
    valid: BTreeMap<Syllogism, BTreeSet<Response>>,
}

impl OracleTable {
    pub fn new(sem: Semantics) -> OracleTable {
        let valid = enumerate_syllogisms()
            .into_iter()
            .map(|s| {
                let set = valid_conclusions(&s, sem);
                (s, set)
            })
            .collect();
        OracleTable {
            semantics: sem,
            valid,
        }
    }

    pub fn semantics(&self) -> Semantics {
        self.semantics
    }

    /// Valid responses for a syllogism (`{NVC}` for the NVC-only ones).
    pub fn valid(&self, s: &Syllogism) -> &BTreeSet<Response> {
        &self.valid[s]
    }

    pub fn is_valid(&self, s: &Syllogism, r: Response) -> bool {
        self.valid[s].contains(&r)
    }

    /// True when the syllogism licenses a quantified conclusion.
    pub fn has_quantified_conclusion(&self, s: &Syllogism) -> bool {
        !self.is_valid(s, Response::Nvc)
    }

    /// Syllogisms with quantified valid conclusions, in enumeration order.
    pub fn valid_syllogisms(&self) -> Vec<Syllogism> {
        enumerate_syllogisms()
            .into_iter()
            .filter(|s| self.has_quantified_conclusion(s))
            .collect()
    }

    /// Syllogisms whose only valid response is NVC, in enumeration order.
    pub fn nvc_syllogisms(&self) -> Vec<Syllogism> {
        enumerate_syllogisms()
            .into_iter()
            .filter(|s| !self.has_quantified_conclusion(s))
            .collect()
    }

    pub fn partition_counts(&self) -> (usize, usize) {
        let n_valid = self.valid_syllogisms().len();
        (n_valid, 64 - n_valid)
    }

    /// Writes the table as CSV with columns `syllogism_id,response_code`,
    /// one row per valid pair (NVC rows for the NVC-only syllogisms).
    pub fn write_csv(&self, mut w: impl Write) -> Result<()> {
        writeln!(w, "syllogism_id,response_code").map_err(|e| Error::io("<writer>", e))?;
        for s in enumerate_syllogisms() {
            for r in self.valid(&s) {
                writeln!(w, "{},{}", s.id(), r.code()).map_err(|e| Error::io("<writer>", e))?;
            }
        }
        Ok(())
    }
}

impl Default for OracleTable {
    fn default() -> Self {
        OracleTable::new(Semantics::default())
    }
}
