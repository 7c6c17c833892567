//! The combinatorial space of syllogisms and responses.
//!
//! A syllogism is two quantified premises over three terms A, B, C with B
//! shared; a response is one of the eight quantified A-C conclusions or
//! "nothing follows". Rendering and parsing use one canonical wording per
//! quantifier so that parse-by-containment is exact.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::LazyLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The four quantifiers, traditionally called moods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mood {
    /// "All X are Y"
    A,
    /// "No X are Y"
    E,
    /// "Some X are Y"
    I,
    /// "Some X are not Y"
    O,
}

impl Mood {
    pub const ALL: [Mood; 4] = [Mood::A, Mood::E, Mood::I, Mood::O];

    pub fn code(self) -> char {
        match self {
            Mood::A => 'A',
            Mood::E => 'E',
            Mood::I => 'I',
            Mood::O => 'O',
        }
    }

    pub fn from_code(c: char) -> Option<Mood> {
        match c.to_ascii_uppercase() {
            'A' => Some(Mood::A),
            'E' => Some(Mood::E),
            'I' => Some(Mood::I),
            'O' => Some(Mood::O),
            _ => None,
        }
    }

    /// Instantiates the surface template with the given subject and object.
    pub fn render(self, subject: &str, object: &str) -> String {
        match self {
            Mood::A => format!("All {subject} are {object}"),
            Mood::E => format!("No {subject} are {object}"),
            Mood::I => format!("Some {subject} are {object}"),
            Mood::O => format!("Some {subject} are not {object}"),
        }
    }

    /// True for the universal quantifiers (A, E).
    pub fn is_universal(self) -> bool {
        matches!(self, Mood::A | Mood::E)
    }
}

/// The three term positions of a syllogism. B is the middle term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    A,
    B,
    C,
}

impl Term {
    pub const ALL: [Term; 3] = [Term::A, Term::B, Term::C];

    pub fn index(self) -> usize {
        match self {
            Term::A => 0,
            Term::B => 1,
            Term::C => 2,
        }
    }
}

/// Premise term orders. Figure 1 is (A-B, B-C), figure 2 is (B-A, C-B),
/// figure 3 is (A-B, C-B), figure 4 is (B-A, B-C).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Figure {
    One,
    Two,
    Three,
    Four,
}

impl Serialize for Figure {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.code().to_string())
    }
}

impl Figure {
    pub const ALL: [Figure; 4] = [Figure::One, Figure::Two, Figure::Three, Figure::Four];

    pub fn code(self) -> char {
        match self {
            Figure::One => '1',
            Figure::Two => '2',
            Figure::Three => '3',
            Figure::Four => '4',
        }
    }

    pub fn from_code(c: char) -> Option<Figure> {
        match c {
            '1' => Some(Figure::One),
            '2' => Some(Figure::Two),
            '3' => Some(Figure::Three),
            '4' => Some(Figure::Four),
            _ => None,
        }
    }

    /// (subject, object) term order of each premise.
    pub fn term_orders(self) -> [(Term, Term); 2] {
        match self {
            Figure::One => [(Term::A, Term::B), (Term::B, Term::C)],
            Figure::Two => [(Term::B, Term::A), (Term::C, Term::B)],
            Figure::Three => [(Term::A, Term::B), (Term::C, Term::B)],
            Figure::Four => [(Term::B, Term::A), (Term::B, Term::C)],
        }
    }
}

/// Conclusion term order: `Ac` relates A to C, `Ca` relates C to A.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Ac,
    Ca,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Ac => Direction::Ca,
            Direction::Ca => Direction::Ac,
        }
    }

    /// (subject, object) terms of a conclusion in this direction.
    pub fn terms(self) -> (Term, Term) {
        match self {
            Direction::Ac => (Term::A, Term::C),
            Direction::Ca => (Term::C, Term::A),
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            Direction::Ac => "ac",
            Direction::Ca => "ca",
        }
    }
}

/// A quantified premise: `mood` applied to (subject, object) terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Premise {
    pub mood: Mood,
    pub subject: Term,
    pub object: Term,
}

/// One of the 64 syllogisms, identified by codes such as `"EA1"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Syllogism {
    pub mood1: Mood,
    pub mood2: Mood,
    pub figure: Figure,
}

impl Syllogism {
    pub fn new(mood1: Mood, mood2: Mood, figure: Figure) -> Syllogism {
        Syllogism {
            mood1,
            mood2,
            figure,
        }
    }

    /// Three-character identifier: premise moods then figure digit.
    pub fn id(&self) -> String {
        format!("{}{}{}", self.mood1.code(), self.mood2.code(), self.figure.code())
    }

    /// The two premises with their term orders resolved.
    pub fn premises(&self) -> [Premise; 2] {
        let [(s1, o1), (s2, o2)] = self.figure.term_orders();
        [
            Premise {
                mood: self.mood1,
                subject: s1,
                object: o1,
            },
            Premise {
                mood: self.mood2,
                subject: s2,
                object: o2,
            },
        ]
    }
}

impl fmt::Display for Syllogism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for Syllogism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Syllogism> {
        let mut chars = s.chars();
        let (m1, m2, fig, rest) = (chars.next(), chars.next(), chars.next(), chars.next());
        match (m1, m2, fig, rest) {
            (Some(m1), Some(m2), Some(fig), None) => {
                let mood1 = Mood::from_code(m1);
                let mood2 = Mood::from_code(m2);
                let figure = Figure::from_code(fig);
                match (mood1, mood2, figure) {
                    (Some(mood1), Some(mood2), Some(figure)) => {
                        Ok(Syllogism::new(mood1, mood2, figure))
                    }
                    _ => Err(Error::Parse(format!("invalid syllogism id {s:?}"))),
                }
            }
            _ => Err(Error::Parse(format!(
                "syllogism id must be 3 characters, got {s:?}"
            ))),
        }
    }
}

impl Serialize for Syllogism {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.id())
    }
}

impl<'de> Deserialize<'de> for Syllogism {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All 64 syllogisms in the fixed order mood1 (A,E,I,O) x mood2 (A,E,I,O) x
/// figure (1..4); the first element is `AA1`.
pub fn enumerate_syllogisms() -> Vec<Syllogism> {
    let mut out = Vec::with_capacity(64);
    for mood1 in Mood::ALL {
        for mood2 in Mood::ALL {
            for figure in Figure::ALL {
                out.push(Syllogism::new(mood1, mood2, figure));
            }
        }
    }
    out
}

/// One of the nine possible responses: eight quantified conclusions
/// (mood x direction) or "nothing follows".
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Response {
    Aac,
    Aca,
    Eac,
    Eca,
    Iac,
    Ica,
    Oac,
    Oca,
    Nvc,
}

impl Response {
    /// Canonical order; also the tie-break order wherever one is needed.
    pub const ALL: [Response; 9] = [
        Response::Aac,
        Response::Aca,
        Response::Eac,
        Response::Eca,
        Response::Iac,
        Response::Ica,
        Response::Oac,
        Response::Oca,
        Response::Nvc,
    ];

    /// The eight quantified responses, in canonical order.
    pub const QUANTIFIED: [Response; 8] = [
        Response::Aac,
        Response::Aca,
        Response::Eac,
        Response::Eca,
        Response::Iac,
        Response::Ica,
        Response::Oac,
        Response::Oca,
    ];

    pub fn quantified(mood: Mood, direction: Direction) -> Response {
        match (mood, direction) {
            (Mood::A, Direction::Ac) => Response::Aac,
            (Mood::A, Direction::Ca) => Response::Aca,
            (Mood::E, Direction::Ac) => Response::Eac,
            (Mood::E, Direction::Ca) => Response::Eca,
            (Mood::I, Direction::Ac) => Response::Iac,
            (Mood::I, Direction::Ca) => Response::Ica,
            (Mood::O, Direction::Ac) => Response::Oac,
            (Mood::O, Direction::Ca) => Response::Oca,
        }
    }

    /// `(mood, direction)` for quantified responses, `None` for NVC.
    pub fn parts(self) -> Option<(Mood, Direction)> {
        match self {
            Response::Aac => Some((Mood::A, Direction::Ac)),
            Response::Aca => Some((Mood::A, Direction::Ca)),
            Response::Eac => Some((Mood::E, Direction::Ac)),
            Response::Eca => Some((Mood::E, Direction::Ca)),
            Response::Iac => Some((Mood::I, Direction::Ac)),
            Response::Ica => Some((Mood::I, Direction::Ca)),
            Response::Oac => Some((Mood::O, Direction::Ac)),
            Response::Oca => Some((Mood::O, Direction::Ca)),
            Response::Nvc => None,
        }
    }

    /// Position in [`Response::ALL`].
    pub fn index(self) -> usize {
        Response::ALL.iter().position(|r| *r == self).unwrap()
    }

    pub fn code(self) -> &'static str {
        match self {
            Response::Aac => "Aac",
            Response::Aca => "Aca",
            Response::Eac => "Eac",
            Response::Eca => "Eca",
            Response::Iac => "Iac",
            Response::Ica => "Ica",
            Response::Oac => "Oac",
            Response::Oca => "Oca",
            Response::Nvc => "NVC",
        }
    }
}

impl fmt::Display for Response {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Response {
    type Err = Error;

    fn from_str(s: &str) -> Result<Response> {
        Response::ALL
            .iter()
            .copied()
            .find(|r| r.code().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("invalid response code {s:?}")))
    }
}

impl Serialize for Response {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.code())
    }
}

impl<'de> Deserialize<'de> for Response {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The canonical rendering of the NVC response.
pub const NVC_TEXT: &str = "nothing follows";

/// Plural nouns substituted for the terms A, B, C.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ContentTriple {
    pub a: String,
    pub b: String,
    pub c: String,
}

impl ContentTriple {
    pub fn new(
        a: impl Into<String>,
        b: impl Into<String>,
        c: impl Into<String>,
    ) -> Result<ContentTriple> {
        let t = ContentTriple {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        };
        if t.a.is_empty() || t.b.is_empty() || t.c.is_empty() {
            return Err(Error::InvalidParameter("content terms must be nonempty".into()));
        }
        if t.a == t.b || t.b == t.c || t.a == t.c {
            return Err(Error::InvalidParameter(format!(
                "content terms must be distinct: {}/{}/{}",
                t.a, t.b, t.c
            )));
        }
        Ok(t)
    }

    pub fn term(&self, term: Term) -> &str {
        match term {
            Term::A => &self.a,
            Term::B => &self.b,
            Term::C => &self.c,
        }
    }

    /// Reads a triple file: CSV with header `a,b,c`, one triple per row.
    pub fn load_csv(path: impl AsRef<Path>) -> Result<Vec<ContentTriple>> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read_csv(file, &path.display().to_string())
    }

    pub fn read_csv(reader: impl std::io::Read, source: &str) -> Result<Vec<ContentTriple>> {
        let mut rdr = csv::Reader::from_reader(reader);
        let headers = rdr.headers()?.clone();
        if headers.iter().collect::<Vec<_>>() != ["a", "b", "c"] {
            return Err(Error::Schema {
                file: source.to_string(),
                line: 1,
                message: format!("expected header a,b,c, got {headers:?}"),
            });
        }
        let mut out = Vec::new();
        for (i, record) in rdr.records().enumerate() {
            let record = record?;
            if record.len() != 3 {
                return Err(Error::Schema {
                    file: source.to_string(),
                    line: i as u64 + 2,
                    message: format!("expected 3 fields, got {}", record.len()),
                });
            }
            out.push(ContentTriple::new(
                record[0].trim(),
                record[1].trim(),
                record[2].trim(),
            )?);
        }
        if out.is_empty() {
            return Err(Error::Schema {
                file: source.to_string(),
                line: 1,
                message: "triple file contains no rows".into(),
            });
        }
        Ok(out)
    }
}

static BUNDLED_TRIPLES: LazyLock<Vec<ContentTriple>> = LazyLock::new(|| {
    ContentTriple::read_csv(
        include_str!("../data/triples.csv").as_bytes(),
        "bundled triples.csv",
    )
    .expect("bundled triple file is valid")
});

/// The 30 bundled low-association content triples.
pub fn bundled_triples() -> &'static [ContentTriple] {
    &BUNDLED_TRIPLES
}

/// Renders the two premise sentences of `s` under the content assignment
/// `t` (A -> t.a, B -> t.b, C -> t.c).
pub fn render(s: &Syllogism, t: &ContentTriple) -> (String, String) {
    let [p1, p2] = s.premises();
    (
        p1.mood.render(t.term(p1.subject), t.term(p1.object)),
        p2.mood.render(t.term(p2.subject), t.term(p2.object)),
    )
}

/// Renders a response sentence; NVC renders as [`NVC_TEXT`].
pub fn render_response(r: Response, t: &ContentTriple) -> String {
    match r.parts() {
        None => NVC_TEXT.to_string(),
        Some((mood, direction)) => {
            let (subj, obj) = direction.terms();
            mood.render(t.term(subj), t.term(obj))
        }
    }
}

/// Lowercases and collapses runs of whitespace to single spaces.
fn normalize(text: &str) -> String {
    text.to_lowercase().split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Returns every response whose rendered sentence occurs, case-insensitively
/// and with whitespace collapsed, as a substring of `text`. An empty set
/// means no conclusion was identified.
pub fn parse_response(text: &str, t: &ContentTriple) -> BTreeSet<Response> {
    let haystack = normalize(text);
    Response::ALL
        .iter()
        .copied()
        .filter(|&r| haystack.contains(&normalize(&render_response(r, t))))
        .collect()
}
