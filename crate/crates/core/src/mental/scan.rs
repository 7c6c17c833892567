//! Reading an initial conclusion off a freshly built model.
//!
//! Conclusions are tried strongest first (A > E > I > O). Direction follows
//! the figural preference: figure 1 models are read A-to-C and figure 2
//! C-to-A (the whole preferred direction is scanned before the other);
//! figures 3 and 4 give neither end term priority, so both directions are
//! checked per strength and ties break uniformly at random.

use rand::Rng;

use crate::syllogism::{Direction, Figure, Mood, Response, Syllogism};

use super::model::MentalModel;

/// Strength order for the scan.
const STRENGTH: [Mood; 4] = [Mood::A, Mood::E, Mood::I, Mood::O];

/// The strongest quantified conclusion holding in `m`, or NVC when none
/// does.
pub fn scan_conclusion(m: &MentalModel, s: &Syllogism, rng: &mut impl Rng) -> Response {
    match s.figure {
        Figure::One => scan_directed(m, Direction::Ac),
        Figure::Two => scan_directed(m, Direction::Ca),
        Figure::Three | Figure::Four => scan_symmetric(m, rng),
    }
}

fn scan_directed(m: &MentalModel, preferred: Direction) -> Response {
    for dir in [preferred, preferred.flip()] {
        for mood in STRENGTH {
            if m.holding_mood(mood, dir) {
                return Response::quantified(mood, dir);
            }
        }
    }
    Response::Nvc
}

fn scan_symmetric(m: &MentalModel, rng: &mut impl Rng) -> Response {
    for mood in STRENGTH {
        let ac = m.holding_mood(mood, Direction::Ac);
        let ca = m.holding_mood(mood, Direction::Ca);
        let dir = match (ac, ca) {
            (true, true) => {
                if rng.random::<f64>() < 0.5 {
                    Direction::Ac
                } else {
                    Direction::Ca
                }
            }
            (true, false) => Direction::Ac,
            (false, true) => Direction::Ca,
            (false, false) => continue,
        };
        return Response::quantified(mood, dir);
    }
    Response::Nvc
}
