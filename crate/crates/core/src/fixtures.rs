//! The four-state, three-goal example game and an equivalent `.mpl` instance.
//!
//! From `s0` the agent chooses between the move `y1` (exactly `y1` true) and
//! the move `y2` (exactly `y2` true); any other output stays in `s0`. After
//! `y1` the environment decides between `s1` and `s2`: input `x2` alone leads
//! to `s2`, every other input to `s1`. After `y2` every input leads to `s3`.
//! `s1`, `s2`, `s3` are absorbing.
//!
//! | state | satisfied goals |
//! |-------|-----------------|
//! | s0    | none            |
//! | s1    | g1, g2, g3      |
//! | s2    | g1, g2          |
//! | s3    | g2, g3          |

use crate::arena::{Alphabet, ProductArena};
use crate::dfa::Dfa;
use crate::error::Result;

pub const FIG1_LABELS: [&str; 3] = ["g1", "g2", "g3"];

/// An `.mpl` instance whose product arena is the example game.
pub const FIG1_MPL: &str = "\
# Two agent moves from the start: y1 (left) or y2 (right).
INPUTS: x1, x2
OUTPUTS: y1, y2
GOAL g1: !((y1 & !y2) | (y2 & !y1)) U (y1 & !y2)
GOAL g2: !((y1 & !y2) | (y2 & !y1)) U ((y1 & !y2) | (y2 & !y1))
GOAL g3: !((y1 & !y2) | (y2 & !y1)) U ((y1 & !y2 & !(x2 & !x1)) | (y2 & !y1))
";

pub fn fig1_alphabet() -> Alphabet {
    Alphabet::new(
        vec!["x1".into(), "x2".into()],
        vec!["y1".into(), "y2".into()],
    )
}

/// Successor of the example game on a global symbol over `[x1, x2, y1, y2]`.
fn fig1_step(s: usize, sym: u32) -> usize {
    if s != 0 {
        return s;
    }
    let (x1, x2) = (sym & 1 == 1, sym & 2 == 2);
    match sym >> 2 {
        0b01 if x2 && !x1 => 2,
        0b01 => 1,
        0b10 => 3,
        _ => 0,
    }
}

/// One automaton per goal, all sharing the game's transition structure.
pub fn fig1_dfas() -> Vec<Dfa> {
    let alphabet = fig1_alphabet().atoms();
    let delta: Vec<u32> = (0..4)
        .flat_map(|s| (0..16).map(move |sym| fig1_step(s, sym) as u32))
        .collect();
    let finals = [
        [false, true, true, false],
        [false, true, true, true],
        [false, true, false, true],
    ];
    finals
        .iter()
        .map(|f| Dfa::new(alphabet.clone(), 0, delta.clone(), f.to_vec()).expect("fixture is valid"))
        .collect()
}

pub fn fig1_arena() -> Result<ProductArena> {
    ProductArena::build(fig1_dfas(), fig1_alphabet(), &Default::default())
}
