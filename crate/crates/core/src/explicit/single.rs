//! Reachability games on a single automaton.

use crate::arena::{projection, Alphabet};
use crate::dfa::Dfa;
use crate::error::Result;

/// A single automaton viewed as a game over the partitioned alphabet.
pub struct Game<'a> {
    dfa: &'a Dfa,
    alphabet: &'a Alphabet,
    proj: Vec<u32>,
}

impl<'a> Game<'a> {
    /// Fails if the automaton uses atoms the alphabet does not declare.
    pub fn new(dfa: &'a Dfa, alphabet: &'a Alphabet) -> Result<Self> {
        let proj = projection(dfa, alphabet)?;
        Ok(Game {
            dfa,
            alphabet,
            proj,
        })
    }

    pub fn num_states(&self) -> usize {
        self.dfa.num_states()
    }

    pub fn play(&self, q: usize, y: u32, x: u32) -> usize {
        self.dfa.step(q, self.proj[self.alphabet.symbol(x, y) as usize])
    }

    fn forces(&self, q: usize, y: u32, target: &dyn Fn(usize) -> bool) -> bool {
        (0u32..1 << self.alphabet.num_inputs()).all(|x| target(self.play(q, y, x)))
    }
}

/// States from which some output forces every successor into `target`.
pub fn pre_c(game: &Game, target: &[bool]) -> Vec<bool> {
    (0..game.num_states())
        .map(|q| {
            game.alphabet
                .outputs_lex()
                .any(|y| game.forces(q, y, &|t| target[t]))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingleSolution {
    /// First iteration at which each state becomes winning.
    pub rank: Vec<Option<u32>>,
    /// Lexicographically least output forcing a rank decrease, on winning
    /// states of positive rank.
    pub moves: Vec<Option<u32>>,
    pub iterations: usize,
    pub initial: usize,
}

impl SingleSolution {
    pub fn realizable(&self) -> bool {
        self.rank[self.initial].is_some()
    }

    pub fn winning(&self) -> Vec<bool> {
        self.rank.iter().map(Option::is_some).collect()
    }
}

/// Least fixed point `Win_0 = F`, `Win_{i+1} = Win_i ∪ PreC(Win_i)`.
pub fn solve_single(game: &Game) -> SingleSolution {
    let n = game.num_states();
    let mut rank: Vec<Option<u32>> = (0..n)
        .map(|q| game.dfa.is_final(q).then_some(0))
        .collect();
    let mut iterations = 0;
    loop {
        iterations += 1;
        let win: Vec<bool> = rank.iter().map(Option::is_some).collect();
        let pre = pre_c(game, &win);
        let mut changed = false;
        for q in 0..n {
            if pre[q] && rank[q].is_none() {
                rank[q] = Some(iterations as u32);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let moves = (0..n)
        .map(|q| match rank[q] {
            Some(r) if r > 0 => game.alphabet.outputs_lex().find(|&y| {
                game.forces(q, y, &|t| matches!(rank[t], Some(rt) if rt < r))
            }),
            _ => None,
        })
        .collect();
    SingleSolution {
        rank,
        moves,
        iterations,
        initial: game.dfa.initial(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dfa::{build_dfa, BuildOptions};
    use crate::ltlf::parse_formula;

    fn solve(f: &str, inputs: &[&str], outputs: &[&str]) -> SingleSolution {
        let alphabet = Alphabet::new(
            inputs.iter().map(|s| s.to_string()).collect(),
            outputs.iter().map(|s| s.to_string()).collect(),
        );
        let f = parse_formula(f, None).unwrap();
        let dfa = build_dfa(&f, &alphabet.atoms(), &BuildOptions::default()).unwrap();
        let game = Game::new(&dfa, &alphabet).unwrap();
        solve_single(&game)
    }

    #[test]
    fn eventually_output_is_realizable_in_one_round() {
        let s = solve("F y", &["x"], &["y"]);
        assert!(s.realizable());
        assert_eq!(s.rank[s.initial], Some(1));
        assert_eq!(s.moves[s.initial], Some(1));
    }

    #[test]
    fn eventually_input_is_not() {
        assert!(!solve("F x", &["x"], &["y"]).realizable());
    }

    #[test]
    fn true_takes_one_round() {
        let s = solve("true", &["x"], &["y"]);
        assert_eq!(s.rank[s.initial], Some(1));
        // the least output is all-false
        assert_eq!(s.moves[s.initial], Some(0));
    }

    #[test]
    fn pre_c_extremes() {
        let alphabet = Alphabet::new(vec!["x".into()], vec!["y".into()]);
        let f = parse_formula("y U x", None).unwrap();
        let dfa = build_dfa(&f, &alphabet.atoms(), &BuildOptions::default()).unwrap();
        let game = Game::new(&dfa, &alphabet).unwrap();
        let n = game.num_states();
        assert_eq!(pre_c(&game, &vec![true; n]), vec![true; n]);
        assert_eq!(pre_c(&game, &vec![false; n]), vec![false; n]);
    }
}
