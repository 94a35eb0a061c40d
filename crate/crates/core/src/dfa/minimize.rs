//! Hopcroft partition refinement and canonical BFS renumbering.

use std::collections::VecDeque;

use super::Dfa;

/// Renumbers reachable states in BFS order from the initial state, visiting
/// successors by increasing symbol.
fn canonical(d: &Dfa) -> Dfa {
    let k = d.num_symbols();
    let mut order = vec![u32::MAX; d.num_states()];
    let mut visit = vec![d.initial()];
    order[d.initial()] = 0;
    let mut i = 0;
    while i < visit.len() {
        let q = visit[i];
        for s in 0..k as u32 {
            let t = d.step(q, s);
            if order[t] == u32::MAX {
                order[t] = visit.len() as u32;
                visit.push(t);
            }
        }
        i += 1;
    }
    let mut delta = Vec::with_capacity(visit.len() * k);
    for &q in &visit {
        delta.extend((0..k as u32).map(|s| order[d.step(q, s)]));
    }
    let finals = visit.iter().map(|&q| d.is_final(q)).collect();
    Dfa::new_unchecked(d.alphabet().to_vec(), 0, delta, finals)
}

/// Language-equivalent minimal automaton with canonical state numbering.
pub fn minimize(d: &Dfa) -> Dfa {
    let d = canonical(d);
    let n = d.num_states();
    let k = d.num_symbols();

    // inverse[s][t] = predecessors of t under symbol s
    let mut inverse: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new(); n]; k];
    for q in 0..n {
        for s in 0..k {
            inverse[s][d.step(q, s as u32)].push(q as u32);
        }
    }

    let mut block_of = vec![0usize; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let (finals, rest): (Vec<usize>, Vec<usize>) = (0..n).partition(|&q| d.is_final(q));
    for part in [rest, finals] {
        if !part.is_empty() {
            for &q in &part {
                block_of[q] = blocks.len();
            }
            blocks.push(part);
        }
    }

    let mut in_work = vec![false; blocks.len()];
    let mut work: VecDeque<usize> = VecDeque::new();
    // Either initial block suffices as a splitter; take the smaller.
    let first = (0..blocks.len()).min_by_key(|&b| blocks[b].len()).unwrap();
    work.push_back(first);
    in_work[first] = true;

    let mut marked = vec![false; n];
    let mut touched_count: Vec<usize> = vec![0; blocks.len()];
    while let Some(a) = work.pop_front() {
        in_work[a] = false;
        let splitter = blocks[a].clone();
        for inv in &inverse {
            let mut touched: Vec<usize> = Vec::new();
            let mut pre: Vec<usize> = Vec::new();
            for &t in &splitter {
                for &p in &inv[t] {
                    let p = p as usize;
                    if !marked[p] {
                        marked[p] = true;
                        pre.push(p);
                        let b = block_of[p];
                        if touched_count[b] == 0 {
                            touched.push(b);
                        }
                        touched_count[b] += 1;
                    }
                }
            }
            for b in touched {
                if touched_count[b] < blocks[b].len() {
                    let (inside, outside): (Vec<usize>, Vec<usize>) =
                        blocks[b].iter().partition(|&&q| marked[q]);
                    let new_id = blocks.len();
                    let (keep, moved) = if inside.len() <= outside.len() {
                        (outside, inside)
                    } else {
                        (inside, outside)
                    };
                    for &q in &moved {
                        block_of[q] = new_id;
                    }
                    let moved_len = moved.len();
                    let keep_len = keep.len();
                    blocks[b] = keep;
                    blocks.push(moved);
                    touched_count.push(0);
                    in_work.push(false);
                    if in_work[b] {
                        work.push_back(new_id);
                        in_work[new_id] = true;
                    } else {
                        let smaller = if moved_len <= keep_len { new_id } else { b };
                        work.push_back(smaller);
                        in_work[smaller] = true;
                    }
                }
                touched_count[b] = 0;
            }
            for p in pre {
                marked[p] = false;
            }
        }
    }

    let mut delta = Vec::with_capacity(blocks.len() * k);
    let mut finals = Vec::with_capacity(blocks.len());
    for block in &blocks {
        let rep = block[0];
        delta.extend((0..k as u32).map(|s| block_of[d.step(rep, s)] as u32));
        finals.push(d.is_final(rep));
    }
    let quotient = Dfa::new_unchecked(d.alphabet().to_vec(), block_of[d.initial()], delta, finals);
    canonical(&quotient)
}

/// Structural isomorphism of the reachable parts.
pub fn is_isomorphic(a: &Dfa, b: &Dfa) -> bool {
    a.alphabet() == b.alphabet() && canonical(a) == canonical(b)
}
