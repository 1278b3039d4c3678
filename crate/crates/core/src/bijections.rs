//! Foata's bijection between Meixner endofunctions and bi-colored
//! permutations, and its extension to bi-endofunctions and 3-colored
//! permutations.
//!
//! Forward: color A white, B black, C red. For every π_A path
//! `p_1 -> ... -> p_l -> x` hanging off a black element `x` with predecessor
//! `y` on its π_B cycle, replace the arc `y -> x` by `y -> p_1`. Since π_A is
//! injective, each black element carries at most one path, so the splices
//! are independent of each other.
//!
//! Backward: white and red elements keep their images; each black element
//! maps to the next black element along its cycle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::structures::{
    Block, Color, ColoredPermutation, MeixnerBiEndofunction, MeixnerEndofunction,
};

/// One arc replacement performed by the forward map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    /// Minimum of the π_B cycle that absorbed the path.
    pub cycle_min: usize,
    pub broken_from: usize,
    pub broken_to: usize,
    /// Absorbed path in arrow order; its last element maps to `broken_to`.
    pub path: Vec<usize>,
}

fn block_color(b: Block) -> Color {
    match b {
        Block::A => Color::White,
        Block::B => Color::Black,
        Block::C => Color::Red,
    }
}

fn color_block(c: Color) -> Block {
    match c {
        Color::White => Block::A,
        Color::Black => Block::B,
        Color::Red => Block::C,
    }
}

/// The splices the forward map performs, in increasing order of the
/// attachment point.
pub fn forward_trace(x: &MeixnerBiEndofunction) -> Vec<TraceRecord> {
    let comps = x.components();
    let map = x.map();
    let mut pred = vec![0usize; map.len() + 1];
    let mut cycle_min = vec![0usize; map.len() + 1];
    for cycle in &comps.b_cycles {
        for &e in cycle {
            pred[map[e - 1]] = e;
            cycle_min[e] = cycle[0];
        }
    }
    comps
        .paths
        .into_iter()
        .map(|p| TraceRecord {
            cycle_min: cycle_min[p.terminal],
            broken_from: pred[p.terminal],
            broken_to: p.terminal,
            path: p.elements,
        })
        .collect()
}

fn forward_with(
    x: &MeixnerBiEndofunction,
    mut splices: Vec<TraceRecord>,
    reverse: bool,
) -> ColoredPermutation {
    if reverse {
        splices.reverse();
    }
    let mut sigma = x.map().to_vec();
    for s in splices {
        sigma[s.broken_from - 1] = s.path[0];
    }
    let coloring = x.blocks().iter().map(|&b| block_color(b)).collect();
    ColoredPermutation::new(coloring, sigma)
        .expect("forward image is a valid 3-colored permutation")
}

/// Meixner bi-endofunction → 3-colored permutation.
pub fn extended_forward(x: &MeixnerBiEndofunction) -> ColoredPermutation {
    forward_with(x, forward_trace(x), false)
}

/// Same map with splices applied in decreasing order of attachment point.
pub fn extended_forward_reversed(x: &MeixnerBiEndofunction) -> ColoredPermutation {
    forward_with(x, forward_trace(x), true)
}

/// 3-colored permutation → Meixner bi-endofunction.
pub fn extended_backward(p: &ColoredPermutation) -> Result<MeixnerBiEndofunction> {
    if let Some(cycle) = p.cycles().into_iter().find(|c| {
        let reds = c.iter().filter(|&&e| p.color(e) == Color::Red).count();
        reds != 0 && reds != c.len()
    }) {
        return Err(Error::RedIsolation(cycle[0]));
    }
    let m = p.m();
    let blocks: Vec<Block> = p.coloring().iter().map(|&c| color_block(c)).collect();
    let map = (1..=m)
        .map(|e| match p.color(e) {
            Color::Black => {
                let mut next = p.apply(e);
                while p.color(next) != Color::Black {
                    next = p.apply(next);
                }
                next
            }
            _ => p.apply(e),
        })
        .collect();
    MeixnerBiEndofunction::new(blocks, map)
}

/// Meixner endofunction → bi-colored permutation, through the `C = ∅` case
/// of [`extended_forward`].
pub fn foata_forward(x: &MeixnerEndofunction) -> ColoredPermutation {
    extended_forward(&MeixnerBiEndofunction::from(x.clone()))
}

pub fn foata_backward(p: &ColoredPermutation) -> Result<MeixnerEndofunction> {
    if p.uses_red() {
        return Err(Error::InvalidStructure(
            "a bi-colored permutation has no red elements".into(),
        ));
    }
    MeixnerEndofunction::try_from(extended_backward(p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{enumerate_bi_endofunctions, enumerate_endofunctions, Block, Palette};
    use std::collections::HashSet;

    fn six_element() -> MeixnerEndofunction {
        MeixnerEndofunction::from_parts(6, &[(4, 1), (2, 5), (5, 6)], &[(1, 6), (6, 3), (3, 1)])
            .unwrap()
    }

    fn six_element_image() -> ColoredPermutation {
        ColoredPermutation::from_cycles(6, &[&[3, 4, 1, 2, 5, 6]], &[1, 3, 6], &[]).unwrap()
    }

    #[test]
    fn six_element_forward_and_back() {
        let p = foata_forward(&six_element());
        assert_eq!(p, six_element_image());
        assert_eq!(p.cycles(), vec![vec![1, 2, 5, 6, 3, 4]]);
        assert_eq!(foata_backward(&six_element_image()).unwrap(), six_element());
    }

    #[test]
    fn six_element_trace() {
        let trace = forward_trace(&six_element().into());
        assert_eq!(
            trace,
            vec![
                TraceRecord {
                    cycle_min: 1,
                    broken_from: 3,
                    broken_to: 1,
                    path: vec![4]
                },
                TraceRecord {
                    cycle_min: 1,
                    broken_from: 1,
                    broken_to: 6,
                    path: vec![2, 5]
                },
            ]
        );
        let js = serde_json::to_string(&trace[0]).unwrap();
        assert_eq!(
            js,
            r#"{"cycle_min":1,"broken_from":3,"broken_to":1,"path":[4]}"#
        );
    }

    #[test]
    fn single_block_cases() {
        // all red: nothing to splice
        let x = MeixnerBiEndofunction::from_parts(3, &[], &[], &[(1, 2), (2, 1), (3, 3)]).unwrap();
        let p = extended_forward(&x);
        assert_eq!(p.sigma(), &[2, 1, 3]);
        assert!(p.coloring().iter().all(|&c| c == Color::Red));
        assert_eq!(extended_backward(&p).unwrap(), x);

        // all black
        let x = MeixnerBiEndofunction::from_parts(3, &[], &[(1, 3), (3, 2), (2, 1)], &[]).unwrap();
        let p = extended_forward(&x);
        assert_eq!(p.sigma(), x.map());
        assert!(p.coloring().iter().all(|&c| c == Color::Black));

        // A = ∅ endofunction
        let x = MeixnerEndofunction::from_parts(2, &[], &[(1, 2), (2, 1)]).unwrap();
        assert_eq!(foata_forward(&x).sigma(), &[2, 1]);
    }

    #[test]
    fn fixed_black_point_absorbs_path() {
        // 1 -> 2 (white path), 2 fixed black: becomes the 2-cycle (1 2)
        let x = MeixnerEndofunction::from_parts(2, &[(1, 2)], &[(2, 2)]).unwrap();
        let p = foata_forward(&x);
        assert_eq!(p.sigma(), &[2, 1]);
        assert_eq!(foata_backward(&p).unwrap(), x);
    }

    #[test]
    fn backward_rejects_red_for_foata() {
        let p = ColoredPermutation::from_cycles(1, &[], &[], &[1]).unwrap();
        assert!(foata_backward(&p).is_err());
        assert!(extended_backward(&p).is_ok());
    }

    #[test]
    fn exhaustive_round_trip_small() {
        for m in 0..=4 {
            let mut images = HashSet::new();
            for x in enumerate_bi_endofunctions(m, 7).unwrap() {
                let p = extended_forward(&x);
                assert_eq!(extended_forward_reversed(&x), p);
                assert_eq!(extended_backward(&p).unwrap(), x);
                assert!(images.insert(p));
            }
            let all: HashSet<_> =
                crate::structures::enumerate_colored_permutations(m, Palette::Three, 7)
                    .unwrap()
                    .collect();
            assert_eq!(images, all);
            for x in enumerate_endofunctions(m, 7).unwrap() {
                assert_eq!(foata_backward(&foata_forward(&x)).unwrap(), x);
            }
        }
    }

    #[test]
    fn class_counts_are_preserved() {
        for x in enumerate_bi_endofunctions(4, 7).unwrap() {
            let c = x.components();
            let p = extended_forward(&x);
            assert_eq!(
                p.class_counts(),
                (c.a_cycles.len(), c.b_cycles.len(), c.c_cycles.len())
            );
            assert_eq!(p.count(Color::White), x.members(Block::A).len());
            assert_eq!(p.count(Color::Black), x.members(Block::B).len());
            assert_eq!(p.count(Color::Red), x.members(Block::C).len());
        }
    }
}
