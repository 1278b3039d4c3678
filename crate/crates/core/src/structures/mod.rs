//! Reluctant functions, Meixner (bi-)endofunctions and colored permutations,
//! with exhaustive deterministic enumerators.
//!
//! Ground-set elements are positive integers; structures on `[m]` use
//! `1..=m`. Enumerators refuse to run past a configurable `m` limit and
//! report the number of objects they would have produced.

mod colored;
mod meixner;
mod reluctant;
pub(crate) mod table;

use num_bigint::BigUint;

use crate::error::{Error, Result};

pub use colored::{
    colored_permutation_count, colored_permutations_with_coloring, colorings,
    enumerate_colored_permutations, satisfies_red_isolation, Color, ColoredPermutation, CycleClass,
    Palette,
};
pub use meixner::{
    bi_endofunction_count, bi_endofunctions_with_blocks, block_vectors, endofunction_count,
    endofunctions_with_blocks, enumerate_bi_endofunctions, enumerate_endofunctions, AttachedPath,
    Block, Components, MeixnerBiEndofunction, MeixnerEndofunction,
};
pub use reluctant::{
    canonical_word, cycle_weight_monomial, decompose, enumerate_reluctant, left_to_right_minima,
    parse_word, prop21_weighted_sum, CanonicalWord, DigraphDecomposition, ReluctantFunction,
};

pub const DEFAULT_BRUTE_LIMIT: usize = 7;

/// All permutations of `[m]` in one-line lexicographic order.
pub fn permutations(m: usize) -> impl Iterator<Item = Vec<usize>> {
    table::permutations(m)
}

pub fn permutation_count(m: usize) -> BigUint {
    crate::exactnum::factorial(m)
}

/// Refuses `m > limit`, reporting the estimated object count.
pub fn check_limit(what: &'static str, m: usize, limit: usize, estimate: BigUint) -> Result<()> {
    if m > limit {
        return Err(Error::LimitExceeded {
            what,
            m,
            limit,
            estimate: estimate.to_string(),
        });
    }
    Ok(())
}

/// Cycles of a permutation in one-line form, minimum-first and ordered by
/// increasing minimum.
pub fn cycles_of(sigma: &[usize]) -> Vec<Vec<usize>> {
    functional_cycles(sigma)
}

/// Cycles of the functional graph of a one-based table (`map[e - 1]` is the
/// image of `e`). Each cycle starts at its minimum, cycles ordered by
/// increasing minimum. Elements on tails leading into cycles are skipped.
pub(crate) fn functional_cycles(map: &[usize]) -> Vec<Vec<usize>> {
    const UNSEEN: u8 = 0;
    const ACTIVE: u8 = 1;
    const DONE: u8 = 2;
    let n = map.len();
    let mut state = vec![UNSEEN; n + 1];
    let mut cycles = Vec::new();
    for start in 1..=n {
        if state[start] != UNSEEN {
            continue;
        }
        let mut trail = Vec::new();
        let mut cur = start;
        while state[cur] == UNSEEN {
            state[cur] = ACTIVE;
            trail.push(cur);
            cur = map[cur - 1];
        }
        if state[cur] == ACTIVE {
            let at = trail.iter().position(|&x| x == cur).expect("on trail");
            let mut cycle = trail[at..].to_vec();
            let min_pos = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap();
            cycle.rotate_left(min_pos);
            cycles.push(cycle);
        }
        for x in trail {
            state[x] = DONE;
        }
    }
    cycles.sort_by_key(|c| c[0]);
    cycles
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn functional_cycles_of_permutation() {
        // (1 3)(2)(4 6 5)
        let sigma = [3, 2, 1, 6, 4, 5];
        assert_eq!(
            functional_cycles(&sigma),
            vec![vec![1, 3], vec![2], vec![4, 6, 5]]
        );
        assert!(functional_cycles(&[]).is_empty());
    }

    #[test]
    fn functional_cycles_skip_tails() {
        // 1 -> 2 -> 3 -> 2, 4 -> 4
        assert_eq!(functional_cycles(&[2, 3, 2, 4]), vec![vec![2, 3], vec![4]]);
    }

    #[test]
    fn limit_message_carries_estimate() {
        let err = check_limit("things", 9, 7, BigUint::from(123u32)).unwrap_err();
        assert_eq!(
            err.to_string(),
            "refusing to enumerate things for m = 9 above limit 7 (about 123 objects)"
        );
    }
}
