//! Lexicographic enumeration of function tables under per-element candidate
//! lists and per-group injectivity.

/// Walks every table `t` with `t[e] ∈ candidates[e]` and `t[e] != t[e']`
/// whenever `group[e] == group[e']`, in lexicographic order of the table.
/// Candidate lists must be sorted ascending; values are positive integers.
pub(crate) struct TableIter {
    candidates: Vec<Vec<usize>>,
    group: Vec<usize>,
    // used[g][v] is true when value v is taken inside group g
    used: Vec<Vec<bool>>,
    // cursor[e] is the index into candidates[e] currently assigned
    cursor: Vec<usize>,
    table: Vec<usize>,
    depth: usize,
    started: bool,
    done: bool,
}

impl TableIter {
    pub(crate) fn new(candidates: Vec<Vec<usize>>, group: Vec<usize>) -> Self {
        assert_eq!(candidates.len(), group.len());
        let max_value = candidates.iter().flatten().copied().max().unwrap_or(0);
        let groups = group.iter().copied().max().map_or(0, |g| g + 1);
        let n = candidates.len();
        TableIter {
            candidates,
            group,
            used: vec![vec![false; max_value + 1]; groups],
            cursor: vec![0; n],
            table: vec![0; n],
            depth: 0,
            started: false,
            done: false,
        }
    }

    fn release(&mut self, e: usize) {
        let v = self.table[e];
        self.used[self.group[e]][v] = false;
    }

    /// Tries candidates of element `e` starting at `cursor[e]`.
    fn place(&mut self, e: usize) -> bool {
        let g = self.group[e];
        while self.cursor[e] < self.candidates[e].len() {
            let v = self.candidates[e][self.cursor[e]];
            if !self.used[g][v] {
                self.used[g][v] = true;
                self.table[e] = v;
                return true;
            }
            self.cursor[e] += 1;
        }
        false
    }

    /// Depth-first search from the current depth until the table is full
    /// or the search space is exhausted.
    fn descend(&mut self) -> bool {
        let n = self.candidates.len();
        loop {
            if self.depth == n {
                return true;
            }
            let e = self.depth;
            if self.place(e) {
                self.depth += 1;
                if self.depth < n {
                    self.cursor[self.depth] = 0;
                }
            } else if !self.backtrack() {
                return false;
            }
        }
    }

    /// Moves the deepest placed element to its next candidate slot.
    fn backtrack(&mut self) -> bool {
        if self.depth == 0 {
            return false;
        }
        self.depth -= 1;
        let e = self.depth;
        self.release(e);
        self.cursor[e] += 1;
        true
    }
}

impl Iterator for TableIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if self.started && !self.backtrack() {
            self.done = true;
            return None;
        }
        self.started = true;
        if self.descend() {
            Some(self.table.clone())
        } else {
            self.done = true;
            None
        }
    }
}

/// All permutations of `1..=m` in lexicographic one-line order.
pub(crate) fn permutations(m: usize) -> TableIter {
    let all: Vec<usize> = (1..=m).collect();
    TableIter::new(vec![all; m], vec![0; m])
}

/// Every vector in `{0..base}^len`, lexicographic with position 0 most significant.
pub(crate) fn assignments(len: usize, base: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = base
        .checked_pow(len as u32)
        .expect("assignment count overflow");
    (0..total).map(move |mut code| {
        let mut v = vec![0; len];
        for slot in v.iter_mut().rev() {
            *slot = code % base;
            code /= base;
        }
        v
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_in_lex_order() {
        let perms: Vec<_> = permutations(3).collect();
        assert_eq!(
            perms,
            vec![
                vec![1, 2, 3],
                vec![1, 3, 2],
                vec![2, 1, 3],
                vec![2, 3, 1],
                vec![3, 1, 2],
                vec![3, 2, 1]
            ]
        );
        assert_eq!(
            permutations(0).collect::<Vec<_>>(),
            vec![Vec::<usize>::new()]
        );
        assert_eq!(permutations(6).count(), 720);
    }

    #[test]
    fn injections_into_larger_set() {
        // injections {1,2} -> {1,2,3}
        let it = TableIter::new(vec![vec![1, 2, 3]; 2], vec![0, 0]);
        assert_eq!(it.count(), 6);
    }

    #[test]
    fn groups_are_independent() {
        // two groups each mapping a single element onto {1}: no collision across groups
        let it = TableIter::new(vec![vec![1], vec![1]], vec![0, 1]);
        assert_eq!(it.collect::<Vec<_>>(), vec![vec![1, 1]]);
        let it = TableIter::new(vec![vec![1], vec![1]], vec![0, 0]);
        assert_eq!(it.count(), 0);
    }

    #[test]
    fn empty_candidates_yield_nothing() {
        let it = TableIter::new(vec![vec![]], vec![0]);
        assert_eq!(it.count(), 0);
    }

    #[test]
    fn assignment_vectors() {
        let v: Vec<_> = assignments(2, 2).collect();
        assert_eq!(v, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(assignments(0, 3).count(), 1);
        assert_eq!(assignments(4, 3).count(), 81);
    }
}
