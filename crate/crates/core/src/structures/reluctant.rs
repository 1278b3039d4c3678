//! Reluctant functions: injective maps from A into A ∪ B, their cycle/path
//! decomposition, and the canonical cycle word.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::table::TableIter;
use crate::error::{Error, Result};
use crate::exactnum::{Poly, Rational};
use num_traits::One;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawReluctant", into = "RawReluctant")]
pub struct ReluctantFunction {
    a: BTreeSet<usize>,
    b: BTreeSet<usize>,
    f: BTreeMap<usize, usize>,
}

#[derive(Serialize, Deserialize)]
struct RawReluctant {
    #[serde(rename = "A")]
    a: Vec<usize>,
    #[serde(rename = "B")]
    b: Vec<usize>,
    f: Vec<[usize; 2]>,
}

impl TryFrom<RawReluctant> for ReluctantFunction {
    type Error = Error;
    fn try_from(raw: RawReluctant) -> Result<Self> {
        let a: BTreeSet<usize> = raw.a.iter().copied().collect();
        let b: BTreeSet<usize> = raw.b.iter().copied().collect();
        if a.len() != raw.a.len() || b.len() != raw.b.len() {
            return Err(Error::InvalidStructure("repeated set element".into()));
        }
        let mut f = BTreeMap::new();
        for [from, to] in raw.f {
            if f.insert(from, to).is_some() {
                return Err(Error::InvalidStructure(format!("{from} mapped twice")));
            }
        }
        ReluctantFunction::new(a, b, f)
    }
}

impl From<ReluctantFunction> for RawReluctant {
    fn from(r: ReluctantFunction) -> Self {
        RawReluctant {
            a: r.a.into_iter().collect(),
            b: r.b.into_iter().collect(),
            f: r.f.into_iter().map(|(x, y)| [x, y]).collect(),
        }
    }
}

impl ReluctantFunction {
    pub fn new(a: BTreeSet<usize>, b: BTreeSet<usize>, f: BTreeMap<usize, usize>) -> Result<Self> {
        if let Some(x) = a.intersection(&b).next() {
            return Err(Error::InvalidStructure(format!("{x} lies in both A and B")));
        }
        if !f.keys().copied().eq(a.iter().copied()) {
            return Err(Error::InvalidStructure(
                "domain of f must be exactly A".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        for (&x, &y) in &f {
            if !a.contains(&y) && !b.contains(&y) {
                return Err(Error::InvalidStructure(format!(
                    "f({x}) = {y} leaves A ∪ B"
                )));
            }
            if !seen.insert(y) {
                return Err(Error::InvalidStructure(format!(
                    "f is not injective at value {y}"
                )));
            }
        }
        Ok(ReluctantFunction { a, b, f })
    }

    /// Builds from a list of arcs `(x, f(x))`.
    pub fn from_arcs(a: &[usize], b: &[usize], arcs: &[(usize, usize)]) -> Result<Self> {
        ReluctantFunction::try_from(RawReluctant {
            a: a.to_vec(),
            b: b.to_vec(),
            f: arcs.iter().map(|&(x, y)| [x, y]).collect(),
        })
    }

    pub fn domain(&self) -> &BTreeSet<usize> {
        &self.a
    }

    pub fn targets(&self) -> &BTreeSet<usize> {
        &self.b
    }

    pub fn map(&self) -> &BTreeMap<usize, usize> {
        &self.f
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.f.get(&x).copied()
    }
}

/// Cycles (minimum first, ordered by decreasing minimum) and paths
/// (terminal first, then its preimage chain; ordered by increasing terminal).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphDecomposition {
    pub cycles: Vec<Vec<usize>>,
    pub paths: Vec<Vec<usize>>,
}

impl DigraphDecomposition {
    pub fn terminals(&self) -> Vec<usize> {
        self.paths.iter().map(|p| p[0]).collect()
    }
}

pub fn decompose(f: &ReluctantFunction) -> DigraphDecomposition {
    let preimage: BTreeMap<usize, usize> = f.f.iter().map(|(&x, &y)| (y, x)).collect();

    let mut paths = Vec::new();
    let mut on_path = BTreeSet::new();
    for &t in &f.b {
        let Some(&first) = preimage.get(&t) else {
            continue;
        };
        let mut path = vec![t, first];
        let mut cur = first;
        while let Some(&prev) = preimage.get(&cur) {
            path.push(prev);
            cur = prev;
        }
        on_path.extend(path[1..].iter().copied());
        paths.push(path);
    }

    // every A element off the paths lies on a cycle inside A
    let mut cycles = Vec::new();
    let mut seen = on_path;
    for &x in &f.a {
        if seen.contains(&x) {
            continue;
        }
        let mut cycle = vec![x];
        seen.insert(x);
        let mut cur = f.f[&x];
        while cur != x {
            cycle.push(cur);
            seen.insert(cur);
            cur = f.f[&cur];
        }
        cycles.push(cycle);
    }
    // x iterates in increasing order, so each cycle starts at its minimum
    cycles.reverse();
    DigraphDecomposition { cycles, paths }
}

/// The flattened canonical cycle representation together with A and B.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalWord {
    pub word: Vec<usize>,
    #[serde(rename = "A")]
    pub a: BTreeSet<usize>,
    #[serde(rename = "B")]
    pub b: BTreeSet<usize>,
}

pub fn canonical_word(f: &ReluctantFunction) -> CanonicalWord {
    let d = decompose(f);
    CanonicalWord {
        word: d.cycles.into_iter().chain(d.paths).flatten().collect(),
        a: f.a.clone(),
        b: f.b.clone(),
    }
}

/// Positions `i` with `seq[i] < seq[j]` for every `j < i`.
pub fn left_to_right_minima(seq: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut best = usize::MAX;
    for (i, &x) in seq.iter().enumerate() {
        if x < best {
            out.push(i);
            best = x;
        }
    }
    out
}

/// Inverts [`canonical_word`]: a parenthesis opens before every B element
/// and before every left-to-right minimum of the all-A prefix.
pub fn parse_word(w: &CanonicalWord) -> Result<ReluctantFunction> {
    let bad = |msg: String| Error::MalformedWord(msg);
    if let Some(x) = w.a.intersection(&w.b).next() {
        return Err(bad(format!("{x} lies in both A and B")));
    }
    let mut seen = BTreeSet::new();
    for &x in &w.word {
        if !w.a.contains(&x) && !w.b.contains(&x) {
            return Err(bad(format!("{x} is in neither A nor B")));
        }
        if !seen.insert(x) {
            return Err(bad(format!("{x} repeated")));
        }
    }
    if let Some(x) = w.a.iter().find(|x| !seen.contains(x)) {
        return Err(bad(format!("element {x} of A missing")));
    }

    let split = w
        .word
        .iter()
        .position(|x| w.b.contains(x))
        .unwrap_or(w.word.len());
    let (prefix, rest) = w.word.split_at(split);

    let mut f = BTreeMap::new();
    let starts = left_to_right_minima(prefix);
    for (s, &start) in starts.iter().enumerate() {
        let end = starts.get(s + 1).copied().unwrap_or(prefix.len());
        let cycle = &prefix[start..end];
        for (k, &x) in cycle.iter().enumerate() {
            f.insert(x, cycle[(k + 1) % cycle.len()]);
        }
    }

    let mut last_terminal = None;
    let mut i = 0;
    while i < rest.len() {
        let t = rest[i];
        if last_terminal.is_some_and(|prev| prev >= t) {
            return Err(bad(format!("terminal {t} out of increasing order")));
        }
        last_terminal = Some(t);
        let mut j = i + 1;
        while j < rest.len() && !w.b.contains(&rest[j]) {
            j += 1;
        }
        if j == i + 1 {
            return Err(bad(format!("terminal {t} has an empty path")));
        }
        for k in i + 1..j {
            f.insert(rest[k], rest[k - 1]);
        }
        i = j;
    }
    ReluctantFunction::new(w.a.clone(), w.b.clone(), f).map_err(|e| bad(e.to_string()))
}

/// `a^k` where k counts the cycles of the functional digraph.
pub fn cycle_weight_monomial(f: &ReluctantFunction) -> Poly {
    Poly::monomial(Rational::one(), decompose(f).cycles.len())
}

/// All reluctant functions from A to B, lexicographic in the table
/// `(f(a_1), f(a_2), ...)` for `a_1 < a_2 < ...`.
pub fn enumerate_reluctant(
    a: &BTreeSet<usize>,
    b: &BTreeSet<usize>,
) -> Result<impl Iterator<Item = ReluctantFunction>> {
    if let Some(x) = a.intersection(b).next() {
        return Err(Error::InvalidStructure(format!("{x} lies in both A and B")));
    }
    let codomain: Vec<usize> = a.union(b).copied().collect();
    let domain: Vec<usize> = a.iter().copied().collect();
    let tables = TableIter::new(vec![codomain; domain.len()], vec![0; domain.len()]);
    let (a, b) = (a.clone(), b.clone());
    Ok(tables.map(move |t| ReluctantFunction {
        a: a.clone(),
        b: b.clone(),
        f: domain.iter().copied().zip(t).collect(),
    }))
}

/// Σ a^{cycles(f)} over reluctant functions from A = {1..i} to B = {i+1..i+j}.
pub fn prop21_weighted_sum(i: usize, j: usize) -> Poly {
    let a: BTreeSet<usize> = (1..=i).collect();
    let b: BTreeSet<usize> = (i + 1..=i + j).collect();
    let mut counts = vec![0u64; i + 1];
    for f in enumerate_reluctant(&a, &b).expect("disjoint by construction") {
        counts[decompose(&f).cycles.len()] += 1;
    }
    Poly::from_coeffs(
        counts
            .into_iter()
            .map(|c| Rational::from_integer(c.into()))
            .collect(),
    )
}
