//! Permutations of `[m]` with a 2- or 3-coloring. In the 3-color case no
//! cycle may contain a red element together with a non-red one.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::table::{assignments, TableIter};
use super::{check_limit, functional_cycles};
use crate::error::{Error, Result};
use crate::exactnum::factorial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Black,
    Red,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::White => "white",
            Color::Black => "black",
            Color::Red => "red",
        })
    }
}

/// Number of colors in play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Palette {
    Two,
    Three,
}

impl Palette {
    pub fn colors(self) -> &'static [Color] {
        match self {
            Palette::Two => &[Color::White, Color::Black],
            Palette::Three => &[Color::White, Color::Black, Color::Red],
        }
    }
}

/// The color content of one cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CycleClass {
    AllWhite,
    /// At least one black element, the rest white.
    HasBlack,
    AllRed,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawColored", into = "RawColored")]
pub struct ColoredPermutation {
    coloring: Vec<Color>,
    sigma: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawColored {
    m: usize,
    coloring: Vec<Color>,
    sigma: Vec<usize>,
}

impl TryFrom<RawColored> for ColoredPermutation {
    type Error = Error;
    fn try_from(raw: RawColored) -> Result<Self> {
        if raw.coloring.len() != raw.m {
            return Err(Error::InvalidStructure(format!(
                "coloring has {} entries for m = {}",
                raw.coloring.len(),
                raw.m
            )));
        }
        ColoredPermutation::new(raw.coloring, raw.sigma)
    }
}

impl From<ColoredPermutation> for RawColored {
    fn from(p: ColoredPermutation) -> Self {
        RawColored {
            m: p.m(),
            coloring: p.coloring,
            sigma: p.sigma,
        }
    }
}

/// Whether `sigma` (one-line, one-based) maps red elements to red elements
/// only; for a permutation this is the same as no cycle mixing red and non-red.
pub fn satisfies_red_isolation(coloring: &[Color], sigma: &[usize]) -> bool {
    first_mixed_cycle(coloring, sigma).is_none()
}

fn first_mixed_cycle(coloring: &[Color], sigma: &[usize]) -> Option<usize> {
    functional_cycles(sigma).into_iter().find_map(|cycle| {
        let reds = cycle
            .iter()
            .filter(|&&e| coloring[e - 1] == Color::Red)
            .count();
        (reds != 0 && reds != cycle.len()).then_some(cycle[0])
    })
}

fn is_permutation(sigma: &[usize]) -> bool {
    let mut seen = vec![false; sigma.len() + 1];
    sigma
        .iter()
        .all(|&y| (1..=sigma.len()).contains(&y) && !std::mem::replace(&mut seen[y], true))
}

impl ColoredPermutation {
    pub fn new(coloring: Vec<Color>, sigma: Vec<usize>) -> Result<Self> {
        if coloring.len() != sigma.len() || !is_permutation(&sigma) {
            return Err(Error::InvalidStructure(format!(
                "{sigma:?} is not a permutation of [{}]",
                coloring.len()
            )));
        }
        if let Some(e) = first_mixed_cycle(&coloring, &sigma) {
            return Err(Error::RedIsolation(e));
        }
        Ok(ColoredPermutation { coloring, sigma })
    }

    /// From cycles in arrow order and explicit color lists; unlisted
    /// elements are white.
    pub fn from_cycles(
        m: usize,
        cycles: &[&[usize]],
        black: &[usize],
        red: &[usize],
    ) -> Result<Self> {
        let mut sigma = vec![0; m];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x == 0 || x > m || sigma[x - 1] != 0 {
                    return Err(Error::InvalidStructure(format!("bad cycle element {x}")));
                }
                sigma[x - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        for (i, s) in sigma.iter_mut().enumerate() {
            if *s == 0 {
                *s = i + 1;
            }
        }
        let mut coloring = vec![Color::White; m];
        for (list, color) in [(black, Color::Black), (red, Color::Red)] {
            for &x in list {
                if x == 0 || x > m {
                    return Err(Error::InvalidStructure(format!("{x} outside [{m}]")));
                }
                coloring[x - 1] = color;
            }
        }
        Self::new(coloring, sigma)
    }

    pub fn m(&self) -> usize {
        self.sigma.len()
    }

    pub fn coloring(&self) -> &[Color] {
        &self.coloring
    }

    pub fn color(&self, e: usize) -> Color {
        self.coloring[e - 1]
    }

    /// One-line notation: `sigma()[e - 1]` is the image of `e`.
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn apply(&self, e: usize) -> usize {
        self.sigma[e - 1]
    }

    pub fn uses_red(&self) -> bool {
        self.coloring.contains(&Color::Red)
    }

    pub fn count(&self, color: Color) -> usize {
        self.coloring.iter().filter(|&&c| c == color).count()
    }

    /// Cycles minimum-first, ordered by increasing minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        functional_cycles(&self.sigma)
    }

    pub fn cycle_class(&self, cycle: &[usize]) -> CycleClass {
        if cycle.iter().any(|&e| self.color(e) == Color::Red) {
            CycleClass::AllRed
        } else if cycle.iter().any(|&e| self.color(e) == Color::Black) {
            CycleClass::HasBlack
        } else {
            CycleClass::AllWhite
        }
    }

    /// Number of cycles in each class, as (all-white, has-black, all-red).
    pub fn class_counts(&self) -> (usize, usize, usize) {
        let mut counts = (0, 0, 0);
        for cycle in self.cycles() {
            match self.cycle_class(&cycle) {
                CycleClass::AllWhite => counts.0 += 1,
                CycleClass::HasBlack => counts.1 += 1,
                CycleClass::AllRed => counts.2 += 1,
            }
        }
        counts
    }
}

/// 2^m m! for two colors, m! (2^{m+1} - 1) for three.
pub fn colored_permutation_count(m: usize, palette: Palette) -> BigUint {
    match palette {
        Palette::Two => factorial(m) << m,
        Palette::Three => factorial(m) * ((BigUint::from(1u32) << (m + 1)) - 1u32),
    }
}

/// Valid permutations for a fixed coloring: red elements permuted among
/// themselves, everything else among itself.
pub fn colored_permutations_with_coloring(
    coloring: Vec<Color>,
) -> impl Iterator<Item = ColoredPermutation> {
    let reds: Vec<usize> = (1..=coloring.len())
        .filter(|&e| coloring[e - 1] == Color::Red)
        .collect();
    let others: Vec<usize> = (1..=coloring.len())
        .filter(|&e| coloring[e - 1] != Color::Red)
        .collect();
    let candidates = coloring
        .iter()
        .map(|&c| {
            if c == Color::Red {
                reds.clone()
            } else {
                others.clone()
            }
        })
        .collect();
    let groups = coloring
        .iter()
        .map(|&c| (c == Color::Red) as usize)
        .collect();
    TableIter::new(candidates, groups).map(move |sigma| ColoredPermutation {
        coloring: coloring.clone(),
        sigma,
    })
}

/// Colorings of `[m]` in lexicographic order (white < black < red).
pub fn colorings(m: usize, palette: Palette) -> impl Iterator<Item = Vec<Color>> {
    let colors = palette.colors();
    assignments(m, colors.len()).map(move |v| v.into_iter().map(|d| colors[d]).collect())
}

/// Every valid (coloring, permutation) pair, lexicographic in
/// (coloring, one-line permutation).
pub fn enumerate_colored_permutations(
    m: usize,
    palette: Palette,
    limit: usize,
) -> Result<impl Iterator<Item = ColoredPermutation>> {
    check_limit(
        "colored permutations",
        m,
        limit,
        colored_permutation_count(m, palette),
    )?;
    Ok(colorings(m, palette).flat_map(colored_permutations_with_coloring))
}
