//! Meixner endofunctions `(A, B; π_A; π_B)` and bi-endofunctions
//! `(A, B, C; π_A; π_B, π_C)` on `[m] = {1, ..., m}`.
//!
//! Both are stored as a block assignment plus a single function table
//! `map[e - 1]`, the image of `e` under whichever of π_A, π_B, π_C owns `e`.
//! The only difference between the two types is the codomain of π_A: all of
//! `[m]` for an endofunction, `A ∪ B` for a bi-endofunction. With `C = ∅`
//! these coincide.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::table::{assignments, TableIter};
use super::{check_limit, functional_cycles};
use crate::error::{Error, Result};
use num_bigint::BigUint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Block {
    A,
    B,
    C,
}

/// A maximal chain `start -> ... -> last -> terminal` of A elements hanging
/// off the B element `terminal`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttachedPath {
    pub terminal: usize,
    /// In arrow order, ending with the element whose image is `terminal`.
    pub elements: Vec<usize>,
}

/// Cycles of π_A, π_B and π_C (each minimum-first, increasing minima) and the
/// π_A paths attached to B elements (increasing terminal).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Components {
    pub a_cycles: Vec<Vec<usize>>,
    pub b_cycles: Vec<Vec<usize>>,
    pub c_cycles: Vec<Vec<usize>>,
    pub paths: Vec<AttachedPath>,
}

fn components(blocks: &[Block], map: &[usize]) -> Components {
    let mut out = Components::default();
    for cycle in functional_cycles(map) {
        // every functional cycle is monochromatic: B and C are closed under the map
        match blocks[cycle[0] - 1] {
            Block::A => out.a_cycles.push(cycle),
            Block::B => out.b_cycles.push(cycle),
            Block::C => out.c_cycles.push(cycle),
        }
    }
    let mut a_preimage = vec![0usize; map.len() + 1];
    for (i, &y) in map.iter().enumerate() {
        if blocks[i] == Block::A {
            a_preimage[y] = i + 1;
        }
    }
    for x in 1..=map.len() {
        if blocks[x - 1] != Block::B || a_preimage[x] == 0 {
            continue;
        }
        let mut elements = vec![a_preimage[x]];
        while a_preimage[*elements.last().unwrap()] != 0 {
            elements.push(a_preimage[*elements.last().unwrap()]);
        }
        elements.reverse();
        out.paths.push(AttachedPath {
            terminal: x,
            elements,
        });
    }
    out
}

fn validate(blocks: &[Block], map: &[usize], pi_a_into_all: bool) -> Result<()> {
    let m = blocks.len();
    let bad = |msg: String| Err(Error::InvalidStructure(msg));
    if map.len() != m {
        return bad(format!("map has {} entries for m = {m}", map.len()));
    }
    let mut hit = vec![[false; 3]; m + 1];
    for (i, (&blk, &y)) in blocks.iter().zip(map).enumerate() {
        let x = i + 1;
        if y == 0 || y > m {
            return bad(format!("{x} maps to {y} outside [{m}]"));
        }
        let target = blocks[y - 1];
        let allowed = match blk {
            Block::A if pi_a_into_all => true,
            Block::A => target != Block::C,
            other => target == other,
        };
        if !allowed {
            return bad(format!("{x} in {blk:?} maps to {y} in {target:?}"));
        }
        let slot = &mut hit[y][blk as usize];
        if *slot {
            return bad(format!("two elements of {blk:?} map to {y}"));
        }
        *slot = true;
    }
    Ok(())
}

fn members(blocks: &[Block], which: Block) -> Vec<usize> {
    (1..=blocks.len())
        .filter(|&e| blocks[e - 1] == which)
        .collect()
}

fn restricted(blocks: &[Block], map: &[usize], which: Block) -> BTreeMap<usize, usize> {
    members(blocks, which)
        .into_iter()
        .map(|e| (e, map[e - 1]))
        .collect()
}

macro_rules! shared_accessors {
    () => {
        pub fn m(&self) -> usize {
            self.blocks.len()
        }

        pub fn blocks(&self) -> &[Block] {
            &self.blocks
        }

        /// One-based function table: `map()[e - 1]` is the image of `e`.
        pub fn map(&self) -> &[usize] {
            &self.map
        }

        pub fn block_of(&self, e: usize) -> Block {
            self.blocks[e - 1]
        }

        pub fn members(&self, which: Block) -> Vec<usize> {
            members(&self.blocks, which)
        }

        pub fn pi_a(&self) -> BTreeMap<usize, usize> {
            restricted(&self.blocks, &self.map, Block::A)
        }

        pub fn pi_b(&self) -> BTreeMap<usize, usize> {
            restricted(&self.blocks, &self.map, Block::B)
        }

        pub fn components(&self) -> Components {
            components(&self.blocks, &self.map)
        }
    };
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMeixner", into = "RawMeixner")]
pub struct MeixnerEndofunction {
    blocks: Vec<Block>,
    map: Vec<usize>,
}

impl MeixnerEndofunction {
    pub fn new(blocks: Vec<Block>, map: Vec<usize>) -> Result<Self> {
        if blocks.contains(&Block::C) {
            return Err(Error::InvalidStructure(
                "endofunctions have no C block".into(),
            ));
        }
        validate(&blocks, &map, true)?;
        Ok(MeixnerEndofunction { blocks, map })
    }

    /// From `A`, the arcs of π_A, and the arcs of π_B; elements of `[m]` not
    /// in `A` form `B`.
    pub fn from_parts(m: usize, pi_a: &[(usize, usize)], pi_b: &[(usize, usize)]) -> Result<Self> {
        let (blocks, map) = assemble(m, &[(Block::A, pi_a), (Block::B, pi_b)])?;
        Self::new(blocks, map)
    }

    shared_accessors!();
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMeixner", into = "RawMeixner")]
pub struct MeixnerBiEndofunction {
    blocks: Vec<Block>,
    map: Vec<usize>,
}

impl MeixnerBiEndofunction {
    pub fn new(blocks: Vec<Block>, map: Vec<usize>) -> Result<Self> {
        validate(&blocks, &map, false)?;
        Ok(MeixnerBiEndofunction { blocks, map })
    }

    pub fn from_parts(
        m: usize,
        pi_a: &[(usize, usize)],
        pi_b: &[(usize, usize)],
        pi_c: &[(usize, usize)],
    ) -> Result<Self> {
        let (blocks, map) = assemble(m, &[(Block::A, pi_a), (Block::B, pi_b), (Block::C, pi_c)])?;
        Self::new(blocks, map)
    }

    pub fn pi_c(&self) -> BTreeMap<usize, usize> {
        restricted(&self.blocks, &self.map, Block::C)
    }

    shared_accessors!();
}

impl From<MeixnerEndofunction> for MeixnerBiEndofunction {
    fn from(x: MeixnerEndofunction) -> Self {
        MeixnerBiEndofunction {
            blocks: x.blocks,
            map: x.map,
        }
    }
}

impl TryFrom<MeixnerBiEndofunction> for MeixnerEndofunction {
    type Error = Error;
    fn try_from(x: MeixnerBiEndofunction) -> Result<Self> {
        MeixnerEndofunction::new(x.blocks, x.map)
    }
}

fn assemble(m: usize, parts: &[(Block, &[(usize, usize)])]) -> Result<(Vec<Block>, Vec<usize>)> {
    let mut blocks = vec![None; m];
    let mut map = vec![0; m];
    for &(blk, arcs) in parts {
        for &(x, y) in arcs {
            if x == 0 || x > m {
                return Err(Error::InvalidStructure(format!("{x} outside [{m}]")));
            }
            if blocks[x - 1].is_some() {
                return Err(Error::InvalidStructure(format!("{x} assigned twice")));
            }
            blocks[x - 1] = Some(blk);
            map[x - 1] = y;
        }
    }
    let blocks = blocks
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::InvalidStructure(format!("{} has no image", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    Ok((blocks, map))
}

/// JSON form: sets as sorted arrays, π_A as `[from, to]` pairs, π_B and π_C
/// in one-line notation over their sorted blocks.
#[derive(Serialize, Deserialize)]
struct RawMeixner {
    m: usize,
    #[serde(rename = "A")]
    a: Vec<usize>,
    #[serde(rename = "B")]
    b: Vec<usize>,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    c: Option<Vec<usize>>,
    #[serde(rename = "piA")]
    pi_a: Vec<[usize; 2]>,
    #[serde(rename = "piB")]
    pi_b: Vec<usize>,
    #[serde(rename = "piC", default, skip_serializing_if = "Option::is_none")]
    pi_c: Option<Vec<usize>>,
}

impl RawMeixner {
    fn from_table(blocks: &[Block], map: &[usize], with_c: bool) -> Self {
        let one_line = |which| -> Vec<usize> {
            members(blocks, which)
                .into_iter()
                .map(|e| map[e - 1])
                .collect()
        };
        RawMeixner {
            m: blocks.len(),
            a: members(blocks, Block::A),
            b: members(blocks, Block::B),
            c: with_c.then(|| members(blocks, Block::C)),
            pi_a: restricted(blocks, map, Block::A)
                .into_iter()
                .map(|(x, y)| [x, y])
                .collect(),
            pi_b: one_line(Block::B),
            pi_c: with_c.then(|| one_line(Block::C)),
        }
    }

    fn into_table(self) -> Result<(Vec<Block>, Vec<usize>)> {
        let bad = |msg: &str| Error::InvalidStructure(msg.to_string());
        let c = self.c.unwrap_or_default();
        let pi_c = self.pi_c.unwrap_or_default();
        if self.pi_b.len() != self.b.len() || pi_c.len() != c.len() {
            return Err(bad("one-line permutation length differs from its block"));
        }
        if self.pi_a.len() != self.a.len() {
            return Err(bad("piA must have one pair per element of A"));
        }
        if self.pi_a.iter().map(|p| p[0]).ne(self.a.iter().copied()) {
            return Err(bad("piA pairs must list A in increasing order"));
        }
        for set in [&self.a, &self.b, &c] {
            if set.windows(2).any(|w| w[0] >= w[1]) {
                return Err(bad("sets must be strictly increasing"));
            }
        }
        let a: Vec<(usize, usize)> = self.pi_a.iter().map(|p| (p[0], p[1])).collect();
        let b: Vec<(usize, usize)> = self.b.iter().copied().zip(self.pi_b).collect();
        let c: Vec<(usize, usize)> = c.iter().copied().zip(pi_c).collect();
        assemble(self.m, &[(Block::A, &a), (Block::B, &b), (Block::C, &c)])
    }
}

impl TryFrom<RawMeixner> for MeixnerEndofunction {
    type Error = Error;
    fn try_from(raw: RawMeixner) -> Result<Self> {
        let (blocks, map) = raw.into_table()?;
        MeixnerEndofunction::new(blocks, map)
    }
}

impl From<MeixnerEndofunction> for RawMeixner {
    fn from(x: MeixnerEndofunction) -> Self {
        RawMeixner::from_table(&x.blocks, &x.map, false)
    }
}

impl TryFrom<RawMeixner> for MeixnerBiEndofunction {
    type Error = Error;
    fn try_from(raw: RawMeixner) -> Result<Self> {
        let (blocks, map) = raw.into_table()?;
        MeixnerBiEndofunction::new(blocks, map)
    }
}

impl From<MeixnerBiEndofunction> for RawMeixner {
    fn from(x: MeixnerBiEndofunction) -> Self {
        RawMeixner::from_table(&x.blocks, &x.map, true)
    }
}

const BLOCKS: [Block; 3] = [Block::A, Block::B, Block::C];

/// Block assignment vectors over `n_blocks` blocks (2 or 3), lexicographic
/// with element 1 most significant and A < B < C.
pub fn block_vectors(m: usize, n_blocks: usize) -> impl Iterator<Item = Vec<Block>> {
    assert!((1..=3).contains(&n_blocks));
    assignments(m, n_blocks).map(|v| v.into_iter().map(|d| BLOCKS[d]).collect())
}

fn tables_for(blocks: &[Block], pi_a_into_all: bool) -> TableIter {
    let m = blocks.len();
    let all: Vec<usize> = (1..=m).collect();
    let a_or_b: Vec<usize> = all
        .iter()
        .copied()
        .filter(|&e| blocks[e - 1] != Block::C)
        .collect();
    let candidates = blocks
        .iter()
        .map(|&blk| match blk {
            Block::A if pi_a_into_all => all.clone(),
            Block::A => a_or_b.clone(),
            other => members(blocks, other),
        })
        .collect();
    let groups = blocks.iter().map(|&b| b as usize).collect();
    TableIter::new(candidates, groups)
}

/// All endofunctions with the given block assignment, lexicographic in the table.
pub fn endofunctions_with_blocks(blocks: Vec<Block>) -> impl Iterator<Item = MeixnerEndofunction> {
    assert!(!blocks.contains(&Block::C));
    tables_for(&blocks, true).map(move |map| MeixnerEndofunction {
        blocks: blocks.clone(),
        map,
    })
}

/// All bi-endofunctions with the given block assignment, lexicographic in the table.
pub fn bi_endofunctions_with_blocks(
    blocks: Vec<Block>,
) -> impl Iterator<Item = MeixnerBiEndofunction> {
    tables_for(&blocks, false).map(move |map| MeixnerBiEndofunction {
        blocks: blocks.clone(),
        map,
    })
}

/// 2^m m!
pub fn endofunction_count(m: usize) -> BigUint {
    crate::exactnum::factorial(m) << m
}

/// m! (2^{m+1} - 1)
pub fn bi_endofunction_count(m: usize) -> BigUint {
    crate::exactnum::factorial(m) * ((BigUint::from(1u32) << (m + 1)) - 1u32)
}

pub fn enumerate_endofunctions(
    m: usize,
    limit: usize,
) -> Result<impl Iterator<Item = MeixnerEndofunction>> {
    check_limit("Meixner endofunctions", m, limit, endofunction_count(m))?;
    Ok(block_vectors(m, 2).flat_map(endofunctions_with_blocks))
}

pub fn enumerate_bi_endofunctions(
    m: usize,
    limit: usize,
) -> Result<impl Iterator<Item = MeixnerBiEndofunction>> {
    check_limit(
        "Meixner bi-endofunctions",
        m,
        limit,
        bi_endofunction_count(m),
    )?;
    Ok(block_vectors(m, 3).flat_map(bi_endofunctions_with_blocks))
}
