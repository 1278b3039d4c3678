//! Weight schemes on Meixner (bi-)endofunctions and colored permutations,
//! the two sides of the rescaled identity
//!
//! ```text
//! Σ_{i+j+k=m} C(m;i,j,k) (-m)_i (-m-1/2)_j (j+1/2)_k ((a+1)/2)^j ((-a+1)/2)^k
//!     = Σ_{i+j=m} C(m;i,j) (1/2-j)_j (m+1)_i ((-a-1)/2)^i,
//! ```
//!
//! their brute-force counterparts, and the per-cycle contributions that make
//! the two weightings agree cycle by cycle.
//!
//! On the left, the block sizes are |C| = i, |B| = j, |A| = k; on the right,
//! |B| = i and |A| = j.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boros_moll::{p_double_sum, p_single_sum};
use crate::error::{Error, Result};
use crate::exactnum::{
    binomial, factorial, half, int, multinomial, rising_factorial, to_rational, Poly, Rational,
};
use crate::structures::{
    bi_endofunction_count, bi_endofunctions_with_blocks, block_vectors, check_limit,
    colored_permutation_count, colored_permutations_with_coloring, colorings, endofunction_count,
    endofunctions_with_blocks, permutation_count, permutations, Block, Color, ColoredPermutation,
    CycleClass, MeixnerBiEndofunction, MeixnerEndofunction, Palette,
};

/// Which weighting is in force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeKind {
    /// Bi-endofunctions and 3-colored permutations (left-hand side).
    ThreeColored,
    /// Endofunctions and bi-colored permutations (right-hand side).
    Bicolored,
}

/// Element weights per color (A = white, B = black, C = red) and cycle
/// weights per cycle class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightScheme {
    pub kind: SchemeKind,
    pub m: usize,
    pub element_weight: BTreeMap<Color, Poly>,
    #[serde(serialize_with = "ser_cycle_weights")]
    pub cycle_weight: BTreeMap<Color, Rational>,
}

fn ser_cycle_weights<S: serde::Serializer>(
    w: &BTreeMap<Color, Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(w.iter().map(|(c, r)| (c, r.to_string())))
}

impl WeightScheme {
    /// A ↦ (-a+1)/2, B ↦ (a+1)/2, C ↦ 1; cycles of π_A ↦ 1/2, π_B ↦ -m-1/2, π_C ↦ -m.
    pub fn three_colored(m: usize) -> Self {
        let mq = int(m as i64);
        WeightScheme {
            kind: SchemeKind::ThreeColored,
            m,
            element_weight: BTreeMap::from([
                (Color::White, Poly::linear(half(), -half())),
                (Color::Black, Poly::linear(half(), half())),
                (Color::Red, Poly::one()),
            ]),
            cycle_weight: BTreeMap::from([
                (Color::White, half()),
                (Color::Black, -&mq - half()),
                (Color::Red, -mq),
            ]),
        }
    }

    /// A ↦ 1, B ↦ (-a-1)/2; cycles of π_A ↦ 1/2-m, π_B ↦ 1+m.
    pub fn bicolored(m: usize) -> Self {
        let mq = int(m as i64);
        WeightScheme {
            kind: SchemeKind::Bicolored,
            m,
            element_weight: BTreeMap::from([
                (Color::White, Poly::one()),
                (Color::Black, Poly::linear(-half(), -half())),
            ]),
            cycle_weight: BTreeMap::from([
                (Color::White, half() - &mq),
                (Color::Black, mq + int(1)),
            ]),
        }
    }

    pub fn for_kind(kind: SchemeKind, m: usize) -> Self {
        match kind {
            SchemeKind::ThreeColored => Self::three_colored(m),
            SchemeKind::Bicolored => Self::bicolored(m),
        }
    }

    /// Weight of a structure with `elements[c]` elements and `cycles[c]`
    /// cycles of each color class (indexed white, black, red).
    pub fn weight_from_counts(&self, elements: [usize; 3], cycles: [usize; 3]) -> Result<Poly> {
        let mut w = Poly::one();
        let mut c = Rational::one();
        for (idx, color) in [Color::White, Color::Black, Color::Red]
            .into_iter()
            .enumerate()
        {
            if elements[idx] == 0 && cycles[idx] == 0 {
                continue;
            }
            let (Some(ew), Some(cw)) = (
                self.element_weight.get(&color),
                self.cycle_weight.get(&color),
            ) else {
                return Err(Error::InvalidArgument(format!(
                    "{color} elements carry no weight under the {:?} scheme",
                    self.kind
                )));
            };
            w = &w * &ew.pow(elements[idx]);
            c *= num_traits::pow(cw.clone(), cycles[idx]);
        }
        Ok(w.scale(&c))
    }
}

fn class_index(class: CycleClass) -> usize {
    match class {
        CycleClass::AllWhite => 0,
        CycleClass::HasBlack => 1,
        CycleClass::AllRed => 2,
    }
}

fn meixner_counts(blocks: &[Block], a: usize, b: usize, c: usize) -> ([usize; 3], [usize; 3]) {
    let mut elements = [0; 3];
    for &blk in blocks {
        elements[blk as usize] += 1;
    }
    (elements, [a, b, c])
}

/// Product of element weights and cycle weights; π_A paths carry element
/// weights only.
pub fn weight_bi_endofunction(x: &MeixnerBiEndofunction) -> Poly {
    let comps = x.components();
    let (e, c) = meixner_counts(
        x.blocks(),
        comps.a_cycles.len(),
        comps.b_cycles.len(),
        comps.c_cycles.len(),
    );
    WeightScheme::three_colored(x.m())
        .weight_from_counts(e, c)
        .expect("three-colored scheme weighs every block")
}

pub fn weight_endofunction(x: &MeixnerEndofunction) -> Poly {
    let comps = x.components();
    let (e, c) = meixner_counts(x.blocks(), comps.a_cycles.len(), comps.b_cycles.len(), 0);
    WeightScheme::bicolored(x.m())
        .weight_from_counts(e, c)
        .expect("bicolored scheme weighs A and B")
}

/// Product of element weights and cycle-class weights. Red elements are
/// rejected under the bicolored scheme.
pub fn weight_colored_permutation(p: &ColoredPermutation, scheme: &WeightScheme) -> Result<Poly> {
    if p.m() != scheme.m {
        return Err(Error::InvalidArgument(format!(
            "permutation on [{}] weighed with a scheme for m = {}",
            p.m(),
            scheme.m
        )));
    }
    let elements = [
        p.count(Color::White),
        p.count(Color::Black),
        p.count(Color::Red),
    ];
    let mut cycles = [0; 3];
    for cycle in p.cycles() {
        cycles[class_index(p.cycle_class(&cycle))] += 1;
    }
    scheme.weight_from_counts(elements, cycles)
}

/// Left side, summed directly over i + j + k = m.
#[allow(clippy::needless_range_loop)]
pub fn lhs_2_1(m: usize) -> Poly {
    let mq = int(m as i64);
    let black = Poly::linear(half(), half()).powers(m);
    let white = Poly::linear(half(), -half()).powers(m);
    let mut total = Poly::zero();
    for i in 0..=m {
        for j in 0..=(m - i) {
            let k = m - i - j;
            let coeff = to_rational(&multinomial(m, &[i, j, k]).expect("parts sum to m"))
                * rising_factorial(&-&mq, i)
                * rising_factorial(&(-&mq - half()), j)
                * rising_factorial(&(int(j as i64) + half()), k);
            if coeff.is_zero() {
                continue;
            }
            total += &(&black[j] * &white[k]).scale(&coeff);
        }
    }
    total
}

/// Right side, summed directly over i + j = m.
#[allow(clippy::needless_range_loop)]
pub fn rhs_2_1(m: usize) -> Poly {
    let mq = int(m as i64);
    let black = Poly::linear(-half(), -half()).powers(m);
    let mut total = Poly::zero();
    for i in 0..=m {
        let j = m - i;
        let coeff = to_rational(&multinomial(m, &[i, j]).expect("parts sum to m"))
            * rising_factorial(&(half() - int(j as i64)), j)
            * rising_factorial(&(&mq + int(1)), i);
        total += &black[i].scale(&coeff);
    }
    total
}

/// Sums per-key weights over a histogram of (element counts, cycle counts).
fn sum_histogram(scheme: &WeightScheme, hist: BTreeMap<([usize; 3], [usize; 3]), u64>) -> Poly {
    hist.into_iter()
        .map(|((e, c), n)| {
            scheme
                .weight_from_counts(e, c)
                .expect("counts only use weighted colors")
                .scale(&int(n as i64))
        })
        .sum()
}

/// Σ weight over every Meixner bi-endofunction on [m]. Each block
/// assignment is an independent partition, reduced in parallel and merged
/// by exact addition.
pub fn brute_total_bi(m: usize, limit: usize) -> Result<Poly> {
    check_limit(
        "Meixner bi-endofunctions",
        m,
        limit,
        bi_endofunction_count(m),
    )?;
    let scheme = WeightScheme::three_colored(m);
    let parts: Vec<Vec<Block>> = block_vectors(m, 3).collect();
    Ok(parts
        .into_par_iter()
        .map(|blocks| {
            let mut hist = BTreeMap::new();
            for x in bi_endofunctions_with_blocks(blocks) {
                let comps = x.components();
                let key = meixner_counts(
                    x.blocks(),
                    comps.a_cycles.len(),
                    comps.b_cycles.len(),
                    comps.c_cycles.len(),
                );
                *hist.entry(key).or_insert(0u64) += 1;
            }
            sum_histogram(&scheme, hist)
        })
        .reduce(Poly::zero, |a, b| a + b))
}

/// Σ weight over every Meixner endofunction on [m].
pub fn brute_total_endo(m: usize, limit: usize) -> Result<Poly> {
    check_limit("Meixner endofunctions", m, limit, endofunction_count(m))?;
    let scheme = WeightScheme::bicolored(m);
    let parts: Vec<Vec<Block>> = block_vectors(m, 2).collect();
    Ok(parts
        .into_par_iter()
        .map(|blocks| {
            let mut hist = BTreeMap::new();
            for x in endofunctions_with_blocks(blocks) {
                let comps = x.components();
                let key = meixner_counts(x.blocks(), comps.a_cycles.len(), comps.b_cycles.len(), 0);
                *hist.entry(key).or_insert(0u64) += 1;
            }
            sum_histogram(&scheme, hist)
        })
        .reduce(Poly::zero, |a, b| a + b))
}

/// Σ weight_colored_permutation over all colored permutations of [m] with
/// the palette that matches the scheme.
pub fn brute_total_colored(m: usize, kind: SchemeKind, limit: usize) -> Result<Poly> {
    let palette = match kind {
        SchemeKind::ThreeColored => Palette::Three,
        SchemeKind::Bicolored => Palette::Two,
    };
    check_limit(
        "colored permutations",
        m,
        limit,
        colored_permutation_count(m, palette),
    )?;
    let scheme = WeightScheme::for_kind(kind, m);
    let parts: Vec<Vec<Color>> = colorings(m, palette).collect();
    parts
        .into_par_iter()
        .map(|coloring| {
            colored_permutations_with_coloring(coloring)
                .map(|p| weight_colored_permutation(&p, &scheme))
                .sum::<Result<Poly>>()
        })
        .try_reduce(Poly::zero, |a, b| Ok(a + b))
}

/// Total weight one permutation cycle of length r collects over all
/// admissible colorings of its elements, both as the sum of the separate
/// color cases and in simplified form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleContribution {
    pub r: usize,
    pub m: usize,
    pub case_sum: Poly,
    pub simplified: Poly,
}

impl CycleContribution {
    pub fn is_consistent(&self) -> bool {
        self.case_sum == self.simplified
    }
}

fn white_power(r: usize) -> Poly {
    Poly::linear(half(), -half()).pow(r)
}

/// Σ_{i=1}^{r} C(r, i) x^i y^{r-i}
fn binomial_tail(x: &Poly, y: &Poly, r: usize) -> Poly {
    let xs = x.powers(r);
    let ys = y.powers(r);
    (1..=r)
        .map(|i| (&xs[i] * &ys[r - i]).scale(&to_rational(&binomial(r, i))))
        .sum()
}

fn require_positive(r: usize) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidArgument(
            "cycle length must be at least 1".into(),
        ));
    }
    Ok(())
}

/// −2m − 1/2 + (m+1)((−a+1)/2)^r, assembled from the all-white, has-black
/// and all-red cases of the three-colored scheme.
pub fn cycle_contribution_3colored(r: usize, m: usize) -> Result<CycleContribution> {
    require_positive(r)?;
    let scheme = WeightScheme::three_colored(m);
    let white = &scheme.element_weight[&Color::White];
    let black = &scheme.element_weight[&Color::Black];
    let all_white = white.pow(r).scale(&scheme.cycle_weight[&Color::White]);
    let has_black = binomial_tail(black, white, r).scale(&scheme.cycle_weight[&Color::Black]);
    let all_red = Poly::constant(scheme.cycle_weight[&Color::Red].clone());
    let mq = int(m as i64);
    let simplified =
        &white_power(r).scale(&(&mq + int(1))) + &Poly::constant(int(-2) * &mq - half());
    Ok(CycleContribution {
        r,
        m,
        case_sum: &(&all_white + &has_black) + &all_red,
        simplified,
    })
}

/// 1/2 − m + (1+m)[((−a+1)/2)^r − 1], assembled from the all-white and
/// has-black cases of the bicolored scheme.
pub fn cycle_contribution_bicolored(r: usize, m: usize) -> Result<CycleContribution> {
    require_positive(r)?;
    let scheme = WeightScheme::bicolored(m);
    let white = &scheme.element_weight[&Color::White];
    let black = &scheme.element_weight[&Color::Black];
    let all_white = white.pow(r).scale(&scheme.cycle_weight[&Color::White]);
    let has_black = binomial_tail(black, white, r).scale(&scheme.cycle_weight[&Color::Black]);
    let mq = int(m as i64);
    let simplified =
        &(&white_power(r) - &Poly::one()).scale(&(&mq + int(1))) + &Poly::constant(half() - &mq);
    Ok(CycleContribution {
        r,
        m,
        case_sum: &all_white + &has_black,
        simplified,
    })
}

/// Σ_{i=1}^{r} C(r,i)((−a−1)/2)^i and ((−a+1)/2)^r − 1.
pub fn black_case_binomial_identity(r: usize) -> (Poly, Poly) {
    let lhs = binomial_tail(&Poly::linear(-half(), -half()), &Poly::one(), r);
    (lhs, &white_power(r) - &Poly::one())
}

/// Σ over permutations σ of [m] of ∏ over cycles of σ of the per-cycle
/// contribution (the case sum) for the chosen scheme.
pub fn total_via_cycle_products(m: usize, kind: SchemeKind, limit: usize) -> Result<Poly> {
    check_limit("permutations", m, limit, permutation_count(m))?;
    let mut by_type: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    for sigma in permutations(m) {
        let mut lengths: Vec<usize> = crate::structures::cycles_of(&sigma)
            .iter()
            .map(Vec::len)
            .collect();
        lengths.sort_unstable();
        *by_type.entry(lengths).or_insert(0) += 1;
    }
    let contribution = |r: usize| -> Result<Poly> {
        Ok(match kind {
            SchemeKind::ThreeColored => cycle_contribution_3colored(r, m)?.case_sum,
            SchemeKind::Bicolored => cycle_contribution_bicolored(r, m)?.case_sum,
        })
    };
    let per_length: Vec<Poly> = std::iter::once(Ok(Poly::one()))
        .chain((1..=m).map(contribution))
        .collect::<Result<_>>()?;
    Ok(by_type
        .into_iter()
        .map(|(lengths, n)| {
            lengths
                .iter()
                .map(|&r| per_length[r].clone())
                .product::<Poly>()
                .scale(&int(n as i64))
        })
        .sum())
}

fn sign_factorial(m: usize) -> (Rational, Rational) {
    let sign = if m.is_multiple_of(2) { int(1) } else { int(-1) };
    (to_rational(&factorial(m)), sign)
}

/// m!·L(m) = (−1)^m·lhs_2_1(m) and m!·R(m) = (−1)^m·rhs_2_1(m), with L the
/// double sum and R the single sum.
pub fn derivation_chain_check(m: usize) -> bool {
    let (fact, sign) = sign_factorial(m);
    p_double_sum(m).scale(&fact) == lhs_2_1(m).scale(&sign)
        && p_single_sum(m).scale(&fact) == rhs_2_1(m).scale(&sign)
}

/// Every side of the identity for one m. Brute-force entries are `None`
/// when m exceeds the enumeration limit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub m: usize,
    pub lhs_21: Poly,
    pub rhs_21: Poly,
    pub lhs_2_1: Poly,
    pub rhs_2_1: Poly,
    pub brute_bi: Option<Poly>,
    pub brute_endo: Option<Poly>,
    pub cycles_3colored: Option<Poly>,
    pub cycles_bicolored: Option<Poly>,
    pub all_equal: bool,
}

impl IdentityReport {
    pub fn build(m: usize, limit: usize) -> Result<Self> {
        let lhs_21 = p_double_sum(m);
        let rhs_21 = p_single_sum(m);
        let lhs = lhs_2_1(m);
        let rhs = rhs_2_1(m);
        let within = m <= limit;
        let brute_bi = within.then(|| brute_total_bi(m, limit)).transpose()?;
        let brute_endo = within.then(|| brute_total_endo(m, limit)).transpose()?;
        let cycles_3 = within
            .then(|| total_via_cycle_products(m, SchemeKind::ThreeColored, limit))
            .transpose()?;
        let cycles_2 = within
            .then(|| total_via_cycle_products(m, SchemeKind::Bicolored, limit))
            .transpose()?;
        let (fact, sign) = sign_factorial(m);
        let optional_match = |p: &Option<Poly>| p.as_ref().is_none_or(|p| *p == lhs);
        let all_equal = lhs == rhs
            && optional_match(&brute_bi)
            && optional_match(&brute_endo)
            && optional_match(&cycles_3)
            && optional_match(&cycles_2)
            && lhs_21 == rhs_21
            && lhs_21.scale(&fact) == lhs.scale(&sign);
        Ok(IdentityReport {
            m,
            lhs_21,
            rhs_21,
            lhs_2_1: lhs,
            rhs_2_1: rhs,
            brute_bi,
            brute_endo,
            cycles_3colored: cycles_3,
            cycles_bicolored: cycles_2,
            all_equal,
        })
    }
}
