//! Acceptance criteria. Each criterion prints one PASS/FAIL line with its
//! wall time; the process exits nonzero if any criterion fails or overruns
//! its time budget.

use std::collections::{BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use bm_core::bijections::{
    extended_backward, extended_forward, extended_forward_reversed, foata_backward, foata_forward,
};
use bm_core::boros_moll::{
    d_coeff, integral_check, is_log_concave, is_positive, is_unimodal, p_double_sum,
    p_hypergeometric, p_jacobi, p_single_sum, CoeffTable,
};
use bm_core::exactnum::{factorial, to_rational};
use bm_core::exactnum::{int, rising_factorial};
use bm_core::structures::{
    canonical_word, enumerate_bi_endofunctions, enumerate_colored_permutations,
    enumerate_endofunctions, enumerate_reluctant, parse_word, prop21_weighted_sum, Block,
    CanonicalWord, Color, Palette,
};
use bm_core::weights::{
    brute_total_bi, brute_total_endo, cycle_contribution_3colored, cycle_contribution_bicolored,
    derivation_chain_check, lhs_2_1, rhs_2_1, total_via_cycle_products, weight_bi_endofunction,
    weight_colored_permutation, weight_endofunction, SchemeKind, WeightScheme,
};
use bm_core::Poly;

type Check = fn() -> Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {{
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($fmt)+));
        }
    }};
}

fn route_equality() -> Result<(), String> {
    for m in 0..=50 {
        let single = p_single_sum(m);
        ensure!(p_double_sum(m) == single, "double sum differs at m = {m}");
        let hyp = p_hypergeometric(m).map_err(|e| e.to_string())?;
        ensure!(hyp == single, "2F1 route differs at m = {m}");
        ensure!(p_jacobi(m) == single, "Jacobi route differs at m = {m}");
    }
    Ok(())
}

fn positivity_and_table() -> Result<(), String> {
    for m in 0..=100 {
        let table = CoeffTable::new(m);
        ensure!(table.d.len() == m + 1, "table length at m = {m}");
        ensure!(
            table.to_poly() == p_single_sum(m),
            "table vs single sum at m = {m}"
        );
        ensure!(is_positive(&table.d), "nonpositive coefficient at m = {m}");
    }
    // spot-check the closed form for d_i(m) independently of the table builder
    for m in [0usize, 1, 2, 37, 100] {
        let single = p_single_sum(m);
        for i in 0..=m {
            ensure!(d_coeff(m, i).unwrap() == single.coeff(i), "d_{i}({m})");
        }
    }
    Ok(())
}

fn unimodal_log_concave() -> Result<(), String> {
    for m in 0..=100 {
        let d = CoeffTable::new(m).d;
        ensure!(is_unimodal(&d), "not unimodal at m = {m}");
        ensure!(is_log_concave(&d), "not log-concave at m = {m}");
    }
    Ok(())
}

fn prop21() -> Result<(), String> {
    for n in 0..=8usize {
        for i in 0..=n {
            let j = n - i;
            let closed = rising_factorial(&Poly::linear(int(j as i64), int(1)), i);
            let sum = prop21_weighted_sum(i, j);
            ensure!(sum == closed, "(i, j) = ({i}, {j})");
            let count = to_rational(&(factorial(i + j) / factorial(j)));
            ensure!(
                sum.eval(&int(1)) == count,
                "function count at (i, j) = ({i}, {j})"
            );
        }
    }
    Ok(())
}

fn weighted_theorem() -> Result<(), String> {
    for m in 0..=5 {
        let lhs = lhs_2_1(m);
        ensure!(
            brute_total_bi(m, 7).unwrap() == lhs,
            "bi brute total at m = {m}"
        );
        ensure!(rhs_2_1(m) == lhs, "rhs at m = {m}");
        ensure!(
            brute_total_endo(m, 7).unwrap() == lhs,
            "endo brute total at m = {m}"
        );
    }
    for m in 0..=20 {
        ensure!(
            lhs_2_1(m) == rhs_2_1(m),
            "closed-form sides differ at m = {m}"
        );
    }
    Ok(())
}

fn derivation_chain() -> Result<(), String> {
    for m in 0..=20 {
        ensure!(derivation_chain_check(m), "m = {m}");
    }
    Ok(())
}

fn bijections() -> Result<(), String> {
    for m in 0..=5 {
        let three = WeightScheme::three_colored(m);
        let two = WeightScheme::bicolored(m);

        let mut images = HashSet::new();
        for x in enumerate_bi_endofunctions(m, 7).unwrap() {
            let p = extended_forward(&x);
            ensure!(
                extended_forward_reversed(&x) == p,
                "splice order matters at m = {m}"
            );
            ensure!(
                extended_backward(&p).unwrap() == x,
                "extended round trip at m = {m}"
            );
            let comps = x.components();
            ensure!(
                p.class_counts()
                    == (
                        comps.a_cycles.len(),
                        comps.b_cycles.len(),
                        comps.c_cycles.len()
                    ),
                "cycle classes at m = {m}"
            );
            ensure!(
                p.count(Color::White) == x.members(Block::A).len()
                    && p.count(Color::Black) == x.members(Block::B).len()
                    && p.count(Color::Red) == x.members(Block::C).len(),
                "color multiset at m = {m}"
            );
            ensure!(
                weight_bi_endofunction(&x) == weight_colored_permutation(&p, &three).unwrap(),
                "3-colored weight at m = {m}"
            );
            ensure!(
                images.insert(p),
                "extended forward not injective at m = {m}"
            );
        }
        let mut valid = 0usize;
        for p in enumerate_colored_permutations(m, Palette::Three, 7).unwrap() {
            valid += 1;
            ensure!(
                images.contains(&p),
                "3-colored permutation missed at m = {m}"
            );
            ensure!(
                extended_forward(&extended_backward(&p).unwrap()) == p,
                "backward then forward at m = {m}"
            );
        }
        ensure!(valid == images.len(), "image size at m = {m}");

        let mut images = HashSet::new();
        for x in enumerate_endofunctions(m, 7).unwrap() {
            let p = foata_forward(&x);
            ensure!(
                foata_backward(&p).unwrap() == x,
                "Foata round trip at m = {m}"
            );
            ensure!(
                weight_endofunction(&x) == weight_colored_permutation(&p, &two).unwrap(),
                "bicolored weight at m = {m}"
            );
            ensure!(images.insert(p), "Foata forward not injective at m = {m}");
        }
        let mut valid = 0usize;
        for p in enumerate_colored_permutations(m, Palette::Two, 7).unwrap() {
            valid += 1;
            ensure!(
                images.contains(&p),
                "bi-colored permutation missed at m = {m}"
            );
            ensure!(
                foata_forward(&foata_backward(&p).unwrap()) == p,
                "Foata backward then forward at m = {m}"
            );
        }
        ensure!(valid == images.len(), "Foata image size at m = {m}");
    }

    let x = bm_core::structures::MeixnerEndofunction::from_parts(
        6,
        &[(4, 1), (2, 5), (5, 6)],
        &[(1, 6), (6, 3), (3, 1)],
    )
    .unwrap();
    let p = foata_forward(&x);
    let expected = bm_core::structures::ColoredPermutation::from_cycles(
        6,
        &[&[3, 4, 1, 2, 5, 6]],
        &[1, 3, 6],
        &[],
    )
    .unwrap();
    ensure!(p == expected, "six-element image {:?}", p.sigma());
    ensure!(
        foata_backward(&expected).unwrap() == x,
        "six-element preimage"
    );
    Ok(())
}

fn per_cycle_reduction() -> Result<(), String> {
    for r in 1..=10 {
        for m in 0..=10 {
            let three = cycle_contribution_3colored(r, m).unwrap();
            let two = cycle_contribution_bicolored(r, m).unwrap();
            ensure!(
                three.is_consistent(),
                "3-colored simplification r = {r}, m = {m}"
            );
            ensure!(
                two.is_consistent(),
                "bicolored simplification r = {r}, m = {m}"
            );
            ensure!(
                three.case_sum == two.case_sum,
                "contributions differ r = {r}, m = {m}"
            );
        }
    }
    for m in 0..=7 {
        let bi = brute_total_bi(m, 7).unwrap();
        let endo = brute_total_endo(m, 7).unwrap();
        ensure!(bi == endo, "brute totals differ at m = {m}");
        for kind in [SchemeKind::ThreeColored, SchemeKind::Bicolored] {
            ensure!(
                total_via_cycle_products(m, kind, 7).unwrap() == bi,
                "{kind:?} cycle products at m = {m}"
            );
        }
    }
    Ok(())
}

/// Every ordering of every subset of `pool`.
fn arrangements(pool: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![(Vec::new(), pool.to_vec())];
    while let Some((prefix, rest)) = frontier.pop() {
        for (k, &x) in rest.iter().enumerate() {
            let mut next = prefix.clone();
            next.push(x);
            let mut remaining = rest.clone();
            remaining.remove(k);
            out.push(next.clone());
            frontier.push((next, remaining));
        }
    }
    out
}

fn word_codec() -> Result<(), String> {
    for n in 0..=6usize {
        for mask in 0u32..(1 << n) {
            let a: BTreeSet<usize> = (1..=n).filter(|e| mask & (1 << (e - 1)) != 0).collect();
            let b: BTreeSet<usize> = (1..=n).filter(|e| mask & (1 << (e - 1)) == 0).collect();
            let mut words = HashSet::new();
            for f in enumerate_reluctant(&a, &b).unwrap() {
                let w = canonical_word(&f);
                ensure!(
                    parse_word(&w).map_err(|e| e.to_string())? == f,
                    "parse ∘ encode, A = {a:?}"
                );
                ensure!(
                    words.insert(w.word),
                    "two functions share a word, A = {a:?}"
                );
            }
            // the reverse direction over every candidate sequence of A ∪ (subset of B)
            // whose elements include all of A
            let pool: Vec<usize> = a.union(&b).copied().collect();
            let mut accepted = 0usize;
            for seq in arrangements(&pool) {
                if !a.iter().all(|x| seq.contains(x)) {
                    continue;
                }
                let w = CanonicalWord {
                    word: seq.clone(),
                    a: a.clone(),
                    b: b.clone(),
                };
                if let Ok(f) = parse_word(&w) {
                    accepted += 1;
                    ensure!(canonical_word(&f).word == seq, "encode ∘ parse on {seq:?}");
                    ensure!(
                        words.contains(&seq),
                        "parsed a word no function produces: {seq:?}"
                    );
                }
            }
            ensure!(
                accepted == words.len(),
                "accepted word count, A = {a:?}, B = {b:?}"
            );
        }
    }

    let nine = bm_core::structures::ReluctantFunction::from_arcs(
        &[1, 2, 3, 4, 5, 6, 7],
        &[8, 9],
        &[(1, 3), (3, 9), (2, 6), (6, 5), (5, 2), (4, 4), (7, 8)],
    )
    .unwrap();
    let w = canonical_word(&nine);
    ensure!(
        w.word == [4, 2, 6, 5, 8, 7, 9, 3, 1],
        "nine-element word {:?}",
        w.word
    );
    Ok(())
}

fn integral() -> Result<(), String> {
    for m in 0..=4 {
        for a in [0.0, 0.5, 1.0, 2.0] {
            let c = integral_check(m, a, 1e-10).map_err(|e| e.to_string())?;
            ensure!(
                c.residual < 1e-6,
                "m = {m}, a = {a}: residual {:e}",
                c.residual
            );
        }
    }
    let c = integral_check(0, 1.0, 1e-10).map_err(|e| e.to_string())?;
    ensure!(
        (c.closed_form - std::f64::consts::FRAC_PI_4).abs() < 1e-15,
        "closed form at m = 0, a = 1 is {}",
        c.closed_form
    );
    ensure!(
        (c.quadrature - std::f64::consts::FRAC_PI_4).abs() < 1e-6,
        "quadrature at m = 0, a = 1"
    );
    Ok(())
}

fn main() {
    let criteria: [(u32, &str, u64, Check); 10] = [
        (1, "route equality m <= 50", 10, route_equality),
        (
            2,
            "positivity and coefficient table m <= 100",
            30,
            positivity_and_table,
        ),
        (
            3,
            "unimodality and log-concavity m <= 100",
            30,
            unimodal_log_concave,
        ),
        (
            4,
            "reluctant-function sums equal (a+j)_i, i+j <= 8",
            10,
            prop21,
        ),
        (5, "weighted enumeration identity", 60, weighted_theorem),
        (6, "derivation chain m <= 20", 5, derivation_chain),
        (7, "bijection suite m <= 5", 60, bijections),
        (
            8,
            "per-cycle reduction and cycle products",
            60,
            per_cycle_reduction,
        ),
        (9, "canonical word codec", 10, word_codec),
        (10, "quartic integral cross-check", 10, integral),
    ];
    let filter: Option<u32> = std::env::args().nth(1).and_then(|s| s.parse().ok());

    let mut failures = 0;
    for (id, name, budget_s, check) in criteria {
        if filter.is_some_and(|f| f != id) {
            continue;
        }
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let budget = Duration::from_secs(budget_s);
        let verdict = match &outcome {
            Ok(()) if elapsed <= budget => "PASS".to_string(),
            Ok(()) => format!("FAIL (over {budget_s} s budget)"),
            Err(msg) => format!("FAIL ({msg})"),
        };
        if !verdict.starts_with("PASS") {
            failures += 1;
        }
        println!(
            "criterion {id:>2} [{verdict}] {name} ({:.2} s)",
            elapsed.as_secs_f64()
        );
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
