use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use bm_core::bijections::{
    extended_backward, extended_forward, foata_backward, foata_forward, forward_trace,
};
use bm_core::boros_moll::{coeff_tables, integral_check, p_route, property_row, CoeffTable};
use bm_core::exactnum::{factorial, int, parse_rational, to_rational};
use bm_core::structures::{
    check_limit, cycle_weight_monomial, enumerate_bi_endofunctions, enumerate_colored_permutations,
    enumerate_endofunctions, enumerate_reluctant, ColoredPermutation, MeixnerBiEndofunction,
    MeixnerEndofunction, Palette,
};
use bm_core::weights::{
    weight_bi_endofunction, weight_colored_permutation, weight_endofunction, IdentityReport,
    WeightScheme,
};
use bm_core::{Poly, Rational};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::render::{self, compact, verdict, Format, Report};
use crate::{CliError, MRange, MeixnerKind, Method, Mode, StructureKind};

type Result<T> = std::result::Result<T, CliError>;

enum Evaluated {
    Number(Rational),
    Polynomial(Poly),
}

impl Evaluated {
    fn text(&self) -> String {
        match self {
            Evaluated::Number(q) => q.to_string(),
            Evaluated::Polynomial(p) => p.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Evaluated::Number(q) => Value::String(q.to_string()),
            Evaluated::Polynomial(p) => serde_json::to_value(p).expect("poly serializes"),
        }
    }
}

pub fn eval(m: usize, a: Option<&str>, method: Method, fmt: Format) -> Result<Report> {
    let a = a.map(parse_rational).transpose()?;
    let values = method
        .routes()
        .into_iter()
        .map(|route| {
            let p = p_route(route, m)?;
            let v = match &a {
                Some(a) => Evaluated::Number(p.eval(a)),
                None => Evaluated::Polynomial(p),
            };
            Ok((route, v))
        })
        .collect::<bm_core::Result<Vec<_>>>()?;
    let texts: Vec<String> = values.iter().map(|(_, v)| v.text()).collect();
    let equal = texts.windows(2).all(|w| w[0] == w[1]);
    let a_text = a.as_ref().map(|q| q.to_string());

    let body = match fmt {
        Format::Text if values.len() == 1 => format!("{}\n", texts[0]),
        Format::Text => {
            let mut out = String::new();
            for ((route, _), t) in values.iter().zip(&texts) {
                writeln!(out, "{route}: {t}").unwrap();
            }
            let summary = if equal {
                "routes agree"
            } else {
                "routes DISAGREE"
            };
            writeln!(out, "{summary}").unwrap();
            out
        }
        Format::Json if values.len() == 1 => render::json(&json!({
            "m": m,
            "a": a_text,
            "method": values[0].0.name(),
            "value": values[0].1.json(),
        }))?,
        Format::Json => {
            let list: Vec<Value> = values
                .iter()
                .map(|(r, v)| json!({ "method": r.name(), "value": v.json() }))
                .collect();
            render::json(&json!({ "m": m, "a": a_text, "values": list, "equal": equal }))?
        }
        Format::Csv => render::csv(
            &["m", "a", "method", "value"],
            values.iter().zip(&texts).map(|((r, _), t)| {
                vec![
                    m.to_string(),
                    a_text.clone().unwrap_or_default(),
                    r.name().into(),
                    t.clone(),
                ]
            }),
        )?,
    };
    Ok(Report::new(body, equal))
}

pub fn coeffs(range: &MRange, fmt: Format) -> Result<Report> {
    let tables = match range.values().as_slice() {
        [m] => vec![CoeffTable::new(*m)],
        ms => coeff_tables(*ms.last().expect("nonempty range")),
    };
    let body = match fmt {
        Format::Json if range.single() => render::json(&tables[0])?,
        Format::Json => render::json(&tables)?,
        Format::Csv => render::csv(
            &["m", "i", "d"],
            tables.iter().flat_map(|t| {
                t.d.iter()
                    .enumerate()
                    .map(|(i, d)| vec![t.m.to_string(), i.to_string(), d.to_string()])
            }),
        )?,
        Format::Text => tables
            .iter()
            .map(|t| {
                let ds: Vec<String> = t.d.iter().map(|d| d.to_string()).collect();
                format!("m = {}: {}\n", t.m, ds.join(" "))
            })
            .collect(),
    };
    Ok(Report::new(body, true))
}

pub fn check(range: &MRange, fmt: Format) -> Result<Report> {
    let rows = range
        .values()
        .into_par_iter()
        .map(property_row)
        .collect::<bm_core::Result<Vec<_>>>()?;
    let failing = rows.iter().filter(|r| !r.all_pass()).count();
    let header = [
        "m",
        "positive",
        "unimodal",
        "log_concave",
        "table",
        "routes",
    ];
    let cells = rows.iter().map(|r| {
        vec![
            r.m.to_string(),
            verdict(r.positive),
            verdict(r.unimodal),
            verdict(r.log_concave),
            verdict(r.table_consistent),
            verdict(r.routes_equal),
        ]
    });
    let body = match fmt {
        Format::Json => render::json(&rows)?,
        Format::Csv => render::csv(&header, cells)?,
        Format::Text => {
            let mut out = render::table(&header, cells);
            if failing == 0 {
                out.push_str("all properties pass\n");
            } else {
                writeln!(out, "{failing} of {} rows fail", rows.len()).unwrap();
            }
            out
        }
    };
    Ok(Report::new(body, failing == 0))
}

fn optional_verdict(p: &Option<Poly>, target: &Poly) -> String {
    match p {
        Some(p) => verdict(p == target),
        None => "skip".into(),
    }
}

pub fn verify_identity(range: &MRange, limit: usize, fmt: Format) -> Result<Report> {
    let reports = range
        .values()
        .into_par_iter()
        .map(|m| IdentityReport::build(m, limit))
        .collect::<bm_core::Result<Vec<_>>>()?;
    let ok = reports.iter().all(|r| r.all_equal);
    let header = [
        "m",
        "routes",
        "sides",
        "chain",
        "brute_bi",
        "brute_endo",
        "cycles_3",
        "cycles_2",
        "all",
    ];
    let cells = reports.iter().map(|r| {
        let sign = if r.m % 2 == 0 { int(1) } else { int(-1) };
        let chain = r.lhs_21.scale(&to_rational(&factorial(r.m))) == r.lhs_2_1.scale(&sign);
        vec![
            r.m.to_string(),
            verdict(r.lhs_21 == r.rhs_21),
            verdict(r.lhs_2_1 == r.rhs_2_1),
            verdict(chain),
            optional_verdict(&r.brute_bi, &r.lhs_2_1),
            optional_verdict(&r.brute_endo, &r.lhs_2_1),
            optional_verdict(&r.cycles_3colored, &r.lhs_2_1),
            optional_verdict(&r.cycles_bicolored, &r.lhs_2_1),
            verdict(r.all_equal),
        ]
    });
    let body = match fmt {
        Format::Json if range.single() => render::json(&reports[0])?,
        Format::Json => render::json(&reports)?,
        Format::Csv => render::csv(&header, cells)?,
        Format::Text => {
            let mut out = render::table(&header, cells);
            out.push_str(if ok {
                "identity holds\n"
            } else {
                "identity FAILS\n"
            });
            out
        }
    };
    Ok(Report::new(body, ok))
}

#[derive(Serialize)]
struct Record {
    index: usize,
    structure: Value,
    weight: Poly,
}

#[derive(Serialize)]
struct Listing {
    structure: &'static str,
    count: usize,
    total: Poly,
    records: Vec<Record>,
}

pub fn enumerate(
    kind: StructureKind,
    m: Option<usize>,
    ij: Option<(usize, usize)>,
    limit: usize,
    fmt: Format,
) -> Result<Report> {
    fn collect<T: Serialize>(
        items: impl Iterator<Item = T>,
        weight: impl Fn(&T) -> Poly,
    ) -> Vec<(Value, Poly)> {
        items
            .map(|x| {
                (
                    serde_json::to_value(&x).expect("structure serializes"),
                    weight(&x),
                )
            })
            .collect()
    }
    let need_m = || m.ok_or_else(|| CliError::Usage("--m is required for this structure".into()));
    let (name, items) = match kind {
        StructureKind::Reluctant => {
            let (i, j) =
                ij.ok_or_else(|| CliError::Usage("reluctant functions need --i and --j".into()))?;
            let estimate = factorial(i + j) / factorial(j);
            check_limit("reluctant functions", i + j, limit, estimate)?;
            let a: BTreeSet<usize> = (1..=i).collect();
            let b: BTreeSet<usize> = (i + 1..=i + j).collect();
            (
                "reluctant",
                collect(enumerate_reluctant(&a, &b)?, cycle_weight_monomial),
            )
        }
        StructureKind::Endofunctions => (
            "endofunctions",
            collect(
                enumerate_endofunctions(need_m()?, limit)?,
                weight_endofunction,
            ),
        ),
        StructureKind::BiEndofunctions => (
            "bi-endofunctions",
            collect(
                enumerate_bi_endofunctions(need_m()?, limit)?,
                weight_bi_endofunction,
            ),
        ),
        StructureKind::Colored2 | StructureKind::Colored3 => {
            let m = need_m()?;
            let (name, palette, scheme) = if kind == StructureKind::Colored2 {
                ("colored2", Palette::Two, WeightScheme::bicolored(m))
            } else {
                ("colored3", Palette::Three, WeightScheme::three_colored(m))
            };
            let perms: Vec<ColoredPermutation> =
                enumerate_colored_permutations(m, palette, limit)?.collect();
            let weights = perms
                .iter()
                .map(|p| weight_colored_permutation(p, &scheme))
                .collect::<bm_core::Result<Vec<_>>>()?;
            let items = perms
                .iter()
                .map(|p| serde_json::to_value(p).expect("structure serializes"))
                .zip(weights)
                .collect();
            (name, items)
        }
    };
    let total: Poly = items.iter().map(|(_, w)| w.clone()).sum();
    let body = match fmt {
        Format::Json => render::json(&Listing {
            structure: name,
            count: items.len(),
            total,
            records: items
                .into_iter()
                .enumerate()
                .map(|(index, (structure, weight))| Record {
                    index,
                    structure,
                    weight,
                })
                .collect(),
        })?,
        Format::Csv => render::csv(
            &["index", "structure", "weight"],
            items
                .iter()
                .enumerate()
                .map(|(k, (s, w))| vec![k.to_string(), compact(s), w.to_string()]),
        )?,
        Format::Text => {
            let mut out = String::new();
            for (s, w) in &items {
                writeln!(out, "{}  weight: {w}", compact(s)).unwrap();
            }
            writeln!(out, "count: {}", items.len()).unwrap();
            writeln!(out, "total: {total}").unwrap();
            out
        }
    };
    Ok(Report::new(body, true))
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| CliError::Usage(format!("invalid {what}: {e}")))
}

fn render_colored(p: &ColoredPermutation, fmt: Format) -> Result<String> {
    match fmt {
        Format::Json => render::json(p),
        Format::Text => Ok(render::colored_text(p)),
        Format::Csv => render::csv(
            &["element", "image", "color"],
            (1..=p.m()).map(|e| {
                vec![
                    e.to_string(),
                    p.apply(e).to_string(),
                    p.color(e).to_string(),
                ]
            }),
        ),
    }
}

fn render_meixner<T: Serialize>(
    x: &T,
    blocks: &[bm_core::structures::Block],
    map: &[usize],
    with_c: bool,
    fmt: Format,
) -> Result<String> {
    match fmt {
        Format::Json => render::json(x),
        Format::Text => Ok(render::meixner_text(blocks, map, with_c)),
        Format::Csv => render::csv(
            &["element", "block", "image"],
            (1..=map.len()).map(|e| {
                vec![
                    e.to_string(),
                    format!("{:?}", blocks[e - 1]),
                    map[e - 1].to_string(),
                ]
            }),
        ),
    }
}

fn read_bi(kind: MeixnerKind, text: &str) -> Result<MeixnerBiEndofunction> {
    Ok(match kind {
        MeixnerKind::Endofunction => {
            parse_json::<MeixnerEndofunction>(text, "endofunction")?.into()
        }
        MeixnerKind::BiEndofunction => parse_json(text, "bi-endofunction")?,
    })
}

pub fn bijection(mode: Mode, kind: MeixnerKind, text: &str, fmt: Format) -> Result<Report> {
    let body = match mode {
        Mode::Forward => render_colored(&extended_forward(&read_bi(kind, text)?), fmt)?,
        Mode::Backward => {
            let p: ColoredPermutation = parse_json(text, "colored permutation")?;
            match kind {
                MeixnerKind::Endofunction => {
                    let x = foata_backward(&p)?;
                    render_meixner(&x, x.blocks(), x.map(), false, fmt)?
                }
                MeixnerKind::BiEndofunction => {
                    let x = extended_backward(&p)?;
                    render_meixner(&x, x.blocks(), x.map(), true, fmt)?
                }
            }
        }
        Mode::Trace => {
            let trace = forward_trace(&read_bi(kind, text)?);
            match fmt {
                Format::Json => render::json(&trace)?,
                Format::Csv => render::csv(
                    &["cycle_min", "broken_from", "broken_to", "path"],
                    trace.iter().map(|t| {
                        vec![
                            t.cycle_min.to_string(),
                            t.broken_from.to_string(),
                            t.broken_to.to_string(),
                            render::spaced(t.path.iter().copied()),
                        ]
                    }),
                )?,
                Format::Text => trace
                    .iter()
                    .map(|t| {
                        format!(
                            "cycle {}: {} -> {} becomes {} -> {}, absorbing {}\n",
                            t.cycle_min,
                            t.broken_from,
                            t.broken_to,
                            t.broken_from,
                            t.path[0],
                            render::spaced(t.path.iter().copied()),
                        )
                    })
                    .collect(),
            }
        }
        Mode::RoundTrip => unreachable!("handled by round_trip"),
    };
    Ok(Report::new(body, true))
}

#[derive(Serialize)]
struct RoundTrip {
    m: usize,
    endofunctions: usize,
    bi_endofunctions: usize,
    foata_round_trip: bool,
    extended_round_trip: bool,
    images_are_colored_permutations: bool,
    weights_preserved: bool,
    cycle_classes_preserved: bool,
}

impl RoundTrip {
    fn ok(&self) -> bool {
        self.foata_round_trip
            && self.extended_round_trip
            && self.images_are_colored_permutations
            && self.weights_preserved
            && self.cycle_classes_preserved
    }
}

pub fn round_trip(m: usize, limit: usize, fmt: Format) -> Result<Report> {
    let endos: Vec<MeixnerEndofunction> = enumerate_endofunctions(m, limit)?.collect();
    let bis: Vec<MeixnerBiEndofunction> = enumerate_bi_endofunctions(m, limit)?.collect();
    let two = WeightScheme::bicolored(m);
    let three = WeightScheme::three_colored(m);

    let foata: Vec<ColoredPermutation> = endos.par_iter().map(foata_forward).collect();
    let extended: Vec<ColoredPermutation> = bis.par_iter().map(extended_forward).collect();

    let foata_round_trip = endos
        .par_iter()
        .zip(&foata)
        .all(|(x, p)| foata_backward(p).as_ref() == Ok(x));
    let extended_round_trip = bis
        .par_iter()
        .zip(&extended)
        .all(|(x, p)| extended_backward(p).as_ref() == Ok(x));

    let same_set = |images: &[ColoredPermutation], palette| -> Result<bool> {
        let images: HashSet<&ColoredPermutation> = images.iter().collect();
        let all: HashSet<ColoredPermutation> =
            enumerate_colored_permutations(m, palette, limit)?.collect();
        Ok(images.len() == all.len() && all.iter().all(|p| images.contains(p)))
    };
    let images_are_colored_permutations =
        same_set(&foata, Palette::Two)? && same_set(&extended, Palette::Three)?;

    let weights_preserved =
        endos.par_iter().zip(&foata).all(|(x, p)| {
            weight_colored_permutation(p, &two).as_ref() == Ok(&weight_endofunction(x))
        }) && bis.par_iter().zip(&extended).all(|(x, p)| {
            weight_colored_permutation(p, &three).as_ref() == Ok(&weight_bi_endofunction(x))
        });
    let cycle_classes_preserved = bis.par_iter().zip(&extended).all(|(x, p)| {
        let c = x.components();
        p.class_counts() == (c.a_cycles.len(), c.b_cycles.len(), c.c_cycles.len())
    });

    let report = RoundTrip {
        m,
        endofunctions: endos.len(),
        bi_endofunctions: bis.len(),
        foata_round_trip,
        extended_round_trip,
        images_are_colored_permutations,
        weights_preserved,
        cycle_classes_preserved,
    };
    let ok = report.ok();
    let checks = [
        ("foata_round_trip", report.foata_round_trip),
        ("extended_round_trip", report.extended_round_trip),
        (
            "images_are_colored_permutations",
            report.images_are_colored_permutations,
        ),
        ("weights_preserved", report.weights_preserved),
        ("cycle_classes_preserved", report.cycle_classes_preserved),
    ];
    let body = match fmt {
        Format::Json => render::json(&report)?,
        Format::Csv => {
            let mut header = vec!["m", "endofunctions", "bi_endofunctions"];
            header.extend(checks.iter().map(|c| c.0));
            let mut row = vec![
                m.to_string(),
                report.endofunctions.to_string(),
                report.bi_endofunctions.to_string(),
            ];
            row.extend(checks.iter().map(|c| c.1.to_string()));
            render::csv(&header, [row])?
        }
        Format::Text => {
            let mut out = format!(
                "m = {m}: {} endofunctions, {} bi-endofunctions\n",
                report.endofunctions, report.bi_endofunctions
            );
            for (name, passed) in checks {
                writeln!(out, "{name}: {}", verdict(passed)).unwrap();
            }
            out
        }
    };
    Ok(Report::new(body, ok))
}

pub fn integral(
    range: &MRange,
    a_values: &[f64],
    tol: f64,
    max_residual: f64,
    fmt: Format,
) -> Result<Report> {
    let pairs: Vec<(usize, f64)> = range
        .values()
        .into_iter()
        .flat_map(|m| a_values.iter().map(move |&a| (m, a)))
        .collect();
    let rows = pairs
        .into_par_iter()
        .map(|(m, a)| integral_check(m, a, tol))
        .collect::<bm_core::Result<Vec<_>>>()?;
    let ok = rows.iter().all(|r| r.residual < max_residual);
    let header = [
        "m",
        "a",
        "quadrature",
        "closed_form",
        "residual",
        "error_estimate",
        "status",
    ];
    let cells = rows.iter().map(|r| {
        vec![
            r.m.to_string(),
            r.a.to_string(),
            format!("{:.15e}", r.quadrature),
            format!("{:.15e}", r.closed_form),
            format!("{:.3e}", r.residual),
            format!("{:.3e}", r.error_estimate),
            verdict(r.residual < max_residual),
        ]
    });
    let body = match fmt {
        Format::Json => render::json(&rows)?,
        Format::Csv => render::csv(&header, cells)?,
        Format::Text => render::table(&header, cells),
    };
    Ok(Report::new(body, ok))
}
