//! Output helpers shared by the subcommands.

use bm_core::structures::{Block, Color, ColoredPermutation};
use clap::ValueEnum;
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Rendered output plus whether every requested check passed.
pub struct Report {
    pub body: String,
    pub ok: bool,
}

impl Report {
    pub fn new(body: String, ok: bool) -> Self {
        Report { body, ok }
    }
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn compact<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("core types serialize")
}

pub fn csv<I>(header: &[&str], rows: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let io = |e: csv::Error| CliError::Io(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Left-aligned columns separated by two spaces.
pub fn table<I>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut all: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
    all.extend(rows);
    let mut widths = vec![0; header.len()];
    for row in &all {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in &all {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn verdict(ok: bool) -> String {
    if ok { "pass" } else { "fail" }.to_string()
}

pub fn spaced(xs: impl IntoIterator<Item = usize>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn arcs(map: impl IntoIterator<Item = (usize, usize)>) -> String {
    map.into_iter()
        .map(|(x, y)| format!("{x}->{y}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn labelled(out: &mut String, label: &str, value: &str) {
    out.push_str(format!("{label}: {value}").trim_end());
    out.push('\n');
}

/// Block listing and per-block arcs of a one-based function table.
pub fn meixner_text(blocks: &[Block], map: &[usize], with_c: bool) -> String {
    let mut out = String::new();
    let names: &[(Block, &str)] = if with_c {
        &[(Block::A, "A"), (Block::B, "B"), (Block::C, "C")]
    } else {
        &[(Block::A, "A"), (Block::B, "B")]
    };
    for &(block, name) in names {
        let members = (1..=blocks.len()).filter(|&e| blocks[e - 1] == block);
        labelled(&mut out, name, &spaced(members));
    }
    for &(block, name) in names {
        let pairs = (1..=blocks.len())
            .filter(|&e| blocks[e - 1] == block)
            .map(|e| (e, map[e - 1]));
        labelled(&mut out, &format!("pi{name}"), &arcs(pairs));
    }
    out
}

pub fn colored_text(p: &ColoredPermutation) -> String {
    let cycles: String = p
        .cycles()
        .iter()
        .map(|c| format!("({})", spaced(c.iter().copied())))
        .collect();
    let mut out = format!("cycles: {cycles}\n");
    for color in [Color::White, Color::Black, Color::Red] {
        let members = (1..=p.m()).filter(|&e| p.color(e) == color);
        labelled(&mut out, &color.to_string(), &spaced(members));
    }
    out
}
