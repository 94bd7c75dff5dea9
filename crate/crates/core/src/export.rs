//! Ice-quiver export: an arrow `i → j` for every `b_ij > 0`, labelled by
//! `b_ij`, dashed when the weight is a half-integer.  Frozen vertices are boxes.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::seed::{BEntry, Seed};

fn arrows(seed: &Seed) -> Vec<(i64, i64, BEntry)> {
    seed.b_entries().filter(|(_, x)| *x > BEntry::from_integer(0)).map(|((i, j), x)| (i, j, x)).collect()
}

pub fn to_dot(seed: &Seed) -> String {
    let mut out = String::from("digraph seed {\n");
    for &v in seed.vertices() {
        let shape = if seed.is_frozen(v) { "box" } else { "circle" };
        let _ = writeln!(out, "  \"{v}\" [shape={shape}];");
    }
    for (i, j, x) in arrows(seed) {
        let style = if x.is_integer() { "" } else { ", style=dashed" };
        let _ = writeln!(out, "  \"{i}\" -> \"{j}\" [label=\"{x}\"{style}];");
    }
    out.push_str("}\n");
    out
}

/// Nodes, frozen nodes and positive `b_ij` entries.
pub type ParsedDot = (BTreeSet<i64>, BTreeSet<i64>, Vec<(i64, i64, BEntry)>);

/// Reads back what [`to_dot`] writes: the frozen set and the positive entries.
pub fn parse_dot(text: &str) -> Result<ParsedDot> {
    let bad = |line: &str| Error::Parse(format!("unrecognized DOT line {line:?}"));
    let mut nodes = BTreeSet::new();
    let mut frozen = BTreeSet::new();
    let mut edges = Vec::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with("digraph") || line == "}" {
            continue;
        }
        let quoted: Vec<&str> = line.split('"').collect();
        if line.contains("->") {
            // "i" -> "j" [label="x"...]
            if quoted.len() < 6 {
                return Err(bad(line));
            }
            let i = quoted[1].parse().map_err(|_| bad(line))?;
            let j = quoted[3].parse().map_err(|_| bad(line))?;
            let x: BEntry = quoted[5].parse().map_err(|_| bad(line))?;
            edges.push((i, j, x));
        } else {
            let v: i64 = quoted.get(1).and_then(|s| s.parse().ok()).ok_or_else(|| bad(line))?;
            nodes.insert(v);
            if line.contains("shape=box") {
                frozen.insert(v);
            }
        }
    }
    Ok((nodes, frozen, edges))
}

/// A TikZ picture with the vertices on a line, in the style of the usual figures.
pub fn to_latex(seed: &Seed) -> String {
    let mut out =
        String::from("\\begin{tikzpicture}[node distance=48pt,on grid,>={Stealth[length=4pt,round]},inner sep=1pt]\n");
    for (n, &v) in seed.vertices().iter().enumerate() {
        let kind = if seed.is_frozen(v) { "frozen" } else { "unfrozen" };
        let _ = writeln!(out, "\\node[{kind}] (q{}) at ({},0) {{{v}}};", tikz_name(v), n as i64 * -2);
    }
    for (i, j, x) in arrows(seed) {
        let dashed = if x.is_integer() { "" } else { ",dashed" };
        let pos = |v: i64| seed.vertices().binary_search(&v).unwrap() as i64;
        let bend = if (pos(i) - pos(j)).abs() > 1 { "[bend left]" } else { "" };
        let label = if x == BEntry::from_integer(1) || x == BEntry::new(1, 2) {
            String::new()
        } else {
            format!(" node[midway,above] {{${x}$}}")
        };
        let _ = writeln!(out, "\\draw[->{dashed}] (q{}) edge{bend}{label} (q{});", tikz_name(i), tikz_name(j));
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

fn tikz_name(v: i64) -> String {
    if v < 0 {
        format!("m{}", -v)
    } else {
        v.to_string()
    }
}
