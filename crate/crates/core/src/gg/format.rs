//! The `GG v1` text format.
//!
//! ```text
//! GG v1
//! # comment
//! vertex s B
//! vertex a R
//! arc s a
//! start s
//! coord s 0 0
//! rot s a
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{GeoInstance, GgError, Vertex};
use crate::tt::Player;

fn err(line: usize, msg: impl Into<String>) -> GgError {
    GgError::Parse { line, msg: msg.into() }
}

pub fn parse_instance(text: &str) -> Result<GeoInstance, GgError> {
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut arcs = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    let mut coords: Vec<(usize, usize, (i64, i64))> = Vec::new();
    let mut rots: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    let mut saw_header = false;

    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if !saw_header {
            if line != "GG v1" {
                return Err(err(n, format!("expected `GG v1`, found `{line}`")));
            }
            saw_header = true;
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| err(n, format!("undeclared vertex `{name}`")))
        };
        match words.as_slice() {
            ["vertex", name, color] => {
                let color = Player::from_letter(color).ok_or_else(|| err(n, format!("unknown color `{color}`")))?;
                if index.contains_key(*name) {
                    return Err(err(n, format!("duplicate vertex `{name}`")));
                }
                index.insert(name.to_string(), vertices.len());
                vertices.push(Vertex {
                    name: name.to_string(),
                    color,
                });
            }
            ["arc", a, b] => arcs.push((lookup(a)?, lookup(b)?)),
            ["start", s] => {
                if start.is_some() {
                    return Err(err(n, "duplicate `start`"));
                }
                start = Some((n, lookup(s)?));
            }
            ["coord", v, x, y] => {
                let v = lookup(v)?;
                let parse = |s: &str| s.parse::<i64>().map_err(|_| err(n, format!("bad integer `{s}`")));
                coords.push((n, v, (parse(x)?, parse(y)?)));
            }
            ["rot", v, rest @ ..] => {
                let v = lookup(v)?;
                let order = rest.iter().map(|r| lookup(r)).collect::<Result<Vec<_>, _>>()?;
                rots.push((n, v, order));
            }
            [other, ..] => return Err(err(n, format!("unknown or malformed directive `{other}`"))),
            [] => unreachable!("blank lines skipped"),
        }
    }
    if !saw_header {
        return Err(err(1, "empty input"));
    }
    let Some((_, start)) = start else {
        return Err(err(text.lines().count().max(1), "missing `start` directive"));
    };
    let count = vertices.len();
    let mut coord_of = vec![None; count];
    for (n, v, p) in coords {
        if coord_of[v].replace(p).is_some() {
            return Err(err(n, format!("duplicate coord for `{}`", vertices[v].name)));
        }
    }
    let mut rot_of = vec![None; count];
    for (n, v, order) in rots {
        if rot_of[v].replace(order).is_some() {
            return Err(err(n, format!("duplicate rot for `{}`", vertices[v].name)));
        }
    }
    Ok(GeoInstance::from_parts(vertices, arcs, start, coord_of, rot_of))
}

pub fn write_instance(g: &GeoInstance) -> String {
    let mut out = String::from("GG v1\n");
    for v in g.vertices() {
        let _ = writeln!(out, "vertex {} {}", v.name, v.color);
    }
    for &(a, b) in g.arcs() {
        let _ = writeln!(out, "arc {} {}", g.name(a), g.name(b));
    }
    let _ = writeln!(out, "start {}", g.name(g.start()));
    for v in 0..g.len() {
        if let Some((x, y)) = g.coord(v) {
            let _ = writeln!(out, "coord {} {x} {y}", g.name(v));
        }
    }
    for v in 0..g.len() {
        if let Some(order) = g.rotation(v) {
            let names: Vec<&str> = order.iter().map(|&u| g.name(u)).collect();
            let _ = writeln!(out, "rot {} {}", g.name(v), names.join(" "));
        }
    }
    out
}
