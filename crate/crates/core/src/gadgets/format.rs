//! Gadget files: a `TT v1` patch whose `turn` line names the owner, then
//! portal directives and an optional kind.
//!
//! ```text
//! TT v1
//! turn B
//! ...
//! brb
//! ...
//! portal in W 1 s
//! portal out E 1 t
//! kind Pass11
//! ```
//!
//! Without a `kind` line the kind follows from the portal counts; a single
//! out-portal in the opponent's color marks a parity gadget. A `*` cell is
//! the Start gadget's token cell.

use super::{GadgetError, GadgetKind, GadgetSpec, Portal, PortalRole};
use crate::tt::format::{grid_rows_of, numbered_lines, parse_grid, parse_header};
use crate::tt::{Dir, TtError};

fn err(line: usize, msg: impl Into<String>) -> GadgetError {
    GadgetError::Parse { line, msg: msg.into() }
}

fn from_tt(e: TtError) -> GadgetError {
    match e {
        TtError::Parse { line, msg } => GadgetError::Parse { line, msg },
        other => GadgetError::Malformed(other.to_string()),
    }
}

pub fn parse_gadget(text: &str) -> Result<GadgetSpec, GadgetError> {
    let lines = numbered_lines(text);
    let owner = parse_header(&lines).map_err(from_tt)?;
    let body = &lines[2.min(lines.len())..];
    let split = body
        .iter()
        .position(|(_, l)| l.starts_with("portal") || l.starts_with("kind"))
        .unwrap_or(body.len());
    let grid = parse_grid(&body[..split]).map_err(from_tt)?;
    if grid.tokens.len() > 1 {
        return Err(err(3, "a gadget holds at most one token cell"));
    }

    let mut portals = Vec::new();
    let mut kind = None;
    for &(n, line) in &body[split..] {
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            [] => {}
            ["portal", role, side, offset, label] => {
                let role = match *role {
                    "in" => PortalRole::In,
                    "out" => PortalRole::Out,
                    r => return Err(err(n, format!("unknown portal role `{r}`"))),
                };
                let side = Dir::from_letter(side).ok_or_else(|| err(n, format!("unknown side `{side}`")))?;
                let offset = offset
                    .parse()
                    .map_err(|_| err(n, format!("bad portal offset `{offset}`")))?;
                portals.push(Portal {
                    role,
                    side,
                    offset,
                    label: label.to_string(),
                });
            }
            ["kind", k] => {
                if kind.is_some() {
                    return Err(err(n, "duplicate `kind` line"));
                }
                kind = Some(GadgetKind::from_name(k).ok_or_else(|| err(n, format!("unknown gadget kind `{k}`")))?);
            }
            _ => {
                return Err(err(
                    n,
                    format!("expected a `portal` or `kind` directive, found `{line}`"),
                ))
            }
        }
    }

    let mut g = GadgetSpec {
        kind: kind.unwrap_or(GadgetKind::Pass11),
        owner,
        width: grid.width,
        height: grid.height,
        patch: grid.tiles,
        portals,
        token_cell: grid.tokens.first().copied(),
    };
    if kind.is_none() {
        g.kind = infer_kind(&g)?;
    }
    g.check_structure()?;
    Ok(g)
}

fn infer_kind(g: &GadgetSpec) -> Result<GadgetKind, GadgetError> {
    let ins = g.portals_with(PortalRole::In).count();
    let outs: Vec<_> = g.portals_with(PortalRole::Out).collect();
    let kind = match (ins, outs.len()) {
        (0, 2) => GadgetKind::Start,
        (1, 0) => GadgetKind::Sink01,
        (1, 1) => {
            let cell = g.portal_cell(outs[0].1);
            if g.width * g.height == g.patch.len() && g.tile(cell) == g.owner.opponent().tile() {
                GadgetKind::Parity
            } else {
                GadgetKind::Pass11
            }
        }
        (2, 1) => GadgetKind::Merge12,
        (1, 2) => GadgetKind::Branch21,
        (i, o) => {
            return Err(GadgetError::Malformed(format!(
                "no gadget kind has {i} in- and {o} out-portals"
            )))
        }
    };
    Ok(kind)
}

pub fn write_gadget(g: &GadgetSpec) -> String {
    let mut out = format!("TT v1\nturn {}\n", g.owner);
    for row in grid_rows_of(g.width, g.height, |c| g.tile(c), g.token_cell.as_slice()) {
        out.push_str(&row);
        out.push('\n');
    }
    for p in &g.portals {
        let role = match p.role {
            PortalRole::In => "in",
            PortalRole::Out => "out",
        };
        out.push_str(&format!("portal {role} {} {} {}\n", p.side.letter(), p.offset, p.label));
    }
    out.push_str(&format!("kind {}\n", g.kind));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::builtin_catalog;

    #[test]
    fn catalog_round_trips() {
        for g in builtin_catalog() {
            assert_eq!(parse_gadget(&write_gadget(&g)).unwrap(), g);
        }
    }

    #[test]
    fn kind_is_inferred() {
        for g in builtin_catalog() {
            let text = write_gadget(&g);
            let without: String = text
                .lines()
                .filter(|l| !l.starts_with("kind"))
                .map(|l| format!("{l}\n"))
                .collect();
            assert_eq!(parse_gadget(&without).unwrap().kind, g.kind);
        }
    }

    #[test]
    fn bad_directives_are_rejected() {
        let base = "TT v1\nturn B\n...\nbrb\n...\n";
        for (tail, line) in [
            ("portal up W 1 s\n", 6),
            ("portal in Q 1 s\n", 6),
            ("portal in W x s\n", 6),
            ("portal in W 1 s\nkind Nope\n", 7),
            ("portal in W 1 s\nfoo\n", 7),
        ] {
            match parse_gadget(&format!("{base}{tail}")) {
                Err(GadgetError::Parse { line: l, .. }) => assert_eq!(l, line, "{tail}"),
                other => panic!("{tail}: {other:?}"),
            }
        }
    }

    #[test]
    fn structure_is_checked() {
        // Portal on the wrong color.
        let text = "TT v1\nturn B\n...\nrrb\n...\nportal in W 1 s\nportal out E 1 t\n";
        assert!(matches!(parse_gadget(text), Err(GadgetError::Malformed(_))));
    }
}
