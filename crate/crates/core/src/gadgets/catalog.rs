use super::{orient, GadgetKind, GadgetSpec, Portal, PortalRole, Transform};
use crate::tt::{Coord, Dir, Player, TileColor};

/// Builds a Blue gadget from rows over `.`, `b`, `r`, `*` (token cell).
fn from_rows(kind: GadgetKind, rows: &[&str], portals: &[(PortalRole, Dir, usize, &str)]) -> GadgetSpec {
    let width = rows[0].len();
    let mut patch = Vec::new();
    let mut token_cell = None;
    for (y, row) in rows.iter().enumerate() {
        assert_eq!(row.len(), width, "ragged gadget row");
        for (x, ch) in row.chars().enumerate() {
            patch.push(match ch {
                'b' => TileColor::Blue,
                'r' => TileColor::Red,
                '*' => {
                    token_cell = Some(Coord::new(x, y));
                    TileColor::Black
                }
                _ => TileColor::Black,
            });
        }
    }
    GadgetSpec {
        kind,
        owner: Player::Blue,
        width,
        height: rows.len(),
        patch,
        portals: portals
            .iter()
            .map(|&(role, side, offset, label)| Portal {
                role,
                side,
                offset,
                label: label.to_string(),
            })
            .collect(),
        token_cell,
    }
}

use PortalRole::{In, Out};

/// The Blue, unrotated layout of each gadget kind.
pub fn base_gadget(kind: GadgetKind) -> GadgetSpec {
    match kind {
        // Blue steps onto the tile below the token, Red steps below that,
        // then Blue turns west or east; each arm is a forced pass to a portal.
        GadgetKind::Start => from_rows(
            kind,
            &[
                ".......", //
                "...*...", "...b...", "brbrbrb", ".......",
            ],
            &[(Out, Dir::W, 3, "t1"), (Out, Dir::E, 3, "t2")],
        ),
        // The arriving token faces a single red tile and nothing after it.
        GadgetKind::Sink01 => from_rows(
            kind,
            &[
                "...", //
                "br.", "...",
            ],
            &[(In, Dir::W, 1, "s")],
        ),
        GadgetKind::Pass11 => from_rows(
            kind,
            &[
                "...", //
                "brb", "...",
            ],
            &[(In, Dir::W, 1, "s"), (Out, Dir::E, 1, "t")],
        ),
        // Both entries feed Red runs of two tiles that meet at the center.
        // Stopping either run after one tile lets Blue reply onto the
        // dead-end blue tile beside it. A second entry finds the center
        // already black and can only stop early.
        GadgetKind::Merge12 => from_rows(
            kind,
            &[
                "..b..", //
                "..rb.", "brr..", ".bb..", "..r..", "..b..",
            ],
            &[(In, Dir::W, 2, "s1"), (In, Dir::N, 2, "s2"), (Out, Dir::S, 2, "t")],
        ),
        GadgetKind::Branch21 => from_rows(
            kind,
            &[
                "...b...", //
                "brbrbrb", ".......",
            ],
            &[(In, Dir::N, 3, "s"), (Out, Dir::W, 1, "t1"), (Out, Dir::E, 1, "t2")],
        ),
        // A two-tile Blue run crossed in one move. The red tile under its
        // first cell punishes stopping halfway.
        GadgetKind::Parity => from_rows(
            kind,
            &[
                ".....", //
                "brbbr", "..r..", ".....",
            ],
            &[(In, Dir::W, 1, "s"), (Out, Dir::E, 1, "t")],
        ),
    }
}

/// Every kind, in both colors, in all eight orientations.
pub fn builtin_catalog() -> Vec<GadgetSpec> {
    let mut out = Vec::new();
    for kind in GadgetKind::ALL {
        let blue = base_gadget(kind);
        for g in [blue.clone(), blue.color_swapped()] {
            for t in Transform::ALL {
                out.push(orient(&g, t));
            }
        }
    }
    out
}
