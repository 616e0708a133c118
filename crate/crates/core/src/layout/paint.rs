use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{LayoutError, LayoutPlan, AREA_CONSTANT};
use crate::gadgets::GadgetKind;
use crate::tt::{Board, Coord, Player, TileColor};

/// Stamps gadgets, corridors and parity decoys onto an all-black board with
/// the token in the start gadget and Blue to move.
pub fn paint(plan: &LayoutPlan) -> Result<Board, LayoutError> {
    let start = &plan.placements[plan.instance.start()];
    let token = start.to_board(start.gadget.token_cell.expect("start gadget has a token cell"));
    let mut board = Board::black(plan.width, plan.height, vec![token], Player::Blue)
        .expect("plan dimensions are positive and the token is on the board");
    let stamp = |board: &mut Board, c: Coord, color: TileColor| -> Result<(), LayoutError> {
        if board.try_get(c) != Some(TileColor::Black) || c == token {
            return Err(LayoutError::OverlapDetected { at: c });
        }
        board.set(c, color).map_err(|_| LayoutError::OverlapDetected { at: c })
    };
    for p in &plan.placements {
        for (c, color) in p.colored_cells() {
            stamp(&mut board, c, color)?;
        }
    }
    let g = &plan.instance;
    for r in &plan.routes {
        for (c, color) in r.painted_cells(g.color(g.arcs()[r.arc].0)) {
            stamp(&mut board, c, color)?;
        }
    }
    Ok(board)
}

/// `key<TAB>value` lines describing the size of a painted plan.
pub fn area_report(plan: &LayoutPlan, board: &Board) -> String {
    let g = &plan.instance;
    let gadget_cells: usize = plan.placements.iter().map(|p| p.gadget.colored_cells().len()).sum();
    let corridor_cells: usize = plan
        .routes
        .iter()
        .map(|r| r.painted_cells(g.color(g.arcs()[r.arc].0)).len())
        .sum();
    let mut kinds: BTreeMap<GadgetKind, usize> = BTreeMap::new();
    for p in &plan.placements {
        *kinds.entry(p.gadget.kind).or_default() += 1;
    }
    let mut rows: Vec<(String, String)> = vec![
        ("width".into(), board.width().to_string()),
        ("height".into(), board.height().to_string()),
        ("area".into(), (board.width() * board.height()).to_string()),
        ("vertices".into(), g.len().to_string()),
        ("arcs".into(), g.arcs().len().to_string()),
        ("super_cell".into(), plan.super_cell.to_string()),
        ("area_constant".into(), AREA_CONSTANT.to_string()),
        ("area_bound".into(), plan.area_bound().to_string()),
        ("gadget_cells".into(), gadget_cells.to_string()),
        ("corridor_cells".into(), corridor_cells.to_string()),
        ("colored_cells".into(), board.colored_count().to_string()),
        ("parity_insertions".into(), plan.parity_insertions().to_string()),
    ];
    for (kind, n) in kinds {
        rows.push((format!("gadgets_{kind}"), n.to_string()));
    }
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k}\t{v}");
    }
    out
}
