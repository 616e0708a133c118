use super::ReductionTrace;
use crate::gg::{gg_moves, gg_solve, GeoPosition, GgLimits};
use crate::tt::{apply_move, Move, Player, TtError};

/// The Geography play simulated by a Turning Tiles line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedLine {
    /// Normalized-instance vertices whose gadgets the token entered, in
    /// order, starting with the start vertex.
    pub vertices: Vec<usize>,
    /// The line later re-entered an already visited gadget, which cut the
    /// lift short there.
    pub reentered: bool,
}

/// Maps each position of `line` (played on `trace.board`) to the gadget
/// holding the token.
pub fn lift_principal_line(trace: &ReductionTrace, line: &[Move]) -> Result<LiftedLine, TtError> {
    let plan = &trace.plan;
    let mut board = trace.board.clone();
    let mut vertices = vec![plan.instance.start()];
    let mut reentered = false;
    for &mv in line {
        board = apply_move(&board, mv)?;
        let Some(v) = plan.placement_at(board.tokens()[mv.token]) else {
            continue;
        };
        if *vertices.last().unwrap() == v {
            continue;
        }
        if vertices.contains(&v) {
            reentered = true;
            break;
        }
        vertices.push(v);
    }
    Ok(LiftedLine { vertices, reentered })
}

impl LiftedLine {
    /// Checks that the lifted play is legal in the normalized instance and
    /// that every position along it is still won by `winner`.
    pub fn check(&self, trace: &ReductionTrace, winner: Player, limits: &GgLimits) -> Result<(), String> {
        let g = &trace.normalized;
        let mut pos = GeoPosition::start(g).map_err(|e| e.to_string())?;
        for (i, &v) in self.vertices.iter().enumerate() {
            if i > 0 {
                if !gg_moves(&pos).contains(&v) {
                    return Err(format!("{} -> {} is not a legal move", g.name(pos.current), g.name(v)));
                }
                pos = pos.advance(v);
            }
            let w = gg_solve(&pos, limits).map_err(|e| e.to_string())?.winner;
            if w != winner {
                return Err(format!("after reaching {} the winner becomes {w}", g.name(v)));
            }
        }
        Ok(())
    }
}
