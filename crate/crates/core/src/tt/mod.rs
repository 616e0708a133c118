//! Turning Tiles: positions, move generation, and an exact solver.
//!
//! A move slides one token in a straight line over one or more consecutive
//! tiles of the mover's color; every tile passed over turns black and the
//! token stops on the last one. A player with no move loses.

mod board;
pub(crate) mod format;
mod solve;

pub use board::{Board, Coord, Dir, Move, Player, TileColor};
pub use format::{parse_board, write_board};
pub use solve::{solve, solve_calls_on_this_thread, SolveLimits, SolveResult};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TtError {
    #[error("invalid board: {0}")]
    InvalidBoard(String),
    #[error("illegal move {mv}: {reason}")]
    IllegalMove { mv: Move, reason: String },
    #[error("illegal move at index {index} of line: {source}")]
    IllegalLine {
        index: usize,
        #[source]
        source: Box<TtError>,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Every legal move for the player to move, ordered by token, then
/// direction (N, E, S, W), then run length ascending.
pub fn legal_moves(board: &Board) -> Vec<Move> {
    let own = board.turn().tile();
    let mut out = Vec::new();
    for (token, &at) in board.tokens().iter().enumerate() {
        for dir in Dir::ALL {
            let mut steps = 1;
            while let Some(c) = at.step(dir, steps) {
                if board.try_get(c) != Some(own) {
                    break;
                }
                out.push(Move::new(token, dir, steps));
                steps += 1;
            }
        }
    }
    out
}

/// Plays `mv`, returning the successor position.
pub fn apply_move(board: &Board, mv: Move) -> Result<Board, TtError> {
    let mut next = board.clone();
    apply_in_place(&mut next, mv)?;
    Ok(next)
}

pub(crate) fn apply_in_place(board: &mut Board, mv: Move) -> Result<(), TtError> {
    let illegal = |reason: String| TtError::IllegalMove { mv, reason };
    if mv.steps == 0 {
        return Err(illegal("a move must cover at least one tile".into()));
    }
    let Some(&from) = board.tokens().get(mv.token) else {
        return Err(illegal(format!("no token {}", mv.token)));
    };
    let own = board.turn().tile();
    for k in 1..=mv.steps {
        let cell = from.step(mv.dir, k).filter(|&c| board.in_bounds(c));
        let Some(cell) = cell else {
            return Err(illegal(format!("step {k} leaves the board")));
        };
        let color = board.get(cell);
        if color != own {
            return Err(illegal(format!("step {k} reaches {cell}, a {color:?} tile")));
        }
        // Tokens sit on black tiles, so the color check already excludes them.
        debug_assert!(!board.tokens().contains(&cell));
    }
    for k in 1..=mv.steps {
        let cell = from.step(mv.dir, k).expect("checked above");
        let i = board.index(cell);
        board.tiles_mut()[i] = TileColor::Black;
    }
    board.tokens_mut()[mv.token] = from.step(mv.dir, mv.steps).expect("checked above");
    let turn = board.turn().opponent();
    board.set_turn(turn);
    Ok(())
}

/// Plays a sequence of moves from `board`.
pub fn replay(board: &Board, line: &[Move]) -> Result<Board, TtError> {
    let mut cur = board.clone();
    for (index, &mv) in line.iter().enumerate() {
        apply_in_place(&mut cur, mv).map_err(|e| TtError::IllegalLine {
            index,
            source: Box::new(e),
        })?;
    }
    Ok(cur)
}
