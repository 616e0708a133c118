//! The `TT v1` text format.
//!
//! ```text
//! TT v1
//! turn B
//! *bb
//! r..
//! ```
//!
//! `.` black, `b` blue, `r` red, `*` a token on a black tile.

use super::{Board, Coord, Player, TileColor, TtError};

pub(crate) struct Grid {
    pub width: usize,
    pub height: usize,
    pub tiles: Vec<TileColor>,
    pub tokens: Vec<Coord>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> TtError {
    TtError::Parse { line, msg: msg.into() }
}

/// Parses the header and the turn line; returns the turn.
pub(crate) fn parse_header(lines: &[(usize, &str)]) -> Result<Player, TtError> {
    match lines.first() {
        Some(&(_, "TT v1")) => {}
        Some(&(n, other)) => return Err(parse_err(n, format!("expected `TT v1`, found `{other}`"))),
        None => return Err(parse_err(1, "empty input")),
    }
    let Some(&(n, turn_line)) = lines.get(1) else {
        return Err(parse_err(2, "missing `turn` line"));
    };
    match turn_line.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["turn", p] => Player::from_letter(p).ok_or_else(|| parse_err(n, format!("unknown player `{p}`"))),
        _ => Err(parse_err(
            n,
            format!("expected `turn B` or `turn R`, found `{turn_line}`"),
        )),
    }
}

/// Parses grid rows; `rows` carries (1-based line number, text).
pub(crate) fn parse_grid(rows: &[(usize, &str)]) -> Result<Grid, TtError> {
    let Some(&(first_line, first)) = rows.first() else {
        return Err(parse_err(3, "board has no rows"));
    };
    let width = first.chars().count();
    if width == 0 {
        return Err(parse_err(first_line, "empty row"));
    }
    let mut tiles = Vec::with_capacity(width * rows.len());
    let mut tokens = Vec::new();
    for (y, &(n, row)) in rows.iter().enumerate() {
        if row.chars().count() != width {
            return Err(parse_err(
                n,
                format!("ragged row: expected {width} cells, found {}", row.chars().count()),
            ));
        }
        for (x, ch) in row.chars().enumerate() {
            let tile = match ch {
                '.' => TileColor::Black,
                'b' => TileColor::Blue,
                'r' => TileColor::Red,
                '*' => {
                    tokens.push(Coord::new(x, y));
                    TileColor::Black
                }
                other => return Err(parse_err(n, format!("unknown cell character `{other}`"))),
            };
            tiles.push(tile);
        }
    }
    Ok(Grid {
        width,
        height: rows.len(),
        tiles,
        tokens,
    })
}

/// Splits text into numbered lines with trailing whitespace removed and
/// trailing blank lines dropped.
pub(crate) fn numbered_lines(text: &str) -> Vec<(usize, &str)> {
    let mut lines: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end())).collect();
    while lines.last().is_some_and(|(_, l)| l.is_empty()) {
        lines.pop();
    }
    lines
}

pub fn parse_board(text: &str) -> Result<Board, TtError> {
    let lines = numbered_lines(text);
    let turn = parse_header(&lines)?;
    let rows = &lines[2.min(lines.len())..];
    let grid = parse_grid(rows)?;
    if grid.tokens.is_empty() {
        return Err(parse_err(lines.len().max(3), "board has no token `*`"));
    }
    Board::new(grid.width, grid.height, grid.tiles, grid.tokens, turn)
}

pub(crate) fn grid_rows(board: &Board) -> Vec<String> {
    grid_rows_of(board.width(), board.height(), |c| board.get(c), board.tokens())
}

pub(crate) fn grid_rows_of(
    width: usize,
    height: usize,
    tile: impl Fn(Coord) -> TileColor,
    tokens: &[Coord],
) -> Vec<String> {
    (0..height)
        .map(|y| {
            (0..width)
                .map(|x| {
                    let c = Coord::new(x, y);
                    match tile(c) {
                        TileColor::Black if tokens.contains(&c) => '*',
                        TileColor::Black => '.',
                        TileColor::Blue => 'b',
                        TileColor::Red => 'r',
                    }
                })
                .collect()
        })
        .collect()
}

/// Serializes `board`. Token order is not preserved; tokens are read back
/// in row-major order.
pub fn write_board(board: &Board) -> String {
    let mut out = format!("TT v1\nturn {}\n", board.turn());
    for row in grid_rows(board) {
        out.push_str(&row);
        out.push('\n');
    }
    out
}
