use std::fmt::Write as _;

use tilegeo::tt::write_board;
use tilegeo::{Board, Coord, TileColor};

const CELL: usize = 16;
const LEGEND_HEIGHT: usize = 4 * CELL;

/// Number of legend text elements in every SVG rendering.
pub const LEGEND_ELEMENTS: usize = 4;

/// The board as a `TT v1` document.
pub fn render_ascii(board: &Board) -> String {
    write_board(board)
}

/// One square per tile, one circle per token, and a fixed coordinate legend
/// below the board.
pub fn render_svg(board: &Board) -> String {
    let (w, h) = (board.width() * CELL, board.height() * CELL);
    let total_h = h + LEGEND_HEIGHT;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{total_h}" viewBox="0 0 {w} {total_h}">"#
    );
    for y in 0..board.height() {
        for x in 0..board.width() {
            let fill = match board.get(Coord::new(x, y)) {
                TileColor::Blue => "#2f6fdf",
                TileColor::Red => "#d9412b",
                TileColor::Black => "#161616",
            };
            let _ = writeln!(
                s,
                r##"<rect x="{}" y="{}" width="{CELL}" height="{CELL}" fill="{fill}" stroke="#444" stroke-width="0.5"/>"##,
                x * CELL,
                y * CELL
            );
        }
    }
    for t in board.tokens() {
        let _ = writeln!(
            s,
            r##"<circle cx="{}" cy="{}" r="{}" fill="#f2d22e"/>"##,
            t.x * CELL + CELL / 2,
            t.y * CELL + CELL / 2,
            CELL * 3 / 8
        );
    }
    let legend = [
        "origin (0,0) at top left".to_string(),
        "x grows to the right".to_string(),
        "y grows downward".to_string(),
        format!("{} x {} tiles, {} to move", board.width(), board.height(), board.turn()),
    ];
    for (i, line) in legend.iter().enumerate() {
        let _ = writeln!(
            s,
            r##"<text x="2" y="{}" font-family="monospace" font-size="11" fill="#000">{line}</text>"##,
            h + (i + 1) * CELL - 4
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use tilegeo::tt::parse_board;

    #[test]
    fn element_count_is_tiles_plus_tokens_plus_legend() {
        let b = parse_board("TT v1\nturn R\n*br.\n.r.*\n").unwrap();
        let svg = render_svg(&b);
        let count = |tag: &str| svg.matches(&format!("<{tag} ")).count();
        assert_eq!(count("rect"), 8);
        assert_eq!(count("circle"), 2);
        assert_eq!(count("text"), LEGEND_ELEMENTS);
    }

    #[test]
    fn ascii_is_the_text_format() {
        let text = "TT v1\nturn B\n*bb\n";
        assert_eq!(render_ascii(&parse_board(text).unwrap()), text);
    }
}
