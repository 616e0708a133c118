//! Brute-force oracles written straight from the rules, sharing no search
//! or move-generation code with the library.

#![allow(dead_code)]

use tilegeo::gg::GeoInstance;
use tilegeo::{Board, Coord, Player, TileColor};

struct Tt {
    w: i64,
    h: i64,
    cells: Vec<Option<Player>>,
    tokens: Vec<(i64, i64)>,
}

impl Tt {
    fn mover_wins(&mut self, turn: Player) -> bool {
        for t in 0..self.tokens.len() {
            let (x0, y0) = self.tokens[t];
            for (dx, dy) in [(0, -1), (1, 0), (0, 1), (-1, 0)] {
                let mut path = Vec::new();
                let (mut x, mut y) = (x0, y0);
                loop {
                    x += dx;
                    y += dy;
                    if x < 0 || y < 0 || x >= self.w || y >= self.h {
                        break;
                    }
                    let i = (y * self.w + x) as usize;
                    if self.cells[i] != Some(turn) {
                        break;
                    }
                    path.push(i);
                    for &p in &path {
                        self.cells[p] = None;
                    }
                    self.tokens[t] = (x, y);
                    let reply = self.mover_wins(turn.opponent());
                    self.tokens[t] = (x0, y0);
                    for &p in &path {
                        self.cells[p] = Some(turn);
                    }
                    if !reply {
                        return true;
                    }
                }
            }
        }
        false
    }
}

pub fn tt_naive_winner(board: &Board) -> Player {
    let cells = (0..board.height())
        .flat_map(|y| (0..board.width()).map(move |x| Coord::new(x, y)))
        .map(|c| match board.get(c) {
            TileColor::Blue => Some(Player::Blue),
            TileColor::Red => Some(Player::Red),
            TileColor::Black => None,
        })
        .collect();
    let mut tt = Tt {
        w: board.width() as i64,
        h: board.height() as i64,
        cells,
        tokens: board.tokens().iter().map(|c| (c.x as i64, c.y as i64)).collect(),
    };
    let mover = board.turn();
    if tt.mover_wins(mover) {
        mover
    } else {
        mover.opponent()
    }
}

fn gg_mover_wins(adj: &[Vec<usize>], cur: usize, visited: u64) -> bool {
    adj[cur]
        .iter()
        .any(|&v| visited & (1 << v) == 0 && !gg_mover_wins(adj, v, visited | (1 << v)))
}

pub fn gg_naive_winner(g: &GeoInstance) -> Player {
    let adj: Vec<Vec<usize>> = (0..g.len()).map(|v| g.out_neighbors(v).to_vec()).collect();
    let s = g.start();
    let mover = g.color(s);
    if gg_mover_wins(&adj, s, 1 << s) {
        mover
    } else {
        mover.opponent()
    }
}
