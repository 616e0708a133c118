use std::cell::Cell;
use std::collections::HashMap;

use super::{Board, Coord, Dir, Move, Player, TileColor};

thread_local! {
    static SOLVE_CALLS: Cell<u64> = const { Cell::new(0) };
}

/// Number of [`solve`] calls made so far on the current thread.
pub fn solve_calls_on_this_thread() -> u64 {
    SOLVE_CALLS.with(|c| c.get())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveLimits {
    /// Abort after visiting this many positions.
    pub max_nodes: u64,
}

impl SolveLimits {
    pub const DEFAULT_MAX_NODES: u64 = 50_000_000;

    pub fn nodes(max_nodes: u64) -> SolveLimits {
        SolveLimits { max_nodes }
    }
}

impl Default for SolveLimits {
    fn default() -> Self {
        SolveLimits::nodes(Self::DEFAULT_MAX_NODES)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    /// `None` exactly when the search was aborted.
    pub winner: Option<Player>,
    /// Optimal play from the root: the winner always picks a winning move
    /// and the loser the first move in search order.
    pub principal_line: Option<Vec<Move>>,
    pub nodes_expanded: u64,
    pub exhausted: bool,
    /// Largest number of legal moves seen in any searched position.
    pub max_branching: usize,
    /// Largest number of legal moves of a single token in any searched position.
    pub max_token_branching: usize,
    /// Longest line (in plies) reached from the root.
    pub max_depth: usize,
}

struct Exhausted;

struct Undo {
    token: usize,
    from: Coord,
    steps: usize,
    color: TileColor,
}

struct Search {
    board: Board,
    flipped: Vec<u32>,
    memo: HashMap<Vec<u32>, bool>,
    nodes: u64,
    max_nodes: u64,
    max_branching: usize,
    max_token_branching: usize,
    max_depth: usize,
}

impl Search {
    fn new(board: &Board, limits: &SolveLimits) -> Search {
        Search {
            board: board.clone(),
            flipped: Vec::new(),
            memo: HashMap::new(),
            nodes: 0,
            max_nodes: limits.max_nodes,
            max_branching: 0,
            max_token_branching: 0,
            max_depth: 0,
        }
    }

    /// Legal moves, longest run first within each token and direction.
    fn moves(&mut self) -> Vec<Move> {
        let own = self.board.turn().tile();
        let mut out = Vec::new();
        for (token, &at) in self.board.tokens().iter().enumerate() {
            let before = out.len();
            for dir in Dir::ALL {
                let mut run = 0;
                while let Some(c) = at.step(dir, run + 1) {
                    if self.board.try_get(c) != Some(own) {
                        break;
                    }
                    run += 1;
                }
                out.extend((1..=run).rev().map(|steps| Move::new(token, dir, steps)));
            }
            self.max_token_branching = self.max_token_branching.max(out.len() - before);
        }
        self.max_branching = self.max_branching.max(out.len());
        out
    }

    fn play(&mut self, mv: Move) -> Undo {
        let from = self.board.tokens()[mv.token];
        let color = self.board.turn().tile();
        for k in 1..=mv.steps {
            let cell = from.step(mv.dir, k).expect("generated move");
            let i = self.board.index(cell);
            self.board.tiles_mut()[i] = TileColor::Black;
            self.flipped.push(i as u32);
        }
        self.board.tokens_mut()[mv.token] = from.step(mv.dir, mv.steps).expect("generated move");
        let next = self.board.turn().opponent();
        self.board.set_turn(next);
        Undo {
            token: mv.token,
            from,
            steps: mv.steps,
            color,
        }
    }

    fn undo(&mut self, u: Undo) {
        for _ in 0..u.steps {
            let i = self.flipped.pop().expect("undo matches play") as usize;
            self.board.tiles_mut()[i] = u.color;
        }
        self.board.tokens_mut()[u.token] = u.from;
        let prev = self.board.turn().opponent();
        self.board.set_turn(prev);
    }

    /// Exact position key: turn, token multiset, and flipped-cell set.
    fn key(&self) -> Vec<u32> {
        let mut tokens: Vec<u32> = self
            .board
            .tokens()
            .iter()
            .map(|&c| self.board.index(c) as u32)
            .collect();
        tokens.sort_unstable();
        let mut flipped = self.flipped.clone();
        flipped.sort_unstable();
        let mut key = Vec::with_capacity(2 + tokens.len() + flipped.len());
        key.push(self.board.turn() as u32);
        key.push(tokens.len() as u32);
        key.extend(tokens);
        key.extend(flipped);
        key
    }

    fn tick(&mut self, depth: usize) -> Result<(), Exhausted> {
        self.nodes += 1;
        self.max_depth = self.max_depth.max(depth);
        if self.nodes > self.max_nodes {
            return Err(Exhausted);
        }
        Ok(())
    }

    /// Whether the player to move wins. Chains of forced moves are followed
    /// iteratively; only branching positions are memoized.
    fn wins(&mut self, depth: usize) -> Result<bool, Exhausted> {
        let mut forced: Vec<Undo> = Vec::new();
        let result = loop {
            self.tick(depth + forced.len())?;
            let moves = self.moves();
            match moves.len() {
                0 => break false,
                1 => {
                    let u = self.play(moves[0]);
                    forced.push(u);
                }
                _ => {
                    let key = self.key();
                    if let Some(&v) = self.memo.get(&key) {
                        break v;
                    }
                    let mut win = false;
                    for mv in moves {
                        let u = self.play(mv);
                        let child = self.wins(depth + forced.len() + 1)?;
                        self.undo(u);
                        if !child {
                            win = true;
                            break;
                        }
                    }
                    self.memo.insert(key, win);
                    break win;
                }
            }
        };
        let flips = forced.len() % 2 == 1;
        for u in forced.into_iter().rev() {
            self.undo(u);
        }
        Ok(result != flips)
    }

    fn principal_line(&mut self) -> Result<Vec<Move>, Exhausted> {
        let mut line = Vec::new();
        let mut undos = Vec::new();
        loop {
            let moves = self.moves();
            if moves.is_empty() {
                break;
            }
            let mut chosen = moves[0];
            if moves.len() > 1 && self.wins(line.len())? {
                for mv in moves {
                    let u = self.play(mv);
                    let child = self.wins(line.len() + 1)?;
                    self.undo(u);
                    if !child {
                        chosen = mv;
                        break;
                    }
                }
            }
            undos.push(self.play(chosen));
            line.push(chosen);
        }
        for u in undos.into_iter().rev() {
            self.undo(u);
        }
        Ok(line)
    }
}

/// Decides the winner of `board` under optimal play.
pub fn solve(board: &Board, limits: &SolveLimits) -> SolveResult {
    SOLVE_CALLS.with(|c| c.set(c.get() + 1));
    let mut search = Search::new(board, limits);
    let outcome = search
        .wins(0)
        .and_then(|mover_wins| Ok((mover_wins, search.principal_line()?)));
    let (winner, principal_line) = match outcome {
        Ok((mover_wins, line)) => {
            let mover = board.turn();
            (Some(if mover_wins { mover } else { mover.opponent() }), Some(line))
        }
        Err(Exhausted) => (None, None),
    };
    SolveResult {
        exhausted: winner.is_none(),
        winner,
        principal_line,
        nodes_expanded: search.nodes,
        max_branching: search.max_branching,
        max_token_branching: search.max_token_branching,
        max_depth: search.max_depth,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tt::{legal_moves, parse_board, replay};

    #[test]
    fn stuck_mover_loses() {
        let b = parse_board("TT v1\nturn B\n*\n").unwrap();
        let r = solve(&b, &SolveLimits::default());
        assert_eq!(r.winner, Some(Player::Red));
        assert_eq!(r.principal_line, Some(vec![]));
    }

    #[test]
    fn blue_wins_when_red_has_no_tiles() {
        let b = parse_board("TT v1\nturn B\n*bb\n").unwrap();
        let r = solve(&b, &SolveLimits::default());
        assert_eq!(r.winner, Some(Player::Blue));
        let end = replay(&b, r.principal_line.as_ref().unwrap()).unwrap();
        assert!(legal_moves(&end).is_empty());
        assert_eq!(end.turn(), Player::Red);
    }

    #[test]
    fn early_stop_can_win() {
        // Blue must stop on the first tile; running to the end lets Red reply.
        let b = parse_board("TT v1\nturn B\n*bb\n..r\n").unwrap();
        let r = solve(&b, &SolveLimits::default());
        assert_eq!(r.winner, Some(Player::Blue));
        assert_eq!(r.principal_line.unwrap(), vec![Move::new(0, Dir::E, 1)]);
    }

    #[test]
    fn node_limit_aborts() {
        let b = parse_board("TT v1\nturn B\n*brbrbr\nbrbrbrb\nrbrbrbr\n").unwrap();
        let r = solve(&b, &SolveLimits::nodes(3));
        assert!(r.exhausted);
        assert_eq!(r.winner, None);
        assert_eq!(r.principal_line, None);
    }

    #[test]
    fn counts_calls_per_thread() {
        let before = solve_calls_on_this_thread();
        let b = parse_board("TT v1\nturn B\n*\n").unwrap();
        solve(&b, &SolveLimits::default());
        assert_eq!(solve_calls_on_this_thread(), before + 1);
    }
}
