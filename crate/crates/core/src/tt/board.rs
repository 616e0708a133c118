use std::fmt;

use super::TtError;

/// One of the two players. Also names the two face-up tile colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Blue,
    Red,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Blue => Player::Red,
            Player::Red => Player::Blue,
        }
    }

    /// The face-up tile color this player may move over.
    pub fn tile(self) -> TileColor {
        match self {
            Player::Blue => TileColor::Blue,
            Player::Red => TileColor::Red,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Player::Blue => 'B',
            Player::Red => 'R',
        }
    }

    pub fn from_letter(c: &str) -> Option<Player> {
        match c {
            "B" => Some(Player::Blue),
            "R" => Some(Player::Red),
            _ => None,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TileColor {
    Blue,
    Red,
    Black,
}

impl TileColor {
    pub fn owner(self) -> Option<Player> {
        match self {
            TileColor::Blue => Some(Player::Blue),
            TileColor::Red => Some(Player::Red),
            TileColor::Black => None,
        }
    }

    pub fn is_colored(self) -> bool {
        self != TileColor::Black
    }

    /// Blue and Red exchanged; Black is fixed.
    pub fn swapped(self) -> TileColor {
        match self {
            TileColor::Blue => TileColor::Red,
            TileColor::Red => TileColor::Blue,
            TileColor::Black => TileColor::Black,
        }
    }
}

/// A grid cell, `x` growing east and `y` growing south.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coord {
    pub x: usize,
    pub y: usize,
}

impl Coord {
    pub const fn new(x: usize, y: usize) -> Coord {
        Coord { x, y }
    }

    /// The neighbor `steps` cells away in `dir`, if it stays non-negative.
    pub fn step(self, dir: Dir, steps: usize) -> Option<Coord> {
        let (dx, dy) = dir.delta();
        let x = self.x as isize + dx * steps as isize;
        let y = self.y as isize + dy * steps as isize;
        (x >= 0 && y >= 0).then(|| Coord::new(x as usize, y as usize))
    }

    pub fn manhattan(self, other: Coord) -> usize {
        self.x.abs_diff(other.x) + self.y.abs_diff(other.y)
    }

    pub fn is_adjacent(self, other: Coord) -> bool {
        self.manhattan(other) == 1
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Compass direction. The derived order N < E < S < W is the move order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    N,
    E,
    S,
    W,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::N, Dir::E, Dir::S, Dir::W];

    pub fn delta(self) -> (isize, isize) {
        match self {
            Dir::N => (0, -1),
            Dir::E => (1, 0),
            Dir::S => (0, 1),
            Dir::W => (-1, 0),
        }
    }

    pub fn opposite(self) -> Dir {
        match self {
            Dir::N => Dir::S,
            Dir::E => Dir::W,
            Dir::S => Dir::N,
            Dir::W => Dir::E,
        }
    }

    /// Clockwise quarter turn.
    pub fn cw(self) -> Dir {
        match self {
            Dir::N => Dir::E,
            Dir::E => Dir::S,
            Dir::S => Dir::W,
            Dir::W => Dir::N,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Dir::N => 'N',
            Dir::E => 'E',
            Dir::S => 'S',
            Dir::W => 'W',
        }
    }

    pub fn from_letter(s: &str) -> Option<Dir> {
        match s {
            "N" => Some(Dir::N),
            "E" => Some(Dir::E),
            "S" => Some(Dir::S),
            "W" => Some(Dir::W),
            _ => None,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Slide token `token` by `steps` cells in `dir`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    pub token: usize,
    pub dir: Dir,
    pub steps: usize,
}

impl Move {
    pub const fn new(token: usize, dir: Dir, steps: usize) -> Move {
        Move { token, dir, steps }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.token, self.dir.letter(), self.steps)
    }
}

/// A Turning Tiles position.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Board {
    width: usize,
    height: usize,
    tiles: Vec<TileColor>,
    tokens: Vec<Coord>,
    turn: Player,
}

impl Board {
    /// Builds a board, checking every structural invariant.
    pub fn new(
        width: usize,
        height: usize,
        tiles: Vec<TileColor>,
        tokens: Vec<Coord>,
        turn: Player,
    ) -> Result<Board, TtError> {
        if width == 0 || height == 0 {
            return Err(TtError::InvalidBoard("board must be at least 1x1".into()));
        }
        if tiles.len() != width * height {
            return Err(TtError::InvalidBoard(format!(
                "expected {} tiles, got {}",
                width * height,
                tiles.len()
            )));
        }
        if tokens.is_empty() {
            return Err(TtError::InvalidBoard("board has no token".into()));
        }
        for (i, &t) in tokens.iter().enumerate() {
            if t.x >= width || t.y >= height {
                return Err(TtError::InvalidBoard(format!("token {i} at {t} is off the board")));
            }
            if tiles[t.y * width + t.x] != TileColor::Black {
                return Err(TtError::InvalidBoard(format!(
                    "token {i} at {t} is not on a black tile"
                )));
            }
            if tokens[..i].contains(&t) {
                return Err(TtError::InvalidBoard(format!("two tokens share cell {t}")));
            }
        }
        Ok(Board {
            width,
            height,
            tiles,
            tokens,
            turn,
        })
    }

    /// An all-black board with the given tokens.
    pub fn black(width: usize, height: usize, tokens: Vec<Coord>, turn: Player) -> Result<Board, TtError> {
        Board::new(width, height, vec![TileColor::Black; width * height], tokens, turn)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Board side used by the size bounds: the larger dimension.
    pub fn side(&self) -> usize {
        self.width.max(self.height)
    }

    pub fn turn(&self) -> Player {
        self.turn
    }

    pub fn tokens(&self) -> &[Coord] {
        &self.tokens
    }

    pub fn tiles(&self) -> &[TileColor] {
        &self.tiles
    }

    pub fn in_bounds(&self, c: Coord) -> bool {
        c.x < self.width && c.y < self.height
    }

    pub fn index(&self, c: Coord) -> usize {
        c.y * self.width + c.x
    }

    pub fn coord(&self, index: usize) -> Coord {
        Coord::new(index % self.width, index / self.width)
    }

    /// Tile at `c`; panics when out of bounds.
    pub fn get(&self, c: Coord) -> TileColor {
        self.tiles[self.index(c)]
    }

    /// Tile at `c`, or `None` off the board.
    pub fn try_get(&self, c: Coord) -> Option<TileColor> {
        self.in_bounds(c).then(|| self.get(c))
    }

    /// Overwrites a tile. Fails if it would put a token on a face-up tile.
    pub fn set(&mut self, c: Coord, color: TileColor) -> Result<(), TtError> {
        if !self.in_bounds(c) {
            return Err(TtError::InvalidBoard(format!("cell {c} is off the board")));
        }
        if color != TileColor::Black && self.tokens.contains(&c) {
            return Err(TtError::InvalidBoard(format!("cell {c} holds a token")));
        }
        let i = self.index(c);
        self.tiles[i] = color;
        Ok(())
    }

    pub fn set_turn(&mut self, turn: Player) {
        self.turn = turn;
    }

    /// Moves token `token` to `to`, which must be a free black cell.
    pub fn place_token(&mut self, token: usize, to: Coord) -> Result<(), TtError> {
        if token >= self.tokens.len() {
            return Err(TtError::InvalidBoard(format!("no token {token}")));
        }
        if self.try_get(to) != Some(TileColor::Black) {
            return Err(TtError::InvalidBoard(format!("cell {to} is not a black tile")));
        }
        if self.tokens.iter().enumerate().any(|(i, &t)| i != token && t == to) {
            return Err(TtError::InvalidBoard(format!("cell {to} already holds a token")));
        }
        self.tokens[token] = to;
        Ok(())
    }

    /// Adds a token on a free black cell.
    pub fn add_token(&mut self, at: Coord) -> Result<(), TtError> {
        if self.try_get(at) != Some(TileColor::Black) || self.tokens.contains(&at) {
            return Err(TtError::InvalidBoard(format!("cannot add a token at {at}")));
        }
        self.tokens.push(at);
        Ok(())
    }

    pub fn colored_count(&self) -> usize {
        self.tiles.iter().filter(|t| t.is_colored()).count()
    }

    pub fn count(&self, color: TileColor) -> usize {
        self.tiles.iter().filter(|&&t| t == color).count()
    }

    /// Blue and Red exchanged in every tile and in the turn.
    pub fn color_swapped(&self) -> Board {
        Board {
            width: self.width,
            height: self.height,
            tiles: self.tiles.iter().map(|t| t.swapped()).collect(),
            tokens: self.tokens.clone(),
            turn: self.turn.opponent(),
        }
    }

    /// Surrounds the board with `margin` rings of black tiles.
    pub fn padded(&self, margin: usize) -> Board {
        let width = self.width + 2 * margin;
        let height = self.height + 2 * margin;
        let mut tiles = vec![TileColor::Black; width * height];
        for y in 0..self.height {
            for x in 0..self.width {
                tiles[(y + margin) * width + x + margin] = self.tiles[y * self.width + x];
            }
        }
        Board {
            width,
            height,
            tiles,
            tokens: self
                .tokens
                .iter()
                .map(|t| Coord::new(t.x + margin, t.y + margin))
                .collect(),
            turn: self.turn,
        }
    }

    /// 4-neighbors of `c` that lie on the board.
    pub fn neighbors(&self, c: Coord) -> impl Iterator<Item = Coord> + '_ {
        Dir::ALL
            .into_iter()
            .filter_map(move |d| c.step(d, 1))
            .filter(move |&n| self.in_bounds(n))
    }

    pub(crate) fn tiles_mut(&mut self) -> &mut [TileColor] {
        &mut self.tiles
    }

    pub(crate) fn tokens_mut(&mut self) -> &mut [Coord] {
        &mut self.tokens
    }
}
