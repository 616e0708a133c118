//! Vertex gadgets: small Turning Tiles patches with portals, and a harness
//! that proves each gadget's behavior by exhaustive search.
//!
//! Portal convention, stated for a Blue gadget (Red is the mirror image):
//! the token arrives by a Blue move ending on an in-portal and leaves by a
//! Blue move ending on an out-portal; in both cases Red moves next. The
//! parity gadget is the exception: its out-portal is Red and is reached by
//! a Red move, so the owner moves next.

mod catalog;
mod contract;
mod format;
mod orient;

pub use catalog::{base_gadget, builtin_catalog};
pub use contract::{check_contract, check_contract_padded, ContractCase, ContractReport, Stub};
pub use format::{parse_gadget, write_gadget};
pub use orient::{orient, Transform};

use std::fmt;

use thiserror::Error;

use crate::tt::{Coord, Dir, Player, TileColor};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("malformed gadget: {0}")]
    Malformed(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("harness case `{case}` exceeds the solver budget")]
    HarnessTooLarge { case: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GadgetKind {
    /// The start vertex: token inside, two exits.
    Start,
    /// Outdegree 0, indegree 1.
    Sink01,
    /// Outdegree 1, indegree 1.
    Pass11,
    /// Outdegree 1, indegree 2.
    Merge12,
    /// Outdegree 2, indegree 1.
    Branch21,
    /// Corridor insert that shifts turn parity by one.
    Parity,
}

impl GadgetKind {
    pub const ALL: [GadgetKind; 6] = [
        GadgetKind::Start,
        GadgetKind::Sink01,
        GadgetKind::Pass11,
        GadgetKind::Merge12,
        GadgetKind::Branch21,
        GadgetKind::Parity,
    ];

    /// (in-portals, out-portals).
    pub fn portal_counts(self) -> (usize, usize) {
        match self {
            GadgetKind::Start => (0, 2),
            GadgetKind::Sink01 => (1, 0),
            GadgetKind::Pass11 | GadgetKind::Parity => (1, 1),
            GadgetKind::Merge12 => (2, 1),
            GadgetKind::Branch21 => (1, 2),
        }
    }

    /// The vertex gadget for a non-start vertex with these degrees.
    pub fn for_degrees(outdegree: usize, indegree: usize) -> Option<GadgetKind> {
        match (outdegree, indegree) {
            (0, 1) => Some(GadgetKind::Sink01),
            (1, 1) => Some(GadgetKind::Pass11),
            (1, 2) => Some(GadgetKind::Merge12),
            (2, 1) => Some(GadgetKind::Branch21),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GadgetKind::Start => "Start",
            GadgetKind::Sink01 => "Sink01",
            GadgetKind::Pass11 => "Pass11",
            GadgetKind::Merge12 => "Merge12",
            GadgetKind::Branch21 => "Branch21",
            GadgetKind::Parity => "Parity",
        }
    }

    pub fn from_name(s: &str) -> Option<GadgetKind> {
        GadgetKind::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PortalRole {
    In,
    Out,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Portal {
    pub role: PortalRole,
    /// Side of the patch the portal sits on; also the direction pointing
    /// out of the patch.
    pub side: Dir,
    /// Position along the side: x for N/S sides, y for E/W sides.
    pub offset: usize,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GadgetSpec {
    pub kind: GadgetKind,
    pub owner: Player,
    pub width: usize,
    pub height: usize,
    /// Row-major tiles.
    pub patch: Vec<TileColor>,
    pub portals: Vec<Portal>,
    pub token_cell: Option<Coord>,
}

impl GadgetSpec {
    pub fn tile(&self, c: Coord) -> TileColor {
        self.patch[c.y * self.width + c.x]
    }

    pub fn portal_cell(&self, p: &Portal) -> Coord {
        match p.side {
            Dir::N => Coord::new(p.offset, 0),
            Dir::S => Coord::new(p.offset, self.height - 1),
            Dir::W => Coord::new(0, p.offset),
            Dir::E => Coord::new(self.width - 1, p.offset),
        }
    }

    pub fn portals_with(&self, role: PortalRole) -> impl Iterator<Item = (usize, &Portal)> {
        self.portals.iter().enumerate().filter(move |(_, p)| p.role == role)
    }

    /// Color a portal tile must have.
    pub fn portal_color(&self, role: PortalRole) -> TileColor {
        match (self.kind, role) {
            (GadgetKind::Parity, PortalRole::Out) => self.owner.opponent().tile(),
            _ => self.owner.tile(),
        }
    }

    /// Coordinates of every face-up tile.
    pub fn colored_cells(&self) -> Vec<Coord> {
        (0..self.height)
            .flat_map(|y| (0..self.width).map(move |x| Coord::new(x, y)))
            .filter(|&c| self.tile(c).is_colored())
            .collect()
    }

    /// Blue and Red exchanged in tiles and ownership.
    pub fn color_swapped(&self) -> GadgetSpec {
        GadgetSpec {
            owner: self.owner.opponent(),
            patch: self.patch.iter().map(|t| t.swapped()).collect(),
            ..self.clone()
        }
    }

    /// Checks portal counts, border blackness, portal colors and placement.
    pub fn check_structure(&self) -> Result<(), GadgetError> {
        let bad = |m: String| Err(GadgetError::Malformed(m));
        if self.width < 3 || self.height < 3 || self.patch.len() != self.width * self.height {
            return bad(format!(
                "patch {}x{} is too small or has the wrong tile count",
                self.width, self.height
            ));
        }
        let ins = self.portals_with(PortalRole::In).count();
        let outs = self.portals_with(PortalRole::Out).count();
        if (ins, outs) != self.kind.portal_counts() {
            return bad(format!(
                "{} needs {:?} in/out portals, has ({ins}, {outs})",
                self.kind,
                self.kind.portal_counts()
            ));
        }
        let mut cells = Vec::new();
        for p in &self.portals {
            let along = match p.side {
                Dir::N | Dir::S => self.width,
                Dir::E | Dir::W => self.height,
            };
            if p.offset == 0 || p.offset + 1 >= along {
                return bad(format!("portal {} sits on a corner or off its side", p.label));
            }
            let c = self.portal_cell(p);
            if self.tile(c) != self.portal_color(p.role) {
                return bad(format!("portal {} at {c} has color {:?}", p.label, self.tile(c)));
            }
            if cells.contains(&c) {
                return bad(format!("portal {} shares its cell", p.label));
            }
            cells.push(c);
        }
        for y in 0..self.height {
            for x in 0..self.width {
                let c = Coord::new(x, y);
                let border = x == 0 || y == 0 || x + 1 == self.width || y + 1 == self.height;
                if border && self.tile(c).is_colored() && !cells.contains(&c) {
                    return bad(format!("border cell {c} is colored but not a portal"));
                }
            }
        }
        match (self.kind, self.token_cell) {
            (GadgetKind::Start, Some(t)) => {
                let interior = t.x > 0 && t.y > 0 && t.x + 1 < self.width && t.y + 1 < self.height;
                if !interior || self.tile(t) != TileColor::Black {
                    return bad(format!("token cell {t} must be an interior black tile"));
                }
            }
            (GadgetKind::Start, None) => return bad("Start gadget needs a token cell".into()),
            (_, Some(_)) => return bad(format!("{} gadget cannot hold a token", self.kind)),
            (_, None) => {}
        }
        Ok(())
    }
}
