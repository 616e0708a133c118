//! Places vertex gadgets on a coarse grid, routes alternating-color
//! corridors between their portals, repairs corridor parity and paints the
//! result onto a Turning Tiles board.
//!
//! Every vertex gets a square super-cell of side `super_cell`, indexed by
//! the rank of its x and y coordinate in the embedding, with its gadget
//! centered inside. Corridors are shortest, fewest-bend paths through the
//! free space between gadgets.

mod lint;
mod paint;
mod parity;
mod plan;

pub use lint::{lint, LintReport, LintRule, LintViolation};
pub use paint::{area_report, paint};
pub use parity::fix_parity;
pub use plan::plan_layout;

use thiserror::Error;

use crate::gadgets::{GadgetSpec, PortalRole, Transform};
use crate::gg::GeoInstance;
use crate::tt::{Coord, Player, TileColor};

/// Super-cell sides tried in order until routing and parity repair succeed.
pub const SUPER_CELL_SIDES: [usize; 3] = [14, 20, 28];

/// Every plan has `width * height <= AREA_CONSTANT * n * n` where `n` is the
/// vertex count of the (normalized) instance it was planned for: at most
/// `n` distinct ranks per axis, each `SUPER_CELL_SIDES[2]` cells wide.
pub const AREA_CONSTANT: usize = 28 * 28;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LayoutError {
    #[error("vertex `{vertex}` has outdegree {outdegree} and indegree {indegree}, which no gadget simulates")]
    UnsupportedDegree {
        vertex: String,
        outdegree: usize,
        indegree: usize,
    },
    #[error("layout needs vertex coordinates; `{0}` has none")]
    MissingEmbedding(String),
    #[error("cannot route arc {arc}: {reason}")]
    RoutingFailed { arc: String, reason: String },
    #[error("corridor for arc {arc} has no straight stretch that can host a parity insert")]
    ParityUnfixable { arc: String },
    #[error("two structures claim cell {at}")]
    OverlapDetected { at: Coord },
}

/// A gadget stamped onto the board for one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    pub vertex: usize,
    /// The oriented, correctly colored gadget.
    pub gadget: GadgetSpec,
    pub transform: Transform,
    /// Board coordinate of the patch's top-left cell.
    pub origin: Coord,
    /// Instance arc index attached to each portal, by portal index.
    pub portal_arcs: Vec<usize>,
}

impl Placement {
    pub fn to_board(&self, c: Coord) -> Coord {
        Coord::new(self.origin.x + c.x, self.origin.y + c.y)
    }

    pub fn contains(&self, c: Coord) -> bool {
        c.x >= self.origin.x
            && c.y >= self.origin.y
            && c.x < self.origin.x + self.gadget.width
            && c.y < self.origin.y + self.gadget.height
    }

    /// Index of the portal with this role carrying `arc`.
    pub fn portal_for(&self, arc: usize, role: PortalRole) -> Option<usize> {
        (0..self.portal_arcs.len()).find(|&i| self.portal_arcs[i] == arc && self.gadget.portals[i].role == role)
    }

    pub fn portal_cell(&self, i: usize) -> Coord {
        self.to_board(self.gadget.portal_cell(&self.gadget.portals[i]))
    }

    /// The board cell just outside portal `i`, if it is on the board.
    pub fn outside(&self, i: usize) -> Option<Coord> {
        self.portal_cell(i).step(self.gadget.portals[i].side, 1)
    }

    /// Colored patch cells in board coordinates with their colors.
    pub fn colored_cells(&self) -> impl Iterator<Item = (Coord, TileColor)> + '_ {
        self.gadget
            .colored_cells()
            .into_iter()
            .map(|c| (self.to_board(c), self.gadget.tile(c)))
    }
}

/// A same-color double at `cells[index]`, `cells[index + 1]`, crossed in a
/// single move, with a `decoy` tile beside its first cell that punishes
/// stopping halfway.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParityInsertion {
    pub index: usize,
    pub decoy: Coord,
}

/// The corridor of one arc, from its out-portal to its in-portal inclusive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Route {
    pub arc: usize,
    pub cells: Vec<Coord>,
    pub parity: Option<ParityInsertion>,
}

impl Route {
    /// Tile colors along the route; the out-portal has color `first`.
    pub fn colors(&self, first: Player) -> Vec<TileColor> {
        let mut out = Vec::with_capacity(self.cells.len());
        let mut color = first.tile();
        for i in 0..self.cells.len() {
            if i > 0 && self.parity.map(|p| p.index + 1) != Some(i) {
                color = color.swapped();
            }
            out.push(color);
        }
        out
    }

    /// Without a parity insert the route ends in the color it started with.
    pub fn needs_parity(&self) -> bool {
        self.cells.len() % 2 == 1
    }

    /// The cells painted by this corridor: everything but the two portals,
    /// plus the decoy.
    pub fn painted_cells(&self, first: Player) -> Vec<(Coord, TileColor)> {
        let colors = self.colors(first);
        let n = self.cells.len();
        let mut out: Vec<(Coord, TileColor)> = (1..n.saturating_sub(1)).map(|i| (self.cells[i], colors[i])).collect();
        if let Some(p) = self.parity {
            out.push((p.decoy, colors[p.index].swapped()));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayoutPlan {
    pub instance: GeoInstance,
    pub width: usize,
    pub height: usize,
    pub super_cell: usize,
    /// One per vertex, indexed by vertex.
    pub placements: Vec<Placement>,
    /// One per arc, in routing order (by tail name, then head name).
    pub routes: Vec<Route>,
}

impl LayoutPlan {
    pub fn arc_name(&self, arc: usize) -> String {
        arc_name(&self.instance, arc)
    }

    pub fn route_for(&self, arc: usize) -> Option<&Route> {
        self.routes.iter().find(|r| r.arc == arc)
    }

    pub fn parity_insertions(&self) -> usize {
        self.routes.iter().filter(|r| r.parity.is_some()).count()
    }

    /// The vertex whose gadget box contains `c`.
    pub fn placement_at(&self, c: Coord) -> Option<usize> {
        self.placements.iter().position(|p| p.contains(c))
    }

    pub fn area_bound(&self) -> usize {
        AREA_CONSTANT * self.instance.len() * self.instance.len()
    }
}

pub(crate) fn arc_name(g: &GeoInstance, arc: usize) -> String {
    let (a, b) = g.arcs()[arc];
    format!("{}->{}", g.name(a), g.name(b))
}
