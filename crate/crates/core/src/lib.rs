//! Exact solvers for Turning Tiles and Generalized Geography, and a
//! compiler that turns bipartite planar Geography instances into Turning
//! Tiles boards with the same winner.

pub mod gadgets;
pub mod gg;
pub mod layout;
pub mod reduce;
pub mod tt;

pub use tt::{Board, Coord, Dir, Move, Player, TileColor};
