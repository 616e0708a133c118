use super::{GadgetSpec, Portal};
use crate::tt::{Coord, Dir};

/// One of the eight symmetries of the square: an optional east-west mirror
/// followed by `quarter_turns` clockwise quarter turns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transform {
    pub mirrored: bool,
    pub quarter_turns: u8,
}

impl Transform {
    pub const IDENTITY: Transform = Transform::new(false, 0);

    pub const ALL: [Transform; 8] = [
        Transform::new(false, 0),
        Transform::new(false, 1),
        Transform::new(false, 2),
        Transform::new(false, 3),
        Transform::new(true, 0),
        Transform::new(true, 1),
        Transform::new(true, 2),
        Transform::new(true, 3),
    ];

    pub const fn new(mirrored: bool, quarter_turns: u8) -> Transform {
        Transform {
            mirrored,
            quarter_turns: quarter_turns % 4,
        }
    }

    pub fn dir(self, d: Dir) -> Dir {
        let mut d = if self.mirrored && matches!(d, Dir::E | Dir::W) {
            d.opposite()
        } else {
            d
        };
        for _ in 0..self.quarter_turns {
            d = d.cw();
        }
        d
    }

    /// Image of cell `c` in a `width` x `height` patch, and the new dims.
    pub fn cell(self, c: Coord, width: usize, height: usize) -> (Coord, usize, usize) {
        let (mut c, mut w, mut h) = (c, width, height);
        if self.mirrored {
            c = Coord::new(w - 1 - c.x, c.y);
        }
        for _ in 0..self.quarter_turns {
            c = Coord::new(h - 1 - c.y, c.x);
            std::mem::swap(&mut w, &mut h);
        }
        (c, w, h)
    }
}

pub fn orient(g: &GadgetSpec, t: Transform) -> GadgetSpec {
    let (_, width, height) = t.cell(Coord::new(0, 0), g.width, g.height);
    let mut patch = vec![crate::tt::TileColor::Black; width * height];
    for y in 0..g.height {
        for x in 0..g.width {
            let (c, _, _) = t.cell(Coord::new(x, y), g.width, g.height);
            patch[c.y * width + c.x] = g.tile(Coord::new(x, y));
        }
    }
    let portals = g
        .portals
        .iter()
        .map(|p| {
            let (c, _, _) = t.cell(g.portal_cell(p), g.width, g.height);
            let side = t.dir(p.side);
            let offset = match side {
                Dir::N | Dir::S => c.x,
                Dir::E | Dir::W => c.y,
            };
            Portal {
                role: p.role,
                side,
                offset,
                label: p.label.clone(),
            }
        })
        .collect();
    GadgetSpec {
        kind: g.kind,
        owner: g.owner,
        width,
        height,
        patch,
        portals,
        token_cell: g.token_cell.map(|c| t.cell(c, g.width, g.height).0),
    }
}
