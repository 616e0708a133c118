use super::{LayoutError, LayoutPlan, ParityInsertion};
use crate::tt::{Coord, Dir};

/// Gives every odd-length corridor one parity insert.
///
/// A corridor painted strictly alternating from its out-portal ends in the
/// color it started with when it has an odd number of cells, so the token
/// would reach the in-portal on the wrong turn. The insert turns two
/// consecutive cells on a straight stretch into a same-color double, which
/// the mover crosses in one move, and places an opposite-color decoy beside
/// the first cell of the double: a mover who stops there hands the
/// opponent a step onto the decoy, which is a dead end for the mover.
pub fn fix_parity(plan: &LayoutPlan) -> Result<LayoutPlan, LayoutError> {
    let mut out = plan.clone();
    let (w, h) = (plan.width, plan.height);
    let mut colored = vec![false; w * h];
    let mut boxed = vec![false; w * h];
    for p in &plan.placements {
        for y in 0..p.gadget.height {
            for x in 0..p.gadget.width {
                let c = p.to_board(Coord::new(x, y));
                boxed[c.y * w + c.x] = true;
            }
        }
        for (c, _) in p.colored_cells() {
            colored[c.y * w + c.x] = true;
        }
    }
    for r in &plan.routes {
        for &c in &r.cells {
            colored[c.y * w + c.x] = true;
        }
        if let Some(p) = r.parity {
            colored[p.decoy.y * w + p.decoy.x] = true;
        }
    }

    for route in out.routes.iter_mut() {
        if !route.needs_parity() || route.parity.is_some() {
            continue;
        }
        let found = find_slot(&route.cells, w, h, &colored, &boxed).ok_or_else(|| LayoutError::ParityUnfixable {
            arc: plan.arc_name(route.arc),
        })?;
        colored[found.decoy.y * w + found.decoy.x] = true;
        route.parity = Some(found);
    }
    Ok(out)
}

fn dir_between(a: Coord, b: Coord) -> Option<Dir> {
    Dir::ALL.into_iter().find(|&d| a.step(d, 1) == Some(b))
}

/// The first interior straight stretch `cells[k-1..=k+1]` with a free decoy
/// cell beside `cells[k]` whose other neighbors are all uncolored. The
/// double keeps clear of both portals and their neighbors.
fn find_slot(cells: &[Coord], w: usize, h: usize, colored: &[bool], boxed: &[bool]) -> Option<ParityInsertion> {
    let n = cells.len();
    let on_board = |c: Coord| c.x < w && c.y < h;
    for k in 2..n.saturating_sub(3) {
        let d = dir_between(cells[k - 1], cells[k])?;
        if dir_between(cells[k], cells[k + 1]) != Some(d) {
            continue;
        }
        for side in [d.cw(), d.cw().opposite()] {
            let Some(x) = cells[k].step(side, 1).filter(|&x| on_board(x)) else {
                continue;
            };
            let i = x.y * w + x.x;
            if colored[i] || boxed[i] {
                continue;
            }
            let clear = Dir::ALL
                .into_iter()
                .filter_map(|e| x.step(e, 1).filter(|&y| on_board(y)))
                .filter(|&y| y != cells[k])
                .all(|y| !colored[y.y * w + y.x]);
            if clear {
                return Some(ParityInsertion { index: k, decoy: x });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gg::{generate, normalize};
    use crate::layout::plan_layout;

    #[test]
    fn even_routes_are_untouched() {
        for seed in 0..40 {
            let plan = plan_layout(&normalize(&generate(8, seed).unwrap()).unwrap()).unwrap();
            let fixed = fix_parity(&plan).unwrap();
            for (a, b) in plan.routes.iter().zip(&fixed.routes) {
                assert_eq!(a.cells, b.cells);
                assert_eq!(b.parity.is_some(), a.needs_parity());
            }
            assert_eq!(fix_parity(&fixed).unwrap(), fixed);
        }
    }

    #[test]
    fn fixed_routes_end_in_the_head_color() {
        for seed in 0..40 {
            let plan = fix_parity(&plan_layout(&normalize(&generate(8, seed).unwrap()).unwrap()).unwrap()).unwrap();
            let g = &plan.instance;
            for r in &plan.routes {
                let (a, b) = g.arcs()[r.arc];
                let colors = r.colors(g.color(a));
                assert_eq!(*colors.last().unwrap(), g.color(b).tile(), "seed {seed}");
            }
        }
    }

    #[test]
    fn straight_stretch_hosts_the_double() {
        let cells: Vec<Coord> = (0..7).map(|x| Coord::new(x, 2)).collect();
        let colored = {
            let mut v = vec![false; 7 * 5];
            for c in &cells {
                v[c.y * 7 + c.x] = true;
            }
            v
        };
        let slot = find_slot(&cells, 7, 5, &colored, &[false; 35]).unwrap();
        assert_eq!(slot.index, 2);
        assert!(slot.decoy.manhattan(cells[2]) == 1 && slot.decoy.y != 2);
    }

    #[test]
    fn short_route_has_no_slot() {
        let cells: Vec<Coord> = (0..5).map(|x| Coord::new(x, 1)).collect();
        assert!(find_slot(&cells, 5, 3, &[false; 15], &[false; 15]).is_none());
    }
}
