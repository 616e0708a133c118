use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use super::{arc_name, fix_parity, LayoutError, LayoutPlan, Placement, Route, SUPER_CELL_SIDES};
use crate::gadgets::{base_gadget, orient, GadgetKind, GadgetSpec, PortalRole, Transform};
use crate::gg::validate::{angle, angular_order, same_cycle};
use crate::gg::GeoInstance;
use crate::tt::{Coord, Dir, Player};

/// Places and routes `g`, trying larger super-cells until every arc routes
/// and every odd corridor can take a parity insert. The returned plan has
/// no parity inserts yet; [`fix_parity`] adds them.
pub fn plan_layout(g: &GeoInstance) -> Result<LayoutPlan, LayoutError> {
    for v in 0..g.len() {
        if g.coord(v).is_none() {
            return Err(LayoutError::MissingEmbedding(g.name(v).to_string()));
        }
    }
    let oriented = (0..g.len())
        .map(|v| orient_vertex(g, v))
        .collect::<Result<Vec<_>, _>>()?;
    let mut last = None;
    for side in SUPER_CELL_SIDES {
        match place_and_route(g, &oriented, side) {
            Ok(plan) => match fix_parity(&plan) {
                Ok(_) => return Ok(plan),
                Err(LayoutError::ParityUnfixable { arc }) => {
                    last = Some(LayoutError::RoutingFailed {
                        arc,
                        reason: format!("no room for a parity insert at super-cell side {side}"),
                    })
                }
                Err(e) => return Err(e),
            },
            Err(e @ LayoutError::RoutingFailed { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one super-cell side"))
}

pub(crate) fn kind_of(g: &GeoInstance, v: usize) -> Result<GadgetKind, LayoutError> {
    let (o, i) = (g.outdegree(v), g.indegree(v));
    let kind = if v == g.start() {
        ((o, i) == (2, 0)).then_some(GadgetKind::Start)
    } else {
        GadgetKind::for_degrees(o, i)
    };
    kind.ok_or_else(|| LayoutError::UnsupportedDegree {
        vertex: g.name(v).to_string(),
        outdegree: o,
        indegree: i,
    })
}

fn side_angle(d: Dir) -> f64 {
    match d {
        Dir::E => 0.0,
        Dir::S => PI / 2.0,
        Dir::W => PI,
        Dir::N => -PI / 2.0,
    }
}

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// Angle of a portal as seen from the patch center.
pub(crate) fn portal_angle(gadget: &GadgetSpec, i: usize) -> f64 {
    let c = gadget.portal_cell(&gadget.portals[i]);
    let center = (gadget.width as i64 - 1, gadget.height as i64 - 1);
    angle(center, (2 * c.x as i64, 2 * c.y as i64))
}

/// Neighbors of `v` in the cyclic order its gadget's portals must follow.
pub(crate) fn embedding_order(g: &GeoInstance, v: usize) -> Vec<usize> {
    g.rotation(v)
        .map(<[usize]>::to_vec)
        .or_else(|| angular_order(g, v))
        .unwrap_or_else(|| g.undirected_neighbors(v))
}

/// Neighbors reached through the portals of `gadget`, in angular order
/// around the patch.
pub(crate) fn portal_order(g: &GeoInstance, v: usize, gadget: &GadgetSpec, portal_arcs: &[usize]) -> Vec<usize> {
    let mut keyed: Vec<(f64, usize)> = portal_arcs
        .iter()
        .enumerate()
        .map(|(i, &arc)| {
            let (a, b) = g.arcs()[arc];
            (portal_angle(gadget, i), if a == v { b } else { a })
        })
        .collect();
    keyed.sort_by(|x, y| x.0.total_cmp(&y.0));
    keyed.into_iter().map(|(_, u)| u).collect()
}

struct Oriented {
    gadget: GadgetSpec,
    transform: Transform,
    portal_arcs: Vec<usize>,
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Picks the orientation and portal-to-arc assignment whose portal order
/// matches the embedding and whose portal sides best face the neighbors.
fn orient_vertex(g: &GeoInstance, v: usize) -> Result<Oriented, LayoutError> {
    let kind = kind_of(g, v)?;
    let mut base = base_gadget(kind);
    if g.color(v) == Player::Red {
        base = base.color_swapped();
    }
    let here = g.coord(v).expect("checked by caller");
    let arcs_with = |role: PortalRole| -> Vec<usize> {
        let mut arcs: Vec<usize> = (0..g.arcs().len())
            .filter(|&a| match role {
                PortalRole::Out => g.arcs()[a].0 == v,
                PortalRole::In => g.arcs()[a].1 == v,
            })
            .collect();
        arcs.sort_by_key(|&a| arc_name(g, a));
        arcs
    };
    let outs = arcs_with(PortalRole::Out);
    let ins = arcs_with(PortalRole::In);
    let order = embedding_order(g, v);

    let mut best: Option<(f64, Oriented)> = None;
    for t in Transform::ALL {
        let gadget = orient(&base, t);
        let in_ports: Vec<usize> = gadget.portals_with(PortalRole::In).map(|(i, _)| i).collect();
        let out_ports: Vec<usize> = gadget.portals_with(PortalRole::Out).map(|(i, _)| i).collect();
        for ins_perm in permutations(&ins) {
            for outs_perm in permutations(&outs) {
                let mut portal_arcs = vec![usize::MAX; gadget.portals.len()];
                for (&p, &a) in in_ports.iter().zip(&ins_perm).chain(out_ports.iter().zip(&outs_perm)) {
                    portal_arcs[p] = a;
                }
                if order.len() >= 3 && !same_cycle(&portal_order(g, v, &gadget, &portal_arcs), &order) {
                    continue;
                }
                let cost: f64 = portal_arcs
                    .iter()
                    .enumerate()
                    .map(|(i, &arc)| {
                        let (a, b) = g.arcs()[arc];
                        let other = if a == v { b } else { a };
                        let toward = angle(here, g.coord(other).expect("checked by caller"));
                        angle_gap(side_angle(gadget.portals[i].side), toward)
                    })
                    .sum();
                if best.as_ref().is_none_or(|(c, _)| cost < c - 1e-9) {
                    best = Some((
                        cost,
                        Oriented {
                            gadget: gadget.clone(),
                            transform: t,
                            portal_arcs,
                        },
                    ));
                }
            }
        }
    }
    best.map(|(_, o)| o).ok_or_else(|| LayoutError::RoutingFailed {
        arc: g.name(v).to_string(),
        reason: "no gadget orientation matches the embedding".into(),
    })
}

fn ranks(values: impl Iterator<Item = i64>) -> Vec<i64> {
    let mut v: Vec<i64> = values.collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn place_and_route(g: &GeoInstance, oriented: &[Oriented], side: usize) -> Result<LayoutPlan, LayoutError> {
    let xs = ranks((0..g.len()).map(|v| g.coord(v).unwrap().0));
    let ys = ranks((0..g.len()).map(|v| g.coord(v).unwrap().1));
    let placements: Vec<Placement> = oriented
        .iter()
        .enumerate()
        .map(|(v, o)| {
            let (x, y) = g.coord(v).unwrap();
            let col = xs.binary_search(&x).unwrap();
            let row = ys.binary_search(&y).unwrap();
            Placement {
                vertex: v,
                gadget: o.gadget.clone(),
                transform: o.transform,
                origin: Coord::new(
                    col * side + (side - o.gadget.width) / 2,
                    row * side + (side - o.gadget.height) / 2,
                ),
                portal_arcs: o.portal_arcs.clone(),
            }
        })
        .collect();
    let mut grid = Grid::new(xs.len() * side, ys.len() * side, &placements);

    let mut order: Vec<usize> = (0..g.arcs().len()).collect();
    order.sort_by_key(|&a| (g.name(g.arcs()[a].0).to_string(), g.name(g.arcs()[a].1).to_string()));
    let mut routes = Vec::with_capacity(order.len());
    for arc in order {
        let (tail, head) = g.arcs()[arc];
        let (src, dst) = (&placements[tail], &placements[head]);
        let out_port = src
            .portal_for(arc, PortalRole::Out)
            .expect("every out-arc has a portal");
        let in_port = dst.portal_for(arc, PortalRole::In).expect("every in-arc has a portal");
        let fail = |reason: &str| LayoutError::RoutingFailed {
            arc: arc_name(g, arc),
            reason: reason.to_string(),
        };
        let (Some(exit), Some(entry)) = (src.outside(out_port), dst.outside(in_port)) else {
            return Err(fail("portal faces the board edge"));
        };
        let path = grid
            .route(
                arc,
                exit,
                src.gadget.portals[out_port].side,
                entry,
                dst.gadget.portals[in_port].side.opposite(),
            )
            .ok_or_else(|| fail(&format!("no free channel at super-cell side {side}")))?;
        let mut cells = vec![src.portal_cell(out_port)];
        cells.extend(path);
        cells.push(dst.portal_cell(in_port));
        for &c in &cells[1..cells.len() - 1] {
            grid.claim(c, arc);
        }
        routes.push(Route {
            arc,
            cells,
            parity: None,
        });
    }
    Ok(LayoutPlan {
        instance: g.clone(),
        width: grid.width,
        height: grid.height,
        super_cell: side,
        placements,
        routes,
    })
}

const NONE: usize = usize::MAX;

/// Occupancy for routing: gadget boxes, portals, the cells reserved just
/// outside each portal, and corridors laid so far.
struct Grid {
    width: usize,
    height: usize,
    boxed: Vec<bool>,
    /// Arc owning a portal cell.
    portal: Vec<usize>,
    /// Arc whose corridor must start or end here.
    reserved: Vec<usize>,
    corridor: Vec<usize>,
}

impl Grid {
    fn new(width: usize, height: usize, placements: &[Placement]) -> Grid {
        let mut grid = Grid {
            width,
            height,
            boxed: vec![false; width * height],
            portal: vec![NONE; width * height],
            reserved: vec![NONE; width * height],
            corridor: vec![NONE; width * height],
        };
        for p in placements {
            for y in 0..p.gadget.height {
                for x in 0..p.gadget.width {
                    let c = p.to_board(Coord::new(x, y));
                    grid.boxed[c.y * width + c.x] = true;
                }
            }
            for i in 0..p.gadget.portals.len() {
                let c = p.portal_cell(i);
                grid.portal[c.y * width + c.x] = p.portal_arcs[i];
                if let Some(o) = p.outside(i).filter(|&o| o.x < width && o.y < height) {
                    grid.reserved[o.y * width + o.x] = p.portal_arcs[i];
                }
            }
        }
        grid
    }

    fn idx(&self, c: Coord) -> usize {
        c.y * self.width + c.x
    }

    fn neighbors(&self, c: Coord) -> impl Iterator<Item = (Dir, Coord)> + '_ {
        Dir::ALL.into_iter().filter_map(move |d| {
            c.step(d, 1)
                .filter(|n| n.x < self.width && n.y < self.height)
                .map(|n| (d, n))
        })
    }

    fn claim(&mut self, c: Coord, arc: usize) {
        let i = self.idx(c);
        self.corridor[i] = arc;
    }

    fn free_for(&self, c: Coord, arc: usize) -> bool {
        let i = self.idx(c);
        if self.boxed[i] || self.corridor[i] != NONE || (self.reserved[i] != NONE && self.reserved[i] != arc) {
            return false;
        }
        self.neighbors(c).all(|(_, n)| {
            let j = self.idx(n);
            let foreign = |owner: usize| owner != NONE && owner != arc;
            !foreign(self.corridor[j]) && !foreign(self.reserved[j]) && !foreign(self.portal[j])
        })
    }

    /// Shortest path from `from` to `to`, fewest bends among those; the
    /// token leaves `from` heading `start_dir` and must enter `to`'s portal
    /// heading `end_dir`.
    fn route(&self, arc: usize, from: Coord, start_dir: Dir, to: Coord, end_dir: Dir) -> Option<Vec<Coord>> {
        if !self.free_for(from, arc) || !self.free_for(to, arc) {
            return None;
        }
        const STEP: u64 = 1 << 20;
        let n = self.width * self.height;
        let state = |c: Coord, d: Dir| self.idx(c) * 4 + d.index();
        let mut dist = vec![u64::MAX; n * 4];
        let mut parent = vec![NONE; n * 4];
        let mut heap = BinaryHeap::new();
        let s0 = state(from, start_dir);
        dist[s0] = 0;
        heap.push(Reverse((0u64, s0)));
        let mut best: Option<(u64, usize)> = None;
        while let Some(Reverse((cost, s))) = heap.pop() {
            if cost > dist[s] {
                continue;
            }
            if best.is_some_and(|(b, _)| cost >= b) {
                break;
            }
            let c = Coord::new((s / 4) % self.width, (s / 4) / self.width);
            let d = Dir::ALL[s % 4];
            if c == to {
                let total = cost + u64::from(d != end_dir);
                if best.is_none_or(|(b, _)| total < b) {
                    best = Some((total, s));
                }
                continue;
            }
            for (nd, nc) in self.neighbors(c) {
                if !self.free_for(nc, arc) {
                    continue;
                }
                let next = cost + STEP + u64::from(nd != d);
                let t = state(nc, nd);
                if next < dist[t] {
                    dist[t] = next;
                    parent[t] = s;
                    heap.push(Reverse((next, t)));
                }
            }
        }
        let (_, mut s) = best?;
        let mut path = Vec::new();
        loop {
            path.push(Coord::new((s / 4) % self.width, (s / 4) / self.width));
            if s == s0 {
                break;
            }
            s = parent[s];
        }
        path.reverse();
        Some(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gg::{generate, normalize, parse_instance};

    const TWO_SINKS: &str = "GG v1\nvertex s B\nvertex a R\nvertex b R\narc s a\narc s b\nstart s\n\
                                        coord s 0 0\ncoord a -1 0\ncoord b 1 0\n";

    #[test]
    fn two_sink_instance_places_three_gadgets() {
        let g = parse_instance(TWO_SINKS).unwrap();
        let plan = plan_layout(&g).unwrap();
        let kinds: Vec<GadgetKind> = plan.placements.iter().map(|p| p.gadget.kind).collect();
        assert_eq!(kinds, vec![GadgetKind::Start, GadgetKind::Sink01, GadgetKind::Sink01]);
        assert_eq!(plan.routes.len(), 2);
        for r in &plan.routes {
            assert!(r.cells.windows(2).all(|w| w[0].is_adjacent(w[1])));
        }
    }

    #[test]
    fn portals_face_their_neighbors() {
        let g = parse_instance(TWO_SINKS).unwrap();
        let plan = plan_layout(&g).unwrap();
        let a = &plan.placements[1];
        // a lies west of s, so its in-portal faces east.
        assert_eq!(a.gadget.portals[0].side, Dir::E);
    }

    #[test]
    fn unsupported_degree_is_reported() {
        // v has outdegree 2 and indegree 2.
        let text = "GG v1\nvertex s B\nvertex a R\nvertex b R\nvertex v B\nvertex c R\nvertex d R\n\
                    arc s a\narc s b\narc a v\narc b v\narc v c\narc v d\nstart s\n";
        let g = parse_instance(text).unwrap();
        let with = g
            .with_coords(&[
                ("s", (0, 0)),
                ("a", (1, 0)),
                ("b", (0, 1)),
                ("v", (1, 1)),
                ("c", (2, 1)),
                ("d", (1, 2)),
            ])
            .unwrap();
        assert!(matches!(
            plan_layout(&with),
            Err(LayoutError::UnsupportedDegree { ref vertex, .. }) if vertex == "v"
        ));
    }

    #[test]
    fn missing_coordinates_are_reported() {
        let g = parse_instance("GG v1\nvertex s B\nvertex a R\nvertex b R\narc s a\narc s b\nstart s\n").unwrap();
        assert!(matches!(plan_layout(&g), Err(LayoutError::MissingEmbedding(_))));
    }

    #[test]
    fn generated_instances_plan() {
        for seed in 0..60 {
            let g = normalize(&generate(8, seed).unwrap()).unwrap();
            plan_layout(&g).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        }
    }

    #[test]
    fn permutations_are_complete() {
        assert_eq!(permutations(&[1, 2]), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(permutations(&[]), vec![Vec::<usize>::new()]);
    }
}
