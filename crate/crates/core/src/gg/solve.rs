use std::collections::HashMap;

use super::{GeoInstance, GgError};
use crate::tt::Player;

/// Set of vertex indices; instances are limited to 64 vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn with(self, v: usize) -> VertexSet {
        VertexSet(self.0 | 1 << v)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

/// A play in progress: token on `current`, `visited` includes `current`.
#[derive(Debug, Clone, Copy)]
pub struct GeoPosition<'a> {
    pub instance: &'a GeoInstance,
    pub current: usize,
    pub visited: VertexSet,
}

impl<'a> GeoPosition<'a> {
    /// The initial position; the start vertex counts as visited.
    pub fn start(instance: &'a GeoInstance) -> Result<GeoPosition<'a>, GgError> {
        if instance.len() > 64 {
            return Err(GgError::ResourceExhausted(format!(
                "{} vertices exceeds the 64-vertex position limit",
                instance.len()
            )));
        }
        let s = instance.start();
        Ok(GeoPosition {
            instance,
            current: s,
            visited: VertexSet::default().with(s),
        })
    }

    /// The player choosing the next vertex: the owner of the current one.
    pub fn mover(&self) -> Player {
        self.instance.color(self.current)
    }

    pub fn advance(&self, to: usize) -> GeoPosition<'a> {
        GeoPosition {
            instance: self.instance,
            current: to,
            visited: self.visited.with(to),
        }
    }
}

/// Unvisited out-neighbors of the current vertex, in name order.
pub fn gg_moves(pos: &GeoPosition<'_>) -> Vec<usize> {
    pos.instance
        .out_neighbors(pos.current)
        .iter()
        .copied()
        .filter(|&v| !pos.visited.contains(v))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GgLimits {
    pub max_vertices: usize,
    pub max_nodes: u64,
}

impl Default for GgLimits {
    fn default() -> Self {
        GgLimits {
            max_vertices: 40,
            max_nodes: 20_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeoSolveResult {
    pub winner: Player,
    pub nodes_expanded: u64,
    /// Vertex sequence of optimal play, starting at the current vertex. The
    /// winner takes the first winning move in name order, the loser the
    /// first move.
    pub principal_line: Vec<usize>,
}

struct Search {
    memo: HashMap<(usize, u64), bool>,
    nodes: u64,
    max_nodes: u64,
}

impl Search {
    fn wins(&mut self, pos: &GeoPosition<'_>) -> Result<bool, GgError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(GgError::ResourceExhausted(format!(
                "more than {} nodes",
                self.max_nodes
            )));
        }
        let key = (pos.current, pos.visited.0);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        let mut win = false;
        for v in gg_moves(pos) {
            if !self.wins(&pos.advance(v))? {
                win = true;
                break;
            }
        }
        self.memo.insert(key, win);
        Ok(win)
    }
}

pub fn gg_solve(pos: &GeoPosition<'_>, limits: &GgLimits) -> Result<GeoSolveResult, GgError> {
    let g = pos.instance;
    if g.len() > limits.max_vertices {
        return Err(GgError::ResourceExhausted(format!(
            "{} vertices exceeds the cap of {}",
            g.len(),
            limits.max_vertices
        )));
    }
    let mut search = Search {
        memo: HashMap::new(),
        nodes: 0,
        max_nodes: limits.max_nodes,
    };
    let mover_wins = search.wins(pos)?;
    let mut line = vec![pos.current];
    let mut cur = *pos;
    loop {
        let moves = gg_moves(&cur);
        let Some(&first) = moves.first() else { break };
        let mut next = first;
        if search.wins(&cur)? {
            for v in moves {
                if !search.wins(&cur.advance(v))? {
                    next = v;
                    break;
                }
            }
        }
        cur = cur.advance(next);
        line.push(next);
    }
    let winner = if mover_wins {
        pos.mover()
    } else {
        pos.mover().opponent()
    };
    Ok(GeoSolveResult {
        winner,
        nodes_expanded: search.nodes,
        principal_line: line,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gg::{vtx, GeoInstance};
    use crate::tt::Player::{Blue, Red};

    fn solve_start(g: &GeoInstance) -> GeoSolveResult {
        gg_solve(&GeoPosition::start(g).unwrap(), &GgLimits::default()).unwrap()
    }

    #[test]
    fn single_arc_first_mover_wins() {
        let g = GeoInstance::new(vec![vtx("s", Blue), vtx("a", Red)], &[("s", "a")], "s").unwrap();
        let r = solve_start(&g);
        assert_eq!(r.winner, Blue);
        assert_eq!(r.principal_line, vec![0, 1]);
    }

    #[test]
    fn two_arc_path_second_mover_wins() {
        let g = GeoInstance::new(
            vec![vtx("s", Blue), vtx("a", Red), vtx("b", Blue)],
            &[("s", "a"), ("a", "b")],
            "s",
        )
        .unwrap();
        assert_eq!(solve_start(&g).winner, Red);
    }

    #[test]
    fn visited_vertices_are_not_revisited() {
        // s -> a -> b -> s: returning to s is forbidden, so Blue at b is stuck.
        let g = GeoInstance::new(
            vec![vtx("s", Blue), vtx("a", Red), vtx("b", Blue)],
            &[("s", "a"), ("a", "b"), ("b", "s")],
            "s",
        )
        .unwrap();
        let start = GeoPosition::start(&g).unwrap();
        let at_b = start.advance(1).advance(2);
        assert!(gg_moves(&at_b).is_empty());
        assert_eq!(solve_start(&g).winner, Red);
    }

    #[test]
    fn start_moves_are_its_out_neighbors() {
        let g = GeoInstance::new(
            vec![vtx("s", Blue), vtx("b", Red), vtx("a", Red)],
            &[("s", "b"), ("s", "a")],
            "s",
        )
        .unwrap();
        let pos = GeoPosition::start(&g).unwrap();
        assert_eq!(gg_moves(&pos), vec![2, 1]);
        assert_eq!(pos.mover(), Blue);
    }

    #[test]
    fn vertex_cap_is_enforced() {
        let g = GeoInstance::new(vec![vtx("s", Blue), vtx("a", Red)], &[("s", "a")], "s").unwrap();
        let limits = GgLimits {
            max_vertices: 1,
            ..GgLimits::default()
        };
        let err = gg_solve(&GeoPosition::start(&g).unwrap(), &limits).unwrap_err();
        assert!(matches!(err, GgError::ResourceExhausted(_)));
    }
}
