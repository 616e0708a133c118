use std::collections::{HashMap, HashSet};
use std::fmt;

use super::{GeoInstance, Point};
use crate::tt::Player;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Profile {
    /// Bipartite, max degree 3, Blue start with indegree 0 and outdegree 2,
    /// and any supplied embedding is planar.
    Strict,
    /// Well-formedness only.
    Relaxed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    SelfLoop {
        vertex: String,
    },
    DuplicateArc {
        from: String,
        to: String,
    },
    SameColorArc {
        from: String,
        to: String,
    },
    DegreeTooHigh {
        vertex: String,
        degree: usize,
    },
    StartNotBlue {
        start: String,
    },
    StartIndegree {
        start: String,
        indegree: usize,
    },
    StartOutdegree {
        start: String,
        outdegree: usize,
    },
    MissingCoord {
        vertex: String,
    },
    SharedCoord {
        a: String,
        b: String,
    },
    ArcsCross {
        first: (String, String),
        second: (String, String),
    },
    VertexOnArc {
        vertex: String,
        arc: (String, String),
    },
    BadRotation {
        vertex: String,
        reason: String,
    },
    NonPlanarRotation {
        euler: i64,
        expected: i64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SelfLoop { vertex } => write!(f, "self-loop at `{vertex}`"),
            Violation::DuplicateArc { from, to } => write!(f, "duplicate arc {from}->{to}"),
            Violation::SameColorArc { from, to } => {
                write!(
                    f,
                    "bipartiteness: arc {from}->{to} joins two vertices of the same color"
                )
            }
            Violation::DegreeTooHigh { vertex, degree } => write!(f, "vertex `{vertex}` has degree {degree} > 3"),
            Violation::StartNotBlue { start } => write!(f, "start `{start}` is not Blue"),
            Violation::StartIndegree { start, indegree } => {
                write!(f, "start `{start}` has indegree {indegree} != 0")
            }
            Violation::StartOutdegree { start, outdegree } => {
                write!(f, "start `{start}` has outdegree {outdegree} != 2")
            }
            Violation::MissingCoord { vertex } => write!(f, "vertex `{vertex}` has no coord"),
            Violation::SharedCoord { a, b } => write!(f, "vertices `{a}` and `{b}` share a coord"),
            Violation::ArcsCross { first, second } => {
                write!(f, "arcs {}-{} and {}-{} cross", first.0, first.1, second.0, second.1)
            }
            Violation::VertexOnArc { vertex, arc } => {
                write!(f, "vertex `{vertex}` lies on arc {}-{}", arc.0, arc.1)
            }
            Violation::BadRotation { vertex, reason } => write!(f, "rotation at `{vertex}`: {reason}"),
            Violation::NonPlanarRotation { euler, expected } => write!(
                f,
                "rotation system is not planar (V-E+F = {euler}, expected {expected})"
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

pub fn validate(g: &GeoInstance, profile: Profile) -> ValidationReport {
    let mut violations = Vec::new();
    let name = |v: usize| g.name(v).to_string();

    let mut seen = HashSet::new();
    for &(a, b) in g.arcs() {
        if a == b {
            violations.push(Violation::SelfLoop { vertex: name(a) });
        } else if !seen.insert((a, b)) {
            violations.push(Violation::DuplicateArc {
                from: name(a),
                to: name(b),
            });
        }
    }
    if profile == Profile::Relaxed {
        return ValidationReport { violations };
    }

    for &(a, b) in g.arcs() {
        if a != b && g.color(a) == g.color(b) {
            violations.push(Violation::SameColorArc {
                from: name(a),
                to: name(b),
            });
        }
    }
    for v in 0..g.len() {
        if g.degree(v) > 3 {
            violations.push(Violation::DegreeTooHigh {
                vertex: name(v),
                degree: g.degree(v),
            });
        }
    }
    let s = g.start();
    if g.color(s) != Player::Blue {
        violations.push(Violation::StartNotBlue { start: name(s) });
    }
    if g.indegree(s) != 0 {
        violations.push(Violation::StartIndegree {
            start: name(s),
            indegree: g.indegree(s),
        });
    }
    if g.outdegree(s) != 2 {
        violations.push(Violation::StartOutdegree {
            start: name(s),
            outdegree: g.outdegree(s),
        });
    }
    if g.has_coords() {
        check_coords(g, &mut violations);
    }
    if (0..g.len()).any(|v| g.rotation(v).is_some()) {
        check_rotation(g, &mut violations);
    }
    ValidationReport { violations }
}

/// Underlying undirected edges, each once, as (lower index, higher index).
fn edges(g: &GeoInstance) -> Vec<(usize, usize)> {
    let mut e: Vec<(usize, usize)> = g
        .arcs()
        .iter()
        .filter(|(a, b)| a != b)
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .collect();
    e.sort_unstable();
    e.dedup();
    e
}

fn cross(o: Point, a: Point, b: Point) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

fn on_segment(p: Point, a: Point, b: Point) -> bool {
    cross(a, b, p) == 0 && p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
}

/// Whether closed segments `ab` and `cd` intersect.
fn segments_meet(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = cross(c, d, a).signum();
    let d2 = cross(c, d, b).signum();
    let d3 = cross(a, b, c).signum();
    let d4 = cross(a, b, d).signum();
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    on_segment(a, c, d) || on_segment(b, c, d) || on_segment(c, a, b) || on_segment(d, a, b)
}

fn check_coords(g: &GeoInstance, violations: &mut Vec<Violation>) {
    let mut missing = false;
    for v in 0..g.len() {
        if g.coord(v).is_none() {
            violations.push(Violation::MissingCoord {
                vertex: g.name(v).to_string(),
            });
            missing = true;
        }
    }
    if missing {
        return;
    }
    let at = |v: usize| g.coord(v).expect("checked");
    let mut by_point: HashMap<Point, usize> = HashMap::new();
    for v in 0..g.len() {
        if let Some(&u) = by_point.get(&at(v)) {
            violations.push(Violation::SharedCoord {
                a: g.name(u).to_string(),
                b: g.name(v).to_string(),
            });
        } else {
            by_point.insert(at(v), v);
        }
    }
    let edges = edges(g);
    let pair = |(a, b): (usize, usize)| (g.name(a).to_string(), g.name(b).to_string());
    for &(a, b) in &edges {
        for v in 0..g.len() {
            if v != a && v != b && on_segment(at(v), at(a), at(b)) {
                violations.push(Violation::VertexOnArc {
                    vertex: g.name(v).to_string(),
                    arc: pair((a, b)),
                });
            }
        }
    }
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            let shared = [e.0, e.1].iter().filter(|x| **x == f.0 || **x == f.1).count();
            let meets = match shared {
                0 => segments_meet(at(e.0), at(e.1), at(f.0), at(f.1)),
                // Sharing an endpoint: they only conflict if they overlap.
                1 => {
                    let common = if e.0 == f.0 || e.0 == f.1 { e.0 } else { e.1 };
                    let p = if e.0 == common { e.1 } else { e.0 };
                    let q = if f.0 == common { f.1 } else { f.0 };
                    on_segment(at(p), at(common), at(q)) || on_segment(at(q), at(common), at(p))
                }
                _ => false,
            };
            if meets {
                violations.push(Violation::ArcsCross {
                    first: pair(e),
                    second: pair(f),
                });
            }
        }
    }
}

/// Angle of `to` around `from`, in the y-down frame (clockwise on screen).
pub(crate) fn angle(from: Point, to: Point) -> f64 {
    ((to.1 - from.1) as f64).atan2((to.0 - from.0) as f64)
}

/// Neighbors of `v` sorted by angle from its coord.
pub(crate) fn angular_order(g: &GeoInstance, v: usize) -> Option<Vec<usize>> {
    let here = g.coord(v)?;
    let mut nbrs = g.undirected_neighbors(v);
    let mut keyed = Vec::with_capacity(nbrs.len());
    for &u in &nbrs {
        keyed.push((angle(here, g.coord(u)?), u));
    }
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    nbrs = keyed.into_iter().map(|(_, u)| u).collect();
    Some(nbrs)
}

pub(crate) fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..b.len()).any(|shift| (0..a.len()).all(|i| a[i] == b[(i + shift) % b.len()]))
}

fn check_rotation(g: &GeoInstance, violations: &mut Vec<Violation>) {
    let mut complete = true;
    for v in 0..g.len() {
        let mut nbrs = g.undirected_neighbors(v);
        let Some(rot) = g.rotation(v) else {
            if !nbrs.is_empty() {
                complete = false;
                violations.push(Violation::BadRotation {
                    vertex: g.name(v).to_string(),
                    reason: "missing while other vertices have one".into(),
                });
            }
            continue;
        };
        let mut listed = rot.to_vec();
        listed.sort_unstable();
        nbrs.sort_unstable();
        if listed != nbrs {
            complete = false;
            violations.push(Violation::BadRotation {
                vertex: g.name(v).to_string(),
                reason: "is not a permutation of the neighbors".into(),
            });
            continue;
        }
        if let Some(order) = angular_order(g, v) {
            if !same_cycle(rot, &order) {
                violations.push(Violation::BadRotation {
                    vertex: g.name(v).to_string(),
                    reason: "disagrees with the coordinates".into(),
                });
            }
        }
    }
    if complete {
        let (euler, expected) = euler_characteristic(g);
        if euler != expected {
            violations.push(Violation::NonPlanarRotation { euler, expected });
        }
    }
}

/// V - E + F of the rotation system over non-isolated vertices, and the
/// value 2 * components a planar embedding must reach.
fn euler_characteristic(g: &GeoInstance) -> (i64, i64) {
    let edges = edges(g);
    let active: Vec<usize> = (0..g.len())
        .filter(|&v| g.rotation(v).is_some_and(|r| !r.is_empty()))
        .collect();
    let mut visited: HashSet<(usize, usize)> = HashSet::new();
    let mut faces = 0i64;
    for &(a, b) in &edges {
        for dart in [(a, b), (b, a)] {
            if visited.contains(&dart) {
                continue;
            }
            faces += 1;
            let mut d = dart;
            while visited.insert(d) {
                let (u, v) = d;
                let rot = g.rotation(v).expect("complete rotation");
                let pos = rot.iter().position(|&x| x == u).expect("neighbor in rotation");
                d = (v, rot[(pos + 1) % rot.len()]);
            }
        }
    }
    // Components via union-find over the underlying edges.
    let mut parent: Vec<usize> = (0..g.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &(a, b) in &edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let mut roots: Vec<usize> = active.iter().map(|&v| find(&mut parent, v)).collect();
    roots.sort_unstable();
    roots.dedup();
    let euler = active.len() as i64 - edges.len() as i64 + faces;
    (euler, 2 * roots.len() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gg::{parse_instance, vtx, GeoInstance};
    use crate::tt::Player::{Blue, Red};

    fn kinds(r: &ValidationReport) -> Vec<String> {
        r.violations.iter().map(|v| format!("{v:?}")).collect()
    }

    #[test]
    fn start_outdegree_one_is_strict_invalid() {
        let g = GeoInstance::new(vec![vtx("s", Blue), vtx("a", Red)], &[("s", "a")], "s").unwrap();
        let r = validate(&g, Profile::Strict);
        assert_eq!(
            r.violations,
            vec![Violation::StartOutdegree {
                start: "s".into(),
                outdegree: 1
            }]
        );
        assert!(validate(&g, Profile::Relaxed).is_valid());
    }

    #[test]
    fn same_color_arc_breaks_bipartiteness() {
        let g = GeoInstance::new(
            vec![vtx("s", Blue), vtx("a", Red), vtx("b", Blue)],
            &[("s", "a"), ("s", "b")],
            "s",
        )
        .unwrap();
        let r = validate(&g, Profile::Strict);
        assert!(r.to_string().contains("bipartiteness"), "{r}");
        assert_eq!(r.violations.len(), 1, "{:?}", kinds(&r));
    }

    #[test]
    fn crossing_coordinates_are_caught() {
        let g = parse_instance(
            "GG v1\nvertex s B\nvertex a R\nvertex b R\nvertex c B\nvertex d R\n\
             arc s a\narc s b\narc c d\nstart s\n\
             coord s 0 0\ncoord a 2 2\ncoord b 2 0\ncoord c 0 2\ncoord d 3 -1\n",
        )
        .unwrap();
        let r = validate(&g, Profile::Strict);
        assert!(
            r.violations.iter().any(|v| matches!(v, Violation::ArcsCross { .. })),
            "{r}"
        );
    }

    #[test]
    fn rotation_checks() {
        let base = "GG v1\nvertex s B\nvertex a R\nvertex b R\narc s a\narc s b\nstart s\n";
        let ok = parse_instance(&format!("{base}rot s a b\nrot a s\nrot b s\n")).unwrap();
        assert!(validate(&ok, Profile::Strict).is_valid());
        let bad = parse_instance(&format!("{base}rot s a\nrot a s\nrot b s\n")).unwrap();
        assert!(!validate(&bad, Profile::Strict).is_valid());
        let with_coords = parse_instance(&format!(
            "{base}coord s 0 0\ncoord a 1 0\ncoord b 0 1\nrot s a b\nrot a s\nrot b s\n"
        ))
        .unwrap();
        assert!(validate(&with_coords, Profile::Strict).is_valid());
    }

    #[test]
    fn k33_rotation_is_not_planar() {
        // K3,3 is bipartite but not planar; any rotation system has genus > 0.
        let mut text = String::from("GG v1\n");
        for v in ["x1", "x2", "x3"] {
            text += &format!("vertex {v} B\n");
        }
        for v in ["y1", "y2", "y3"] {
            text += &format!("vertex {v} R\n");
        }
        for x in ["x1", "x2", "x3"] {
            for y in ["y1", "y2", "y3"] {
                text += &format!("arc {x} {y}\n");
            }
        }
        text += "start x1\n";
        for x in ["x1", "x2", "x3"] {
            text += &format!("rot {x} y1 y2 y3\n");
        }
        for y in ["y1", "y2", "y3"] {
            text += &format!("rot {y} x1 x2 x3\n");
        }
        let g = parse_instance(&text).unwrap();
        let r = validate(&g, Profile::Strict);
        assert!(
            r.violations
                .iter()
                .any(|v| matches!(v, Violation::NonPlanarRotation { .. })),
            "{r}"
        );
    }
}
