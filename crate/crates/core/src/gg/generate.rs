use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{validate, GeoInstance, GgError, Point, Profile, Vertex};
use crate::tt::Player;

const ATTEMPTS: usize = 100;
const STEPS: [(i64, i64); 4] = [(0, -1), (1, 0), (0, 1), (-1, 0)];

/// A random strict instance whose vertices sit on grid points and whose
/// arcs all join grid neighbors, so the drawing is planar and the
/// checkerboard coloring is a proper bipartition.
///
/// Every vertex is reachable from the start: a spanning tree is grown
/// outward from it, then further arcs between grid neighbors are added
/// with random orientation (never into the start).
pub fn generate(max_vertices: usize, seed: u64) -> Result<GeoInstance, GgError> {
    if max_vertices < 3 {
        return Err(GgError::GenerationFailed(format!(
            "need at least 3 vertices, got {max_vertices}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let n = rng.gen_range(3..=max_vertices);
        if let Some(g) = attempt(&mut rng, n) {
            debug_assert!(validate(&g, Profile::Strict).is_valid());
            return Ok(g);
        }
    }
    Err(GgError::GenerationFailed(format!(
        "no instance after {ATTEMPTS} attempts (seed {seed})"
    )))
}

/// Like [`generate`] with exactly `vertices` vertices.
pub fn generate_sized(vertices: usize, seed: u64) -> Result<GeoInstance, GgError> {
    if vertices < 3 {
        return Err(GgError::GenerationFailed(format!(
            "need at least 3 vertices, got {vertices}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        if let Some(g) = attempt(&mut rng, vertices) {
            return Ok(g);
        }
    }
    Err(GgError::GenerationFailed(format!(
        "no {vertices}-vertex instance after {ATTEMPTS} attempts (seed {seed})"
    )))
}

fn color_at(p: Point) -> Player {
    if (p.0 + p.1).rem_euclid(2) == 0 {
        Player::Blue
    } else {
        Player::Red
    }
}

fn attempt(rng: &mut ChaCha8Rng, n: usize) -> Option<GeoInstance> {
    let mut points: Vec<Point> = vec![(0, 0)];
    let mut at: HashMap<Point, usize> = HashMap::from([((0, 0), 0)]);
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    let mut degree = vec![0usize];

    let add = |points: &mut Vec<Point>, at: &mut HashMap<Point, usize>, degree: &mut Vec<usize>, p: Point| {
        at.insert(p, points.len());
        points.push(p);
        degree.push(0);
        points.len() - 1
    };

    let mut first = STEPS.to_vec();
    first.shuffle(rng);
    for &(dx, dy) in &first[..2] {
        let v = add(&mut points, &mut at, &mut degree, (dx, dy));
        arcs.push((0, v));
        degree[0] += 1;
        degree[v] += 1;
    }

    while points.len() < n {
        let mut frontier: Vec<(usize, Point)> = Vec::new();
        for (v, &p) in points.iter().enumerate().skip(1) {
            if degree[v] >= 3 {
                continue;
            }
            for (dx, dy) in STEPS {
                let q = (p.0 + dx, p.1 + dy);
                if !at.contains_key(&q) {
                    frontier.push((v, q));
                }
            }
        }
        let &(parent, q) = frontier.choose(rng)?;
        let v = add(&mut points, &mut at, &mut degree, q);
        arcs.push((parent, v));
        degree[parent] += 1;
        degree[v] += 1;
    }

    let mut extra: Vec<(usize, usize)> = Vec::new();
    for (v, &p) in points.iter().enumerate().skip(1) {
        for (dx, dy) in [(1, 0), (0, 1)] {
            if let Some(&u) = at.get(&(p.0 + dx, p.1 + dy)) {
                if u != 0 && !arcs.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u)) {
                    extra.push((v, u));
                }
            }
        }
    }
    for (v, u) in extra {
        if degree[v] < 3 && degree[u] < 3 && rng.gen_bool(0.5) {
            arcs.push(if rng.gen_bool(0.5) { (v, u) } else { (u, v) });
            degree[v] += 1;
            degree[u] += 1;
        }
    }

    let vertices = points
        .iter()
        .enumerate()
        .map(|(i, &p)| Vertex {
            name: if i == 0 { "s".to_string() } else { format!("v{i}") },
            color: color_at(p),
        })
        .collect();
    let coords = points.iter().map(|&p| Some(p)).collect();
    let g = GeoInstance::from_parts(vertices, arcs, 0, coords, vec![None; n]);
    validate(&g, Profile::Strict).is_valid().then_some(g)
}
