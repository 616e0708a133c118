use super::{GeoInstance, GgError, Point, Vertex};

/// Brings an instance into the shape the gadget compiler expects:
/// no non-start vertex with indegree 0, and every sink with indegree 1.
///
/// Unreachable indegree-0 vertices are deleted until none remain. A sink
/// with several in-arcs keeps the first (in name order of the tail) and
/// each further in-arc is redirected to a fresh sink of the same color.
/// When coordinates are present they are doubled and each fresh sink sits
/// at the midpoint of the arc it takes over, which keeps the drawing planar.
pub fn normalize(g: &GeoInstance) -> Result<GeoInstance, GgError> {
    let pruned = prune_sources(g);
    let split = split_sinks(&pruned);
    for v in 0..split.len() {
        if v != split.start() && split.indegree(v) == 0 {
            return Err(GgError::NormalizationFailed(format!(
                "vertex `{}` still has indegree 0",
                split.name(v)
            )));
        }
        if split.outdegree(v) == 0 && split.indegree(v) != 1 {
            return Err(GgError::NormalizationFailed(format!(
                "sink `{}` has indegree {}",
                split.name(v),
                split.indegree(v)
            )));
        }
    }
    Ok(split)
}

fn prune_sources(g: &GeoInstance) -> GeoInstance {
    let mut alive = vec![true; g.len()];
    loop {
        let mut indeg = vec![0usize; g.len()];
        for &(a, b) in g.arcs() {
            if alive[a] && alive[b] {
                indeg[b] += 1;
            }
        }
        let doomed: Vec<usize> = (0..g.len())
            .filter(|&v| alive[v] && v != g.start() && indeg[v] == 0)
            .collect();
        if doomed.is_empty() {
            break;
        }
        for v in doomed {
            alive[v] = false;
        }
    }
    if alive.iter().all(|&a| a) {
        return g.clone();
    }
    let mut remap = vec![usize::MAX; g.len()];
    let mut vertices = Vec::new();
    let mut coords = Vec::new();
    for v in (0..g.len()).filter(|&v| alive[v]) {
        remap[v] = vertices.len();
        vertices.push(g.vertices()[v].clone());
        coords.push(g.coord(v));
    }
    let arcs = g
        .arcs()
        .iter()
        .filter(|(a, b)| alive[*a] && alive[*b])
        .map(|&(a, b)| (remap[a], remap[b]))
        .collect();
    let rotation = (0..g.len())
        .filter(|&v| alive[v])
        .map(|v| {
            g.rotation(v)
                .map(|r| r.iter().filter(|&&u| alive[u]).map(|&u| remap[u]).collect())
        })
        .collect();
    GeoInstance::from_parts(vertices, arcs, remap[g.start()], coords, rotation)
}

fn fresh_name(g: &GeoInstance, taken: &[Vertex], base: &str) -> String {
    (1..)
        .map(|k| format!("{base}~{k}"))
        .find(|n| g.index_of(n).is_none() && !taken.iter().any(|v| &v.name == n))
        .expect("unbounded")
}

fn split_sinks(g: &GeoInstance) -> GeoInstance {
    let needs_split = |v: usize| g.outdegree(v) == 0 && g.indegree(v) > 1;
    if !(0..g.len()).any(needs_split) {
        return g.clone();
    }
    let scaled = g.has_coords();
    let mut vertices = g.vertices().to_vec();
    let mut coords: Vec<Option<Point>> = (0..g.len()).map(|v| g.coord(v).map(|(x, y)| (2 * x, 2 * y))).collect();
    let mut rotation: Vec<Option<Vec<usize>>> = (0..g.len()).map(|v| g.rotation(v).map(<[usize]>::to_vec)).collect();
    let mut arcs = g.arcs().to_vec();
    for v in (0..g.len()).filter(|&v| needs_split(v)) {
        // in_neighbors is in name order; the first tail keeps the original sink.
        for &u in &g.in_neighbors(v)[1..] {
            let name = fresh_name(g, &vertices[g.len()..], g.name(v));
            let fresh = vertices.len();
            vertices.push(Vertex {
                name,
                color: g.color(v),
            });
            coords.push(match (scaled, g.coord(u), g.coord(v)) {
                (true, Some(a), Some(b)) => Some((a.0 + b.0, a.1 + b.1)),
                _ => None,
            });
            rotation.push(rotation[v].as_ref().map(|_| vec![u]));
            if let Some(r) = rotation[u].as_mut() {
                r.iter_mut().filter(|x| **x == v).for_each(|x| *x = fresh);
            }
            if let Some(r) = rotation[v].as_mut() {
                r.retain(|&x| x != u);
            }
            let arc = arcs.iter_mut().find(|a| **a == (u, v)).expect("in-arc exists");
            *arc = (u, fresh);
        }
    }
    GeoInstance::from_parts(vertices, arcs, g.start(), coords, rotation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gg::{gg_solve, parse_instance, validate, GeoPosition, GgLimits, Profile};

    fn winner(g: &GeoInstance) -> crate::tt::Player {
        gg_solve(&GeoPosition::start(g).unwrap(), &GgLimits::default())
            .unwrap()
            .winner
    }

    #[test]
    fn normalized_instance_is_a_fixpoint() {
        let g = parse_instance("GG v1\nvertex s B\nvertex a R\nvertex b R\narc s a\narc s b\nstart s\n").unwrap();
        assert_eq!(normalize(&g).unwrap(), g);
    }

    #[test]
    fn sink_with_two_in_arcs_is_split() {
        // s -> a -> c, s -> b -> c, c is a blue sink with indegree 2.
        let text = "GG v1\nvertex s B\nvertex a R\nvertex b R\nvertex c B\n\
                    arc s a\narc s b\narc a c\narc b c\nstart s\n\
                    coord s 0 0\ncoord a 1 0\ncoord b 0 1\ncoord c 1 1\n";
        let g = parse_instance(text).unwrap();
        let n = normalize(&g).unwrap();
        assert_eq!(n.len(), g.len() + 1);
        assert_eq!(winner(&n), winner(&g));
        let fresh = n.len() - 1;
        assert_eq!(n.name(fresh), "c~1");
        assert_eq!(n.in_neighbors(fresh), &[n.index_of("b").unwrap()]);
        // b at (0,2), c at (2,2) after doubling: the fresh sink sits between.
        assert_eq!(n.coord(fresh), Some((1, 2)));
        assert!(
            validate(&n, Profile::Strict).is_valid(),
            "{}",
            validate(&n, Profile::Strict)
        );
        assert_eq!(normalize(&n).unwrap(), n);
    }

    #[test]
    fn dangling_source_is_removed() {
        let text = "GG v1\nvertex s B\nvertex a R\nvertex b R\nvertex x B\nvertex y R\n\
                    arc s a\narc s b\narc x a\narc x y\nstart s\n";
        let g = parse_instance(text).unwrap();
        let n = normalize(&g).unwrap();
        assert!(n.index_of("x").is_none());
        assert!(n.index_of("y").is_none());
        assert_eq!(n.len(), 3);
        assert_eq!(winner(&n), winner(&g));
    }
}
