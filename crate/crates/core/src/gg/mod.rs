//! Generalized Geography on bipartite digraphs.
//!
//! A token starts on the start vertex. The player owning the color of the
//! current vertex moves the token along an out-arc to a vertex it has never
//! visited; a player with no such arc loses.

mod format;
mod generate;
mod normalize;
mod solve;
pub(crate) mod validate;

pub use format::{parse_instance, write_instance};
pub use generate::{generate, generate_sized};
pub use normalize::normalize;
pub use solve::{gg_moves, gg_solve, GeoPosition, GeoSolveResult, GgLimits, VertexSet};
pub use validate::{validate, Profile, ValidationReport, Violation};

use std::collections::HashMap;

use thiserror::Error;

use crate::tt::Player;

pub type Point = (i64, i64);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GgError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("malformed instance: {0}")]
    Malformed(String),
    #[error("instance invalid under the {profile:?} profile: {report}")]
    Invalid { profile: Profile, report: ValidationReport },
    #[error("resource limit: {0}")]
    ResourceExhausted(String),
    #[error("normalization failed: {0}")]
    NormalizationFailed(String),
    #[error("generation failed: {0}")]
    GenerationFailed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub name: String,
    pub color: Player,
}

/// A Geography instance with an optional planar embedding.
///
/// Vertices are addressed by index; out- and in-neighbor lists are kept
/// sorted by vertex name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeoInstance {
    vertices: Vec<Vertex>,
    arcs: Vec<(usize, usize)>,
    start: usize,
    coords: Vec<Option<Point>>,
    rotation: Vec<Option<Vec<usize>>>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

impl GeoInstance {
    /// Builds an instance from names. Fails on duplicate vertex names or
    /// arcs naming undeclared vertices.
    pub fn new(vertices: Vec<Vertex>, arcs: &[(&str, &str)], start: &str) -> Result<GeoInstance, GgError> {
        let index = name_index(&vertices)?;
        let lookup = |n: &str| {
            index
                .get(n)
                .copied()
                .ok_or_else(|| GgError::Malformed(format!("undeclared vertex `{n}`")))
        };
        let arcs = arcs
            .iter()
            .map(|&(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>, GgError>>()?;
        let start = lookup(start)?;
        let n = vertices.len();
        Ok(GeoInstance::from_parts(
            vertices,
            arcs,
            start,
            vec![None; n],
            vec![None; n],
        ))
    }

    pub(crate) fn from_parts(
        vertices: Vec<Vertex>,
        arcs: Vec<(usize, usize)>,
        start: usize,
        coords: Vec<Option<Point>>,
        rotation: Vec<Option<Vec<usize>>>,
    ) -> GeoInstance {
        let n = vertices.len();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(a, b) in &arcs {
            out_adj[a].push(b);
            in_adj[b].push(a);
        }
        for list in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            list.sort_by(|&x, &y| vertices[x].name.cmp(&vertices[y].name));
        }
        GeoInstance {
            vertices,
            arcs,
            start,
            coords,
            rotation,
            out_adj,
            in_adj,
        }
    }

    /// Returns a copy carrying the given coordinates (by vertex name).
    pub fn with_coords(mut self, coords: &[(&str, Point)]) -> Result<GeoInstance, GgError> {
        for &(name, p) in coords {
            let v = self
                .index_of(name)
                .ok_or_else(|| GgError::Malformed(format!("undeclared vertex `{name}`")))?;
            self.coords[v] = Some(p);
        }
        Ok(self)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn name(&self, v: usize) -> &str {
        &self.vertices[v].name
    }

    pub fn color(&self, v: usize) -> Player {
        self.vertices[v].color
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.name == name)
    }

    pub fn coord(&self, v: usize) -> Option<Point> {
        self.coords[v]
    }

    pub fn rotation(&self, v: usize) -> Option<&[usize]> {
        self.rotation[v].as_deref()
    }

    pub fn has_coords(&self) -> bool {
        self.coords.iter().any(Option::is_some)
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn outdegree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn indegree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    /// Degree in the underlying graph, counting every arc.
    pub fn degree(&self, v: usize) -> usize {
        self.outdegree(v) + self.indegree(v)
    }

    /// Distinct neighbors in the underlying undirected graph, by name.
    pub fn undirected_neighbors(&self, v: usize) -> Vec<usize> {
        let mut n: Vec<usize> = self.out_adj[v].iter().chain(&self.in_adj[v]).copied().collect();
        n.sort_by(|&x, &y| self.name(x).cmp(self.name(y)));
        n.dedup();
        n
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        self.out_adj[from].contains(&to)
    }

    /// Same graph with vertex names replaced through `rename`.
    pub fn renamed(&self, rename: impl Fn(&str) -> String) -> GeoInstance {
        let vertices = self
            .vertices
            .iter()
            .map(|v| Vertex {
                name: rename(&v.name),
                color: v.color,
            })
            .collect();
        GeoInstance::from_parts(
            vertices,
            self.arcs.clone(),
            self.start,
            self.coords.clone(),
            self.rotation.clone(),
        )
    }
}

fn name_index(vertices: &[Vertex]) -> Result<HashMap<&str, usize>, GgError> {
    let mut index = HashMap::new();
    for (i, v) in vertices.iter().enumerate() {
        if index.insert(v.name.as_str(), i).is_some() {
            return Err(GgError::Malformed(format!("duplicate vertex `{}`", v.name)));
        }
    }
    Ok(index)
}

#[cfg(test)]
pub(crate) fn vtx(name: &str, color: Player) -> Vertex {
    Vertex {
        name: name.to_string(),
        color,
    }
}
