//! Metrized graphs: finite connected weighted multigraphs whose edge
//! lengths are read as resistances.
//!
//! Vertex order is significant everywhere downstream (it fixes matrix
//! indexing), so it is carried explicitly. Graphs built from an edge list
//! order their vertices by first appearance.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Prefix reserved for vertices introduced by [`MetrizedGraph::optimalize`].
pub const SUBDIVISION_PREFIX: &str = "__sub";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub length: f64,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.a == self.b
    }

    pub fn conductance(&self) -> f64 {
        1.0 / self.length
    }

    fn key(&self) -> (usize, usize) {
        (self.a.min(self.b), self.a.max(self.b))
    }
}

/// A connected metrized graph. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct MetrizedGraph {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<Edge>,
}

impl MetrizedGraph {
    /// Builds a graph from named edges; vertices are ordered by first appearance.
    pub fn from_edges<I, S>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, S, f64)>,
        S: AsRef<str>,
    {
        let mut vertices = Vec::new();
        let mut index = HashMap::new();
        let mut out = Vec::new();
        for (a, b, length) in edges {
            let a = intern(&mut vertices, &mut index, a.as_ref());
            let b = intern(&mut vertices, &mut index, b.as_ref());
            out.push(Edge { a, b, length });
        }
        Self::with_vertices(vertices, out)
    }

    /// Builds a graph with an explicit vertex order.
    pub fn with_vertices(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Empty);
        }
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::Domain(format!("duplicate vertex id `{v}`")));
            }
        }
        let n = vertices.len();
        for (i, e) in edges.iter().enumerate() {
            for end in [e.a, e.b] {
                if end >= n {
                    return Err(Error::VertexOutOfRange { index: end, n });
                }
            }
            check_length(e.length, || format!("edge {i}"))?;
        }
        let graph = Self {
            vertices,
            index,
            edges,
        };
        let components = graph.component_count();
        if components != 1 {
            return Err(Error::Disconnected { components });
        }
        Ok(graph)
    }

    /// Parses the whitespace-separated edge-list format
    /// (`<id_a> <id_b> <length>` per line, `#` comments, blank lines ignored).
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut vertices = Vec::new();
        let mut index = HashMap::new();
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("");
            let fields: Vec<&str> = content.split_whitespace().collect();
            if fields.is_empty() {
                continue;
            }
            if fields.len() != 3 {
                return Err(Error::Parse {
                    line,
                    message: format!("expected `<id_a> <id_b> <length>`, found {} fields", fields.len()),
                });
            }
            let length: f64 = fields[2].parse().map_err(|_| Error::Parse {
                line,
                message: format!("invalid length `{}`", fields[2]),
            })?;
            check_length(length, || format!("line {line}"))?;
            let a = intern(&mut vertices, &mut index, fields[0]);
            let b = intern(&mut vertices, &mut index, fields[1]);
            edges.push(Edge { a, b, length });
        }
        Self::with_vertices(vertices, edges)
    }

    /// Writes the graph in edge-list format. Lengths use the shortest
    /// representation that parses back to the same value.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", self.vertices[e.a], self.vertices[e.b], e.length);
        }
        out
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn e(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    /// Number of edge directions leaving vertex `i` (a self-loop counts twice).
    pub fn valence(&self, i: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.a == i) + usize::from(e.b == i))
            .sum()
    }

    /// True when there are no self-loops and no parallel edges.
    pub fn is_optimal(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.edges.len());
        self.edges.iter().all(|e| !e.is_loop() && seen.insert(e.key()))
    }

    /// Returns an equivalent graph on an optimal vertex set.
    ///
    /// Each self-loop of length `L` becomes a 3-cycle through two fresh
    /// vertices with segments `L/3`; in a parallel bundle the first edge is
    /// kept and every later one is split at its midpoint. Resistances
    /// between the original vertices are unchanged. Fresh vertices are named
    /// `__sub<k>` and appended after the original vertices.
    pub fn optimalize(&self) -> MetrizedGraph {
        if self.is_optimal() {
            return self.clone();
        }
        let mut vertices = self.vertices.clone();
        let mut index = self.index.clone();
        let mut counter = 0usize;
        let mut fresh = |vertices: &mut Vec<String>, index: &mut HashMap<String, usize>| loop {
            let name = format!("{SUBDIVISION_PREFIX}{counter}");
            counter += 1;
            if !index.contains_key(&name) {
                let id = vertices.len();
                index.insert(name.clone(), id);
                vertices.push(name);
                break id;
            }
        };

        let mut seen = HashSet::new();
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            if e.is_loop() {
                let third = e.length / 3.0;
                let s1 = fresh(&mut vertices, &mut index);
                let s2 = fresh(&mut vertices, &mut index);
                edges.push(Edge { a: e.a, b: s1, length: third });
                edges.push(Edge { a: s1, b: s2, length: third });
                edges.push(Edge { a: s2, b: e.a, length: third });
            } else if seen.insert(e.key()) {
                edges.push(*e);
            } else {
                let half = e.length / 2.0;
                let m = fresh(&mut vertices, &mut index);
                edges.push(Edge { a: e.a, b: m, length: half });
                edges.push(Edge { a: m, b: e.b, length: half });
            }
        }
        MetrizedGraph {
            vertices,
            index,
            edges,
        }
    }

    /// Copy of the graph with edge `edge` given a new length.
    pub fn with_edge_length(&self, edge: usize, length: f64) -> Result<MetrizedGraph> {
        if edge >= self.edges.len() {
            return Err(Error::Domain(format!(
                "edge index {edge} out of range for {} edges",
                self.edges.len()
            )));
        }
        check_length(length, || format!("edge {edge}"))?;
        let mut g = self.clone();
        g.edges[edge].length = length;
        Ok(g)
    }

    fn component_count(&self) -> usize {
        let n = self.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = n;
        for e in &self.edges {
            let (ra, rb) = (find(&mut parent, e.a), find(&mut parent, e.b));
            if ra != rb {
                parent[ra] = rb;
                components -= 1;
            }
        }
        components
    }
}

fn intern(vertices: &mut Vec<String>, index: &mut HashMap<String, usize>, id: &str) -> usize {
    *index.entry(id.to_string()).or_insert_with(|| {
        vertices.push(id.to_string());
        vertices.len() - 1
    })
}

fn check_length(length: f64, context: impl FnOnce() -> String) -> Result<()> {
    if length.is_finite() && length > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidLength {
            context: context(),
            length,
        })
    }
}

/// Pairwise conductances `C_pq = 1/L` and vertex conductances `C_p = Σ_q C_pq`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConductanceProfile {
    pairwise: DMatrix<f64>,
    vertex: Vec<f64>,
}

impl ConductanceProfile {
    pub fn new(g: &MetrizedGraph) -> Result<Self> {
        if !g.is_optimal() {
            return Err(Error::NotOptimal);
        }
        let n = g.n();
        let mut pairwise = DMatrix::zeros(n, n);
        for e in g.edges() {
            let c = e.conductance();
            pairwise[(e.a, e.b)] = c;
            pairwise[(e.b, e.a)] = c;
        }
        let vertex = (0..n).map(|p| pairwise.row(p).sum()).collect();
        Ok(Self { pairwise, vertex })
    }

    pub fn n(&self) -> usize {
        self.vertex.len()
    }

    /// `C_pq`; zero on the diagonal and for non-adjacent pairs.
    pub fn pair(&self, p: usize, q: usize) -> f64 {
        self.pairwise[(p, q)]
    }

    /// `C_p`.
    pub fn vertex(&self, p: usize) -> f64 {
        self.vertex[p]
    }

    pub fn vertex_conductances(&self) -> &[f64] {
        &self.vertex
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.pairwise
    }

    /// Neighbours of `p` together with their conductances.
    pub fn neighbours(&self, p: usize) -> Vec<(usize, f64)> {
        (0..self.n())
            .map(|q| (q, self.pairwise[(p, q)]))
            .filter(|&(_, c)| c > 0.0)
            .collect()
    }
}

/// Convenience wrapper for [`ConductanceProfile::new`].
pub fn conductance_profile(g: &MetrizedGraph) -> Result<ConductanceProfile> {
    ConductanceProfile::new(g)
}
