//! Core graph types: simple undirected graphs with 1-based vertex ids,
//! bipartite graphs, colored bipartite graphs, and DIMACS edge-format I/O.
//!
//! All types are immutable once constructed; reductions and solvers only
//! observe them. Vertex ids are never renumbered by any operation here.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop edge {0}-{0} is not allowed")]
    LoopEdge(u32),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: u32, n: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid colored bipartite graph: {0}")]
    InvalidColoring(String),
}

/// Simple undirected graph on vertices `1..=n`. No loops, no duplicate edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    // adj[0] unused; adj[v] holds the sorted neighbors of v.
    adj: Vec<BTreeSet<u32>>,
    m: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            adj: vec![BTreeSet::new(); n + 1],
            m: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Inserts an edge; duplicates are silently collapsed.
    pub fn add_edge(&mut self, u: u32, v: u32) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::LoopEdge(u));
        }
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if self.adj[u as usize].insert(v) {
            self.adj[v as usize].insert(u);
            self.m += 1;
        }
        Ok(())
    }

    fn check_vertex(&self, v: u32) -> Result<(), GraphError> {
        if v == 0 || v as usize > self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        u != v && u >= 1 && v >= 1 && (u as usize) <= self.n && self.adj[u as usize].contains(&v)
    }

    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        self.adj[v as usize].iter().copied()
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> {
        1..=self.n as u32
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.m);
        for u in self.vertices() {
            for &v in &self.adj[u as usize] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 1..=self.n as u32 {
            for v in (u + 1)..=self.n as u32 {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v).expect("complement edges are in range");
                }
            }
        }
        g
    }
}

/// True iff every vertex of `g` is in `dom` or adjacent to a member of `dom`.
pub fn is_dominating(g: &Graph, dom: &BTreeSet<u32>) -> Result<bool, GraphError> {
    for &v in dom {
        if v == 0 || v as usize > g.n() {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: g.n(),
            });
        }
    }
    for v in g.vertices() {
        if dom.contains(&v) {
            continue;
        }
        if !g.neighbors(v).any(|u| dom.contains(&u)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A dominating set together with what is provably known about it.
///
/// `gamma_lower_bound` is a certified lower bound on the domination number of
/// the graph the set was computed for; it equals `size` exactly when
/// `optimal` is set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominatingSetResult {
    pub vertices: BTreeSet<u32>,
    pub size: usize,
    pub gamma_lower_bound: usize,
    pub optimal: bool,
}

impl DominatingSetResult {
    pub fn new(vertices: BTreeSet<u32>, gamma_lower_bound: usize, optimal: bool) -> Self {
        let size = vertices.len();
        Self {
            vertices,
            size,
            gamma_lower_bound,
            optimal,
        }
    }

    /// Re-checks the defining property against a graph.
    pub fn verify(&self, g: &Graph) -> Result<bool, GraphError> {
        Ok(self.size == self.vertices.len() && is_dominating(g, &self.vertices)?)
    }
}

// ---------------------------------------------------------------------------
// DIMACS edge format
// ---------------------------------------------------------------------------

/// Parses the DIMACS edge format: `c` comment lines, one `p edge <n> <m>`
/// header, then `e <u> <v>` lines with 1-based endpoints.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if graph.is_some() {
                return Err(GraphError::Parse {
                    line: line_no,
                    msg: "duplicate problem line".into(),
                });
            }
            let fields: Vec<&str> = rest.split_ascii_whitespace().collect();
            if fields.len() != 3 || fields[0] != "edge" {
                return Err(GraphError::Parse {
                    line: line_no,
                    msg: format!("malformed header {line:?}, expected `p edge <n> <m>`"),
                });
            }
            let n: usize = fields[1].parse().map_err(|_| GraphError::Parse {
                line: line_no,
                msg: format!("bad vertex count {:?}", fields[1]),
            })?;
            let _m: usize = fields[2].parse().map_err(|_| GraphError::Parse {
                line: line_no,
                msg: format!("bad edge count {:?}", fields[2]),
            })?;
            graph = Some(Graph::new(n));
            continue;
        }
        if let Some(rest) = line.strip_prefix('e') {
            let g = graph.as_mut().ok_or(GraphError::Parse {
                line: line_no,
                msg: "edge before problem line".into(),
            })?;
            let fields: Vec<&str> = rest.split_ascii_whitespace().collect();
            if fields.len() != 2 {
                return Err(GraphError::Parse {
                    line: line_no,
                    msg: format!("malformed edge line {line:?}"),
                });
            }
            let u: u32 = fields[0].parse().map_err(|_| GraphError::Parse {
                line: line_no,
                msg: format!("bad endpoint {:?}", fields[0]),
            })?;
            let v: u32 = fields[1].parse().map_err(|_| GraphError::Parse {
                line: line_no,
                msg: format!("bad endpoint {:?}", fields[1]),
            })?;
            g.add_edge(u, v).map_err(|e| GraphError::Parse {
                line: line_no,
                msg: e.to_string(),
            })?;
            continue;
        }
        return Err(GraphError::Parse {
            line: line_no,
            msg: format!("unrecognized line {line:?}"),
        });
    }
    graph.ok_or(GraphError::Parse {
        line: 0,
        msg: "missing problem line".into(),
    })
}

/// Serializes deterministically: header, then edges sorted ascending.
pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p edge {} {}", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    // Trim the trailing newline when there are no edges so tiny fixtures
    // stay single-line.
    if g.edge_count() == 0 {
        out.pop();
    }
    out
}

// ---------------------------------------------------------------------------
// Bipartite graphs
// ---------------------------------------------------------------------------

/// Uncolored bipartite graph with parts `A = 1..=a_size`, `B = 1..=b_size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    a_size: usize,
    b_size: usize,
    adj_a: Vec<BTreeSet<u32>>,
    adj_b: Vec<BTreeSet<u32>>,
    m: usize,
}

impl BipartiteGraph {
    pub fn new(a_size: usize, b_size: usize) -> Self {
        Self {
            a_size,
            b_size,
            adj_a: vec![BTreeSet::new(); a_size + 1],
            adj_b: vec![BTreeSet::new(); b_size + 1],
            m: 0,
        }
    }

    pub fn add_edge(&mut self, a: u32, b: u32) -> Result<(), GraphError> {
        if a == 0 || a as usize > self.a_size {
            return Err(GraphError::VertexOutOfRange {
                vertex: a,
                n: self.a_size,
            });
        }
        if b == 0 || b as usize > self.b_size {
            return Err(GraphError::VertexOutOfRange {
                vertex: b,
                n: self.b_size,
            });
        }
        if self.adj_a[a as usize].insert(b) {
            self.adj_b[b as usize].insert(a);
            self.m += 1;
        }
        Ok(())
    }

    pub fn complete(a_size: usize, b_size: usize) -> Self {
        let mut g = Self::new(a_size, b_size);
        for a in 1..=a_size as u32 {
            for b in 1..=b_size as u32 {
                g.add_edge(a, b).expect("complete bipartite edges in range");
            }
        }
        g
    }

    pub fn a_size(&self) -> usize {
        self.a_size
    }

    pub fn b_size(&self) -> usize {
        self.b_size
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        a >= 1 && (a as usize) <= self.a_size && self.adj_a[a as usize].contains(&b)
    }

    /// Neighbors in B of the left vertex `a`.
    pub fn neighbors_of_a(&self, a: u32) -> &BTreeSet<u32> {
        &self.adj_a[a as usize]
    }

    /// Neighbors in A of the right vertex `b`.
    pub fn neighbors_of_b(&self, b: u32) -> &BTreeSet<u32> {
        &self.adj_b[b as usize]
    }

    /// Edges as sorted `(a, b)` pairs.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.m);
        for a in 1..=self.a_size as u32 {
            for &b in &self.adj_a[a as usize] {
                out.push((a, b));
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Colored bipartite graphs
// ---------------------------------------------------------------------------

/// Bipartite graph with total colorings of both sides: left vertices get
/// colors in `1..=a_colors`, right vertices in `1..=b_colors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredBipartiteGraph {
    graph: BipartiteGraph,
    a_colors: usize,
    b_colors: usize,
    alpha: Vec<u32>,
    beta: Vec<u32>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CbgJson {
    a_size: usize,
    b_size: usize,
    a_colors: usize,
    b_colors: usize,
    alpha: Vec<u32>,
    beta: Vec<u32>,
    edges: Vec<(u32, u32)>,
}

impl ColoredBipartiteGraph {
    pub fn new(
        graph: BipartiteGraph,
        a_colors: usize,
        b_colors: usize,
        alpha: Vec<u32>,
        beta: Vec<u32>,
    ) -> Result<Self, GraphError> {
        if a_colors == 0 || b_colors == 0 {
            return Err(GraphError::InvalidColoring(
                "color counts must be positive".into(),
            ));
        }
        if alpha.len() != graph.a_size() {
            return Err(GraphError::InvalidColoring(format!(
                "alpha has {} entries for {} left vertices",
                alpha.len(),
                graph.a_size()
            )));
        }
        if beta.len() != graph.b_size() {
            return Err(GraphError::InvalidColoring(format!(
                "beta has {} entries for {} right vertices",
                beta.len(),
                graph.b_size()
            )));
        }
        if let Some(c) = alpha.iter().find(|&&c| c == 0 || c as usize > a_colors) {
            return Err(GraphError::InvalidColoring(format!(
                "alpha color {c} outside 1..={a_colors}"
            )));
        }
        if let Some(c) = beta.iter().find(|&&c| c == 0 || c as usize > b_colors) {
            return Err(GraphError::InvalidColoring(format!(
                "beta color {c} outside 1..={b_colors}"
            )));
        }
        Ok(Self {
            graph,
            a_colors,
            b_colors,
            alpha,
            beta,
        })
    }

    pub fn graph(&self) -> &BipartiteGraph {
        &self.graph
    }

    pub fn a_size(&self) -> usize {
        self.graph.a_size()
    }

    pub fn b_size(&self) -> usize {
        self.graph.b_size()
    }

    pub fn a_colors(&self) -> usize {
        self.a_colors
    }

    pub fn b_colors(&self) -> usize {
        self.b_colors
    }

    pub fn alpha(&self, a: u32) -> u32 {
        self.alpha[a as usize - 1]
    }

    pub fn beta(&self, b: u32) -> u32 {
        self.beta[b as usize - 1]
    }

    /// Right vertices of the given beta color, ascending.
    pub fn beta_class(&self, color: u32) -> Vec<u32> {
        (1..=self.b_size() as u32)
            .filter(|&b| self.beta(b) == color)
            .collect()
    }

    pub fn beta_class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.b_colors];
        for &c in &self.beta {
            sizes[c as usize - 1] += 1;
        }
        sizes
    }

    pub fn to_json(&self) -> String {
        let repr = CbgJson {
            a_size: self.a_size(),
            b_size: self.b_size(),
            a_colors: self.a_colors,
            b_colors: self.b_colors,
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            edges: self.graph.edges(),
        };
        serde_json::to_string(&repr).expect("colored bipartite graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let repr: CbgJson = serde_json::from_str(text)
            .map_err(|e| GraphError::InvalidColoring(format!("json: {e}")))?;
        let mut graph = BipartiteGraph::new(repr.a_size, repr.b_size);
        for (a, b) in repr.edges {
            graph.add_edge(a, b)?;
        }
        Self::new(graph, repr.a_colors, repr.b_colors, repr.alpha, repr.beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cycle(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for v in 1..=n as u32 {
            let w = if v as usize == n { 1 } else { v + 1 };
            g.add_edge(v, w).unwrap();
        }
        g
    }

    #[test]
    fn dominating_full_set_and_empty_set() {
        let g = cycle(5);
        let all: BTreeSet<u32> = g.vertices().collect();
        assert!(is_dominating(&g, &all).unwrap());
        assert!(!is_dominating(&g, &BTreeSet::new()).unwrap());
    }

    #[test]
    fn dominating_c5_pair() {
        let g = cycle(5);
        let d: BTreeSet<u32> = [1, 3].into_iter().collect();
        assert!(is_dominating(&g, &d).unwrap());
        let d: BTreeSet<u32> = [1, 2].into_iter().collect();
        assert!(!is_dominating(&g, &d).unwrap());
    }

    #[test]
    fn dominating_rejects_out_of_range() {
        let g = cycle(3);
        let d: BTreeSet<u32> = [4].into_iter().collect();
        assert!(matches!(
            is_dominating(&g, &d),
            Err(GraphError::VertexOutOfRange { vertex: 4, n: 3 })
        ));
    }

    #[test]
    fn parse_basic() {
        let g = parse_graph("p edge 3 2\ne 1 2\ne 2 3").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), vec![(1, 2), (2, 3)]);
    }

    #[test]
    fn parse_empty_edge_set_and_comments() {
        let g = parse_graph("c hello\np edge 2 0\nc bye").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn parse_rejects_loop_with_line_number() {
        let err = parse_graph("p edge 2 1\ne 1 1").unwrap_err();
        match err {
            GraphError::Parse { line, msg } => {
                assert_eq!(line, 2);
                assert!(msg.contains("loop"), "{msg}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_out_of_range_endpoint() {
        let err = parse_graph("p edge 2 1\ne 1 3").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 2, .. }));
    }

    #[test]
    fn parse_rejects_malformed_header() {
        let err = parse_graph("p edges 2 1").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 1, .. }));
    }

    #[test]
    fn parse_collapses_duplicates() {
        let g = parse_graph("p edge 2 3\ne 1 2\ne 2 1\ne 1 2").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn write_single_vertex() {
        let g = Graph::new(1);
        assert_eq!(write_graph(&g), "p edge 1 0");
    }

    #[test]
    fn write_emits_sorted_edges() {
        let g = Graph::from_edges(3, [(2, 3), (1, 2)]).unwrap();
        assert_eq!(write_graph(&g), "p edge 3 2\ne 1 2\ne 2 3\n");
    }

    #[test]
    fn roundtrip_c5() {
        let g = cycle(5);
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn roundtrip_seeded_random_graphs() {
        use crate::detrand::SplitMix64;
        let mut rng = SplitMix64::new(99);
        for trial in 0..50 {
            let n = 1 + (trial % 12) as usize;
            let mut g = Graph::new(n);
            for u in 1..=n as u32 {
                for v in (u + 1)..=n as u32 {
                    if rng.chance(1, 3) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        }
    }

    #[test]
    fn dominating_matches_definition_level_check() {
        use crate::detrand::SplitMix64;
        let mut rng = SplitMix64::new(5);
        for _ in 0..60 {
            let n = 1 + rng.next_below(10) as usize;
            let mut g = Graph::new(n);
            for u in 1..=n as u32 {
                for v in (u + 1)..=n as u32 {
                    if rng.chance(2, 5) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let dom: BTreeSet<u32> = (1..=n as u32).filter(|_| rng.chance(1, 2)).collect();
            // Definition-level check against the raw edge list only.
            let edges = g.edges();
            let naive = (1..=n as u32).all(|v| {
                dom.contains(&v)
                    || edges
                        .iter()
                        .any(|&(x, y)| (x == v && dom.contains(&y)) || (y == v && dom.contains(&x)))
            });
            assert_eq!(is_dominating(&g, &dom).unwrap(), naive);
        }
    }

    #[test]
    fn colored_bipartite_json_roundtrip() {
        let mut g = BipartiteGraph::new(2, 3);
        g.add_edge(1, 1).unwrap();
        g.add_edge(2, 3).unwrap();
        let cbg = ColoredBipartiteGraph::new(g, 2, 3, vec![1, 2], vec![1, 2, 3]).unwrap();
        let text = cbg.to_json();
        assert!(text.contains("\"a_size\":2"));
        assert_eq!(ColoredBipartiteGraph::from_json(&text).unwrap(), cbg);
    }

    #[test]
    fn colored_bipartite_rejects_bad_colorings() {
        let g = BipartiteGraph::new(2, 2);
        assert!(ColoredBipartiteGraph::new(g.clone(), 2, 2, vec![1], vec![1, 2]).is_err());
        assert!(ColoredBipartiteGraph::new(g.clone(), 2, 2, vec![1, 3], vec![1, 2]).is_err());
        assert!(ColoredBipartiteGraph::new(g, 2, 2, vec![1, 2], vec![0, 2]).is_err());
    }

    #[test]
    fn bipartite_rejects_out_of_part_edges() {
        let mut g = BipartiteGraph::new(2, 2);
        assert!(g.add_edge(3, 1).is_err());
        assert!(g.add_edge(1, 0).is_err());
    }
}
