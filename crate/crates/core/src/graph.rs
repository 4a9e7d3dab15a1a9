//! Finite directed multigraphs and their paths.
//!
//! A graph is a finite vertex set together with a finite list of directed
//! edges; parallel edges and loops are first class, so adjacency entries
//! may exceed 1. Vertex and edge ids are opaque strings; the canonical
//! order used everywhere (adjacency rows, path enumeration, matrix
//! indexing) is lexicographic in the id. Graphs are immutable after
//! construction and cheap to clone.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{CkError, Result};

#[derive(Debug)]
struct EdgeData {
    id: String,
    src: u32,
    rng: u32,
}

#[derive(Debug)]
struct GraphInner {
    vertices: Vec<String>,
    vertex_idx: BTreeMap<String, u32>,
    edges: Vec<EdgeData>,
    edge_idx: BTreeMap<String, u32>,
    /// Outgoing edge indices per vertex, ascending (= lexicographic in id).
    out: Vec<Vec<u32>>,
    /// Incoming edge indices per vertex, ascending.
    inc: Vec<Vec<u32>>,
}

/// A finite directed multigraph. Cloning is cheap (shared storage);
/// equality is by content.
#[derive(Clone)]
pub struct Graph {
    inner: Arc<GraphInner>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.inner, &other.inner) {
            return true;
        }
        self.inner.vertices == other.inner.vertices
            && self.inner.edges.len() == other.inner.edges.len()
            && self
                .inner
                .edges
                .iter()
                .zip(other.inner.edges.iter())
                .all(|(a, b)| a.id == b.id && a.src == b.src && a.rng == b.rng)
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph({} vertices, {} edges)",
            self.vertex_count(),
            self.edge_count()
        )
    }
}

impl Graph {
    /// Builds a graph from vertex ids and `(edge id, source, range)` triples.
    pub fn new<S: Into<String>>(vertices: Vec<S>, edges: Vec<(S, S, S)>) -> Result<Graph> {
        let mut names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(CkError::InvalidGraph("empty vertex set".into()));
        }
        names.sort();
        for w in names.windows(2) {
            if w[0] == w[1] {
                return Err(CkError::InvalidGraph(format!("duplicate vertex id `{}`", w[0])));
            }
        }
        let vertex_idx: BTreeMap<String, u32> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i as u32))
            .collect();

        let mut raw: Vec<(String, String, String)> = edges
            .into_iter()
            .map(|(id, s, r)| (id.into(), s.into(), r.into()))
            .collect();
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        let mut edge_list = Vec::with_capacity(raw.len());
        let mut edge_idx = BTreeMap::new();
        for (id, s, r) in raw {
            if edge_idx.contains_key(&id) {
                return Err(CkError::InvalidGraph(format!("duplicate edge id `{id}`")));
            }
            let src = *vertex_idx
                .get(&s)
                .ok_or_else(|| CkError::InvalidGraph(format!("edge `{id}`: unknown source vertex `{s}`")))?;
            let rng = *vertex_idx
                .get(&r)
                .ok_or_else(|| CkError::InvalidGraph(format!("edge `{id}`: unknown range vertex `{r}`")))?;
            edge_idx.insert(id.clone(), edge_list.len() as u32);
            edge_list.push(EdgeData { id, src, rng });
        }

        let mut out = vec![Vec::new(); names.len()];
        let mut inc = vec![Vec::new(); names.len()];
        for (i, e) in edge_list.iter().enumerate() {
            out[e.src as usize].push(i as u32);
            inc[e.rng as usize].push(i as u32);
        }

        Ok(Graph {
            inner: Arc::new(GraphInner {
                vertices: names,
                vertex_idx,
                edges: edge_list,
                edge_idx,
                out,
                inc,
            }),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.inner.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.inner.edges.len()
    }

    /// Vertex ids in canonical (lexicographic) order.
    pub fn vertices(&self) -> impl Iterator<Item = &str> {
        self.inner.vertices.iter().map(|s| s.as_str())
    }

    /// Edge ids in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = &str> {
        self.inner.edges.iter().map(|e| e.id.as_str())
    }

    pub fn vertex_index(&self, id: &str) -> Option<u32> {
        self.inner.vertex_idx.get(id).copied()
    }

    pub fn edge_index(&self, id: &str) -> Option<u32> {
        self.inner.edge_idx.get(id).copied()
    }

    pub fn vertex_name(&self, idx: u32) -> &str {
        &self.inner.vertices[idx as usize]
    }

    pub fn edge_id(&self, idx: u32) -> &str {
        &self.inner.edges[idx as usize].id
    }

    pub fn edge_source(&self, idx: u32) -> u32 {
        self.inner.edges[idx as usize].src
    }

    pub fn edge_range(&self, idx: u32) -> u32 {
        self.inner.edges[idx as usize].rng
    }

    /// Outgoing edge indices of `v`, in canonical order.
    pub fn out_edges(&self, v: u32) -> &[u32] {
        &self.inner.out[v as usize]
    }

    /// Incoming edge indices of `v`, in canonical order.
    pub fn in_edges(&self, v: u32) -> &[u32] {
        &self.inner.inc[v as usize]
    }

    pub fn out_degree(&self, v: u32) -> usize {
        self.inner.out[v as usize].len()
    }

    /// Adjacency matrix indexed by vertex pairs in canonical order:
    /// entry `(v, w)` counts the edges from `v` to `w`.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u64>> {
        let n = self.vertex_count();
        let mut a = vec![vec![0u64; n]; n];
        for e in &self.inner.edges {
            a[e.src as usize][e.rng as usize] += 1;
        }
        a
    }

    /// All paths of length `k`, optionally filtered by source and/or range
    /// vertex, in lexicographic order of the edge-id sequence. Length-0
    /// paths are the vertices.
    pub fn paths_of_length(
        &self,
        k: usize,
        source: Option<&str>,
        range: Option<&str>,
    ) -> Result<Vec<Path>> {
        let src = match source {
            Some(s) => Some(
                self.vertex_index(s)
                    .ok_or_else(|| CkError::Usage(format!("unknown vertex `{s}`")))?,
            ),
            None => None,
        };
        let rng = match range {
            Some(r) => Some(
                self.vertex_index(r)
                    .ok_or_else(|| CkError::Usage(format!("unknown vertex `{r}`")))?,
            ),
            None => None,
        };
        Ok(self
            .path_keys(k, src, rng)
            .into_iter()
            .map(|(v, edges)| Path {
                graph: self.clone(),
                source: v,
                edges,
            })
            .collect())
    }

    /// Raw enumeration used internally: `(source vertex, edge index list)`
    /// pairs in lexicographic edge-sequence order.
    pub(crate) fn path_keys(
        &self,
        k: usize,
        source: Option<u32>,
        range: Option<u32>,
    ) -> Vec<(u32, Vec<u32>)> {
        let starts: Vec<u32> = match source {
            Some(v) => vec![v],
            None => (0..self.vertex_count() as u32).collect(),
        };
        let mut result = Vec::new();
        for v in starts {
            let mut frontier = vec![(v, Vec::<u32>::new())];
            for _ in 0..k {
                let mut next = Vec::new();
                for (at, edges) in frontier {
                    for &e in self.out_edges(at) {
                        let mut es = edges.clone();
                        es.push(e);
                        next.push((self.edge_range(e), es));
                    }
                }
                frontier = next;
            }
            for (at, edges) in frontier {
                if range.is_none_or(|r| r == at) {
                    result.push((v, edges));
                }
            }
        }
        // Breadth-first expansion above is already source-major; for the
        // canonical order we sort by the edge sequence itself (empty paths
        // by source vertex).
        result.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
        result
    }

    /// Number of length-`j` paths with source `v` (1 when `j = 0`).
    pub fn count_paths_from(&self, v: u32, j: usize) -> u64 {
        let n = self.vertex_count();
        let mut counts = vec![0u64; n];
        counts[v as usize] = 1;
        for _ in 0..j {
            let mut next = vec![0u64; n];
            for e in &self.inner.edges {
                next[e.rng as usize] += counts[e.src as usize];
            }
            counts = next;
        }
        counts.iter().sum()
    }

    /// Number of length-`j` paths with range `v`.
    pub fn count_paths_into(&self, v: u32, j: usize) -> u64 {
        let n = self.vertex_count();
        let mut counts = vec![0u64; n];
        counts[v as usize] = 1;
        for _ in 0..j {
            let mut next = vec![0u64; n];
            for e in &self.inner.edges {
                next[e.src as usize] += counts[e.rng as usize];
            }
            counts = next;
        }
        counts.iter().sum()
    }

    /// Checks the structural hypotheses the calculus relies on: the graph
    /// is transitive (every ordered vertex pair is joined by a path of
    /// non-zero length) and every cycle has an exit. Sinks and sources are
    /// listed for diagnostics.
    pub fn standing_assumption(&self) -> StandingReport {
        let n = self.vertex_count();
        let mut transitive = true;
        for v in 0..n as u32 {
            let reach = self.reachable_nonzero(v);
            if reach.len() != n {
                transitive = false;
                break;
            }
        }
        let sinks: Vec<String> = (0..n as u32)
            .filter(|&v| self.inner.out[v as usize].is_empty())
            .map(|v| self.vertex_name(v).to_string())
            .collect();
        let sources: Vec<String> = (0..n as u32)
            .filter(|&v| self.inner.inc[v as usize].is_empty())
            .map(|v| self.vertex_name(v).to_string())
            .collect();
        StandingReport {
            transitive,
            all_cycles_have_exits: self.all_cycles_have_exits(),
            sinks,
            sources,
        }
    }

    /// Vertices reachable from `v` by a path of length >= 1.
    fn reachable_nonzero(&self, v: u32) -> BTreeSet<u32> {
        let mut seen = BTreeSet::new();
        let mut queue: VecDeque<u32> = self.out_edges(v).iter().map(|&e| self.edge_range(e)).collect();
        while let Some(w) = queue.pop_front() {
            if seen.insert(w) {
                for &e in self.out_edges(w) {
                    queue.push_back(self.edge_range(e));
                }
            }
        }
        seen
    }

    /// A cycle has an exit when one of its sources emits at least two
    /// edges. Simple cycles suffice: every cycle passes through the vertex
    /// set of some simple cycle.
    fn all_cycles_have_exits(&self) -> bool {
        let n = self.vertex_count() as u32;
        for start in 0..n {
            let mut on_stack = vec![false; n as usize];
            if !self.cycles_from_have_exits(start, start, &mut on_stack) {
                return false;
            }
        }
        true
    }

    /// DFS over simple cycles through `start` using only vertices >= start,
    /// returning false as soon as an exitless cycle closes.
    fn cycles_from_have_exits(&self, start: u32, at: u32, on_stack: &mut Vec<bool>) -> bool {
        on_stack[at as usize] = true;
        let mut ok = true;
        for &e in self.out_edges(at) {
            let w = self.edge_range(e);
            if w == start {
                // Cycle closed; it has an exit iff some vertex on it emits
                // two or more edges. Check the whole stack.
                let exit = (0..on_stack.len())
                    .filter(|&v| on_stack[v])
                    .any(|v| self.out_degree(v as u32) >= 2);
                if !exit {
                    ok = false;
                    break;
                }
            } else if w > start && !on_stack[w as usize] {
                if !self.cycles_from_have_exits(start, w, on_stack) {
                    ok = false;
                    break;
                }
            }
        }
        on_stack[at as usize] = false;
        ok
    }

    /// Renders the graph in the text format accepted by the parser.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for v in self.vertices() {
            s.push_str(&format!("vertex {v}\n"));
        }
        for e in &self.inner.edges {
            s.push_str(&format!(
                "edge {} : {} -> {}\n",
                e.id,
                self.vertex_name(e.src),
                self.vertex_name(e.rng)
            ));
        }
        s
    }
}

/// Result of the standing-assumption check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandingReport {
    pub transitive: bool,
    pub all_cycles_have_exits: bool,
    pub sinks: Vec<String>,
    pub sources: Vec<String>,
}

impl StandingReport {
    pub fn holds(&self) -> bool {
        self.transitive && self.all_cycles_have_exits
    }
}

/// A finite path: a vertex (length 0) or a composable edge sequence.
#[derive(Clone, PartialEq, Eq)]
pub struct Path {
    graph: Graph,
    source: u32,
    edges: Vec<u32>,
}

impl Path {
    /// The length-0 path at `v`.
    pub fn at_vertex(graph: &Graph, v: &str) -> Result<Path> {
        let idx = graph
            .vertex_index(v)
            .ok_or_else(|| CkError::Usage(format!("unknown vertex `{v}`")))?;
        Ok(Path {
            graph: graph.clone(),
            source: idx,
            edges: Vec::new(),
        })
    }

    /// A path from an edge-id sequence; rejects non-composable sequences.
    pub fn from_edge_ids(graph: &Graph, ids: &[&str]) -> Result<Path> {
        if ids.is_empty() {
            return Err(CkError::Usage(
                "empty edge list; use a vertex path instead".into(),
            ));
        }
        let mut edges = Vec::with_capacity(ids.len());
        for id in ids {
            let e = graph
                .edge_index(id)
                .ok_or_else(|| CkError::Usage(format!("unknown edge `{id}`")))?;
            edges.push(e);
        }
        for w in edges.windows(2) {
            if graph.edge_range(w[0]) != graph.edge_source(w[1]) {
                return Err(CkError::Usage(format!(
                    "edges `{}` and `{}` do not compose: range {} != source {}",
                    graph.edge_id(w[0]),
                    graph.edge_id(w[1]),
                    graph.vertex_name(graph.edge_range(w[0])),
                    graph.vertex_name(graph.edge_source(w[1]))
                )));
            }
        }
        Ok(Path {
            source: graph.edge_source(edges[0]),
            graph: graph.clone(),
            edges,
        })
    }

    pub(crate) fn from_indices(graph: &Graph, source: u32, edges: Vec<u32>) -> Path {
        debug_assert!(edges.is_empty() || graph.edge_source(edges[0]) == source);
        Path {
            graph: graph.clone(),
            source,
            edges,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn source_index(&self) -> u32 {
        self.source
    }

    pub fn range_index(&self) -> u32 {
        match self.edges.last() {
            Some(&e) => self.graph.edge_range(e),
            None => self.source,
        }
    }

    pub fn source(&self) -> &str {
        self.graph.vertex_name(self.source)
    }

    pub fn range(&self) -> &str {
        self.graph.vertex_name(self.range_index())
    }

    pub fn edge_indices(&self) -> &[u32] {
        &self.edges
    }

    pub fn edge_ids(&self) -> Vec<&str> {
        self.edges.iter().map(|&e| self.graph.edge_id(e)).collect()
    }

    pub fn is_cycle(&self) -> bool {
        !self.edges.is_empty() && self.range_index() == self.source
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges.is_empty() {
            write!(f, "({})", self.source())
        } else {
            write!(f, "({})", self.edge_ids().join(" "))
        }
    }
}
