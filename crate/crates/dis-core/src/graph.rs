//! Simple undirected graphs with dense vertex ids, BFS distances, and the
//! role labels used to make reduction artifacts self-describing.
//!
//! Distance conventions used throughout the crate:
//!
//! * distances count edges, `d(u, u) = 0`, neighbours are at distance 1;
//! * unreachable pairs carry the sentinel [`UNREACHABLE`], which is strictly
//!   greater than every finite radius, *equal to itself* (two vertices both
//!   unreachable from a witness count as equidistant), and unequal to every
//!   finite distance;
//! * a vertex never r-dominates vertices outside its connected component,
//!   for any radius including `∞`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Dense vertex identifier in `0..n`.
pub type Vertex = usize;

/// Sentinel distance for unreachable pairs. Strictly greater than any finite
/// distance that can occur (vertex counts stay far below `u32::MAX`).
pub const UNREACHABLE: u32 = u32::MAX;

/// A domination / locality radius: a finite value or `∞`.
///
/// The derived order places every finite radius below `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Radius {
    Finite(u32),
    Infinite,
}

impl Radius {
    /// Whether a distance value lies within this radius. [`UNREACHABLE`] is
    /// outside every radius, including `∞`: reachability is required.
    pub fn contains(self, d: u32) -> bool {
        match self {
            Radius::Finite(r) => d != UNREACHABLE && d <= r,
            Radius::Infinite => d != UNREACHABLE,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Radius::Finite(r) => Some(r),
            Radius::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Radius::Infinite)
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Radius::Finite(r) => write!(f, "{r}"),
            Radius::Infinite => write!(f, "inf"),
        }
    }
}

/// Which gadget copy a labelled vertex belongs to inside a reduction
/// artifact: element-side copies are indexed by the element (or, in the
/// compressed construction, by the bit position), set-side copies likewise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CopyTag {
    Element(usize),
    Set(usize),
}

impl fmt::Display for CopyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CopyTag::Element(i) => write!(f, "e{i}"),
            CopyTag::Set(j) => write!(f, "s{j}"),
        }
    }
}

/// Role of a vertex inside a reduction artifact. Names mirror the reduction
/// constructions: `v^Ω_i` (element), `v^S_j` / `v̄^S_j` (set pair), the
/// membership paths `l^k_{i,j}`, the apex, and the apex path `a^k`.
///
/// Plain graphs label every vertex [`Role::Plain`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    /// Vertex of a gadget copy; `name` is the vertex's name inside the gadget.
    Gadget { copy: CopyTag, name: String },
    /// Element vertex `v^Ω_i` (1-based `i`).
    Element(usize),
    /// Set vertex `v^S_j` (1-based `j`).
    Set(usize),
    /// Set twin vertex `v̄^S_j`.
    SetTwin(usize),
    /// Path vertex `l^step`: per membership `(element, set)` in the distance
    /// identifying construction (`set` is `Some`), shared per element in the
    /// compressed construction (`set` is `None`).
    Path {
        element: usize,
        set: Option<usize>,
        step: usize,
    },
    /// The apex vertex of the apex construction.
    Apex,
    /// Apex path vertex `a^step` of the compressed construction.
    ApexPath(usize),
    Plain,
}

/// Structural errors raised when assembling a [`Graph`] from untrusted data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    SelfLoop(Vertex),
    DuplicateEdge(Vertex, Vertex),
    VertexOutOfRange { vertex: Vertex, n: usize },
    LabelCountMismatch { labels: usize, n: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::SelfLoop(v) => write!(f, "self-loop at vertex {v}"),
            GraphError::DuplicateEdge(u, v) => write!(f, "duplicate edge {u}-{v}"),
            GraphError::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for n = {n}")
            }
            GraphError::LabelCountMismatch { labels, n } => {
                write!(f, "{labels} labels for {n} vertices")
            }
        }
    }
}

impl core::error::Error for GraphError {}

/// A finite simple undirected graph. Vertex ids are dense integers `0..n`;
/// no self-loops, no duplicate edges. Isolated vertices and empty graphs are
/// allowed.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<Vertex>>,
    edges: Vec<(Vertex, Vertex)>,
    labels: Vec<Role>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list, labelling every
    /// vertex [`Role::Plain`].
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        Self::with_labels(n, edges, vec![Role::Plain; n])
    }

    /// Builds a labelled graph; `labels` must have exactly `n` entries.
    pub fn with_labels(
        n: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
        labels: Vec<Role>,
    ) -> Result<Self, GraphError> {
        if labels.len() != n {
            return Err(GraphError::LabelCountMismatch {
                labels: labels.len(),
                n,
            });
        }
        let mut seen = BTreeSet::new();
        let mut canonical = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
            canonical.push(e);
        }
        canonical.sort_unstable();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &canonical {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            adj,
            edges: canonical,
            labels,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as canonical sorted pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn labels(&self) -> &[Role] {
        &self.labels
    }

    pub fn label(&self, v: Vertex) -> &Role {
        &self.labels[v]
    }

    /// Breadth-first distances from `source`; unreachable vertices get
    /// [`UNREACHABLE`].
    pub fn bfs_distances(&self, source: Vertex) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.n];
        let mut queue = alloc::collections::VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// All-pairs distances via one BFS per vertex.
    pub fn distances(&self) -> DistanceMatrix {
        let mut d = Vec::with_capacity(self.n * self.n);
        for v in 0..self.n {
            d.extend(self.bfs_distances(v));
        }
        DistanceMatrix { n: self.n, d }
    }

    /// Component id per vertex (ids are dense, assigned in vertex order) and
    /// the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = next;
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        (comp, next)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().1 == 1
    }

    /// A proper 2-colouring if the graph is bipartite, `None` otherwise.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut side = vec![u8::MAX; self.n];
        for start in 0..self.n {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            let mut queue = alloc::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// All open-neighbourhood twin pairs `(u, v)`, `u < v`, ascending:
    /// distinct vertices with `N(u) = N(v)`. Any DIS must contain at least
    /// one vertex of each such pair, since no witness distinguishes them.
    pub fn open_twins(&self) -> Vec<(Vertex, Vertex)> {
        let mut pairs = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adj[u] == self.adj[v] {
                    pairs.push((u, v));
                }
            }
        }
        pairs
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// Incremental constructor used by the gadget and reduction builders, where
/// malformed input is a programming error rather than bad data.
#[derive(Default)]
pub struct GraphBuilder {
    labels: Vec<Role>,
    edges: BTreeSet<(Vertex, Vertex)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a vertex with the given role and returns its id.
    pub fn add_vertex(&mut self, role: Role) -> Vertex {
        self.labels.push(role);
        self.labels.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Adds an edge between existing vertices. Panics on self-loops,
    /// unknown endpoints, or duplicates — all construction bugs.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) {
        assert!(u != v, "self-loop at {u}");
        let n = self.labels.len();
        assert!(u < n && v < n, "edge {u}-{v} out of range for n = {n}");
        assert!(
            self.edges.insert((u.min(v), u.max(v))),
            "duplicate edge {u}-{v}"
        );
    }

    pub fn build(self) -> Graph {
        let n = self.labels.len();
        Graph::with_labels(n, self.edges, self.labels)
            .expect("builder enforces graph invariants")
    }
}

/// Dense all-pairs distance table; see the module docs for the conventions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Distance between `u` and `v` ([`UNREACHABLE`] across components).
    pub fn get(&self, u: Vertex, v: Vertex) -> u32 {
        self.d[u * self.n + v]
    }

    pub fn reachable(&self, u: Vertex, v: Vertex) -> bool {
        self.get(u, v) != UNREACHABLE
    }

    /// Closed ball `N_r[v]` as a sorted vertex list: all vertices within
    /// distance `r` of `v`. With `r = ∞` this is `v`'s component.
    pub fn ball(&self, v: Vertex, r: Radius) -> Vec<Vertex> {
        (0..self.n).filter(|&w| r.contains(self.get(v, w))).collect()
    }
}
