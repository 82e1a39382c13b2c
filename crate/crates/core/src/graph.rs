//! Simple undirected graphs with optional positive integer edge weights.
//!
//! Vertices are `0..n`. Edges are stored once, as `(u, v)` with `u < v`, in
//! ascending lexicographic order, so two graphs with the same edge set
//! compare equal regardless of how they were built.
//!
//! Besides construction this module holds the graph6 and edge-list codecs,
//! the standard families used throughout the crate (paths, cycles, complete
//! graphs, stars, hypercubes), Cartesian products, and breadth-first
//! distances.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Largest order the short graph6 form can express.
pub const GRAPH6_MAX_ORDER: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {{{0}, {1}}} has weight 0; weights must be positive")]
    NonPositiveWeight(usize, usize),
    #[error("invalid graph6 string: {0}")]
    Graph6(String),
    #[error("invalid edge list, line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error("{0} requires an unweighted graph")]
    Weighted(&'static str),
    #[error("graph6 short form supports at most {GRAPH6_MAX_ORDER} vertices, got {0}")]
    TooLarge(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("vertex {unreachable} is unreachable from vertex {source_vertex}")]
    Disconnected {
        source_vertex: usize,
        unreachable: usize,
    },
}

pub type Result<T> = std::result::Result<T, GraphError>;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// Parallel to `edges` when present.
    weights: Option<Vec<u64>>,
    adjacency: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .field("weights", &self.weights)
            .finish()
    }
}

impl Graph {
    /// Unweighted graph from an edge list. Edge orientation does not matter.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::build(n, edges.into_iter().map(|(u, v)| (u, v, None)), false)
    }

    /// Weighted graph; every weight must be at least 1.
    pub fn with_weights(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize, u64)>,
    ) -> Result<Self> {
        Self::build(n, edges.into_iter().map(|(u, v, w)| (u, v, Some(w))), true)
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            weights: None,
            adjacency: vec![Vec::new(); n],
        }
    }

    fn build(
        n: usize,
        edges: impl Iterator<Item = (usize, usize, Option<u64>)>,
        weighted: bool,
    ) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v, w) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            let w = w.unwrap_or(1);
            if w == 0 {
                return Err(GraphError::NonPositiveWeight(a, b));
            }
            list.push((a, b, w));
        }
        list.sort_unstable();
        for pair in list.windows(2) {
            if pair[0].0 == pair[1].0 && pair[0].1 == pair[1].1 {
                return Err(GraphError::DuplicateEdge(pair[0].0, pair[0].1));
            }
        }
        let edges: Vec<(usize, usize)> = list.iter().map(|&(u, v, _)| (u, v)).collect();
        let weights = weighted.then(|| list.iter().map(|&(_, _, w)| w).collect());
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok(Graph {
            n,
            edges,
            weights,
            adjacency,
        })
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges, `m`.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    /// Edges with their weights (1 for unweighted graphs).
    pub fn weighted_edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.edges.iter().enumerate().map(move |(i, &(u, v))| {
            let w = self.weights.as_ref().map_or(1, |ws| ws[i]);
            (u, v, w)
        })
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Weight of `{u, v}`, or `None` when the pair is not an edge.
    pub fn weight(&self, u: usize, v: usize) -> Option<u64> {
        let key = if u < v { (u, v) } else { (v, u) };
        let idx = self.edges.binary_search(&key).ok()?;
        Some(self.weights.as_ref().map_or(1, |ws| ws[idx]))
    }

    /// Copy of the graph with `{u, v}` added (unit weight if weighted).
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let extra = std::iter::once((u, v, 1));
        let all = self.weighted_edges().chain(extra);
        if self.is_weighted() {
            Graph::with_weights(self.n, all)
        } else {
            Graph::new(self.n, all.map(|(a, b, _)| (a, b)))
        }
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || distances(self, 0).is_ok_and(|d| d.all_reachable())
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// graph6

/// Decodes one line of short-form graph6 (n <= 62).
///
/// A trailing newline and an optional `>>graph6<<` header are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(GraphError::Graph6("empty input".into()));
    };
    if let Some((pos, &b)) = bytes
        .iter()
        .enumerate()
        .find(|(_, &b)| !(63..=126).contains(&b))
    {
        return Err(GraphError::Graph6(format!(
            "byte {b} at position {pos} is outside the printable range 63..=126"
        )));
    }
    if first == 126 {
        return Err(GraphError::Graph6(
            "extended order prefix (n > 62) is not supported".into(),
        ));
    }
    let n = (first - 63) as usize;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let body = &bytes[1..];
    if body.len() != expected {
        return Err(GraphError::Graph6(format!(
            "order {n} needs {expected} data bytes, found {}",
            body.len()
        )));
    }

    let bit = |k: usize| -> bool { (body[k / 6] - 63) & (1 << (5 - k % 6)) != 0 };
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(k) {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    for pad in bits..expected * 6 {
        if bit(pad) {
            return Err(GraphError::Graph6("nonzero padding bits".into()));
        }
    }
    Graph::new(n, edges)
}

/// Encodes an unweighted graph on at most 62 vertices as short-form graph6.
pub fn to_graph6(g: &Graph) -> Result<String> {
    if g.is_weighted() {
        return Err(GraphError::Weighted("graph6 encoding"));
    }
    let n = g.order();
    if n > GRAPH6_MAX_ORDER {
        return Err(GraphError::TooLarge(n));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut data = vec![0u8; bits.div_ceil(6)];
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if g.has_edge(u, v) {
                data[k / 6] |= 1 << (5 - k % 6);
            }
            k += 1;
        }
    }
    let mut out = String::with_capacity(data.len() + 1);
    out.push((n as u8 + 63) as char);
    out.extend(data.into_iter().map(|b| (b + 63) as char));
    Ok(out)
}

// ---------------------------------------------------------------------------
// edge list

/// Parses the edge-list format: a header line `n m`, then `m` lines of
/// `u v` or `u v w`. Blank lines and lines starting with `#` are ignored.
/// The result is weighted iff any edge line carries a weight.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let err = |line: usize, message: String| GraphError::EdgeList { line, message };
    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing header".into()))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 2 {
        return Err(err(hline, format!("expected `n m`, got {header:?}")));
    }
    let parse_num = |line: usize, s: &str| -> Result<u64> {
        s.parse::<u64>()
            .map_err(|_| err(line, format!("not a non-negative integer: {s:?}")))
    };
    let n = parse_num(hline, head[0])? as usize;
    let m = parse_num(hline, head[1])? as usize;

    let mut edges = Vec::with_capacity(m);
    let mut weighted = false;
    for (line, body) in lines.by_ref() {
        let fields: Vec<&str> = body.split_whitespace().collect();
        let (u, v, w) = match fields.as_slice() {
            [u, v] => (parse_num(line, u)?, parse_num(line, v)?, 1),
            [u, v, w] => {
                weighted = true;
                (parse_num(line, u)?, parse_num(line, v)?, parse_num(line, w)?)
            }
            _ => return Err(err(line, format!("expected `u v [w]`, got {body:?}"))),
        };
        edges.push((u as usize, v as usize, w));
        if edges.len() > m {
            return Err(err(line, format!("more than the declared {m} edges")));
        }
    }
    if edges.len() != m {
        return Err(err(
            hline,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    if weighted {
        Graph::with_weights(n, edges)
    } else {
        Graph::new(n, edges.into_iter().map(|(u, v, _)| (u, v)))
    }
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for (u, v, w) in g.weighted_edges() {
        if g.is_weighted() {
            out.push_str(&format!("{u} {v} {w}\n"));
        } else {
            out.push_str(&format!("{u} {v}\n"));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// families

/// Path on `k` vertices.
pub fn path(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(GraphError::InvalidParameter("path needs k >= 1".into()));
    }
    Graph::new(k, (1..k).map(|v| (v - 1, v)))
}

/// Cycle on `k >= 3` vertices.
pub fn cycle(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(GraphError::InvalidParameter("cycle needs k >= 3".into()));
    }
    Graph::new(k, (0..k).map(|v| (v, (v + 1) % k)))
}

pub fn complete(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(GraphError::InvalidParameter("complete needs k >= 1".into()));
    }
    Graph::new(k, (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))))
}

/// The star `K_{1,k}`: center 0 joined to leaves `1..=k`.
pub fn star(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(GraphError::InvalidParameter("star needs k >= 1".into()));
    }
    Graph::new(k + 1, (1..=k).map(|v| (0, v)))
}

/// The `d`-cube; vertices are bit strings, adjacent when they differ in one bit.
pub fn hypercube(d: usize) -> Result<Graph> {
    if d >= usize::BITS as usize - 1 {
        return Err(GraphError::InvalidParameter(format!("hypercube dimension {d}")));
    }
    let n = 1usize << d;
    Graph::new(
        n,
        (0..n).flat_map(|u| (0..d).map(move |b| (u, u ^ (1 << b))).filter(|&(u, v)| u < v)),
    )
}

/// Cartesian product `g □ h`. Vertex `(u, v)` is flattened to `u * h.order() + v`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph> {
    if g.is_weighted() || h.is_weighted() {
        return Err(GraphError::Weighted("cartesian product"));
    }
    let nh = h.order();
    let n = g.order() * nh;
    let mut edges = Vec::with_capacity(g.order() * h.size() + nh * g.size());
    for u in 0..g.order() {
        for &(a, b) in h.edges() {
            edges.push((u * nh + a, u * nh + b));
        }
    }
    for &(a, b) in g.edges() {
        for v in 0..nh {
            edges.push((a * nh + v, b * nh + v));
        }
    }
    Graph::new(n, edges)
}

/// `k`-fold Cartesian power; `cartesian_power(g, 1) == g`.
pub fn cartesian_power(g: &Graph, k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(GraphError::InvalidParameter(
            "cartesian power needs k >= 1".into(),
        ));
    }
    if g.is_weighted() {
        return Err(GraphError::Weighted("cartesian power"));
    }
    let mut acc = g.clone();
    for _ in 1..k {
        acc = cartesian_product(&acc, g)?;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// distances

/// Hop distances from one source; `None` marks unreachable vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    pub source: usize,
    pub dist: Vec<Option<usize>>,
}

impl DistanceTable {
    pub fn all_reachable(&self) -> bool {
        self.dist.iter().all(Option::is_some)
    }

    pub fn max_finite(&self) -> usize {
        self.dist.iter().flatten().copied().max().unwrap_or(0)
    }
}

/// Breadth-first hop distances from `a`. Edge weights are ignored.
pub fn distances(g: &Graph, a: usize) -> Result<DistanceTable> {
    g.check_vertex(a)?;
    let mut dist = vec![None; g.order()];
    dist[a] = Some(0);
    let mut queue = VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices have a distance");
        for &v in g.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    Ok(DistanceTable { source: a, dist })
}

/// Largest hop distance from `a`; errors if some vertex is unreachable.
pub fn eccentricity(g: &Graph, a: usize) -> Result<usize> {
    let table = distances(g, a)?;
    if let Some(far) = table.dist.iter().position(Option::is_none) {
        return Err(GraphError::Disconnected {
            source_vertex: a,
            unreachable: far,
        });
    }
    Ok(table.max_finite())
}
