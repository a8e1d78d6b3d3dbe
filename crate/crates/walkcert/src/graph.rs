//! Simple undirected graphs: construction, text formats, and exhaustive
//! small-graph corpora.
//!
//! Graphs are immutable after construction. Nodes are `0..n`; edges are
//! unordered pairs with no self-loops. The graph6 codec follows the
//! standard format (6 bits per byte, +63 offset, upper-triangle column
//! order) for up to 62 nodes.

use crate::{Error, Result};
use std::collections::BTreeSet;
use std::fmt;

/// An immutable simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Build a graph on `n` nodes from unordered pairs. Pairs are
    /// normalized; duplicates collapse silently. Self-loops and endpoints
    /// `>= n` are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("node count must be positive".into()));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at node {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Graph { n, edges, adj })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as normalized pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// `Some(d)` if every node has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    /// Disjoint union; nodes of `other` are relabeled by offset `self.n`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + self.n, v + self.n)));
        Graph::new(n, edges).expect("union of valid graphs is valid")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, {:?})", self.n, self.edges.len(), self.edges)
    }
}

/// The named graph families used for corpus scans and counterexamples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFamily {
    Complete,
    Path,
    Cycle,
    Star,
    Edgeless,
}

impl GraphFamily {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "complete" => Ok(GraphFamily::Complete),
            "path" => Ok(GraphFamily::Path),
            "cycle" => Ok(GraphFamily::Cycle),
            "star" => Ok(GraphFamily::Star),
            "edgeless" => Ok(GraphFamily::Edgeless),
            other => Err(Error::InvalidArgument(format!("unknown graph family {other:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GraphFamily::Complete => "complete",
            GraphFamily::Path => "path",
            GraphFamily::Cycle => "cycle",
            GraphFamily::Star => "star",
            GraphFamily::Edgeless => "edgeless",
        }
    }
}

/// Standard construction for a named family. `size` is the node count,
/// except for `star` where it is the number of leaves (hub degree).
/// Cycles need `size >= 3`.
pub fn make_named_graph(family: GraphFamily, size: usize) -> Result<Graph> {
    if size == 0 {
        return Err(Error::InvalidArgument("family size must be >= 1".into()));
    }
    match family {
        GraphFamily::Complete => {
            Graph::new(size, (0..size).flat_map(|u| (u + 1..size).map(move |v| (u, v))))
        }
        GraphFamily::Path => Graph::new(size, (1..size).map(|v| (v - 1, v))),
        GraphFamily::Cycle => {
            if size < 3 {
                return Err(Error::InvalidArgument(format!(
                    "cycle needs at least 3 nodes, got {size}"
                )));
            }
            Graph::new(size, (0..size).map(|v| (v, (v + 1) % size)))
        }
        GraphFamily::Star => Graph::new(size + 1, (1..=size).map(|v| (0, v))),
        GraphFamily::Edgeless => Graph::new(size, std::iter::empty()),
    }
}

/// Input text format for [`load_graph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    EdgeList,
}

/// Parse a graph from text. Edge-list parsing may produce warnings
/// (currently only for deduplicated repeated edges).
pub fn load_graph(text: &str, format: GraphFormat) -> Result<(Graph, Vec<String>)> {
    match format {
        GraphFormat::Graph6 => Ok((Graph::from_graph6(text)?, Vec::new())),
        GraphFormat::EdgeList => Graph::from_edge_list(text),
    }
}

impl Graph {
    /// Parse the edge-list format: a header line `n <count>` followed by
    /// one `u v` pair per line (0-indexed, whitespace separated). The
    /// explicit header makes isolated nodes representable. Repeated edges
    /// are deduplicated with a warning.
    pub fn from_edge_list(text: &str) -> Result<(Graph, Vec<String>)> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::GraphParse("empty edge-list input".into()))?;
        let mut fields = header.split_whitespace();
        let n = match (fields.next(), fields.next(), fields.next()) {
            (Some("n"), Some(count), None) => count
                .parse::<usize>()
                .map_err(|_| Error::GraphParse(format!("malformed header {header:?}")))?,
            _ => {
                return Err(Error::GraphParse(format!(
                    "malformed header {header:?}: expected \"n <count>\""
                )))
            }
        };
        if n == 0 {
            return Err(Error::GraphParse("node count must be positive".into()));
        }
        let mut warnings = Vec::new();
        let mut seen = BTreeSet::new();
        let mut edges = Vec::new();
        for line in lines {
            let mut fields = line.split_whitespace();
            let (u, v) = match (fields.next(), fields.next(), fields.next()) {
                (Some(u), Some(v), None) => {
                    let u: usize = u
                        .parse()
                        .map_err(|_| Error::GraphParse(format!("bad edge line {line:?}")))?;
                    let v: usize = v
                        .parse()
                        .map_err(|_| Error::GraphParse(format!("bad edge line {line:?}")))?;
                    (u, v)
                }
                _ => return Err(Error::GraphParse(format!("bad edge line {line:?}"))),
            };
            if u == v {
                return Err(Error::GraphParse(format!("self-loop at node {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::GraphParse(format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                warnings.push(format!("duplicate edge ({u},{v}) ignored"));
            } else {
                edges.push((u, v));
            }
        }
        Ok((Graph::new(n, edges)?, warnings))
    }

    /// Render in the edge-list format.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Decode a graph6 string (single-byte size field, n <= 62). An
    /// optional `>>graph6<<` prefix is accepted. Padding bits must be zero.
    pub fn from_graph6(text: &str) -> Result<Graph> {
        let text = text.trim().strip_prefix(">>graph6<<").unwrap_or(text.trim());
        let bytes = text.as_bytes();
        if bytes.is_empty() {
            return Err(Error::GraphParse("empty graph6 input".into()));
        }
        for &b in bytes {
            if !(63..=126).contains(&b) {
                return Err(Error::GraphParse(format!(
                    "graph6 byte {b} outside the printable range 63..=126"
                )));
            }
        }
        if bytes[0] == 126 {
            return Err(Error::GraphParse(
                "multi-byte graph6 size fields (n > 62) are not supported".into(),
            ));
        }
        let n = (bytes[0] - 63) as usize;
        if n == 0 {
            return Err(Error::GraphParse("graph6 with zero nodes".into()));
        }
        let nbits = n * (n - 1) / 2;
        let nbytes = nbits.div_ceil(6);
        if bytes.len() != 1 + nbytes {
            return Err(Error::GraphParse(format!(
                "graph6 for n={n} needs {} data bytes, got {}",
                nbytes,
                bytes.len() - 1
            )));
        }
        let mut edges = Vec::new();
        let mut t = 0usize;
        'outer: for j in 1..n {
            for i in 0..j {
                let byte = bytes[1 + t / 6] - 63;
                let bit = (byte >> (5 - t % 6)) & 1;
                if bit == 1 {
                    edges.push((i, j));
                }
                t += 1;
                if t == nbits {
                    break 'outer;
                }
            }
        }
        // padding bits after the triangle must be zero
        for pad in nbits..nbytes * 6 {
            let byte = bytes[1 + pad / 6] - 63;
            if (byte >> (5 - pad % 6)) & 1 != 0 {
                return Err(Error::GraphParse("nonzero padding bits in graph6".into()));
            }
        }
        Graph::new(n, edges)
    }

    /// Encode as graph6 (n <= 62).
    pub fn to_graph6(&self) -> Result<String> {
        if self.n > 62 {
            return Err(Error::Graph6TooLarge(self.n));
        }
        let n = self.n;
        let nbits = n * (n - 1) / 2;
        let mut bytes = vec![63 + n as u8];
        bytes.resize(1 + nbits.div_ceil(6), 63);
        let mut t = 0usize;
        for j in 1..n {
            for i in 0..j {
                if self.has_edge(i, j) {
                    bytes[1 + t / 6] += 1 << (5 - t % 6);
                }
                t += 1;
            }
        }
        Ok(String::from_utf8(bytes).expect("graph6 bytes are ascii"))
    }
}

/// Default cap for exhaustive enumeration (2^21 graphs at n = 7).
pub const DEFAULT_MAX_ENUM_N: usize = 7;

/// Number of node pairs, i.e. bits in an edge mask.
pub fn edge_slots(n: usize) -> u32 {
    (n * (n - 1) / 2) as u32
}

/// `2^(n(n-1)/2)`, the number of labeled simple graphs on `n` nodes.
pub fn labeled_graph_count(n: usize) -> u64 {
    1u64 << edge_slots(n)
}

/// Graph for one edge mask: bit `t` of `mask` is edge `t` in the
/// upper-triangle column order used by graph6.
pub fn graph_from_edge_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut t = 0;
    for j in 1..n {
        for i in 0..j {
            if (mask >> t) & 1 == 1 {
                edges.push((i, j));
            }
            t += 1;
        }
    }
    Graph::new(n, edges).expect("mask edges are in range")
}

/// Iterator over a contiguous edge-mask range of labeled graphs on `n`
/// nodes. Partitions of the full range are independent, so corpus searches
/// can fan out across threads.
pub struct LabeledGraphs {
    n: usize,
    next: u64,
    end: u64,
}

impl LabeledGraphs {
    pub fn remaining(&self) -> u64 {
        self.end - self.next
    }
}

impl Iterator for LabeledGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next >= self.end {
            return None;
        }
        let g = graph_from_edge_mask(self.n, self.next);
        self.next += 1;
        Some(g)
    }
}

/// All `2^(n(n-1)/2)` labeled simple graphs on `n` nodes, each exactly
/// once, in ascending edge-mask order. Refuses `n > max_n`.
pub fn labeled_graphs(n: usize, max_n: usize) -> Result<LabeledGraphs> {
    labeled_graphs_range(n, 0, labeled_graph_count_checked(n, max_n)?, max_n)
}

/// The masks `lo..hi` of the labeled enumeration, for partitioned search.
pub fn labeled_graphs_range(n: usize, lo: u64, hi: u64, max_n: usize) -> Result<LabeledGraphs> {
    let total = labeled_graph_count_checked(n, max_n)?;
    if lo > hi || hi > total {
        return Err(Error::InvalidArgument(format!(
            "mask range {lo}..{hi} outside 0..{total}"
        )));
    }
    Ok(LabeledGraphs { n, next: lo, end: hi })
}

fn labeled_graph_count_checked(n: usize, max_n: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("enumeration needs n >= 1".into()));
    }
    if n > max_n {
        return Err(Error::EnumerationLimit { requested: n, limit: max_n });
    }
    if edge_slots(n) >= 63 {
        return Err(Error::EnumerationLimit { requested: n, limit: 11 });
    }
    Ok(labeled_graph_count(n))
}

/// Reporting convenience: drop graphs whose (sorted degree sequence, walk
/// vector up to `walk_len`) profile was already seen. This is a heuristic
/// reduction, not isomorphism-exact.
pub fn dedup_by_profile<I: Iterator<Item = Graph>>(
    iter: I,
    walk_len: usize,
) -> impl Iterator<Item = Graph> {
    let mut seen = std::collections::HashSet::new();
    iter.filter(move |g| {
        let mut degrees = g.degrees();
        degrees.sort_unstable();
        let walks = g.walk_counts(walk_len).counts().to_vec();
        seen.insert((degrees, walks))
    })
}
