//! Undirected simple graphs with dense integer node ids and sorted adjacency.
//!
//! Every other module consumes graphs through this type: neighbors, triangle
//! counts, BFS distances and the spanning forest used to protect connectivity
//! during edge removal.

use std::collections::HashMap;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use thiserror::Error;

/// Dense node index, bijective with the original string labels.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NodeId(u32);

impl NodeId {
    pub fn new(index: usize) -> Self {
        NodeId(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Error, Debug)]
pub enum GraphError {
    #[error("line {line}: expected two whitespace-separated labels, got {tokens} token(s)")]
    MalformedLine { line: usize, tokens: usize },
    #[error("edge list contains no edges")]
    Empty,
    #[error("node id {0} out of range (graph has {1} nodes)")]
    NodeOutOfRange(usize, usize),
    #[error("identical endpoints: {0}")]
    SelfPair(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Immutable undirected simple graph.
///
/// Invariants: no self-loops, no duplicate edges, adjacency lists strictly
/// ascending and symmetric. Node ids are assigned densely in first-seen order
/// of their labels.
#[derive(Clone, Debug)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    edge_count: usize,
    labels: Vec<String>,
    label_index: HashMap<String, NodeId>,
}

/// Summary statistics of a graph.
#[derive(Clone, Debug, serde::Serialize)]
pub struct TopologyReport {
    pub node_count: usize,
    pub edge_count: usize,
    pub avg_degree: f64,
    pub avg_clustering: f64,
    pub density: f64,
    /// Longest shortest path; `None` unless requested or graph disconnected.
    pub diameter: Option<u32>,
}

impl Graph {
    /// Builds a graph from `(label, label)` pairs. Self-loops are dropped,
    /// duplicate and reversed-duplicate edges merged, labels indexed in
    /// first-seen order.
    pub fn from_labeled_edges<I, S>(pairs: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut labels: Vec<String> = Vec::new();
        let mut label_index: HashMap<String, NodeId> = HashMap::new();
        let mut intern = |s: &str, labels: &mut Vec<String>| -> NodeId {
            if let Some(&id) = label_index.get(s) {
                return id;
            }
            let id = NodeId::new(labels.len());
            labels.push(s.to_string());
            label_index.insert(s.to_string(), id);
            id
        };

        let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
        for (a, b) in pairs {
            let (a, b) = (a.as_ref(), b.as_ref());
            let u = intern(a, &mut labels);
            let v = intern(b, &mut labels);
            if u == v {
                continue; // self-loop
            }
            edges.push(if u < v { (u, v) } else { (v, u) });
        }
        edges.sort_unstable();
        edges.dedup();
        if edges.is_empty() {
            return Err(GraphError::Empty);
        }

        let mut adjacency = vec![Vec::new(); labels.len()];
        for &(u, v) in &edges {
            adjacency[u.index()].push(v);
            adjacency[v.index()].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        Ok(Graph {
            adjacency,
            edge_count: edges.len(),
            labels,
            label_index,
        })
    }

    /// Parses the edge-list text format: one `<label> <label>` pair per line,
    /// `#` comments and blank lines ignored.
    pub fn parse_edge_list<R: Read>(reader: R) -> Result<Graph, GraphError> {
        let mut pairs: Vec<(String, String)> = Vec::new();
        for (lineno, line) in BufReader::new(reader).lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(GraphError::MalformedLine {
                    line: lineno + 1,
                    tokens: tokens.len(),
                });
            }
            pairs.push((tokens[0].to_string(), tokens[1].to_string()));
        }
        Graph::from_labeled_edges(pairs)
    }

    pub fn read_edge_list<P: AsRef<Path>>(path: P) -> Result<Graph, GraphError> {
        Graph::parse_edge_list(File::open(path)?)
    }

    /// Writes one edge per line as `min_label max_label`, lines sorted
    /// lexicographically.
    pub fn write_edge_list<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let mut lines: Vec<(&str, &str)> = self
            .edges()
            .map(|(u, v)| {
                let (a, b) = (self.label(u), self.label(v));
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        lines.sort_unstable();
        for (a, b) in lines {
            writeln!(w, "{} {}", a, b)?;
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.adjacency.len()).map(NodeId::new)
    }

    /// Edges as canonical `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            let u = NodeId::new(u);
            list.iter().filter(move |&&v| u < v).map(move |&v| (u, v))
        })
    }

    fn check(&self, id: NodeId) -> Result<(), GraphError> {
        if id.index() >= self.adjacency.len() {
            return Err(GraphError::NodeOutOfRange(id.index(), self.adjacency.len()));
        }
        Ok(())
    }

    pub fn neighbors(&self, id: NodeId) -> &[NodeId] {
        &self.adjacency[id.index()]
    }

    pub fn degree(&self, id: NodeId) -> usize {
        self.adjacency[id.index()].len()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency[u.index()].binary_search(&v).is_ok()
    }

    pub fn label(&self, id: NodeId) -> &str {
        &self.labels[id.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        self.label_index.get(label).copied()
    }

    /// `|Γ(u) ∩ Γ(v)|` by merging the two sorted adjacency lists.
    pub fn common_neighbor_count(&self, u: NodeId, v: NodeId) -> Result<usize, GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::SelfPair(self.label(u).to_string()));
        }
        Ok(sorted_intersection_count(self.neighbors(u), self.neighbors(v)))
    }

    pub fn common_neighbors(&self, u: NodeId, v: NodeId) -> Result<Vec<NodeId>, GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::SelfPair(self.label(u).to_string()));
        }
        let (mut i, mut j) = (0, 0);
        let (a, b) = (self.neighbors(u), self.neighbors(v));
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(out)
    }

    /// Number of triangles passing through `z`, i.e. edges among its neighbors.
    pub fn triangles_through(&self, z: NodeId) -> Result<usize, GraphError> {
        self.check(z)?;
        let nbrs = self.neighbors(z);
        let mut count = 0;
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if self.has_edge(a, b) {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// Local clustering coefficient `t_z / (k_z(k_z-1)/2)`; zero when `k_z < 2`.
    pub fn local_clustering(&self, z: NodeId) -> Result<f64, GraphError> {
        self.check(z)?;
        let k = self.degree(z);
        if k < 2 {
            return Ok(0.0);
        }
        let triangles = self.triangles_through(z)? as f64;
        Ok(triangles / (k as f64 * (k as f64 - 1.0) / 2.0))
    }

    /// Unweighted shortest-path lengths from `source`; `None` marks
    /// unreachable nodes.
    pub fn bfs_distances(&self, source: NodeId) -> Result<Vec<Option<u32>>, GraphError> {
        self.check(source)?;
        let mut dist = vec![None; self.node_count()];
        dist[source.index()] = Some(0);
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u.index()].unwrap();
            for &v in self.neighbors(u) {
                if dist[v.index()].is_none() {
                    dist[v.index()] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        Ok(dist)
    }

    /// One spanning tree per connected component, built by union-find over
    /// edges in ascending `(min, max)` order. Output has
    /// `node_count - component_count` edges.
    pub fn spanning_forest(&self) -> Vec<(NodeId, NodeId)> {
        let mut uf = UnionFind::new(self.node_count());
        let mut forest = Vec::new();
        for (u, v) in self.edges() {
            if uf.union(u.index(), v.index()) {
                forest.push((u, v));
            }
        }
        forest
    }

    /// Component label per node plus the number of components.
    pub fn connected_components(&self) -> (usize, Vec<usize>) {
        let mut uf = UnionFind::new(self.node_count());
        for (u, v) in self.edges() {
            uf.union(u.index(), v.index());
        }
        let mut remap: HashMap<usize, usize> = HashMap::new();
        let mut labels = Vec::with_capacity(self.node_count());
        for i in 0..self.node_count() {
            let root = uf.find(i);
            let next = remap.len();
            labels.push(*remap.entry(root).or_insert(next));
        }
        (remap.len(), labels)
    }

    /// Copy of the graph with the given canonical edges removed. The label
    /// table and node ids are preserved, so nodes may become isolated.
    pub fn without_edges(&self, removed: &[(NodeId, NodeId)]) -> Graph {
        use std::collections::HashSet;
        let removed: HashSet<(NodeId, NodeId)> = removed
            .iter()
            .map(|&(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        let mut adjacency = vec![Vec::new(); self.node_count()];
        let mut edge_count = 0;
        for (u, v) in self.edges() {
            if removed.contains(&(u, v)) {
                continue;
            }
            adjacency[u.index()].push(v);
            adjacency[v.index()].push(u);
            edge_count += 1;
        }
        // adjacency stays sorted: edges() yields v ascending per u only for
        // u < v, so sort defensively
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph {
            adjacency,
            edge_count,
            labels: self.labels.clone(),
            label_index: self.label_index.clone(),
        }
    }

    /// Exact averages; the diameter (all-pairs BFS, O(V·E)) only when
    /// `compute_diameter` is set.
    pub fn topology_report(&self, compute_diameter: bool) -> TopologyReport {
        let n = self.node_count();
        let m = self.edge_count;
        let avg_clustering = self
            .nodes()
            .map(|z| self.local_clustering(z).unwrap())
            .sum::<f64>()
            / n as f64;
        let diameter = if compute_diameter {
            let mut max = 0u32;
            let mut disconnected = false;
            for source in self.nodes() {
                for d in self.bfs_distances(source).unwrap() {
                    match d {
                        Some(d) => max = max.max(d),
                        None => disconnected = true,
                    }
                }
            }
            if disconnected {
                None
            } else {
                Some(max)
            }
        } else {
            None
        };
        TopologyReport {
            node_count: n,
            edge_count: m,
            avg_degree: 2.0 * m as f64 / n as f64,
            avg_clustering,
            density: 2.0 * m as f64 / (n as f64 * (n as f64 - 1.0)),
            diameter,
        }
    }
}

fn sorted_intersection_count(a: &[NodeId], b: &[NodeId]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Union-find with path halving and union by size.
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            components: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if the two sets were disjoint.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        let (big, small) = if self.size[rx] >= self.size[ry] {
            (rx, ry)
        } else {
            (ry, rx)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        self.components -= 1;
        true
    }

    pub fn connected(&mut self, x: usize, y: usize) -> bool {
        self.find(x) == self.find(y)
    }

    pub fn component_count(&self) -> usize {
        self.components
    }
}

/// Krackhardt kite: 10 nodes, 18 edges. Used throughout the test suites and
/// by the correlation study.
pub fn krackhardt_kite() -> Graph {
    const EDGES: [(&str, &str); 18] = [
        ("A", "B"),
        ("A", "C"),
        ("A", "D"),
        ("A", "F"),
        ("B", "D"),
        ("B", "E"),
        ("B", "G"),
        ("C", "D"),
        ("C", "F"),
        ("D", "E"),
        ("D", "F"),
        ("D", "G"),
        ("E", "G"),
        ("F", "G"),
        ("F", "H"),
        ("G", "H"),
        ("H", "I"),
        ("I", "J"),
    ];
    Graph::from_labeled_edges(EDGES).expect("kite edge list is valid")
}
