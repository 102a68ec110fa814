//! Undirected simple graphs on dense vertex ids `0..n`, with the structural
//! queries the solvers need: BFS distances, diameter, bipartition, bridges,
//! connected components.

use std::fmt;
use thiserror::Error;

/// Errors from graph construction and structural queries.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("not a valid bipartition of this graph")]
    InvalidBipartition,
}

/// Graph diameter; `Infinite` exactly when the graph is disconnected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diameter {
    Finite(usize),
    Infinite,
}

impl Diameter {
    pub fn at_most(self, bound: usize) -> bool {
        matches!(self, Diameter::Finite(d) if d <= bound)
    }
}

impl fmt::Display for Diameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diameter::Finite(d) => write!(f, "{d}"),
            Diameter::Infinite => write!(f, "inf"),
        }
    }
}

/// An undirected simple graph. Neighbor lists and the edge list are kept
/// sorted, so iteration order is deterministic everywhere.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, m={}, edges={:?})",
            self.vertex_count(),
            self.edge_count(),
            self.edges
        )
    }
}

impl Graph {
    /// Builds a graph from an edge list. Rejects self-loops, duplicate edges
    /// (in either orientation) and endpoints `>= vertex_count`.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut normalized: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= vertex_count {
                return Err(GraphError::VertexOutOfRange { vertex: u, count: vertex_count });
            }
            if v >= vertex_count {
                return Err(GraphError::VertexOutOfRange { vertex: v, count: vertex_count });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        for w in normalized.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in &normalized {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph { adjacency, edges: normalized })
    }

    /// The cycle C_n (requires n >= 3).
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::VertexOutOfRange { vertex: n, count: 3 });
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges)
    }

    /// The path on n vertices.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).expect("path edges are simple")
    }

    /// The complete graph K_n.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).expect("complete graph edges are simple")
    }

    /// The complete bipartite graph K_{p,q}, classes 0..p and p..p+q.
    pub fn complete_bipartite(p: usize, q: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..p {
            for v in p..p + q {
                edges.push((u, v));
            }
        }
        Graph::new(p + q, &edges).expect("biclique edges are simple")
    }

    /// The d-dimensional hypercube on 2^d vertices.
    pub fn hypercube(d: u32) -> Self {
        let n = 1usize << d;
        let mut edges = Vec::new();
        for u in 0..n {
            for bit in 0..d {
                let v = u ^ (1 << bit);
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, &edges).expect("hypercube edges are simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as (u, v) pairs with u < v, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// BFS distances from `source`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Result<Vec<Option<usize>>, GraphError> {
        let n = self.vertex_count();
        if source >= n {
            return Err(GraphError::VertexOutOfRange { vertex: source, count: n });
        }
        let mut dist = vec![None; n];
        dist[source] = Some(0);
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued vertices have distances");
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    /// Exact diameter by all-sources BFS. A one-vertex or empty graph has
    /// diameter 0; a disconnected graph has infinite diameter.
    pub fn diameter(&self) -> Diameter {
        let mut max = 0usize;
        for source in 0..self.vertex_count() {
            let dist = self.bfs_distances(source).expect("source in range");
            for d in &dist {
                match d {
                    Some(d) => max = max.max(*d),
                    None => return Diameter::Infinite,
                }
            }
        }
        Diameter::Finite(max)
    }

    /// 2-colors the graph if possible. Within each connected component the
    /// class of the smallest-index vertex is class 1.
    pub fn bipartition(&self) -> Option<Bipartition> {
        let n = self.vertex_count();
        let mut color: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(true);
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].expect("queued vertices are colored");
                for &w in &self.adjacency[u] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let in_class1: Vec<bool> = color.into_iter().map(|c| c.expect("all colored")).collect();
        Some(Bipartition::from_membership(in_class1))
    }

    /// Some bridge of the graph, or `None` if 2-edge-connected (per
    /// component). Among all bridges the one with the lexicographically
    /// smallest (min, max) endpoint pair is returned.
    pub fn find_bridge(&self) -> Option<(usize, usize)> {
        let n = self.vertex_count();
        let mut ord = vec![usize::MAX; n];
        let mut low = vec![usize::MAX; n];
        let mut next_ord = 0usize;
        let mut best: Option<(usize, usize)> = None;
        // Iterative DFS; parent_edge tracks the tree edge we arrived by so a
        // single parallel-free parent edge is skipped exactly once.
        let mut stack: Vec<(usize, Option<usize>, usize)> = Vec::new();
        for root in 0..n {
            if ord[root] != usize::MAX {
                continue;
            }
            stack.push((root, None, 0));
            ord[root] = next_ord;
            low[root] = next_ord;
            next_ord += 1;
            while let Some(&mut (u, parent, ref mut idx)) = stack.last_mut() {
                if *idx < self.adjacency[u].len() {
                    let w = self.adjacency[u][*idx];
                    *idx += 1;
                    if Some(w) == parent {
                        // skip the tree edge back to the parent
                        continue;
                    }
                    if ord[w] == usize::MAX {
                        ord[w] = next_ord;
                        low[w] = next_ord;
                        next_ord += 1;
                        stack.push((w, Some(u), 0));
                    } else {
                        low[u] = low[u].min(ord[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[u]);
                        if low[u] > ord[p] {
                            let e = (p.min(u), p.max(u));
                            if best.is_none() || e < best.expect("checked") {
                                best = Some(e);
                            }
                        }
                    }
                }
            }
        }
        best
    }

    /// Connected components, each sorted ascending, ordered by smallest
    /// contained vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut component = vec![start];
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        component.push(w);
                        queue.push_back(w);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// For connected bipartite graphs: diameter <= 3 holds iff every two
    /// vertices of the same class share a neighbor. Checks that criterion
    /// directly, without computing the diameter.
    pub fn is_bipartite_diam_le3(&self, bp: &Bipartition) -> Result<bool, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        bp.validate(self)?;
        for class in [bp.class1(), bp.class2()] {
            for (i, &u) in class.iter().enumerate() {
                for &v in &class[i + 1..] {
                    if !self.share_neighbor(u, v) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    fn share_neighbor(&self, u: usize, v: usize) -> bool {
        let (mut a, mut b) = (self.adjacency[u].iter(), self.adjacency[v].iter());
        let (mut x, mut y) = (a.next(), b.next());
        while let (Some(&p), Some(&q)) = (x, y) {
            match p.cmp(&q) {
                std::cmp::Ordering::Less => x = a.next(),
                std::cmp::Ordering::Greater => y = b.next(),
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }
}

/// A proper 2-coloring of a graph, as the two vertex classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    in_class1: Vec<bool>,
    class1: Vec<usize>,
    class2: Vec<usize>,
}

impl Bipartition {
    fn from_membership(in_class1: Vec<bool>) -> Self {
        let class1 = (0..in_class1.len()).filter(|&v| in_class1[v]).collect();
        let class2 = (0..in_class1.len()).filter(|&v| !in_class1[v]).collect();
        Bipartition { in_class1, class1, class2 }
    }

    /// Builds a bipartition with the given class-1 set, checking that every
    /// edge of `g` crosses the classes.
    pub fn from_class1(g: &Graph, class1: &[usize]) -> Result<Self, GraphError> {
        let n = g.vertex_count();
        let mut in_class1 = vec![false; n];
        for &v in class1 {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, count: n });
            }
            in_class1[v] = true;
        }
        let bp = Bipartition::from_membership(in_class1);
        bp.validate(g)?;
        Ok(bp)
    }

    pub fn class1(&self) -> &[usize] {
        &self.class1
    }

    pub fn class2(&self) -> &[usize] {
        &self.class2
    }

    pub fn in_class1(&self, v: usize) -> bool {
        self.in_class1[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.in_class1.len()
    }

    /// Checks that this is a proper 2-coloring of `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), GraphError> {
        if self.in_class1.len() != g.vertex_count() {
            return Err(GraphError::InvalidBipartition);
        }
        for &(u, v) in g.edges() {
            if self.in_class1[u] == self.in_class1[v] {
                return Err(GraphError::InvalidBipartition);
            }
        }
        Ok(())
    }
}
