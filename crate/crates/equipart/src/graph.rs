//! Graph representation, subset counting primitives and amply-regular detection.

use crate::bitset::BitSet;
use crate::Rat;
use thiserror::Error;

/// Default cap on the vertex count for dense bit-set rows.
pub const DEFAULT_MAX_N: usize = 4096;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("graph has {n} vertices, limit is {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("graph is not regular")]
    NotRegular,
    #[error("no pair of vertices at distance 2")]
    NoDistanceTwoPair,
    #[error("not amply regular: {0}")]
    NotAmplyRegular(String),
    #[error("vertex set is empty")]
    EmptySet,
    #[error("unknown graph family {0:?}")]
    UnknownFamily(String),
    #[error("invalid parameters for family {family}: {reason}")]
    InvalidFamilyParams { family: String, reason: String },
}

/// Undirected simple graph with adjacency rows stored as bit sets.
///
/// Immutable after construction; every operation below is a pure function.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<BitSet>,
}

/// A subset of the vertices of a graph, with its cached cardinality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct VertexSet {
    members: BitSet,
    size: usize,
}

impl VertexSet {
    pub fn from_bitset(members: BitSet) -> Self {
        let size = members.len();
        VertexSet { members, size }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, iter: I) -> Self {
        Self::from_bitset(BitSet::from_indices(n, iter))
    }

    pub fn full(n: usize) -> Self {
        Self::from_indices(n, 0..n)
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(v)
    }

    pub fn complement(&self) -> VertexSet {
        Self::from_bitset(self.members.complement())
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }
}

/// Exact parameters of an amply regular graph: the quadratic relating the
/// distance-2 adjacency matrix to the adjacency matrix, plus the
/// common-neighbor counts it is built from.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AmplyParams {
    pub r: usize,
    pub lambda_g: usize,
    pub mu: usize,
    pub p2: Rat,
    pub p1: Rat,
    pub p0: Rat,
}

impl AmplyParams {
    /// Evaluates p(x) = p2·x² + p1·x + p0 at a rational point.
    pub fn eval(&self, x: Rat) -> Rat {
        self.p2 * x * x + self.p1 * x + self.p0
    }
}

impl Graph {
    /// Builds a graph from an edge list; duplicate edges collapse.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        Self::build_with_limit(n, edges, DEFAULT_MAX_N)
    }

    pub fn build_with_limit(
        n: usize,
        edges: &[(usize, usize)],
        limit: usize,
    ) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        if n > limit {
            return Err(GraphError::TooLarge { n, limit });
        }
        let mut adj = vec![BitSet::new(n); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph { n, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Returns the common degree iff every vertex has the same degree.
    pub fn is_regular(&self) -> Option<usize> {
        let r = self.degree(0);
        if (1..self.n).all(|v| self.degree(v) == r) {
            Some(r)
        } else {
            None
        }
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = BitSet::new(self.n);
        let mut stack = vec![0];
        seen.insert(0);
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for u in self.adj[v].iter() {
                if !seen.contains(u) {
                    seen.insert(u);
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    /// BFS distances from a source vertex; `usize::MAX` marks unreachable.
    pub fn bfs_distances(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[src] = 0;
        let mut queue = std::collections::VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            for u in self.adj[v].iter() {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Graph whose edges join exactly the pairs at distance 2 in `self`.
    pub fn distance2_graph(&self) -> Graph {
        let mut adj = vec![BitSet::new(self.n); self.n];
        for v in 0..self.n {
            let dist = self.bfs_distances(v);
            for (u, &d) in dist.iter().enumerate() {
                if d == 2 {
                    adj[v].insert(u);
                }
            }
        }
        Graph { n: self.n, adj }
    }

    /// Checks the constant common-neighbor counts and returns the exact
    /// quadratic coefficients with M₂ = p₂M² + p₁M + p₀I.
    pub fn detect_amply_regular(&self) -> Result<AmplyParams, GraphError> {
        let r = self.is_regular().ok_or(GraphError::NotRegular)?;
        let d2 = self.distance2_graph();
        let mut lambda_g: Option<usize> = None;
        let mut mu: Option<usize> = None;
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                let common = self.adj[u].intersection_len(&self.adj[v]);
                if self.has_edge(u, v) {
                    match lambda_g {
                        None => lambda_g = Some(common),
                        Some(l) if l != common => {
                            return Err(GraphError::NotAmplyRegular(format!(
                                "adjacent pair ({u},{v}) has {common} common neighbors, expected {l}"
                            )))
                        }
                        _ => {}
                    }
                } else if d2.has_edge(u, v) {
                    match mu {
                        None => mu = Some(common),
                        Some(m) if m != common => {
                            return Err(GraphError::NotAmplyRegular(format!(
                                "distance-2 pair ({u},{v}) has {common} common neighbors, expected {m}"
                            )))
                        }
                        _ => {}
                    }
                }
            }
        }
        let mu = mu.ok_or(GraphError::NoDistanceTwoPair)?;
        if mu == 0 {
            return Err(GraphError::NotAmplyRegular("mu = 0".into()));
        }
        // Edgeless rows would leave lambda_g undefined, but a regular graph
        // with a distance-2 pair has edges, so r >= 1 here.
        let lambda_g = lambda_g.unwrap_or(0);
        let m = mu as i64;
        Ok(AmplyParams {
            r,
            lambda_g,
            mu,
            p2: Rat::new(1, m),
            p1: Rat::new(-(lambda_g as i64), m),
            p0: Rat::new(-(r as i64), m),
        })
    }

    /// e(A,B) = (1_A, M 1_B): ordered adjacent incidences between A and B.
    /// Edges with both endpoints in A ∩ B are counted twice.
    pub fn edge_count_between(&self, a: &VertexSet, b: &VertexSet) -> usize {
        a.iter().map(|u| self.adj[u].intersection_len(b.members())).sum()
    }

    /// σ(S) = e(S,S)/|S|: exact average internal degree.
    pub fn sigma(&self, s: &VertexSet) -> Result<Rat, GraphError> {
        if s.is_empty() {
            return Err(GraphError::EmptySet);
        }
        Ok(Rat::new(
            self.edge_count_between(s, s) as i64,
            s.size() as i64,
        ))
    }

    /// σ₂(S): the same average on the distance-2 graph.
    pub fn sigma2(&self, s: &VertexSet) -> Result<Rat, GraphError> {
        self.distance2_graph().sigma(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate_family, Family};

    #[test]
    fn build_dedups_and_symmetrizes() {
        let g = Graph::build(4, &[(0, 1), (0, 1), (1, 0)]).unwrap();
        assert_eq!(g.degree(0), 1);
        assert_eq!(g.degree(1), 1);
        assert!(g.has_edge(1, 0));
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn build_rejects_bad_edges() {
        assert_eq!(
            Graph::build(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(Graph::build(2, &[(1, 1)]), Err(GraphError::LoopEdge(1)));
    }

    #[test]
    fn triangle_and_edgeless() {
        let k3 = Graph::build(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3.is_regular(), Some(2));
        let empty = Graph::build(2, &[]).unwrap();
        assert_eq!(empty.edge_count(), 0);
        assert_eq!(empty.is_regular(), Some(0));
    }

    #[test]
    fn regularity_examples() {
        let petersen = generate_family(Family::Petersen, &[]).unwrap();
        assert_eq!(petersen.is_regular(), Some(3));
        let star = generate_family(Family::CompleteBipartite, &[1, 3]).unwrap();
        assert_eq!(star.is_regular(), None);
        let q4 = generate_family(Family::Hypercube, &[4]).unwrap();
        assert_eq!(q4.is_regular(), Some(4));
    }

    #[test]
    fn distance2_petersen_is_complement() {
        let petersen = generate_family(Family::Petersen, &[]).unwrap();
        let d2 = petersen.distance2_graph();
        assert_eq!(d2.is_regular(), Some(6));
        for u in 0..10 {
            for v in 0..10 {
                if u != v {
                    assert_eq!(d2.has_edge(u, v), !petersen.has_edge(u, v));
                }
            }
        }
    }

    #[test]
    fn distance2_edge_cases() {
        let k4 = generate_family(Family::Complete, &[4]).unwrap();
        assert_eq!(k4.distance2_graph().edge_count(), 0);
        let c6 = generate_family(Family::Cycle, &[6]).unwrap();
        let d2 = c6.distance2_graph();
        // two disjoint triangles on the parity classes
        assert_eq!(d2.edge_count(), 6);
        assert!(d2.has_edge(0, 2) && d2.has_edge(2, 4) && d2.has_edge(4, 0));
        assert!(d2.has_edge(1, 3) && !d2.has_edge(0, 1));
    }

    #[test]
    fn amply_regular_petersen() {
        let g = generate_family(Family::Petersen, &[]).unwrap();
        let p = g.detect_amply_regular().unwrap();
        assert_eq!((p.r, p.lambda_g, p.mu), (3, 0, 1));
        assert_eq!((p.p2, p.p1, p.p0), (Rat::from(1), Rat::from(0), Rat::from(-3)));
    }

    #[test]
    fn amply_regular_q3_and_hamming() {
        let q3 = generate_family(Family::Hypercube, &[3]).unwrap();
        let p = q3.detect_amply_regular().unwrap();
        assert_eq!((p.r, p.lambda_g, p.mu), (3, 0, 2));
        assert_eq!((p.p2, p.p1, p.p0), (Rat::new(1, 2), Rat::from(0), Rat::new(-3, 2)));

        let h23 = generate_family(Family::Hamming, &[2, 3]).unwrap();
        let p = h23.detect_amply_regular().unwrap();
        assert_eq!((p.r, p.lambda_g, p.mu), (4, 1, 2));
        assert_eq!((p.p2, p.p1, p.p0), (Rat::new(1, 2), Rat::new(-1, 2), Rat::from(-2)));
    }

    #[test]
    fn amply_regular_rejections() {
        let k4 = generate_family(Family::Complete, &[4]).unwrap();
        assert_eq!(k4.detect_amply_regular(), Err(GraphError::NoDistanceTwoPair));
        let star = generate_family(Family::CompleteBipartite, &[1, 3]).unwrap();
        assert_eq!(star.detect_amply_regular(), Err(GraphError::NotRegular));
        // path P4: distance-2 common-neighbor counts are constant but it is
        // not regular; C5 + chord breaks lambda constancy
        let g = Graph::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        assert!(g.detect_amply_regular().is_err());
    }

    #[test]
    fn edge_counting_convention() {
        let k33 = generate_family(Family::CompleteBipartite, &[3, 3]).unwrap();
        let a = VertexSet::from_indices(6, 0..3);
        let b = VertexSet::from_indices(6, 3..6);
        assert_eq!(k33.edge_count_between(&a, &b), 9);

        let k3 = generate_family(Family::Complete, &[3]).unwrap();
        let all = VertexSet::full(3);
        assert_eq!(k3.edge_count_between(&all, &all), 6);

        let petersen = generate_family(Family::Petersen, &[]).unwrap();
        let ind = VertexSet::from_indices(10, 0..4);
        assert_eq!(petersen.edge_count_between(&ind, &ind), 0);
    }

    #[test]
    fn sigma_examples() {
        let petersen = generate_family(Family::Petersen, &[]).unwrap();
        let ind = VertexSet::from_indices(10, 0..4);
        assert_eq!(petersen.sigma(&ind).unwrap(), Rat::from(0));
        assert_eq!(petersen.sigma(&ind.complement()).unwrap(), Rat::from(1));
        let k4 = generate_family(Family::Complete, &[4]).unwrap();
        let pair = VertexSet::from_indices(4, [0, 1]);
        assert_eq!(k4.sigma(&pair).unwrap(), Rat::from(1));
        assert_eq!(k4.sigma(&VertexSet::from_indices(4, [])), Err(GraphError::EmptySet));
    }

    #[test]
    fn sigma2_examples() {
        let petersen = generate_family(Family::Petersen, &[]).unwrap();
        let ind = VertexSet::from_indices(10, 0..4);
        assert_eq!(petersen.sigma2(&ind).unwrap(), Rat::from(3));

        let q3 = generate_family(Family::Hypercube, &[3]).unwrap();
        let even = VertexSet::from_indices(8, (0..8usize).filter(|v| v.count_ones() % 2 == 0));
        assert_eq!(q3.sigma2(&even).unwrap(), Rat::from(3));

        let k4 = generate_family(Family::Complete, &[4]).unwrap();
        let any = VertexSet::from_indices(4, [0, 2]);
        assert_eq!(k4.sigma2(&any).unwrap(), Rat::from(0));
    }
}
