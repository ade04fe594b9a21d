//! Simple undirected connected graphs and the concrete graph families the
//! toolkit works with: complete graphs, paths, cycles, the necklace graphs
//! `N_k`, and a seeded random generator for oracle cross-checks.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rand::Rng;

use crate::error::{Error, Result};

/// Simple undirected connected graph over vertices `0..n`.
///
/// Neighbor lists are kept sorted, so iteration order and every derived
/// artifact (files, witnesses, reports) is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list, validating simplicity and connectivity.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (v, nbrs) in adjacency.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if let Some(pair) = nbrs.windows(2).find(|w| w[0] == w[1]) {
                let u = pair[0];
                return Err(Error::DuplicateEdge {
                    u: u.min(v),
                    v: u.max(v),
                });
            }
        }
        let graph = Graph { adjacency };
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(graph)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Returns the common degree if the graph is regular.
    pub fn regularity(&self) -> Option<usize> {
        let d = self.degree(0);
        if (1..self.vertex_count()).all(|v| self.degree(v) == d) {
            Some(d)
        } else {
            None
        }
    }

    /// Checks regularity, reporting a witness pair of differing degrees.
    pub fn require_regular(&self) -> Result<usize> {
        let d = self.degree(0);
        match (1..self.vertex_count()).find(|&v| self.degree(v) != d) {
            None => Ok(d),
            Some(v) => Err(Error::NotRegular {
                u: 0,
                du: d,
                v,
                dv: self.degree(v),
            }),
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.vertex_count(),
            })
        }
    }

    /// All edges as `(u, v)` pairs with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &u in &self.adjacency[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    queue.push_back(u);
                }
            }
        }
        count == n
    }

    /// The square graph: vertices at distance 1 or 2 become adjacent.
    pub fn square(&self) -> Graph {
        let n = self.vertex_count();
        let mut edges = Vec::new();
        for v in 0..n {
            let mut reach = vec![false; n];
            for &u in self.neighbors(v) {
                reach[u] = true;
                for &w in self.neighbors(u) {
                    reach[w] = true;
                }
            }
            for (u, &r) in reach.iter().enumerate() {
                if r && v < u {
                    edges.push((v, u));
                }
            }
        }
        Graph::from_edges(n, &edges).expect("square of a connected graph is simple and connected")
    }

    /// Parses the graph text format: line 1 is `n m`, followed by `m` lines
    /// `u v` with `0 <= u < v < n`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header line".into(),
        })?;
        let mut parts = header.split_whitespace();
        let n: usize = parse_field(parts.next(), 1, "vertex count")?;
        let m: usize = parse_field(parts.next(), 1, "edge count")?;
        if parts.next().is_some() {
            return Err(Error::Parse {
                line: 1,
                message: "expected exactly two fields `n m`".into(),
            });
        }
        let mut edges = Vec::with_capacity(m);
        for i in 0..m {
            let line_no = i + 2;
            let line = lines.next().ok_or(Error::Parse {
                line: line_no,
                message: "missing edge line".into(),
            })?;
            let mut parts = line.split_whitespace();
            let u: usize = parse_field(parts.next(), line_no, "edge endpoint")?;
            let v: usize = parse_field(parts.next(), line_no, "edge endpoint")?;
            if parts.next().is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    message: "expected exactly two fields `u v`".into(),
                });
            }
            if u >= v {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("edge must satisfy u < v, got {u} {v}"),
                });
            }
            edges.push((u, v));
        }
        if let Some(extra) = lines.find(|l| !l.trim().is_empty()) {
            return Err(Error::Parse {
                line: m + 2,
                message: format!("unexpected trailing content: {extra:?}"),
            });
        }
        Graph::from_edges(n, &edges)
    }

    /// Writes the graph text format; inverse of [`Graph::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.vertex_count(), self.edge_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

fn parse_field<T: std::str::FromStr>(field: Option<&str>, line: usize, what: &str) -> Result<T> {
    let raw = field.ok_or_else(|| Error::Parse {
        line,
        message: format!("missing {what}"),
    })?;
    raw.parse().map_err(|_| Error::Parse {
        line,
        message: format!("invalid {what}: {raw:?}"),
    })
}

/// Complete graph `K_n`.
pub fn build_complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Path `P_n` on vertices `0 - 1 - ... - n-1`.
pub fn build_path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let edges: Vec<_> = (0..n.saturating_sub(1)).map(|v| (v, v + 1)).collect();
    Graph::from_edges(n, &edges)
}

/// Cycle `C_n` on vertices `0 - 1 - ... - n-1 - 0`; requires `n >= 3`.
pub fn build_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle needs at least 3 vertices, got {n}"
        )));
    }
    let mut edges: Vec<_> = (0..n - 1).map(|v| (v, v + 1)).collect();
    edges.push((0, n - 1));
    Graph::from_edges(n, &edges)
}

/// The labeled structure of a necklace graph: three near-complete beads
/// chained into a ring.
///
/// Bead `t` (for `t` in 1..=3) is a copy of `K_{k+1}` with one edge removed.
/// The endpoints of the removed edge are `a_t` and `b_t`; the remaining
/// `k - 1` vertices form the clique `C_t`, complete to both `a_t` and `b_t`.
/// The beads are chained by the edges `b_1 a_2`, `b_2 a_3`, and `b_3 a_1`,
/// which makes the whole graph `k`-regular on `3(k+1)` vertices.
///
/// The vertex numbering is canonical and relied upon by the identifier-block
/// constructions: bead `t` occupies indices `[(t-1)(k+1), t(k+1))`, with
/// `a_t` first, `b_t` second, and `C_t` after.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NecklaceStructure {
    k: usize,
}

impl NecklaceStructure {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        3 * (self.k + 1)
    }

    fn bead_start(&self, t: usize) -> usize {
        assert!((1..=3).contains(&t), "bead index must be 1, 2, or 3");
        (t - 1) * (self.k + 1)
    }

    /// First endpoint of bead `t`'s removed edge; receives the chain edge
    /// from bead `t - 1`.
    pub fn a(&self, t: usize) -> usize {
        self.bead_start(t)
    }

    /// Second endpoint of bead `t`'s removed edge; sends the chain edge to
    /// bead `t + 1`.
    pub fn b(&self, t: usize) -> usize {
        self.bead_start(t) + 1
    }

    /// The `k - 1` clique vertices of bead `t`, in increasing order.
    pub fn clique(&self, t: usize) -> Vec<usize> {
        let start = self.bead_start(t);
        (start + 2..start + self.k + 1).collect()
    }

    /// Bead index (1..=3) that vertex `v` belongs to.
    pub fn bead_of(&self, v: usize) -> usize {
        v / (self.k + 1) + 1
    }

    /// The proper coloring that assigns color `t` to both `a_t` and `b_t`,
    /// and the remaining colors `{1..k} \ {t}` to `C_t` in increasing order.
    pub fn canonical_coloring(&self) -> crate::coloring::ColoringWitness {
        let mut colors = vec![0usize; self.vertex_count()];
        for t in 1..=3 {
            colors[self.a(t)] = t;
            colors[self.b(t)] = t;
            let palette: Vec<usize> = (1..=self.k).filter(|&c| c != t).collect();
            for (v, c) in self.clique(t).into_iter().zip(palette) {
                colors[v] = c;
            }
        }
        crate::coloring::ColoringWitness::new(colors)
    }
}

/// Necklace graph `N_k`: three copies of `K_{k+1}`, each with one edge
/// removed, chained into a ring. Requires `k >= 3`.
pub fn build_necklace(k: usize) -> Result<(Graph, NecklaceStructure)> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "necklace construction needs k >= 3, got {k}"
        )));
    }
    let structure = NecklaceStructure { k };
    let n = structure.vertex_count();
    let mut edges = Vec::new();
    for t in 1..=3 {
        let start = structure.bead_start(t);
        let a = structure.a(t);
        let b = structure.b(t);
        for u in start..start + k + 1 {
            for v in u + 1..start + k + 1 {
                if (u, v) != (a, b) {
                    edges.push((u, v));
                }
            }
        }
    }
    for t in 1..=3 {
        let next = t % 3 + 1;
        let (u, v) = (structure.b(t), structure.a(next));
        edges.push((u.min(v), u.max(v)));
    }
    let graph = Graph::from_edges(n, &edges)?;
    debug_assert_eq!(graph.regularity(), Some(k));
    Ok((graph, structure))
}

/// Seeded random connected graph: a random attachment tree plus independent
/// extra edges with probability `extra_edge_prob`.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, extra_edge_prob: f64) -> Graph {
    assert!(n >= 1, "graph needs at least one vertex");
    let mut edges = Vec::new();
    for v in 1..n {
        let parent = rng.random_range(0..v);
        edges.push((parent, v));
    }
    let tree_len = edges.len();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(extra_edge_prob) && !edges[..tree_len].contains(&(u, v)) {
                edges.push((u, v));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edges(n, &edges).expect("tree plus extra edges is simple and connected")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_shape() {
        let g = build_complete(4).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.regularity(), Some(3));

        let single = build_complete(1).unwrap();
        assert_eq!(single.vertex_count(), 1);
        assert_eq!(single.edge_count(), 0);

        assert_eq!(build_complete(0), Err(Error::EmptyGraph));
    }

    #[test]
    fn necklace_shape() {
        let (g, s) = build_necklace(3).unwrap();
        assert_eq!(g.vertex_count(), 12);
        assert_eq!(g.edge_count(), 18);
        assert_eq!(g.regularity(), Some(3));
        assert_eq!(s.a(1), 0);
        assert_eq!(s.b(1), 1);
        assert_eq!(s.clique(1), vec![2, 3]);
        assert_eq!(s.clique(3), vec![10, 11]);
        // The removed edges are gone, the chain edges are present.
        for t in 1..=3 {
            assert!(!g.has_edge(s.a(t), s.b(t)));
        }
        assert!(g.has_edge(s.b(1), s.a(2)));
        assert!(g.has_edge(s.b(2), s.a(3)));
        assert!(g.has_edge(s.b(3), s.a(1)));

        let (g4, _) = build_necklace(4).unwrap();
        assert_eq!(g4.vertex_count(), 15);
        assert_eq!(g4.regularity(), Some(4));

        assert!(matches!(
            build_necklace(2),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn necklace_regular_for_small_k() {
        for k in 3..=5 {
            let (g, s) = build_necklace(k).unwrap();
            assert_eq!(g.vertex_count(), 3 * (k + 1));
            assert_eq!(g.regularity(), Some(k));
            assert_eq!(s.vertex_count(), g.vertex_count());
        }
    }

    #[test]
    fn path_and_cycle_shapes() {
        let c6 = build_cycle(6).unwrap();
        assert_eq!(c6.vertex_count(), 6);
        assert_eq!(c6.regularity(), Some(2));

        let p1 = build_path(1).unwrap();
        assert_eq!(p1.vertex_count(), 1);
        assert_eq!(p1.degree(0), 0);

        assert!(matches!(build_cycle(2), Err(Error::InvalidParameter(_))));
        assert_eq!(build_path(0), Err(Error::EmptyGraph));
    }

    #[test]
    fn construction_is_deterministic() {
        assert_eq!(build_necklace(4).unwrap(), build_necklace(4).unwrap());
        assert_eq!(build_complete(7).unwrap(), build_complete(7).unwrap());
    }

    #[test]
    fn from_edges_rejects_invalid_input() {
        assert_eq!(
            Graph::from_edges(3, &[(0, 0), (0, 1), (1, 2)]),
            Err(Error::SelfLoop(0))
        );
        assert_eq!(
            Graph::from_edges(3, &[(0, 1), (1, 0), (1, 2)]),
            Err(Error::DuplicateEdge { u: 0, v: 1 })
        );
        assert_eq!(
            Graph::from_edges(4, &[(0, 1), (2, 3)]),
            Err(Error::Disconnected)
        );
        assert_eq!(
            Graph::from_edges(2, &[(0, 5)]),
            Err(Error::VertexOutOfRange { vertex: 5, n: 2 })
        );
    }

    #[test]
    fn text_round_trip() {
        let (g, _) = build_necklace(3).unwrap();
        let text = g.to_text();
        assert_eq!(Graph::parse(&text).unwrap(), g);

        let p = build_path(1).unwrap();
        assert_eq!(Graph::parse(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(matches!(
            Graph::parse("2 1\n1 0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            Graph::parse("2 2\n0 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(Graph::parse(""), Err(Error::Parse { line: 1, .. })));
        assert_eq!(Graph::parse("4 2\n0 1\n2 3\n"), Err(Error::Disconnected));
    }

    #[test]
    fn square_of_path() {
        let p4 = build_path(4).unwrap();
        let sq = p4.square();
        assert!(sq.has_edge(0, 2));
        assert!(sq.has_edge(1, 3));
        assert!(!sq.has_edge(0, 3));
        assert_eq!(sq.edge_count(), 5);
    }

    #[test]
    fn random_graphs_are_connected_and_deterministic() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let g1 = random_connected_graph(&mut rng, 9, 0.3);
        assert_eq!(g1.vertex_count(), 9);

        let mut rng2 = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let g2 = random_connected_graph(&mut rng2, 9, 0.3);
        assert_eq!(g1, g2);
    }
}
