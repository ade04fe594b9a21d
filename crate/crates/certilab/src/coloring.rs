//! Brute-force coloring oracles used as ground truth at desk scale, plus the
//! structural characterization of distance-2 3-colorable graphs.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default node budget for the backtracking search. Desk-scale instances
/// stay far below it; the guard exists so oversized inputs fail loudly
/// instead of running for hours.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// A proper coloring with colors in `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringWitness {
    colors: Vec<usize>,
}

impl ColoringWitness {
    pub fn new(colors: Vec<usize>) -> Self {
        ColoringWitness { colors }
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// True iff this is a proper coloring of `g` using colors in `1..=k`.
    pub fn is_proper_k_coloring(&self, g: &Graph, k: usize) -> bool {
        if self.colors.len() != g.vertex_count() {
            return false;
        }
        if !self.colors.iter().all(|&c| (1..=k).contains(&c)) {
            return false;
        }
        g.edges()
            .into_iter()
            .all(|(u, v)| self.colors[u] != self.colors[v])
    }
}

/// Finds a proper `k`-coloring of `g` by backtracking, or `None` if there is
/// none. Uses the default node budget.
pub fn find_k_coloring(g: &Graph, k: usize) -> Result<Option<ColoringWitness>> {
    find_k_coloring_budgeted(g, k, DEFAULT_NODE_BUDGET)
}

/// Backtracking search over vertices in reverse degeneracy order. Palette is
/// capped at one more than the number of colors used so far, which prunes
/// color-class symmetry. Fails with [`Error::BudgetExceeded`] once more than
/// `node_budget` search nodes have been expanded.
pub fn find_k_coloring_budgeted(
    g: &Graph,
    k: usize,
    node_budget: u64,
) -> Result<Option<ColoringWitness>> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "color count must be positive".into(),
        ));
    }
    let mut order = degeneracy_order(g);
    order.reverse();
    let mut search = Search {
        g,
        k,
        order: &order,
        colors: vec![usize::MAX; g.vertex_count()],
        nodes: 0,
        budget: node_budget,
    };
    if search.assign(0, 0)? {
        let colors = search.colors.iter().map(|&c| c + 1).collect();
        let witness = ColoringWitness::new(colors);
        debug_assert!(witness.is_proper_k_coloring(g, k));
        Ok(Some(witness))
    } else {
        Ok(None)
    }
}

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    order: &'a [usize],
    colors: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn assign(&mut self, pos: usize, used: usize) -> Result<bool> {
        if pos == self.order.len() {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }
        let v = self.order[pos];
        let cap = (used + 1).min(self.k);
        for c in 0..cap {
            if self.g.neighbors(v).iter().all(|&u| self.colors[u] != c) {
                self.colors[v] = c;
                if self.assign(pos + 1, used.max(c + 1))? {
                    return Ok(true);
                }
                self.colors[v] = usize::MAX;
            }
        }
        Ok(false)
    }
}

/// Removal order that repeatedly takes a vertex of minimum remaining degree
/// (lowest index on ties).
fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("graph is nonempty");
        removed[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !removed[u] {
                deg[u] -= 1;
            }
        }
    }
    order
}

/// Traversal of a connected graph of maximum degree at most two.
pub(crate) enum PathCycle {
    /// Vertices in order from the lowest-index endpoint.
    Path(Vec<usize>),
    /// Vertices in cyclic order from vertex 0, oriented toward its
    /// lowest-index neighbor.
    Cycle(Vec<usize>),
}

pub(crate) fn path_or_cycle(g: &Graph) -> Option<PathCycle> {
    if g.max_degree() > 2 {
        return None;
    }
    let n = g.vertex_count();
    let endpoints: Vec<usize> = (0..n).filter(|&v| g.degree(v) <= 1).collect();
    if endpoints.is_empty() {
        let start = 0;
        let mut order = vec![start];
        let mut prev = start;
        let mut cur = g.neighbors(start)[0];
        while cur != start {
            order.push(cur);
            let next = g
                .neighbors(cur)
                .iter()
                .copied()
                .find(|&w| w != prev)
                .expect("interior cycle vertex has a forward neighbor");
            prev = cur;
            cur = next;
        }
        Some(PathCycle::Cycle(order))
    } else {
        let start = endpoints[0];
        let mut order = vec![start];
        let mut prev = start;
        let mut cur = match g.neighbors(start).first() {
            Some(&x) => x,
            None => return Some(PathCycle::Path(order)),
        };
        loop {
            order.push(cur);
            match g.neighbors(cur).iter().copied().find(|&w| w != prev) {
                Some(next) => {
                    prev = cur;
                    cur = next;
                }
                None => break,
            }
        }
        Some(PathCycle::Path(order))
    }
}

/// Structural test: a connected graph is distance-2 3-colorable exactly when
/// it is a path or a cycle whose length is divisible by 3.
pub fn is_distance2_3colorable(g: &Graph) -> bool {
    match path_or_cycle(g) {
        Some(PathCycle::Path(_)) => true,
        Some(PathCycle::Cycle(order)) => order.len() % 3 == 0,
        None => false,
    }
}

/// Independent brute-force oracle for the same question: 3-colors the square
/// graph, where distance-2 constraints become ordinary edges.
pub fn distance2_oracle(g: &Graph) -> Result<bool> {
    Ok(find_k_coloring(&g.square(), 3)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_complete, build_cycle, build_necklace, build_path};

    #[test]
    fn clique_needs_full_palette() {
        let k4 = build_complete(4).unwrap();
        assert_eq!(find_k_coloring(&k4, 3).unwrap(), None);
        assert!(find_k_coloring(&k4, 4).unwrap().is_some());
    }

    #[test]
    fn complete_graphs_vs_color_counts() {
        for n in 1..=10 {
            let g = build_complete(n).unwrap();
            for k in 1..=n + 1 {
                let witness = find_k_coloring(&g, k).unwrap();
                assert_eq!(witness.is_some(), k >= n, "K_{n} with {k} colors");
                if let Some(w) = witness {
                    assert!(w.is_proper_k_coloring(&g, k));
                }
            }
        }
    }

    #[test]
    fn necklace_is_k_colorable() {
        for k in 3..=5 {
            let (g, s) = build_necklace(k).unwrap();
            let witness = find_k_coloring(&g, k).unwrap().expect("colorable");
            assert!(witness.is_proper_k_coloring(&g, k));
            let canonical = s.canonical_coloring();
            assert!(canonical.is_proper_k_coloring(&g, k));
        }
    }

    #[test]
    fn canonical_necklace_coloring_pattern() {
        let (_, s) = build_necklace(3).unwrap();
        let w = s.canonical_coloring();
        for t in 1..=3 {
            assert_eq!(w.color(s.a(t)), t);
            assert_eq!(w.color(s.b(t)), t);
            let mut seen: Vec<usize> = s.clique(t).iter().map(|&v| w.color(v)).collect();
            seen.sort_unstable();
            let expected: Vec<usize> = (1..=3).filter(|&c| c != t).collect();
            assert_eq!(seen, expected);
        }
    }

    #[test]
    fn odd_cycle_needs_three_colors() {
        let c5 = build_cycle(5).unwrap();
        assert_eq!(find_k_coloring(&c5, 2).unwrap(), None);
        assert!(find_k_coloring(&c5, 3).unwrap().is_some());
    }

    #[test]
    fn zero_colors_rejected() {
        let g = build_path(2).unwrap();
        assert!(matches!(
            find_k_coloring(&g, 0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn budget_guard_fires() {
        let (g, _) = build_necklace(5).unwrap();
        assert_eq!(
            find_k_coloring_budgeted(&g, 5, 3),
            Err(Error::BudgetExceeded { budget: 3 })
        );
    }

    #[test]
    fn distance2_structural_cases() {
        assert!(is_distance2_3colorable(&build_cycle(6).unwrap()));
        assert!(!is_distance2_3colorable(&build_cycle(4).unwrap()));
        assert!(!is_distance2_3colorable(&build_cycle(5).unwrap()));
        assert!(is_distance2_3colorable(&build_path(7).unwrap()));
        assert!(is_distance2_3colorable(&build_path(1).unwrap()));
        assert!(!is_distance2_3colorable(&build_complete(4).unwrap()));
    }

    #[test]
    fn distance2_matches_oracle_on_paths_and_cycles() {
        for n in 1..=12 {
            let p = build_path(n).unwrap();
            assert_eq!(
                is_distance2_3colorable(&p),
                distance2_oracle(&p).unwrap(),
                "P_{n}"
            );
        }
        for n in 3..=12 {
            let c = build_cycle(n).unwrap();
            assert_eq!(
                is_distance2_3colorable(&c),
                distance2_oracle(&c).unwrap(),
                "C_{n}"
            );
        }
    }

    #[test]
    fn traversal_orders() {
        let p4 = build_path(4).unwrap();
        match path_or_cycle(&p4) {
            Some(PathCycle::Path(order)) => assert_eq!(order, vec![0, 1, 2, 3]),
            _ => panic!("P_4 should classify as a path"),
        }
        let c5 = build_cycle(5).unwrap();
        match path_or_cycle(&c5) {
            Some(PathCycle::Cycle(order)) => assert_eq!(order, vec![0, 1, 2, 3, 4]),
            _ => panic!("C_5 should classify as a cycle"),
        }
    }
}
