//! The fixed index graph: vertices and darts (directed edges) with the
//! reversal involution, spanning trees, and free generators of the
//! fundamental group of the graph.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A directed edge. Geometric edge k contributes darts 2k (forward, in input
/// order) and 2k+1 (its reversal).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dart {
    pub tail: usize,
    pub head: usize,
    pub reverse: usize,
}

/// A finite graph with doubled directed edges. Loops and multiple edges are
/// permitted; the reversal map is a fixed-point-free involution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedGraph {
    vertex_count: usize,
    darts: Vec<Dart>,
}

impl OrientedGraph {
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<OrientedGraph> {
        let mut darts = Vec::with_capacity(edges.len() * 2);
        for (k, &(u, v)) in edges.iter().enumerate() {
            for &w in &[u, v] {
                if w >= vertex_count {
                    return Err(Error::InvalidVertex {
                        vertex: w,
                        count: vertex_count,
                    });
                }
            }
            darts.push(Dart {
                tail: u,
                head: v,
                reverse: 2 * k + 1,
            });
            darts.push(Dart {
                tail: v,
                head: u,
                reverse: 2 * k,
            });
        }
        Ok(OrientedGraph {
            vertex_count,
            darts,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn dart_count(&self) -> usize {
        self.darts.len()
    }

    pub fn edge_count(&self) -> usize {
        self.darts.len() / 2
    }

    pub fn dart(&self, e: usize) -> Dart {
        self.darts[e]
    }

    pub fn tail(&self, e: usize) -> usize {
        self.darts[e].tail
    }

    pub fn head(&self, e: usize) -> usize {
        self.darts[e].head
    }

    pub fn reverse(&self, e: usize) -> usize {
        self.darts[e].reverse
    }

    /// Geometric edge of a dart.
    pub fn edge_of(&self, e: usize) -> usize {
        e / 2
    }

    /// The lower-indexed dart of a geometric edge.
    pub fn forward_dart(&self, edge: usize) -> usize {
        2 * edge
    }

    pub fn is_loop(&self, edge: usize) -> bool {
        let e = self.forward_dart(edge);
        self.tail(e) == self.head(e)
    }

    pub fn darts_from(&self, vertex: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.darts.len()).filter(move |&e| self.darts[e].tail == vertex)
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        (0..self.edge_count())
            .map(|k| (self.tail(2 * k), self.head(2 * k)))
            .collect()
    }
}

/// A breadth-first spanning tree rooted at a base vertex.
#[derive(Debug, Clone)]
pub struct SpanningTree {
    base: usize,
    /// For each non-base vertex: the tree dart oriented from its parent to it.
    parent_dart: Vec<Option<usize>>,
    /// Tree darts oriented away from the base, in BFS discovery order.
    away_darts: Vec<usize>,
}

impl SpanningTree {
    /// BFS from `base`, taking darts in index order. Fails if some vertex is
    /// unreachable.
    pub fn build(graph: &OrientedGraph, base: usize) -> Result<SpanningTree> {
        if base >= graph.vertex_count() {
            return Err(Error::InvalidVertex {
                vertex: base,
                count: graph.vertex_count(),
            });
        }
        let mut parent_dart = vec![None; graph.vertex_count()];
        let mut seen = vec![false; graph.vertex_count()];
        seen[base] = true;
        let mut away_darts = Vec::new();
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(base);
        while let Some(v) = queue.pop_front() {
            for e in graph.darts_from(v) {
                let w = graph.head(e);
                if !seen[w] {
                    seen[w] = true;
                    parent_dart[w] = Some(e);
                    away_darts.push(e);
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::Disconnected);
        }
        Ok(SpanningTree {
            base,
            parent_dart,
            away_darts,
        })
    }

    /// Spanning forest: one BFS tree per connected component, based at the
    /// least vertex of each component. `parent_dart` is None exactly on the
    /// component bases.
    pub fn forest(graph: &OrientedGraph) -> SpanningTree {
        let mut parent_dart = vec![None; graph.vertex_count()];
        let mut seen = vec![false; graph.vertex_count()];
        let mut away_darts = Vec::new();
        for base in 0..graph.vertex_count() {
            if seen[base] {
                continue;
            }
            seen[base] = true;
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(base);
            while let Some(v) = queue.pop_front() {
                for e in graph.darts_from(v) {
                    let w = graph.head(e);
                    if !seen[w] {
                        seen[w] = true;
                        parent_dart[w] = Some(e);
                        away_darts.push(e);
                        queue.push_back(w);
                    }
                }
            }
        }
        SpanningTree {
            base: 0,
            parent_dart,
            away_darts,
        }
    }

    pub fn base(&self) -> usize {
        self.base
    }

    /// The dart from `v`'s parent to `v`, None at the base.
    pub fn parent_dart(&self, v: usize) -> Option<usize> {
        self.parent_dart[v]
    }

    /// Tree darts oriented away from the base.
    pub fn away_darts(&self) -> &[usize] {
        &self.away_darts
    }

    pub fn is_tree_dart(&self, graph: &OrientedGraph, e: usize) -> bool {
        self.away_darts.contains(&e) || self.away_darts.contains(&graph.reverse(e))
    }

    /// Dart path from the base to `v` along the tree.
    pub fn path_from_base(&self, graph: &OrientedGraph, v: usize) -> Vec<usize> {
        let mut path = Vec::new();
        let mut cur = v;
        while let Some(e) = self.parent_dart[cur] {
            path.push(e);
            cur = graph.tail(e);
        }
        path.reverse();
        path
    }

    /// Dart path from `v` back to the base (reversals of the descent).
    pub fn path_to_base(&self, graph: &OrientedGraph, v: usize) -> Vec<usize> {
        let mut path = Vec::new();
        let mut cur = v;
        while let Some(e) = self.parent_dart[cur] {
            path.push(graph.reverse(e));
            cur = graph.tail(e);
        }
        path
    }
}

/// A free generator of the fundamental group of the graph: the closed walk
/// base -> tail(dart) -> head(dart) -> base using tree paths around one
/// non-tree dart.
#[derive(Debug, Clone)]
pub struct EdgeLoop {
    pub dart: usize,
    pub walk: Vec<usize>,
}

/// One loop per non-tree geometric edge, taking the lower-indexed dart as
/// the positive orientation. The loops freely generate the fundamental group
/// of the graph at the tree base.
pub fn free_generators(graph: &OrientedGraph, tree: &SpanningTree) -> Vec<EdgeLoop> {
    let mut loops = Vec::new();
    for edge in 0..graph.edge_count() {
        let b = graph.forward_dart(edge);
        if tree.is_tree_dart(graph, b) {
            continue;
        }
        let mut walk = tree.path_from_base(graph, graph.tail(b));
        walk.push(b);
        walk.extend(tree.path_to_base(graph, graph.head(b)));
        loops.push(EdgeLoop { dart: b, walk });
    }
    loops
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_gives_two_darts() {
        let g = OrientedGraph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(g.dart_count(), 2);
        assert_eq!(g.tail(0), 0);
        assert_eq!(g.head(0), 1);
        assert_eq!(g.reverse(0), 1);
        assert_eq!(g.reverse(1), 0);
    }

    #[test]
    fn double_loop_has_four_darts() {
        let g = OrientedGraph::new(1, &[(0, 0), (0, 0)]).unwrap();
        assert_eq!(g.dart_count(), 4);
        for e in 0..4 {
            assert_eq!(g.tail(e), 0);
            assert_eq!(g.head(e), 0);
            assert_ne!(g.reverse(e), e);
            assert_eq!(g.reverse(g.reverse(e)), e);
        }
    }

    #[test]
    fn triangle_has_six_darts() {
        let g = OrientedGraph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(g.dart_count(), 6);
        for e in 0..6 {
            assert_eq!(g.tail(e), g.head(g.reverse(e)));
        }
    }

    #[test]
    fn invalid_vertex_rejected() {
        assert!(matches!(
            OrientedGraph::new(2, &[(0, 2)]),
            Err(Error::InvalidVertex { vertex: 2, .. })
        ));
    }

    #[test]
    fn spanning_tree_sizes() {
        let single = OrientedGraph::new(1, &[]).unwrap();
        let t = SpanningTree::build(&single, 0).unwrap();
        assert!(t.away_darts().is_empty());

        let triangle = OrientedGraph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let t = SpanningTree::build(&triangle, 1).unwrap();
        assert_eq!(t.away_darts().len(), 2);

        let double_loop = OrientedGraph::new(1, &[(0, 0), (0, 0)]).unwrap();
        let t = SpanningTree::build(&double_loop, 0).unwrap();
        assert!(t.away_darts().is_empty());
    }

    #[test]
    fn disconnected_rejected() {
        let g = OrientedGraph::new(3, &[(0, 1)]).unwrap();
        assert!(matches!(SpanningTree::build(&g, 0), Err(Error::Disconnected)));
    }

    #[test]
    fn free_generator_counts_match_rank() {
        // tree graph: rank 0
        let path = OrientedGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let t = SpanningTree::build(&path, 0).unwrap();
        assert!(free_generators(&path, &t).is_empty());

        // double loop: rank 2
        let double_loop = OrientedGraph::new(1, &[(0, 0), (0, 0)]).unwrap();
        let t = SpanningTree::build(&double_loop, 0).unwrap();
        assert_eq!(free_generators(&double_loop, &t).len(), 2);

        // triangle: rank 1, loop of length 3
        let triangle = OrientedGraph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let t = SpanningTree::build(&triangle, 0).unwrap();
        let gens = free_generators(&triangle, &t);
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].walk.len(), 3);
    }

    #[test]
    fn free_generators_are_closed_walks() {
        let g = OrientedGraph::new(4, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 0)]).unwrap();
        let t = SpanningTree::build(&g, 0).unwrap();
        let gens = free_generators(&g, &t);
        assert_eq!(gens.len(), g.edge_count() - (g.vertex_count() - 1));
        for l in &gens {
            assert_eq!(g.tail(l.walk[0]), 0);
            assert_eq!(g.head(*l.walk.last().unwrap()), 0);
            for w in l.walk.windows(2) {
                assert_eq!(g.head(w[0]), g.tail(w[1]));
                // no returns except possibly at the non-tree dart junctions
                if w[0] != l.dart && w[1] != l.dart {
                    assert_ne!(w[1], g.reverse(w[0]));
                }
            }
        }
    }
}
