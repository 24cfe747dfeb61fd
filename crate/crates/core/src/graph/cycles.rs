//! Cycles, walks and girth of Tanner graphs.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use super::{EdgeId, Node, TannerGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("maximum cycle length must be even and at least 4, got {0}")]
    BadMaxLen(usize),
    #[error("cycle budget of {cap} exceeded")]
    BudgetExceeded { cap: usize },
    #[error("walk is not alternating at position {0}")]
    NotAlternating(usize),
    #[error("walk does not close into a simple cycle")]
    NotACycle,
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
}

/// A sequence of edges traversed from a given start node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    start: Node,
    edges: Vec<EdgeId>,
}

impl Walk {
    /// Validates that consecutive edges share the node the walk is standing on.
    pub fn new(g: &TannerGraph, start: Node, edges: Vec<EdgeId>) -> Result<Self, CycleError> {
        let mut at = start;
        for (pos, &e) in edges.iter().enumerate() {
            if e >= g.num_edges() {
                return Err(CycleError::UnknownEdge(e));
            }
            let edge = g.edge(e);
            if !edge.touches(at) {
                return Err(CycleError::NotAlternating(pos));
            }
            at = edge.other(at);
        }
        Ok(Walk { start, edges })
    }

    pub fn start(&self) -> Node {
        self.start
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Nodes visited, starting with `start` and ending at the final node.
    pub fn nodes(&self, g: &TannerGraph) -> Vec<Node> {
        let mut out = Vec::with_capacity(self.edges.len() + 1);
        let mut at = self.start;
        out.push(at);
        for &e in &self.edges {
            at = g.edge(e).other(at);
            out.push(at);
        }
        out
    }

    /// The same walk traversed backwards.
    pub fn reversed(&self, g: &TannerGraph) -> Walk {
        let end = *self.nodes(g).last().expect("walk has a start node");
        Walk {
            start: end,
            edges: self.edges.iter().rev().copied().collect(),
        }
    }
}

/// A simple cycle stored as a canonical edge sequence.
///
/// Canonical form: rotated so the smallest edge id comes first, then the
/// lexicographically smaller of the two traversal directions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    edges: Vec<EdgeId>,
}

impl Cycle {
    /// Builds a cycle from a closed edge sequence, checking simplicity.
    pub fn new(g: &TannerGraph, edges: Vec<EdgeId>) -> Result<Self, CycleError> {
        if edges.len() < 4 || edges.len() % 2 == 1 {
            return Err(CycleError::NotACycle);
        }
        if let Some(&e) = edges.iter().find(|&&e| e >= g.num_edges()) {
            return Err(CycleError::UnknownEdge(e));
        }
        let first = g.edge(edges[0]);
        let second = g.edge(edges[1]);
        // start at the endpoint of e_1 that e_2 does not touch
        let start = if second.touches(Node::Var(first.var)) {
            Node::Check(first.check)
        } else {
            Node::Var(first.var)
        };
        let walk = Walk::new(g, start, edges)?;
        let nodes = walk.nodes(g);
        if nodes.last() != Some(&start) {
            return Err(CycleError::NotACycle);
        }
        let distinct: BTreeSet<Node> = nodes[..nodes.len() - 1].iter().copied().collect();
        if distinct.len() != walk.len() {
            return Err(CycleError::NotACycle);
        }
        Ok(Self::canonical(walk.edges))
    }

    /// Canonicalizes an edge sequence already known to be a simple cycle.
    pub(crate) fn canonical(mut edges: Vec<EdgeId>) -> Self {
        let pos = edges
            .iter()
            .enumerate()
            .min_by_key(|(_, &e)| e)
            .map(|(i, _)| i)
            .unwrap_or(0);
        edges.rotate_left(pos);
        if edges.len() > 2 && edges[edges.len() - 1] < edges[1] {
            edges[1..].reverse();
        }
        Cycle { edges }
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// Cycle length `l(c)`.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    /// The closed walk of this cycle, rooted at its variable node on the
    /// first edge and heading into that edge's check.
    pub fn walk(&self, g: &TannerGraph) -> Walk {
        let first = g.edge(self.edges[0]);
        let second = g.edge(self.edges[1]);
        if second.touches(Node::Check(first.check)) {
            Walk {
                start: Node::Var(first.var),
                edges: self.edges.clone(),
            }
        } else {
            // e_1 is entered from its check side: reverse so we leave from the variable.
            let mut edges = self.edges.clone();
            edges[1..].reverse();
            Walk {
                start: Node::Var(first.var),
                edges,
            }
        }
    }

    /// Re-expresses the cycle in another graph's edge ids.
    pub fn map_edges(&self, map: &[EdgeId]) -> Cycle {
        Cycle::canonical(self.edges.iter().map(|&e| map[e]).collect())
    }
}

/// Restricts [`enumerate_cycles`] to cycles through a node or an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Through {
    Node(Node),
    Edge(EdgeId),
}

struct Search<'g> {
    g: &'g TannerGraph,
    max_len: usize,
    cap: Option<usize>,
    on_path: Vec<bool>,
    path: Vec<EdgeId>,
    out: BTreeSet<Cycle>,
}

impl Search<'_> {
    fn slot(&self, node: Node) -> usize {
        match node {
            Node::Var(v) => v,
            Node::Check(c) => self.g.num_vars() + c,
        }
    }

    /// Extends the current path from `at`; `floor` bounds the admissible edge ids.
    fn dfs(&mut self, start: Node, at: Node, floor: Option<EdgeId>) -> Result<(), CycleError> {
        let last = *self.path.last().expect("path is seeded with one edge");
        for &e in self.g.incident(at) {
            if e == last || floor.is_some_and(|f| e <= f) {
                continue;
            }
            let next = self.g.edge(e).other(at);
            if next == start {
                if self.path.len() + 1 >= 4 {
                    let mut edges = self.path.clone();
                    edges.push(e);
                    self.out.insert(Cycle::canonical(edges));
                    if let Some(cap) = self.cap {
                        if self.out.len() > cap {
                            return Err(CycleError::BudgetExceeded { cap });
                        }
                    }
                }
                continue;
            }
            let slot = self.slot(next);
            // one more edge is still needed to close the cycle
            if self.on_path[slot] || self.path.len() + 2 > self.max_len {
                continue;
            }
            self.on_path[slot] = true;
            self.path.push(e);
            self.dfs(start, next, floor)?;
            self.path.pop();
            self.on_path[slot] = false;
        }
        Ok(())
    }

    /// All cycles whose traversal starts with `e0` from its variable end.
    fn search_from_edge(&mut self, e0: EdgeId, as_minimum: bool) -> Result<(), CycleError> {
        let edge = self.g.edge(e0);
        let (start, next) = (Node::Var(edge.var), Node::Check(edge.check));
        let (s, n) = (self.slot(start), self.slot(next));
        self.on_path[s] = true;
        self.on_path[n] = true;
        self.path.push(e0);
        let res = self.dfs(start, next, as_minimum.then_some(e0));
        self.path.pop();
        self.on_path[s] = false;
        self.on_path[n] = false;
        res
    }
}

/// Every distinct simple cycle of length at most `max_len`, optionally only
/// those through a given node or edge, in canonical order.
///
/// `cap` bounds the number of cycles collected; exceeding it is an error.
pub fn enumerate_cycles(
    g: &TannerGraph,
    max_len: usize,
    through: Option<Through>,
    cap: Option<usize>,
) -> Result<Vec<Cycle>, CycleError> {
    if max_len < 4 || max_len % 2 == 1 {
        return Err(CycleError::BadMaxLen(max_len));
    }
    let mut search = Search {
        g,
        max_len,
        cap,
        on_path: vec![false; g.num_vars() + g.num_checks()],
        path: Vec::with_capacity(max_len),
        out: BTreeSet::new(),
    };
    match through {
        None => {
            for e in 0..g.num_edges() {
                search.search_from_edge(e, true)?;
            }
        }
        Some(Through::Edge(e)) => {
            if e >= g.num_edges() {
                return Err(CycleError::UnknownEdge(e));
            }
            search.search_from_edge(e, false)?;
        }
        Some(Through::Node(node)) => {
            for &e in g.incident(node) {
                search.search_from_edge(e, false)?;
            }
        }
    }
    Ok(search.out.into_iter().collect())
}

/// Length of the shortest cycle, or `None` for a forest.
///
/// Breadth-first search from every node; a non-tree edge between `u` and `w`
/// closes a cycle of length at most `dist(u) + dist(w) + 1`, and the minimum
/// of these bounds over all roots is exact.
pub fn girth(g: &TannerGraph) -> Option<usize> {
    let nv = g.num_vars();
    let total = nv + g.num_checks();
    let slot = |node: Node| match node {
        Node::Var(v) => v,
        Node::Check(c) => nv + c,
    };
    let node_of = |s: usize| {
        if s < nv {
            Node::Var(s)
        } else {
            Node::Check(s - nv)
        }
    };
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; total];
    let mut parent_edge = vec![usize::MAX; total];
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();
    for root in 0..total {
        for &s in &touched {
            dist[s] = usize::MAX;
            parent_edge[s] = usize::MAX;
        }
        touched.clear();
        queue.clear();
        dist[root] = 0;
        touched.push(root);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] >= best {
                break;
            }
            let un = node_of(u);
            for &e in g.incident(un) {
                if e == parent_edge[u] {
                    continue;
                }
                let w = slot(g.edge(e).other(un));
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent_edge[w] = e;
                    touched.push(w);
                    queue.push_back(w);
                } else {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ParityCheckMatrix;

    fn k22() -> TannerGraph {
        TannerGraph::new(&ParityCheckMatrix::from_dense(&[vec![1, 1], vec![1, 1]]).unwrap())
    }

    #[test]
    fn k22_has_one_four_cycle() {
        let g = k22();
        let cycles = enumerate_cycles(&g, 4, None, None).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 4);
        assert_eq!(girth(&g), Some(4));
    }

    #[test]
    fn tree_has_infinite_girth() {
        let h = ParityCheckMatrix::from_dense(&[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let g = TannerGraph::new(&h);
        assert_eq!(girth(&g), None);
        assert!(enumerate_cycles(&g, 12, None, None).unwrap().is_empty());
    }

    #[test]
    fn bad_max_len() {
        assert_eq!(
            enumerate_cycles(&k22(), 5, None, None).unwrap_err(),
            CycleError::BadMaxLen(5)
        );
        assert_eq!(
            enumerate_cycles(&k22(), 2, None, None).unwrap_err(),
            CycleError::BadMaxLen(2)
        );
    }

    #[test]
    fn cap_is_enforced() {
        // K_{3,3}: nine 4-cycles and six 6-cycles
        let h =
            ParityCheckMatrix::from_dense(&[vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]]).unwrap();
        let g = TannerGraph::new(&h);
        assert_eq!(enumerate_cycles(&g, 4, None, None).unwrap().len(), 9);
        assert_eq!(enumerate_cycles(&g, 6, None, None).unwrap().len(), 15);
        assert_eq!(
            enumerate_cycles(&g, 6, None, Some(10)).unwrap_err(),
            CycleError::BudgetExceeded { cap: 10 }
        );
        let through = enumerate_cycles(&g, 6, Some(Through::Edge(0)), None).unwrap();
        assert!(through.iter().all(|c| c.contains(0)));
        // each edge of K_{3,3} lies on 4 four-cycles and 4 six-cycles
        assert_eq!(through.len(), 8);
        let via_node = enumerate_cycles(&g, 4, Some(Through::Node(Node::Var(0))), None).unwrap();
        assert_eq!(via_node.len(), 6);
    }

    #[test]
    fn canonical_form_is_direction_free() {
        let g = k22();
        let c = enumerate_cycles(&g, 4, None, None).unwrap().remove(0);
        let mut rev = c.edges().to_vec();
        rev.reverse();
        rev.rotate_left(1);
        assert_eq!(Cycle::new(&g, rev).unwrap(), c);
        let w = c.walk(&g);
        assert_eq!(w.start(), Node::Var(g.edge(c.edges()[0]).var));
        let nodes = w.nodes(&g);
        assert_eq!(nodes.first(), nodes.last());
    }

    #[test]
    fn non_cycles_rejected() {
        let g = k22();
        assert_eq!(
            Cycle::new(&g, vec![0, 1, 2]).unwrap_err(),
            CycleError::NotACycle
        );
        assert!(Cycle::new(&g, vec![0, 0, 0, 0]).is_err());
    }

    #[test]
    fn walk_validation() {
        let h = ParityCheckMatrix::from_dense(&[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let g = TannerGraph::new(&h);
        // edges: 0 = (b0,c0), 1 = (b1,c0), 2 = (b1,c1), 3 = (b2,c1)
        let w = Walk::new(&g, Node::Var(0), vec![0, 1, 2, 3]).unwrap();
        assert_eq!(w.nodes(&g).last(), Some(&Node::Var(2)));
        assert_eq!(w.reversed(&g).start(), Node::Var(2));
        assert_eq!(
            Walk::new(&g, Node::Var(0), vec![0, 2]).unwrap_err(),
            CycleError::NotAlternating(1)
        );
    }
}
