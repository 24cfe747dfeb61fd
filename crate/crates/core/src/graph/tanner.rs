use std::collections::BTreeMap;

use thiserror::Error;

use super::ParityCheckMatrix;

/// Edge identifier, stable for the lifetime of a [`TannerGraph`].
pub type EdgeId = usize;

/// A node of a Tanner graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Var(usize),
    Check(usize),
}

/// An edge `{b_var, c_check}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub var: usize,
    pub check: usize,
}

impl Edge {
    pub fn touches(&self, node: Node) -> bool {
        match node {
            Node::Var(v) => self.var == v,
            Node::Check(c) => self.check == c,
        }
    }

    /// The endpoint opposite to `node`.
    pub fn other(&self, node: Node) -> Node {
        match node {
            Node::Var(_) => Node::Check(self.check),
            Node::Check(_) => Node::Var(self.var),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown variable node {0}")]
    UnknownVar(usize),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
}

/// Bipartite graph of a parity-check matrix.
///
/// Edges are numbered variable-major: all edges of `b_0` by ascending check,
/// then `b_1`, and so on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TannerGraph {
    h: ParityCheckMatrix,
    edges: Vec<Edge>,
    var_edges: Vec<Vec<EdgeId>>,
    check_edges: Vec<Vec<EdgeId>>,
    index: BTreeMap<(usize, usize), EdgeId>,
}

impl TannerGraph {
    pub fn new(h: &ParityCheckMatrix) -> Self {
        let mut edges = Vec::with_capacity(h.nnz());
        let mut var_edges = vec![Vec::new(); h.n()];
        let mut check_edges = vec![Vec::new(); h.m()];
        let mut index = BTreeMap::new();
        for (var, checks) in h.cols().iter().enumerate() {
            for &check in checks {
                let id = edges.len();
                edges.push(Edge { var, check });
                var_edges[var].push(id);
                check_edges[check].push(id);
                index.insert((var, check), id);
            }
        }
        TannerGraph {
            h: h.clone(),
            edges,
            var_edges,
            check_edges,
            index,
        }
    }

    pub fn matrix(&self) -> &ParityCheckMatrix {
        &self.h
    }

    pub fn num_vars(&self) -> usize {
        self.var_edges.len()
    }

    pub fn num_checks(&self) -> usize {
        self.check_edges.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id]
    }

    pub fn edge_id(&self, var: usize, check: usize) -> Option<EdgeId> {
        self.index.get(&(var, check)).copied()
    }

    pub fn var_edges(&self, var: usize) -> &[EdgeId] {
        &self.var_edges[var]
    }

    pub fn check_edges(&self, check: usize) -> &[EdgeId] {
        &self.check_edges[check]
    }

    /// Edges incident to `node`.
    pub fn incident(&self, node: Node) -> &[EdgeId] {
        match node {
            Node::Var(v) => &self.var_edges[v],
            Node::Check(c) => &self.check_edges[c],
        }
    }

    pub fn degree(&self, node: Node) -> usize {
        self.incident(node).len()
    }

    /// Subgraph induced by `vars` together with every check adjacent to them.
    ///
    /// The returned graph numbers its variables in ascending global order and
    /// its checks likewise; `var_map`, `check_map` and `edge_map` translate
    /// back to ids of `self`.
    pub fn induced_subgraph(&self, vars: &[usize]) -> Result<InducedSubgraph, GraphError> {
        let mut vars: Vec<usize> = vars.to_vec();
        vars.sort_unstable();
        vars.dedup();
        if let Some(&v) = vars.iter().find(|&&v| v >= self.num_vars()) {
            return Err(GraphError::UnknownVar(v));
        }
        let mut checks: Vec<usize> = vars
            .iter()
            .flat_map(|&v| self.var_edges[v].iter().map(|&e| self.edges[e].check))
            .collect();
        checks.sort_unstable();
        checks.dedup();

        let local_check: BTreeMap<usize, usize> =
            checks.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let mut local_entries = Vec::new();
        for (lv, &v) in vars.iter().enumerate() {
            for &e in &self.var_edges[v] {
                local_entries.push((local_check[&self.edges[e].check], lv));
            }
        }
        let graph = if checks.is_empty() {
            None
        } else {
            let h = ParityCheckMatrix::from_entries(checks.len(), vars.len(), local_entries)
                .expect("subgraph entries are in range and unique");
            Some(TannerGraph::new(&h))
        };
        let edge_map = graph
            .as_ref()
            .map(|g| {
                g.edges
                    .iter()
                    .map(|le| self.index[&(vars[le.var], checks[le.check])])
                    .collect()
            })
            .unwrap_or_default();
        Ok(InducedSubgraph {
            graph,
            var_map: vars,
            check_map: checks,
            edge_map,
        })
    }
}

/// Result of [`TannerGraph::induced_subgraph`].
///
/// `graph` is `None` when the variables touch no check (in particular for an
/// empty variable set), since a parity-check matrix needs at least one row
/// and column.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Option<TannerGraph>,
    pub var_map: Vec<usize>,
    pub check_map: Vec<usize>,
    pub edge_map: Vec<EdgeId>,
}

impl InducedSubgraph {
    /// Degree of each local check inside the subgraph.
    pub fn check_degrees(&self) -> Vec<usize> {
        match &self.graph {
            Some(g) => (0..g.num_checks())
                .map(|c| g.check_edges(c).len())
                .collect(),
            None => Vec::new(),
        }
    }

    /// Global ids of the checks with odd degree in the subgraph.
    pub fn odd_checks(&self) -> Vec<usize> {
        self.check_degrees()
            .iter()
            .zip(&self.check_map)
            .filter(|(d, _)| *d % 2 == 1)
            .map(|(_, &c)| c)
            .collect()
    }

    pub fn num_odd_checks(&self) -> usize {
        self.odd_checks().len()
    }
}
