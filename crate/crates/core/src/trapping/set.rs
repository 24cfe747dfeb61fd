use super::TrappingError;
use crate::graph::{enumerate_cycles, girth, Cycle, EdgeId, InducedSubgraph, TannerGraph};

/// Default cycle length bound for a graph: girth + 4, or 4 for a forest.
pub fn default_cycle_limit(g: &TannerGraph) -> usize {
    girth(g).map_or(4, |l| l + 4)
}

/// An `(a, b)` trapping set: `a` variables whose induced subgraph has `b`
/// odd-degree checks, together with the subgraph's short cycles `C(t)`.
#[derive(Debug, Clone)]
pub struct TrappingSet {
    vars: Vec<usize>,
    subgraph: InducedSubgraph,
    odd_checks: Vec<usize>,
    edges: Vec<EdgeId>,
    cycles: Vec<Cycle>,
    max_cycle_len: usize,
    critical_number: Option<usize>,
}

impl TrappingSet {
    /// Builds the set on `g`; `b` and `C(t)` (cycles up to `max_cycle_len`)
    /// are computed from the induced subgraph. Edge ids are those of `g`.
    pub fn new(
        g: &TannerGraph,
        vars: &[usize],
        max_cycle_len: usize,
    ) -> Result<Self, TrappingError> {
        let subgraph = g.induced_subgraph(vars)?;
        if subgraph.var_map.is_empty() {
            return Err(TrappingError::Empty);
        }
        let mut cycles: Vec<Cycle> = match subgraph.graph.as_ref() {
            Some(local) => enumerate_cycles(local, max_cycle_len, None, None)?
                .iter()
                .map(|c| c.map_edges(&subgraph.edge_map))
                .collect(),
            None => Vec::new(),
        };
        cycles.sort();
        let mut edges = subgraph.edge_map.clone();
        edges.sort_unstable();
        Ok(TrappingSet {
            vars: subgraph.var_map.clone(),
            odd_checks: subgraph.odd_checks(),
            subgraph,
            edges,
            cycles,
            max_cycle_len,
            critical_number: None,
        })
    }

    pub fn with_critical_number(mut self, critical_number: Option<usize>) -> Self {
        self.critical_number = critical_number;
        self
    }

    /// Number of variables.
    pub fn a(&self) -> usize {
        self.vars.len()
    }

    /// Number of odd-degree checks in the induced subgraph.
    pub fn b(&self) -> usize {
        self.odd_checks.len()
    }

    pub fn label(&self) -> (usize, usize) {
        (self.a(), self.b())
    }

    /// Variable ids, ascending.
    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    /// Global ids of the odd-degree checks.
    pub fn odd_checks(&self) -> &[usize] {
        &self.odd_checks
    }

    pub fn subgraph(&self) -> &InducedSubgraph {
        &self.subgraph
    }

    /// Edge ids of the induced subgraph, ascending.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// `C(t)`: the cycles of the induced subgraph, sorted.
    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn max_cycle_len(&self) -> usize {
        self.max_cycle_len
    }

    pub fn critical_number(&self) -> Option<usize> {
        self.critical_number
    }

    /// Edge ids appearing in at least one cycle of `C(t)`, ascending.
    pub fn cycle_edges(&self) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = self
            .cycles
            .iter()
            .flat_map(|c| c.edges().iter().copied())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// The cycles of the set's induced subgraph up to `max_len`, in the parent
/// graph's edge ids.
pub fn cycles_of(t: &TrappingSet, max_len: usize) -> Result<Vec<Cycle>, TrappingError> {
    let Some(local) = t.subgraph.graph.as_ref() else {
        return Ok(Vec::new());
    };
    let mut cycles: Vec<Cycle> = enumerate_cycles(local, max_len, None, None)?
        .iter()
        .map(|c| c.map_edges(&t.subgraph.edge_map))
        .collect();
    cycles.sort();
    Ok(cycles)
}

/// `C^e(t)`: the cycles of `C(t)` that contain `e`.
pub fn edge_cycles(t: &TrappingSet, e: EdgeId) -> Result<Vec<&Cycle>, TrappingError> {
    if !t.contains_edge(e) {
        return Err(TrappingError::EdgeNotInSet(e));
    }
    Ok(t.cycles.iter().filter(|c| c.contains(e)).collect())
}
