//! Intentional edge swapping: picks edges of trapping-set cycles and assigns
//! them nonzero cyclic permutation indices so those cycles have order above
//! one in the lifted graph.
//!
//! Sets are processed in catalog order. For each set, a greedy cover of its
//! still-order-one cycles is drawn from edges not touched by earlier sets
//! (phase 1); each picked edge gets the smallest index that keeps every
//! cycle of the set through it at order above one. Cycles that phase 1
//! cannot handle go to phase 2, which may reuse edges of earlier sets as
//! long as no constraint cycle of any processed set through the edge drops
//! to order one.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Cycle, EdgeId, TannerGraph};
use crate::lifting::{cycle_order, LiftError, PermutationIndexMatrix};
use crate::trapping::{TrappingSet, TrappingSetCatalog};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IesError {
    #[error("lifting degree must be at least 2, got {0}")]
    BadDegree(usize),
    #[error("catalog refers to edge {0}, which the graph does not have")]
    UnknownEdge(EdgeId),
    #[error("catalog refers to variable {0}, which the graph does not have")]
    UnknownVar(usize),
    #[error("cycle {0} has no candidate edge")]
    Uncoverable(usize),
    #[error(transparent)]
    Lift(#[from] LiftError),
}

/// What to do when a set cannot be fully handled even in phase 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IesMode {
    /// Record the failure and move on to the next set.
    #[default]
    Continue,
    /// Stop the whole run, leaving later sets untouched.
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetStatus {
    /// Every cycle of the set has order above one.
    Eliminated,
    /// Some cycles of the set still have order one.
    PartiallyEliminated,
    /// Never processed because a strict run stopped earlier.
    Untouched,
}

impl SetStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SetStatus::Eliminated => "eliminated",
            SetStatus::PartiallyEliminated => "partially-eliminated",
            SetStatus::Untouched => "untouched",
        }
    }
}

/// Per-set line of an [`IesReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetReport {
    pub vars: Vec<usize>,
    pub a: usize,
    pub b: usize,
    pub status: SetStatus,
    /// Edges given an index while processing this set, with the index.
    pub swapped: Vec<(EdgeId, usize)>,
    /// Whether phase 2 was entered.
    pub used_phase2: bool,
    /// `(length, order)` of each cycle of the set under the final indices.
    pub cycle_orders: Vec<(usize, usize)>,
    /// Whether the set's induced subgraph still has a copy in the lifted graph.
    pub has_lifted_copy: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IesReport {
    pub degree: usize,
    pub mode: IesMode,
    pub sets: Vec<SetReport>,
    /// A strict run stopped before processing every set.
    pub stopped: bool,
}

impl IesReport {
    pub fn all_eliminated(&self) -> bool {
        self.sets.iter().all(|s| s.status == SetStatus::Eliminated)
    }

    pub fn count(&self, status: SetStatus) -> usize {
        self.sets.iter().filter(|s| s.status == status).count()
    }

    /// Cycles across all sets still at order one.
    pub fn surviving_cycles(&self) -> usize {
        self.sets
            .iter()
            .map(|s| s.cycle_orders.iter().filter(|&&(_, o)| o == 1).count())
            .sum()
    }

    /// Sets whose induced subgraph still has a copy in the lifted graph.
    pub fn sets_with_lifted_copy(&self) -> usize {
        self.sets.iter().filter(|s| s.has_lifted_copy).count()
    }

    pub fn to_text(&self, g: &TannerGraph) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "lifting degree {}", self.degree);
        if self.sets.is_empty() {
            s.push_str("nothing to do: empty catalog\n");
            return s;
        }
        let _ = writeln!(
            s,
            "sets {}: eliminated {}, partially eliminated {}, untouched {}",
            self.sets.len(),
            self.count(SetStatus::Eliminated),
            self.count(SetStatus::PartiallyEliminated),
            self.count(SetStatus::Untouched)
        );
        let _ = writeln!(
            s,
            "cycles still at order 1: {}; sets with a copy in the lift: {}",
            self.surviving_cycles(),
            self.sets_with_lifted_copy()
        );
        if self.stopped {
            s.push_str("stopped early (strict mode)\n");
        }
        for (k, set) in self.sets.iter().enumerate() {
            let vars: Vec<String> = set.vars.iter().map(usize::to_string).collect();
            let _ = writeln!(
                s,
                "set {} ({},{}) vars {}: {}{}{}",
                k + 1,
                set.a,
                set.b,
                vars.join(","),
                set.status.as_str(),
                if set.used_phase2 { ", phase 2" } else { "" },
                if set.has_lifted_copy {
                    ", copy survives in lift"
                } else {
                    ""
                }
            );
            for &(e, d) in &set.swapped {
                let edge = g.edge(e);
                let _ = writeln!(
                    s,
                    "  swap edge {e} (v{}, c{}) index {d}",
                    edge.var, edge.check
                );
            }
            let orders: Vec<String> = set
                .cycle_orders
                .iter()
                .map(|(l, o)| format!("{l}:{o}"))
                .collect();
            let _ = writeln!(s, "  cycle length:order {}", orders.join(" "));
        }
        s
    }
}

/// Output of [`run_ies`].
#[derive(Debug, Clone)]
pub struct IesDesign {
    pub indices: PermutationIndexMatrix,
    /// Edge to index for every swapped edge.
    pub index_set: BTreeMap<EdgeId, usize>,
    pub report: IesReport,
}

/// Greedy max-coverage: repeatedly takes the candidate lying on the most
/// uncovered cycles (smallest edge id on ties). Returns the picks and the
/// positions of cycles no candidate touches.
fn greedy_cover(cycles: &[&Cycle], candidates: &BTreeSet<EdgeId>) -> (Vec<EdgeId>, Vec<usize>) {
    let mut covered = vec![false; cycles.len()];
    let uncoverable: Vec<usize> = (0..cycles.len())
        .filter(|&k| !cycles[k].edges().iter().any(|e| candidates.contains(e)))
        .collect();
    for &k in &uncoverable {
        covered[k] = true;
    }
    let mut picks = Vec::new();
    while covered.iter().any(|c| !c) {
        let mut best: Option<(usize, EdgeId)> = None;
        for &e in candidates {
            let gain = (0..cycles.len())
                .filter(|&k| !covered[k] && cycles[k].contains(e))
                .count();
            if gain > 0 && best.is_none_or(|(g, _)| gain > g) {
                best = Some((gain, e));
            }
        }
        let Some((_, e)) = best else { break };
        for (k, c) in cycles.iter().enumerate() {
            if c.contains(e) {
                covered[k] = true;
            }
        }
        picks.push(e);
    }
    (picks, uncoverable)
}

/// Greedy cover of `cycles` by edges from `candidates`.
pub fn select_edges(cycles: &[Cycle], candidates: &[EdgeId]) -> Result<Vec<EdgeId>, IesError> {
    let refs: Vec<&Cycle> = cycles.iter().collect();
    let candidates: BTreeSet<EdgeId> = candidates.iter().copied().collect();
    let (picks, uncoverable) = greedy_cover(&refs, &candidates);
    match uncoverable.first() {
        Some(&k) => Err(IesError::Uncoverable(k)),
        None => Ok(picks),
    }
}

/// Sets `D[e]` to the smallest `v` in `1..N` that leaves every constraint
/// cycle with order above one. On failure `D[e]` is restored and `None`
/// returned.
pub fn assign_index<'a>(
    g: &TannerGraph,
    e: EdgeId,
    constraints: impl IntoIterator<Item = &'a Cycle> + Clone,
    indices: &mut PermutationIndexMatrix,
) -> Result<Option<usize>, IesError> {
    let original = indices.edge_index(g, e).ok_or(LiftError::InfiniteEdge(e))?;
    for v in 1..indices.degree() {
        indices.set_edge(g, e, v)?;
        let mut ok = true;
        for c in constraints.clone() {
            if cycle_order(g, c, indices)? == 1 {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(v));
        }
    }
    indices.set_edge(g, e, original)?;
    Ok(None)
}

/// Whether the subgraph induced by `vars` has a copy in the lifted graph,
/// i.e. whether node copies can be chosen consistently along every edge.
pub fn has_lifted_copy(
    g: &TannerGraph,
    t: &TrappingSet,
    indices: &PermutationIndexMatrix,
) -> Result<bool, IesError> {
    let n = indices.degree();
    // potential of each variable and check; an edge (v, c) with index d
    // joins copy s of v to copy s + d of c
    let mut var_pot: BTreeMap<usize, usize> = BTreeMap::new();
    let mut check_pot: BTreeMap<usize, usize> = BTreeMap::new();
    let in_set: BTreeSet<usize> = t.vars().iter().copied().collect();
    for &root in t.vars() {
        if var_pot.contains_key(&root) {
            continue;
        }
        var_pot.insert(root, 0);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let pv = var_pot[&v];
            for &e in g.var_edges(v) {
                let c = g.edge(e).check;
                let d = indices.edge_index(g, e).ok_or(LiftError::InfiniteEdge(e))? % n;
                let pc = (pv + d) % n;
                match check_pot.get(&c) {
                    Some(&p) if p != pc => return Ok(false),
                    Some(_) => continue,
                    None => {
                        check_pot.insert(c, pc);
                    }
                }
                for &f in g.check_edges(c) {
                    let w = g.edge(f).var;
                    if w == v || !in_set.contains(&w) {
                        continue;
                    }
                    let dw = indices.edge_index(g, f).ok_or(LiftError::InfiniteEdge(f))? % n;
                    let pw = (pc + n - dw) % n;
                    match var_pot.get(&w) {
                        Some(&p) if p != pw => return Ok(false),
                        Some(_) => {}
                        None => {
                            var_pot.insert(w, pw);
                            stack.push(w);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// What processing one set did.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetOutcome {
    pub swapped: Vec<(EdgeId, usize)>,
    pub used_phase2: bool,
    /// Phase 2 ran out of candidates with cycles still at order one.
    pub stuck: bool,
}

/// Mutable state of an edge-swapping run.
#[derive(Debug, Clone)]
pub struct IesState<'g> {
    graph: &'g TannerGraph,
    indices: PermutationIndexMatrix,
    processed: BTreeSet<EdgeId>,
    processed_cycles: Vec<Cycle>,
    swapped: BTreeSet<EdgeId>,
    index_set: BTreeMap<EdgeId, usize>,
}

impl<'g> IesState<'g> {
    /// All-zero indices of degree `degree` on the support of the graph.
    pub fn new(graph: &'g TannerGraph, degree: usize) -> Result<Self, IesError> {
        if degree < 2 {
            return Err(IesError::BadDegree(degree));
        }
        Ok(IesState {
            graph,
            indices: PermutationIndexMatrix::zeros(graph.matrix(), degree)?,
            processed: BTreeSet::new(),
            processed_cycles: Vec::new(),
            swapped: BTreeSet::new(),
            index_set: BTreeMap::new(),
        })
    }

    pub fn indices(&self) -> &PermutationIndexMatrix {
        &self.indices
    }

    pub fn processed(&self) -> &BTreeSet<EdgeId> {
        &self.processed
    }

    pub fn swapped(&self) -> &BTreeSet<EdgeId> {
        &self.swapped
    }

    pub fn index_set(&self) -> &BTreeMap<EdgeId, usize> {
        &self.index_set
    }

    fn order(&self, c: &Cycle) -> Result<usize, IesError> {
        Ok(cycle_order(self.graph, c, &self.indices)?)
    }

    fn order_one(&self, cycles: &[Cycle]) -> Result<Vec<usize>, IesError> {
        let mut out = Vec::new();
        for (k, c) in cycles.iter().enumerate() {
            if self.order(c)? == 1 {
                out.push(k);
            }
        }
        Ok(out)
    }

    fn record(&mut self, e: EdgeId, v: usize, outcome: &mut SetOutcome) {
        self.swapped.insert(e);
        self.index_set.insert(e, v);
        outcome.swapped.push((e, v));
    }

    /// Runs both phases for one trapping set.
    pub fn process(&mut self, t: &TrappingSet) -> Result<SetOutcome, IesError> {
        let g = self.graph;
        if let Some(&v) = t.vars().iter().find(|&&v| v >= g.num_vars()) {
            return Err(IesError::UnknownVar(v));
        }
        let cycles = t.cycles();
        if let Some(&e) = cycles
            .iter()
            .flat_map(|c| c.edges())
            .find(|&&e| e >= g.num_edges())
        {
            return Err(IesError::UnknownEdge(e));
        }
        let current: BTreeSet<EdgeId> = t.cycle_edges().into_iter().collect();
        let mut outcome = SetOutcome {
            swapped: Vec::new(),
            used_phase2: false,
            stuck: false,
        };

        // phase 1: edges untouched by earlier sets
        let mut candidates: BTreeSet<EdgeId> =
            current.difference(&self.processed).copied().collect();
        loop {
            let pending = self.order_one(cycles)?;
            let targets: Vec<&Cycle> = pending.iter().map(|&k| &cycles[k]).collect();
            let (cover, _) = greedy_cover(&targets, &candidates);
            if cover.is_empty() {
                break;
            }
            let mut rejected = false;
            for e in cover {
                let through: Vec<&Cycle> = cycles.iter().filter(|c| c.contains(e)).collect();
                match assign_index(g, e, through.iter().copied(), &mut self.indices)? {
                    Some(v) => {
                        self.record(e, v, &mut outcome);
                        candidates.remove(&e);
                    }
                    None => {
                        candidates.remove(&e);
                        rejected = true;
                        break;
                    }
                }
            }
            if !rejected {
                break;
            }
        }
        self.processed.extend(current.iter().copied());
        self.processed_cycles.extend(cycles.iter().cloned());

        // phase 2: any edge not yet swapped, constrained by every processed cycle
        let mut pending = self.order_one(cycles)?;
        while !pending.is_empty() {
            outcome.used_phase2 = true;
            let mut cands: Vec<EdgeId> = pending
                .iter()
                .flat_map(|&k| cycles[k].edges().iter().copied())
                .filter(|e| !self.swapped.contains(e))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            cands.sort_by_key(|&e| {
                (
                    std::cmp::Reverse(cycles.iter().filter(|c| c.contains(e)).count()),
                    e,
                )
            });
            let mut assigned = false;
            for e in cands {
                let through: Vec<&Cycle> = self
                    .processed_cycles
                    .iter()
                    .filter(|c| c.contains(e))
                    .collect();
                if let Some(v) = assign_index(g, e, through.iter().copied(), &mut self.indices)? {
                    self.record(e, v, &mut outcome);
                    assigned = true;
                    break;
                }
            }
            if !assigned {
                outcome.stuck = true;
                break;
            }
            pending = self.order_one(cycles)?;
        }
        Ok(outcome)
    }
}

/// Runs edge swapping over the whole catalog at lifting degree `degree`.
pub fn run_ies(
    g: &TannerGraph,
    catalog: &TrappingSetCatalog,
    degree: usize,
    mode: IesMode,
) -> Result<IesDesign, IesError> {
    let mut state = IesState::new(g, degree)?;
    let mut outcomes: Vec<Option<SetOutcome>> = Vec::with_capacity(catalog.len());
    let mut stopped = false;
    for t in catalog {
        if stopped {
            outcomes.push(None);
            continue;
        }
        let out = state.process(t)?;
        stopped = out.stuck && mode == IesMode::Strict;
        outcomes.push(Some(out));
    }
    let mut sets = Vec::with_capacity(catalog.len());
    for (t, out) in catalog.iter().zip(outcomes) {
        let mut cycle_orders = Vec::with_capacity(t.cycles().len());
        for c in t.cycles() {
            cycle_orders.push((c.len(), state.order(c)?));
        }
        let status = match &out {
            None => SetStatus::Untouched,
            Some(_) if cycle_orders.iter().all(|&(_, o)| o > 1) => SetStatus::Eliminated,
            Some(_) => SetStatus::PartiallyEliminated,
        };
        let (swapped, used_phase2) =
            out.map_or((Vec::new(), false), |o| (o.swapped, o.used_phase2));
        sets.push(SetReport {
            vars: t.vars().to_vec(),
            a: t.a(),
            b: t.b(),
            status,
            swapped,
            used_phase2,
            cycle_orders,
            has_lifted_copy: has_lifted_copy(g, t, &state.indices)?,
        });
    }
    Ok(IesDesign {
        index_set: state.index_set.clone(),
        indices: state.indices,
        report: IesReport {
            degree,
            mode,
            sets,
            stopped,
        },
    })
}
