use super::{cycle_permutation_index, order_in_zn, LiftError, PermutationIndexMatrix};
use crate::graph::{Cycle, Node, ParityCheckMatrix, TannerGraph};

/// A cyclic `N`-lifting of a base code, described by `(H, D)`.
///
/// Copy `s` of variable `b_j` is joined to copy `(s + d_ij) mod N` of check
/// `c_i`. In the lifted matrix, variable copy `(j, s)` is column `j*N + s` and
/// check copy `(i, r)` is row `i*N + r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedCode {
    base: ParityCheckMatrix,
    indices: PermutationIndexMatrix,
}

/// Builds the lifted code after checking that `D` has the support of `H`.
pub fn lift(
    h: &ParityCheckMatrix,
    indices: &PermutationIndexMatrix,
) -> Result<LiftedCode, LiftError> {
    indices.check_support(h)?;
    Ok(LiftedCode {
        base: h.clone(),
        indices: indices.clone(),
    })
}

impl LiftedCode {
    pub fn base(&self) -> &ParityCheckMatrix {
        &self.base
    }

    pub fn indices(&self) -> &PermutationIndexMatrix {
        &self.indices
    }

    pub fn degree(&self) -> usize {
        self.indices.degree()
    }

    /// Lifted length `nN`.
    pub fn n(&self) -> usize {
        self.base.n() * self.degree()
    }

    /// Lifted check count `mN`.
    pub fn m(&self) -> usize {
        self.base.m() * self.degree()
    }

    /// Materializes the `mN x nN` lifted parity-check matrix.
    pub fn matrix(&self) -> ParityCheckMatrix {
        let n = self.degree();
        let mut entries = Vec::with_capacity(self.base.nnz() * n);
        for (i, j, d) in self.indices.support() {
            for s in 0..n {
                entries.push((i * n + (s + d) % n, j * n + s));
            }
        }
        ParityCheckMatrix::from_entries(self.m(), self.n(), entries)
            .expect("lifted entries are in range and unique")
    }

    /// Block `(i, j)` of the lifted matrix as dense rows, all zero where `d_ij` is infinite.
    pub fn block(&self, i: usize, j: usize) -> Vec<Vec<u8>> {
        let n = self.degree();
        let mut out = vec![vec![0u8; n]; n];
        if let Some(d) = self.indices.get(i, j) {
            for s in 0..n {
                out[(s + d) % n][s] = 1;
            }
        }
        out
    }

    /// The sub-matrix of the lifted graph spanned by the inverse image of
    /// `cycle`: every copy of the cycle's nodes joined by every copy of its
    /// edges. Local ids follow the lifted numbering restricted to those nodes.
    pub fn inverse_image(&self, g: &TannerGraph, cycle: &Cycle) -> ParityCheckMatrix {
        let n = self.degree();
        let mut vars: Vec<usize> = cycle.edges().iter().map(|&e| g.edge(e).var).collect();
        let mut checks: Vec<usize> = cycle.edges().iter().map(|&e| g.edge(e).check).collect();
        vars.sort_unstable();
        vars.dedup();
        checks.sort_unstable();
        checks.dedup();
        let vpos = |v: usize| vars.binary_search(&v).unwrap();
        let cpos = |c: usize| checks.binary_search(&c).unwrap();
        let lifted = self.matrix();
        let mut entries = Vec::new();
        for &e in cycle.edges() {
            let edge = g.edge(e);
            for s in 0..n {
                let col = edge.var * n + s;
                for &row in lifted.col(col) {
                    if row / n == edge.check {
                        entries.push((cpos(edge.check) * n + row % n, vpos(edge.var) * n + s));
                    }
                }
            }
        }
        ParityCheckMatrix::from_entries(checks.len() * n, vars.len() * n, entries)
            .expect("inverse image entries are in range and unique")
    }
}

/// The components `A_0 .. A_{N-1}` with `A_d[i][j] = 1` iff `d_ij = d`.
pub fn circulant_components(
    h: &ParityCheckMatrix,
    indices: &PermutationIndexMatrix,
) -> Result<Vec<ParityCheckMatrix>, LiftError> {
    indices.check_support(h)?;
    let n = indices.degree();
    let mut parts = vec![Vec::new(); n];
    for (i, j, d) in indices.support() {
        parts[d].push((i, j));
    }
    Ok(parts
        .into_iter()
        .map(|e| ParityCheckMatrix::from_entries(h.m(), h.n(), e).expect("component entries valid"))
        .collect())
}

/// Block-circulant rearrangement of the lifted matrix: block row `r`, block
/// column `s` holds `A_{(r - s) mod N}`. Row `r*m + i`, column `s*n + j`.
pub fn block_circulant_form(
    h: &ParityCheckMatrix,
    indices: &PermutationIndexMatrix,
) -> Result<ParityCheckMatrix, LiftError> {
    indices.check_support(h)?;
    let n = indices.degree();
    let (m, cols) = (h.m(), h.n());
    let mut entries = Vec::with_capacity(h.nnz() * n);
    for (i, j, d) in indices.support() {
        for s in 0..n {
            let r = (s + d) % n;
            entries.push((r * m + i, s * cols + j));
        }
    }
    Ok(ParityCheckMatrix::from_entries(m * n, cols * n, entries).expect("entries valid"))
}

/// Outcome of tracing a cycle's inverse image through the lifted graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseImageReport {
    /// Permutation index `d` of the cycle.
    pub index: usize,
    /// Predicted order `k = N / gcd(d, N)`.
    pub order: usize,
    /// Number of lifted cycles found by traversal.
    pub count: usize,
    /// Length of each traced lifted cycle, in discovery order.
    pub lengths: Vec<usize>,
}

/// Walks the inverse image of `cycle` in the materialized lifted matrix from
/// each copy of its start node and checks it splits into `N/k` cycles of
/// length `k * l`.
///
/// The traversal only follows ones of the lifted matrix; the order is
/// computed separately and compared.
pub fn trace_inverse_image(
    g: &TannerGraph,
    cycle: &Cycle,
    indices: &PermutationIndexMatrix,
) -> Result<InverseImageReport, LiftError> {
    let code = lift(g.matrix(), indices)?;
    let lifted = code.matrix();
    let n = indices.degree();
    let walk = cycle.walk(g);
    let ell = walk.len();
    let Node::Var(start_var) = walk.start() else {
        unreachable!("cycle walks are variable-rooted")
    };

    // unique neighbour of a lifted node inside the block of base node `to`
    let step = |at: Node, to: Node| -> usize {
        match (at, to) {
            (Node::Var(col), Node::Check(i)) => {
                let hits: Vec<usize> = lifted
                    .col(col)
                    .iter()
                    .copied()
                    .filter(|r| r / n == i)
                    .collect();
                assert_eq!(hits.len(), 1, "lifted block must be a permutation");
                hits[0]
            }
            (Node::Check(row), Node::Var(j)) => {
                let hits: Vec<usize> = lifted
                    .row(row)
                    .iter()
                    .copied()
                    .filter(|c| c / n == j)
                    .collect();
                assert_eq!(hits.len(), 1, "lifted block must be a permutation");
                hits[0]
            }
            _ => unreachable!("Tanner graphs are bipartite"),
        }
    };

    let base_nodes = walk.nodes(g);
    let mut seen = vec![false; n];
    let mut lengths = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let origin = start_var * n + x;
        let mut at = Node::Var(origin);
        let mut steps = 0usize;
        loop {
            for k in 0..ell {
                let to = base_nodes[k + 1];
                let next = step(at, to);
                at = match to {
                    Node::Var(_) => Node::Var(next),
                    Node::Check(_) => Node::Check(next),
                };
            }
            steps += ell;
            let Node::Var(col) = at else { unreachable!() };
            seen[col % n] = true;
            if col == origin {
                break;
            }
            if steps > ell * n {
                return Err(LiftError::Inconsistent("traversal did not close".into()));
            }
        }
        lengths.push(steps);
    }

    let index = cycle_permutation_index(g, cycle, indices)?;
    let order = order_in_zn(index, n);
    let report = InverseImageReport {
        index,
        order,
        count: lengths.len(),
        lengths,
    };
    if report.count * order != n || report.lengths.iter().any(|&l| l != order * ell) {
        return Err(LiftError::Inconsistent(format!(
            "expected {} cycles of length {}, traced {:?}",
            n / order,
            order * ell,
            report.lengths
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_cycles, girth};

    fn square() -> (ParityCheckMatrix, TannerGraph) {
        let h = ParityCheckMatrix::from_dense(&[vec![1, 1], vec![1, 1]]).unwrap();
        let g = TannerGraph::new(&h);
        (h, g)
    }

    #[test]
    fn degree_one_is_identity() {
        let (h, _) = square();
        let d = PermutationIndexMatrix::zeros(&h, 1).unwrap();
        assert_eq!(lift(&h, &d).unwrap().matrix(), h);
    }

    #[test]
    fn zero_indices_give_disjoint_copies() {
        let h =
            ParityCheckMatrix::from_dense(&[vec![1, 1, 0, 1], vec![0, 1, 1, 1], vec![1, 0, 1, 1]])
                .unwrap();
        let d = PermutationIndexMatrix::zeros(&h, 3).unwrap();
        let lifted = lift(&h, &d).unwrap().matrix();
        for (row, col) in lifted.entries() {
            assert_eq!(row % 3, col % 3);
            assert!(h.get(row / 3, col / 3));
        }
        assert_eq!(
            girth(&TannerGraph::new(&lifted)),
            girth(&TannerGraph::new(&h))
        );
    }

    #[test]
    fn single_twelve_cycle() {
        let (h, g) = square();
        let mut d = PermutationIndexMatrix::zeros(&h, 3).unwrap();
        d.set(0, 0, 1).unwrap();
        let lifted = lift(&h, &d).unwrap().matrix();
        let lg = TannerGraph::new(&lifted);
        let cycles = enumerate_cycles(&lg, 12, None, None).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 12);
        let c = &enumerate_cycles(&g, 4, None, None).unwrap()[0];
        let report = trace_inverse_image(&g, c, &d).unwrap();
        assert_eq!(
            (report.order, report.count, report.lengths.clone()),
            (3, 1, vec![12])
        );
    }

    #[test]
    fn inverse_image_examples() {
        let (h, g) = square();
        let c = &enumerate_cycles(&g, 4, None, None).unwrap()[0];
        let report =
            trace_inverse_image(&g, c, &PermutationIndexMatrix::zeros(&h, 4).unwrap()).unwrap();
        assert_eq!(report.lengths, vec![4; 4]);

        let mut d = PermutationIndexMatrix::zeros(&h, 4).unwrap();
        d.set(0, 0, 2).unwrap();
        let report = trace_inverse_image(&g, c, &d).unwrap();
        assert_eq!((report.order, report.lengths.clone()), (2, vec![8, 8]));

        let mut d = PermutationIndexMatrix::zeros(&h, 5).unwrap();
        d.set(1, 1, 2).unwrap();
        let report = trace_inverse_image(&g, c, &d).unwrap();
        assert_eq!((report.order, report.lengths.clone()), (5, vec![20]));
    }

    #[test]
    fn blocks_are_shifted_identities() {
        let (h, _) = square();
        let mut d = PermutationIndexMatrix::zeros(&h, 4).unwrap();
        d.set(1, 0, 3).unwrap();
        let code = lift(&h, &d).unwrap();
        let b = code.block(1, 0);
        for s in 0..4 {
            assert_eq!(b[(s + 3) % 4][s], 1);
            assert_eq!(b.iter().map(|r| r[s]).sum::<u8>(), 1);
        }
        let lifted = code.matrix();
        for s in 0..4 {
            assert!(lifted.get(4 + (s + 3) % 4, s));
        }
    }

    #[test]
    fn block_circulant_layout() {
        let h = ParityCheckMatrix::from_dense(&[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let d = PermutationIndexMatrix::zeros(&h, 2).unwrap();
        let bc = block_circulant_form(&h, &d).unwrap();
        let dense = bc.to_dense();
        let hd = h.to_dense();
        for i in 0..2 {
            assert_eq!(&dense[i][..3], &hd[i][..]);
            assert_eq!(&dense[2 + i][3..], &hd[i][..]);
            assert!(dense[i][3..].iter().all(|&v| v == 0));
            assert!(dense[2 + i][..3].iter().all(|&v| v == 0));
        }
        let parts = circulant_components(&h, &d).unwrap();
        assert_eq!(parts[0], h);
        assert_eq!(parts[1].nnz(), 0);
    }

    #[test]
    fn support_mismatch_rejected() {
        let (h, _) = square();
        let other = ParityCheckMatrix::from_dense(&[vec![1, 0], vec![1, 1]]).unwrap();
        let d = PermutationIndexMatrix::zeros(&other, 2).unwrap();
        assert!(matches!(
            lift(&h, &d),
            Err(LiftError::SupportMismatch { .. })
        ));
        assert!(block_circulant_form(&h, &d).is_err());
    }
}
