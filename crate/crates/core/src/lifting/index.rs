use std::fmt::Write as _;

use num_integer::Integer;

use super::LiftError;
use crate::graph::{Cycle, EdgeId, Node, ParityCheckMatrix, TannerGraph, Walk};

/// `I^(d1) x I^(d2) = I^(d1 + d2 mod N)`.
pub fn compose_shift_indices(d1: usize, d2: usize, degree: usize) -> usize {
    debug_assert!(d1 < degree && d2 < degree);
    (d1 + d2) % degree
}

/// Order of `d` in the additive group `Z_N`.
pub fn order_in_zn(d: usize, degree: usize) -> usize {
    degree / (d % degree).gcd(&degree)
}

/// Edge permutation indices `D` of a cyclic `N`-lifting.
///
/// Entry `(i, j)` is `Some(d)` with `d < N` where `h_ij = 1` and `None`
/// (the infinity index, an all-zero block) elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermutationIndexMatrix {
    degree: usize,
    m: usize,
    n: usize,
    entries: Vec<Option<usize>>,
}

impl PermutationIndexMatrix {
    /// All-zero indices on the support of `h`: `N` disjoint copies of the base graph.
    pub fn zeros(h: &ParityCheckMatrix, degree: usize) -> Result<Self, LiftError> {
        if degree == 0 {
            return Err(LiftError::BadDegree(degree));
        }
        let mut entries = vec![None; h.m() * h.n()];
        for (i, j) in h.entries() {
            entries[i * h.n() + j] = Some(0);
        }
        Ok(PermutationIndexMatrix {
            degree,
            m: h.m(),
            n: h.n(),
            entries,
        })
    }

    /// Builds from explicit rows of optional indices.
    pub fn from_rows(degree: usize, rows: &[Vec<Option<usize>>]) -> Result<Self, LiftError> {
        if degree == 0 {
            return Err(LiftError::BadDegree(degree));
        }
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(m * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(LiftError::Shape {
                    expected: (m, n),
                    found: (i, row.len()),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if let Some(d) = v {
                    if d >= degree {
                        return Err(LiftError::IndexOutOfRange {
                            row: i,
                            col: j,
                            value: d,
                            degree,
                        });
                    }
                }
                entries.push(v);
            }
        }
        Ok(PermutationIndexMatrix {
            degree,
            m,
            n,
            entries,
        })
    }

    /// Lifting degree `N`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn get(&self, i: usize, j: usize) -> Option<usize> {
        self.entries[i * self.n + j]
    }

    /// Sets a finite entry. The position must already be in the support.
    pub fn set(&mut self, i: usize, j: usize, d: usize) -> Result<(), LiftError> {
        if d >= self.degree {
            return Err(LiftError::IndexOutOfRange {
                row: i,
                col: j,
                value: d,
                degree: self.degree,
            });
        }
        let slot = &mut self.entries[i * self.n + j];
        if slot.is_none() {
            return Err(LiftError::SupportMismatch { row: i, col: j });
        }
        *slot = Some(d);
        Ok(())
    }

    /// Index of a Tanner-graph edge.
    pub fn edge_index(&self, g: &TannerGraph, e: EdgeId) -> Option<usize> {
        let edge = g.edge(e);
        self.get(edge.check, edge.var)
    }

    pub fn set_edge(&mut self, g: &TannerGraph, e: EdgeId, d: usize) -> Result<(), LiftError> {
        let edge = g.edge(e);
        self.set(edge.check, edge.var, d)
    }

    /// Finite positions in row-major order.
    pub fn support(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter_map(move |(k, v)| v.map(|d| (k / self.n, k % self.n, d)))
    }

    /// Errors with the first position where the finite support differs from `h`.
    pub fn check_support(&self, h: &ParityCheckMatrix) -> Result<(), LiftError> {
        if (self.m, self.n) != (h.m(), h.n()) {
            return Err(LiftError::Shape {
                expected: (h.m(), h.n()),
                found: (self.m, self.n),
            });
        }
        for i in 0..self.m {
            for j in 0..self.n {
                if self.get(i, j).is_some() != h.get(i, j) {
                    return Err(LiftError::SupportMismatch { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    /// Parses the D-matrix text format: `m n N`, then `m` rows of `n` tokens,
    /// each a decimal index or `-` for infinity.
    pub fn parse(text: &str) -> Result<Self, LiftError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (no, header) = lines
            .next()
            .ok_or_else(|| LiftError::format(0, "empty input"))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| LiftError::format(no, format!("invalid header token {t:?}")))
            })
            .collect::<Result<_, _>>()?;
        let [m, n, degree] = nums[..] else {
            return Err(LiftError::format(no, "header must be \"m n N\""));
        };
        if degree == 0 {
            return Err(LiftError::format(no, "lifting degree must be positive"));
        }
        let mut rows = Vec::with_capacity(m);
        for i in 0..m {
            let (no, line) = lines
                .next()
                .ok_or_else(|| LiftError::format(0, format!("expected {m} rows, found {i}")))?;
            let row: Vec<Option<usize>> = line
                .split_whitespace()
                .map(|t| match t {
                    "-" => Ok(None),
                    _ => match t.parse::<usize>() {
                        Ok(d) if d < degree => Ok(Some(d)),
                        Ok(d) => Err(LiftError::format(
                            no,
                            format!("index {d} not in 0..{degree}"),
                        )),
                        Err(_) => Err(LiftError::format(no, format!("invalid token {t:?}"))),
                    },
                })
                .collect::<Result<_, _>>()?;
            if row.len() != n {
                return Err(LiftError::format(
                    no,
                    format!("expected {n} entries, got {}", row.len()),
                ));
            }
            rows.push(row);
        }
        if let Some((no, _)) = lines.next() {
            return Err(LiftError::format(no, "trailing data after the last row"));
        }
        Self::from_rows(degree, &rows)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} {}", self.m, self.n, self.degree);
        for i in 0..self.m {
            let row: Vec<String> = (0..self.n)
                .map(|j| {
                    self.get(i, j)
                        .map_or_else(|| "-".to_string(), |d| d.to_string())
                })
                .collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s
    }
}

/// Permutation index of a walk: edges traversed variable-to-check add their
/// index, check-to-variable edges subtract it, all modulo `N`.
///
/// For a walk rooted at a variable node this is the alternating sum
/// `d_1 - d_2 + d_3 - ...`; it maps copy `x` of the start node to copy
/// `x + d` of the end node.
pub fn path_permutation_index(
    g: &TannerGraph,
    walk: &Walk,
    indices: &PermutationIndexMatrix,
) -> Result<usize, LiftError> {
    let n = indices.degree();
    let mut at = walk.start();
    let mut acc = 0usize;
    for &e in walk.edges() {
        let d = indices.edge_index(g, e).ok_or(LiftError::InfiniteEdge(e))? % n;
        acc = match at {
            Node::Var(_) => (acc + d) % n,
            Node::Check(_) => (acc + n - d) % n,
        };
        at = g.edge(e).other(at);
    }
    Ok(acc)
}

/// Permutation index of a cycle in its canonical variable-rooted direction.
pub fn cycle_permutation_index(
    g: &TannerGraph,
    cycle: &Cycle,
    indices: &PermutationIndexMatrix,
) -> Result<usize, LiftError> {
    path_permutation_index(g, &cycle.walk(g), indices)
}

/// Order `k = N / gcd(d, N)` of a cycle's permutation index `d`.
pub fn cycle_order(
    g: &TannerGraph,
    cycle: &Cycle,
    indices: &PermutationIndexMatrix,
) -> Result<usize, LiftError> {
    let d = cycle_permutation_index(g, cycle, indices)?;
    Ok(order_in_zn(d, indices.degree()))
}
