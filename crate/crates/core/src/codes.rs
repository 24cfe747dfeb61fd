//! Built-in codes and the small reference subgraphs used throughout the tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{girth, ParityCheckMatrix, TannerGraph};
use crate::lifting::gf2_rank;

/// Circulant size of the (155,64) Tanner code.
pub const TANNER_CIRCULANT: usize = 31;

/// Shift of block `(s, t)` in the (155,64) Tanner code: `b^s a^t mod 31`
/// with `a = 2`, `b = 5`.
pub const TANNER_SHIFTS: [[usize; 5]; 3] =
    [[1, 2, 4, 8, 16], [5, 10, 20, 9, 18], [25, 19, 7, 14, 28]];

/// Parity-check matrix of the (155,64) Tanner code: a 3x5 array of 31x31
/// circulant permutation matrices; block row `s`, block column `t` has a
/// one at `(r, (r + shift) mod 31)`.
pub fn tanner_155_64() -> ParityCheckMatrix {
    let p = TANNER_CIRCULANT;
    let mut entries = Vec::with_capacity(3 * 5 * p);
    for (s, row) in TANNER_SHIFTS.iter().enumerate() {
        for (t, &shift) in row.iter().enumerate() {
            for r in 0..p {
                entries.push((s * p + r, t * p + (r + shift) % p));
            }
        }
    }
    ParityCheckMatrix::from_entries(3 * p, 5 * p, entries).expect("valid circulant layout")
}

/// Builds a degree-3 subgraph from variable adjacency: each pair in `links`
/// becomes a degree-2 check, and every variable left with fewer than three
/// checks gets degree-1 checks to make up the difference.
fn variable_graph(vars: usize, links: &[(usize, usize)]) -> ParityCheckMatrix {
    let mut entries = Vec::new();
    let mut degree = vec![0usize; vars];
    for (c, &(u, v)) in links.iter().enumerate() {
        entries.push((c, u));
        entries.push((c, v));
        degree[u] += 1;
        degree[v] += 1;
    }
    let mut m = links.len();
    for (v, &d) in degree.iter().enumerate() {
        for _ in d..3 {
            entries.push((m, v));
            m += 1;
        }
    }
    ParityCheckMatrix::from_entries(m, vars, entries).expect("valid subgraph")
}

/// The (5,3) trapping-set subgraph: variables 0 and 1 are both joined to
/// 2, 3 and 4, and each of 2, 3, 4 has one odd check. Contains three 8-cycles.
pub fn trapping_subgraph_5_3() -> ParityCheckMatrix {
    variable_graph(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
}

/// The (4,2) trapping-set subgraph: four variables joined like a complete
/// graph minus the pair (2,3). The link (0,1) is the diagonal shared by the
/// two 6-cycles; the outer ring 0-2-1-3 is the 8-cycle.
pub fn trapping_subgraph_4_2() -> ParityCheckMatrix {
    variable_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
}

/// The (4,4) trapping-set subgraph: four variables in a ring, each with one
/// odd check. Contains one 8-cycle.
pub fn trapping_subgraph_4_4() -> ParityCheckMatrix {
    variable_graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])
}

/// Seed used for the built-in (504,252) code.
pub const REGULAR_504_SEED: u64 = 504;

/// A (3,6)-regular (504,252) code with girth at least 6 and a full-rank
/// parity-check matrix, generated deterministically.
pub fn regular_504_252() -> ParityCheckMatrix {
    regular_code(252, 504, 3, 6, REGULAR_504_SEED)
}

/// Deterministic `(dv, dc)`-regular `m x n` matrix with no 4-cycles and full
/// row rank. Variables are connected one at a time to the least-used checks
/// that do not close a 4-cycle; a construction that gets stuck, or that ends
/// rank-deficient, is retried with the next seed.
///
/// Panics if `n * dv != m * dc` or no construction succeeds within 1000 seeds.
pub fn regular_code(m: usize, n: usize, dv: usize, dc: usize, seed: u64) -> ParityCheckMatrix {
    assert_eq!(n * dv, m * dc, "degree sums must agree");
    for attempt in 0..1000 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        if let Some(h) = try_regular(m, n, dv, dc, &mut rng) {
            if gf2_rank(&h) == m && girth(&TannerGraph::new(&h)).is_none_or(|g| g >= 6) {
                return h;
            }
        }
    }
    panic!("no ({dv},{dc})-regular {m}x{n} construction found");
}

fn try_regular(
    m: usize,
    n: usize,
    dv: usize,
    dc: usize,
    rng: &mut impl Rng,
) -> Option<ParityCheckMatrix> {
    let mut check_vars: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut entries = Vec::with_capacity(n * dv);
    for &v in &order {
        // checks that already share a variable with one of v's checks
        let mut blocked = vec![false; m];
        let mut chosen: Vec<usize> = Vec::with_capacity(dv);
        for _ in 0..dv {
            let mut candidates: Vec<usize> = (0..m)
                .filter(|&c| check_vars[c].len() < dc && !blocked[c] && !chosen.contains(&c))
                .collect();
            if candidates.is_empty() {
                return None;
            }
            candidates.shuffle(rng);
            let c = *candidates.iter().min_by_key(|&&c| check_vars[c].len())?;
            chosen.push(c);
            for &w in &check_vars[c] {
                for (c2, vars) in check_vars.iter().enumerate() {
                    if vars.contains(&w) {
                        blocked[c2] = true;
                    }
                }
            }
        }
        for c in chosen {
            check_vars[c].push(v);
            entries.push((c, v));
        }
    }
    ParityCheckMatrix::from_entries(m, n, entries).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate_cycles;

    #[test]
    fn tanner_code_shape() {
        let h = tanner_155_64();
        assert_eq!((h.m(), h.n()), (93, 155));
        assert!(h.col_weights().iter().all(|&w| w == 3));
        assert!(h.row_weights().iter().all(|&w| w == 5));
    }

    #[test]
    fn tanner_shifts_follow_the_multiplicative_rule() {
        for (s, row) in TANNER_SHIFTS.iter().enumerate() {
            for (t, &shift) in row.iter().enumerate() {
                let expected = 5usize.pow(s as u32) * 2usize.pow(t as u32) % 31;
                assert_eq!(shift, expected);
            }
        }
    }

    #[test]
    fn subgraph_cycle_inventories() {
        let count = |h: &ParityCheckMatrix, len: usize| {
            enumerate_cycles(&TannerGraph::new(h), 8, None, None)
                .unwrap()
                .iter()
                .filter(|c| c.len() == len)
                .count()
        };
        let a = trapping_subgraph_5_3();
        assert_eq!((count(&a, 4), count(&a, 6), count(&a, 8)), (0, 0, 3));
        let b = trapping_subgraph_4_2();
        assert_eq!((count(&b, 4), count(&b, 6), count(&b, 8)), (0, 2, 1));
        let c = trapping_subgraph_4_4();
        assert_eq!((count(&c, 4), count(&c, 6), count(&c, 8)), (0, 0, 1));
    }

    #[test]
    fn small_regular_code() {
        let h = regular_code(30, 60, 3, 6, 1);
        assert!(h.col_weights().iter().all(|&w| w == 3));
        assert!(h.row_weights().iter().all(|&w| w == 6));
        assert_eq!(gf2_rank(&h), 30);
        assert!(girth(&TannerGraph::new(&h)).unwrap() >= 6);
    }
}
