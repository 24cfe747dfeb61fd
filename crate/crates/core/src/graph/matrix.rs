//! Sparse binary parity-check matrices and the alist interchange format.
//!
//! Indices are 0-based in memory and 1-based in alist text.

use std::fmt::Write as _;

use thiserror::Error;

/// Errors raised while building a matrix or parsing alist text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix must have at least one row and one column (got {m}x{n})")]
    EmptyShape { m: usize, n: usize },
    #[error("entry ({row}, {col}) out of range for a {m}x{n} matrix")]
    OutOfRange {
        row: usize,
        col: usize,
        m: usize,
        n: usize,
    },
    #[error("duplicate entry ({row}, {col})")]
    Duplicate { row: usize, col: usize },
    #[error("line {line}: {msg}")]
    Alist { line: usize, msg: String },
}

impl MatrixError {
    fn alist(line: usize, msg: impl Into<String>) -> Self {
        MatrixError::Alist {
            line,
            msg: msg.into(),
        }
    }
}

/// Sparse binary `m x n` matrix stored both row-wise and column-wise.
///
/// Row `i` lists the columns `j` with `h_ij = 1` and vice versa; both views
/// are sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParityCheckMatrix {
    m: usize,
    n: usize,
    rows: Vec<Vec<usize>>,
    cols: Vec<Vec<usize>>,
}

impl ParityCheckMatrix {
    /// Builds a matrix from `(row, col)` positions of its ones.
    pub fn from_entries<I>(m: usize, n: usize, entries: I) -> Result<Self, MatrixError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if m == 0 || n == 0 {
            return Err(MatrixError::EmptyShape { m, n });
        }
        let mut rows = vec![Vec::new(); m];
        let mut cols = vec![Vec::new(); n];
        for (row, col) in entries {
            if row >= m || col >= n {
                return Err(MatrixError::OutOfRange { row, col, m, n });
            }
            rows[row].push(col);
            cols[col].push(row);
        }
        for (i, r) in rows.iter_mut().enumerate() {
            r.sort_unstable();
            if let Some(w) = r.windows(2).find(|w| w[0] == w[1]) {
                return Err(MatrixError::Duplicate { row: i, col: w[0] });
            }
        }
        for c in cols.iter_mut() {
            c.sort_unstable();
        }
        Ok(ParityCheckMatrix { m, n, rows, cols })
    }

    /// Builds a matrix from dense 0/1 rows. All rows must share one length.
    pub fn from_dense(rows: &[Vec<u8>]) -> Result<Self, MatrixError> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::new();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(MatrixError::OutOfRange {
                    row: i,
                    col: r.len().saturating_sub(1),
                    m,
                    n,
                });
            }
            entries.extend(
                r.iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(j, _)| (i, j)),
            );
        }
        Self::from_entries(m, n, entries)
    }

    /// Number of rows (check nodes).
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of columns (variable nodes).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.rows[i]
    }

    pub fn col(&self, j: usize) -> &[usize] {
        &self.cols[j]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn cols(&self) -> &[Vec<usize>] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].binary_search(&j).is_ok()
    }

    /// Number of ones.
    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// All `(row, col)` positions in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |&j| (i, j)))
    }

    pub fn row_weights(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        self.cols.iter().map(Vec::len).collect()
    }

    /// Syndrome `H x` over GF(2) for a 0/1 word of length `n`.
    pub fn syndrome(&self, word: &[u8]) -> Vec<u8> {
        self.rows
            .iter()
            .map(|r| r.iter().fold(0u8, |acc, &j| acc ^ (word[j] & 1)))
            .collect()
    }

    pub fn is_codeword(&self, word: &[u8]) -> bool {
        self.rows
            .iter()
            .all(|r| r.iter().fold(0u8, |acc, &j| acc ^ (word[j] & 1)) == 0)
    }

    /// Dense copy, one `Vec<u8>` per row.
    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let mut out = vec![vec![0u8; self.n]; self.m];
        for (i, j) in self.entries() {
            out[i][j] = 1;
        }
        out
    }

    /// Parses alist text.
    ///
    /// Column lists come first, then row lists; a `0` entry is padding. The
    /// two views must describe the same set of ones.
    pub fn parse_alist(text: &str) -> Result<Self, MatrixError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let mut next_nums = |what: &str| -> Result<(usize, Vec<usize>), MatrixError> {
            let (no, line) = lines.next().ok_or_else(|| {
                MatrixError::alist(0, format!("unexpected end of input, expected {what}"))
            })?;
            let nums = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| {
                        MatrixError::alist(no, format!("invalid integer {t:?} in {what}"))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok((no, nums))
        };

        let (no, header) = next_nums("header \"n m\"")?;
        if header.len() != 2 {
            return Err(MatrixError::alist(
                no,
                "header must contain exactly \"n m\"",
            ));
        }
        let (n, m) = (header[0], header[1]);
        if n == 0 || m == 0 {
            return Err(MatrixError::alist(no, "n and m must be positive"));
        }
        let (no, maxdeg) = next_nums("maximum degrees")?;
        if maxdeg.len() != 2 {
            return Err(MatrixError::alist(
                no,
                "expected \"max_col_deg max_row_deg\"",
            ));
        }
        let (max_col, max_row) = (maxdeg[0], maxdeg[1]);
        let (no, col_deg) = next_nums("column degrees")?;
        if col_deg.len() != n {
            return Err(MatrixError::alist(
                no,
                format!("expected {n} column degrees, got {}", col_deg.len()),
            ));
        }
        if let Some(d) = col_deg.iter().find(|&&d| d > max_col) {
            return Err(MatrixError::alist(
                no,
                format!("column degree {d} exceeds maximum {max_col}"),
            ));
        }
        let (no, row_deg) = next_nums("row degrees")?;
        if row_deg.len() != m {
            return Err(MatrixError::alist(
                no,
                format!("expected {m} row degrees, got {}", row_deg.len()),
            ));
        }
        if let Some(d) = row_deg.iter().find(|&&d| d > max_row) {
            return Err(MatrixError::alist(
                no,
                format!("row degree {d} exceeds maximum {max_row}"),
            ));
        }

        let mut read_lists = |count: usize, degs: &[usize], bound: usize, what: &str| {
            let mut lists = Vec::with_capacity(count);
            for (k, &deg) in degs.iter().enumerate() {
                let (no, nums) = next_nums(what)?;
                let list: Vec<usize> = nums.into_iter().filter(|&v| v != 0).collect();
                if list.len() != deg {
                    return Err(MatrixError::alist(
                        no,
                        format!(
                            "{what} {}: expected {deg} entries, got {}",
                            k + 1,
                            list.len()
                        ),
                    ));
                }
                if let Some(&v) = list.iter().find(|&&v| v > bound) {
                    return Err(MatrixError::alist(
                        no,
                        format!("{what} {}: index {v} out of range 1..={bound}", k + 1),
                    ));
                }
                lists.push((no, list));
            }
            Ok::<_, MatrixError>(lists)
        };
        let col_lists = read_lists(n, &col_deg, m, "column")?;
        let row_lists = read_lists(m, &row_deg, n, "row")?;

        let mut entries = Vec::new();
        for (j, (no, list)) in col_lists.iter().enumerate() {
            let mut seen = list.clone();
            seen.sort_unstable();
            if seen.windows(2).any(|w| w[0] == w[1]) {
                return Err(MatrixError::alist(
                    *no,
                    format!("column {} lists a check twice", j + 1),
                ));
            }
            entries.extend(list.iter().map(|&i| (i - 1, j)));
        }
        let h =
            Self::from_entries(m, n, entries).map_err(|e| MatrixError::alist(0, e.to_string()))?;
        for (i, (no, list)) in row_lists.iter().enumerate() {
            let mut sorted: Vec<usize> = list.iter().map(|&j| j - 1).collect();
            sorted.sort_unstable();
            if sorted != h.rows[i] {
                return Err(MatrixError::alist(
                    *no,
                    format!("row {} is inconsistent with the column lists", i + 1),
                ));
            }
        }
        Ok(h)
    }

    /// Writes canonical alist text: unpadded lists, sorted ascending.
    pub fn to_alist(&self) -> String {
        let mut s = String::new();
        let max_col = self.cols.iter().map(Vec::len).max().unwrap_or(0);
        let max_row = self.rows.iter().map(Vec::len).max().unwrap_or(0);
        let join = |v: &mut dyn Iterator<Item = usize>| {
            v.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
        };
        let _ = writeln!(s, "{} {}", self.n, self.m);
        let _ = writeln!(s, "{max_col} {max_row}");
        let _ = writeln!(s, "{}", join(&mut self.cols.iter().map(Vec::len)));
        let _ = writeln!(s, "{}", join(&mut self.rows.iter().map(Vec::len)));
        // A zero-degree node is written as a single padding 0.
        for list in self.cols.iter().chain(self.rows.iter()) {
            if list.is_empty() {
                s.push_str("0\n");
            } else {
                let _ = writeln!(s, "{}", join(&mut list.iter().map(|&x| x + 1)));
            }
        }
        s
    }
}
