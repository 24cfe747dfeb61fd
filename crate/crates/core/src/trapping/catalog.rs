use std::cmp::Ordering;

use super::{default_cycle_limit, TrappingError, TrappingSet};
use crate::graph::TannerGraph;

/// Trapping sets ordered by critical number (unknown last), then `a`, `b`
/// and variable ids.
#[derive(Debug, Clone, Default)]
pub struct TrappingSetCatalog {
    sets: Vec<TrappingSet>,
}

fn catalog_order(x: &TrappingSet, y: &TrappingSet) -> Ordering {
    let key = |t: &TrappingSet| {
        (
            t.critical_number().is_none(),
            t.critical_number(),
            t.a(),
            t.b(),
        )
    };
    key(x).cmp(&key(y)).then_with(|| x.vars().cmp(y.vars()))
}

impl TrappingSetCatalog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_sets(sets: impl IntoIterator<Item = TrappingSet>) -> Result<Self, TrappingError> {
        let mut out = Self::new();
        for t in sets {
            out.insert(t)?;
        }
        Ok(out)
    }

    /// Adds a set at its ordered position.
    pub fn insert(&mut self, t: TrappingSet) -> Result<(), TrappingError> {
        if self.sets.iter().any(|s| s.vars() == t.vars()) {
            return Err(TrappingError::Duplicate(t.vars().to_vec()));
        }
        let pos = self
            .sets
            .partition_point(|s| catalog_order(s, &t) == Ordering::Less);
        self.sets.insert(pos, t);
        Ok(())
    }

    pub fn sets(&self) -> &[TrappingSet] {
        &self.sets
    }

    pub fn iter(&self) -> std::slice::Iter<'_, TrappingSet> {
        self.sets.iter()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Keeps only the sets matching `keep`.
    pub fn retain(&mut self, keep: impl FnMut(&TrappingSet) -> bool) {
        self.sets.retain(keep);
    }

    /// Catalog text: one `a b critical_number v1,...,va` line per set, with
    /// `-` for an unknown critical number.
    pub fn to_text(&self) -> String {
        let mut s = String::from("# a b critical_number variables\n");
        for t in &self.sets {
            let crit = t
                .critical_number()
                .map_or("-".to_string(), |j| j.to_string());
            let vars: Vec<String> = t.vars().iter().map(usize::to_string).collect();
            s.push_str(&format!(
                "{} {} {} {}\n",
                t.a(),
                t.b(),
                crit,
                vars.join(",")
            ));
        }
        s
    }
}

impl<'a> IntoIterator for &'a TrappingSetCatalog {
    type Item = &'a TrappingSet;
    type IntoIter = std::slice::Iter<'a, TrappingSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.sets.iter()
    }
}

/// Parses catalog text against `g`. Each set's `a` and `b` are recomputed
/// and must match the declared values; cycles are collected up to
/// `max_cycle_len`, or girth + 4 when `None`.
pub fn load_catalog(
    text: &str,
    g: &TannerGraph,
    max_cycle_len: Option<usize>,
) -> Result<TrappingSetCatalog, TrappingError> {
    let max_len = max_cycle_len.unwrap_or_else(|| default_cycle_limit(g));
    let mut catalog = TrappingSetCatalog::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let format = |msg: String| TrappingError::Format { line: no + 1, msg };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(format(format!(
                "expected \"a b critical_number v1,...,va\", got {} fields",
                fields.len()
            )));
        }
        let num = |s: &str, what: &str| {
            s.parse::<usize>()
                .map_err(|_| format(format!("invalid {what} {s:?}")))
        };
        let a = num(fields[0], "a")?;
        let b = num(fields[1], "b")?;
        let crit = match fields[2] {
            "-" => None,
            s => Some(num(s, "critical number")?),
        };
        let vars = fields[3]
            .split(',')
            .map(|v| num(v.trim(), "variable index"))
            .collect::<Result<Vec<_>, _>>()?;
        let mut sorted = vars.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != vars.len() {
            return Err(format("variable listed twice".into()));
        }
        if vars.len() != a {
            return Err(TrappingError::SizeMismatch {
                vars: sorted,
                declared: a,
                found: vars.len(),
            });
        }
        let t = TrappingSet::new(g, &vars, max_len)?.with_critical_number(crit);
        if t.b() != b {
            return Err(TrappingError::OddCheckMismatch {
                vars: sorted,
                declared: b,
                computed: t.b(),
            });
        }
        catalog.insert(t)?;
    }
    Ok(catalog)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{trapping_subgraph_4_2, trapping_subgraph_4_4};
    use crate::graph::GraphError;

    #[test]
    fn empty_catalog() {
        let g = TannerGraph::new(&trapping_subgraph_4_4());
        let c = load_catalog("# nothing here\n\n", &g, None).unwrap();
        assert!(c.is_empty());
    }

    #[test]
    fn declared_b_must_match() {
        let g = TannerGraph::new(&trapping_subgraph_4_2());
        let err = load_catalog("4 4 3 0,1,2,3\n", &g, None).unwrap_err();
        assert_eq!(
            err,
            TrappingError::OddCheckMismatch {
                vars: vec![0, 1, 2, 3],
                declared: 4,
                computed: 2
            }
        );
    }

    #[test]
    fn unknown_node_and_duplicates() {
        let g = TannerGraph::new(&trapping_subgraph_4_4());
        assert_eq!(
            load_catalog("2 4 - 0,9\n", &g, None).unwrap_err(),
            TrappingError::Graph(GraphError::UnknownVar(9))
        );
        let dup = "2 4 - 0,1\n2 4 3 1,0\n";
        assert_eq!(
            load_catalog(dup, &g, None).unwrap_err(),
            TrappingError::Duplicate(vec![0, 1])
        );
        assert!(matches!(
            load_catalog("2 4 x 0,1\n", &g, None),
            Err(TrappingError::Format { line: 1, .. })
        ));
    }

    #[test]
    fn ordering_and_round_trip() {
        let g = TannerGraph::new(&trapping_subgraph_4_4());
        let text = "4 4 - 0,1,2,3\n2 4 4 1,2\n1 3 3 2\n2 4 3 0,1 # comment\n";
        let c = load_catalog(text, &g, None).unwrap();
        let order: Vec<Vec<usize>> = c.iter().map(|t| t.vars().to_vec()).collect();
        assert_eq!(
            order,
            vec![vec![2], vec![0, 1], vec![1, 2], vec![0, 1, 2, 3]]
        );
        let again = load_catalog(&c.to_text(), &g, None).unwrap();
        let order2: Vec<Vec<usize>> = again.iter().map(|t| t.vars().to_vec()).collect();
        assert_eq!(order, order2);
        assert_eq!(again.sets()[1].critical_number(), Some(3));
    }
}
