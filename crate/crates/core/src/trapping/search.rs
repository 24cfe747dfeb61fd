use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, VecDeque};
use std::hash::{Hash, Hasher};

use rayon::prelude::*;

use super::{default_cycle_limit, TrappingError, TrappingSet, TrappingSetCatalog};
use crate::decode::{Algorithm, DecoderConfig, HardDecoder, MinSumDecoder};
use crate::graph::{ParityCheckMatrix, TannerGraph};

/// Largest weight searched exhaustively over all variables.
pub const MAX_EXHAUSTIVE_WEIGHT: usize = 4;

/// Default cap on the number of patterns one search may decode.
pub const DEFAULT_PATTERN_CAP: u128 = 100_000_000;

/// Longest decoder-state cycle recognised when extracting a failure's support.
pub const OSCILLATION_PERIOD_CAP: usize = 16;

/// Which variables error patterns are drawn from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchScope {
    AllVariables,
    /// Only patterns supported inside the given variables.
    WithinSet(Vec<usize>),
}

/// Outcome of [`critical_number_search`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalSearch {
    /// Smallest failing weight, or `None` if nothing up to `max_weight` fails.
    pub critical_number: Option<usize>,
    /// Every failing pattern of weight `critical_number`, each ascending,
    /// in lexicographic order.
    pub failures: Vec<Vec<usize>>,
    pub max_weight: usize,
    pub patterns_tried: u128,
}

impl CriticalSearch {
    /// `N_J`, the number of failing patterns of the minimum weight.
    pub fn count(&self) -> usize {
        self.failures.len()
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

enum PatternDecoder {
    Hard(HardDecoder),
    Soft(MinSumDecoder, Vec<f64>),
}

impl PatternDecoder {
    fn new(h: &ParityCheckMatrix, config: &DecoderConfig) -> Result<Self, TrappingError> {
        Ok(match config.algorithm {
            Algorithm::MinSum => {
                PatternDecoder::Soft(MinSumDecoder::new(h, config)?, vec![1.0; h.n()])
            }
            _ => PatternDecoder::Hard(HardDecoder::new(h, config)?),
        })
    }

    /// Whether the BSC output with ones at `ones` fails to decode to zero.
    fn fails(&mut self, ones: &[usize]) -> bool {
        match self {
            PatternDecoder::Hard(dec) => dec.fails_on_support(ones),
            PatternDecoder::Soft(dec, llr) => {
                llr.fill(1.0);
                for &v in ones {
                    llr[v] = -1.0;
                }
                let out = dec.decode(llr).expect("length and values are valid");
                !out.success || out.decision.iter().any(|&b| b != 0)
            }
        }
    }
}

impl Clone for PatternDecoder {
    fn clone(&self) -> Self {
        match self {
            PatternDecoder::Hard(d) => PatternDecoder::Hard(d.clone()),
            PatternDecoder::Soft(d, l) => PatternDecoder::Soft(d.clone(), l.clone()),
        }
    }
}

/// Calls `f` on every `k`-subset of `pool[from..]` prefixed by `prefix`.
fn for_each_subset(
    pool: &[usize],
    from: usize,
    k: usize,
    prefix: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if k == 0 {
        f(prefix);
        return;
    }
    for i in from..=pool.len() - k {
        prefix.push(pool[i]);
        for_each_subset(pool, i + 1, k - 1, prefix, f);
        prefix.pop();
    }
}

/// Finds the smallest weight `J <= max_weight` at which some error pattern in
/// `scope` fails to decode to the all-zero word, and lists every failing
/// pattern of that weight.
///
/// Patterns are split by their smallest position and decoded in parallel;
/// the result does not depend on the thread count.
pub fn critical_number_search(
    h: &ParityCheckMatrix,
    config: &DecoderConfig,
    max_weight: usize,
    scope: &SearchScope,
    pattern_cap: u128,
) -> Result<CriticalSearch, TrappingError> {
    let pool: Vec<usize> = match scope {
        SearchScope::AllVariables => {
            if max_weight > MAX_EXHAUSTIVE_WEIGHT {
                return Err(TrappingError::WeightTooLarge {
                    max_weight,
                    limit: MAX_EXHAUSTIVE_WEIGHT,
                });
            }
            (0..h.n()).collect()
        }
        SearchScope::WithinSet(vars) => {
            let mut v = vars.clone();
            v.sort_unstable();
            v.dedup();
            if let Some(&bad) = v.iter().find(|&&x| x >= h.n()) {
                return Err(crate::graph::GraphError::UnknownVar(bad).into());
            }
            v
        }
    };
    let budget: u128 = (1..=max_weight).map(|w| binomial(pool.len(), w)).sum();
    if budget > pattern_cap {
        return Err(TrappingError::BudgetExceeded {
            patterns: budget,
            cap: pattern_cap,
        });
    }
    let template = PatternDecoder::new(h, config)?;
    let mut tried = 0u128;
    for w in 1..=max_weight.min(pool.len()) {
        tried += binomial(pool.len(), w);
        let failures: Vec<Vec<usize>> = (0..=pool.len() - w)
            .into_par_iter()
            .map_init(
                || template.clone(),
                |dec, first| {
                    let mut found = Vec::new();
                    let mut prefix = vec![pool[first]];
                    for_each_subset(&pool, first + 1, w - 1, &mut prefix, &mut |p| {
                        if dec.fails(p) {
                            found.push(p.to_vec());
                        }
                    });
                    found
                },
            )
            .flatten()
            .collect();
        if !failures.is_empty() {
            return Ok(CriticalSearch {
                critical_number: Some(w),
                failures,
                max_weight,
                patterns_tried: tried,
            });
        }
    }
    Ok(CriticalSearch {
        critical_number: None,
        failures: Vec::new(),
        max_weight,
        patterns_tried: tried,
    })
}

fn state_hash(messages: &[u8]) -> u64 {
    let mut hasher = DefaultHasher::new();
    messages.hash(&mut hasher);
    hasher.finish()
}

fn ones(word: &[u8]) -> Vec<usize> {
    word.iter()
        .enumerate()
        .filter(|(_, &b)| b != 0)
        .map(|(i, _)| i)
        .collect()
}

/// Variables in error after decoding the pattern with ones at `pattern`.
///
/// The decoder runs to its iteration cap. If it settles on a nonzero
/// codeword, that codeword's support is returned. Otherwise the decoder
/// state is hashed every iteration; when the final state repeats one seen at
/// most [`OSCILLATION_PERIOD_CAP`] iterations earlier, the union of the
/// decisions over that period is returned, else the final decision.
pub fn failure_support(dec: &mut HardDecoder, pattern: &[usize]) -> Vec<usize> {
    dec.init_support(pattern);
    if dec.syndrome_is_zero() {
        return ones(dec.decision());
    }
    let mut hashes = vec![state_hash(dec.messages())];
    let mut recent: VecDeque<Vec<u8>> = VecDeque::with_capacity(OSCILLATION_PERIOD_CAP + 1);
    while dec.iterations() < dec.max_iterations() {
        dec.step();
        if dec.syndrome_is_zero() {
            return ones(dec.decision());
        }
        hashes.push(state_hash(dec.messages()));
        if recent.len() == OSCILLATION_PERIOD_CAP {
            recent.pop_front();
        }
        recent.push_back(dec.decision().to_vec());
    }
    let last = hashes.len() - 1;
    let period = (1..=OSCILLATION_PERIOD_CAP.min(last)).find(|&p| hashes[last - p] == hashes[last]);
    let window = period.unwrap_or(1).min(recent.len());
    let mut support: Vec<usize> = recent
        .iter()
        .rev()
        .take(window)
        .flat_map(|d| ones(d))
        .collect();
    support.sort_unstable();
    support.dedup();
    support
}

/// Turns decoder failures into a catalog: each pattern's final error
/// support becomes a trapping set whose critical number is the smallest
/// weight of a pattern that produced it. Supports are deduplicated and
/// empty supports skipped.
pub fn harvest_trapping_sets(
    failures: &[Vec<usize>],
    h: &ParityCheckMatrix,
    config: &DecoderConfig,
    max_cycle_len: Option<usize>,
) -> Result<TrappingSetCatalog, TrappingError> {
    let mut dec = HardDecoder::new(h, config)?;
    let mut found: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for pattern in failures {
        let support = failure_support(&mut dec, pattern);
        if support.is_empty() {
            continue;
        }
        let weight = found.entry(support).or_insert(pattern.len());
        *weight = (*weight).min(pattern.len());
    }
    let g = TannerGraph::new(h);
    let max_len = max_cycle_len.unwrap_or_else(|| default_cycle_limit(&g));
    let sets = found
        .into_iter()
        .map(|(vars, crit)| {
            Ok(TrappingSet::new(&g, &vars, max_len)?.with_critical_number(Some(crit)))
        })
        .collect::<Result<Vec<_>, TrappingError>>()?;
    TrappingSetCatalog::from_sets(sets)
}
