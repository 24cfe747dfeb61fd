use std::fmt::Write as _;
use std::ops::RangeInclusive;

use num_rational::Ratio;

use super::SimError;
use crate::graph::{girth, ParityCheckMatrix, TannerGraph};
use crate::ies::{run_ies, IesDesign, IesMode, SetStatus};
use crate::lifting::{code_rate, lift};
use crate::trapping::TrappingSetCatalog;

/// Summary of the design tried at one lifting degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignAttempt {
    pub degree: usize,
    pub eliminated: usize,
    pub partially_eliminated: usize,
    pub untouched: usize,
    pub surviving_cycles: usize,
    pub sets_with_lifted_copy: usize,
}

#[derive(Debug, Clone)]
pub struct PipelineResult {
    /// Lifting degree of the chosen design.
    pub degree: usize,
    pub design: IesDesign,
    pub lifted: ParityCheckMatrix,
    pub base_rate: Ratio<usize>,
    pub lifted_rate: Ratio<usize>,
    pub girth_before: Option<usize>,
    pub girth_after: Option<usize>,
    /// Every degree tried, ascending.
    pub attempts: Vec<DesignAttempt>,
}

impl PipelineResult {
    pub fn all_eliminated(&self) -> bool {
        self.design.report.all_eliminated()
    }

    pub fn report_text(&self, g: &TannerGraph) -> String {
        let mut s = String::new();
        let fmt_girth = |x: Option<usize>| x.map_or("inf".to_string(), |l| l.to_string());
        for a in &self.attempts {
            let _ = writeln!(
                s,
                "N={}: eliminated {}, partially eliminated {}, untouched {}, cycles at order 1: {}, sets with a copy in the lift: {}",
                a.degree, a.eliminated, a.partially_eliminated, a.untouched, a.surviving_cycles, a.sets_with_lifted_copy
            );
        }
        let _ = writeln!(s, "chosen N={}", self.degree);
        let _ = writeln!(
            s,
            "rate {} -> {} ({:.4} -> {:.4})",
            self.base_rate,
            self.lifted_rate,
            ratio_f64(self.base_rate),
            ratio_f64(self.lifted_rate)
        );
        let _ = writeln!(
            s,
            "girth {} -> {}",
            fmt_girth(self.girth_before),
            fmt_girth(self.girth_after)
        );
        s.push_str(&self.design.report.to_text(g));
        s
    }
}

pub(crate) fn ratio_f64(r: Ratio<usize>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Runs edge swapping for each degree in `degrees`, ascending, stopping at
/// the first design that eliminates every catalog set. Otherwise keeps the
/// design with the fewest cycles still at order one (then the fewest sets
/// with a copy in the lift, then the smallest degree).
pub fn design_pipeline(
    h: &ParityCheckMatrix,
    catalog: &TrappingSetCatalog,
    degrees: RangeInclusive<usize>,
    mode: IesMode,
) -> Result<PipelineResult, SimError> {
    let (lo, hi) = (*degrees.start(), *degrees.end());
    if lo > hi {
        return Err(SimError::EmptyRange { lo, hi });
    }
    let g = TannerGraph::new(h);
    let mut attempts = Vec::new();
    let mut best: Option<(IesDesign, (usize, usize, usize))> = None;
    for n in degrees {
        let design = run_ies(&g, catalog, n, mode)?;
        let r = &design.report;
        let attempt = DesignAttempt {
            degree: n,
            eliminated: r.count(SetStatus::Eliminated),
            partially_eliminated: r.count(SetStatus::PartiallyEliminated),
            untouched: r.count(SetStatus::Untouched),
            surviving_cycles: r.surviving_cycles(),
            sets_with_lifted_copy: r.sets_with_lifted_copy(),
        };
        let key = (
            attempt.surviving_cycles + attempt.untouched,
            attempt.sets_with_lifted_copy,
            n,
        );
        let done = r.all_eliminated();
        attempts.push(attempt);
        if best.as_ref().is_none_or(|(_, k)| key < *k) {
            best = Some((design, key));
        }
        if done {
            break;
        }
    }
    let (design, _) = best.expect("range is nonempty");
    let lifted = lift(h, &design.indices)?.matrix();
    Ok(PipelineResult {
        degree: design.report.degree,
        base_rate: code_rate(h),
        lifted_rate: code_rate(&lifted),
        girth_before: girth(&g),
        girth_after: girth(&TannerGraph::new(&lifted)),
        lifted,
        design,
        attempts,
    })
}
