//! Picks a solving method for an instance and runs it.

use serde::{Deserialize, Serialize};

use crate::cut3::{lift_realization, reduce_to_width2, Reduction};
use crate::error::{GrcError, Result};
use crate::ffactor::solve_width2;
use crate::model::{normalize, verify_realization, width, GrcInstance, SolveOutcome};
use crate::oracle::{oracle_solve_with, OracleOptions};
use crate::preprocess::{eliminate_fixed_edges, possibility_graph, screen_instance, ReductionTrace};
use crate::tree::{is_forest, solve_tree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Decided by normalization, screening or pair classification alone.
    Screen,
    Tree,
    Ffactor,
    Reduce3,
    Oracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Screen => "screen",
            Method::Tree => "tree",
            Method::Ffactor => "ffactor",
            Method::Reduce3 => "reduce3",
            Method::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveOptions {
    /// Force one method; `None` picks automatically. `Screen` cannot be forced.
    pub method: Option<Method>,
    pub oracle: OracleOptions,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub outcome: SolveOutcome,
    pub method: Method,
    /// Rewrites applied on the way to the answer, when the width-3 reduction ran.
    pub trace: Option<ReductionTrace>,
}

impl SolveReport {
    fn new(outcome: SolveOutcome, method: Method) -> SolveReport {
        SolveReport { outcome, method, trace: None }
    }
}

/// Decides `inst`.
///
/// Automatic dispatch: normalize, screen and eliminate fixed edges; then use
/// the tree solver if the possibility graph is a forest, the f-factor path
/// for width ≤ 2, the gadget reduction for width 3 when it is safe, and the
/// oracle otherwise. Forcing a method that does not apply is an
/// `InvalidState` error.
pub fn solve(inst: &GrcInstance, options: &SolveOptions) -> Result<SolveReport> {
    let report = match options.method {
        None => solve_auto(inst, options)?,
        Some(Method::Tree) => SolveReport::new(solve_tree(inst)?, Method::Tree),
        Some(Method::Ffactor) => SolveReport::new(solve_width2(inst)?, Method::Ffactor),
        Some(Method::Reduce3) => match solve_reduced(inst)? {
            Some(report) => report,
            None => return Err(GrcError::InvalidState("the width-3 reduction does not apply: a 3-cut is not gadget-safe".into())),
        },
        Some(Method::Oracle) => SolveReport::new(oracle_solve_with(inst, &options.oracle), Method::Oracle),
        Some(Method::Screen) => return Err(GrcError::InvalidArgument("screening is not a complete method".into())),
    };
    if let Some(g) = report.outcome.witness() {
        if !verify_realization(g, inst)?.valid {
            return Err(GrcError::Internal(format!("{} returned a graph that does not realize the instance", report.method.as_str())));
        }
    }
    Ok(report)
}

fn solve_auto(inst: &GrcInstance, options: &SolveOptions) -> Result<SolveReport> {
    let prepared = normalize(inst).and_then(|norm| {
        screen_instance(&norm)?;
        let (reduced, _) = eliminate_fixed_edges(&norm)?;
        Ok((possibility_graph(&reduced)?, width(&norm)))
    });
    let (host, w) = match prepared {
        Ok(x) => x,
        Err(GrcError::Infeasible(_)) => return Ok(SolveReport::new(SolveOutcome::Infeasible, Method::Screen)),
        Err(e) => return Err(e),
    };
    if is_forest(&host) {
        return Ok(SolveReport::new(solve_tree(inst)?, Method::Tree));
    }
    if w <= 2 {
        return Ok(SolveReport::new(solve_width2(inst)?, Method::Ffactor));
    }
    if w == 3 {
        if let Some(report) = solve_reduced(inst)? {
            return Ok(report);
        }
    }
    Ok(SolveReport::new(oracle_solve_with(inst, &options.oracle), Method::Oracle))
}

/// The width-3 path; `None` when some 3-cut is not gadget-safe.
fn solve_reduced(inst: &GrcInstance) -> Result<Option<SolveReport>> {
    let reduction = match reduce_to_width2(inst) {
        Ok(r) => r,
        Err(GrcError::Infeasible(_)) => return Ok(Some(SolveReport::new(SolveOutcome::Infeasible, Method::Reduce3))),
        Err(e) => return Err(e),
    };
    let Reduction::Reduced { instance, trace } = reduction else {
        return Ok(None);
    };
    let outcome = match solve_width2(&instance)? {
        SolveOutcome::Realizable(g) => SolveOutcome::Realizable(lift_realization(&trace, &g)?),
        other => other,
    };
    Ok(Some(SolveReport { outcome, method: Method::Reduce3, trace: Some(trace) }))
}
