//! The end-to-end compiler from Geography to Turning Tiles, and the
//! harness that checks it against both exact solvers.

mod lift;
mod tokens;
mod verify;

pub use lift::{lift_principal_line, LiftedLine};
pub use tokens::{add_isolated_tokens, isolated_cells};
pub use verify::{verify_equivalence, EquivalenceReport, EquivalenceRow, VerifyLimits};

use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::gg::{normalize, validate, GeoInstance, GgError, Profile, ValidationReport};
use crate::layout::{fix_parity, lint, paint, plan_layout, LayoutError, LayoutPlan, LintReport};
use crate::tt::Board;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    Validate,
    Normalize,
    Plan,
    Parity,
    Paint,
    Lint,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::Validate => "validate",
            Stage::Normalize => "normalize",
            Stage::Plan => "plan",
            Stage::Parity => "parity",
            Stage::Paint => "paint",
            Stage::Lint => "lint",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error("validate: {0}")]
    Invalid(ValidationReport),
    #[error("normalize: {0}")]
    Normalize(GgError),
    #[error("{stage}: {source}")]
    Layout { stage: Stage, source: LayoutError },
    #[error("lint: {0}")]
    Lint(LintReport),
    #[error("only {available} isolated cells, {requested} tokens requested")]
    NoIsolatedSpace { requested: usize, available: usize },
}

impl ReduceError {
    pub fn stage(&self) -> Option<Stage> {
        match self {
            ReduceError::Invalid(_) => Some(Stage::Validate),
            ReduceError::Normalize(_) => Some(Stage::Normalize),
            ReduceError::Layout { stage, .. } => Some(*stage),
            ReduceError::Lint(_) => Some(Stage::Lint),
            ReduceError::NoIsolatedSpace { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AreaStats {
    pub width: usize,
    pub height: usize,
    pub area: usize,
    pub bound: usize,
    pub colored_cells: usize,
    pub parity_insertions: usize,
}

#[derive(Debug, Clone)]
pub struct ReductionTrace {
    pub input: GeoInstance,
    pub normalized: GeoInstance,
    /// The plan after parity repair.
    pub plan: LayoutPlan,
    pub board: Board,
    pub timings: Vec<(Stage, Duration)>,
    pub area: AreaStats,
}

impl ReductionTrace {
    pub fn total_time(&self) -> Duration {
        self.timings.iter().map(|(_, d)| *d).sum()
    }
}

fn timed<T>(timings: &mut Vec<(Stage, Duration)>, stage: Stage, f: impl FnOnce() -> T) -> T {
    let t = Instant::now();
    let out = f();
    timings.push((stage, t.elapsed()));
    out
}

/// Compiles a strict Geography instance into a Turning Tiles board whose
/// first player (Blue) wins exactly when the first player wins `input`.
/// No game is solved along the way.
pub fn reduce(input: &GeoInstance) -> Result<ReductionTrace, ReduceError> {
    let mut timings = Vec::with_capacity(6);
    let layout = |stage| move |source| ReduceError::Layout { stage, source };

    let report = timed(&mut timings, Stage::Validate, || validate(input, Profile::Strict));
    if !report.is_valid() {
        return Err(ReduceError::Invalid(report));
    }
    let normalized = timed(&mut timings, Stage::Normalize, || normalize(input)).map_err(ReduceError::Normalize)?;
    let routed = timed(&mut timings, Stage::Plan, || plan_layout(&normalized)).map_err(layout(Stage::Plan))?;
    let plan = timed(&mut timings, Stage::Parity, || fix_parity(&routed)).map_err(layout(Stage::Parity))?;
    let board = timed(&mut timings, Stage::Paint, || paint(&plan)).map_err(layout(Stage::Paint))?;
    let report = timed(&mut timings, Stage::Lint, || lint(&plan, &board));
    if !report.is_clean() {
        return Err(ReduceError::Lint(report));
    }
    let area = AreaStats {
        width: board.width(),
        height: board.height(),
        area: board.width() * board.height(),
        bound: plan.area_bound(),
        colored_cells: board.colored_count(),
        parity_insertions: plan.parity_insertions(),
    };
    Ok(ReductionTrace {
        input: input.clone(),
        normalized,
        plan,
        board,
        timings,
        area,
    })
}
