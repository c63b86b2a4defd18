//! IO, generation, rendering, and benchmark plumbing around `minlink-core`.
//!
//! The instance file format is JSON with exact coordinates: integers stay
//! plain numbers, everything else is a string `"p/q"`. Solving results are
//! emitted the same way, so files round-trip without loss.

pub mod bench;
pub mod format;
pub mod gen;
pub mod svg;

use std::fmt;
use std::time::Instant;

use minlink_core::engine::{run_stage_one, EngineError, Ledger};
use minlink_core::instance::Instance;
use minlink_core::recovery::{run_stage_two, Tour};

/// Solver failure, split by who is at fault: bad input or a broken internal
/// invariant.
#[derive(Debug)]
pub enum SolveError {
    Invalid(String),
    Internal(String),
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::Invalid(msg) => write!(f, "{msg}"),
            SolveError::Internal(msg) => write!(f, "{msg}"),
        }
    }
}

/// Outcome of a full solve, with wall time covering the two stages only.
pub struct Solved {
    pub ledger: Ledger,
    pub tour: Tour,
    pub wall_ms: f64,
}

/// Run both solver stages, timing them.
pub fn solve(inst: &Instance) -> Result<Solved, SolveError> {
    let start = Instant::now();
    let ledger = run_stage_one(inst).map_err(|e| match e {
        EngineError::InvalidInstance(_) => SolveError::Invalid(e.to_string()),
        _ => SolveError::Internal(e.to_string()),
    })?;
    let tour = run_stage_two(&ledger, inst).map_err(|e| SolveError::Internal(e.to_string()))?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(Solved {
        ledger,
        tour,
        wall_ms,
    })
}
