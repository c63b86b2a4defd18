//! Exact computation of minimum-link tours.
//!
//! Given a finite set of directions `C` (closed under reversal, spanning the
//! plane), an ordered sequence of segments each parallel to some direction in
//! `C`, and endpoints `s` and `t`, this crate computes a polygonal path from
//! `s` to `t` that touches the segments in order, uses only directions from
//! `C`, and has the minimum possible number of edges.
//!
//! The solver works in two stages: [`engine::run_stage_one`] propagates, along
//! the segment sequence, the maximal sub-intervals reachable at the optimal
//! link count and at one more than the optimal count; [`recovery::run_stage_two`]
//! then walks that record backwards from `t` and reconstructs an optimal tour.
//! [`oracle`] holds an independent brute-force reimplementation used to
//! cross-check the solver, plus a tour validator.
//!
//! All coordinates are arbitrary-precision rationals and every predicate is
//! exact; there are no tolerances anywhere in this crate.
//!
//! The crate is `no_std` (with `alloc`); anything that needs IO, timing, or an
//! RNG lives in the companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod engine;
pub mod geom;
pub mod instance;
pub mod oracle;
pub mod recovery;
pub mod report;
