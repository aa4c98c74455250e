//! Matroids, online matroid secretary policies, and the tools to check them.
//!
//! - [`matroid`]: uniform and graphic matroids, minors, greedy max-weight basis.
//! - [`sim`]: the continuous arrival model and the trial harness.
//! - [`policy`]: Dynkin, Optimistic, Virtual, SAMPLE, SAMPLE-CONTRACTED, the
//!   greedy framework and the virtual algorithm for matroids.
//! - [`instances`]: hat graphs, modified hat graphs and other generators.
//! - [`analysis`]: brute-force oracle, Monte Carlo estimates, analytic
//!   bounds, forbidden-set and lemma checkers, the size-1 certificate.
//! - [`fixtures`], [`suites`]: forced-schedule replays and invariant suites.
//! - [`cli`]: the `msp` command line.

pub mod analysis;
pub mod cli;
pub mod fixtures;
pub mod instances;
pub mod matroid;
pub mod policy;
pub mod sim;
pub mod suites;
