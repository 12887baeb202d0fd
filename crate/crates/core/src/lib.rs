//! Communication games, randomized reductions and multipass streaming hard
//! instances built around set chasing intersection.
//!
//! The crate is organised bottom-up:
//!
//! * [`chasing`]: pointer/set chasing game instances, evaluators, samplers and
//!   the `scgame v1` text format.
//! * [`protocol`]: a blackboard protocol runner with exact bit accounting and
//!   the two upper-bound protocols for set chasing intersection.
//! * [`reduction`]: the scramble-and-overlay reduction from an OR of limited
//!   pointer chasing equality instances to set chasing intersection.
//! * [`gadgets`]: distance, reachability and perfect-matching graph gadgets
//!   and the `graphstream v1` format.
//! * [`streaming`]: a multipass streaming harness with boundary state
//!   accounting, baseline algorithms and offline oracles.
//! * [`info`]: finite-distribution information theory, the substate rejection
//!   sampler and the non-injectivity threshold.
//! * [`verify`]: check suites producing CSV rows.
//!
//! Indices are 0-based everywhere; the start element of every chase is `0`.

pub mod chasing;
pub mod error;
pub mod gadgets;
pub mod info;
pub mod protocol;
pub mod reduction;
pub mod seed;
pub mod streaming;
pub mod verify;

pub use error::{Error, Result};
