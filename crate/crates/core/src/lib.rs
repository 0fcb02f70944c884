//! Exact classification of Hopf algebra extensions of `kC_p` by `k^G` for an
//! elementary abelian p-group `G` and an odd prime `p`.

#![allow(clippy::needless_range_loop)]

pub mod cocommutative;
pub mod cohomology;
pub mod commutative;
pub mod cp_module;
pub mod error;
pub mod group;
pub mod hopf;
pub mod linalg;
pub mod orbit;
pub mod verify;

pub use error::{Error, Result};
