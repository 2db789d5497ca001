// Copyright 2026 The pulseforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Three-pulse composite rotations robust to off-resonance error.
//!
//! [`solver::build_sequence`] maps a target rotation, a point `c₁` on the
//! solution manifold and winding numbers to a sequence whose product equals
//! the target and whose first-order error term vanishes. [`families`] holds
//! the CORPSE-type closed forms, [`analysis`] the sweeps and fits.

pub mod analysis;
pub mod document;
pub mod error;
pub mod exec;
pub mod families;
pub mod oracle;
pub mod solver;
pub mod su2;
pub mod table;

pub use document::{SequenceDocument, VerifyReport};
pub use error::{Error, Result};
pub use exec::Execution;
pub use families::{CorpseIndices, FamilyKind, FamilySequence, TwinIndices};
pub use solver::{
    build_sequence, c1_bounds, Branch, C1Bounds, CompositeSequence, Parity, SolutionPoint,
    TargetRotation, WindingNumbers,
};
pub use su2::{Mat2, OreMagnitude, Pulse, QubitState, Su2Matrix};
pub use table::SweepTable;
