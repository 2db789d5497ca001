// Copyright 2026 The pulseforge Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors produced by pulse synthesis and analysis.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid pulse: {0}")]
    InvalidPulse(String),

    #[error("off-resonance magnitude must satisfy |f| < 1, got {0}")]
    InvalidOre(f64),

    #[error("qubit state must be normalized, got norm {0}")]
    InvalidState(f64),

    #[error("target rotation angle must lie in (0, 2π), got {0}")]
    InvalidTarget(f64),

    #[error("pulse sequence is empty")]
    EmptySequence,

    #[error("c1 = {c1} is outside the admissible interval [{lower}, {upper}]")]
    OutOfBounds { c1: f64, lower: f64, upper: f64 },

    #[error("invalid family indices: {0}")]
    InvalidIndices(String),

    #[error("oracle root search did not converge for c1 = {c1}, c = {c}")]
    NoConvergence { c1: f64, c: f64 },

    #[error("infidelity {infidelity:e} at f = {f:e} is below the 1e-13 floor; shrink the f range")]
    FloorReached { f: f64, infidelity: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("inconsistent result: {0}")]
    Inconsistent(String),

    #[error("serialization: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
