// Copyright 2026 The pulseforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Closed-form members of the CORPSE family and its twin.
//!
//! Both families sit on the edges of the solution manifold where
//! `cos(φ₂ − φ₁) = −1`: CORPSE on the upper edge `c₁ = c₁,ₙ,₊`, the twin on
//! the lower edge `c₁ = c₁,ₙ,₋`. Depending on the indices a family member
//! may realize `−U(θ, φ) = U(2π − θ, φ + π)` instead of the target itself,
//! so the implemented sign is measured from the product.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solver::{self, TargetRotation, WindingNumbers};
use crate::su2::{self, OreMagnitude, Pulse, Su2Matrix};

/// Tolerance for deciding which of `±U(θ, φ)` a product realizes.
pub const SIGN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Corpse,
    ShortCorpse,
    Twin,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Corpse => "corpse",
            FamilyKind::ShortCorpse => "short_corpse",
            FamilyKind::Twin => "twin",
        })
    }
}

/// Full-turn indices `(ν₁, ν₂, ν₃)` of a CORPSE sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CorpseIndices {
    pub nu1: u32,
    pub nu2: u32,
    pub nu3: u32,
}

impl CorpseIndices {
    pub const FUNDAMENTAL: CorpseIndices = CorpseIndices::new(1, 1, 0);

    pub const fn new(nu1: u32, nu2: u32, nu3: u32) -> Self {
        Self { nu1, nu2, nu3 }
    }
}

/// Full-turn indices `(μ₁, μ₂, μ₃)` of a twin sequence; `μ₁, μ₃ ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TwinIndices {
    mu1: u32,
    mu2: u32,
    mu3: u32,
}

impl TwinIndices {
    pub const MINIMAL: TwinIndices = TwinIndices {
        mu1: 1,
        mu2: 0,
        mu3: 1,
    };

    pub fn new(mu1: u32, mu2: u32, mu3: u32) -> Result<Self> {
        if mu1 < 1 || mu3 < 1 {
            return Err(Error::InvalidIndices(format!(
                "twin indices require mu1 >= 1 and mu3 >= 1, got ({mu1},{mu2},{mu3})"
            )));
        }
        Ok(Self { mu1, mu2, mu3 })
    }

    pub fn as_array(&self) -> [u32; 3] {
        [self.mu1, self.mu2, self.mu3]
    }
}

/// A family member together with the sign of the rotation it realizes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilySequence {
    kind: FamilyKind,
    target: TargetRotation,
    pulses: [Pulse; 3],
    implemented_sign: i8,
}

impl FamilySequence {
    fn measure(kind: FamilyKind, target: TargetRotation, pulses: [Pulse; 3]) -> Result<Self> {
        let product = su2::sequence_unitary(&pulses, OreMagnitude::ZERO)?;
        let u = target.unitary();
        let plus = product.max_abs_diff(&u);
        let minus = product.max_abs_diff(&-u.into_mat());
        let implemented_sign = match (plus < SIGN_TOL, minus < SIGN_TOL) {
            (true, false) => 1,
            (false, true) => -1,
            _ => {
                return Err(Error::Inconsistent(format!(
                    "{kind} product matches neither ±U(θ,φ): distances {plus:e}, {minus:e}"
                )))
            }
        };
        Ok(Self {
            kind,
            target,
            pulses,
            implemented_sign,
        })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn target(&self) -> TargetRotation {
        self.target
    }

    pub fn pulses(&self) -> &[Pulse; 3] {
        &self.pulses
    }

    /// `+1` if the errorless product is `U(θ, φ)`, `−1` if it is `−U(θ, φ)`.
    pub fn implemented_sign(&self) -> i8 {
        self.implemented_sign
    }

    /// The errorless rotation this sequence realizes, sign included.
    pub fn implemented_unitary(&self) -> Su2Matrix {
        let u = self.target.unitary();
        if self.implemented_sign < 0 {
            -u
        } else {
            u
        }
    }

    pub fn unitary(&self, f: OreMagnitude) -> Su2Matrix {
        su2::sequence_unitary(&self.pulses, f).expect("three pulses")
    }

    /// Winding numbers that put every principal angle in `(0, 2π]`.
    pub fn windings(&self) -> WindingNumbers {
        let [n1, n2, n3] = self.pulses.map(|p| principal_decomposition(p.theta()).1);
        WindingNumbers::new(n1, n2, n3)
    }

    /// Cosine of the first pulse's principal half-angle, i.e. its `c₁`.
    pub fn c1(&self) -> f64 {
        (principal_decomposition(self.pulses[0].theta()).0 / 2.0).cos()
    }
}

/// Splits `θ > 0` into `θ⁽ᵖ⁾ ∈ (0, 2π]` and the number of extra full turns.
pub fn principal_decomposition(theta: f64) -> (f64, u32) {
    let turn = 2.0 * PI;
    let n = ((theta / turn).ceil() - 1.0).max(0.0);
    (theta - turn * n, n as u32)
}

/// Largest parameter mismatch between two pulse triples: flip angles
/// compared directly, phases compared modulo 2π.
pub fn parameter_distance(a: &[Pulse; 3], b: &[Pulse; 3]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let dt = (x.theta() - y.theta()).abs();
            let dp = su2::angle_diff(x.phi(), y.phi()).abs();
            dt.max(dp)
        })
        .fold(0.0, f64::max)
}

/// `κ = arcsin(sin(θ/2)/2)`.
pub fn kappa(target: &TargetRotation) -> f64 {
    (target.s() / 2.0).asin()
}

fn positive_pulses(
    angles: [f64; 3],
    phases: [f64; 3],
    describe: impl Fn() -> String,
) -> Result<[Pulse; 3]> {
    for (i, theta) in angles.iter().enumerate() {
        if !(*theta > 0.0) {
            return Err(Error::InvalidIndices(format!(
                "{}: flip angle θ{} = {theta} must be positive",
                describe(),
                i + 1
            )));
        }
    }
    Ok([
        Pulse::new(angles[0], phases[0])?,
        Pulse::new(angles[1], phases[1])?,
        Pulse::new(angles[2], phases[2])?,
    ])
}

/// CORPSE sequence with indices `(ν₁, ν₂, ν₃)`.
pub fn corpse(target: TargetRotation, idx: CorpseIndices) -> Result<FamilySequence> {
    let kappa = kappa(&target);
    let turn = 2.0 * PI;
    let outer = target.theta() / 2.0 - kappa;
    let angles = [
        outer + turn * f64::from(idx.nu1),
        turn * f64::from(idx.nu2) - 2.0 * kappa,
        outer + turn * f64::from(idx.nu3),
    ];
    let phi = target.phi();
    let pulses = positive_pulses(angles, [phi, phi + PI, phi], || {
        format!("CORPSE indices ({},{},{})", idx.nu1, idx.nu2, idx.nu3)
    })?;
    FamilySequence::measure(FamilyKind::Corpse, target, pulses)
}

/// The shortest CORPSE member, written so that it realizes `U(θ, φ)` itself.
pub fn short_corpse(target: TargetRotation) -> Result<FamilySequence> {
    let kappa = kappa(&target);
    let outer = PI - target.theta() / 2.0 - kappa;
    let angles = [outer, 2.0 * PI - 2.0 * kappa, outer];
    let phi = target.phi();
    let pulses = positive_pulses(angles, [phi + PI, phi, phi + PI], || "short CORPSE".into())?;
    FamilySequence::measure(FamilyKind::ShortCorpse, target, pulses)
}

/// CORPSE with indices `(1, 1, 0)`.
pub fn fundamental_corpse(target: TargetRotation) -> Result<FamilySequence> {
    corpse(target, CorpseIndices::FUNDAMENTAL)
}

/// Twin of the CORPSE family, on the lower manifold edge.
pub fn twin_corpse(target: TargetRotation, idx: TwinIndices) -> Result<FamilySequence> {
    let kappa = kappa(&target);
    let turn = 2.0 * PI;
    let outer = kappa - target.theta() / 2.0;
    let angles = [
        turn * f64::from(idx.mu1) + outer,
        turn * f64::from(idx.mu2) + 2.0 * kappa,
        turn * f64::from(idx.mu3) + outer,
    ];
    let phi = target.phi();
    let pulses = positive_pulses(angles, [phi + PI, phi, phi + PI], || {
        format!("twin indices ({},{},{})", idx.mu1, idx.mu2, idx.mu3)
    })?;
    FamilySequence::measure(FamilyKind::Twin, target, pulses)
}

/// Solver-built sequence expected to coincide with a family member: same
/// windings, `c₁` on the indicated interval edge.
pub fn edge_sequence(
    target: TargetRotation,
    windings: WindingNumbers,
    upper_edge: bool,
    branch: solver::Branch,
) -> Result<solver::CompositeSequence> {
    let bounds = solver::c1_bounds(target.c(), windings.parity());
    let c1 = if upper_edge { bounds.upper } else { bounds.lower };
    solver::build_sequence(target, c1, windings, branch)
}
