// Copyright 2026 The pulseforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Closed-form solution manifold of time-symmetric three-pulse sequences
//! that cancel off-resonance error to first order.
//!
//! A sequence `U(θ₃,φ₃)U(θ₂,φ₂)U(θ₁,φ₁)` with `θ₃ = θ₁ + 2nπ`, `φ₃ = φ₁`
//! is described by the principal half-angle cosines `c₁, c₂`, by
//! `α = cos(φ₂ − φ₁)`, and by the phase offsets `l = φ₂ − φ₁` and
//! `k = φ₂ − φ`. For a fixed target the only free coordinate is `c₁`; the
//! winding numbers enter only through the parity of their sum.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::su2::{self, Mat2, OreMagnitude, Pulse, Su2Matrix};

/// Slack below `α = −1` that is attributed to rounding and clamped.
pub const ALPHA_CLAMP_TOL: f64 = 1e-12;

/// The rotation `U(θ, φ)` a composite sequence must reproduce.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetRotation {
    theta: f64,
    phi: f64,
}

impl TargetRotation {
    /// `theta` must lie strictly inside `(0, 2π)`, so that `sin(θ/2) > 0`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(theta > 0.0 && theta < 2.0 * PI) {
            return Err(Error::InvalidTarget(theta));
        }
        if !phi.is_finite() {
            return Err(Error::InvalidPulse(format!("target phase must be finite, got {phi}")));
        }
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `sin(θ/2)`, always positive.
    pub fn s(&self) -> f64 {
        (self.theta / 2.0).sin()
    }

    /// `cos(θ/2)`.
    pub fn c(&self) -> f64 {
        (self.theta / 2.0).cos()
    }

    pub fn pulse(&self) -> Pulse {
        Pulse::new(self.theta, self.phi).expect("target angles are validated")
    }

    pub fn unitary(&self) -> Su2Matrix {
        self.pulse().unitary()
    }

    /// Same rotation angle with `φ` replaced.
    pub fn with_phi(&self, phi: f64) -> Result<Self> {
        Self::new(self.theta, phi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: u32) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `(−1)ⁿ`.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }

    pub fn as_u8(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

/// Extra full turns `2nᵢπ` added to each principal flip angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "[u32; 3]", into = "[u32; 3]")]
pub struct WindingNumbers {
    pub n1: u32,
    pub n2: u32,
    pub n3: u32,
}

impl WindingNumbers {
    pub const fn new(n1: u32, n2: u32, n3: u32) -> Self {
        Self { n1, n2, n3 }
    }

    pub fn total(&self) -> u32 {
        self.n1 + self.n2 + self.n3
    }

    pub fn parity(&self) -> Parity {
        Parity::of(self.total())
    }

    pub fn as_array(&self) -> [u32; 3] {
        [self.n1, self.n2, self.n3]
    }
}

impl From<[u32; 3]> for WindingNumbers {
    fn from(n: [u32; 3]) -> Self {
        Self::new(n[0], n[1], n[2])
    }
}

impl From<WindingNumbers> for [u32; 3] {
    fn from(w: WindingNumbers) -> Self {
        w.as_array()
    }
}

impl fmt::Display for WindingNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n1, self.n2, self.n3)
    }
}

/// Sign of `sin l`; `α` fixes only `cos l`, and both signs give valid sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Branch {
    #[default]
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Plus, Branch::Minus];

    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Plus => "+",
            Branch::Minus => "-",
        })
    }
}

impl FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Branch::Plus),
            "-" | "minus" => Ok(Branch::Minus),
            other => Err(Error::Serialization(format!(
                "branch must be '+' or '-', got '{other}'"
            ))),
        }
    }
}

/// Admissible closed interval `[c₁,ₙ,₋, c₁,ₙ,₊]` for the free coordinate `c₁`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct C1Bounds {
    pub lower: f64,
    pub upper: f64,
}

impl C1Bounds {
    pub fn contains(&self, c1: f64) -> bool {
        (self.lower..=self.upper).contains(&c1)
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    /// `points` evenly spaced values from `lower` to `upper`, endpoints exact.
    pub fn grid(&self, points: usize) -> Vec<f64> {
        match points {
            0 => Vec::new(),
            1 => vec![self.lower],
            _ => {
                let last = points - 1;
                (0..points)
                    .map(|j| {
                        if j == last {
                            self.upper
                        } else {
                            self.lower + self.width() * (j as f64 / last as f64)
                        }
                    })
                    .collect()
            }
        }
    }

    /// `points` evenly spaced values strictly inside the interval.
    pub fn interior_grid(&self, points: usize) -> Vec<f64> {
        (1..=points)
            .map(|j| self.lower + self.width() * (j as f64 / (points + 1) as f64))
            .collect()
    }
}

/// Interval of `c₁` for which `α(c₁) ≥ −1`.
///
/// The two radicands `3 − c² ∓ cₙ√(3 + c²)` multiply to `9(1 − c²)`, so the
/// smaller one is recovered from the larger without cancellation.
pub fn c1_bounds(c: f64, parity: Parity) -> C1Bounds {
    let cn = parity.sign() * c;
    let s_sq = (1.0 - c) * (1.0 + c);
    let root = (3.0 + c * c).sqrt();
    let (upper_rad, lower_rad) = if cn >= 0.0 {
        let lower_rad = 3.0 - c * c + cn * root;
        (9.0 * s_sq / lower_rad, lower_rad)
    } else {
        let upper_rad = 3.0 - c * c - cn * root;
        (upper_rad, 9.0 * s_sq / upper_rad)
    };
    C1Bounds {
        lower: -lower_rad.max(0.0).sqrt() / 2.0,
        upper: upper_rad.max(0.0).sqrt() / 2.0,
    }
}

/// `(c₂, s₂, α)` determined by `c₁` through the robustness and diagonal
/// target equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Secondary {
    pub c2: f64,
    pub s2: f64,
    pub alpha: f64,
}

/// `√(1 − s₁²c²)`, written as `√(c²c₁² + s²)` to avoid cancellation.
fn mixing_root(c1: f64, c: f64) -> f64 {
    let s_sq = (1.0 - c) * (1.0 + c);
    (c * c * c1 * c1 + s_sq).sqrt()
}

fn sine_of_cosine(x: f64) -> f64 {
    ((1.0 - x) * (1.0 + x)).max(0.0).sqrt()
}

/// Cosine `c₂` of the middle pulse's principal half-angle.
///
/// Defined on the closed range `|c₁| ≤ 1`, which lets operation-time
/// formulas reach the degenerate interval edges.
pub fn secondary_cosine(c1: f64, c: f64, parity: Parity) -> f64 {
    let cn = parity.sign() * c;
    let s1_sq = (1.0 - c1) * (1.0 + c1);
    -cn * s1_sq - c1 * mixing_root(c1, c)
}

/// Solves for `c₂`, `s₂` and `α` given the free coordinate `c₁`.
///
/// The result depends on `c` and the parity only through `(−1)ⁿc`.
pub fn solve_secondary(c1: f64, c: f64, parity: Parity) -> Result<Secondary> {
    let out_of_bounds = || {
        let b = c1_bounds(c, parity);
        Error::OutOfBounds {
            c1,
            lower: b.lower,
            upper: b.upper,
        }
    };
    if !(c1.abs() < 1.0) || !(c.abs() < 1.0) {
        return Err(out_of_bounds());
    }
    let cn = parity.sign() * c;
    let s1_sq = (1.0 - c1) * (1.0 + c1);
    let s1 = s1_sq.sqrt();
    let root = mixing_root(c1, c);

    let c2 = -cn * s1_sq - c1 * root;
    let gap = root - cn * c1;
    let s2 = s1 * gap;
    // root + cₙc₁ = s²/gap, free of cancellation near the edges
    let s_sq = (1.0 - c) * (1.0 + c);
    let mut alpha = 1.0 - s_sq / (2.0 * s1_sq * gap * gap);

    if (alpha + 1.0).abs() <= ALPHA_CLAMP_TOL {
        alpha = -1.0;
    } else if alpha < -1.0 {
        return Err(out_of_bounds());
    }
    Ok(Secondary { c2, s2, alpha })
}

/// Solves the off-diagonal target equation for `(k, l)`.
///
/// `l = atan2(±√(1 − α²), α)` with the sign chosen by `branch`; `k` follows
/// from the cosine/sine pair, which always lies on the unit circle once the
/// diagonal equation holds.
pub fn solve_phases(c1: f64, c: f64, parity: Parity, branch: Branch) -> Result<(f64, f64)> {
    let point = SolutionPoint::solve(c1, c, parity, branch)?;
    Ok((point.k, point.l))
}

/// A point on the solution manifold for one target angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionPoint {
    pub c1: f64,
    pub s1: f64,
    pub c2: f64,
    pub s2: f64,
    pub alpha: f64,
    /// `φ₂ − φ₁`
    pub l: f64,
    /// `φ₂ − φ`
    pub k: f64,
    pub parity: Parity,
    pub branch: Branch,
}

impl SolutionPoint {
    pub fn solve(c1: f64, c: f64, parity: Parity, branch: Branch) -> Result<Self> {
        let Secondary { c2, s2, alpha } = solve_secondary(c1, c, parity)?;
        let s = sine_of_cosine(c);
        if s <= 0.0 {
            return Err(Error::InvalidTarget(2.0 * c.acos()));
        }
        let s1 = sine_of_cosine(c1);

        let cos_l = alpha;
        let sin_l = branch.sign() * sine_of_cosine(alpha);
        let l = sin_l.atan2(cos_l);
        let cos_2l = 2.0 * cos_l * cos_l - 1.0;
        let sin_2l = 2.0 * sin_l * cos_l;

        let scale = parity.sign() / s;
        let cos_k = scale * (2.0 * s1 * c1 * c2 * cos_l + c1 * c1 * s2 - s1 * s1 * s2 * cos_2l);
        let sin_k = scale * (2.0 * s1 * c1 * c2 * sin_l - s1 * s1 * s2 * sin_2l);
        let k = sin_k.atan2(cos_k);

        Ok(Self {
            c1,
            s1,
            c2,
            s2,
            alpha,
            l,
            k,
            parity,
            branch,
        })
    }

    /// `|s₂ + 2s₁(c₂c₁ − α s₂ s₁)|`, the trace of the matrix condition.
    pub fn scalar_robustness_residual(&self) -> f64 {
        (self.s2 + 2.0 * self.s1 * (self.c2 * self.c1 - self.alpha * self.s2 * self.s1)).abs()
    }

    /// `|c₂(c₁² − s₁²) − 2α c₁ s₁ s₂ − (−1)ⁿ c|`.
    pub fn diagonal_target_residual(&self, c: f64) -> f64 {
        (self.c2 * (self.c1 * self.c1 - self.s1 * self.s1)
            - 2.0 * self.alpha * self.c1 * self.s1 * self.s2
            - self.parity.sign() * c)
            .abs()
    }

    /// Principal flip angles `(θ⁽ᵖ⁾₁, θ⁽ᵖ⁾₂)`, each in `(0, 2π)`.
    pub fn principal_angles(&self) -> (f64, f64) {
        (
            2.0 * self.s1.atan2(self.c1),
            2.0 * self.s2.atan2(self.c2),
        )
    }
}

/// A time-symmetric three-pulse sequence built from a manifold point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompositeSequence {
    pulses: [Pulse; 3],
    windings: WindingNumbers,
    target: TargetRotation,
    solution: SolutionPoint,
}

impl CompositeSequence {
    pub fn pulses(&self) -> &[Pulse; 3] {
        &self.pulses
    }

    pub fn windings(&self) -> WindingNumbers {
        self.windings
    }

    pub fn target(&self) -> TargetRotation {
        self.target
    }

    pub fn solution(&self) -> &SolutionPoint {
        &self.solution
    }

    pub fn branch(&self) -> Branch {
        self.solution.branch
    }

    pub fn unitary(&self, f: OreMagnitude) -> Su2Matrix {
        su2::sequence_unitary(&self.pulses, f).expect("three pulses")
    }

    /// Total flip angle `θ₁ + θ₂ + θ₃`.
    pub fn total_angle(&self) -> f64 {
        self.pulses.iter().map(Pulse::theta).sum()
    }
}

/// Builds the sequence for `target` at manifold coordinate `c1`.
pub fn build_sequence(
    target: TargetRotation,
    c1: f64,
    windings: WindingNumbers,
    branch: Branch,
) -> Result<CompositeSequence> {
    let solution = SolutionPoint::solve(c1, target.c(), windings.parity(), branch)?;
    let (p1, p2) = solution.principal_angles();
    let turn = 2.0 * PI;
    let theta1 = p1 + turn * f64::from(windings.n1);
    let theta2 = p2 + turn * f64::from(windings.n2);
    let theta3 = p1 + turn * f64::from(windings.n3);

    // φ enters only as a common offset
    let outer = solution.k - solution.l;
    let phi1 = target.phi() + outer;
    let phi2 = target.phi() + solution.k;

    let pulses = [
        Pulse::new(theta1, phi1)?,
        Pulse::new(theta2, phi2)?,
        Pulse::new(theta3, phi1)?,
    ];
    Ok(CompositeSequence {
        pulses,
        windings,
        target,
        solution,
    })
}

/// Max-abs entry of `sin(θ₂/2) I + sin(θ₃/2) Ū₃Ū₂ + sin(θ₁/2) Ū₂†Ū₁†`,
/// which vanishes exactly when the first-order error terms cancel.
pub fn robustness_residual(pulses: &[Pulse; 3]) -> f64 {
    let [p1, p2, p3] = pulses;
    let u1 = p1.unitary().into_mat();
    let u2 = p2.unitary().into_mat();
    let u3 = p3.unitary().into_mat();
    let half_sin = |p: &Pulse| (p.theta() / 2.0).sin();
    let lhs = Mat2::IDENTITY * half_sin(p2)
        + (u3 * u2) * half_sin(p3)
        + (u2.dagger() * u1.dagger()) * half_sin(p1);
    lhs.max_abs()
}
