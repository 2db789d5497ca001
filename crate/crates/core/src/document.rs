// Copyright 2026 The pulseforge Authors
// SPDX-License-Identifier: Apache-2.0

//! JSON form of composite sequences and the checks run on a loaded one.
//!
//! ```json
//! { "target": {"theta": …, "phi": …},
//!   "pulses": [{"theta": …, "phi": …}, …],
//!   "windings": [n1, n2, n3],
//!   "branch": "+" }
//! ```
//!
//! Family members add `"family"` and `"implemented_sign"`. Angles are
//! radians written with 17 significant digits; phases are reduced to
//! `[0, 2π)` on output.

use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::{Error, Result};
use crate::families::{FamilyKind, FamilySequence};
use crate::solver::{self, Branch, CompositeSequence, TargetRotation, WindingNumbers};
use crate::su2::{self, OreMagnitude, Pulse};

fn fixed17<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    let raw = RawValue::from_string(format!("{x:.16e}")).map_err(serde::ser::Error::custom)?;
    raw.serialize(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleRecord {
    #[serde(serialize_with = "fixed17")]
    pub theta: f64,
    #[serde(serialize_with = "fixed17")]
    pub phi: f64,
}

impl AngleRecord {
    fn from_pulse(p: &Pulse) -> Self {
        Self {
            theta: p.theta(),
            phi: p.phi_reduced(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceDocument {
    pub target: AngleRecord,
    pub pulses: Vec<AngleRecord>,
    pub windings: WindingNumbers,
    pub branch: Branch,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub implemented_sign: Option<i8>,
}

impl From<&CompositeSequence> for SequenceDocument {
    fn from(seq: &CompositeSequence) -> Self {
        let t = seq.target();
        Self {
            target: AngleRecord {
                theta: t.theta(),
                phi: su2::reduce_angle(t.phi()),
            },
            pulses: seq.pulses().iter().map(AngleRecord::from_pulse).collect(),
            windings: seq.windings(),
            branch: seq.branch(),
            family: None,
            implemented_sign: None,
        }
    }
}

impl From<&FamilySequence> for SequenceDocument {
    fn from(seq: &FamilySequence) -> Self {
        let t = seq.target();
        Self {
            target: AngleRecord {
                theta: t.theta(),
                phi: su2::reduce_angle(t.phi()),
            },
            pulses: seq.pulses().iter().map(AngleRecord::from_pulse).collect(),
            windings: seq.windings(),
            // both signs of sin l coincide on the interval edges
            branch: Branch::Plus,
            family: Some(seq.kind()),
            implemented_sign: Some(seq.implemented_sign()),
        }
    }
}

/// Outcome of checking a loaded sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyReport {
    pub robustness_residual: f64,
    /// Entrywise distance of the errorless product to `±U(θ, φ)`, sign as declared.
    pub product_distance: f64,
    pub gate_infidelity: f64,
    pub f: f64,
}

impl VerifyReport {
    pub const RESIDUAL_THRESHOLD: f64 = 1e-10;
    pub const DISTANCE_THRESHOLD: f64 = 1e-9;

    pub fn passed(&self) -> bool {
        self.robustness_residual < Self::RESIDUAL_THRESHOLD
            && self.product_distance < Self::DISTANCE_THRESHOLD
    }
}

impl SequenceDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Serialization(e.to_string()))
    }

    pub fn target(&self) -> Result<TargetRotation> {
        TargetRotation::new(self.target.theta, self.target.phi)
    }

    pub fn pulses(&self) -> Result<[Pulse; 3]> {
        if self.pulses.len() != 3 {
            return Err(Error::Serialization(format!(
                "expected 3 pulses, found {}",
                self.pulses.len()
            )));
        }
        let p = |i: usize| Pulse::new(self.pulses[i].theta, self.pulses[i].phi);
        Ok([p(0)?, p(1)?, p(2)?])
    }

    /// Residual, product distance and gate infidelity at error `f`.
    pub fn verify(&self, f: f64) -> Result<VerifyReport> {
        let target = self.target()?;
        let pulses = self.pulses()?;
        let sign = self.implemented_sign.unwrap_or(1);
        let expected = if sign < 0 {
            -target.unitary()
        } else {
            target.unitary()
        };
        let product = su2::sequence_unitary(&pulses, OreMagnitude::ZERO)?;
        let noisy = su2::sequence_unitary(&pulses, OreMagnitude::new(f)?)?;
        Ok(VerifyReport {
            robustness_residual: solver::robustness_residual(&pulses),
            product_distance: product.max_abs_diff(&expected),
            gate_infidelity: su2::gate_infidelity(&expected, &noisy),
            f,
        })
    }
}
