// Copyright 2026 The pulseforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Performance evaluation over the solution manifold: gate and state
//! infidelity sweeps, error-scaling exponents and operation time.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::solver::{
    self, build_sequence, c1_bounds, Branch, Parity, TargetRotation, WindingNumbers,
};
use crate::su2::{self, Mat2, OreMagnitude, Pulse, QubitState, C64};
use crate::table::SweepTable;

/// Infidelities below this are dominated by rounding and not fitted.
pub const INFIDELITY_FLOOR: f64 = 1e-13;
/// Step of the central difference used by [`first_order_derivative_norm`].
pub const DERIVATIVE_STEP: f64 = 1e-5;
/// Default number of geometric grid points for scaling fits.
pub const DEFAULT_SCALING_POINTS: usize = 12;

/// Total flip angle `L = θ₁ + θ₂ + θ₃` (time at unit drive strength).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct OperationTime(f64);

impl OperationTime {
    pub fn value(&self) -> f64 {
        self.0
    }
}

pub fn operation_time(pulses: &[Pulse]) -> OperationTime {
    OperationTime(pulses.iter().map(Pulse::theta).sum())
}

/// `L(c, c₁, n) = 4 arccos c₁ + 2 arccos c₂(c, c₁) + 2πn`.
pub fn operation_time_closed_form(c: f64, c1: f64, n: u32) -> f64 {
    let c2 = solver::secondary_cosine(c1, c, Parity::of(n));
    4.0 * c1.clamp(-1.0, 1.0).acos() + 2.0 * c2.clamp(-1.0, 1.0).acos() + 2.0 * PI * f64::from(n)
}

/// Shortest operation time for fixed `c` and winding total `n`, reached at
/// the upper edge `c₁ = c₁,ₙ,₊`. Returns `(c₁*, L_min)`.
pub fn min_operation_time(c: f64, n: u32) -> Result<(f64, f64)> {
    if !(c.abs() < 1.0) {
        return Err(Error::InvalidTarget(2.0 * c.clamp(-1.0, 1.0).acos()));
    }
    let c1 = c1_bounds(c, Parity::of(n)).upper;
    Ok((c1, operation_time_closed_form(c, c1, n)))
}

/// Parameters shared by the infidelity sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub theta: f64,
    pub windings: WindingNumbers,
    pub f: f64,
    pub grid_points: usize,
    pub branch: Branch,
    pub execution: Execution,
}

impl SweepConfig {
    pub fn new(theta: f64, windings: WindingNumbers, f: f64, grid_points: usize) -> Self {
        Self {
            theta,
            windings,
            f,
            grid_points,
            branch: Branch::default(),
            execution: Execution::default(),
        }
    }

    pub fn with_branch(mut self, branch: Branch) -> Self {
        self.branch = branch;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    fn validate(&self, allow_zero_f: bool) -> Result<(TargetRotation, OreMagnitude)> {
        if self.grid_points < 3 {
            return Err(Error::InvalidGrid(format!(
                "need at least 3 grid points, got {}",
                self.grid_points
            )));
        }
        if !allow_zero_f && self.f == 0.0 {
            return Err(Error::InvalidGrid("gate infidelity sweep needs f != 0".into()));
        }
        let target = TargetRotation::new(self.theta, 0.0)?;
        Ok((target, OreMagnitude::new(self.f)?))
    }

    fn annotate(&self, table: &mut SweepTable, lower: f64, upper: f64) {
        table.push_meta("theta", format!("{:.16e}", self.theta));
        table.push_meta("f", format!("{:.16e}", self.f));
        table.push_meta("windings", self.windings);
        table.push_meta("branch", self.branch);
        table.push_meta("grid_points", self.grid_points);
        table.push_meta("c1_lower", format!("{lower:.16e}"));
        table.push_meta("c1_upper", format!("{upper:.16e}"));
    }
}

struct ManifoldRow {
    c1: f64,
    c2: f64,
    alpha: f64,
    time: f64,
    errorless: Mat2,
    noisy: Mat2,
}

fn manifold_rows(
    config: &SweepConfig,
    target: TargetRotation,
    f: OreMagnitude,
) -> Result<(Vec<ManifoldRow>, f64, f64)> {
    let bounds = c1_bounds(target.c(), config.windings.parity());
    let grid = bounds.grid(config.grid_points);
    let rows = config.execution.try_map(&grid, |&c1| {
        let seq = build_sequence(target, c1, config.windings, config.branch)?;
        let sol = seq.solution();
        Ok(ManifoldRow {
            c1,
            c2: sol.c2,
            alpha: sol.alpha,
            time: seq.total_angle(),
            errorless: seq.unitary(OreMagnitude::ZERO).into_mat(),
            noisy: seq.unitary(f).into_mat(),
        })
    })?;
    Ok((rows, bounds.lower, bounds.upper))
}

/// Gate infidelity against `U(θ, 0)` across the full `c₁` interval.
///
/// The constant `elementary_infidelity` column is the single uncorrected
/// pulse `U(θ, 0)` under the same error.
pub fn infidelity_sweep(config: &SweepConfig) -> Result<SweepTable> {
    let (target, f) = config.validate(false)?;
    let ideal = target.unitary().into_mat();
    let elementary = su2::gate_infidelity(&ideal, &su2::pulse_unitary(&target.pulse(), f));
    let (rows, lower, upper) = manifold_rows(config, target, f)?;

    let mut table = SweepTable::new(
        "gate_infidelity",
        ["c1", "c2", "alpha", "operation_time", "infidelity", "elementary_infidelity"],
    );
    config.annotate(&mut table, lower, upper);
    table.push_meta("elementary_infidelity", format!("{elementary:.16e}"));
    for r in rows {
        table.push_row(vec![
            r.c1,
            r.c2,
            r.alpha,
            r.time,
            su2::gate_infidelity(&ideal, &r.noisy),
            elementary,
        ])?;
    }
    Ok(table)
}

/// State infidelity `1 − |⟨ψ|U†U′|ψ⟩|` across the `c₁` interval, alongside
/// the gate infidelity that bounds it.
pub fn state_infidelity_sweep(config: &SweepConfig, psi: &QubitState) -> Result<SweepTable> {
    let (target, f) = config.validate(true)?;
    let ideal = target.unitary().into_mat();
    let elementary = su2::state_infidelity(&ideal, &su2::pulse_unitary(&target.pulse(), f), psi);
    let (rows, lower, upper) = manifold_rows(config, target, f)?;

    let mut table = SweepTable::new(
        "state_infidelity",
        ["c1", "c2", "alpha", "state_infidelity", "gate_infidelity", "elementary_state_infidelity"],
    );
    config.annotate(&mut table, lower, upper);
    let [a, b] = psi.amplitudes();
    table.push_meta("psi", format!("({a}, {b})"));
    table.push_meta("elementary_state_infidelity", format!("{elementary:.16e}"));
    for r in rows {
        debug_assert!(r.errorless.max_abs_diff(&ideal) < 1e-9);
        table.push_row(vec![
            r.c1,
            r.c2,
            r.alpha,
            su2::state_infidelity(&ideal, &r.noisy, psi),
            su2::gate_infidelity(&ideal, &r.noisy),
            elementary,
        ])?;
    }
    Ok(table)
}

/// `L_min(c, n)` and the minimizing `c₁` over a strictly increasing grid in `(−1, 1)`.
pub fn time_sweep(n: u32, c_grid: &[f64]) -> Result<SweepTable> {
    let mut table = SweepTable::new("min_operation_time", ["c", "c1_star", "l_min"])
        .with_meta("n", n)
        .with_meta("grid_points", c_grid.len());
    for &c in c_grid {
        if !(c.abs() < 1.0) {
            return Err(Error::InvalidGrid(format!("c = {c} is outside (-1, 1)")));
        }
        let (c1, l) = min_operation_time(c, n)?;
        table.push_row(vec![c, c1, l])?;
    }
    Ok(table)
}

/// `points` evenly spaced values strictly inside `(−1, 1)`.
pub fn open_unit_grid(points: usize) -> Vec<f64> {
    (1..=points)
        .map(|j| -1.0 + 2.0 * j as f64 / (points + 1) as f64)
        .collect()
}

/// Least-squares power law `F ≈ e^{intercept} f^{exponent}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingFit {
    pub exponent: f64,
    pub intercept: f64,
    /// Root-mean-square residual in `ln F`.
    pub residual: f64,
    pub f_range: (f64, f64),
    pub points: usize,
    /// `(f, F)` samples the fit was computed from.
    pub samples: Vec<(f64, f64)>,
}

impl ScalingFit {
    pub fn to_table(&self) -> Result<SweepTable> {
        let mut table = SweepTable::new("scaling", ["f", "infidelity"])
            .with_meta("exponent", format!("{:.16e}", self.exponent))
            .with_meta("intercept", format!("{:.16e}", self.intercept))
            .with_meta("residual", format!("{:.16e}", self.residual))
            .with_meta("f_min", format!("{:.16e}", self.f_range.0))
            .with_meta("f_max", format!("{:.16e}", self.f_range.1))
            .with_meta("grid_points", self.points);
        for &(f, inf) in &self.samples {
            table.push_row(vec![f, inf])?;
        }
        Ok(table)
    }
}

/// Log-log slope of gate infidelity against `f` for the given pulses,
/// measured relative to their errorless product.
pub fn scaling_exponent(pulses: &[Pulse], f_min: f64, f_max: f64, points: usize) -> Result<ScalingFit> {
    if !(f_min > 0.0 && f_min < f_max && f_max <= 0.3) {
        return Err(Error::InvalidGrid(format!(
            "need 0 < f_min < f_max <= 0.3, got [{f_min}, {f_max}]"
        )));
    }
    if points < 6 {
        return Err(Error::InvalidGrid(format!("need at least 6 points, got {points}")));
    }
    let ideal = su2::sequence_unitary(pulses, OreMagnitude::ZERO)?.into_mat();
    let ratio = f_max / f_min;
    let mut samples = Vec::with_capacity(points);
    for j in 0..points {
        let f = if j == points - 1 {
            f_max
        } else {
            f_min * ratio.powf(j as f64 / (points - 1) as f64)
        };
        let noisy = su2::sequence_unitary(pulses, OreMagnitude::new(f)?)?;
        let infidelity = su2::gate_infidelity(&ideal, &noisy);
        if infidelity < INFIDELITY_FLOOR {
            return Err(Error::FloorReached { f, infidelity });
        }
        samples.push((f, infidelity));
    }

    let xs: Vec<f64> = samples.iter().map(|s| s.0.ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.1.ln()).collect();
    let n = points as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let residual = (xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - exponent * x).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();

    Ok(ScalingFit {
        exponent,
        intercept,
        residual,
        f_range: (f_min, f_max),
        points,
        samples,
    })
}

/// Max-abs entry of `∂U/∂f` at `f = 0` by central difference, with the
/// component along the global-phase direction `iU` removed.
pub fn first_order_derivative_norm(pulses: &[Pulse]) -> Result<f64> {
    let h = DERIVATIVE_STEP;
    let plus = su2::sequence_unitary(pulses, OreMagnitude::new(h)?)?.into_mat();
    let minus = su2::sequence_unitary(pulses, OreMagnitude::new(-h)?)?.into_mat();
    let ideal = su2::sequence_unitary(pulses, OreMagnitude::ZERO)?.into_mat();
    let derivative = (plus - minus) * (1.0 / (2.0 * h));

    // ⟨iU, D⟩ / ⟨iU, iU⟩ with the real Frobenius inner product; ‖U‖² = 2
    let phase_dir = ideal.scale(C64::new(0.0, 1.0));
    let coeff = (phase_dir.dagger() * derivative).trace().re / 2.0;
    Ok((derivative - phase_dir * coeff).max_abs())
}
