// Copyright 2026 The pulseforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Independent numerical check of the closed-form manifold: the robustness
//! and diagonal target equations solved as a 2-D root-finding problem in
//! `(c₂, α)` with a multi-start damped Newton iteration.

use crate::error::{Error, Result};
use crate::solver::Parity;

const STARTS: [f64; 3] = [-0.6, 0.0, 0.6];
const MAX_ITER: usize = 100;
const RESIDUAL_TOL: f64 = 1e-14;

/// The two equations in `(β, α)` with `c₂ = cos β`, `s₂ = sin β`. Working in
/// the angle keeps the Jacobian finite as `c₂ → ±1`.
struct System {
    c1: f64,
    s1: f64,
    cn: f64,
}

impl System {
    fn residual(&self, beta: f64, alpha: f64) -> [f64; 2] {
        let (s2, c2) = beta.sin_cos();
        let (c1, s1) = (self.c1, self.s1);
        [
            s2 + 2.0 * s1 * (c2 * c1 - alpha * s2 * s1),
            c2 * (c1 * c1 - s1 * s1) - 2.0 * alpha * c1 * s1 * s2 - self.cn,
        ]
    }

    fn jacobian(&self, beta: f64, alpha: f64) -> [[f64; 2]; 2] {
        let (s2, c2) = beta.sin_cos();
        let (c1, s1) = (self.c1, self.s1);
        [
            [c2 - 2.0 * s1 * (s2 * c1 + alpha * c2 * s1), -2.0 * s1 * s1 * s2],
            [-s2 * (c1 * c1 - s1 * s1) - 2.0 * alpha * c1 * s1 * c2, -2.0 * c1 * s1 * s2],
        ]
    }

    fn newton(&self, mut beta: f64, mut alpha: f64) -> Option<(f64, f64, f64)> {
        let norm = |r: [f64; 2]| r[0].hypot(r[1]);
        let mut r = self.residual(beta, alpha);
        for _ in 0..MAX_ITER {
            if norm(r) < RESIDUAL_TOL {
                return Some((beta, alpha, norm(r)));
            }
            let j = self.jacobian(beta, alpha);
            let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
            if det == 0.0 || !det.is_finite() {
                return None;
            }
            let d_beta = -(j[1][1] * r[0] - j[0][1] * r[1]) / det;
            let d_alpha = -(-j[1][0] * r[0] + j[0][0] * r[1]) / det;

            let mut step = 1.0;
            loop {
                let next_beta = beta + step * d_beta;
                let next_alpha = alpha + step * d_alpha;
                let next_r = self.residual(next_beta, next_alpha);
                if norm(next_r) < norm(r) || step < 1e-10 {
                    beta = next_beta;
                    alpha = next_alpha;
                    r = next_r;
                    break;
                }
                step *= 0.5;
            }
        }
        (norm(r) < RESIDUAL_TOL * 100.0).then(|| (beta, alpha, norm(r)))
    }
}

/// Returns `(c₂, α)` solving the robustness and diagonal target equations.
///
/// Nine deterministic starts on a 3×3 grid in `(c₂, α)`; among converged
/// roots with `s₂ > 0` and `α ∈ [−1, 1]` the one with the smallest residual
/// wins.
pub fn oracle_solve(c1: f64, c: f64, parity: Parity) -> Result<(f64, f64)> {
    let fail = || Error::NoConvergence { c1, c };
    if !(c1.abs() < 1.0 && c.abs() < 1.0) {
        return Err(fail());
    }
    let system = System {
        c1,
        s1: (1.0 - c1 * c1).sqrt(),
        cn: parity.sign() * c,
    };
    let mut best: Option<(f64, f64, f64)> = None;
    for &c2 in &STARTS {
        for &alpha in &STARTS {
            let Some((beta, alpha, res)) = system.newton(c2.acos(), alpha) else {
                continue;
            };
            let (s2, c2) = beta.sin_cos();
            let admissible = s2 > 0.0 && (-1.0 - 1e-9..=1.0 + 1e-9).contains(&alpha);
            if admissible && best.is_none_or(|b| res < b.2) {
                best = Some((c2, alpha, res));
            }
        }
    }
    best.map(|(c2, alpha, _)| (c2, alpha)).ok_or_else(fail)
}
