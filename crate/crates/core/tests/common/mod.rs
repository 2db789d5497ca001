// Copyright 2026 The pulseforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Support code shared by the integration tests.

use std::f64::consts::PI;

use pulseforge::su2::{Mat2, C64};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

mod expm;
pub use expm::expm;

/// `θ_j = 2π(j + ½)/count`, strictly inside `(0, 2π)`.
pub fn theta_grid(count: usize) -> Vec<f64> {
    (0..count).map(|j| 2.0 * PI * (j as f64 + 0.5) / count as f64).collect()
}

/// `exp(−iθ(cos φ σx + sin φ σy + f σz)/2)` through the series oracle.
pub fn propagator(theta: f64, phi: f64, f: f64) -> Mat2 {
    let h = Mat2::SIGMA_X * phi.cos() + Mat2::SIGMA_Y * phi.sin() + Mat2::SIGMA_Z * f;
    expm(&h.scale(C64::new(0.0, -theta / 2.0)))
}

/// Haar-ish random SU(2) element from a normalized 4-vector.
pub fn random_su2(rng: &mut ChaCha8Rng) -> Mat2 {
    let q: [f64; 4] = loop {
        let q = [(); 4].map(|_| rng.gen_range(-1.0..1.0));
        let n = q.iter().map(|x| x * x).sum::<f64>();
        if n > 1e-3 && n <= 1.0 {
            let n = n.sqrt();
            break q.map(|x| x / n);
        }
    };
    // q0 I − i(q1 σx + q2 σy + q3 σz)
    Mat2 {
        a: C64::new(q[0], -q[3]),
        b: C64::new(-q[2], -q[1]),
        c: C64::new(q[2], -q[1]),
        d: C64::new(q[0], q[3]),
    }
}

/// `α(c₁)` evaluated directly from the textbook expression (no
/// cancellation-free rewrites), for root finding on the interval edges.
pub fn naive_alpha(c1: f64, c: f64, sign: f64) -> f64 {
    let s1_sq = 1.0 - c1 * c1;
    let root = (1.0 - c * c * s1_sq).sqrt();
    1.0 - (root + sign * c * c1) / (2.0 * s1_sq * (root - sign * c * c1))
}

/// Bisection root of `g` on `[a, b]`, assuming a sign change.
pub fn bisect(mut a: f64, mut b: f64, g: impl Fn(f64) -> f64) -> f64 {
    let mut ga = g(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let gm = g(m);
        if gm == 0.0 || (b - a).abs() < 1e-16 {
            return m;
        }
        if (gm > 0.0) == (ga > 0.0) {
            a = m;
            ga = gm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}
