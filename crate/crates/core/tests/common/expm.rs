// Copyright 2026 The pulseforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Scaling-and-squaring matrix exponential used as an independent oracle.

use super::Mat2;

/// `exp(A)` via Taylor series on `A / 2^s` followed by `s` squarings.
pub fn expm(a: &Mat2) -> Mat2 {
    let norm = a.max_abs() * 2.0;
    let mut s = 0;
    while norm / f64::from(1u32 << s) > 0.25 {
        s += 1;
    }
    let scaled = *a * (1.0 / f64::from(1u32 << s));

    let mut sum = Mat2::IDENTITY;
    let mut term = Mat2::IDENTITY;
    for k in 1..40 {
        term = (term * scaled) * (1.0 / k as f64);
        sum = sum + term;
        if term.max_abs() < 1e-18 {
            break;
        }
    }
    for _ in 0..s {
        sum = sum * sum;
    }
    sum
}
