// Copyright 2026 The pulseforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact single-qubit algebra: elementary propagators with and without
//! off-resonance error, sequence products, and fidelity metrics.
//!
//! Every elementary operation is `U(θ, φ) = exp(−iθ(cos φ σx + sin φ σy)/2)`.
//! With an off-resonance fraction `f` the drive axis acquires a `f σz`
//! component, which the propagator handles in closed form.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Deref, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Max-abs tolerance for unitarity, determinant and normalization checks.
pub const UNITARY_TOL: f64 = 1e-12;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// A general complex 2×2 matrix, row-major `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(ONE, ZERO, ZERO, ONE);
    pub const ZERO: Mat2 = Mat2::new(ZERO, ZERO, ZERO, ZERO);
    pub const SIGMA_X: Mat2 = Mat2::new(ZERO, ONE, ONE, ZERO);
    pub const SIGMA_Y: Mat2 = Mat2::new(ZERO, C64::new(0.0, -1.0), I, ZERO);
    pub const SIGMA_Z: Mat2 = Mat2::new(ONE, ZERO, ZERO, C64::new(-1.0, 0.0));

    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Self { a, b, c, d }
    }

    pub fn entries(&self) -> [C64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn dagger(&self) -> Mat2 {
        Mat2::new(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())
    }

    pub fn trace(&self) -> C64 {
        self.a + self.d
    }

    pub fn det(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Entrywise max-abs distance, with no phase freedom.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn scale(&self, z: C64) -> Mat2 {
        Mat2::new(self.a * z, self.b * z, self.c * z, self.d * z)
    }

    /// Max-abs deviation of `M†M` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        (self.dagger() * *self - Mat2::IDENTITY).max_abs()
    }

    /// Real coefficients `(a0, ax, ay, az)` in `M = a0 I − i(ax σx + ay σy + az σz)`.
    ///
    /// Exact for SU(2) elements; for other matrices only the real parts of
    /// the projections are returned.
    pub fn pauli_coefficients(&self) -> [f64; 4] {
        let a0 = (self.a + self.d).re / 2.0;
        let ax = -(self.b + self.c).im / 2.0;
        let ay = (self.c - self.b).re / 2.0;
        let az = (self.d - self.a).im / 2.0;
        [a0, ax, ay, az]
    }

    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        [self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1]]
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: f64) -> Mat2 {
        self.scale(C64::new(s, 0.0))
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// A 2×2 unitary with unit determinant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2Matrix(Mat2);

impl Su2Matrix {
    pub const IDENTITY: Su2Matrix = Su2Matrix(Mat2::IDENTITY);

    /// Validates unitarity and `det = 1` to [`UNITARY_TOL`].
    pub fn new(m: Mat2) -> Result<Self> {
        let unitarity = m.unitarity_error();
        let det = (m.det() - ONE).norm();
        if unitarity > UNITARY_TOL || det > UNITARY_TOL {
            return Err(Error::Inconsistent(format!(
                "matrix is not in SU(2): unitarity error {unitarity:e}, det error {det:e}"
            )));
        }
        Ok(Self(m))
    }

    pub fn as_mat(&self) -> &Mat2 {
        &self.0
    }

    pub fn into_mat(self) -> Mat2 {
        self.0
    }

    pub fn dagger(&self) -> Su2Matrix {
        Su2Matrix(self.0.dagger())
    }
}

impl Deref for Su2Matrix {
    type Target = Mat2;
    fn deref(&self) -> &Mat2 {
        &self.0
    }
}

impl Mul for Su2Matrix {
    type Output = Su2Matrix;
    fn mul(self, o: Su2Matrix) -> Su2Matrix {
        Su2Matrix(self.0 * o.0)
    }
}

impl Neg for Su2Matrix {
    type Output = Su2Matrix;
    fn neg(self) -> Su2Matrix {
        Su2Matrix(-self.0)
    }
}

/// One elementary rotation by `theta` about the in-plane axis `(cos φ, sin φ, 0)`.
///
/// `phi` is kept exactly as constructed; use [`Pulse::phi_reduced`] for the
/// representative in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pulse {
    theta: f64,
    phi: f64,
}

impl Pulse {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || theta <= 0.0 {
            return Err(Error::InvalidPulse(format!(
                "flip angle must be finite and > 0, got {theta}"
            )));
        }
        if !phi.is_finite() {
            return Err(Error::InvalidPulse(format!("phase must be finite, got {phi}")));
        }
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn phi_reduced(&self) -> f64 {
        reduce_angle(self.phi)
    }

    /// Errorless propagator.
    pub fn unitary(&self) -> Su2Matrix {
        pulse_unitary(self, OreMagnitude::ZERO)
    }
}

/// Reduces an angle to `[0, 2π)`.
pub fn reduce_angle(x: f64) -> f64 {
    let r = x.rem_euclid(2.0 * PI);
    // rem_euclid can round up to exactly 2π for tiny negative inputs
    if r >= 2.0 * PI {
        0.0
    } else {
        r
    }
}

/// Signed difference `x − y` wrapped into `(−π, π]`.
pub fn angle_diff(x: f64, y: f64) -> f64 {
    let d = reduce_angle(x - y);
    if d > PI {
        d - 2.0 * PI
    } else {
        d
    }
}

/// Off-resonance error fraction `f`: the drive axis gains an `f σz` component.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct OreMagnitude(f64);

impl OreMagnitude {
    pub const ZERO: OreMagnitude = OreMagnitude(0.0);

    pub fn new(f: f64) -> Result<Self> {
        if !f.is_finite() || f.abs() >= 1.0 {
            return Err(Error::InvalidOre(f));
        }
        Ok(Self(f))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// A normalized single-qubit pure state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    amps: [C64; 2],
}

impl QubitState {
    pub fn new(alpha: C64, beta: C64) -> Result<Self> {
        let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > UNITARY_TOL {
            return Err(Error::InvalidState(norm));
        }
        Ok(Self { amps: [alpha, beta] })
    }

    /// Rescales `(alpha, beta)` to unit norm.
    pub fn normalized(alpha: C64, beta: C64) -> Result<Self> {
        let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::InvalidState(norm));
        }
        Ok(Self {
            amps: [alpha / norm, beta / norm],
        })
    }

    /// `|0⟩`, the `+1` eigenvector of σz.
    pub fn zero() -> Self {
        Self { amps: [ONE, ZERO] }
    }

    /// `|1⟩`, the `−1` eigenvector of σz.
    pub fn one() -> Self {
        Self { amps: [ZERO, ONE] }
    }

    pub fn amplitudes(&self) -> [C64; 2] {
        self.amps
    }
}

/// Exact propagator `exp(−iθ(cos φ σx + sin φ σy + f σz)/2)`.
///
/// The effective rotation is by `θ√(1+f²)` about the unit axis
/// `(cos φ, sin φ, f)/√(1+f²)`.
pub fn pulse_unitary(p: &Pulse, f: OreMagnitude) -> Su2Matrix {
    let f = f.value();
    let norm = f.hypot(1.0);
    let (nx, ny, nz) = (p.phi.cos() / norm, p.phi.sin() / norm, f / norm);
    let half = p.theta * norm / 2.0;
    let (sin, cos) = half.sin_cos();
    Su2Matrix(Mat2::new(
        C64::new(cos, -sin * nz),
        C64::new(-sin * ny, -sin * nx),
        C64::new(sin * ny, -sin * nx),
        C64::new(cos, sin * nz),
    ))
}

/// Coefficient of `f` in the expansion of [`pulse_unitary`]: `−i sin(θ/2) σz`.
pub fn first_order_ore_term(p: &Pulse) -> Mat2 {
    let s = (p.theta / 2.0).sin();
    Mat2::new(C64::new(0.0, -s), ZERO, ZERO, C64::new(0.0, s))
}

/// Product `U_k ⋯ U_1`; the first pulse in the slice is applied first.
pub fn sequence_unitary(seq: &[Pulse], f: OreMagnitude) -> Result<Su2Matrix> {
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(seq
        .iter()
        .fold(Su2Matrix::IDENTITY, |acc, p| pulse_unitary(p, f) * acc))
}

/// Gate infidelity `1 − |tr(U†V)|/2`.
///
/// Evaluated as `(1 − |t|²)/(1 + |t|)` with `1 − |t|²` assembled from the
/// remaining entries of `U†V`, which keeps full relative precision when the
/// infidelity is tiny. Invariant under a global phase of either argument.
pub fn gate_infidelity(u: &Mat2, v: &Mat2) -> f64 {
    let w = u.dagger() * *v;
    let t = (w.a + w.d).norm() / 2.0;
    let off = ((w.a - w.d).norm_sqr() / 4.0) + (w.b.norm_sqr() + w.c.norm_sqr()) / 2.0;
    (off / (1.0 + t)).clamp(0.0, 1.0)
}

/// State infidelity `1 − |⟨ψ|U†V|ψ⟩|`.
pub fn state_infidelity(u: &Mat2, v: &Mat2, psi: &QubitState) -> f64 {
    let w = u.dagger() * *v;
    let x = psi.amps;
    let wx = w.apply(x);
    let z = x[0].conj() * wx[0] + x[1].conj() * wx[1];
    let r0 = wx[0] - z * x[0];
    let r1 = wx[1] - z * x[1];
    ((r0.norm_sqr() + r1.norm_sqr()) / (1.0 + z.norm())).clamp(0.0, 1.0)
}

/// `min_χ max_j |u_j − e^{iχ} v_j|` over the four entries.
///
/// Each squared entry distance is a sinusoid in χ, so the minimum of their
/// upper envelope sits either at the minimum of one sinusoid or at a
/// crossing of two. All such candidates are enumerated and the distance is
/// re-evaluated directly at each one.
pub fn distance_up_to_phase(u: &Mat2, v: &Mat2) -> f64 {
    let us = u.entries();
    let vs = v.entries();
    // |u_j − e^{iχ}v_j|² = A_j − B_j cos(χ + δ_j)
    let mut a = [0.0; 4];
    let mut b = [0.0; 4];
    let mut delta = [0.0; 4];
    for j in 0..4 {
        let w = us[j].conj() * vs[j];
        a[j] = us[j].norm_sqr() + vs[j].norm_sqr();
        b[j] = 2.0 * w.norm();
        delta[j] = w.arg();
    }

    let mut candidates = Vec::with_capacity(18);
    for j in 0..4 {
        if b[j] > 0.0 {
            candidates.push(-delta[j]);
        }
    }
    for i in 0..4 {
        for j in (i + 1)..4 {
            // A_i − A_j = P cos χ − Q sin χ
            let p = b[i] * delta[i].cos() - b[j] * delta[j].cos();
            let q = b[i] * delta[i].sin() - b[j] * delta[j].sin();
            let rho = p.hypot(q);
            if rho == 0.0 {
                continue;
            }
            let ratio = (a[i] - a[j]) / rho;
            if ratio.abs() > 1.0 {
                continue;
            }
            let psi = q.atan2(p);
            let acos = ratio.acos();
            candidates.push(-psi + acos);
            candidates.push(-psi - acos);
        }
    }

    // real phases are tried exactly, e^{iπ} is not −1 in floating point
    let exact = [ONE, -ONE].into_iter().map(|z| u.max_abs_diff(&v.scale(z)));
    candidates
        .into_iter()
        .map(|chi| u.max_abs_diff(&v.scale(C64::from_polar(1.0, chi))))
        .chain(exact)
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
#[path = "../tests/common/expm.rs"]
mod expm;
