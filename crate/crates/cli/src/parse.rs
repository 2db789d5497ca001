// Copyright 2026 The pulseforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Value parsers for command-line arguments.

use std::f64::consts::PI;

use pulseforge::su2::{QubitState, C64};
use pulseforge::WindingNumbers;

/// An angle as typed. Literals involving `pi` are radians regardless of
/// `--degrees`; bare numbers follow the flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Angle {
    Symbolic(f64),
    Number(f64),
}

impl Angle {
    pub fn radians(self, degrees: bool) -> f64 {
        match self {
            Angle::Symbolic(x) => x,
            Angle::Number(x) if degrees => x.to_radians(),
            Angle::Number(x) => x,
        }
    }
}

fn number(s: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| format!("'{s}' is not a finite number"))
}

/// Accepts `1.2`, `pi`, `-pi`, `pi/2`, `2pi`, `3*pi/4`, `2pi/3`.
pub fn angle(s: &str) -> Result<Angle, String> {
    let t = s.trim().to_ascii_lowercase();
    let Some(at) = t.find("pi") else {
        return number(&t).map(Angle::Number);
    };
    let bad = || format!("cannot read angle '{s}'; use a number or a form like 3pi/4");
    let head = t[..at].trim_end_matches('*').trim();
    let tail = t[at + 2..].trim();
    let factor = match head {
        "" => 1.0,
        "-" => -1.0,
        h => number(h).map_err(|_| bad())?,
    };
    let divisor = match tail {
        "" => 1.0,
        d => {
            let d = d.strip_prefix('/').ok_or_else(bad)?;
            let d = number(d).map_err(|_| bad())?;
            if d == 0.0 {
                return Err(bad());
            }
            d
        }
    };
    Ok(Angle::Symbolic(factor * PI / divisor))
}

/// `n1,n2,n3` as non-negative integers.
pub fn windings(s: &str) -> Result<WindingNumbers, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(format!("expected three comma-separated integers like 1,0,0, got '{s}'"));
    };
    let int = |x: &str| {
        x.parse::<u32>()
            .map_err(|_| format!("winding '{x}' is not a non-negative integer"))
    };
    Ok(WindingNumbers::new(int(a)?, int(b)?, int(c)?))
}

pub fn parity(s: &str) -> Result<u32, String> {
    match s.trim() {
        "0" | "even" => Ok(0),
        "1" | "odd" => Ok(1),
        other => Err(format!("parity must be 0 or 1, got '{other}'")),
    }
}

/// `c₁` value or one of the interval edges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum C1Choice {
    Value(f64),
    Lower,
    Upper,
}

pub fn c1(s: &str) -> Result<C1Choice, String> {
    match s.trim() {
        "upper" => Ok(C1Choice::Upper),
        "lower" => Ok(C1Choice::Lower),
        v => number(v).map(C1Choice::Value),
    }
}

/// Named initial states: `0`, `1`, `+`, `-`, `+i`, `-i`.
pub fn state(s: &str) -> Result<QubitState, String> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let (a, b) = match s.trim() {
        "0" => return Ok(QubitState::zero()),
        "1" => return Ok(QubitState::one()),
        "+" => (C64::new(h, 0.0), C64::new(h, 0.0)),
        "-" => (C64::new(h, 0.0), C64::new(-h, 0.0)),
        "+i" => (C64::new(h, 0.0), C64::new(0.0, h)),
        "-i" => (C64::new(h, 0.0), C64::new(0.0, -h)),
        other => return Err(format!("state must be one of 0, 1, +, -, +i, -i; got '{other}'")),
    };
    QubitState::normalized(a, b).map_err(|e| e.to_string())
}
