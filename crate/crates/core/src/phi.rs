//! Built-in base functions `phi`.
//!
//! Each function is `C^1` and `Z`-periodic, and carries declared suprema of
//! `|phi|` and `|phi'|` over one period. Only built-ins exist so that the
//! declared derivative bound can be trusted by the hypothesis check.

use core::f64::consts::{PI, TAU};
use core::fmt;

use alloc::string::ToString;

use crate::error::{Error, Result};

/// Ids accepted by [`builtin_phi`].
pub const BUILTIN_IDS: [&str; 3] = ["cos2pi", "cos-unit", "sin-unit"];

#[derive(Clone, Copy)]
pub struct PhiFunction {
    id: &'static str,
    value: fn(f64) -> f64,
    derivative: fn(f64) -> f64,
    derivative_sup: f64,
    value_sup: f64,
}

impl PhiFunction {
    pub fn id(&self) -> &'static str {
        self.id
    }

    #[inline]
    pub fn value(&self, x: f64) -> f64 {
        (self.value)(x)
    }

    #[inline]
    pub fn derivative(&self, x: f64) -> f64 {
        (self.derivative)(x)
    }

    /// Declared `sup |phi'|` over `[0, 1]`.
    pub fn derivative_sup(&self) -> f64 {
        self.derivative_sup
    }

    /// Declared `sup |phi|` over `[0, 1]`.
    pub fn value_sup(&self) -> f64 {
        self.value_sup
    }

    /// `phi = 0`, so that `w = 0` identically. Used as the smooth-line
    /// control for box counting; not reachable through [`builtin_phi`].
    pub fn zero() -> Self {
        PhiFunction { id: "zero", value: |_| 0.0, derivative: |_| 0.0, derivative_sup: 0.0, value_sup: 0.0 }
    }
}

impl fmt::Debug for PhiFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PhiFunction")
            .field("id", &self.id)
            .field("derivative_sup", &self.derivative_sup)
            .field("value_sup", &self.value_sup)
            .finish()
    }
}

// Function pointers do not compare reliably; the id identifies the function.
impl PartialEq for PhiFunction {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

fn cos2pi(x: f64) -> f64 {
    libm::cos(TAU * x)
}

fn cos2pi_d(x: f64) -> f64 {
    -TAU * libm::sin(TAU * x)
}

fn cos_unit(x: f64) -> f64 {
    libm::cos(TAU * x) / TAU
}

fn cos_unit_d(x: f64) -> f64 {
    -libm::sin(TAU * x)
}

fn sin_unit(x: f64) -> f64 {
    libm::sin(TAU * x) / TAU
}

fn sin_unit_d(x: f64) -> f64 {
    libm::cos(TAU * x)
}

/// Looks up a built-in base function by id.
pub fn builtin_phi(id: &str) -> Result<PhiFunction> {
    let phi = match id {
        "cos2pi" => PhiFunction {
            id: "cos2pi",
            value: cos2pi,
            derivative: cos2pi_d,
            derivative_sup: 2.0 * PI,
            value_sup: 1.0,
        },
        "cos-unit" => PhiFunction {
            id: "cos-unit",
            value: cos_unit,
            derivative: cos_unit_d,
            derivative_sup: 1.0,
            value_sup: 1.0 / TAU,
        },
        "sin-unit" => PhiFunction {
            id: "sin-unit",
            value: sin_unit,
            derivative: sin_unit_d,
            derivative_sup: 1.0,
            value_sup: 1.0 / TAU,
        },
        other => return Err(Error::UnknownPhi { id: other.to_string() }),
    };
    Ok(phi)
}
