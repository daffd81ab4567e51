use crate::error::{Error, Result};

/// The coefficient pair `(a, b)` of `w(x) = sum a^n phi(b^n x)`.
///
/// Construction enforces the standing assumptions `b >= 2` and `1/b < a < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeierstrassParams {
    a: f64,
    b: u32,
}

impl WeierstrassParams {
    pub fn new(a: f64, b: u32) -> Result<Self> {
        if b < 2 {
            return Err(Error::InvalidParams { a, b, reason: "b must be an integer >= 2" });
        }
        if !a.is_finite() || a >= 1.0 || a * b as f64 <= 1.0 {
            return Err(Error::InvalidParams { a, b, reason: "a must satisfy 1/b < a < 1" });
        }
        Ok(Self { a, b })
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> u32 {
        self.b
    }

    /// `b` as a float, for the arithmetic in the maps and bounds.
    #[inline]
    pub fn bf(&self) -> f64 {
        self.b as f64
    }
}
