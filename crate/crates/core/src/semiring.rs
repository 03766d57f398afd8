//! Tropical semiring over `f64` costs.

use std::fmt;

/// A tropical weight: a non-negative-log cost where lower is better.
///
/// `plus` is `min`, `times` is `+`, zero is `+inf` and one is `0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Weight(pub f64);

impl Weight {
    pub const ZERO: Weight = Weight(f64::INFINITY);
    pub const ONE: Weight = Weight(0.0);

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn plus(self, rhs: Weight) -> Weight {
        if rhs.0 < self.0 {
            rhs
        } else {
            self
        }
    }

    #[inline]
    pub fn times(self, rhs: Weight) -> Weight {
        if self.is_zero() || rhs.is_zero() {
            return Weight::ZERO;
        }
        Weight(self.0 + rhs.0)
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == f64::INFINITY
    }

    /// Cost of a probability, `-ln p`.
    pub fn from_prob(p: f64) -> Weight {
        Weight(-p.ln())
    }
}

impl From<f64> for Weight {
    fn from(v: f64) -> Self {
        Weight(v)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
