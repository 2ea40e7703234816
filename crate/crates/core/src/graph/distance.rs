use std::fmt;

use serde::{Deserialize, Serialize};

/// A path length over the tropical semiring `(min, +)`.
///
/// Values are 32-bit unsigned. `u32::MAX` is reserved as the unreachable
/// sentinel; addition saturates into it instead of wrapping.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Distance(pub u32);

impl Distance {
    pub const INF: Distance = Distance(u32::MAX);
    pub const ZERO: Distance = Distance(0);

    #[inline]
    pub const fn new(v: u32) -> Self {
        Distance(v)
    }

    #[inline]
    pub const fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_inf(self) -> bool {
        self.0 == u32::MAX
    }

    #[inline]
    pub const fn is_finite(self) -> bool {
        self.0 != u32::MAX
    }

    /// Tropical multiplication.
    #[inline]
    pub fn plus(self, other: Distance) -> Distance {
        saturating_add(self, other)
    }

    /// Tropical addition.
    #[inline]
    pub fn min(self, other: Distance) -> Distance {
        Ord::min(self, other)
    }
}

impl fmt::Debug for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inf() {
            f.write_str("INF")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl From<u32> for Distance {
    fn from(v: u32) -> Self {
        Distance(v)
    }
}

/// `min(a + b, INF)` in exact integer arithmetic. INF absorbs.
#[inline]
pub fn saturating_add(a: Distance, b: Distance) -> Distance {
    // u32::MAX is both the saturation point and the sentinel, so a single
    // saturating add covers the absorbing case too.
    Distance(a.0.saturating_add(b.0))
}

#[inline]
pub fn saturating_add3(a: Distance, b: Distance, c: Distance) -> Distance {
    saturating_add(saturating_add(a, b), c)
}
