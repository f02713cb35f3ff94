use std::fmt;

use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

/// Closed rational interval `[lo, hi]`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(Rational, Rational)", into = "(Rational, Rational)")]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::invalid(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(RationalInterval { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        RationalInterval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        self.lo.midpoint(&self.hi)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// `n + 1` equally spaced points including both ends.
    pub fn grid(&self, n: usize) -> Vec<Rational> {
        let n = n.max(1);
        let step = self.width() / Rational::from(n as i64);
        (0..=n)
            .map(|k| &self.lo + &(&step * &Rational::from(k as i64)))
            .collect()
    }
}

impl TryFrom<(Rational, Rational)> for RationalInterval {
    type Error = Error;
    fn try_from((lo, hi): (Rational, Rational)) -> Result<Self> {
        RationalInterval::new(lo, hi)
    }
}

impl From<RationalInterval> for (Rational, Rational) {
    fn from(i: RationalInterval) -> Self {
        (i.lo, i.hi)
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Which ends of an interval are excluded from a strict sign query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Ends {
    pub open_lo: bool,
    pub open_hi: bool,
}

impl Ends {
    pub const CLOSED: Ends = Ends { open_lo: false, open_hi: false };
    pub const OPEN: Ends = Ends { open_lo: true, open_hi: true };

    pub fn new(open_lo: bool, open_hi: bool) -> Self {
        Ends { open_lo, open_hi }
    }

    /// Renders an interval with bracket style matching the openness.
    pub fn render(&self, i: &RationalInterval) -> String {
        format!(
            "{}{}, {}{}",
            if self.open_lo { '(' } else { '[' },
            i.lo(),
            i.hi(),
            if self.open_hi { ')' } else { ']' }
        )
    }
}
