//! Inclusive integer windows used to truncate the index set of the basis.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The inclusive range `lo..=hi` of basis indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    lo: i64,
    hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidSpec(format!("window {lo}..{hi} has lo > hi")));
        }
        Ok(Window { lo, hi })
    }

    /// Symmetric window `-r..=r`.
    pub fn symmetric(r: i64) -> Self {
        Window { lo: -r.abs(), hi: r.abs() }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn len(&self) -> u64 {
        (self.hi - self.lo + 1) as u64
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, m: i64) -> bool {
        self.lo <= m && m <= self.hi
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl FromStr for Window {
    type Err = Error;

    /// Parses "LO..HI", both bounds inclusive.
    fn from_str(s: &str) -> Result<Self> {
        let (lo, hi) = s
            .split_once("..")
            .ok_or_else(|| Error::Parse(format!("invalid window {s:?}, expected LO..HI")))?;
        let lo: i64 = lo
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid window bound {lo:?}")))?;
        let hi: i64 = hi
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid window bound {hi:?}")))?;
        Window::new(lo, hi)
    }
}
