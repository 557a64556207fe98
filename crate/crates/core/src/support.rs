//! Support thresholds and relative support.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Fraction;

/// Minimum support. An itemset is frequent when its absolute support is
/// at least the resolved count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Threshold<F> {
    /// A basket count, at least 1.
    Absolute(u64),
    /// A fraction of the database in `(0, 1]`.
    Relative(F),
}

impl<F: Fraction> Threshold<F> {
    pub fn absolute(count: u64) -> Result<Self> {
        let t = Threshold::Absolute(count);
        t.validate()?;
        Ok(t)
    }

    pub fn relative(fraction: F) -> Result<Self> {
        let t = Threshold::Relative(fraction);
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Threshold::Absolute(0) => Err(Error::Threshold(
                "absolute support must be at least 1".into(),
            )),
            Threshold::Relative(f) if !f.is_unit_fraction() => Err(Error::Threshold(format!(
                "relative support {f} is outside (0, 1]"
            ))),
            _ => Ok(()),
        }
    }

    /// Minimum basket count for a database of `n` baskets.
    ///
    /// A relative threshold resolves to `ceil(fraction * n)`, and to 1 when
    /// `n == 0`, where nothing can be frequent anyway.
    pub fn resolve(&self, n: u64) -> Result<u64> {
        self.validate()?;
        Ok(match *self {
            Threshold::Absolute(count) => count,
            Threshold::Relative(f) => f.ceil_scaled(n).max(1),
        })
    }
}

impl<F: fmt::Display> fmt::Display for Threshold<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Absolute(count) => write!(f, "{count}"),
            Threshold::Relative(frac) => write!(f, "{frac} (relative)"),
        }
    }
}

/// `count / n`: the fraction of baskets covering an itemset.
pub fn relative_support<F: Fraction>(count: u64, n: u64) -> Result<F> {
    if n == 0 {
        return Err(Error::DivisionDomain);
    }
    debug_assert!(count <= n);
    Ok(F::from_counts(count, n))
}
