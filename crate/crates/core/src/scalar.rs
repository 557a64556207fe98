//! Scalar types usable as relative supports and threshold fractions.
//!
//! Counts are always integers; only ratios of counts go through this trait.
//! `f32`/`f64` give the usual floating point view, `Ratio<u64>` keeps
//! thresholds like `0.7` exact so that `ceil(0.7 * 10)` is 7 and not 8.

use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::Num;

pub trait Fraction: Num + Copy + PartialOrd + Debug + Display {
    /// `count / n`, with `n > 0`.
    fn from_counts(count: u64, n: u64) -> Self;

    /// Smallest integer `m` with `m >= self * n`.
    fn ceil_scaled(self, n: u64) -> u64;

    fn to_f64(self) -> f64;

    /// True for finite values in `(0, 1]`.
    fn is_unit_fraction(self) -> bool {
        self > Self::zero() && self <= Self::one()
    }
}

macro_rules! impl_float_fraction {
    ($($t:ty),*) => {
        $(
            impl Fraction for $t {
                fn from_counts(count: u64, n: u64) -> Self {
                    (count as f64 / n as f64) as $t
                }

                // 0.7 * 10.0 == 7.000000000000001 in f64; products within a few
                // ulps of an integer snap to it before taking the ceiling.
                fn ceil_scaled(self, n: u64) -> u64 {
                    let x = self as f64 * n as f64;
                    let nearest = x.round();
                    let tol = 4.0 * (<$t>::EPSILON as f64) * nearest.abs().max(1.0);
                    if (x - nearest).abs() <= tol {
                        nearest as u64
                    } else {
                        x.ceil() as u64
                    }
                }

                fn to_f64(self) -> f64 {
                    self as f64
                }

                fn is_unit_fraction(self) -> bool {
                    self.is_finite() && self > 0.0 && self <= 1.0
                }
            }
        )*
    };
}

impl_float_fraction!(f32, f64);

impl Fraction for Ratio<u64> {
    fn from_counts(count: u64, n: u64) -> Self {
        Ratio::new(count, n)
    }

    fn ceil_scaled(self, n: u64) -> u64 {
        let numer = *self.numer() as u128 * n as u128;
        let denom = *self.denom() as u128;
        numer.div_ceil(denom) as u64
    }

    fn to_f64(self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

/// Parses a plain decimal such as `0.6` or `1.0` into an exact ratio.
pub fn parse_decimal_ratio(text: &str) -> Option<Ratio<u64>> {
    let (int_part, frac_part) = text.split_once('.').unwrap_or((text, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) || frac_part.len() > 18 {
        return None;
    }
    let scale = 10u64.pow(frac_part.len() as u32);
    let int: u64 = if int_part.is_empty() {
        0
    } else {
        int_part.parse().ok()?
    };
    let frac: u64 = if frac_part.is_empty() {
        0
    } else {
        frac_part.parse().ok()?
    };
    let numer = int.checked_mul(scale)?.checked_add(frac)?;
    Some(Ratio::new(numer, scale))
}
