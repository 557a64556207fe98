//! The four miners and a name-based dispatcher.

pub mod apriori;
pub mod eclat;
pub mod fpgrowth;
pub mod naive;

use std::fmt;
use std::str::FromStr;

use crate::database::TransactionDatabase;
use crate::error::{Error, Result};
use crate::result::MiningResult;
use crate::scalar::Fraction;
use crate::support::Threshold;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Naive,
    Apriori,
    Eclat,
    FpGrowth,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Naive,
        Algorithm::Apriori,
        Algorithm::Eclat,
        Algorithm::FpGrowth,
    ];

    /// The algorithms that are benchmarked.
    pub const TIMED: [Algorithm; 3] = [Algorithm::Apriori, Algorithm::Eclat, Algorithm::FpGrowth];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Naive => "naive",
            Algorithm::Apriori => "apriori",
            Algorithm::Eclat => "eclat",
            Algorithm::FpGrowth => "fpgrowth",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                Error::Usage(format!(
                    "unknown algorithm {s:?}; expected one of naive, apriori, eclat, fpgrowth"
                ))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MineOptions {
    /// Worker threads for Apriori's counting pass. 1 keeps everything on
    /// the calling thread.
    pub threads: usize,
    /// Byte budget for Apriori's candidate levels.
    pub memory_limit: Option<usize>,
}

impl Default for MineOptions {
    fn default() -> Self {
        Self {
            threads: 1,
            memory_limit: None,
        }
    }
}

pub fn mine<F: Fraction>(
    algorithm: Algorithm,
    db: &TransactionDatabase,
    sigma: &Threshold<F>,
    opts: &MineOptions,
) -> Result<MiningResult> {
    match algorithm {
        Algorithm::Naive => naive::mine_naive(db, sigma),
        Algorithm::Apriori => apriori::mine_apriori_with(db, sigma, opts).map(|(r, _)| r),
        Algorithm::Eclat => eclat::mine_eclat(db, sigma),
        Algorithm::FpGrowth => fpgrowth::mine_fpgrowth(db, sigma),
    }
}
