//! Cross-checks the miners against each other.

use crate::database::TransactionDatabase;
use crate::error::Result;
use crate::miner::{self, naive, Algorithm, MineOptions};
use crate::result::{diff_results, MiningResult};
use crate::scalar::Fraction;
use crate::support::Threshold;

/// Differences are capped at this many lines per mismatching pair.
pub const DIFF_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub reference: Algorithm,
    pub other: Algorithm,
    /// `- line` is only in the reference, `+ line` only in `other`.
    pub diff: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub results: Vec<(Algorithm, MiningResult)>,
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares every result with the first one.
pub fn compare(db: &TransactionDatabase, results: &[(Algorithm, MiningResult)]) -> Vec<Mismatch> {
    let Some((reference, expected)) = results.first() else {
        return Vec::new();
    };
    results[1..]
        .iter()
        .filter(|(_, actual)| actual.entries() != expected.entries())
        .map(|(other, actual)| Mismatch {
            reference: *reference,
            other: *other,
            diff: diff_results(db.dictionary(), expected, actual, DIFF_LIMIT),
        })
        .collect()
}

/// Runs Apriori, Eclat and FP-Growth, plus the naive miner first when
/// `against_naive` is set, and compares their outputs.
///
/// `tamper` may rewrite a result before comparison; the CLI uses it for
/// fault injection.
pub fn verify<F: Fraction>(
    db: &TransactionDatabase,
    sigma: &Threshold<F>,
    against_naive: bool,
    opts: &MineOptions,
    mut tamper: impl FnMut(Algorithm, MiningResult) -> MiningResult,
) -> Result<VerifyReport> {
    if against_naive {
        naive::check_guard(db)?;
    }
    let algorithms = against_naive
        .then_some(Algorithm::Naive)
        .into_iter()
        .chain(Algorithm::TIMED);
    let mut results = Vec::new();
    for algorithm in algorithms {
        let result = miner::mine(algorithm, db, sigma, opts)?;
        results.push((algorithm, tamper(algorithm, result)));
    }
    let mismatches = compare(db, &results);
    Ok(VerifyReport {
        results,
        mismatches,
    })
}

/// Drops the last entry of a result, a deliberately wrong miner output.
pub fn drop_last_entry(result: MiningResult) -> MiningResult {
    let mut entries = result.entries().to_vec();
    entries.pop();
    MiningResult::new(entries, result.min_support(), result.basket_count())
}
