//! Brute-force miner: count every non-empty subset of every basket.
//!
//! Exponential in basket length, so it is only allowed on small inputs and
//! serves as the reference the other miners are checked against.

use std::collections::HashMap;

use crate::database::TransactionDatabase;
use crate::error::{Error, Result};
use crate::item::{ItemId, Itemset};
use crate::result::MiningResult;
use crate::scalar::Fraction;
use crate::support::Threshold;

pub const MAX_BASKET_LEN: usize = 20;
pub const MAX_DISTINCT_ITEMS: usize = 24;

/// Support counts for every subset seen in at least one basket.
#[derive(Debug, Default, Clone)]
pub struct SubsetCounter {
    counts: HashMap<Itemset, u64>,
}

impl SubsetCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds one to each non-empty subset of `basket` (sorted, at most
    /// [`MAX_BASKET_LEN`] items).
    pub fn count_basket(&mut self, basket: &[ItemId]) {
        assert!(basket.len() <= MAX_BASKET_LEN);
        let mut subset = Vec::with_capacity(basket.len());
        for mask in 1u32..(1u32 << basket.len()) {
            subset.clear();
            subset.extend(
                basket
                    .iter()
                    .enumerate()
                    .filter(|(bit, _)| mask & (1 << bit) != 0)
                    .map(|(_, &item)| item),
            );
            *self
                .counts
                .entry(Itemset::from_sorted(subset.clone()))
                .or_insert(0) += 1;
        }
    }

    pub fn counts(&self) -> &HashMap<Itemset, u64> {
        &self.counts
    }

    pub fn into_counts(self) -> HashMap<Itemset, u64> {
        self.counts
    }
}

/// Checks the tractability limits of [`mine_naive`].
pub fn check_guard(db: &TransactionDatabase) -> Result<()> {
    let longest = db.max_basket_len();
    if longest > MAX_BASKET_LEN {
        return Err(Error::Capacity {
            what: "naive miner basket length",
            actual: longest,
            limit: MAX_BASKET_LEN,
        });
    }
    if db.item_count() > MAX_DISTINCT_ITEMS {
        return Err(Error::Capacity {
            what: "naive miner distinct item count",
            actual: db.item_count(),
            limit: MAX_DISTINCT_ITEMS,
        });
    }
    Ok(())
}

pub fn mine_naive<F: Fraction>(
    db: &TransactionDatabase,
    sigma: &Threshold<F>,
) -> Result<MiningResult> {
    check_guard(db)?;
    let n = db.len() as u64;
    let min_support = sigma.resolve(n)?;

    let mut counter = SubsetCounter::new();
    for basket in db.baskets() {
        counter.count_basket(basket.items());
    }
    let entries = counter
        .into_counts()
        .into_iter()
        .filter(|&(_, count)| count >= min_support)
        .collect();
    Ok(MiningResult::new(entries, min_support, n))
}
