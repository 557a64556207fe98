#![allow(dead_code)]

use std::collections::BTreeMap;

use fim_core::{MiningResult, TransactionDatabase};
use rand::Rng;

/// Random database as token lines: up to `max_items` distinct items,
/// up to `max_baskets` baskets of 1..=`max_len` items each.
pub fn random_lines<R: Rng>(
    rng: &mut R,
    max_items: u32,
    max_baskets: usize,
    max_len: usize,
) -> Vec<String> {
    let items = rng.gen_range(1..=max_items);
    let baskets = rng.gen_range(0..=max_baskets);
    (0..baskets)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            (0..len)
                .map(|_| format!("i{}", rng.gen_range(0..items)))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect()
}

pub fn random_db<R: Rng>(
    rng: &mut R,
    max_items: u32,
    max_baskets: usize,
    max_len: usize,
) -> TransactionDatabase {
    TransactionDatabase::from_lines(random_lines(rng, max_items, max_baskets, max_len)).unwrap()
}

/// Every non-empty itemset over the whole dictionary, counted by scanning
/// the baskets as bitmasks. Independent of any miner.
pub fn power_set_oracle(db: &TransactionDatabase, min_support: u64) -> BTreeMap<Vec<u32>, u64> {
    let n_items = db.item_count();
    assert!(n_items <= 20, "oracle enumerates 2^|J| sets");
    let masks: Vec<u32> = db
        .baskets()
        .iter()
        .map(|b| b.items().iter().fold(0u32, |m, id| m | (1 << id.0)))
        .collect();
    let mut out = BTreeMap::new();
    for set in 1u32..(1u32 << n_items) {
        let support = masks.iter().filter(|&&m| m & set == set).count() as u64;
        if support >= min_support && support > 0 {
            let items = (0..n_items as u32)
                .filter(|i| set & (1 << i) != 0)
                .collect();
            out.insert(items, support);
        }
    }
    out
}

pub fn as_map(result: &MiningResult) -> BTreeMap<Vec<u32>, u64> {
    result
        .entries()
        .iter()
        .map(|(set, s)| (set.items().iter().map(|i| i.0).collect(), *s))
        .collect()
}
