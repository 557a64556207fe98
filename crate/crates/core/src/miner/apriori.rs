//! Level-wise breadth-first mining.
//!
//! Each level counts its candidates with one full pass over the database,
//! keeps the frequent ones, and joins pairs sharing a `k-1` prefix into the
//! next level's candidates. A candidate survives the join only if all of its
//! `k`-subsets are frequent.
//!
//! Itemsets of a level are stored back to back in one flat buffer (stride
//! `k`) in ascending lexicographic order. Growth goes through `try_reserve`,
//! so an exhausted address space surfaces as [`Error::MemoryExhausted`]
//! rather than an abort.

use std::cmp::Ordering;
use std::thread;

use super::MineOptions;
use crate::database::{Basket, TransactionDatabase};
use crate::error::{Error, Result};
use crate::item::{ItemId, Itemset};
use crate::result::MiningResult;
use crate::scalar::Fraction;
use crate::support::Threshold;

/// Flat, lexicographically sorted list of `k`-itemsets with a support each.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Table {
    k: usize,
    items: Vec<ItemId>,
    supports: Vec<u64>,
}

impl Table {
    fn with_level(k: usize) -> Self {
        Self {
            k,
            ..Default::default()
        }
    }

    fn len(&self) -> usize {
        self.supports.len()
    }

    fn get(&self, idx: usize) -> &[ItemId] {
        &self.items[idx * self.k..(idx + 1) * self.k]
    }

    fn contains(&self, itemset: &[ItemId]) -> bool {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            match self.get(mid).cmp(itemset) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return true,
            }
        }
        false
    }

    fn bytes_for(&self, extra: usize) -> usize {
        (self.items.len() + extra * self.k) * size_of::<ItemId>()
            + (self.supports.len() + extra) * size_of::<u64>()
    }

    fn try_push(&mut self, itemset: &[ItemId], support: u64, limit: Option<usize>) -> Result<()> {
        debug_assert_eq!(itemset.len(), self.k);
        if let Some(limit) = limit {
            let needed = self.bytes_for(1);
            if needed > limit {
                return Err(Error::MemoryExhausted(format!(
                    "level {} candidates need more than the {limit}-byte budget",
                    self.k
                )));
            }
        }
        let (k, len) = (self.k, self.len());
        let oom = |_| {
            Error::MemoryExhausted(format!(
                "allocation failed growing level {k} past {len} itemsets"
            ))
        };
        self.items.try_reserve(self.k).map_err(oom)?;
        self.supports.try_reserve(1).map_err(oom)?;
        self.items.extend_from_slice(itemset);
        self.supports.push(support);
        Ok(())
    }

    fn from_entries(k: usize, mut entries: Vec<(Itemset, u64)>) -> Self {
        assert!(k >= 1);
        entries.sort_unstable();
        entries.dedup_by(|a, b| a.0 == b.0);
        let mut table = Self::with_level(k);
        for (set, support) in entries {
            assert_eq!(set.len(), k, "all itemsets of a level have k items");
            table.items.extend_from_slice(set.items());
            table.supports.push(support);
        }
        table
    }

    fn entries(&self) -> Vec<(Itemset, u64)> {
        (0..self.len())
            .map(|i| (Itemset::from_sorted(self.get(i).to_vec()), self.supports[i]))
            .collect()
    }
}

/// Candidate `k`-itemsets awaiting (or holding) their support counts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CandidateSet(Table);

/// The frequent `k`-itemsets of one level.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrequentLevel(Table);

macro_rules! level_accessors {
    ($t:ty) => {
        impl $t {
            /// Builds a level from `k`-itemsets; order is normalized.
            pub fn new(k: usize, entries: Vec<(Itemset, u64)>) -> Self {
                Self(Table::from_entries(k, entries))
            }

            pub fn level(&self) -> usize {
                self.0.k
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.len() == 0
            }

            pub fn itemset(&self, idx: usize) -> &[ItemId] {
                self.0.get(idx)
            }

            pub fn support(&self, idx: usize) -> u64 {
                self.0.supports[idx]
            }

            pub fn contains(&self, itemset: &[ItemId]) -> bool {
                itemset.len() == self.0.k && self.0.contains(itemset)
            }

            pub fn iter(&self) -> impl Iterator<Item = (&[ItemId], u64)> + '_ {
                (0..self.len()).map(move |i| (self.0.get(i), self.0.supports[i]))
            }

            pub fn entries(&self) -> Vec<(Itemset, u64)> {
                self.0.entries()
            }
        }
    };
}

level_accessors!(CandidateSet);
level_accessors!(FrequentLevel);

impl FrequentLevel {
    /// Keeps the candidates with support at least `min_support`.
    pub fn extract(candidates: &CandidateSet, min_support: u64) -> Self {
        Self::try_extract(candidates, min_support, None).expect("no memory limit configured")
    }

    /// [`FrequentLevel::extract`] with an optional byte budget.
    pub fn try_extract(
        candidates: &CandidateSet,
        min_support: u64,
        memory_limit: Option<usize>,
    ) -> Result<Self> {
        let src = &candidates.0;
        let mut table = Table::with_level(src.k);
        for i in 0..src.len() {
            if src.supports[i] >= min_support {
                table.try_push(src.get(i), src.supports[i], memory_limit)?;
            }
        }
        Ok(Self(table))
    }
}

/// Joins `fk` with itself into the `k+1` candidates, pruning any candidate
/// that has an infrequent `k`-subset.
pub fn generate_candidates(fk: &FrequentLevel) -> CandidateSet {
    try_generate_candidates(fk, None).expect("no memory limit configured")
}

/// [`generate_candidates`] with an optional byte budget for the new level.
pub fn try_generate_candidates(
    fk: &FrequentLevel,
    memory_limit: Option<usize>,
) -> Result<CandidateSet> {
    let level = &fk.0;
    let k = level.k;
    let mut out = Table::with_level(k + 1);
    if level.len() == 0 {
        return Ok(CandidateSet(out));
    }
    let mut candidate = Vec::with_capacity(k + 1);
    let mut subset = Vec::with_capacity(k);
    let mut start = 0;
    while start < level.len() {
        let prefix = &level.get(start)[..k - 1];
        let end = (start + 1..level.len())
            .find(|&j| &level.get(j)[..k - 1] != prefix)
            .unwrap_or(level.len());
        for a in start..end {
            for b in a + 1..end {
                candidate.clear();
                candidate.extend_from_slice(level.get(a));
                candidate.push(level.get(b)[k - 1]);
                // Dropping either of the last two items gives `a` or `b`,
                // which are frequent by construction.
                let all_frequent = (0..k.saturating_sub(1)).all(|drop| {
                    subset.clear();
                    subset.extend(
                        candidate
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != drop)
                            .map(|(_, &item)| item),
                    );
                    level.contains(&subset)
                });
                if all_frequent {
                    out.try_push(&candidate, 0, memory_limit)?;
                }
            }
        }
        start = end;
    }
    Ok(CandidateSet(out))
}

/// Counts each candidate's support with one full pass over `db`.
pub fn count_candidate_supports(
    db: &TransactionDatabase,
    candidates: CandidateSet,
) -> CandidateSet {
    count_with_threads(db, candidates, 1).expect("counter allocation failed")
}

fn zeroed_counts(len: usize) -> Result<Vec<u64>> {
    let mut counts = Vec::new();
    counts.try_reserve_exact(len).map_err(|_| {
        Error::MemoryExhausted(format!("allocation failed for {len} candidate counters"))
    })?;
    counts.resize(len, 0);
    Ok(counts)
}

fn count_with_threads(
    db: &TransactionDatabase,
    mut candidates: CandidateSet,
    threads: usize,
) -> Result<CandidateSet> {
    if candidates.is_empty() {
        return Ok(candidates);
    }
    let table = &candidates.0;
    let baskets = db.baskets();
    let threads = threads.max(1).min(baskets.len().max(1));
    let counts = if threads == 1 {
        count_chunk(table, baskets, db.item_count())?
    } else {
        let chunk = baskets.len().div_ceil(threads);
        thread::scope(|scope| {
            let handles: Vec<_> = baskets
                .chunks(chunk)
                .map(|part| scope.spawn(move || count_chunk(table, part, db.item_count())))
                .collect();
            let mut total = zeroed_counts(table.len())?;
            for handle in handles {
                let part = handle.join().expect("counting thread panicked")?;
                for (t, c) in total.iter_mut().zip(part) {
                    *t += c;
                }
            }
            Ok::<_, Error>(total)
        })?
    };
    for (support, count) in candidates.0.supports.iter_mut().zip(counts) {
        *support += count;
    }
    Ok(candidates)
}

fn count_chunk(table: &Table, baskets: &[Basket], item_count: usize) -> Result<Vec<u64>> {
    let mut counts = zeroed_counts(table.len())?;
    // marks[item] == stamp  <=>  item is in the current basket
    let mut marks = vec![0u32; item_count];
    for (stamp, basket) in (1u32..).zip(baskets) {
        if basket.len() < table.k {
            continue;
        }
        for item in basket.items() {
            marks[item.index()] = stamp;
        }
        for (idx, count) in counts.iter_mut().enumerate() {
            if table.get(idx).iter().all(|i| marks[i.index()] == stamp) {
                *count += 1;
            }
        }
    }
    Ok(counts)
}

/// Counters observed during one Apriori run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AprioriStats {
    /// Full passes over the database.
    pub scans: usize,
    /// Candidate count of each level that was counted.
    pub candidates_per_level: Vec<usize>,
}

pub fn mine_apriori<F: Fraction>(
    db: &TransactionDatabase,
    sigma: &Threshold<F>,
) -> Result<MiningResult> {
    mine_apriori_with(db, sigma, &MineOptions::default()).map(|(r, _)| r)
}

pub fn mine_apriori_with<F: Fraction>(
    db: &TransactionDatabase,
    sigma: &Threshold<F>,
    opts: &MineOptions,
) -> Result<(MiningResult, AprioriStats)> {
    let n = db.len() as u64;
    let min_support = sigma.resolve(n)?;
    let mut stats = AprioriStats::default();
    let mut levels: Vec<FrequentLevel> = Vec::new();

    // C1 = every item of the dictionary.
    let mut candidates = {
        let mut table = Table::with_level(1);
        for id in 0..db.item_count() as u32 {
            table.try_push(&[ItemId(id)], 0, opts.memory_limit)?;
        }
        CandidateSet(table)
    };

    while !candidates.is_empty() {
        stats.scans += 1;
        stats.candidates_per_level.push(candidates.len());
        candidates = if candidates.level() == 1 {
            count_singletons(db, candidates)
        } else {
            count_with_threads(db, candidates, opts.threads)?
        };
        let frequent = FrequentLevel::try_extract(&candidates, min_support, opts.memory_limit)?;
        if frequent.is_empty() {
            break;
        }
        candidates = try_generate_candidates(&frequent, opts.memory_limit)?;
        levels.push(frequent);
    }

    let total: usize = levels.iter().map(FrequentLevel::len).sum();
    let mut entries = Vec::new();
    entries.try_reserve_exact(total).map_err(|_| {
        Error::MemoryExhausted(format!(
            "allocation failed collecting {total} frequent itemsets"
        ))
    })?;
    entries.extend(levels.iter().flat_map(FrequentLevel::entries));
    Ok((MiningResult::new(entries, min_support, n), stats))
}

// Same result as the generic pass: {i} is a subset of a basket exactly
// when i is one of its items.
fn count_singletons(db: &TransactionDatabase, mut candidates: CandidateSet) -> CandidateSet {
    for basket in db.baskets() {
        for item in basket.items() {
            candidates.0.supports[item.index()] += 1;
        }
    }
    candidates
}
