mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::{as_map, power_set_oracle, random_db, random_lines};
use fim_core::miner::apriori::{generate_candidates, mine_apriori_with, FrequentLevel};
use fim_core::miner::eclat::{intersect_tidsets, mine_eclat, vertical_database, Tidset};
use fim_core::miner::fpgrowth::{mine_fpgrowth, FpTree, ItemOrder, WeightedBasket};
use fim_core::miner::naive::mine_naive;
use fim_core::miner::{mine, Algorithm, MineOptions};
use fim_core::result::parse_result;
use fim_core::{ItemId, Itemset, SupportThreshold, TransactionDatabase};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn db_from_seed(seed: u64) -> TransactionDatabase {
    random_db(&mut ChaCha8Rng::seed_from_u64(seed), 10, 40, 7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn naive_matches_power_set(seed in any::<u64>(), sigma in 1u64..4) {
        let db = db_from_seed(seed);
        let result = mine_naive(&db, &SupportThreshold::Absolute(sigma)).unwrap();
        prop_assert_eq!(as_map(&result), power_set_oracle(&db, sigma));
    }

    #[test]
    fn all_miners_match_naive(seed in any::<u64>(), sigma in 1u64..4) {
        let db = db_from_seed(seed);
        let t = SupportThreshold::Absolute(sigma);
        let expected = mine_naive(&db, &t).unwrap();
        for algorithm in Algorithm::TIMED {
            let got = mine(algorithm, &db, &t, &MineOptions::default()).unwrap();
            prop_assert_eq!(got.entries(), expected.entries(), "{}", algorithm);
        }
    }

    #[test]
    fn threaded_apriori_matches(seed in any::<u64>()) {
        let db = db_from_seed(seed);
        let t = SupportThreshold::Absolute(2);
        let opts = MineOptions { threads: 3, ..MineOptions::default() };
        let (threaded, _) = mine_apriori_with(&db, &t, &opts).unwrap();
        let (single, _) = mine_apriori_with(&db, &t, &MineOptions::default()).unwrap();
        prop_assert_eq!(threaded, single);
    }

    #[test]
    fn support_is_monotone(seed in any::<u64>(), mask_a in any::<u32>(), mask_b in any::<u32>()) {
        let db = db_from_seed(seed);
        let n = db.item_count() as u32;
        let pick = |mask: u32| (0..n).filter(|i| mask & (1 << i) != 0).map(ItemId).collect::<Vec<_>>();
        let small = pick(mask_a & mask_b);
        let large = pick(mask_a);
        if let (Some(x), Some(y)) = (Itemset::new(small), Itemset::new(large)) {
            let (sx, sy) = (db.support_of(&x).unwrap(), db.support_of(&y).unwrap());
            prop_assert!(sx >= sy);
            let rel: f64 = fim_core::relative_support(sx, db.len() as u64).unwrap();
            prop_assert!((0.0..=1.0).contains(&rel));
        }
    }

    #[test]
    fn thresholds_nest(seed in any::<u64>(), sigma in 1u64..5) {
        let db = db_from_seed(seed);
        let low = as_map(&mine_naive(&db, &SupportThreshold::Absolute(sigma)).unwrap());
        let high = as_map(&mine_naive(&db, &SupportThreshold::Absolute(sigma + 1)).unwrap());
        for (k, v) in &high {
            prop_assert_eq!(low.get(k), Some(v));
        }
    }

    #[test]
    fn database_text_round_trip(seed in any::<u64>()) {
        let db = db_from_seed(seed);
        let mut text = Vec::new();
        db.write(&mut text).unwrap();
        let again = TransactionDatabase::parse(text.as_slice()).unwrap();
        let mut text2 = Vec::new();
        again.write(&mut text2).unwrap();
        prop_assert_eq!(&text, &text2);
        prop_assert_eq!(again.len(), db.len());
        let tokens = |d: &TransactionDatabase| d.baskets().iter().map(|b| {
            b.items().iter().map(|&i| d.dictionary().token(i).unwrap().to_owned()).collect::<BTreeSet<_>>()
        }).collect::<Vec<_>>();
        prop_assert_eq!(tokens(&again), tokens(&db));
        // serialized text parses back to a byte-identical database
        prop_assert_eq!(TransactionDatabase::parse(text2.as_slice()).unwrap(), again);
    }

    #[test]
    fn result_text_round_trip(seed in any::<u64>()) {
        let db = db_from_seed(seed);
        let result = mine_eclat(&db, &SupportThreshold::Absolute(2)).unwrap();
        let text = result.to_canonical_string(db.dictionary());
        let mut parsed = parse_result(text.as_bytes()).unwrap();
        let mut expected: Vec<(Vec<String>, u64)> = result.entries().iter().map(|(set, s)| {
            let mut toks: Vec<String> = set.items().iter().map(|&i| db.dictionary().token(i).unwrap().to_owned()).collect();
            toks.sort();
            (toks, *s)
        }).collect();
        parsed.sort();
        expected.sort();
        prop_assert_eq!(parsed, expected);
    }

    #[test]
    fn relative_thresholds_agree_across_scalars(seed in any::<u64>(), pct in 1u64..=100) {
        let db = db_from_seed(seed);
        let exact = fim_core::ExactSupportThreshold::Relative(fim_core::Ratio::new(pct, 100));
        let float = SupportThreshold::Relative(pct as f64 / 100.0);
        let a = mine_fpgrowth(&db, &exact).unwrap();
        let b = mine_fpgrowth(&db, &float).unwrap();
        prop_assert_eq!(a.min_support(), b.min_support());
        prop_assert_eq!(a, b);
    }
}

#[test]
fn apriori_levels_and_scans() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let db = random_db(&mut rng, 10, 40, 7);
        let t = SupportThreshold::Absolute(2);
        let (result, stats) = mine_apriori_with(&db, &t, &MineOptions::default()).unwrap();
        // one scan per non-empty candidate level
        assert_eq!(stats.scans, stats.candidates_per_level.len());
        assert!(stats.candidates_per_level.iter().all(|&c| c > 0));

        // level-by-level: candidates from each frequent level have no infrequent k-subset
        let max_k = result
            .entries()
            .iter()
            .map(|(s, _)| s.len())
            .max()
            .unwrap_or(0);
        for k in 1..=max_k {
            let fk = FrequentLevel::new(
                k,
                result
                    .entries()
                    .iter()
                    .filter(|(s, _)| s.len() == k)
                    .cloned()
                    .collect(),
            );
            assert!(fk.iter().all(|(set, s)| set.len() == k && s >= 2));
            let next = generate_candidates(&fk);
            for (cand, _) in next.iter() {
                for drop in 0..cand.len() {
                    let mut sub = cand.to_vec();
                    sub.remove(drop);
                    assert!(fk.contains(&sub));
                }
            }
        }
    }
}

#[test]
fn eclat_vertical_incidences() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let db = random_db(&mut rng, 10, 40, 7);
        let v = vertical_database(&db, &SupportThreshold::Absolute(2)).unwrap();
        let supports = db.item_supports();
        let expected: u64 = supports.iter().filter(|&&s| s >= 2).sum();
        assert_eq!(v.incidences() as u64, expected);
        for (item, tids) in v.columns() {
            assert!(tids.tids().windows(2).all(|w| w[0] < w[1]));
            assert_eq!(tids.len() as u64, supports[item.index()]);
        }
    }
}

#[test]
fn tidset_intersection_matches_set_semantics() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    use rand::Rng;
    for _ in 0..200 {
        let a: Vec<u32> = (0..rng.gen_range(0..30))
            .map(|_| rng.gen_range(0..50))
            .collect();
        let b: Vec<u32> = (0..rng.gen_range(0..30))
            .map(|_| rng.gen_range(0..50))
            .collect();
        let expected: Vec<u32> = a
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .intersection(&b.iter().copied().collect())
            .copied()
            .collect();
        let got = intersect_tidsets(&Tidset::new(a), &Tidset::new(b));
        assert_eq!(got.tids(), expected.as_slice());
    }
}

#[test]
fn fptree_prefix_paths_recount() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..100 {
        let db = random_db(&mut rng, 10, 40, 7);
        let sigma = 2;
        let tree = FpTree::from_database(&db, &SupportThreshold::Absolute(sigma)).unwrap();
        let frequent: BTreeSet<ItemId> = tree.header().iter().map(|r| r.item).collect();
        for row in tree.header() {
            let paths = tree.prefix_paths(row.item).unwrap();
            assert_eq!(paths.iter().map(|p| p.weight).sum::<u64>(), row.support);
            // recounting (item, j) pairs from the conditional database matches
            // a direct scan of the original database restricted to frequent items
            for &j in &frequent {
                if j == row.item {
                    continue;
                }
                let from_paths: u64 = paths
                    .iter()
                    .filter(|p| p.items.contains(&j))
                    .map(|p| p.weight)
                    .sum();
                let in_order_before = tree.item_order().rank(j) < tree.item_order().rank(row.item);
                let direct = db
                    .baskets()
                    .iter()
                    .filter(|b| b.contains(row.item) && b.contains(j))
                    .count() as u64;
                if in_order_before {
                    assert_eq!(from_paths, direct);
                } else {
                    assert_eq!(from_paths, 0);
                }
            }
        }
    }
}

#[test]
fn fptree_conditional_soundness() {
    // Mining the conditional database of item i (plus i) gives exactly the
    // frequent itemsets whose last item in tree order is i.
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..60 {
        let db = random_db(&mut rng, 8, 30, 6);
        let sigma = 2;
        let oracle = power_set_oracle(&db, sigma);
        let tree = FpTree::from_database(&db, &SupportThreshold::Absolute(sigma)).unwrap();
        let order = Arc::clone(tree.item_order());
        for row in tree.header() {
            let paths = tree.prefix_paths(row.item).unwrap();
            let expanded: Vec<String> = paths
                .iter()
                .flat_map(|p| {
                    let line: Vec<String> = p
                        .items
                        .iter()
                        .chain(std::iter::once(&row.item))
                        .map(|&i| db.dictionary().token(i).unwrap().to_owned())
                        .collect();
                    std::iter::repeat_n(line.join(" "), p.weight as usize)
                })
                .collect();
            // tokens keep their ids only if interned in the same order; map through tokens
            let cond = TransactionDatabase::from_lines(&expanded).unwrap();
            let mined = mine_naive(&cond, &SupportThreshold::Absolute(sigma)).unwrap();
            let item_token = db.dictionary().token(row.item).unwrap();
            let mut got: BTreeSet<(Vec<String>, u64)> = BTreeSet::new();
            for (set, s) in mined.entries() {
                let toks: Vec<&str> = set
                    .items()
                    .iter()
                    .map(|&i| cond.dictionary().token(i).unwrap())
                    .collect();
                if toks.contains(&item_token) {
                    let mut t: Vec<String> = toks.iter().map(|s| s.to_string()).collect();
                    t.sort();
                    got.insert((t, *s));
                }
            }
            let rank = order.rank(row.item);
            let mut want: BTreeSet<(Vec<String>, u64)> = BTreeSet::new();
            for (items, s) in &oracle {
                let last = items
                    .iter()
                    .map(|&i| ItemId(i))
                    .max_by_key(|&i| order.rank(i))
                    .unwrap();
                if last == row.item {
                    assert_eq!(order.rank(last), rank);
                    let mut t: Vec<String> = items
                        .iter()
                        .map(|&i| db.dictionary().token(ItemId(i)).unwrap().to_owned())
                        .collect();
                    t.sort();
                    want.insert((t, *s));
                }
            }
            assert_eq!(got, want);
        }
    }
}

#[test]
fn fptree_node_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..50 {
        let lines = random_lines(&mut rng, 12, 50, 8);
        let db = TransactionDatabase::from_lines(&lines).unwrap();
        let order = Arc::new(ItemOrder::by_support(&db.item_supports()));
        let baskets: Vec<WeightedBasket> = db
            .baskets()
            .iter()
            .map(|b| WeightedBasket {
                items: b.items().to_vec(),
                weight: 2,
            })
            .collect();
        let tree = FpTree::build(&baskets, 1, order);
        let insertions: usize = baskets.iter().map(|b| b.items.len()).sum();
        assert!(tree.len() <= insertions);
        for row in tree.header() {
            assert_eq!(row.support, 2 * db.item_supports()[row.item.index()]);
        }
    }
}

#[test]
fn empty_database_everywhere() {
    let db = TransactionDatabase::default();
    for algorithm in Algorithm::ALL {
        let r = mine(
            algorithm,
            &db,
            &SupportThreshold::Absolute(1),
            &MineOptions::default(),
        )
        .unwrap();
        assert!(r.is_empty());
        let r = mine(
            algorithm,
            &db,
            &SupportThreshold::Relative(0.5),
            &MineOptions::default(),
        )
        .unwrap();
        assert!(r.is_empty());
    }
}
