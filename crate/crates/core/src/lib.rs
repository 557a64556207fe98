//! Frequent itemset mining over transaction databases.
//!
//! Four miners share one database type and one result type: a brute-force
//! reference ([`miner::naive`]), level-wise Apriori ([`miner::apriori`]),
//! vertical depth-first Eclat ([`miner::eclat`]) and FP-Growth
//! ([`miner::fpgrowth`]). [`datagen`] produces synthetic basket files with
//! planted frequent sets and [`bench`] times the miners over parameter sweeps.
//!
//! Supports are integer basket counts. Relative supports and threshold
//! fractions are generic over [`Fraction`], implemented for `f32`, `f64` and
//! the exact `Ratio<u64>`; the aliases below fix the common choices.
//!
//! ```
//! use fim_core::{mine, Algorithm, MineOptions, SupportThreshold, TransactionDatabase};
//!
//! let db = TransactionDatabase::parse_str("a b\na b c\nb c\n").unwrap();
//! let result = mine(Algorithm::FpGrowth, &db, &SupportThreshold::Absolute(2), &MineOptions::default()).unwrap();
//! assert_eq!(result.to_canonical_string(db.dictionary()), "a : 2\nb : 3\nc : 2\na b : 2\nb c : 2\n");
//! ```

pub mod alloc;
pub mod bench;
pub mod database;
pub mod datagen;
pub mod error;
pub mod fixtures;
pub mod item;
pub mod miner;
pub mod result;
pub mod scalar;
pub mod support;
pub mod trie;
pub mod verify;

pub use num_rational::Ratio;

pub use database::{Basket, TransactionDatabase};
pub use error::{Error, Result};
pub use item::{ItemDictionary, ItemId, Itemset};
pub use miner::{mine, Algorithm, MineOptions};
pub use result::{write_result, MiningResult};
pub use scalar::Fraction;
pub use support::{relative_support, Threshold};

/// Exact rational used for relative thresholds parsed from decimal text.
pub type ExactFraction = Ratio<u64>;

/// Threshold with a floating point fraction.
pub type SupportThreshold = Threshold<f64>;

/// Threshold with an exact rational fraction.
pub type ExactSupportThreshold = Threshold<ExactFraction>;

pub type ExperimentSpec = bench::ExperimentSpec<f64>;
pub type ExactExperimentSpec = bench::ExperimentSpec<ExactFraction>;
pub type BenchReport = bench::BenchReport<f64>;
