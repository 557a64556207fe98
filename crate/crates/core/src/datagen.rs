//! Synthetic basket data with planted frequent itemsets.
//!
//! Tokens are `I<n>` for filler items sampled uniformly from `item_count`
//! items, and `F<n>` for members of the planted frequent sets. Each line gets
//! a target length uniform on `[1, max_basket_size]`. With probability
//! `density` the line starts with one planted set (uniformly chosen, members
//! shuffled), then distinct filler items are appended until the target
//! length is reached. A planted set longer than the target is never cut.
//!
//! The random stream is ChaCha8 seeded with [`GeneratorConfig::seed`], so
//! output is byte-identical across platforms for equal configurations.

use std::fmt::Write as _;
use std::io::Write;

use rand::seq::index;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest planted set.
pub const MAX_FREQUENT_SET_SIZE: u32 = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub basket_count: u64,
    pub item_count: u32,
    pub frequent_set_count: u32,
    pub max_basket_size: u32,
    pub density: f64,
    pub seed: u64,
    /// Distinct `F` items shared by the planted sets. `None` picks
    /// `4 * frequent_set_count`, capped at `item_count / 10`, at least 2.
    pub f_pool_size: Option<u32>,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            basket_count: 10_000_000,
            item_count: 50_000,
            frequent_set_count: 100,
            max_basket_size: 50,
            density: 0.5,
            seed: 0,
            f_pool_size: None,
        }
    }
}

impl GeneratorConfig {
    /// A laptop-sized configuration: 100k baskets over 5k items, 10 planted sets.
    pub fn desk() -> Self {
        Self {
            basket_count: 100_000,
            item_count: 5_000,
            frequent_set_count: 10,
            ..Self::default()
        }
    }

    pub fn pool_size(&self) -> u32 {
        self.f_pool_size.unwrap_or_else(|| {
            (4 * self.frequent_set_count)
                .min(self.item_count / 10)
                .max(2)
        })
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.item_count == 0 {
            return bad("item count must be at least 1".into());
        }
        if self.max_basket_size == 0 {
            return bad("max basket size must be at least 1".into());
        }
        if !(0.0..=1.0).contains(&self.density) {
            return bad(format!("density {} is outside [0, 1]", self.density));
        }
        if self.frequent_set_count > 0 {
            if self.max_basket_size < 2 {
                return bad("planted frequent sets need a max basket size of at least 2".into());
            }
            if self.pool_size() < 2 {
                return bad("the frequent item pool needs at least 2 items".into());
            }
        }
        Ok(())
    }
}

/// The planted frequent sets, as `F` indices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrequentSetPool {
    pub sets: Vec<Vec<u32>>,
    /// Distinct `F` indices used by `sets`, ascending.
    pub pool: Vec<u32>,
}

impl FrequentSetPool {
    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// Draws `frequent_set_count` sets, each of size uniform on
/// `[2, min(8, max_basket_size, pool size)]`, without repeated members.
pub fn build_frequent_sets<R: Rng + ?Sized>(
    config: &GeneratorConfig,
    rng: &mut R,
) -> Result<FrequentSetPool> {
    config.validate()?;
    if config.frequent_set_count == 0 {
        return Ok(FrequentSetPool::default());
    }
    let pool_size = config.pool_size();
    let max_size = MAX_FREQUENT_SET_SIZE
        .min(config.max_basket_size)
        .min(pool_size);
    let mut sets = Vec::with_capacity(config.frequent_set_count as usize);
    for _ in 0..config.frequent_set_count {
        let size = rng.gen_range(2..=max_size);
        let mut members: Vec<u32> = index::sample(rng, pool_size as usize, size as usize)
            .into_iter()
            .map(|i| i as u32)
            .collect();
        members.sort_unstable();
        sets.push(members);
    }
    let mut pool: Vec<u32> = sets.iter().flatten().copied().collect();
    pool.sort_unstable();
    pool.dedup();
    Ok(FrequentSetPool { sets, pool })
}

/// One generated basket line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedLine {
    /// Space-separated tokens, no newline.
    pub text: String,
    /// Whether a planted set was embedded.
    pub embedded: bool,
}

/// Lazily yields `basket_count` lines.
#[derive(Debug)]
pub struct Generator {
    config: GeneratorConfig,
    pool: FrequentSetPool,
    rng: ChaCha8Rng,
    remaining: u64,
}

impl Generator {
    pub fn new(config: GeneratorConfig) -> Result<Self> {
        config.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let pool = build_frequent_sets(&config, &mut rng)?;
        Ok(Self {
            remaining: config.basket_count,
            config,
            pool,
            rng,
        })
    }

    pub fn pool(&self) -> &FrequentSetPool {
        &self.pool
    }

    fn next_line(&mut self) -> GeneratedLine {
        let cfg = &self.config;
        let rng = &mut self.rng;
        let target = rng.gen_range(1..=cfg.max_basket_size) as usize;
        let embedded = !self.pool.is_empty() && rng.gen_bool(cfg.density);

        let mut text = String::new();
        let mut len = 0usize;
        if embedded {
            let set = &self.pool.sets[rng.gen_range(0..self.pool.sets.len())];
            let mut members = set.clone();
            members.shuffle(rng);
            for f in members {
                push_token(&mut text, 'F', f);
            }
            len = set.len();
        }
        let padding = target.saturating_sub(len).min(cfg.item_count as usize);
        if padding > 0 {
            for i in index::sample(rng, cfg.item_count as usize, padding) {
                push_token(&mut text, 'I', i as u32);
            }
        }
        GeneratedLine { text, embedded }
    }
}

fn push_token(text: &mut String, prefix: char, idx: u32) {
    if !text.is_empty() {
        text.push(' ');
    }
    text.push(prefix);
    write!(text, "{idx}").expect("writing to a String cannot fail");
}

impl Iterator for Generator {
    type Item = GeneratedLine;

    fn next(&mut self) -> Option<GeneratedLine> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        Some(self.next_line())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, Some(n))
    }
}

/// Writes the dataset to `sink`, and one `0`/`1` line per basket to `flags`
/// when given (1 = a planted set was embedded).
pub fn generate<W: Write>(
    config: &GeneratorConfig,
    mut sink: W,
    mut flags: Option<&mut dyn Write>,
) -> Result<()> {
    for line in Generator::new(config.clone())? {
        sink.write_all(line.text.as_bytes())?;
        sink.write_all(b"\n")?;
        if let Some(flags) = flags.as_deref_mut() {
            flags.write_all(if line.embedded { b"1\n" } else { b"0\n" })?;
        }
    }
    sink.flush()?;
    if let Some(flags) = flags {
        flags.flush()?;
    }
    Ok(())
}
