//! Transaction databases and the line-oriented basket file format.
//!
//! One basket per line, items separated by ASCII spaces or tabs. Blank lines
//! are skipped and repeated items within a line are collapsed.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::item::{is_sorted_subset, ItemDictionary, ItemId, Itemset};

/// A non-empty, strictly ascending list of items.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Basket(Vec<ItemId>);

impl Basket {
    pub fn new(mut items: Vec<ItemId>) -> Option<Self> {
        items.sort_unstable();
        items.dedup();
        (!items.is_empty()).then_some(Self(items))
    }

    pub fn items(&self) -> &[ItemId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, item: ItemId) -> bool {
        self.0.binary_search(&item).is_ok()
    }
}

/// Immutable list of baskets over an item dictionary.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TransactionDatabase {
    baskets: Vec<Basket>,
    dictionary: ItemDictionary,
}

impl TransactionDatabase {
    /// Reads the basket file format from `reader`.
    pub fn parse<R: BufRead>(reader: R) -> Result<Self> {
        let mut builder = DatabaseBuilder::default();
        for line in reader.lines() {
            builder.push_line(&line?)?;
        }
        Ok(builder.finish())
    }

    pub fn parse_str(text: &str) -> Result<Self> {
        Self::from_lines(text.lines())
    }

    /// Builds a database from already-split lines.
    pub fn from_lines<I, S>(lines: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut builder = DatabaseBuilder::default();
        for line in lines {
            builder.push_line(line.as_ref())?;
        }
        Ok(builder.finish())
    }

    /// Builds a database from token lists; empty lists are skipped.
    pub fn from_token_baskets<B, S>(baskets: &[B]) -> Result<Self>
    where
        B: AsRef<[S]>,
        S: AsRef<str>,
    {
        let mut builder = DatabaseBuilder::default();
        for basket in baskets {
            builder.push_tokens(basket.as_ref().iter().map(AsRef::as_ref))?;
        }
        Ok(builder.finish())
    }

    pub fn baskets(&self) -> &[Basket] {
        &self.baskets
    }

    pub fn dictionary(&self) -> &ItemDictionary {
        &self.dictionary
    }

    /// Number of baskets, `N`.
    pub fn len(&self) -> usize {
        self.baskets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.baskets.is_empty()
    }

    pub fn item_count(&self) -> usize {
        self.dictionary.len()
    }

    pub fn max_basket_len(&self) -> usize {
        self.baskets.iter().map(Basket::len).max().unwrap_or(0)
    }

    /// Number of baskets containing every item of `itemset`.
    /// An empty database has support 0 for anything, known or not.
    pub fn support_of(&self, itemset: &Itemset) -> Result<u64> {
        if self.baskets.is_empty() {
            return Ok(0);
        }
        if let Some(bad) = itemset
            .items()
            .iter()
            .find(|id| id.index() >= self.dictionary.len())
        {
            return Err(Error::UnknownItem(bad.to_string()));
        }
        Ok(self
            .baskets
            .iter()
            .filter(|b| is_sorted_subset(itemset.items(), b.items()))
            .count() as u64)
    }

    /// Like [`support_of`](Self::support_of) but takes item tokens.
    pub fn support_of_tokens<S: AsRef<str>>(&self, tokens: &[S]) -> Result<u64> {
        if self.baskets.is_empty() {
            return Ok(0);
        }
        self.support_of(&Itemset::from_tokens(&self.dictionary, tokens)?)
    }

    /// Per-item basket counts, indexed by `ItemId`.
    pub fn item_supports(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.dictionary.len()];
        for basket in &self.baskets {
            for item in basket.items() {
                counts[item.index()] += 1;
            }
        }
        counts
    }

    /// Writes the database back out, tokens sorted within each line.
    pub fn write<W: Write>(&self, mut sink: W) -> Result<()> {
        let mut tokens: Vec<&str> = Vec::new();
        for basket in &self.baskets {
            tokens.clear();
            tokens.extend(basket.items().iter().map(|&id| self.token(id)));
            tokens.sort_unstable();
            writeln!(sink, "{}", tokens.join(" "))?;
        }
        sink.flush()?;
        Ok(())
    }

    pub(crate) fn token(&self, id: ItemId) -> &str {
        self.dictionary
            .token(id)
            .expect("basket items are interned in the dictionary")
    }
}

#[derive(Default)]
struct DatabaseBuilder {
    baskets: Vec<Basket>,
    dictionary: ItemDictionary,
    scratch: Vec<ItemId>,
    lines_seen: usize,
}

impl DatabaseBuilder {
    fn push_line(&mut self, line: &str) -> Result<()> {
        self.lines_seen += 1;
        let line_no = self.lines_seen;
        self.push_tokens(line.split([' ', '\t']).filter(|t| !t.is_empty()))
            .map_err(|e| match e {
                Error::InvalidToken(tok) => Error::Format {
                    line: line_no,
                    message: format!("invalid token {tok:?}"),
                },
                other => other,
            })
    }

    fn push_tokens<'a>(&mut self, tokens: impl Iterator<Item = &'a str>) -> Result<()> {
        self.scratch.clear();
        for token in tokens {
            let token = token.trim_end_matches('\r');
            if token.is_empty() {
                continue;
            }
            self.scratch.push(self.dictionary.intern(token)?);
        }
        if let Some(basket) = Basket::new(std::mem::take(&mut self.scratch)) {
            self.baskets.push(basket);
        }
        Ok(())
    }

    fn finish(self) -> TransactionDatabase {
        TransactionDatabase {
            baskets: self.baskets,
            dictionary: self.dictionary,
        }
    }
}
