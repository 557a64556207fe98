use std::fmt;

use indexmap::IndexSet;

use crate::error::{Error, Result};

/// Dense item identifier, assigned in first-seen order starting at 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ItemId(pub u32);

impl ItemId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ItemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Bijection between item tokens and [`ItemId`]s.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ItemDictionary {
    tokens: IndexSet<String>,
}

impl ItemDictionary {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id of `token`, assigning the next dense id if it is new.
    pub fn intern(&mut self, token: &str) -> Result<ItemId> {
        if token.is_empty() || token.chars().any(char::is_whitespace) {
            return Err(Error::InvalidToken(token.to_owned()));
        }
        if let Some(idx) = self.tokens.get_index_of(token) {
            return Ok(ItemId(idx as u32));
        }
        let (idx, _) = self.tokens.insert_full(token.to_owned());
        Ok(ItemId(idx as u32))
    }

    pub fn get(&self, token: &str) -> Option<ItemId> {
        self.tokens
            .get_index_of(token)
            .map(|idx| ItemId(idx as u32))
    }

    pub fn token(&self, id: ItemId) -> Option<&str> {
        self.tokens.get_index(id.index()).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Tokens in id order.
    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(String::as_str)
    }
}

/// A non-empty, strictly ascending set of items.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Itemset(Vec<ItemId>);

impl Itemset {
    /// Sorts and deduplicates `items`. Returns `None` for an empty set.
    pub fn new(mut items: Vec<ItemId>) -> Option<Self> {
        items.sort_unstable();
        items.dedup();
        (!items.is_empty()).then_some(Self(items))
    }

    /// Wraps an already strictly ascending, non-empty list.
    pub fn from_sorted(items: Vec<ItemId>) -> Self {
        debug_assert!(!items.is_empty());
        debug_assert!(items.windows(2).all(|w| w[0] < w[1]));
        Self(items)
    }

    pub fn singleton(item: ItemId) -> Self {
        Self(vec![item])
    }

    /// Looks up each token in `dict`.
    pub fn from_tokens<S: AsRef<str>>(dict: &ItemDictionary, tokens: &[S]) -> Result<Self> {
        let ids = tokens
            .iter()
            .map(|t| {
                dict.get(t.as_ref())
                    .ok_or_else(|| Error::UnknownItem(t.as_ref().to_owned()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ids).ok_or_else(|| Error::UnknownItem("<empty itemset>".to_owned()))
    }

    pub fn items(&self) -> &[ItemId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Subset test against a sorted item slice.
    pub fn is_subset_of(&self, sorted: &[ItemId]) -> bool {
        is_sorted_subset(&self.0, sorted)
    }

    pub fn into_vec(self) -> Vec<ItemId> {
        self.0
    }
}

impl AsRef<[ItemId]> for Itemset {
    fn as_ref(&self) -> &[ItemId] {
        &self.0
    }
}

/// `small ⊆ large` for two strictly ascending slices.
pub fn is_sorted_subset(small: &[ItemId], large: &[ItemId]) -> bool {
    if small.len() > large.len() {
        return false;
    }
    let mut rest = large;
    for item in small {
        match rest.binary_search(item) {
            Ok(pos) => rest = &rest[pos + 1..],
            Err(_) => return false,
        }
    }
    true
}
