//! Mining results and their canonical text serialization.
//!
//! Each line is the itemset's tokens sorted lexicographically, then ` : `,
//! then the absolute support. Lines are ordered by itemset length, then by
//! token sequence, so equal results always serialize to equal bytes.

use std::collections::HashSet;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::item::{ItemDictionary, Itemset};

/// One frequent itemset and its absolute support.
pub type Entry = (Itemset, u64);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiningResult {
    entries: Vec<Entry>,
    min_support: u64,
    n: u64,
}

impl MiningResult {
    /// Entries are sorted by (length, item ids); duplicates are a bug in the
    /// caller and trip a debug assertion.
    pub fn new(mut entries: Vec<Entry>, min_support: u64, n: u64) -> Self {
        entries.sort_unstable_by(|a, b| {
            a.0.len()
                .cmp(&b.0.len())
                .then_with(|| a.0.items().cmp(b.0.items()))
        });
        debug_assert!(entries.windows(2).all(|w| w[0].0 != w[1].0));
        Self {
            entries,
            min_support,
            n,
        }
    }

    pub fn empty(min_support: u64, n: u64) -> Self {
        Self::new(Vec::new(), min_support, n)
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The resolved absolute threshold the result was mined at.
    pub fn min_support(&self) -> u64 {
        self.min_support
    }

    /// Basket count of the mined database.
    pub fn basket_count(&self) -> u64 {
        self.n
    }

    pub fn support(&self, itemset: &Itemset) -> Option<u64> {
        self.entries
            .binary_search_by(|e| {
                e.0.len()
                    .cmp(&itemset.len())
                    .then_with(|| e.0.items().cmp(itemset.items()))
            })
            .ok()
            .map(|i| self.entries[i].1)
    }

    /// Canonical lines, without trailing newlines.
    pub fn canonical_lines(&self, dict: &ItemDictionary) -> Vec<String> {
        let mut rows: Vec<(Vec<&str>, u64)> = self
            .entries
            .iter()
            .map(|(set, support)| {
                let mut tokens: Vec<&str> = set
                    .items()
                    .iter()
                    .map(|&id| dict.token(id).expect("result items come from dict"))
                    .collect();
                tokens.sort_unstable();
                (tokens, *support)
            })
            .collect();
        rows.sort_unstable_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        rows.into_iter()
            .map(|(tokens, support)| format!("{} : {}", tokens.join(" "), support))
            .collect()
    }

    pub fn to_canonical_string(&self, dict: &ItemDictionary) -> String {
        let mut out = String::new();
        for line in self.canonical_lines(dict) {
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

/// Writes `result` in canonical form.
pub fn write_result<W: Write>(
    result: &MiningResult,
    dict: &ItemDictionary,
    mut sink: W,
) -> Result<()> {
    for line in result.canonical_lines(dict) {
        writeln!(sink, "{line}")?;
    }
    sink.flush()?;
    Ok(())
}

/// A result read back from text: token lists with supports.
pub type ParsedEntry = (Vec<String>, u64);

/// Reads the canonical result format.
pub fn parse_result<R: BufRead>(reader: R) -> Result<Vec<ParsedEntry>> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let format_err = |message: &str| Error::Format {
            line: idx + 1,
            message: message.to_owned(),
        };
        let (items, support) = line
            .rsplit_once(" : ")
            .ok_or_else(|| format_err("missing ' : ' separator"))?;
        let support = support
            .trim()
            .parse()
            .map_err(|_| format_err("support is not a count"))?;
        let tokens: Vec<String> = items.split_ascii_whitespace().map(str::to_owned).collect();
        if tokens.is_empty() {
            return Err(format_err("empty itemset"));
        }
        out.push((tokens, support));
    }
    Ok(out)
}

/// First `limit` differences between two results, as readable lines.
pub fn diff_results(
    dict: &ItemDictionary,
    expected: &MiningResult,
    actual: &MiningResult,
    limit: usize,
) -> Vec<String> {
    let left: HashSet<String> = expected.canonical_lines(dict).into_iter().collect();
    let right: HashSet<String> = actual.canonical_lines(dict).into_iter().collect();
    let mut diffs: Vec<String> = left
        .difference(&right)
        .map(|l| format!("- {l}"))
        .chain(right.difference(&left).map(|l| format!("+ {l}")))
        .collect();
    diffs.sort_by(|a, b| a[2..].cmp(&b[2..]).then_with(|| a.cmp(b)));
    diffs.truncate(limit);
    diffs
}
