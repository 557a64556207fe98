//! Depth-first vertical mining.
//!
//! Every frequent item gets the sorted list of basket ids containing it.
//! For a prefix `I` and one of its extensions `i`, the conditional class
//! holds every later extension `j > i` together with `cover(i) ∩ cover(j)`,
//! kept only if the intersection is still frequent. Results go into a
//! prefix trie as they are found.

use std::collections::BTreeMap;

use crate::database::TransactionDatabase;
use crate::error::Result;
use crate::item::ItemId;
use crate::result::MiningResult;
use crate::scalar::Fraction;
use crate::support::Threshold;
use crate::trie::{ItemsetTrie, NodeId};

/// 0-based position of a basket in its database.
pub type TransactionId = u32;

/// Strictly ascending basket ids covering an itemset.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tidset(Vec<TransactionId>);

impl Tidset {
    /// Sorts and deduplicates.
    pub fn new(mut tids: Vec<TransactionId>) -> Self {
        tids.sort_unstable();
        tids.dedup();
        Self(tids)
    }

    pub fn tids(&self) -> &[TransactionId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Merge intersection of two ascending tidsets.
pub fn intersect_tidsets(a: &Tidset, b: &Tidset) -> Tidset {
    let (a, b) = (a.tids(), b.tids());
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    Tidset(out)
}

/// Item to tidset columns for the frequent items of a database.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerticalDatabase {
    columns: BTreeMap<ItemId, Tidset>,
}

impl VerticalDatabase {
    pub fn column(&self, item: ItemId) -> Option<&Tidset> {
        self.columns.get(&item)
    }

    /// Columns in ascending item order.
    pub fn columns(&self) -> impl Iterator<Item = (ItemId, &Tidset)> {
        self.columns.iter().map(|(&id, tids)| (id, tids))
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Sum of column lengths.
    pub fn incidences(&self) -> usize {
        self.columns.values().map(Tidset::len).sum()
    }
}

/// Transposes `db`, keeping items with support at least the resolved `sigma`.
pub fn vertical_database<F: Fraction>(
    db: &TransactionDatabase,
    sigma: &Threshold<F>,
) -> Result<VerticalDatabase> {
    let min_support = sigma.resolve(db.len() as u64)?;
    Ok(vertical_with_min(db, min_support))
}

fn vertical_with_min(db: &TransactionDatabase, min_support: u64) -> VerticalDatabase {
    let mut columns: Vec<Vec<TransactionId>> = vec![Vec::new(); db.item_count()];
    for (tid, basket) in db.baskets().iter().enumerate() {
        for item in basket.items() {
            columns[item.index()].push(tid as TransactionId);
        }
    }
    let columns = columns
        .into_iter()
        .enumerate()
        .filter(|(_, tids)| tids.len() as u64 >= min_support)
        .map(|(id, tids)| (ItemId(id as u32), Tidset(tids)))
        .collect();
    VerticalDatabase { columns }
}

pub fn mine_eclat<F: Fraction>(
    db: &TransactionDatabase,
    sigma: &Threshold<F>,
) -> Result<MiningResult> {
    let n = db.len() as u64;
    let min_support = sigma.resolve(n)?;
    let trie = mine_eclat_trie(db, min_support);
    Ok(MiningResult::new(trie.flatten(), min_support, n))
}

/// Runs the recursion and returns the result trie.
pub fn mine_eclat_trie(db: &TransactionDatabase, min_support: u64) -> ItemsetTrie {
    let vertical = vertical_with_min(db, min_support);
    let class: Vec<(ItemId, Tidset)> = vertical.columns.into_iter().collect();
    let mut trie = ItemsetTrie::new();
    extend(&class, min_support, &mut trie, ItemsetTrie::ROOT);
    trie
}

/// Mines every extension of the prefix ending at `parent`. `class` lists the
/// frequent extension items in ascending order with their covers.
fn extend(class: &[(ItemId, Tidset)], min_support: u64, trie: &mut ItemsetTrie, parent: NodeId) {
    for (pos, (item, cover)) in class.iter().enumerate() {
        let node = trie.child(parent, *item);
        trie.set_support(node, cover.len() as u64);

        let conditional: Vec<(ItemId, Tidset)> = class[pos + 1..]
            .iter()
            .filter_map(|(other, other_cover)| {
                let joint = intersect_tidsets(cover, other_cover);
                (joint.len() as u64 >= min_support).then_some((*other, joint))
            })
            .collect();
        if !conditional.is_empty() {
            extend(&conditional, min_support, trie, node);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{DB5, DB5_SIGMA2};
    use crate::item::Itemset;

    fn db5() -> TransactionDatabase {
        TransactionDatabase::parse_str(DB5).unwrap()
    }

    fn id(db: &TransactionDatabase, tok: &str) -> ItemId {
        db.dictionary().get(tok).unwrap()
    }

    #[test]
    fn db5_columns() {
        let db = db5();
        let v = vertical_database(&db, &Threshold::<f64>::Absolute(2)).unwrap();
        assert_eq!(v.column(id(&db, "mp3player")).unwrap().tids(), &[0, 1, 2]);
        assert_eq!(
            v.column(id(&db, "usb-charger")).unwrap().tids(),
            &[0, 1, 2, 3]
        );
        assert_eq!(v.len(), 4);

        let v4 = vertical_database(&db, &Threshold::<f64>::Absolute(4)).unwrap();
        assert_eq!(v4.len(), 1);
        assert!(v4.column(id(&db, "usb-charger")).is_some());

        let empty = TransactionDatabase::default();
        assert!(vertical_database(&empty, &Threshold::<f64>::Absolute(1))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn intersections() {
        let a = Tidset::new(vec![0, 1, 2]);
        let b = Tidset::new(vec![0, 1, 2, 3]);
        let ab = intersect_tidsets(&a, &b);
        assert_eq!(ab.tids(), &[0, 1, 2]);
        assert_eq!(ab.len(), 3);
        assert_eq!(intersect_tidsets(&b, &b), b);
        assert!(
            intersect_tidsets(&Tidset::new(vec![1, 3]), &Tidset::new(vec![0, 2, 4])).is_empty()
        );
    }

    #[test]
    fn mines_db5() {
        let db = db5();
        let result = mine_eclat(&db, &Threshold::<f64>::Absolute(2)).unwrap();
        assert_eq!(result.to_canonical_string(db.dictionary()), DB5_SIGMA2);
        let triple =
            Itemset::from_tokens(db.dictionary(), &["mp3player", "usb-charger", "book-dct"])
                .unwrap();
        assert_eq!(result.support(&triple), Some(2));
    }

    #[test]
    fn trie_holds_supports_at_rightmost_node() {
        let db = db5();
        let trie = mine_eclat_trie(&db, 2);
        let (mp3, usb, dct) = (
            id(&db, "mp3player"),
            id(&db, "usb-charger"),
            id(&db, "book-dct"),
        );
        assert_eq!(trie.support(&[mp3, usb]), Some(3));
        assert_eq!(trie.support(&[mp3, usb, dct]), Some(2));
        assert_eq!(trie.len(), 15);
    }
}
