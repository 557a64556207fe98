//! Pattern growth over a prefix tree of baskets.
//!
//! Baskets, restricted to frequent items and sorted by descending global
//! support, are inserted into a tree that shares common prefixes. A header
//! row per item links all of that item's nodes. For each item the root paths
//! above its nodes form a weighted conditional database, which is built into
//! a fresh tree and mined recursively with the item appended to the prefix.
//! No candidate itemsets are ever formed.

use std::collections::HashMap;
use std::sync::Arc;

use crate::database::TransactionDatabase;
use crate::error::{Error, Result};
use crate::item::{ItemId, Itemset};
use crate::result::MiningResult;
use crate::scalar::Fraction;
use crate::support::Threshold;

pub type NodeId = usize;

/// Insertion order for tree paths: descending support, ties by ascending id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItemOrder {
    rank: Vec<u32>,
}

impl ItemOrder {
    /// `supports[i]` is the support of `ItemId(i)`.
    pub fn by_support(supports: &[u64]) -> Self {
        let mut ids: Vec<usize> = (0..supports.len()).collect();
        ids.sort_by(|&a, &b| supports[b].cmp(&supports[a]).then(a.cmp(&b)));
        let mut rank = vec![0u32; supports.len()];
        for (r, id) in ids.into_iter().enumerate() {
            rank[id] = r as u32;
        }
        Self { rank }
    }

    pub fn rank(&self, item: ItemId) -> u32 {
        self.rank[item.index()]
    }

    pub fn sort(&self, items: &mut [ItemId]) {
        items.sort_unstable_by_key(|&i| self.rank(i));
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }
}

/// Items (in tree order) with a multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedBasket {
    pub items: Vec<ItemId>,
    pub weight: u64,
}

#[derive(Debug, Clone)]
pub struct FpNode {
    pub item: Option<ItemId>,
    pub count: u64,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    pub next_same_item: Option<NodeId>,
}

#[derive(Debug, Clone)]
pub struct HeaderRow {
    pub item: ItemId,
    /// Weighted support of the item in the tree's database.
    pub support: u64,
    pub head: Option<NodeId>,
    tail: Option<NodeId>,
}

#[derive(Debug, Clone)]
pub struct FpTree {
    nodes: Vec<FpNode>,
    header: Vec<HeaderRow>,
    row_of: HashMap<ItemId, usize>,
    order: Arc<ItemOrder>,
}

impl FpTree {
    pub const ROOT: NodeId = 0;

    /// Builds the tree of `baskets`, dropping items whose weighted support is
    /// below `min_support`. Basket items may come in any order.
    pub fn build(baskets: &[WeightedBasket], min_support: u64, order: Arc<ItemOrder>) -> Self {
        let mut supports: HashMap<ItemId, u64> = HashMap::new();
        for basket in baskets {
            for &item in &basket.items {
                *supports.entry(item).or_insert(0) += basket.weight;
            }
        }
        let mut frequent: Vec<(ItemId, u64)> = supports
            .into_iter()
            .filter(|&(_, s)| s >= min_support)
            .collect();
        frequent.sort_unstable_by_key(|&(item, _)| order.rank(item));

        let header: Vec<HeaderRow> = frequent
            .iter()
            .map(|&(item, support)| HeaderRow {
                item,
                support,
                head: None,
                tail: None,
            })
            .collect();
        let row_of = header
            .iter()
            .enumerate()
            .map(|(i, row)| (row.item, i))
            .collect();
        let mut tree = Self {
            nodes: vec![FpNode {
                item: None,
                count: 0,
                parent: None,
                children: Vec::new(),
                next_same_item: None,
            }],
            header,
            row_of,
            order,
        };

        let mut path = Vec::new();
        for basket in baskets {
            path.clear();
            path.extend(
                basket
                    .items
                    .iter()
                    .copied()
                    .filter(|i| tree.row_of.contains_key(i)),
            );
            tree.order.sort(&mut path);
            tree.insert(&path, basket.weight);
        }
        tree
    }

    /// Top-level tree of a database with its support-descending item order.
    pub fn from_database<F: Fraction>(
        db: &TransactionDatabase,
        sigma: &Threshold<F>,
    ) -> Result<Self> {
        let min_support = sigma.resolve(db.len() as u64)?;
        let order = Arc::new(ItemOrder::by_support(&db.item_supports()));
        let baskets: Vec<WeightedBasket> = db
            .baskets()
            .iter()
            .map(|b| WeightedBasket {
                items: b.items().to_vec(),
                weight: 1,
            })
            .collect();
        Ok(Self::build(&baskets, min_support, order))
    }

    fn insert(&mut self, path: &[ItemId], weight: u64) {
        let mut node = Self::ROOT;
        self.nodes[Self::ROOT].count += weight;
        for &item in path {
            let existing = self.nodes[node]
                .children
                .iter()
                .copied()
                .find(|&c| self.nodes[c].item == Some(item));
            node = match existing {
                Some(child) => child,
                None => self.add_node(node, item),
            };
            self.nodes[node].count += weight;
        }
    }

    fn add_node(&mut self, parent: NodeId, item: ItemId) -> NodeId {
        let id = self.nodes.len();
        self.nodes.push(FpNode {
            item: Some(item),
            count: 0,
            parent: Some(parent),
            children: Vec::new(),
            next_same_item: None,
        });
        self.nodes[parent].children.push(id);
        let row = &mut self.header[self.row_of[&item]];
        match row.tail {
            Some(tail) => self.nodes[tail].next_same_item = Some(id),
            None => row.head = Some(id),
        }
        row.tail = Some(id);
        id
    }

    pub fn nodes(&self) -> &[FpNode] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &FpNode {
        &self.nodes[id]
    }

    /// Header rows in tree order (most frequent first).
    pub fn header(&self) -> &[HeaderRow] {
        &self.header
    }

    pub fn header_row(&self, item: ItemId) -> Option<&HeaderRow> {
        self.row_of.get(&item).map(|&i| &self.header[i])
    }

    pub fn item_order(&self) -> &Arc<ItemOrder> {
        &self.order
    }

    /// Nodes of `item`, following the header chain.
    pub fn chain(&self, item: ItemId) -> impl Iterator<Item = NodeId> + '_ {
        let head = self.header_row(item).and_then(|row| row.head);
        std::iter::successors(head, move |&id| self.nodes[id].next_same_item)
    }

    /// Conditional database of `item`: the root path above each of its nodes,
    /// weighted by that node's count.
    pub fn prefix_paths(&self, item: ItemId) -> Result<Vec<WeightedBasket>> {
        if self.header_row(item).is_none() {
            return Err(Error::UnknownItem(item.to_string()));
        }
        Ok(self
            .chain(item)
            .map(|node| {
                let mut items = Vec::new();
                let mut cursor = self.nodes[node].parent;
                while let Some(id) = cursor {
                    if let Some(it) = self.nodes[id].item {
                        items.push(it);
                    }
                    cursor = self.nodes[id].parent;
                }
                items.reverse();
                WeightedBasket {
                    items,
                    weight: self.nodes[node].count,
                }
            })
            .collect())
    }

    /// Non-root node count.
    pub fn len(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.len() == 1
    }
}

/// [`FpTree::build`] with a threshold resolved against the total weight.
pub fn build_fptree<F: Fraction>(
    baskets: &[WeightedBasket],
    sigma: &Threshold<F>,
    order: Arc<ItemOrder>,
) -> Result<FpTree> {
    let total: u64 = baskets.iter().map(|b| b.weight).sum();
    Ok(FpTree::build(baskets, sigma.resolve(total)?, order))
}

pub fn mine_fpgrowth<F: Fraction>(
    db: &TransactionDatabase,
    sigma: &Threshold<F>,
) -> Result<MiningResult> {
    let n = db.len() as u64;
    let min_support = sigma.resolve(n)?;
    let tree = FpTree::from_database(db, &Threshold::<F>::Absolute(min_support))?;
    let mut out = Vec::new();
    grow(&tree, &mut Vec::new(), min_support, &mut out);
    Ok(MiningResult::new(out, min_support, n))
}

fn grow(tree: &FpTree, prefix: &mut Vec<ItemId>, min_support: u64, out: &mut Vec<(Itemset, u64)>) {
    for row in tree.header().iter().rev() {
        prefix.push(row.item);
        out.push((
            Itemset::new(prefix.clone()).expect("non-empty"),
            row.support,
        ));

        let conditional = tree
            .prefix_paths(row.item)
            .expect("row item is in the header");
        let sub = FpTree::build(&conditional, min_support, Arc::clone(tree.item_order()));
        if !sub.header().is_empty() {
            grow(&sub, prefix, min_support, out);
        }
        prefix.pop();
    }
}
