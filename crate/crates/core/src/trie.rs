//! Prefix trie of itemsets with supports.
//!
//! The root is empty; a node's root path spells an itemset and the node
//! holds that itemset's support. Siblings have distinct items, but an item
//! may appear at many depths.

use crate::item::{ItemId, Itemset};

pub type NodeId = usize;

#[derive(Debug, Clone)]
struct Node {
    item: Option<ItemId>,
    support: u64,
    children: Vec<(ItemId, NodeId)>,
}

#[derive(Debug, Clone)]
pub struct ItemsetTrie {
    nodes: Vec<Node>,
}

impl Default for ItemsetTrie {
    fn default() -> Self {
        Self::new()
    }
}

impl ItemsetTrie {
    pub const ROOT: NodeId = 0;

    pub fn new() -> Self {
        Self {
            nodes: vec![Node {
                item: None,
                support: 0,
                children: Vec::new(),
            }],
        }
    }

    /// Child of `parent` for `item`, created with support 0 if missing.
    pub fn child(&mut self, parent: NodeId, item: ItemId) -> NodeId {
        if let Some(&(_, id)) = self.nodes[parent].children.iter().find(|(i, _)| *i == item) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push(Node {
            item: Some(item),
            support: 0,
            children: Vec::new(),
        });
        self.nodes[parent].children.push((item, id));
        id
    }

    pub fn set_support(&mut self, node: NodeId, support: u64) {
        self.nodes[node].support = support;
    }

    /// Inserts `items` in the given order and stores `support` at the last node.
    pub fn insert(&mut self, items: &[ItemId], support: u64) -> NodeId {
        let node = items
            .iter()
            .fold(Self::ROOT, |node, &item| self.child(node, item));
        self.set_support(node, support);
        node
    }

    /// Support stored at the end of the path `items`, if the path exists.
    pub fn support(&self, items: &[ItemId]) -> Option<u64> {
        let mut node = Self::ROOT;
        for item in items {
            node = self.nodes[node]
                .children
                .iter()
                .find(|(i, _)| i == item)
                .map(|&(_, id)| id)?;
        }
        (node != Self::ROOT).then(|| self.nodes[node].support)
    }

    /// Non-root node count.
    pub fn len(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.len() == 1
    }

    /// Every root path with its support, depth-first.
    pub fn flatten(&self) -> Vec<(Itemset, u64)> {
        let mut out = Vec::with_capacity(self.len());
        let mut path = Vec::new();
        let mut stack: Vec<(NodeId, usize)> = vec![(Self::ROOT, 0)];
        while let Some((node, depth)) = stack.pop() {
            path.truncate(depth);
            if let Some(item) = self.nodes[node].item {
                path.push(item);
                out.push((
                    Itemset::new(path.clone()).expect("non-empty path"),
                    self.nodes[node].support,
                ));
            }
            for &(_, child) in self.nodes[node].children.iter().rev() {
                stack.push((child, path.len()));
            }
        }
        out
    }
}
