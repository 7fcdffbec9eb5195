use std::fmt;

use crate::error::{Error, Result};

/// A bijection between items `0..n` and positions `0..n`.
///
/// Positions are stored 0-based; the 1-based position of an item is
/// `position(item) + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    order: Vec<usize>,
    pos: Vec<usize>,
}

/// Ordering of the vertices of a graph.
pub type VertexOrdering = Permutation;
/// Ordering of the ground elements of a set family.
pub type ElementOrdering = Permutation;

impl Permutation {
    /// Builds a permutation from the items listed in position order.
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut pos = vec![usize::MAX; n];
        for (p, &item) in order.iter().enumerate() {
            if item >= n {
                return Err(Error::Contract(format!(
                    "item {item} out of range for a permutation of {n}"
                )));
            }
            if pos[item] != usize::MAX {
                return Err(Error::Contract(format!("item {item} listed twice")));
            }
            pos[item] = p;
        }
        Ok(Permutation { order, pos })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            order: (0..n).collect(),
            pos: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Item at 0-based position `p`.
    pub fn at(&self, p: usize) -> usize {
        self.order[p]
    }

    /// 0-based position of `item`.
    pub fn position(&self, item: usize) -> usize {
        self.pos[item]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.order
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.order.iter().copied()
    }

    pub fn reversed(&self) -> Self {
        let mut order = self.order.clone();
        order.reverse();
        let n = order.len();
        let pos = self.pos.iter().map(|&p| n - 1 - p).collect();
        Permutation { order, pos }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, item) in self.order.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{item}")?;
        }
        Ok(())
    }
}
