use std::fmt;

use super::{Coalition, Network, Player};
use crate::error::{Error, Result};
use crate::limits;

/// A partition of `{1, ..., n}` into nonempty blocks, sorted by minimum element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    blocks: Vec<Coalition>,
}

impl Partition {
    /// Validates and canonicalizes `blocks`.
    pub fn new(n: usize, mut blocks: Vec<Coalition>) -> Result<Self> {
        let all = Coalition::full(n);
        let mut seen = Coalition::EMPTY;
        for &block in &blocks {
            if block.is_empty() {
                return Err(Error::domain("partition has an empty block"));
            }
            if !block.is_subset_of(all) {
                return Err(Error::domain(format!("block {block} leaves 1..={n}")));
            }
            if !block.is_disjoint(seen) {
                return Err(Error::domain(format!("block {block} overlaps another block")));
            }
            seen = seen.union(block);
        }
        if seen != all {
            return Err(Error::domain(format!(
                "blocks miss players {}",
                all.difference(seen)
            )));
        }
        blocks.sort_unstable_by_key(|b| b.first());
        Ok(Partition { n, blocks })
    }

    pub(crate) fn from_sorted_unchecked(n: usize, blocks: Vec<Coalition>) -> Self {
        debug_assert!(blocks.windows(2).all(|w| w[0].first() < w[1].first()));
        Partition { n, blocks }
    }

    /// `{N}`.
    pub fn grand(n: usize) -> Self {
        Partition {
            n,
            blocks: vec![Coalition::full(n)],
        }
    }

    /// All players alone.
    pub fn singletons(n: usize) -> Self {
        Partition {
            n,
            blocks: (1..=n).map(Coalition::singleton).collect(),
        }
    }

    /// `{S} ∪ {{j} : j ∉ S}` for nonempty `s`.
    pub fn isolating_outsiders(n: usize, s: Coalition) -> Result<Self> {
        let outsiders = Coalition::full(n).difference(s);
        let mut blocks: Vec<_> = outsiders.iter().map(Coalition::singleton).collect();
        blocks.push(s);
        Self::new(n, blocks)
    }

    pub fn players(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Coalition] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn contains_block(&self, c: Coalition) -> bool {
        self.blocks.contains(&c)
    }

    pub fn block_of(&self, player: Player) -> Option<Coalition> {
        self.blocks.iter().copied().find(|b| b.contains(player))
    }

    /// `self ≼ other`: every block of `self` lies inside a block of `other`.
    pub fn is_finer_than(&self, other: &Partition) -> bool {
        self.n == other.n
            && self
                .blocks
                .iter()
                .all(|b| other.blocks.iter().any(|o| b.is_subset_of(*o)))
    }

    /// A network whose components are exactly these blocks: a star from each block minimum.
    pub fn star_realization(&self) -> Network {
        let links = self.blocks.iter().flat_map(|b| {
            let hub = b.first().unwrap_or(1);
            b.iter().skip(1).map(move |p| (hub, p))
        });
        Network::from_links(self.n, links).expect("stars on disjoint blocks are simple")
    }

    /// Restricted growth string: entry `i - 1` is the index of player `i`'s block.
    pub fn growth_string(&self) -> Vec<usize> {
        (1..=self.n)
            .map(|p| self.blocks.iter().position(|b| b.contains(p)).unwrap_or(0))
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All partitions of `{1, ..., n}` in restricted-growth-string order.
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>> {
    limits::check_pff_players(n)?;
    if n == 0 {
        return Err(Error::domain("partitions need at least one player"));
    }
    Ok(partitions_of(Coalition::full(n))
        .into_iter()
        .map(|blocks| Partition::from_sorted_unchecked(n, blocks))
        .collect())
}

/// Every partition of `set` as block lists sorted by minimum, in growth-string order.
pub(crate) fn partitions_of(set: Coalition) -> Vec<Vec<Coalition>> {
    let members = set.to_vec();
    let m = members.len();
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    // a[k] is the block of members[k]; max_prefix[k] = max(a[0..k]).
    let mut a = vec![0usize; m];
    loop {
        let count = a.iter().max().map_or(0, |x| x + 1);
        let mut blocks = vec![Coalition::EMPTY; count];
        for (k, &label) in a.iter().enumerate() {
            blocks[label] = blocks[label].with(members[k]);
        }
        out.push(blocks);

        // Advance to the next restricted growth string.
        let mut k = m - 1;
        loop {
            if k == 0 {
                return out;
            }
            let prefix_max = a[..k].iter().copied().max().unwrap_or(0);
            if a[k] <= prefix_max {
                a[k] += 1;
                for x in a.iter_mut().skip(k + 1) {
                    *x = 0;
                }
                break;
            }
            k -= 1;
        }
    }
}

/// `g/P`: each block of `partition` split into its `g`-connected pieces.
pub fn partition_by_graph(partition: &Partition, g: &Network) -> Partition {
    let mut blocks: Vec<Coalition> = partition
        .blocks()
        .iter()
        .flat_map(|&b| g.split(b))
        .collect();
    blocks.sort_unstable_by_key(|b| b.first());
    Partition::from_sorted_unchecked(partition.players(), blocks)
}
