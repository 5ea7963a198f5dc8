use std::cmp::Ordering;
use std::fmt;

use super::Player;

/// A set of players, stored as a bitmask (bit `i - 1` is player `i`).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Coalition(u32);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub fn from_bits(bits: u32) -> Self {
        Coalition(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn singleton(player: Player) -> Self {
        debug_assert!(player >= 1);
        Coalition(1 << (player - 1))
    }

    /// The grand coalition `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        if n >= 32 {
            Coalition(u32::MAX)
        } else {
            Coalition((1u32 << n) - 1)
        }
    }

    pub fn contains(self, player: Player) -> bool {
        (1..=32).contains(&player) && self.0 & (1 << (player - 1)) != 0
    }

    pub fn with(self, player: Player) -> Self {
        Coalition(self.0 | Self::singleton(player).0)
    }

    pub fn without(self, player: Player) -> Self {
        Coalition(self.0 & !Self::singleton(player).0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn first(self) -> Option<Player> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn last(self) -> Option<Player> {
        (self.0 != 0).then(|| 32 - self.0.leading_zeros() as usize)
    }

    pub fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Coalition) -> Self {
        Coalition(self.0 | other.0)
    }

    pub fn intersection(self, other: Coalition) -> Self {
        Coalition(self.0 & other.0)
    }

    pub fn difference(self, other: Coalition) -> Self {
        Coalition(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Coalition) -> bool {
        self.0 & other.0 == 0
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = Player> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let next = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(next + 1)
        })
    }

    pub fn to_vec(self) -> Vec<Player> {
        self.iter().collect()
    }

    /// Every subset, the empty set included, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = Coalition> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let current = next?;
            next = if current == full {
                None
            } else {
                Some((current.wrapping_sub(full)) & full)
            };
            Some(Coalition(current))
        })
    }
}

impl FromIterator<Player> for Coalition {
    fn from_iter<I: IntoIterator<Item = Player>>(iter: I) -> Self {
        iter.into_iter()
            .fold(Coalition::EMPTY, |acc, player| acc.with(player))
    }
}

/// Lexicographic order on the ascending member lists.
impl Ord for Coalition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for Coalition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, player) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{player}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn members_and_order() {
        let c: Coalition = [3, 1].into_iter().collect();
        assert_eq!(c.to_vec(), vec![1, 3]);
        assert_eq!(c.first(), Some(1));
        assert_eq!(c.last(), Some(3));
        assert_eq!(c.to_string(), "{1,3}");
        let a: Coalition = [1, 2].into_iter().collect();
        let b: Coalition = [2].into_iter().collect();
        assert!(Coalition::singleton(1) < a);
        assert!(a < c);
        assert!(c < b);
    }

    #[test]
    fn subsets_enumerates_power_set() {
        let c: Coalition = [1, 3, 4].into_iter().collect();
        let subsets: Vec<_> = c.subsets().collect();
        assert_eq!(subsets.len(), 8);
        assert!(subsets.iter().all(|s| s.is_subset_of(c)));
        assert_eq!(Coalition::EMPTY.subsets().count(), 1);
    }
}
