use std::fmt;

use itertools::Itertools;

use super::{Coalition, Network, Partition, Player};
use crate::error::{Error, Result};

/// A bijection `π` on `{1, ..., n}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    /// `images[i - 1] = π(i)`.
    images: Vec<Player>,
}

impl Permutation {
    pub fn new(images: Vec<Player>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &p in &images {
            if p < 1 || p > n || seen[p] {
                return Err(Error::domain(format!("{images:?} is not a permutation of 1..={n}")));
            }
            seen[p] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// Swaps `a` and `b`.
    pub fn transposition(n: usize, a: Player, b: Player) -> Result<Self> {
        let mut images: Vec<_> = (1..=n).collect();
        if a < 1 || b < 1 || a > n || b > n {
            return Err(Error::domain(format!("transposition ({a} {b}) outside 1..={n}")));
        }
        images.swap(a - 1, b - 1);
        Ok(Permutation { images })
    }

    /// Every permutation of `1..=n` in lexicographic order of image lists.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (1..=n)
            .permutations(n)
            .map(|images| Permutation { images })
    }

    pub fn players(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Player] {
        &self.images
    }

    pub fn apply(&self, player: Player) -> Player {
        self.images[player - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &p) in self.images.iter().enumerate() {
            images[p - 1] = i + 1;
        }
        Permutation { images }
    }

    /// `other ∘ self`: apply `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Self {
        Permutation {
            images: self.images.iter().map(|&p| other.apply(p)).collect(),
        }
    }

    pub fn apply_coalition(&self, c: Coalition) -> Coalition {
        c.iter().map(|p| self.apply(p)).collect()
    }

    /// `πg = {{π(i), π(j)} : {i, j} ∈ g}`.
    pub fn apply_network(&self, g: &Network) -> Result<Network> {
        self.check(g.players())?;
        Network::from_links(
            g.players(),
            g.links().into_iter().map(|(i, j)| (self.apply(i), self.apply(j))),
        )
    }

    pub fn apply_partition(&self, p: &Partition) -> Result<Partition> {
        self.check(p.players())?;
        Partition::new(
            p.players(),
            p.blocks().iter().map(|&b| self.apply_coalition(b)).collect(),
        )
    }

    /// Moves the entry of player `i` to position `π(i)`.
    pub fn apply_vec<T: Clone>(&self, values: &[T]) -> Result<Vec<T>> {
        self.check(values.len())?;
        let mut out = values.to_vec();
        for (i, v) in values.iter().enumerate() {
            out[self.images[i] - 1] = v.clone();
        }
        Ok(out)
    }

    fn check(&self, n: usize) -> Result<()> {
        if n == self.players() {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "permutation on {} players applied to {n} players",
                self.players()
            )))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "π{:?}", self.images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabels_networks() {
        let g = Network::from_links(3, [(1, 2)]).unwrap();
        let swap = Permutation::transposition(3, 1, 3).unwrap();
        assert_eq!(swap.apply_network(&g).unwrap().links(), vec![(2, 3)]);
        assert_eq!(Permutation::identity(3).apply_network(&g).unwrap(), g);
    }

    #[test]
    fn inverse_composes_to_identity() {
        for p in Permutation::all(4) {
            assert_eq!(p.then(&p.inverse()), Permutation::identity(4));
            assert_eq!(p.inverse().then(&p), Permutation::identity(4));
        }
        assert_eq!(Permutation::all(4).count(), 24);
    }

    #[test]
    fn group_action_on_networks() {
        let g = Network::from_links(4, [(1, 2), (2, 3), (3, 4)]).unwrap();
        for p in Permutation::all(4).step_by(5) {
            for q in Permutation::all(4).step_by(7) {
                let stepwise = q.apply_network(&p.apply_network(&g).unwrap()).unwrap();
                assert_eq!(p.then(&q).apply_network(&g).unwrap(), stepwise);
            }
        }
    }

    #[test]
    fn moves_vector_entries() {
        let cycle = Permutation::new(vec![2, 3, 1]).unwrap();
        assert_eq!(cycle.apply_vec(&['a', 'b', 'c']).unwrap(), vec!['c', 'a', 'b']);
        assert!(Permutation::new(vec![1, 1, 2]).is_err());
    }
}
