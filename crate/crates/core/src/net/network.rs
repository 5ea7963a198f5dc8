use std::cmp::Ordering;
use std::fmt;

use super::{Coalition, Partition, Player};
use crate::error::{Error, Result};

/// Hard ceiling on the player count imposed by the link encoding.
pub const MAX_PLAYERS: usize = 16;

const MAX_LINKS: usize = MAX_PLAYERS * (MAX_PLAYERS - 1) / 2;

/// Colex position of the link `{i, j}`, `i < j`, independent of `n`.
const fn link_index(i: usize, j: usize) -> usize {
    (j - 1) * (j - 2) / 2 + (i - 1)
}

const LINK_ENDS: [(u8, u8); MAX_LINKS] = {
    let mut ends = [(0u8, 0u8); MAX_LINKS];
    let mut j = 2;
    while j <= MAX_PLAYERS {
        let mut i = 1;
        while i < j {
            ends[link_index(i, j)] = (i as u8, j as u8);
            i += 1;
        }
        j += 1;
    }
    ends
};

/// `INCIDENT[p]`: mask of every link touching player `p`.
const INCIDENT: [u128; MAX_PLAYERS + 1] = {
    let mut masks = [0u128; MAX_PLAYERS + 1];
    let mut k = 0;
    while k < MAX_LINKS {
        let (i, j) = LINK_ENDS[k];
        masks[i as usize] |= 1u128 << k;
        masks[j as usize] |= 1u128 << k;
        k += 1;
    }
    masks
};

/// An undirected simple graph on players `1..=n`.
///
/// Isolated players are members like any other. Links are a bitmask in a
/// fixed colex numbering, so two networks are equal exactly when their
/// player counts and link sets agree; that value doubles as the memo key.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Network {
    n: u8,
    links: u128,
}

impl Network {
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_PLAYERS {
            return Err(Error::domain(format!(
                "player count must be in 1..={MAX_PLAYERS}, got {n}"
            )));
        }
        Ok(Network { n: n as u8, links: 0 })
    }

    /// The complete network on `n` players.
    pub fn complete(n: usize) -> Result<Self> {
        let empty = Self::empty(n)?;
        let count = n * (n - 1) / 2;
        let links = if count == 128 { u128::MAX } else { (1u128 << count) - 1 };
        Ok(Network { links, ..empty })
    }

    /// Builds a network, rejecting self-loops, repeated links and unknown players.
    pub fn from_links<I>(n: usize, links: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Player, Player)>,
    {
        let mut g = Self::empty(n)?;
        for (a, b) in links {
            if a == b {
                return Err(Error::domain(format!("self-loop at player {a}")));
            }
            for p in [a, b] {
                if p < 1 || p > n {
                    return Err(Error::domain(format!("player {p} is not in 1..={n}")));
                }
            }
            if g.has_link(a, b) {
                return Err(Error::domain(format!(
                    "duplicate link {{{},{}}}",
                    a.min(b),
                    a.max(b)
                )));
            }
            g.links |= Self::bit(a, b);
        }
        Ok(g)
    }

    /// The complete network on `members`, all other players isolated.
    pub fn clique(n: usize, members: Coalition) -> Result<Self> {
        let complete = Self::complete(n)?;
        Ok(complete.induced_unchecked(members))
    }

    fn bit(a: Player, b: Player) -> u128 {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        1u128 << link_index(i, j)
    }

    pub fn players(&self) -> usize {
        self.n as usize
    }

    pub fn player_set(&self) -> Coalition {
        Coalition::full(self.players())
    }

    /// Raw link mask; bit `k` is the `k`-th link in colex order.
    pub fn link_bits(&self) -> u128 {
        self.links
    }

    pub fn from_link_bits(n: usize, bits: u128) -> Result<Self> {
        let g = Self::empty(n)?;
        let available = Self::complete(n)?.links;
        if bits & !available != 0 {
            return Err(Error::domain("link mask names players outside the network"));
        }
        Ok(Network { links: bits, ..g })
    }

    pub fn link_count(&self) -> usize {
        self.links.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.links == 0
    }

    pub fn has_link(&self, a: Player, b: Player) -> bool {
        a != b
            && (1..=self.players()).contains(&a)
            && (1..=self.players()).contains(&b)
            && self.links & Self::bit(a, b) != 0
    }

    /// Links as `(min, max)` pairs in lexicographic order.
    pub fn links(&self) -> Vec<(Player, Player)> {
        let mut out: Vec<_> = self.link_iter().collect();
        out.sort_unstable();
        out
    }

    fn link_iter(&self) -> impl Iterator<Item = (Player, Player)> {
        let mut bits = self.links;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let k = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (i, j) = LINK_ENDS[k];
            Some((i as usize, j as usize))
        })
    }

    pub fn with_link(&self, a: Player, b: Player) -> Self {
        Network {
            links: self.links | Self::bit(a, b),
            ..*self
        }
    }

    /// `g \ {a, b}`.
    pub fn without_link(&self, a: Player, b: Player) -> Self {
        Network {
            links: self.links & !Self::bit(a, b),
            ..*self
        }
    }

    pub fn is_subnetwork_of(&self, other: &Network) -> bool {
        self.n == other.n && self.links & !other.links == 0
    }

    pub fn neighbors(&self, player: Player) -> Coalition {
        self.link_iter()
            .filter_map(|(i, j)| {
                if i == player {
                    Some(j)
                } else if j == player {
                    Some(i)
                } else {
                    None
                }
            })
            .collect()
    }

    fn adjacency(&self) -> [u32; MAX_PLAYERS] {
        let mut adj = [0u32; MAX_PLAYERS];
        for (i, j) in self.link_iter() {
            adj[i - 1] |= 1 << (j - 1);
            adj[j - 1] |= 1 << (i - 1);
        }
        adj
    }

    fn reach(adj: &[u32; MAX_PLAYERS], start: Player) -> Coalition {
        let mut seen = 1u32 << (start - 1);
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let k = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[k];
            }
            frontier = next & !seen;
            seen |= next;
        }
        Coalition::from_bits(seen)
    }

    /// The component containing `player`.
    pub fn component_of(&self, player: Player) -> Coalition {
        Self::reach(&self.adjacency(), player)
    }

    /// `N/g`: the partition of the players into connected components.
    pub fn components(&self) -> Partition {
        Partition::from_sorted_unchecked(self.players(), self.split(self.player_set()))
    }

    /// `S/g`: the components of `g|_S`, sorted by minimum.
    pub fn split(&self, subset: Coalition) -> Vec<Coalition> {
        let h = self.induced_unchecked(subset);
        let adj = h.adjacency();
        let mut rest = subset;
        let mut out = Vec::new();
        while let Some(start) = rest.first() {
            let piece = Self::reach(&adj, start);
            out.push(piece);
            rest = rest.difference(piece);
        }
        out
    }

    pub fn is_component(&self, c: Coalition) -> bool {
        match c.first() {
            Some(start) if c.is_subset_of(self.player_set()) => self.component_of(start) == c,
            _ => false,
        }
    }

    pub fn is_connected_on(&self, c: Coalition) -> bool {
        self.split(c).len() == 1
    }

    fn incident(players: Coalition) -> u128 {
        players.iter().fold(0u128, |acc, p| acc | INCIDENT[p])
    }

    fn induced_unchecked(&self, subset: Coalition) -> Self {
        let outside = self.player_set().difference(subset);
        Network {
            links: self.links & !Self::incident(outside),
            ..*self
        }
    }

    /// `g|_S`: links with both endpoints in `subset`. Other players stay, isolated.
    pub fn induced(&self, subset: Coalition) -> Result<Self> {
        self.check_subset(subset)?;
        Ok(self.induced_unchecked(subset))
    }

    /// `g_{-D}`: every link touching a player of `removed` is deleted.
    pub fn remove_players(&self, removed: Coalition) -> Self {
        Network {
            links: self.links & !Self::incident(removed.intersection(self.player_set())),
            ..*self
        }
    }

    pub fn remove_player(&self, player: Player) -> Self {
        self.remove_players(Coalition::singleton(player))
    }

    /// `g|_P`: links inside the blocks of `partition`.
    pub fn restrict_to_partition(&self, partition: &Partition) -> Self {
        let keep = partition
            .blocks()
            .iter()
            .fold(0u128, |acc, &block| acc | self.induced_unchecked(block).links);
        Network { links: keep, ..*self }
    }

    /// Every subnetwork obtained by deleting a subset of links, in increasing mask order.
    pub fn link_subsets(&self) -> impl Iterator<Item = Network> {
        let full = self.links;
        let base = *self;
        let mut next = Some(0u128);
        std::iter::from_fn(move || {
            let current = next?;
            next = if current == full {
                None
            } else {
                Some(current.wrapping_sub(full) & full)
            };
            Some(Network { links: current, ..base })
        })
    }

    /// Every network on `n` players.
    pub fn all(n: usize) -> Result<impl Iterator<Item = Network>> {
        Ok(Self::complete(n)?.link_subsets())
    }

    fn check_subset(&self, subset: Coalition) -> Result<()> {
        if subset.is_subset_of(self.player_set()) {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "{subset} is not a subset of the players 1..={}",
                self.n
            )))
        }
    }
}

/// Networks order by player count, then by their sorted link lists.
impl Ord for Network {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.links().cmp(&other.links()))
    }
}

impl PartialOrd for Network {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (i, j)) in self.links().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{{i},{j}}}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} {}", self.n, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn net(n: usize, links: &[(Player, Player)]) -> Network {
        Network::from_links(n, links.iter().copied()).unwrap()
    }

    fn set(players: &[Player]) -> Coalition {
        players.iter().copied().collect()
    }

    #[test]
    fn rejects_malformed_links() {
        assert!(Network::from_links(3, [(1, 1)]).is_err());
        assert!(Network::from_links(3, [(1, 2), (2, 1)]).is_err());
        assert!(Network::from_links(3, [(1, 4)]).is_err());
        assert!(Network::empty(0).is_err());
        assert!(Network::empty(17).is_err());
    }

    #[test]
    fn components_examples() {
        let parts = |g: Network| -> Vec<Vec<Player>> {
            g.components().blocks().iter().map(|b| b.to_vec()).collect()
        };
        assert_eq!(parts(net(3, &[])), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(parts(net(4, &[(1, 2), (1, 4), (3, 4)])), vec![vec![1, 2, 3, 4]]);
        assert_eq!(parts(net(3, &[(1, 2)])), vec![vec![1, 2], vec![3]]);
    }

    #[test]
    fn induced_subnetworks() {
        let g = net(3, &[(1, 2), (2, 3)]);
        assert_eq!(g.induced(set(&[1, 2])).unwrap(), net(3, &[(1, 2)]));
        assert_eq!(g.induced(set(&[1, 3])).unwrap(), net(3, &[]));
        assert_eq!(g.induced(g.player_set()).unwrap(), g);
        assert!(g.induced(set(&[4])).is_err());
    }

    #[test]
    fn player_removal() {
        let g = net(4, &[(1, 2), (1, 4), (3, 4)]);
        assert_eq!(g.remove_player(3), net(4, &[(1, 2), (1, 4)]));
        assert_eq!(g.remove_player(1), net(4, &[(3, 4)]));
        assert_eq!(g.remove_players(Coalition::EMPTY), g);
        assert_eq!(g.remove_player(1).players(), 4);
    }

    #[test]
    fn partition_restriction() {
        let g = net(3, &[(1, 2), (1, 3)]);
        let p = Partition::new(3, vec![set(&[1, 2]), set(&[3])]).unwrap();
        assert_eq!(g.restrict_to_partition(&p), net(3, &[(1, 2)]));
        assert_eq!(g.restrict_to_partition(&Partition::grand(3)), g);
        assert_eq!(g.restrict_to_partition(&Partition::singletons(3)), net(3, &[]));
    }

    #[test]
    fn links_are_sorted_and_displayed() {
        let g = net(4, &[(4, 3), (2, 1), (1, 4)]);
        assert_eq!(g.links(), vec![(1, 2), (1, 4), (3, 4)]);
        assert_eq!(g.to_string(), "{{1,2},{1,4},{3,4}}");
        assert_eq!(g.neighbors(1), set(&[2, 4]));
    }

    #[test]
    fn complete_network_on_sixteen_players() {
        let g = Network::complete(16).unwrap();
        assert_eq!(g.link_count(), 120);
        assert!(g.has_link(15, 16));
        assert_eq!(g.components().len(), 1);
    }

    #[test]
    fn split_and_clique() {
        let g = net(4, &[(1, 2), (2, 3)]);
        assert_eq!(g.split(set(&[1, 3, 4])), vec![set(&[1]), set(&[3]), set(&[4])]);
        assert_eq!(g.split(set(&[1, 2, 4])), vec![set(&[1, 2]), set(&[4])]);
        let k = Network::clique(4, set(&[1, 3, 4])).unwrap();
        assert_eq!(k.links(), vec![(1, 3), (1, 4), (3, 4)]);
    }

    #[test]
    fn link_subsets_count() {
        let g = net(4, &[(1, 2), (2, 3), (3, 4)]);
        let subs: Vec<_> = g.link_subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|h| h.is_subnetwork_of(&g)));
        assert_eq!(Network::all(4).unwrap().count(), 64);
    }
}
