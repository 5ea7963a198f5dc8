//! The balanced-contributions rule, built by induction on the number of links.

use std::collections::HashMap;

use num::Zero;

use super::Payoffs;
use crate::error::{Error, Result};
use crate::games::{Allocation, WorthFunction};
use crate::net::{minimal_index_bfs, BfsTree, Coalition, Network, Player};
use crate::rational::Rational;

/// How the spanning tree of each component is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeChoice {
    /// Breadth-first from the smallest member, neighbours in increasing order.
    MinimalIndexBfs,
    /// A pseudo-random spanning tree per (network, component), fixed by the seed.
    Seeded(u64),
}

/// Offsets `γ` of one component, `γ_root = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BceOffsets {
    pub component: Coalition,
    pub root: Player,
    /// `(player, γ_player)` in tree visitation order.
    pub gamma: Vec<(Player, Rational)>,
}

/// BCE allocations of one worth function, memoized by network.
///
/// The recursion only visits networks `g_{-D}`, so one solver can be reused
/// across many networks of the same worth function.
pub struct BceSolver<'w> {
    w: &'w WorthFunction,
    choice: TreeChoice,
    memo: HashMap<Network, Allocation>,
}

impl<'w> BceSolver<'w> {
    pub fn new(w: &'w WorthFunction) -> Self {
        Self::with_tree_choice(w, TreeChoice::MinimalIndexBfs)
    }

    pub fn with_tree_choice(w: &'w WorthFunction, choice: TreeChoice) -> Self {
        BceSolver {
            w,
            choice,
            memo: HashMap::new(),
        }
    }

    pub fn worth(&self) -> &'w WorthFunction {
        self.w
    }

    /// Number of networks solved so far.
    pub fn cached(&self) -> usize {
        self.memo.len()
    }

    pub fn allocation(&mut self, g: &Network) -> Result<Allocation> {
        if let Some(hit) = self.memo.get(g) {
            return Ok(hit.clone());
        }
        if g.players() != self.w.players() {
            return Err(Error::domain(format!(
                "network on {} players given to a worth function on {}",
                g.players(),
                self.w.players()
            )));
        }
        let mut payoffs = Allocation::zeros(g.players());
        for &c in g.components().blocks() {
            if c.len() == 1 {
                payoffs.set(c.first().expect("nonempty"), self.w.eval(c, g)?);
            } else {
                let tree = self.tree(g, c)?;
                self.close_component(g, &tree, &mut payoffs)?;
            }
        }
        self.memo.insert(*g, payoffs.clone());
        Ok(payoffs)
    }

    /// Offsets of every multi-player component of `g` under the solver's tree choice.
    pub fn offsets(&mut self, g: &Network) -> Result<Vec<BceOffsets>> {
        let mut out = Vec::new();
        for &c in g.components().blocks() {
            if c.len() > 1 {
                let tree = self.tree(g, c)?;
                out.push(self.offsets_on(g, &tree)?);
            }
        }
        Ok(out)
    }

    fn tree(&self, g: &Network, c: Coalition) -> Result<BfsTree> {
        match self.choice {
            TreeChoice::MinimalIndexBfs => minimal_index_bfs(g, c),
            TreeChoice::Seeded(seed) => BfsTree::from_forest(&seeded_spanning_tree(g, c, seed), c),
        }
    }

    /// `γ_j = γ_{p(j)} − [BCE_{p(j)}(w, g_{-j}) − BCE_j(w, g_{-p(j)})]`.
    fn offsets_on(&mut self, g: &Network, tree: &BfsTree) -> Result<BceOffsets> {
        let mut gamma: Vec<(Player, Rational)> = vec![(tree.root(), Rational::zero())];
        let mut by_player = vec![Rational::zero(); g.players() + 1];
        for (j, p) in tree.edges() {
            let without_j = self.allocation(&g.remove_player(j))?;
            let without_p = self.allocation(&g.remove_player(p))?;
            let value = &by_player[p] - (without_j.payoff(p) - without_p.payoff(j));
            by_player[j] = value.clone();
            gamma.push((j, value));
        }
        Ok(BceOffsets {
            component: tree.component(),
            root: tree.root(),
            gamma,
        })
    }

    /// `BCE_i = (w(C,g) − Σ_k γ_k)/|C| + γ_i` on the tree's component.
    fn close_component(
        &mut self,
        g: &Network,
        tree: &BfsTree,
        payoffs: &mut Allocation,
    ) -> Result<()> {
        let c = tree.component();
        let offsets = self.offsets_on(g, tree)?;
        let sum: Rational = offsets.gamma.iter().map(|(_, x)| x).sum();
        let base = (self.w.eval(c, g)? - sum) / Rational::from_integer(c.len().into());
        for (i, gamma) in offsets.gamma {
            payoffs.set(i, &base + gamma);
        }
        Ok(())
    }
}

impl Payoffs for BceSolver<'_> {
    fn payoffs(&mut self, g: &Network) -> Result<Allocation> {
        self.allocation(g)
    }
}

/// `BCE(w, g)`.
pub fn bce(w: &WorthFunction, g: &Network) -> Result<Allocation> {
    BceSolver::new(w).allocation(g)
}

/// `BCE(w, g)` with `forest` supplying the spanning tree of every component of
/// `g`. Smaller networks reached by the recursion use minimal-index trees.
pub fn bce_with_forest(w: &WorthFunction, g: &Network, forest: &Network) -> Result<Allocation> {
    if !forest.is_subnetwork_of(g) {
        return Err(Error::domain(format!("{forest} is not a subnetwork of {g}")));
    }
    let mut solver = BceSolver::new(w);
    let mut payoffs = Allocation::zeros(g.players());
    for &c in g.components().blocks() {
        if c.len() == 1 {
            payoffs.set(c.first().expect("nonempty"), w.eval(c, g)?);
        } else {
            let tree = BfsTree::from_forest(forest, c)?;
            solver.close_component(g, &tree, &mut payoffs)?;
        }
    }
    Ok(payoffs)
}

/// Randomized Kruskal on the links inside `c`, ordered by a hash of the seed,
/// the network and the link.
fn seeded_spanning_tree(g: &Network, c: Coalition, seed: u64) -> Network {
    let inside = g.induced(c).expect("component within players");
    let mut links = inside.links();
    let key = |&(a, b): &(Player, Player)| {
        let mut h = seed ^ (g.link_bits() as u64) ^ ((g.link_bits() >> 64) as u64).rotate_left(17);
        h ^= ((a as u64) << 8 | b as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        h = (h ^ (h >> 31)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        h ^ (h >> 29)
    };
    links.sort_by_key(key);
    let mut root: Vec<Player> = (0..=g.players()).collect();
    fn find(root: &mut [Player], x: Player) -> Player {
        let mut x = x;
        while root[x] != x {
            root[x] = root[root[x]];
            x = root[x];
        }
        x
    }
    let mut chosen = Vec::new();
    for (a, b) in links {
        let (ra, rb) = (find(&mut root, a), find(&mut root, b));
        if ra != rb {
            root[ra] = rb;
            chosen.push((a, b));
        }
    }
    Network::from_links(g.players(), chosen).expect("links of g")
}
