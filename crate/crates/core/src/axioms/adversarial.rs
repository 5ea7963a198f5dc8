//! Rules that satisfy nothing in particular, for testing identities that must
//! hold for every rule.

use crate::error::Result;
use crate::games::{hashed_rational, Allocation, WorthFunction};
use crate::net::{Coalition, Network, Player};
use crate::values::AllocationRule;

/// Payoffs drawn from a seeded hash of `(player, network)`, ignoring `w`.
pub struct HashedRule {
    pub seed: u64,
}

impl AllocationRule for HashedRule {
    fn name(&self) -> &str {
        "hashed"
    }

    fn allocate(&self, _w: &WorthFunction, g: &Network) -> Result<Allocation> {
        Ok(Allocation::from_vec(
            (1..=g.players())
                .map(|i| hashed_rational(self.seed, g.players(), Coalition::singleton(i), g.link_bits()))
                .collect(),
        ))
    }
}

/// The same payoffs on every network.
pub struct ConstantRule {
    pub payoffs: Allocation,
}

impl AllocationRule for ConstantRule {
    fn name(&self) -> &str {
        "constant"
    }

    fn allocate(&self, _w: &WorthFunction, _g: &Network) -> Result<Allocation> {
        Ok(self.payoffs.clone())
    }
}

/// Gives one player the worth of every component.
pub struct DictatorRule {
    pub player: Player,
}

impl AllocationRule for DictatorRule {
    fn name(&self) -> &str {
        "dictator"
    }

    fn allocate(&self, w: &WorthFunction, g: &Network) -> Result<Allocation> {
        let mut payoffs = Allocation::zeros(g.players());
        let mut total = crate::rational::zero();
        for &c in g.components().blocks() {
            total += w.eval(c, g)?;
        }
        payoffs.set(self.player, total);
        Ok(payoffs)
    }
}
