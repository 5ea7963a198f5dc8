use std::collections::HashMap;

use num::Zero;

use super::{PffGame, TuGame};
use crate::error::{Error, Result};
use crate::net::{Coalition, Network, Permutation, Player};
use crate::rational::{self, Rational};

/// Which links a [`WorthBody::Hashed`] worth function looks at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HashScope {
    /// The whole network: worths carry externalities.
    Global,
    /// Only the links inside the evaluated component: no externalities.
    Internal,
}

/// How a [`WorthFunction`] produces `w(C, g)`.
#[derive(Clone, Debug, PartialEq)]
pub enum WorthBody {
    /// Explicit values; unlisted pairs are worth 0.
    Table(HashMap<(Coalition, Network), Rational>),
    /// `w(C, g) = v̄(C)`.
    TuInduced(TuGame),
    /// `w(C, g) = v(C, N/g)`.
    PffInduced(PffGame),
    /// 1 when `beneficiary ∈ C` and the pair shares a component of `g`.
    LinkedBeneficiary {
        beneficiary: Player,
        pair: (Player, Player),
    },
    /// 1 when `beneficiary ∈ C` and the pair is directly linked in `g`.
    EdgeBeneficiary {
        beneficiary: Player,
        pair: (Player, Player),
    },
    /// Deterministic pseudo-random worths `p/q` with `|p| ≤ 10`, `1 ≤ q ≤ 10`.
    Hashed { seed: u64, scope: HashScope },
    /// `w^g(C, h) = Σ_{S ∈ C/g} w(S, g|_{N/h})`.
    Projected {
        inner: Box<WorthFunction>,
        network: Network,
    },
    /// `(πw)(S, g') = w(π⁻¹S, π⁻¹g')`.
    Permuted {
        inner: Box<WorthFunction>,
        permutation: Permutation,
        inverse: Permutation,
    },
    /// `Σ_k α_k w_k`.
    Combination(Vec<(Rational, WorthFunction)>),
}

/// A network worth function: assigns `w(C, g)` to every component `C` of every network `g`.
#[derive(Clone, Debug, PartialEq)]
pub struct WorthFunction {
    n: usize,
    body: WorthBody,
}

impl WorthFunction {
    pub fn players(&self) -> usize {
        self.n
    }

    pub fn body(&self) -> &WorthBody {
        &self.body
    }

    /// Table-backed worth function; every key must pair a network with one of its components.
    pub fn table<I>(n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Coalition, Network, Rational)>,
    {
        let mut table = HashMap::new();
        for (c, g, value) in entries {
            if g.players() != n {
                return Err(Error::domain(format!("network {g} is not on {n} players")));
            }
            if !g.is_component(c) {
                return Err(Error::domain(format!("{c} is not a component of {g}")));
            }
            if table.insert((c, g), value).is_some() {
                return Err(Error::domain(format!("duplicate entry for ({c}, {g})")));
            }
        }
        table.retain(|_, v: &mut Rational| !v.is_zero());
        Ok(WorthFunction {
            n,
            body: WorthBody::Table(table),
        })
    }

    pub fn zero(n: usize) -> Self {
        WorthFunction {
            n,
            body: WorthBody::Table(HashMap::new()),
        }
    }

    pub fn tu(game: TuGame) -> Self {
        WorthFunction {
            n: game.players(),
            body: WorthBody::TuInduced(game),
        }
    }

    /// `w_v(C, g) = v(C, N/g)`.
    pub fn pff(game: PffGame) -> Self {
        WorthFunction {
            n: game.players(),
            body: WorthBody::PffInduced(game),
        }
    }

    pub fn linked_beneficiary(n: usize, beneficiary: Player, pair: (Player, Player)) -> Result<Self> {
        check_beneficiary(n, beneficiary, pair)?;
        Ok(WorthFunction {
            n,
            body: WorthBody::LinkedBeneficiary { beneficiary, pair },
        })
    }

    pub fn edge_beneficiary(n: usize, beneficiary: Player, pair: (Player, Player)) -> Result<Self> {
        check_beneficiary(n, beneficiary, pair)?;
        Ok(WorthFunction {
            n,
            body: WorthBody::EdgeBeneficiary { beneficiary, pair },
        })
    }

    pub fn hashed(n: usize, seed: u64, scope: HashScope) -> Self {
        WorthFunction {
            n,
            body: WorthBody::Hashed { seed, scope },
        }
    }

    /// The `g`-projected worth function `w^g`.
    pub fn projected(&self, g: &Network) -> Result<Self> {
        self.check_players(g)?;
        Ok(WorthFunction {
            n: self.n,
            body: WorthBody::Projected {
                inner: Box::new(self.clone()),
                network: *g,
            },
        })
    }

    /// The relabelled game `πw`.
    pub fn permuted(&self, permutation: &Permutation) -> Result<Self> {
        if permutation.players() != self.n {
            return Err(Error::domain("permutation and game have different player counts"));
        }
        Ok(WorthFunction {
            n: self.n,
            body: WorthBody::Permuted {
                inner: Box::new(self.clone()),
                permutation: permutation.clone(),
                inverse: permutation.inverse(),
            },
        })
    }

    /// `Σ_k α_k w_k`; all terms must share the player count.
    pub fn combination(n: usize, terms: Vec<(Rational, WorthFunction)>) -> Result<Self> {
        if terms.iter().any(|(_, w)| w.n != n) {
            return Err(Error::domain("combination terms have different player counts"));
        }
        Ok(WorthFunction {
            n,
            body: WorthBody::Combination(terms),
        })
    }

    /// `w(C, g)`. Errors unless `C` is a component of `g`.
    pub fn eval(&self, c: Coalition, g: &Network) -> Result<Rational> {
        self.check_players(g)?;
        if !g.is_component(c) {
            return Err(Error::domain(format!(
                "worth undefined at ({c}, {g}): not a component"
            )));
        }
        Ok(self.value(c, g))
    }

    fn check_players(&self, g: &Network) -> Result<()> {
        if g.players() == self.n {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "network on {} players given to a worth function on {}",
                g.players(),
                self.n
            )))
        }
    }

    /// Evaluation on a pair already known to be legal.
    fn value(&self, c: Coalition, g: &Network) -> Rational {
        match &self.body {
            WorthBody::Table(table) => table.get(&(c, *g)).cloned().unwrap_or_else(Rational::zero),
            WorthBody::TuInduced(game) => game.worth(c),
            WorthBody::PffInduced(game) => game
                .worth(c, &g.components())
                .expect("components of g contain c"),
            WorthBody::LinkedBeneficiary { beneficiary, pair } => {
                indicator(c.contains(*beneficiary) && g.component_of(pair.0).contains(pair.1))
            }
            WorthBody::EdgeBeneficiary { beneficiary, pair } => {
                indicator(c.contains(*beneficiary) && g.has_link(pair.0, pair.1))
            }
            WorthBody::Hashed { seed, scope } => {
                let links = match scope {
                    HashScope::Global => g.link_bits(),
                    HashScope::Internal => g.induced(c).expect("c within players").link_bits(),
                };
                hashed_rational(*seed, self.n, c, links)
            }
            WorthBody::Projected { inner, network } => {
                let h = network.restrict_to_partition(&g.components());
                network.split(c).into_iter().map(|s| inner.value(s, &h)).sum()
            }
            WorthBody::Permuted { inner, inverse, .. } => {
                let g_back = inverse.apply_network(g).expect("matching player counts");
                inner.value(inverse.apply_coalition(c), &g_back)
            }
            WorthBody::Combination(terms) => terms
                .iter()
                .map(|(alpha, w)| alpha * w.value(c, g))
                .sum(),
        }
    }

    /// True when `w(C, g)` is known to depend on `g` only through `N/g`.
    pub fn is_known_partition_measurable(&self) -> bool {
        match &self.body {
            WorthBody::TuInduced(_)
            | WorthBody::PffInduced(_)
            | WorthBody::LinkedBeneficiary { .. }
            | WorthBody::Projected { .. } => true,
            WorthBody::Permuted { inner, .. } => inner.is_known_partition_measurable(),
            WorthBody::Combination(terms) => {
                terms.iter().all(|(_, w)| w.is_known_partition_measurable())
            }
            WorthBody::Table(table) => table.is_empty(),
            WorthBody::EdgeBeneficiary { .. } | WorthBody::Hashed { .. } => false,
        }
    }
}

fn check_beneficiary(n: usize, beneficiary: Player, pair: (Player, Player)) -> Result<()> {
    for p in [beneficiary, pair.0, pair.1] {
        if p < 1 || p > n {
            return Err(Error::domain(format!("player {p} outside 1..={n}")));
        }
    }
    if pair.0 == pair.1 {
        return Err(Error::domain("the pair must name two distinct players"));
    }
    Ok(())
}

fn indicator(condition: bool) -> Rational {
    if condition {
        rational::one()
    } else {
        rational::zero()
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Small rational derived from a hash of `(seed, n, C, links)`.
pub(crate) fn hashed_rational(seed: u64, n: usize, c: Coalition, links: u128) -> Rational {
    let mut h = splitmix(seed);
    for word in [n as u64, c.bits() as u64, links as u64, (links >> 64) as u64] {
        h = splitmix(h ^ word);
    }
    let numer = (h % 21) as i64 - 10;
    let denom = ((h >> 32) % 10) as i64 + 1;
    rational::ratio(numer, denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn net(n: usize, links: &[(Player, Player)]) -> Network {
        Network::from_links(n, links.iter().copied()).unwrap()
    }

    fn set(players: &[Player]) -> Coalition {
        players.iter().copied().collect()
    }

    #[test]
    fn linked_beneficiary_values() {
        let w = WorthFunction::linked_beneficiary(3, 3, (1, 2)).unwrap();
        let g = net(3, &[(1, 2)]);
        assert_eq!(w.eval(set(&[3]), &g).unwrap(), int(1));
        assert_eq!(w.eval(set(&[1, 2]), &g).unwrap(), int(0));

        let w4 = WorthFunction::linked_beneficiary(4, 3, (1, 2)).unwrap();
        let h = net(4, &[(1, 2), (3, 4)]);
        assert_eq!(w4.eval(set(&[3, 4]), &h).unwrap(), int(1));
        let path = net(4, &[(1, 4), (4, 2), (3, 4)]);
        assert_eq!(w4.eval(set(&[1, 2, 3, 4]), &path).unwrap(), int(1));
    }

    #[test]
    fn edge_beneficiary_needs_the_link_itself() {
        let w = WorthFunction::edge_beneficiary(3, 3, (1, 2)).unwrap();
        let h = net(3, &[(1, 3), (2, 3)]);
        assert_eq!(w.eval(set(&[1, 2, 3]), &h).unwrap(), int(0));
        let l = WorthFunction::linked_beneficiary(3, 3, (1, 2)).unwrap();
        assert_eq!(l.eval(set(&[1, 2, 3]), &h).unwrap(), int(1));
    }

    #[test]
    fn tu_induced_ignores_the_network() {
        let game = TuGame::new(3, [(set(&[1, 2]), int(5))]).unwrap();
        let w = WorthFunction::tu(game);
        assert_eq!(w.eval(set(&[1, 2]), &net(3, &[(1, 2)])).unwrap(), int(5));
        assert_eq!(w.eval(set(&[1, 2]), &net(3, &[(1, 2), (1, 3)]).remove_player(3)).unwrap(), int(5));
    }

    #[test]
    fn evaluation_outside_the_domain_is_an_error() {
        let w = WorthFunction::zero(3);
        let g = net(3, &[(1, 2)]);
        assert!(w.eval(set(&[1]), &g).is_err());
        assert!(w.eval(set(&[1, 3]), &g).is_err());
        assert!(w.eval(Coalition::EMPTY, &g).is_err());
        assert!(w.eval(set(&[1]), &net(4, &[])).is_err());
        assert_eq!(w.eval(set(&[1, 2]), &g).unwrap(), int(0));
    }

    #[test]
    fn table_validation_and_defaults() {
        let g = net(3, &[(1, 2)]);
        assert!(WorthFunction::table(3, [(set(&[1]), g, int(1))]).is_err());
        let w = WorthFunction::table(3, [(set(&[3]), g, ratio(1, 2))]).unwrap();
        assert_eq!(w.eval(set(&[3]), &g).unwrap(), ratio(1, 2));
        assert_eq!(w.eval(set(&[3]), &net(3, &[])).unwrap(), int(0));
    }

    #[test]
    fn hashed_values_are_small_and_deterministic() {
        let w = WorthFunction::hashed(4, 7, HashScope::Global);
        let g = net(4, &[(1, 2), (3, 4)]);
        let a = w.eval(set(&[1, 2]), &g).unwrap();
        assert_eq!(a, w.eval(set(&[1, 2]), &g).unwrap());
        for h in Network::all(4).unwrap() {
            for &c in h.components().blocks() {
                let x = w.eval(c, &h).unwrap();
                assert!(x.numer().magnitude() <= &10u32.into());
                assert!(x.denom() <= &10.into());
            }
        }
    }

    #[test]
    fn internal_hash_ignores_outside_links() {
        let w = WorthFunction::hashed(4, 3, HashScope::Internal);
        let g = net(4, &[(1, 2), (3, 4)]);
        let h = net(4, &[(1, 2)]);
        assert_eq!(w.eval(set(&[1, 2]), &g).unwrap(), w.eval(set(&[1, 2]), &h).unwrap());
    }

    #[test]
    fn permuted_relabels_arguments() {
        let w = WorthFunction::linked_beneficiary(3, 3, (1, 2)).unwrap();
        let pi = Permutation::new(vec![2, 3, 1]).unwrap();
        let pw = w.permuted(&pi).unwrap();
        // πw rewards player π(3) = 1 when π(1) = 2 and π(2) = 3 are connected.
        let g = net(3, &[(2, 3)]);
        assert_eq!(pw.eval(set(&[1]), &g).unwrap(), int(1));
        assert_eq!(pw.eval(set(&[2, 3]), &g).unwrap(), int(0));
    }
}
