//! Per-axiom audits of an allocation rule on one worth function and network.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::games::WorthFunction;
use crate::net::{Coalition, Network, Permutation, Player};
use crate::rational::Rational;
use crate::values::{AllocationRule, Payoffs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// Component efficiency.
    Ce,
    /// Balanced contributions on every link.
    Bc,
    /// Fairness on every link.
    F,
    /// Balanced contributions on every pair inside a component.
    BcPlus,
    /// Relabelling invariance.
    Symmetry,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [Axiom::Ce, Axiom::Bc, Axiom::F, Axiom::BcPlus, Axiom::Symmetry];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Ce => "ce",
            Axiom::Bc => "bc",
            Axiom::F => "f",
            Axiom::BcPlus => "bcplus",
            Axiom::Symmetry => "sym",
        }
    }

    pub fn from_name(name: &str) -> Option<Axiom> {
        Axiom::ALL.into_iter().find(|a| a.name() == name)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One failed equation `lhs = rhs`.
///
/// * CE: `coalitions = [C]`, `networks = [g]`, `lhs = Σ_{i∈C} φ_i`, `rhs = w(C, g)`.
/// * BC and BC⁺: `players = [i, j]`, `networks = [g, g_{-j}, g_{-i}]`,
///   `lhs = φ_i(g) − φ_i(g_{-j})`, `rhs = φ_j(g) − φ_j(g_{-i})`. For BC⁺,
///   `coalitions` holds the component of `i` in `g`, of `i` in `g_{-j}` and of
///   `j` in `g_{-i}`.
/// * F: `networks = [g, g∖{i,j}]`, sides as for BC with the single link cut.
/// * Symmetry: `players = [i, π(i)]`, `networks = [g, πg]`,
///   `lhs = φ_{π(i)}(πw, πg)`, `rhs = φ_i(w, g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub axiom: Axiom,
    pub players: Vec<Player>,
    pub networks: Vec<Network>,
    pub coalitions: Vec<Coalition>,
    pub permutation: Option<Permutation>,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl Witness {
    /// Recomputes both sides from scratch with `rule` and `w`.
    pub fn recompute(&self, rule: &dyn AllocationRule, w: &WorthFunction) -> Result<(Rational, Rational)> {
        let at = |g: &Network| rule.allocate(w, g);
        match self.axiom {
            Axiom::Ce => {
                let (c, g) = (self.coalitions[0], &self.networks[0]);
                Ok((at(g)?.total(c), w.eval(c, g)?))
            }
            Axiom::Bc | Axiom::BcPlus | Axiom::F => {
                let (i, j) = (self.players[0], self.players[1]);
                let g = &self.networks[0];
                let (without_j, without_i) = if self.axiom == Axiom::F {
                    let cut = g.without_link(i, j);
                    (cut, cut)
                } else {
                    (g.remove_player(j), g.remove_player(i))
                };
                let base = at(g)?;
                Ok((
                    base.payoff(i) - at(&without_j)?.payoff(i),
                    base.payoff(j) - at(&without_i)?.payoff(j),
                ))
            }
            Axiom::Symmetry => {
                let pi = self.permutation.as_ref().expect("symmetry witness has a permutation");
                let (i, g) = (self.players[0], &self.networks[0]);
                let moved = rule.allocate(&w.permuted(pi)?, &pi.apply_network(g)?)?;
                Ok((moved.payoff(pi.apply(i)).clone(), at(g)?.payoff(i).clone()))
            }
        }
    }

    /// True when a fresh evaluation reproduces the same two unequal sides.
    pub fn reverify(&self, rule: &dyn AllocationRule, w: &WorthFunction) -> Result<bool> {
        let (lhs, rhs) = self.recompute(rule, w)?;
        Ok(lhs == self.lhs && rhs == self.rhs && lhs != rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub axiom: Axiom,
    /// Equations checked.
    pub checked: usize,
    pub violations: Vec<Witness>,
}

impl AuditReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `R(i, j; g_{-D})` with the removed set recorded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualValue {
    pub i: Player,
    pub j: Player,
    pub removed: Coalition,
    pub value: Rational,
}

/// `[φ_i(g_{-D}) − φ_i(g_{-D∪{j}})] − [φ_j(g_{-D}) − φ_j(g_{-D∪{i}})]`.
pub fn bc_residual(
    rule: &mut dyn Payoffs,
    g: &Network,
    i: Player,
    j: Player,
    removed: Coalition,
) -> Result<ResidualValue> {
    let h = g.remove_players(removed);
    if removed.contains(i) || removed.contains(j) || !h.has_link(i, j) {
        return Err(Error::domain(format!(
            "{{{i},{j}}} is not a link of g_-{removed} for g = {g}"
        )));
    }
    let base = rule.payoffs(&h)?;
    let without_j = rule.payoffs(&h.remove_player(j))?;
    let without_i = rule.payoffs(&h.remove_player(i))?;
    let value = (base.payoff(i) - without_j.payoff(i)) - (base.payoff(j) - without_i.payoff(j));
    Ok(ResidualValue {
        i,
        j,
        removed,
        value,
    })
}

/// `Σ_{i∈C} φ_i(w, g) = w(C, g)` for every component.
pub fn check_ce(rule: &mut dyn Payoffs, w: &WorthFunction, g: &Network) -> Result<AuditReport> {
    let phi = rule.payoffs(g)?;
    let mut report = empty(Axiom::Ce);
    for &c in g.components().blocks() {
        report.checked += 1;
        let (lhs, rhs) = (phi.total(c), w.eval(c, g)?);
        if lhs != rhs {
            report.violations.push(Witness {
                axiom: Axiom::Ce,
                players: c.to_vec(),
                networks: vec![*g],
                coalitions: vec![c],
                permutation: None,
                lhs,
                rhs,
            });
        }
    }
    Ok(report)
}

/// Balanced contributions on every link of `g`.
pub fn check_bc(rule: &mut dyn Payoffs, g: &Network) -> Result<AuditReport> {
    pairwise(rule, g, Axiom::Bc, g.links())
}

/// Balanced contributions on every pair of players sharing a component.
pub fn check_bcplus(rule: &mut dyn Payoffs, g: &Network) -> Result<AuditReport> {
    let mut pairs = Vec::new();
    for &c in g.components().blocks() {
        let members = c.to_vec();
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                pairs.push((i, j));
            }
        }
    }
    pairs.sort_unstable();
    pairwise(rule, g, Axiom::BcPlus, pairs)
}

/// Fairness on every link of `g`.
pub fn check_f(rule: &mut dyn Payoffs, g: &Network) -> Result<AuditReport> {
    pairwise(rule, g, Axiom::F, g.links())
}

fn pairwise(
    rule: &mut dyn Payoffs,
    g: &Network,
    axiom: Axiom,
    pairs: Vec<(Player, Player)>,
) -> Result<AuditReport> {
    let base = rule.payoffs(g)?;
    let mut report = empty(axiom);
    for (i, j) in pairs {
        report.checked += 1;
        let (without_j, without_i) = if axiom == Axiom::F {
            let cut = g.without_link(i, j);
            (cut, cut)
        } else {
            (g.remove_player(j), g.remove_player(i))
        };
        let lhs = base.payoff(i) - rule.payoffs(&without_j)?.payoff(i);
        let rhs = base.payoff(j) - rule.payoffs(&without_i)?.payoff(j);
        if lhs != rhs {
            let coalitions = if axiom == Axiom::BcPlus {
                vec![
                    g.component_of(i),
                    without_j.component_of(i),
                    without_i.component_of(j),
                ]
            } else {
                Vec::new()
            };
            let networks = if axiom == Axiom::F {
                vec![*g, without_j]
            } else {
                vec![*g, without_j, without_i]
            };
            report.violations.push(Witness {
                axiom,
                players: vec![i, j],
                networks,
                coalitions,
                permutation: None,
                lhs,
                rhs,
            });
        }
    }
    Ok(report)
}

/// Which relabellings a symmetry audit tries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PermutationChoice {
    /// All `n!` permutations; `n ≤ 6`.
    All,
    /// `count` distinct permutations drawn with the seed.
    Sample { count: usize, seed: u64 },
    Given(Vec<Permutation>),
}

/// Largest player count for which every permutation is tried.
pub const EXHAUSTIVE_SYMMETRY_PLAYERS: usize = 6;

/// `φ_{π(i)}(πw, πg) = φ_i(w, g)` for the chosen permutations.
pub fn check_symmetry(
    rule: &dyn AllocationRule,
    w: &WorthFunction,
    g: &Network,
    choice: &PermutationChoice,
) -> Result<AuditReport> {
    let n = g.players();
    let perms: Vec<Permutation> = match choice {
        PermutationChoice::All => {
            if n > EXHAUSTIVE_SYMMETRY_PLAYERS {
                return Err(Error::ResourceGuard {
                    what: "player count for exhaustive symmetry audit",
                    actual: n,
                    cap: EXHAUSTIVE_SYMMETRY_PLAYERS,
                });
            }
            Permutation::all(n).collect()
        }
        PermutationChoice::Sample { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            (0..*count)
                .map(|_| {
                    let mut images: Vec<Player> = (1..=n).collect();
                    images.shuffle(&mut rng);
                    Permutation::new(images).expect("shuffled labels")
                })
                .collect()
        }
        PermutationChoice::Given(perms) => perms.clone(),
    };
    let phi = rule.allocate(w, g)?;
    let mut report = empty(Axiom::Symmetry);
    for pi in perms {
        let moved_g = pi.apply_network(g)?;
        let moved = rule.allocate(&w.permuted(&pi)?, &moved_g)?;
        for i in 1..=n {
            report.checked += 1;
            let (lhs, rhs) = (moved.payoff(pi.apply(i)), phi.payoff(i));
            if lhs != rhs {
                report.violations.push(Witness {
                    axiom: Axiom::Symmetry,
                    players: vec![i, pi.apply(i)],
                    networks: vec![*g, moved_g],
                    coalitions: Vec::new(),
                    permutation: Some(pi.clone()),
                    lhs: lhs.clone(),
                    rhs: rhs.clone(),
                });
            }
        }
    }
    Ok(report)
}

/// Runs one audit, binding `rule` to `w` for the pairwise axioms.
pub fn audit(
    rule: &dyn AllocationRule,
    w: &WorthFunction,
    g: &Network,
    axiom: Axiom,
    symmetry: &PermutationChoice,
) -> Result<AuditReport> {
    if axiom == Axiom::Symmetry {
        return check_symmetry(rule, w, g, symmetry);
    }
    let mut bound = rule.bind(w);
    match axiom {
        Axiom::Ce => check_ce(bound.as_mut(), w, g),
        Axiom::Bc => check_bc(bound.as_mut(), g),
        Axiom::F => check_f(bound.as_mut(), g),
        Axiom::BcPlus => check_bcplus(bound.as_mut(), g),
        Axiom::Symmetry => unreachable!(),
    }
}

fn empty(axiom: Axiom) -> AuditReport {
    AuditReport {
        axiom,
        checked: 0,
        violations: Vec::new(),
    }
}
