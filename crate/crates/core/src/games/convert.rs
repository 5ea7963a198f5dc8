//! Conversions between worth functions, partition function games and TU games.

use std::collections::{BTreeMap, HashSet};

use itertools::Itertools;

use super::{PffGame, TuGame, WorthBody, WorthFunction};
use crate::error::{Error, Result};
use crate::limits;
use crate::net::{partition_by_graph, Coalition, Network, Partition};
use crate::rational::Rational;

/// `w_v`.
pub fn induced_worth_from_pff(v: &PffGame) -> WorthFunction {
    WorthFunction::pff(v.clone())
}

/// `v_w`, the partition function game inducing `w`.
///
/// PFF-induced worths are unwrapped directly. Tables are checked group by
/// group: every network with the same component partition must carry the
/// same worth (unlisted entries count as 0). Other bodies are accepted when
/// their structure guarantees measurability, and otherwise verified against
/// every network when `n ≤ 5`.
pub fn pff_from_worth(w: &WorthFunction) -> Result<PffGame> {
    match w.body() {
        WorthBody::PffInduced(v) => return Ok(v.clone()),
        WorthBody::Table(table) => check_table_measurable(w.players(), table)?,
        _ if w.is_known_partition_measurable() => {}
        _ => check_measurable_exhaustively(w)?,
    }
    pff_from_certified_worth(w)
}

/// `v_w` for a worth function the caller certifies as partition-measurable.
pub fn pff_from_certified_worth(w: &WorthFunction) -> Result<PffGame> {
    PffGame::from_fn(w.players(), |c, p| w.eval(c, &p.star_realization()))
}

/// The `g`-projected worth function `w^g`.
pub fn project_worth(w: &WorthFunction, g: &Network) -> Result<WorthFunction> {
    w.projected(g)
}

/// `v^g(C, P) = Σ_{S ∈ C/g} v(S, g/P)`, materialized.
pub fn graph_restrict_pff(v: &PffGame, g: &Network) -> Result<PffGame> {
    check_same_players(v.players(), g)?;
    PffGame::from_fn(v.players(), |c, p| {
        let refined = partition_by_graph(p, g);
        g.split(c).into_iter().map(|s| v.worth(s, &refined)).sum()
    })
}

/// `v_{w^g}(C, P) = Σ_{S ∈ C/g} w(S, g|_P)`.
pub fn pff_from_projected(w: &WorthFunction, g: &Network) -> Result<PffGame> {
    check_same_players(w.players(), g)?;
    PffGame::from_fn(w.players(), |c, p| {
        let h = g.restrict_to_partition(p);
        g.split(c).into_iter().map(|s| w.eval(s, &h)).sum()
    })
}

/// `v̄^JW(S) = Σ_{C ∈ S/g} w(C, g_{-(N∖S)})`.
///
/// Each piece `C` is evaluated in the network where everyone outside `S` has
/// withdrawn, the smallest subnetwork of `g` in which `C` is a component.
pub fn jw_tu_game(w: &WorthFunction, g: &Network) -> Result<TuGame> {
    check_same_players(w.players(), g)?;
    let all = g.player_set();
    TuGame::from_fn(w.players(), |s| {
        let h = g.remove_players(all.difference(s));
        g.split(s).into_iter().map(|c| w.eval(c, &h)).sum()
    })
}

/// `v̄^EF(S) = v(S, {S} ∪ {{j} : j ∉ S})`.
pub fn ef_tu_game(v: &PffGame) -> Result<TuGame> {
    let n = v.players();
    TuGame::from_fn(n, |s| v.worth(s, &Partition::isolating_outsiders(n, s)?))
}

/// `v̄^EF(S) = w(S, g^S)` with `g^S` complete on `S` and outsiders isolated.
pub fn ef_tu_game_from_worth(w: &WorthFunction) -> Result<TuGame> {
    let n = w.players();
    TuGame::from_fn(n, |s| w.eval(s, &Network::clique(n, s)?))
}

/// Outcome of [`is_externality_free`].
#[derive(Clone, Debug, PartialEq)]
pub struct ExternalityCheck {
    pub free: bool,
    /// `(C, h)` with `w(C, h) ≠ w(C, h|_C)`.
    pub witness: Option<(Coalition, Network)>,
    pub networks_checked: usize,
}

/// Checks `w(C, h) = w(C, h|_C)` for every component of every `h ⊆ g`.
pub fn is_externality_free(w: &WorthFunction, g: &Network) -> Result<ExternalityCheck> {
    check_same_players(w.players(), g)?;
    limits::check_links(g.link_count())?;
    let mut checked = 0;
    for h in g.link_subsets() {
        checked += 1;
        for &c in h.components().blocks() {
            let inside = h.induced(c)?;
            if w.eval(c, &h)? != w.eval(c, &inside)? {
                return Ok(ExternalityCheck {
                    free: false,
                    witness: Some((c, h)),
                    networks_checked: checked,
                });
            }
        }
    }
    Ok(ExternalityCheck {
        free: true,
        witness: None,
        networks_checked: checked,
    })
}

fn check_same_players(n: usize, g: &Network) -> Result<()> {
    if g.players() == n {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "network on {} players used with a game on {n}",
            g.players()
        )))
    }
}

/// Connected labelled graphs on `k` vertices.
fn connected_graphs(k: usize) -> u128 {
    let binom = |n: usize, r: usize| -> u128 {
        (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
    };
    let all = |m: usize| -> u128 { 1u128 << (m * m.saturating_sub(1) / 2) };
    let mut counts = vec![0u128; k + 1];
    for m in 1..=k {
        let mut disconnected = 0u128;
        for j in 1..m {
            disconnected += binom(m - 1, j - 1) * counts[j] * all(m - j);
        }
        counts[m] = all(m) - disconnected;
    }
    counts[k]
}

/// Networks whose component partition is `p`.
fn realization_count(p: &Partition) -> u128 {
    p.blocks().iter().map(|b| connected_graphs(b.len())).product()
}

/// Up to `limit` connected spanning subgraphs of the clique on `block`, densest first.
fn connected_on(n: usize, block: Coalition, limit: usize) -> Vec<Network> {
    let full = Network::clique(n, block).expect("valid block").link_bits();
    let mut out = Vec::new();
    let mut s = full;
    loop {
        let g = Network::from_link_bits(n, s).expect("submask of a clique");
        if g.is_connected_on(block) {
            out.push(g);
            if out.len() >= limit {
                break;
            }
        }
        if s == 0 {
            break;
        }
        s = (s - 1) & full;
    }
    out
}

fn check_table_measurable(
    n: usize,
    table: &std::collections::HashMap<(Coalition, Network), Rational>,
) -> Result<()> {
    let mut groups: BTreeMap<(Coalition, Partition), Vec<(Network, &Rational)>> = BTreeMap::new();
    for ((c, g), value) in table {
        groups
            .entry((*c, g.components()))
            .or_default()
            .push((*g, value));
    }
    for ((c, p), mut listed) in groups {
        listed.sort_by_key(|a| a.0);
        let (first_net, first_value) = listed[0];
        if let Some((other, value)) = listed.iter().find(|(_, v)| *v != first_value) {
            return Err(Error::Inconsistent(format!(
                "w({c}, {first_net}) = {first_value} but w({c}, {other}) = {value}; both networks have components {p}"
            )));
        }
        if (listed.len() as u128) < realization_count(&p) {
            let present: HashSet<Network> = listed.iter().map(|(g, _)| *g).collect();
            let limit = listed.len() + 1;
            let unlisted = p
                .blocks()
                .iter()
                .map(|&b| connected_on(n, b, limit))
                .multi_cartesian_product()
                .map(|parts| {
                    let bits = parts.iter().fold(0u128, |acc, g| acc | g.link_bits());
                    Network::from_link_bits(n, bits).expect("disjoint blocks")
                })
                .find(|g| !present.contains(g))
                .expect("fewer listed networks than realizations");
            return Err(Error::Inconsistent(format!(
                "w({c}, {first_net}) = {first_value} but w({c}, {unlisted}) is unlisted (0); both networks have components {p}"
            )));
        }
    }
    Ok(())
}

fn check_measurable_exhaustively(w: &WorthFunction) -> Result<()> {
    let n = w.players();
    if n > 5 {
        return Err(Error::ResourceGuard {
            what: "player count for exhaustive measurability check",
            actual: n,
            cap: 5,
        });
    }
    for h in Network::all(n)? {
        let p = h.components();
        let reference = p.star_realization();
        for &c in p.blocks() {
            let (a, b) = (w.eval(c, &h)?, w.eval(c, &reference)?);
            if a != b {
                return Err(Error::Inconsistent(format!(
                    "w({c}, {h}) = {a} but w({c}, {reference}) = {b}; both networks have components {p}"
                )));
            }
        }
    }
    Ok(())
}
