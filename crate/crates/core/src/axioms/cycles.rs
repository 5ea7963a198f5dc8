//! The cycle-sum identity for BC residuals.
//!
//! Around any cycle `Z = i_0 → … → i_{ℓ-1} → i_0` of `g`,
//! `Σ_s R(i_s, i_{s+1}; g) = Σ_{edges {a,b} of Z} Σ_{∅≠D⊆Z∖{a,b}} (−1)^{|D|+1} R(a, b; g_{-D})`
//! for every allocation rule.

use std::ops::{Add, Neg, Sub};

use num::{BigInt, Integer, One, ToPrimitive, Zero};

use super::audit::bc_residual;
use crate::error::{Error, Result};
use crate::games::Allocation;
use crate::limits;
use crate::net::{all_cycles, Coalition, Cycle, Network, Player};
use crate::rational::Rational;
use crate::values::Payoffs;

/// One signed term of the right-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleTerm {
    pub edge: (Player, Player),
    pub removed: Coalition,
    /// `+1` or `−1`.
    pub sign: i8,
    pub residual: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSum {
    pub lhs: Rational,
    pub rhs: Rational,
    pub equal: bool,
    pub terms: Vec<CycleTerm>,
}

/// Evaluates both sides of the identity for `rule` on the cycle `z` of `g`.
pub fn cycle_sum_check(rule: &mut dyn Payoffs, g: &Network, z: &Cycle) -> Result<CycleSum> {
    Cycle::new(g, z.vertices().to_vec())?;
    let mut lhs = Rational::zero();
    for (a, b) in z.edges() {
        lhs += bc_residual(rule, g, a, b, Coalition::EMPTY)?.value;
    }
    let mut rhs = Rational::zero();
    let mut terms = Vec::new();
    for (a, b) in z.edges() {
        let others = z.members().without(a).without(b);
        for d in others.subsets().filter(|d| !d.is_empty()) {
            let residual = bc_residual(rule, g, a, b, d)?.value;
            let sign: i8 = if d.len() % 2 == 1 { 1 } else { -1 };
            if sign == 1 {
                rhs += &residual;
            } else {
                rhs -= &residual;
            }
            terms.push(CycleTerm {
                edge: (a, b),
                removed: d,
                sign,
                residual,
            });
        }
    }
    Ok(CycleSum {
        equal: lhs == rhs,
        lhs,
        rhs,
        terms,
    })
}

/// Aggregate of [`sweep_cycle_identity`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycleSweep {
    pub networks: usize,
    pub cycles: usize,
    /// `(g, Z)` where the two sides differ.
    pub failures: Vec<(Network, Cycle)>,
    /// Right-hand-side terms that are nonzero, across all cycles.
    pub nonzero_rhs_terms: usize,
    /// Whether the sweep ran in scaled machine integers.
    pub scaled: bool,
}

/// Largest player count for the all-network sweep.
pub const SWEEP_MAX_PLAYERS: usize = 6;

/// Checks the identity on every cycle of every network on `n` players.
///
/// Payoffs are tabulated once per network. When all of them fit over a common
/// denominator in `i64`, sides are summed in `i128`; otherwise in rationals.
pub fn sweep_cycle_identity(rule: &mut dyn Payoffs, n: usize) -> Result<CycleSweep> {
    if n > SWEEP_MAX_PLAYERS {
        return Err(Error::ResourceGuard {
            what: "player count for the all-network cycle sweep",
            actual: n,
            cap: SWEEP_MAX_PLAYERS,
        });
    }
    limits::check_players(n)?;
    let networks: Vec<Network> = Network::all(n)?.collect();
    let mut table: Vec<Allocation> = Vec::with_capacity(networks.len());
    for (k, g) in networks.iter().enumerate() {
        debug_assert_eq!(g.link_bits(), k as u128);
        table.push(rule.payoffs(g)?);
    }
    match scale(&table, n) {
        Some(ints) => {
            let ints: Vec<i128> = ints.into_iter().map(i128::from).collect();
            let mut out = sweep(&networks, n, &ints);
            out.scaled = true;
            Ok(out)
        }
        None => {
            let flat: Vec<Rational> = table.into_iter().flat_map(Allocation::into_vec).collect();
            Ok(sweep(&networks, n, &flat))
        }
    }
}

fn scale(table: &[Allocation], n: usize) -> Option<Vec<i64>> {
    let common = table
        .iter()
        .flat_map(|a| a.as_slice())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out = Vec::with_capacity(table.len() * n);
    for x in table.iter().flat_map(|a| a.as_slice()) {
        // Bounded so that sums of a few hundred residuals cannot overflow i128.
        let v = (x.numer() * (&common / x.denom())).to_i64()?;
        if v.unsigned_abs() > 1 << 60 {
            return None;
        }
        out.push(v);
    }
    Some(out)
}

fn sweep<T>(networks: &[Network], n: usize, phi: &[T]) -> CycleSweep
where
    T: Clone + Zero + PartialEq + Neg<Output = T>,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    let at = |g: &Network, i: Player| -> &T { &phi[g.link_bits() as usize * n + i - 1] };
    let residual = |h: &Network, i: Player, j: Player| -> T {
        let left = at(h, i) - at(&h.remove_player(j), i);
        let right = at(h, j) - at(&h.remove_player(i), j);
        &left - &right
    };
    let mut out = CycleSweep::default();
    for g in networks {
        out.networks += 1;
        for z in all_cycles(g) {
            out.cycles += 1;
            let mut lhs = T::zero();
            for (a, b) in z.edges() {
                lhs = &lhs + &residual(g, a, b);
            }
            let mut rhs = T::zero();
            for (a, b) in z.edges() {
                let others = z.members().without(a).without(b);
                for d in others.subsets().filter(|d| !d.is_empty()) {
                    let r = residual(&g.remove_players(d), a, b);
                    if !r.is_zero() {
                        out.nonzero_rhs_terms += 1;
                    }
                    rhs = if d.len() % 2 == 1 { &rhs + &r } else { &rhs - &r };
                }
            }
            if lhs != rhs {
                out.failures.push((*g, z));
            }
        }
    }
    out
}
