//! The fairness rule: through the dividends of the projected game, and directly
//! through the fairness recursion over link subsets.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use num::{BigInt, Integer, ToPrimitive, Zero};

use super::Payoffs;
use crate::error::{Error, Result};
use crate::games::{Allocation, PffSpace, ScaledShares, WorthFunction};
use crate::limits;
use crate::net::{minimal_index_bfs, Coalition, Network};
use crate::rational::Rational;

/// `FCE(w, g) = Φ^≼(v_{w^g})`.
///
/// `v_{w^g}` is evaluated on every embedded coalition and paired with the
/// precomputed linear functional `v ↦ Φ^≼(v)`; see [`PffSpace::share_weights`].
pub fn fce_formula(w: &WorthFunction, g: &Network) -> Result<Allocation> {
    let n = w.players();
    if g.players() != n {
        return Err(Error::domain(format!(
            "network on {} players given to a worth function on {n}",
            g.players()
        )));
    }
    let space = PffSpace::get(n)?;
    // Every block C of P splits in g into the components of g|_P inside C, so
    // each partition needs one worth per component of its restricted network.
    // Restrictions repeat across partitions, so worths are cached per network.
    let mut worths: HashMap<Network, Vec<(Coalition, usize)>> = HashMap::new();
    let mut evals: Vec<Rational> = Vec::new();
    let mut pieces: Vec<Vec<(Coalition, usize)>> = Vec::with_capacity(space.partitions().len());
    for p in space.partitions() {
        let h = g.restrict_to_partition(p);
        let list = match worths.entry(h) {
            Entry::Occupied(e) => e.get().clone(),
            Entry::Vacant(slot) => {
                let mut list = Vec::new();
                for &c in h.components().blocks() {
                    evals.push(w.eval(c, &h)?);
                    list.push((c, evals.len() - 1));
                }
                slot.insert(list).clone()
            }
        };
        pieces.push(list);
    }
    let parts = |k: usize| {
        let c = space.entries()[k].coalition();
        pieces[space.partition_index(k)]
            .iter()
            .filter(move |(s, _)| s.is_subset_of(c))
            .map(|&(_, e)| e)
    };
    if let Some(shares) = space.scaled_share_weights() {
        if let Some(fast) = apply_scaled(shares, &evals, space.len(), parts) {
            return Ok(fast);
        }
    }
    let values: Vec<Rational> = (0..space.len())
        .map(|k| parts(k).map(|e| &evals[e]).sum())
        .collect();
    let payoffs = space
        .share_weights()
        .iter()
        .map(|weights| {
            weights
                .iter()
                .zip(&values)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .map(|(a, b)| a * b)
                .sum()
        })
        .collect();
    Ok(Allocation::from_vec(payoffs))
}

/// Dot products in `i128` over a common denominator of the worths; `None`
/// when anything leaves machine range.
fn apply_scaled<I>(
    shares: &[ScaledShares],
    evals: &[Rational],
    entries: usize,
    parts: impl Fn(usize) -> I,
) -> Option<Allocation>
where
    I: Iterator<Item = usize>,
{
    let mut common: i64 = 1;
    for x in evals {
        let d = x.denom().to_i64()?;
        common = common.checked_mul(d / common.gcd(&d))?;
    }
    let scaled: Vec<i64> = evals
        .iter()
        .map(|x| x.numer().to_i64()?.checked_mul(common / x.denom().to_i64()?))
        .collect::<Option<_>>()?;
    let values: Vec<i64> = (0..entries)
        .map(|k| parts(k).try_fold(0i64, |acc, e| acc.checked_add(scaled[e])))
        .collect::<Option<_>>()?;
    let mut payoffs = Vec::with_capacity(shares.len());
    for share in shares {
        let mut acc: i128 = 0;
        for (&a, &b) in share.numerators.iter().zip(&values) {
            if a != 0 && b != 0 {
                acc = acc.checked_add(a as i128 * b as i128)?;
            }
        }
        payoffs.push(Rational::new(
            BigInt::from(acc),
            BigInt::from(share.denominator) * BigInt::from(common),
        ));
    }
    Some(Allocation::from_vec(payoffs))
}

/// FCE allocations of one worth function, memoized over networks.
///
/// The recursion deletes one link at a time, so it visits every link subset of
/// the starting network.
pub struct FceSolver<'w> {
    w: &'w WorthFunction,
    memo: HashMap<Network, Allocation>,
}

impl<'w> FceSolver<'w> {
    pub fn new(w: &'w WorthFunction) -> Self {
        FceSolver {
            w,
            memo: HashMap::new(),
        }
    }

    pub fn allocation(&mut self, g: &Network) -> Result<Allocation> {
        limits::check_links(g.link_count())?;
        self.solve(g)
    }

    /// `δ_j = δ_p + φ_j(h∖{j,p}) − φ_p(h∖{j,p})` along the tree, then CE.
    fn solve(&mut self, h: &Network) -> Result<Allocation> {
        if let Some(hit) = self.memo.get(h) {
            return Ok(hit.clone());
        }
        let mut payoffs = Allocation::zeros(h.players());
        for &c in h.components().blocks() {
            if c.len() == 1 {
                payoffs.set(c.first().expect("nonempty"), self.w.eval(c, h)?);
                continue;
            }
            let tree = minimal_index_bfs(h, c)?;
            let mut delta = vec![Rational::zero(); h.players() + 1];
            for (j, p) in tree.edges() {
                let cut = self.solve(&h.without_link(j, p))?;
                delta[j] = &delta[p] + cut.payoff(j) - cut.payoff(p);
            }
            let sum: Rational = c.iter().map(|i| &delta[i]).sum();
            let base = (self.w.eval(c, h)? - sum) / Rational::from_integer(c.len().into());
            for i in c.iter() {
                payoffs.set(i, &base + &delta[i]);
            }
        }
        self.memo.insert(*h, payoffs.clone());
        Ok(payoffs)
    }
}

impl Payoffs for FceSolver<'_> {
    fn payoffs(&mut self, g: &Network) -> Result<Allocation> {
        self.allocation(g)
    }
}

/// The unique CE and F allocation, by the fairness recursion.
pub fn fce_direct(w: &WorthFunction, g: &Network) -> Result<Allocation> {
    FceSolver::new(w).allocation(g)
}
