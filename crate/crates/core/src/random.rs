//! Seeded random instances for suites and property tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::games::{PffGame, TuGame, WorthFunction};
use crate::net::{Coalition, Network};
use crate::rational::{self, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| ≤ bound`, `1 ≤ q ≤ bound`.
pub fn small_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    rational::ratio(rng.random_range(-bound..=bound), rng.random_range(1..=bound))
}

/// Each of the `n(n−1)/2` links present with probability `density`.
pub fn network<R: Rng>(rng: &mut R, n: usize, density: f64) -> Result<Network> {
    let mut links = Vec::new();
    for j in 2..=n {
        for i in 1..j {
            if rng.random_bool(density) {
                links.push((i, j));
            }
        }
    }
    Network::from_links(n, links)
}

/// A table worth function with an independent small rational on every pair
/// `(C, h)`, `h ⊆ g`, `C` a component of `h`.
pub fn worth_table<R: Rng>(rng: &mut R, g: &Network, bound: i64) -> Result<WorthFunction> {
    let mut entries = Vec::new();
    for h in g.link_subsets() {
        for &c in h.components().blocks() {
            entries.push((c, h, small_rational(rng, bound)));
        }
    }
    WorthFunction::table(g.players(), entries)
}

pub fn tu_game<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Result<TuGame> {
    TuGame::from_fn(n, |_| Ok(small_rational(rng, bound)))
}

pub fn pff_game<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Result<PffGame> {
    PffGame::from_fn(n, |_, _| Ok(small_rational(rng, bound)))
}

/// A random coalition containing at least one of `1..=n`.
pub fn coalition<R: Rng>(rng: &mut R, n: usize) -> Coalition {
    loop {
        let c = Coalition::from_bits(rng.random_range(1..(1u32 << n)));
        if !c.is_empty() {
            return c;
        }
    }
}

/// A worth function and network drawn together.
#[derive(Clone, Debug)]
pub struct Instance {
    pub seed: u64,
    pub w: WorthFunction,
    pub g: Network,
}

/// `count` instances on 2..=`max_players` players with at most `max_links`
/// links, worths independent small rationals with numerators and
/// denominators bounded by 10.
pub fn suite(seed: u64, count: usize, max_players: usize, max_links: usize) -> Result<Vec<Instance>> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.random_range(2..=max_players);
        let density = rng.random_range(0.3..0.9);
        let g = network(&mut rng, n, density)?;
        if g.link_count() > max_links {
            continue;
        }
        let w = worth_table(&mut rng, &g, 10)?;
        out.push(Instance { seed, w, g });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_are_reproducible() {
        let a = suite(3, 10, 5, 8).unwrap();
        let b = suite(3, 10, 5, 8).unwrap();
        assert_eq!(a.len(), 10);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!((x.g, &x.w), (y.g, &y.w));
            assert!(x.g.link_count() <= 8);
        }
    }

    #[test]
    fn tables_cover_every_subnetwork() {
        let mut r = rng(1);
        let g = Network::complete(3).unwrap();
        let w = worth_table(&mut r, &g, 10).unwrap();
        for h in g.link_subsets() {
            for &c in h.components().blocks() {
                w.eval(c, &h).unwrap();
            }
        }
    }
}
