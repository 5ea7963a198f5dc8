//! Process-wide size caps guarding exponential enumerations.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};
use crate::net::MAX_PLAYERS;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Players on a network. Never above [`MAX_PLAYERS`].
    pub players: usize,
    /// Players for which partitions and embedded coalitions are enumerated.
    pub pff_players: usize,
    /// Links for rules that recurse over arbitrary link subsets.
    pub links: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            players: 16,
            pff_players: 10,
            links: 20,
        }
    }
}

static PLAYERS: AtomicUsize = AtomicUsize::new(16);
static PFF_PLAYERS: AtomicUsize = AtomicUsize::new(10);
static LINKS: AtomicUsize = AtomicUsize::new(20);

pub fn current() -> Limits {
    Limits {
        players: PLAYERS.load(Ordering::Relaxed),
        pff_players: PFF_PLAYERS.load(Ordering::Relaxed),
        links: LINKS.load(Ordering::Relaxed),
    }
}

/// Installs new caps. The player cap is clamped to [`MAX_PLAYERS`].
pub fn set(limits: Limits) {
    PLAYERS.store(limits.players.min(MAX_PLAYERS), Ordering::Relaxed);
    PFF_PLAYERS.store(limits.pff_players, Ordering::Relaxed);
    LINKS.store(limits.links, Ordering::Relaxed);
}

pub(crate) fn check_players(n: usize) -> Result<()> {
    guard("player count", n, current().players)
}

pub(crate) fn check_pff_players(n: usize) -> Result<()> {
    guard("player count for partition enumeration", n, current().pff_players)
}

pub(crate) fn check_links(m: usize) -> Result<()> {
    guard("link count", m, current().links)
}

fn guard(what: &'static str, actual: usize, cap: usize) -> Result<()> {
    if actual > cap {
        Err(Error::ResourceGuard { what, actual, cap })
    } else {
        Ok(())
    }
}
