use std::collections::BTreeMap;

use num::Zero;

use crate::error::{Error, Result};
use crate::net::{Coalition, Network};
use crate::rational::Rational;

/// A transferable-utility game; unlisted coalitions are worth 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TuGame {
    n: usize,
    worths: BTreeMap<Coalition, Rational>,
}

impl TuGame {
    pub fn zero(n: usize) -> Self {
        TuGame {
            n,
            worths: BTreeMap::new(),
        }
    }

    pub fn new<I>(n: usize, worths: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Coalition, Rational)>,
    {
        let mut game = Self::zero(n);
        for (s, value) in worths {
            game.set(s, value)?;
        }
        Ok(game)
    }

    /// Builds the game from a worth for every nonempty coalition.
    pub fn from_fn<F>(n: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(Coalition) -> Result<Rational>,
    {
        let mut game = Self::zero(n);
        for s in Coalition::full(n).subsets().skip(1) {
            game.set(s, f(s)?)?;
        }
        Ok(game)
    }

    /// `u_T(S) = 1` iff `T ⊆ S`.
    pub fn unanimity(n: usize, carrier: Coalition) -> Result<Self> {
        Self::from_fn(n, |s| {
            Ok(if carrier.is_subset_of(s) {
                Rational::from_integer(1.into())
            } else {
                Rational::zero()
            })
        })
    }

    pub fn players(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, s: Coalition, value: Rational) -> Result<()> {
        if !s.is_subset_of(Coalition::full(self.n)) {
            return Err(Error::domain(format!("{s} is not a coalition of 1..={}", self.n)));
        }
        if s.is_empty() {
            if !value.is_zero() {
                return Err(Error::domain("the empty coalition must be worth 0"));
            }
            return Ok(());
        }
        if value.is_zero() {
            self.worths.remove(&s);
        } else {
            self.worths.insert(s, value);
        }
        Ok(())
    }

    pub fn worth(&self, s: Coalition) -> Rational {
        self.worths.get(&s).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero worths in canonical coalition order.
    pub fn entries(&self) -> impl Iterator<Item = (&Coalition, &Rational)> {
        self.worths.iter()
    }

    /// Worths of all `2^n` coalitions, indexed by bitmask.
    pub fn dense(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); 1 << self.n];
        for (s, value) in &self.worths {
            out[s.bits() as usize] = value.clone();
        }
        out
    }
}

/// `v̄^g(S) = Σ_{C ∈ S/g} v̄(C)`.
pub fn graph_restrict_tu(game: &TuGame, g: &Network) -> Result<TuGame> {
    if game.players() != g.players() {
        return Err(Error::domain("game and network have different player counts"));
    }
    TuGame::from_fn(game.players(), |s| {
        Ok(g.split(s).into_iter().map(|c| game.worth(c)).sum())
    })
}
