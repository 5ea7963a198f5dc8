use std::fmt;
use std::ops::{Add, Index, Mul, Sub};

use num::Zero;

use crate::net::{Coalition, Player};
use crate::rational::{self, Rational};

/// Payoffs for players `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Allocation(Vec<Rational>);

impl Allocation {
    pub fn zeros(n: usize) -> Self {
        Allocation(vec![Rational::zero(); n])
    }

    /// `payoffs[i - 1]` is the payoff of player `i`.
    pub fn from_vec(payoffs: Vec<Rational>) -> Self {
        Allocation(payoffs)
    }

    pub fn players(&self) -> usize {
        self.0.len()
    }

    pub fn payoff(&self, player: Player) -> &Rational {
        &self.0[player - 1]
    }

    pub fn set(&mut self, player: Player, value: Rational) {
        self.0[player - 1] = value;
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.0
    }

    /// Sum of the payoffs of `members`.
    pub fn total(&self, members: Coalition) -> Rational {
        members.iter().map(|p| &self.0[p - 1]).sum()
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        Allocation(self.0.iter().map(|x| x * factor).collect())
    }

    /// `1: 1/3, 2: 1/3, 3: 1/3`.
    pub fn to_table_line(&self) -> String {
        self.0
            .iter()
            .enumerate()
            .map(|(i, x)| format!("{}: {}", i + 1, rational::format(x)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl Index<Player> for Allocation {
    type Output = Rational;

    fn index(&self, player: Player) -> &Rational {
        self.payoff(player)
    }
}

impl Add for &Allocation {
    type Output = Allocation;

    fn add(self, rhs: &Allocation) -> Allocation {
        assert_eq!(self.players(), rhs.players());
        Allocation(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Allocation {
    type Output = Allocation;

    fn sub(self, rhs: &Allocation) -> Allocation {
        assert_eq!(self.players(), rhs.players());
        Allocation(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Mul<&Rational> for &Allocation {
    type Output = Allocation;

    fn mul(self, rhs: &Rational) -> Allocation {
        self.scaled(rhs)
    }
}

impl fmt::Display for Allocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(rational::format).collect::<Vec<_>>().join(", "))
    }
}

/// Shorthand for tests and examples: `allocation![(1, 3), (0, 1)]` is `(1/3, 0)`.
#[macro_export]
macro_rules! allocation {
    ($(($p:expr, $q:expr)),* $(,)?) => {
        $crate::games::Allocation::from_vec(vec![$($crate::rational::ratio($p, $q)),*])
    };
}
