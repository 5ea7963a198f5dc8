//! ≼-unanimity dividends and the value `Φ^≼` they define.

use std::collections::BTreeMap;

use num::Zero;

use crate::error::Result;
use crate::games::{Allocation, EmbeddedCoalition, PffGame, PffSpace};
use crate::rational::Rational;

/// Nonzero coefficients `b^≼` of a partition function game.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DividendTable {
    n: usize,
    coefficients: BTreeMap<EmbeddedCoalition, Rational>,
}

impl DividendTable {
    pub fn players(&self) -> usize {
        self.n
    }

    pub fn coefficient(&self, key: &EmbeddedCoalition) -> Rational {
        self.coefficients.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero coefficients in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (&EmbeddedCoalition, &Rational)> {
        self.coefficients.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `Σ_{(C,P) ≼ (T,Q)} b(C,P)` for every embedded coalition, by direct comparison.
    pub fn reconstruct(&self) -> Result<PffGame> {
        PffGame::from_fn(self.n, |t, q| {
            let target = EmbeddedCoalition::new(t, q.clone())?;
            Ok(self
                .coefficients
                .iter()
                .filter(|(key, _)| key.precedes(&target))
                .map(|(_, b)| b)
                .sum())
        })
    }
}

/// `b(T,Q) = v(T,Q) − Σ_{(C,P) ≺ (T,Q)} b(C,P)`, processed with `|C|` ascending
/// and block count descending so every predecessor is already known.
pub fn pff_dividends(v: &PffGame) -> Result<DividendTable> {
    let space = PffSpace::get(v.players())?;
    let b = space.dividends(&v.dense(&space));
    let coefficients = space
        .entries()
        .iter()
        .zip(b)
        .filter(|(_, x)| !x.is_zero())
        .map(|(key, x)| (key.clone(), x))
        .collect();
    Ok(DividendTable {
        n: v.players(),
        coefficients,
    })
}

/// `Φ^≼_i(v) = Σ_{(T,Q) : i ∈ T} b(T,Q) / |T|`.
pub fn pff_value(v: &PffGame) -> Result<Allocation> {
    let table = pff_dividends(v)?;
    let mut payoffs = Allocation::zeros(v.players());
    for (key, b) in table.entries() {
        let share = b / Rational::from_integer(key.coalition().len().into());
        for i in key.coalition().iter() {
            let updated = payoffs.payoff(i) + &share;
            payoffs.set(i, updated);
        }
    }
    Ok(payoffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allocation;
    use crate::net::{Coalition, Partition};
    use crate::rational::{int, ratio};

    fn set(players: &[usize]) -> Coalition {
        players.iter().copied().collect()
    }

    fn third_party() -> (PffGame, EmbeddedCoalition) {
        let q = Partition::new(3, vec![set(&[1, 2]), set(&[3])]).unwrap();
        let v = PffGame::unanimity(3, set(&[3]), &q).unwrap();
        (v, EmbeddedCoalition::new(set(&[3]), q).unwrap())
    }

    #[test]
    fn unanimity_game_is_its_own_basis_element() {
        let (v, key) = third_party();
        let table = pff_dividends(&v).unwrap();
        let entries: Vec<_> = table.entries().collect();
        assert_eq!(entries, vec![(&key, &int(1))]);
        assert_eq!(table.reconstruct().unwrap(), v);
        assert_eq!(pff_value(&v).unwrap(), allocation![(0, 1), (0, 1), (1, 1)]);
    }

    #[test]
    fn zero_game_has_no_dividends() {
        assert!(pff_dividends(&PffGame::zero(3)).unwrap().is_empty());
        assert_eq!(pff_value(&PffGame::zero(3)).unwrap(), Allocation::zeros(3));
    }

    #[test]
    fn pair_unanimity_splits_in_half() {
        let q = Partition::new(3, vec![set(&[1, 2]), set(&[3])]).unwrap();
        let v = PffGame::unanimity(3, set(&[1, 2]), &q).unwrap();
        assert_eq!(pff_value(&v).unwrap(), allocation![(1, 2), (1, 2), (0, 1)]);
    }

    #[test]
    fn value_is_linear() {
        let q = Partition::new(3, vec![set(&[1, 2]), set(&[3])]).unwrap();
        let a = PffGame::unanimity(3, set(&[1, 2]), &q).unwrap();
        let (b, _) = third_party();
        let sum = a.add_scaled(&ratio(-3, 2), &b).unwrap();
        let expected = &pff_value(&a).unwrap() + &(&pff_value(&b).unwrap() * &ratio(-3, 2));
        assert_eq!(pff_value(&sum).unwrap(), expected);
    }
}
