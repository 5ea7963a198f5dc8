//! Shapley value and the TU-based values built on it.

use num::Zero;

use crate::error::Result;
use crate::games::{
    ef_tu_game, ef_tu_game_from_worth, graph_restrict_tu, jw_tu_game, Allocation, PffGame, TuGame,
    WorthFunction,
};
use crate::limits;
use crate::net::Network;
use crate::rational::Rational;

/// `Sh_i(v̄) = Σ_{S ⊆ N∖{i}} |S|!(n−|S|−1)!/n! · (v̄(S ∪ {i}) − v̄(S))`.
pub fn shapley(game: &TuGame) -> Result<Allocation> {
    let n = game.players();
    limits::check_players(n)?;
    let worths = game.dense();
    // weights[s] = s!(n-s-1)!/n!
    let mut weights = Vec::with_capacity(n);
    let factorial = |k: usize| -> num::BigInt { (1..=k).map(num::BigInt::from).product() };
    for s in 0..n {
        weights.push(Rational::new(factorial(s) * factorial(n - s - 1), factorial(n)));
    }
    let mut payoffs = vec![Rational::zero(); n];
    for (i, payoff) in payoffs.iter_mut().enumerate() {
        let bit = 1usize << i;
        let mut total = Rational::zero();
        for s in 0..(1usize << n) {
            if s & bit != 0 {
                continue;
            }
            let marginal = &worths[s | bit] - &worths[s];
            if !marginal.is_zero() {
                total += marginal * &weights[s.count_ones() as usize];
            }
        }
        *payoff = total;
    }
    Ok(Allocation::from_vec(payoffs))
}

/// `My(v̄, g) = Sh(v̄^g)`.
pub fn myerson(game: &TuGame, g: &Network) -> Result<Allocation> {
    shapley(&graph_restrict_tu(game, g)?)
}

/// Jackson–Wolinsky value: the Shapley value of `v̄^JW`.
pub fn jw_value(w: &WorthFunction, g: &Network) -> Result<Allocation> {
    shapley(&jw_tu_game(w, g)?)
}

/// `Φ^EF(v) = Sh(v̄^EF)`.
pub fn ef_value(v: &PffGame) -> Result<Allocation> {
    shapley(&ef_tu_game(v)?)
}

/// Shapley value of `S ↦ w(S, g^S)`, each coalition complete and outsiders isolated.
pub fn ef_value_from_worth(w: &WorthFunction) -> Result<Allocation> {
    shapley(&ef_tu_game_from_worth(w)?)
}

/// Shapley value by averaging marginal vectors over all orderings. Test oracle.
#[cfg(test)]
pub(crate) fn shapley_by_orderings(game: &TuGame) -> Allocation {
    use crate::net::{Coalition, Permutation};
    use num::One;
    let n = game.players();
    let mut sums = vec![Rational::zero(); n];
    let mut count = Rational::zero();
    for order in Permutation::all(n) {
        let mut before = Coalition::EMPTY;
        for &p in order.images() {
            let after = before.with(p);
            sums[p - 1] += game.worth(after) - game.worth(before);
            before = after;
        }
        count += Rational::one();
    }
    Allocation::from_vec(sums.into_iter().map(|s| s / &count).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allocation;
    use crate::net::{Coalition, Partition};
    use crate::rational::int;

    fn set(players: &[usize]) -> Coalition {
        players.iter().copied().collect()
    }

    #[test]
    fn unanimity_splits_equally() {
        let game = TuGame::unanimity(4, set(&[1, 3, 4])).unwrap();
        assert_eq!(shapley(&game).unwrap(), allocation![(1, 3), (0, 1), (1, 3), (1, 3)]);
    }

    #[test]
    fn additive_game_pays_standalone_worths() {
        let game = TuGame::from_fn(3, |s| Ok(s.iter().map(|p| int(p as i64 * 2)).sum())).unwrap();
        assert_eq!(shapley(&game).unwrap(), allocation![(2, 1), (4, 1), (6, 1)]);
    }

    #[test]
    fn two_player_pair_game() {
        let game = TuGame::new(2, [(set(&[1, 2]), int(1))]).unwrap();
        assert_eq!(shapley(&game).unwrap(), allocation![(1, 2), (1, 2)]);
    }

    #[test]
    fn matches_ordering_average() {
        let game = TuGame::from_fn(4, |s| {
            Ok(Rational::new(
                ((s.bits() * 7 + 3) % 11).into(),
                ((s.bits() % 5) + 1).into(),
            ))
        })
        .unwrap();
        assert_eq!(shapley(&game).unwrap(), shapley_by_orderings(&game));
    }

    #[test]
    fn myerson_examples() {
        let game = TuGame::unanimity(3, set(&[1, 3])).unwrap();
        let path = Network::from_links(3, [(1, 2), (2, 3)]).unwrap();
        assert_eq!(myerson(&game, &path).unwrap(), allocation![(1, 3), (1, 3), (1, 3)]);
        let complete = Network::complete(3).unwrap();
        assert_eq!(myerson(&game, &complete).unwrap(), shapley(&game).unwrap());
        let empty = Network::empty(3).unwrap();
        assert_eq!(myerson(&game, &empty).unwrap(), Allocation::zeros(3));
    }

    #[test]
    fn jw_value_without_externalities() {
        let game = TuGame::new(3, [(set(&[1, 2]), int(1))]).unwrap();
        let g = Network::from_links(3, [(1, 2)]).unwrap();
        let w = WorthFunction::tu(game);
        assert_eq!(jw_value(&w, &g).unwrap(), allocation![(1, 2), (1, 2), (0, 1)]);
        assert_eq!(jw_value(&WorthFunction::zero(3), &g).unwrap(), Allocation::zeros(3));
    }

    #[test]
    fn ef_value_of_third_party_unanimity() {
        let q = Partition::new(3, vec![set(&[1, 2]), set(&[3])]).unwrap();
        let v = PffGame::unanimity(3, set(&[3]), &q).unwrap();
        let expected = allocation![(1, 3), (1, 3), (1, 3)];
        assert_eq!(ef_value(&v).unwrap(), expected);
        assert_eq!(shapley_by_orderings(&ef_tu_game(&v).unwrap()), expected);
        assert_eq!(ef_value(&PffGame::zero(3)).unwrap(), Allocation::zeros(3));
    }
}
