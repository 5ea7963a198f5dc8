//! Exact linear systems by fraction-free (Bareiss) elimination.

use num::{BigInt, Integer, One, Zero};

use crate::rational::Rational;

/// Result of eliminating `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    pub rank: usize,
    pub unknowns: usize,
    pub consistent: bool,
    /// Input rows that reduce to `0 = c` with `c ≠ 0`.
    pub inconsistent_rows: Vec<usize>,
    /// The solution, when it exists and is unique.
    pub solution: Option<Vec<Rational>>,
}

/// Eliminates `rows · x = rhs` over the rationals.
///
/// Each row is scaled to integers, then reduced with Bareiss' fraction-free
/// update `a_ik ← (a_rc·a_ik − a_ic·a_rk) / previous_pivot`, which keeps every
/// entry an integer. Rank and consistency fall out of the echelon form.
pub fn eliminate(rows: &[Vec<Rational>], rhs: &[Rational]) -> Elimination {
    assert_eq!(rows.len(), rhs.len());
    let cols = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            assert_eq!(row.len(), cols);
            let scale = row
                .iter()
                .chain(std::iter::once(b))
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .chain(std::iter::once(b))
                .map(|x| x.numer() * (&scale / x.denom()))
                .collect()
        })
        .collect();
    let mut origin: Vec<usize> = (0..m.len()).collect();
    let mut pivots = Vec::new();
    let mut previous = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        origin.swap(r, p);
        for i in r + 1..m.len() {
            let factor = m[i][c].clone();
            for k in c..=cols {
                let updated = (&m[r][c] * &m[i][k] - &factor * &m[r][k]) / &previous;
                m[i][k] = updated;
            }
        }
        previous = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    let inconsistent_rows: Vec<usize> = (r..m.len())
        .filter(|&i| !m[i][cols].is_zero())
        .map(|i| origin[i])
        .collect();
    let consistent = inconsistent_rows.is_empty();
    let solution = (consistent && r == cols).then(|| {
        let mut x = vec![Rational::zero(); cols];
        for (row, &c) in pivots.iter().enumerate().rev() {
            let mut acc = Rational::from_integer(m[row][cols].clone());
            for k in c + 1..cols {
                acc -= Rational::from_integer(m[row][k].clone()) * &x[k];
            }
            x[c] = acc / Rational::from_integer(m[row][c].clone());
        }
        x
    });
    Elimination {
        rank: r,
        unknowns: cols,
        consistent,
        inconsistent_rows,
        solution,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Plain Gauss–Jordan over rationals: (rank, consistent, unique solution).
    fn gauss_jordan(rows: &[Vec<Rational>], rhs: &[Rational]) -> (usize, bool, Option<Vec<Rational>>) {
        let cols = rows[0].len();
        let mut m: Vec<Vec<Rational>> = rows
            .iter()
            .zip(rhs)
            .map(|(r, b)| r.iter().cloned().chain([b.clone()]).collect())
            .collect();
        let mut rank = 0;
        let mut where_ = vec![None; cols];
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let pivot = m[rank][c].clone();
            for x in m[rank].iter_mut() {
                *x /= &pivot;
            }
            for i in 0..m.len() {
                if i != rank && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for k in 0..=cols {
                        let d = &f * &m[rank][k];
                        m[i][k] -= d;
                    }
                }
            }
            where_[c] = Some(rank);
            rank += 1;
        }
        let consistent = m[rank..].iter().all(|row| row[cols].is_zero());
        let solution = (consistent && rank == cols)
            .then(|| (0..cols).map(|c| m[where_[c].unwrap()][cols].clone()).collect());
        (rank, consistent, solution)
    }

    #[test]
    fn unique_solution() {
        let rows = vec![vec![int(1), int(1)], vec![int(1), int(-1)], vec![int(2), int(0)]];
        let e = eliminate(&rows, &[int(1), int(0), int(1)]);
        assert_eq!(e.rank, 2);
        assert!(e.consistent);
        assert_eq!(e.solution, Some(vec![ratio(1, 2), ratio(1, 2)]));
    }

    #[test]
    fn inconsistent_row_is_reported() {
        let rows = vec![vec![int(1), int(1)], vec![int(1), int(-1)], vec![int(0), int(1)]];
        let e = eliminate(&rows, &[int(1), int(0), int(1)]);
        assert!(!e.consistent);
        assert_eq!(e.inconsistent_rows.len(), 1);
        assert_eq!(e.solution, None);
    }

    #[test]
    fn rank_deficient_has_no_unique_solution() {
        let rows = vec![vec![int(1), int(-1)], vec![int(-2), int(2)]];
        let e = eliminate(&rows, &[int(3), int(-6)]);
        assert_eq!((e.rank, e.consistent, e.solution), (1, true, None));
    }

    #[test]
    fn agrees_with_gauss_jordan() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let m = rng.random_range(1..6);
            let n = rng.random_range(1..5);
            let entry = |rng: &mut ChaCha8Rng| {
                if rng.random_bool(0.3) {
                    int(0)
                } else {
                    ratio(rng.random_range(-5..=5), rng.random_range(1..=4))
                }
            };
            let mut rows: Vec<Vec<Rational>> =
                (0..m).map(|_| (0..n).map(|_| entry(&mut rng)).collect()).collect();
            if m > 1 && rng.random_bool(0.3) {
                rows[m - 1] = rows[0].iter().map(|x| x * int(2)).collect();
            }
            let rhs: Vec<Rational> = (0..m).map(|_| entry(&mut rng)).collect();
            let e = eliminate(&rows, &rhs);
            let (rank, consistent, solution) = gauss_jordan(&rows, &rhs);
            assert_eq!((e.rank, e.consistent, e.solution), (rank, consistent, solution));
        }
    }
}
