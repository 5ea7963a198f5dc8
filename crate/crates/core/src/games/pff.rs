use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;
use num::{BigInt, Integer, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::limits;
use crate::net::{enumerate_partitions, partitions_of, Coalition, Partition};
use crate::rational::{self, Rational};

/// A coalition together with a partition that has it as a block.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EmbeddedCoalition {
    coalition: Coalition,
    partition: Partition,
}

impl EmbeddedCoalition {
    pub fn new(coalition: Coalition, partition: Partition) -> Result<Self> {
        if !partition.contains_block(coalition) {
            return Err(Error::domain(format!(
                "{coalition} is not a block of {partition}"
            )));
        }
        Ok(EmbeddedCoalition {
            coalition,
            partition,
        })
    }

    pub fn coalition(&self) -> Coalition {
        self.coalition
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// `(C, P) ≼ (T, Q)`: `C ⊆ T` and `P` refines `Q`.
    pub fn precedes(&self, other: &EmbeddedCoalition) -> bool {
        self.coalition.is_subset_of(other.coalition) && self.partition.is_finer_than(&other.partition)
    }
}

impl fmt::Display for EmbeddedCoalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} | {})", self.coalition, self.partition)
    }
}

impl fmt::Debug for EmbeddedCoalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A game in partition function form; unlisted embedded coalitions are worth 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PffGame {
    n: usize,
    worths: BTreeMap<EmbeddedCoalition, Rational>,
}

impl PffGame {
    pub fn zero(n: usize) -> Self {
        PffGame {
            n,
            worths: BTreeMap::new(),
        }
    }

    pub fn new<I>(n: usize, worths: I) -> Result<Self>
    where
        I: IntoIterator<Item = (EmbeddedCoalition, Rational)>,
    {
        let mut game = Self::zero(n);
        for (key, value) in worths {
            game.set(key, value)?;
        }
        Ok(game)
    }

    /// Materializes `f` over every embedded coalition.
    pub fn from_fn<F>(n: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(Coalition, &Partition) -> Result<Rational>,
    {
        let space = PffSpace::get(n)?;
        let mut game = Self::zero(n);
        for key in space.entries() {
            let value = f(key.coalition, &key.partition)?;
            if !value.is_zero() {
                game.worths.insert(key.clone(), value);
            }
        }
        Ok(game)
    }

    /// The ≼-unanimity game `u_(T,Q)`: 1 at `(C, P)` iff `T ⊆ C` and `Q ≼ P`.
    pub fn unanimity(n: usize, carrier: Coalition, partition: &Partition) -> Result<Self> {
        if !partition.contains_block(carrier) || partition.players() != n {
            return Err(Error::domain(format!(
                "{carrier} is not a block of {partition} on {n} players"
            )));
        }
        Self::from_fn(n, |c, p| {
            Ok(if carrier.is_subset_of(c) && partition.is_finer_than(p) {
                rational::one()
            } else {
                rational::zero()
            })
        })
    }

    pub fn players(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, key: EmbeddedCoalition, value: Rational) -> Result<()> {
        if key.partition.players() != self.n {
            return Err(Error::domain(format!(
                "{key} is not an embedded coalition of {} players",
                self.n
            )));
        }
        if value.is_zero() {
            self.worths.remove(&key);
        } else {
            self.worths.insert(key, value);
        }
        Ok(())
    }

    /// `v(C, P)`; zero when unlisted. `C` must be a block of `P`.
    pub fn worth(&self, coalition: Coalition, partition: &Partition) -> Result<Rational> {
        if !partition.contains_block(coalition) || partition.players() != self.n {
            return Err(Error::domain(format!(
                "{coalition} is not a block of {partition}"
            )));
        }
        let key = EmbeddedCoalition {
            coalition,
            partition: partition.clone(),
        };
        Ok(self.worths.get(&key).cloned().unwrap_or_else(Rational::zero))
    }

    /// Nonzero entries in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (&EmbeddedCoalition, &Rational)> {
        self.worths.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.worths.is_empty()
    }

    /// Entry-wise sum `self + factor * other`.
    pub fn add_scaled(&self, factor: &Rational, other: &PffGame) -> Result<PffGame> {
        if self.n != other.n {
            return Err(Error::domain("games on different player sets"));
        }
        let mut out = self.clone();
        for (key, value) in &other.worths {
            let sum = out.worths.get(key).cloned().unwrap_or_else(Rational::zero) + factor * value;
            out.set(key.clone(), sum)?;
        }
        Ok(out)
    }

    /// Worths aligned with [`PffSpace::entries`].
    pub fn dense(&self, space: &PffSpace) -> Vec<Rational> {
        space
            .entries()
            .iter()
            .map(|key| self.worths.get(key).cloned().unwrap_or_else(Rational::zero))
            .collect()
    }
}

/// All embedded coalitions of `n` players with the ≼ order precomputed.
///
/// Entries are sorted by `|C|` ascending then block count descending, so every
/// strict predecessor of an entry comes before it.
pub struct PffSpace {
    n: usize,
    partitions: Vec<Partition>,
    entries: Vec<EmbeddedCoalition>,
    /// Index into `partitions` for each entry.
    partition_of: Vec<usize>,
    /// Strict predecessors of each entry.
    predecessors: Vec<Vec<u32>>,
    share_weights: OnceLock<Vec<Vec<Rational>>>,
    scaled_shares: OnceLock<Option<Vec<ScaledShares>>>,
}

/// One player's share weights as `numerators[k] / denominator` in machine integers.
pub(crate) struct ScaledShares {
    pub denominator: i64,
    pub numerators: Vec<i64>,
}

static SPACES: OnceLock<Mutex<HashMap<usize, Arc<PffSpace>>>> = OnceLock::new();

impl PffSpace {
    /// Shared space for `n` players, built on first use.
    pub fn get(n: usize) -> Result<Arc<PffSpace>> {
        limits::check_pff_players(n)?;
        let cache = SPACES.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(space) = cache.lock().expect("space cache poisoned").get(&n) {
            return Ok(Arc::clone(space));
        }
        let space = Arc::new(Self::build(n)?);
        cache
            .lock()
            .expect("space cache poisoned")
            .entry(n)
            .or_insert_with(|| Arc::clone(&space));
        Ok(space)
    }

    fn build(n: usize) -> Result<Self> {
        let partitions = enumerate_partitions(n)?;
        let mut keyed: Vec<(EmbeddedCoalition, usize)> = partitions
            .iter()
            .enumerate()
            .flat_map(|(q, p)| {
                p.blocks().iter().map(move |&c| {
                    (
                        EmbeddedCoalition {
                            coalition: c,
                            partition: p.clone(),
                        },
                        q,
                    )
                })
            })
            .collect();
        keyed.sort_by(|(a, _), (b, _)| {
            a.coalition
                .len()
                .cmp(&b.coalition.len())
                .then(b.partition.len().cmp(&a.partition.len()))
                .then_with(|| a.cmp(b))
        });
        let (entries, partition_of): (Vec<_>, Vec<_>) = keyed.into_iter().unzip();
        let index: HashMap<&EmbeddedCoalition, u32> = entries
            .iter()
            .enumerate()
            .map(|(k, e)| (e, k as u32))
            .collect();

        let refinements: Vec<Vec<Partition>> = partitions.iter().map(refinements_of).collect();
        let mut predecessors = Vec::with_capacity(entries.len());
        for (k, target) in entries.iter().enumerate() {
            let mut preds = Vec::new();
            for fine in &refinements[partition_of[k]] {
                for &c in fine.blocks() {
                    if !c.is_subset_of(target.coalition) {
                        continue;
                    }
                    let key = EmbeddedCoalition {
                        coalition: c,
                        partition: fine.clone(),
                    };
                    let j = index[&key];
                    if j as usize != k {
                        debug_assert!((j as usize) < k);
                        preds.push(j);
                    }
                }
            }
            preds.sort_unstable();
            predecessors.push(preds);
        }
        Ok(PffSpace {
            n,
            partitions,
            entries,
            partition_of,
            predecessors,
            share_weights: OnceLock::new(),
            scaled_shares: OnceLock::new(),
        })
    }

    pub fn players(&self) -> usize {
        self.n
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn entries(&self) -> &[EmbeddedCoalition] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Index into [`Self::partitions`] of entry `k`'s partition.
    pub fn partition_index(&self, k: usize) -> usize {
        self.partition_of[k]
    }

    pub fn predecessors(&self, k: usize) -> &[u32] {
        &self.predecessors[k]
    }

    /// Möbius inversion: coefficients `b` with `v(T,Q) = Σ_{(C,P) ≼ (T,Q)} b(C,P)`.
    pub fn dividends(&self, worths: &[Rational]) -> Vec<Rational> {
        assert_eq!(worths.len(), self.entries.len());
        let mut b: Vec<Rational> = Vec::with_capacity(worths.len());
        for (k, v) in worths.iter().enumerate() {
            let mut value = v.clone();
            for &j in &self.predecessors[k] {
                value -= &b[j as usize];
            }
            b.push(value);
        }
        b
    }

    /// `weights[i - 1][k]`: the linear functional `v ↦ Φ_i(v)` evaluated on entry `k`.
    ///
    /// Obtained from the transposed inversion `x(k) = a_i(k) - Σ_{s ≻ k} x(s)` with
    /// `a_i(T,Q) = [i ∈ T] / |T|`.
    pub fn share_weights(&self) -> &[Vec<Rational>] {
        self.share_weights.get_or_init(|| {
            let m = self.entries.len();
            let mut weights = Vec::with_capacity(self.n);
            for player in 1..=self.n {
                let mut acc: Vec<Rational> = self
                    .entries
                    .iter()
                    .map(|e| {
                        if e.coalition.contains(player) {
                            rational::ratio(1, e.coalition.len() as i64)
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect();
                for k in (0..m).rev() {
                    if acc[k].is_zero() {
                        continue;
                    }
                    let x = acc[k].clone();
                    for &j in &self.predecessors[k] {
                        acc[j as usize] -= &x;
                    }
                }
                weights.push(acc);
            }
            weights
        })
    }
}

impl PffSpace {
    /// [`Self::share_weights`] over a common denominator per player, when that fits in `i64`.
    pub(crate) fn scaled_share_weights(&self) -> Option<&[ScaledShares]> {
        self.scaled_shares
            .get_or_init(|| {
                self.share_weights()
                    .iter()
                    .map(|weights| {
                        let denominator = weights
                            .iter()
                            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                        let numerators = weights
                            .iter()
                            .map(|x| (x.numer() * (&denominator / x.denom())).to_i64())
                            .collect::<Option<Vec<i64>>>()?;
                        Some(ScaledShares {
                            denominator: denominator.to_i64()?,
                            numerators,
                        })
                    })
                    .collect()
            })
            .as_deref()
    }
}

/// Every partition finer than `p`.
fn refinements_of(p: &Partition) -> Vec<Partition> {
    p.blocks()
        .iter()
        .map(|&b| partitions_of(b))
        .multi_cartesian_product()
        .map(|choice| {
            let blocks: Vec<Coalition> = choice.into_iter().flatten().collect();
            Partition::new(p.players(), blocks).expect("refinement of a partition")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(players: &[usize]) -> Coalition {
        players.iter().copied().collect()
    }

    #[test]
    fn space_sizes() {
        // Σ over partitions of the block count: Bell(n+1) - Bell(n).
        for (n, expected) in [(1, 1), (2, 3), (3, 10), (4, 37), (5, 151), (6, 674)] {
            assert_eq!(PffSpace::get(n).unwrap().len(), expected);
        }
    }

    #[test]
    fn predecessors_match_brute_force() {
        let space = PffSpace::get(4).unwrap();
        for (k, target) in space.entries().iter().enumerate() {
            let brute: Vec<u32> = space
                .entries()
                .iter()
                .enumerate()
                .filter(|&(j, e)| j != k && e.precedes(target))
                .map(|(j, _)| j as u32)
                .collect();
            assert_eq!(space.predecessors(k), brute.as_slice(), "at {target}");
        }
    }

    #[test]
    fn unanimity_entries() {
        let q = Partition::new(3, vec![set(&[1, 2]), set(&[3])]).unwrap();
        let u = PffGame::unanimity(3, set(&[3]), &q).unwrap();
        // Partitions with 1 and 2 together: {12|3} and {123}; blocks containing 3.
        assert_eq!(u.entries().count(), 2);
        assert_eq!(u.worth(set(&[3]), &q).unwrap(), rational::one());
        assert_eq!(u.worth(set(&[1, 2]), &q).unwrap(), rational::zero());
        assert!(u.worth(set(&[1]), &q).is_err());
        assert!(PffGame::unanimity(3, set(&[1]), &q).is_err());
    }
}
