//! Brute-force certificate: solve the full CE + axiom system on every network.
//!
//! Unlike the inductive constructions, which use one equation per tree edge,
//! the oracle writes one equation for every link of every component and lets
//! exact elimination decide whether the overdetermined system is consistent.

use std::collections::HashMap;

use num::{One, Zero};

use super::linalg::eliminate;
use crate::error::Result;
use crate::games::{Allocation, WorthFunction};
use crate::limits;
use crate::net::{Coalition, Network, Player};
use crate::rational::Rational;

/// The pairwise axiom whose equations accompany component efficiency.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OracleAxiom {
    /// `x_i − x_j = φ_i(g_{-j}) − φ_j(g_{-i})` per link.
    Bc,
    /// `x_i − x_j = φ_i(g∖{i,j}) − φ_j(g∖{i,j})` per link.
    F,
}

/// A component system that was inconsistent or underdetermined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemFailure {
    pub network: Network,
    pub component: Coalition,
    pub rank: usize,
    pub unknowns: usize,
    /// Equations left as `0 = c`, `c ≠ 0`.
    pub inconsistent_equations: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleReport {
    /// Component systems solved (one per multi-player component per network).
    pub systems: usize,
    pub equations: usize,
    pub consistent: bool,
    pub full_rank: bool,
    pub failures: Vec<SystemFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOutcome {
    /// `None` when some system had no unique solution.
    pub allocation: Option<Allocation>,
    pub report: OracleReport,
}

/// Solves CE plus the chosen axiom on `g` and, recursively, on every smaller
/// network the right-hand sides reference.
pub fn oracle_solve(w: &WorthFunction, g: &Network, axiom: OracleAxiom) -> Result<OracleOutcome> {
    if axiom == OracleAxiom::F {
        limits::check_links(g.link_count())?;
    }
    let mut oracle = Oracle {
        w,
        axiom,
        memo: HashMap::new(),
        report: OracleReport {
            consistent: true,
            full_rank: true,
            ..OracleReport::default()
        },
    };
    let allocation = oracle.solve(g)?;
    Ok(OracleOutcome {
        allocation,
        report: oracle.report,
    })
}

struct Oracle<'w> {
    w: &'w WorthFunction,
    axiom: OracleAxiom,
    memo: HashMap<Network, Option<Allocation>>,
    report: OracleReport,
}

impl Oracle<'_> {
    fn solve(&mut self, h: &Network) -> Result<Option<Allocation>> {
        if let Some(hit) = self.memo.get(h) {
            return Ok(hit.clone());
        }
        let mut payoffs = vec![Rational::zero(); h.players()];
        let mut solved = true;
        for &c in h.components().blocks() {
            match self.solve_component(h, c)? {
                Some(values) => {
                    for (i, x) in c.iter().zip(values) {
                        payoffs[i - 1] = x;
                    }
                }
                None => solved = false,
            }
        }
        let result = solved.then(|| Allocation::from_vec(payoffs));
        self.memo.insert(*h, result.clone());
        Ok(result)
    }

    fn solve_component(&mut self, h: &Network, c: Coalition) -> Result<Option<Vec<Rational>>> {
        if c.len() == 1 {
            return Ok(Some(vec![self.w.eval(c, h)?]));
        }
        let members = c.to_vec();
        let column = |p: Player| members.iter().position(|&m| m == p).expect("member");
        let mut rows = vec![vec![Rational::one(); members.len()]];
        let mut rhs = vec![self.w.eval(c, h)?];
        let mut labels = vec![format!("CE on {c}")];
        for (i, j) in h.induced(c)?.links() {
            let (left, right) = match self.axiom {
                OracleAxiom::Bc => (h.remove_player(j), h.remove_player(i)),
                OracleAxiom::F => {
                    let cut = h.without_link(i, j);
                    (cut, cut)
                }
            };
            let (Some(a), Some(b)) = (self.solve(&left)?, self.solve(&right)?) else {
                return Ok(None);
            };
            let mut row = vec![Rational::zero(); members.len()];
            row[column(i)] = Rational::one();
            row[column(j)] = -Rational::one();
            rows.push(row);
            rhs.push(a.payoff(i) - b.payoff(j));
            labels.push(match self.axiom {
                OracleAxiom::Bc => format!("BC on {{{i},{j}}}"),
                OracleAxiom::F => format!("F on {{{i},{j}}}"),
            });
        }
        let e = eliminate(&rows, &rhs);
        self.report.systems += 1;
        self.report.equations += rows.len();
        if !e.consistent || e.rank < e.unknowns {
            self.report.consistent &= e.consistent;
            self.report.full_rank &= e.rank == e.unknowns;
            self.report.failures.push(SystemFailure {
                network: *h,
                component: c,
                rank: e.rank,
                unknowns: e.unknowns,
                inconsistent_equations: e
                    .inconsistent_rows
                    .iter()
                    .map(|&r| labels[r].clone())
                    .collect(),
            });
        }
        Ok(e.solution)
    }
}
