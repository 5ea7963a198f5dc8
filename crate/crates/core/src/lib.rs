//! Exact allocation rules for cooperative games on networks with externalities.
//!
//! The central rule is the balanced-contributions rule built inductively over
//! spanning trees ([`values::bce`]). Alongside it sit the fairness rule in two
//! independent forms, the Shapley, Myerson, Jackson–Wolinsky and
//! externality-free values, the ≼-unanimity dividends of partition function
//! games, and an audit layer that checks every axiom and identity with exact
//! rational arithmetic.

pub mod axioms;
pub mod catalog;
pub mod error;
pub mod games;
pub mod io;
pub mod limits;
pub mod net;
pub mod random;
pub mod rational;
pub mod values;

pub use error::{Error, Result};
pub use games::{Allocation, PffGame, TuGame, WorthFunction};
pub use net::{Coalition, Network, Partition, Permutation, Player};
pub use rational::Rational;
