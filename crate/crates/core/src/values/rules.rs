//! Allocation rules as interchangeable objects.

use std::collections::HashMap;

use super::{bce, ef_value_from_worth, fce_direct, fce_formula, jw_value, myerson, shapley};
use super::{pff_value, BceSolver, FceSolver};
use crate::error::{Error, Result};
use crate::games::{Allocation, WorthBody, WorthFunction};
use crate::net::Network;

/// Payoffs of a fixed worth function on any network.
pub trait Payoffs {
    fn payoffs(&mut self, g: &Network) -> Result<Allocation>;
}

/// A map `(w, g) ↦ φ(w, g)`.
pub trait AllocationRule {
    fn name(&self) -> &str;

    fn allocate(&self, w: &WorthFunction, g: &Network) -> Result<Allocation>;

    /// Evaluator bound to `w`. Rules with a recursion override this to share
    /// their memo across networks.
    fn bind<'a>(&'a self, w: &'a WorthFunction) -> Box<dyn Payoffs + 'a> {
        Box::new(Memoized::new(move |g: &Network| self.allocate(w, g)))
    }
}

/// Caches any evaluator by network.
pub struct Memoized<F> {
    f: F,
    cache: HashMap<Network, Allocation>,
}

impl<F: FnMut(&Network) -> Result<Allocation>> Memoized<F> {
    pub fn new(f: F) -> Self {
        Memoized {
            f,
            cache: HashMap::new(),
        }
    }
}

impl<F: FnMut(&Network) -> Result<Allocation>> Payoffs for Memoized<F> {
    fn payoffs(&mut self, g: &Network) -> Result<Allocation> {
        if let Some(hit) = self.cache.get(g) {
            return Ok(hit.clone());
        }
        let value = (self.f)(g)?;
        self.cache.insert(*g, value.clone());
        Ok(value)
    }
}

pub struct Bce;
pub struct FceFormula;
pub struct FceDirect;
pub struct JacksonWolinsky;
/// Shapley value of `S ↦ w(S, g^S)`; ignores the network.
pub struct ExternalityFree;
/// Myerson value of the TU game inducing `w`.
pub struct Myerson;
/// Shapley value of the TU game inducing `w`; ignores the network.
pub struct Shapley;
/// `Φ^≼` of the partition function game inducing `w`; ignores the network.
pub struct PffValue;

impl AllocationRule for Bce {
    fn name(&self) -> &str {
        "bce"
    }
    fn allocate(&self, w: &WorthFunction, g: &Network) -> Result<Allocation> {
        bce(w, g)
    }
    fn bind<'a>(&'a self, w: &'a WorthFunction) -> Box<dyn Payoffs + 'a> {
        Box::new(BceSolver::new(w))
    }
}

impl AllocationRule for FceFormula {
    fn name(&self) -> &str {
        "fce"
    }
    fn allocate(&self, w: &WorthFunction, g: &Network) -> Result<Allocation> {
        fce_formula(w, g)
    }
}

impl AllocationRule for FceDirect {
    fn name(&self) -> &str {
        "fce-direct"
    }
    fn allocate(&self, w: &WorthFunction, g: &Network) -> Result<Allocation> {
        fce_direct(w, g)
    }
    fn bind<'a>(&'a self, w: &'a WorthFunction) -> Box<dyn Payoffs + 'a> {
        Box::new(FceSolver::new(w))
    }
}

impl AllocationRule for JacksonWolinsky {
    fn name(&self) -> &str {
        "jw"
    }
    fn allocate(&self, w: &WorthFunction, g: &Network) -> Result<Allocation> {
        jw_value(w, g)
    }
}

impl AllocationRule for ExternalityFree {
    fn name(&self) -> &str {
        "ef"
    }
    fn allocate(&self, w: &WorthFunction, _g: &Network) -> Result<Allocation> {
        ef_value_from_worth(w)
    }
}

impl AllocationRule for Myerson {
    fn name(&self) -> &str {
        "myerson"
    }
    fn allocate(&self, w: &WorthFunction, g: &Network) -> Result<Allocation> {
        match w.body() {
            WorthBody::TuInduced(game) => myerson(game, g),
            _ => Err(Error::domain("myerson needs a TU-induced worth function")),
        }
    }
}

impl AllocationRule for Shapley {
    fn name(&self) -> &str {
        "shapley"
    }
    fn allocate(&self, w: &WorthFunction, _g: &Network) -> Result<Allocation> {
        match w.body() {
            WorthBody::TuInduced(game) => shapley(game),
            _ => Err(Error::domain("shapley needs a TU-induced worth function")),
        }
    }
}

impl AllocationRule for PffValue {
    fn name(&self) -> &str {
        "pff-value"
    }
    fn allocate(&self, w: &WorthFunction, _g: &Network) -> Result<Allocation> {
        match w.body() {
            WorthBody::PffInduced(game) => pff_value(game),
            _ => Err(Error::domain("pff-value needs a PFF-induced worth function")),
        }
    }
}

/// Rule by its command-line name.
pub fn rule_by_name(name: &str) -> Option<Box<dyn AllocationRule>> {
    Some(match name {
        "bce" => Box::new(Bce),
        "fce" => Box::new(FceFormula),
        "fce-direct" => Box::new(FceDirect),
        "jw" => Box::new(JacksonWolinsky),
        "ef" => Box::new(ExternalityFree),
        "myerson" => Box::new(Myerson),
        "shapley" => Box::new(Shapley),
        "pff-value" => Box::new(PffValue),
        _ => return None,
    })
}

pub const RULE_NAMES: [&str; 8] = [
    "bce", "fce", "fce-direct", "myerson", "jw", "ef", "shapley", "pff-value",
];
