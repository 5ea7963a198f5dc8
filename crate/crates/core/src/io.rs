//! JSON documents for networks, games, allocations and reports.
//!
//! Rationals are written as strings `"p/q"` in lowest terms, or `"p"` when the
//! denominator is 1. Readers also accept JSON integers. Writers emit canonical
//! order, so equal values serialize to identical bytes.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::axioms::{SuiteEntry, SuiteReport, Witness};
use crate::error::{Error, Result};
use crate::games::{Allocation, HashScope, PffGame, TuGame, WorthBody, WorthFunction};
use crate::games::EmbeddedCoalition;
use crate::net::{Coalition, Network, Partition, Player};
use crate::rational::{self, Rational};
use crate::values::{DividendTable, OracleOutcome};

/// A game file of any supported kind.
#[derive(Clone, Debug, PartialEq)]
pub enum GameDocument {
    Tu(TuGame),
    Pff(PffGame),
    Worth(WorthFunction),
}

impl GameDocument {
    pub fn kind(&self) -> &'static str {
        match self {
            GameDocument::Tu(_) => "tu",
            GameDocument::Pff(_) => "pff",
            GameDocument::Worth(w) => match w.body() {
                WorthBody::LinkedBeneficiary { .. } => "linked-beneficiary",
                WorthBody::EdgeBeneficiary { .. } => "edge-beneficiary",
                WorthBody::Hashed { .. } => "hashed",
                _ => "worth-table",
            },
        }
    }

    pub fn players(&self) -> usize {
        match self {
            GameDocument::Tu(v) => v.players(),
            GameDocument::Pff(v) => v.players(),
            GameDocument::Worth(w) => w.players(),
        }
    }

    /// The worth function the game induces.
    pub fn to_worth(&self) -> WorthFunction {
        match self {
            GameDocument::Tu(v) => WorthFunction::tu(v.clone()),
            GameDocument::Pff(v) => WorthFunction::pff(v.clone()),
            GameDocument::Worth(w) => w.clone(),
        }
    }
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
    })
}

fn field<'a>(obj: &'a Map<String, Value>, path: &str, name: &str) -> Result<&'a Value> {
    obj.get(name)
        .ok_or_else(|| Error::parse(path, format!("missing field \"{name}\"")))
}

fn as_object<'a>(value: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    value
        .as_object()
        .ok_or_else(|| Error::parse(path, "expected an object"))
}

fn as_array<'a>(value: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    value
        .as_array()
        .ok_or_else(|| Error::parse(path, "expected an array"))
}

fn as_usize(value: &Value, path: &str) -> Result<usize> {
    value
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::parse(path, "expected a nonnegative integer"))
}

fn as_rational(value: &Value, path: &str) -> Result<Rational> {
    match value {
        Value::String(s) => rational::parse(s).map_err(|e| match e {
            Error::Parse { message, .. } => Error::parse(path, message),
            other => other,
        }),
        Value::Number(x) => match x.as_i64() {
            Some(i) => Ok(rational::int(i)),
            None => Err(Error::parse(path, "numbers must be integers; write fractions as \"p/q\"")),
        },
        _ => Err(Error::parse(path, "expected a rational: integer or \"p/q\" string")),
    }
}

fn rational_json(x: &Rational) -> Value {
    Value::String(rational::format(x))
}

fn read_players(obj: &Map<String, Value>, path: &str) -> Result<usize> {
    let n = as_usize(field(obj, path, "players")?, &format!("{path}.players"))?;
    if n == 0 {
        return Err(Error::parse(format!("{path}.players"), "at least one player is required"));
    }
    crate::limits::check_players(n)?;
    Ok(n)
}

fn read_player(value: &Value, n: usize, path: &str) -> Result<Player> {
    let p = as_usize(value, path)?;
    if p < 1 || p > n {
        return Err(Error::parse(path, format!("player {p} outside 1..={n}")));
    }
    Ok(p)
}

fn read_coalition(value: &Value, n: usize, path: &str) -> Result<Coalition> {
    let mut c = Coalition::EMPTY;
    for (k, p) in as_array(value, path)?.iter().enumerate() {
        let at = format!("{path}[{k}]");
        let p = read_player(p, n, &at)?;
        if c.contains(p) {
            return Err(Error::parse(at, format!("player {p} listed twice")));
        }
        c = c.with(p);
    }
    if c.is_empty() {
        return Err(Error::parse(path, "empty coalition"));
    }
    Ok(c)
}

fn read_links(value: &Value, n: usize, path: &str) -> Result<Network> {
    let mut links = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (k, link) in as_array(value, path)?.iter().enumerate() {
        let at = format!("{path}[{k}]");
        let pair = as_array(link, &at)?;
        if pair.len() != 2 {
            return Err(Error::parse(at, "a link has exactly two endpoints"));
        }
        let a = read_player(&pair[0], n, &format!("{at}[0]"))?;
        let b = read_player(&pair[1], n, &format!("{at}[1]"))?;
        if a == b {
            return Err(Error::parse(at, format!("self-loop at player {a}")));
        }
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(Error::parse(at, format!("duplicate link {{{},{}}}", a.min(b), a.max(b))));
        }
        links.push((a, b));
    }
    Network::from_links(n, links).map_err(|e| Error::parse(path, e.to_string()))
}

fn read_partition(value: &Value, n: usize, path: &str) -> Result<Partition> {
    let blocks = as_array(value, path)?
        .iter()
        .enumerate()
        .map(|(k, b)| read_coalition(b, n, &format!("{path}[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    Partition::new(n, blocks).map_err(|e| Error::parse(path, e.to_string()))
}

fn coalition_json(c: Coalition) -> Value {
    json!(c.to_vec())
}

fn links_json(g: &Network) -> Value {
    Value::Array(g.links().into_iter().map(|(a, b)| json!([a, b])).collect())
}

fn partition_json(p: &Partition) -> Value {
    Value::Array(p.blocks().iter().map(|&b| coalition_json(b)).collect())
}

/// `{"players": n, "links": [[i, j], ...]}`.
pub fn read_network(text: &str) -> Result<Network> {
    network_from_value(&parse_json(text)?, "$")
}

pub fn network_from_value(value: &Value, path: &str) -> Result<Network> {
    let obj = as_object(value, path)?;
    let n = read_players(obj, path)?;
    read_links(field(obj, path, "links")?, n, &format!("{path}.links"))
}

pub fn network_to_value(g: &Network) -> Value {
    json!({"players": g.players(), "links": links_json(g)})
}

pub fn read_game(text: &str) -> Result<GameDocument> {
    game_from_value(&parse_json(text)?, "$")
}

pub fn game_from_value(value: &Value, path: &str) -> Result<GameDocument> {
    let obj = as_object(value, path)?;
    let kind = field(obj, path, "kind")?
        .as_str()
        .ok_or_else(|| Error::parse(format!("{path}.kind"), "expected a string"))?;
    let n = read_players(obj, path)?;
    let at = |name: &str| format!("{path}.{name}");
    match kind {
        "tu" => {
            let worths = as_object(field(obj, path, "worths")?, &at("worths"))?;
            let mut game = TuGame::zero(n);
            for (key, value) in worths {
                let here = format!("{}[{key:?}]", at("worths"));
                let mut c = Coalition::EMPTY;
                for part in key.split(',') {
                    let p: usize = part
                        .trim()
                        .parse()
                        .map_err(|_| Error::parse(&here, format!("bad player {part:?}")))?;
                    if p < 1 || p > n || c.contains(p) {
                        return Err(Error::parse(&here, format!("bad player {p}")));
                    }
                    c = c.with(p);
                }
                game.set(c, as_rational(value, &here)?)
                    .map_err(|e| Error::parse(&here, e.to_string()))?;
            }
            Ok(GameDocument::Tu(game))
        }
        "pff" => {
            let mut game = PffGame::zero(n);
            for (k, entry) in as_array(field(obj, path, "entries")?, &at("entries"))?.iter().enumerate() {
                let here = format!("{}[{k}]", at("entries"));
                let e = as_object(entry, &here)?;
                let c = read_coalition(field(e, &here, "coalition")?, n, &format!("{here}.coalition"))?;
                let p = read_partition(field(e, &here, "partition")?, n, &format!("{here}.partition"))?;
                let worth = as_rational(field(e, &here, "worth")?, &format!("{here}.worth"))?;
                let key = EmbeddedCoalition::new(c, p).map_err(|e| Error::parse(&here, e.to_string()))?;
                game.set(key, worth)?;
            }
            Ok(GameDocument::Pff(game))
        }
        "worth-table" => {
            let mut entries = Vec::new();
            for (k, entry) in as_array(field(obj, path, "entries")?, &at("entries"))?.iter().enumerate() {
                let here = format!("{}[{k}]", at("entries"));
                let e = as_object(entry, &here)?;
                let c = read_coalition(field(e, &here, "component")?, n, &format!("{here}.component"))?;
                let g = read_links(field(e, &here, "network")?, n, &format!("{here}.network"))?;
                if !g.is_component(c) {
                    return Err(Error::parse(here, format!("{c} is not a component of {g}")));
                }
                entries.push((c, g, as_rational(field(e, &here, "worth")?, &format!("{here}.worth"))?));
            }
            let mut seen = std::collections::HashSet::new();
            for (k, (c, g, _)) in entries.iter().enumerate() {
                if !seen.insert((*c, *g)) {
                    return Err(Error::parse(
                        format!("{}[{k}]", at("entries")),
                        format!("duplicate entry for ({c}, {g})"),
                    ));
                }
            }
            Ok(GameDocument::Worth(WorthFunction::table(n, entries)?))
        }
        "linked-beneficiary" | "edge-beneficiary" => {
            let b = read_player(field(obj, path, "beneficiary")?, n, &at("beneficiary"))?;
            let pair = as_array(field(obj, path, "pair")?, &at("pair"))?;
            if pair.len() != 2 {
                return Err(Error::parse(at("pair"), "expected two players"));
            }
            let i = read_player(&pair[0], n, &format!("{}[0]", at("pair")))?;
            let j = read_player(&pair[1], n, &format!("{}[1]", at("pair")))?;
            let w = if kind == "linked-beneficiary" {
                WorthFunction::linked_beneficiary(n, b, (i, j))
            } else {
                WorthFunction::edge_beneficiary(n, b, (i, j))
            }
            .map_err(|e| Error::parse(at("pair"), e.to_string()))?;
            Ok(GameDocument::Worth(w))
        }
        "hashed" => {
            let seed = field(obj, path, "seed")?
                .as_u64()
                .ok_or_else(|| Error::parse(at("seed"), "expected a nonnegative integer"))?;
            let scope = match obj.get("scope").and_then(Value::as_str).unwrap_or("global") {
                "global" => HashScope::Global,
                "internal" => HashScope::Internal,
                other => return Err(Error::parse(at("scope"), format!("unknown scope {other:?}"))),
            };
            Ok(GameDocument::Worth(WorthFunction::hashed(n, seed, scope)))
        }
        other => Err(Error::parse(
            at("kind"),
            format!("unknown kind {other:?}; expected tu, pff, worth-table, linked-beneficiary, edge-beneficiary or hashed"),
        )),
    }
}

pub fn tu_to_value(v: &TuGame) -> Value {
    let worths: Map<String, Value> = v
        .entries()
        .map(|(c, x)| {
            let key = c.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
            (key, rational_json(x))
        })
        .collect();
    json!({"kind": "tu", "players": v.players(), "worths": worths})
}

pub fn pff_to_value(v: &PffGame) -> Value {
    let entries: Vec<Value> = v
        .entries()
        .map(|(key, x)| {
            json!({
                "coalition": coalition_json(key.coalition()),
                "partition": partition_json(key.partition()),
                "worth": rational_json(x),
            })
        })
        .collect();
    json!({"kind": "pff", "players": v.players(), "entries": entries})
}

/// Writes a worth table from explicit `(component, network, worth)` rows,
/// sorted by network then component and with zero rows dropped.
pub fn worth_table_to_value(n: usize, rows: &[(Coalition, Network, Rational)]) -> Value {
    let mut sorted: Vec<&(Coalition, Network, Rational)> =
        rows.iter().filter(|(_, _, x)| !num::Zero::is_zero(x)).collect();
    sorted.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
    let entries: Vec<Value> = sorted
        .into_iter()
        .map(|(c, g, x)| {
            json!({"component": coalition_json(*c), "network": links_json(g), "worth": rational_json(x)})
        })
        .collect();
    json!({"kind": "worth-table", "players": n, "entries": entries})
}

pub fn game_to_value(game: &GameDocument) -> Result<Value> {
    match game {
        GameDocument::Tu(v) => Ok(tu_to_value(v)),
        GameDocument::Pff(v) => Ok(pff_to_value(v)),
        GameDocument::Worth(w) => worth_to_value(w),
    }
}

/// Serializes the worth-function bodies that have a file form.
pub fn worth_to_value(w: &WorthFunction) -> Result<Value> {
    let n = w.players();
    match w.body() {
        WorthBody::Table(table) => {
            let rows: Vec<(Coalition, Network, Rational)> =
                table.iter().map(|((c, g), x)| (*c, *g, x.clone())).collect();
            Ok(worth_table_to_value(n, &rows))
        }
        WorthBody::LinkedBeneficiary { beneficiary, pair } => Ok(json!({
            "kind": "linked-beneficiary", "players": n, "beneficiary": beneficiary, "pair": [pair.0, pair.1]
        })),
        WorthBody::EdgeBeneficiary { beneficiary, pair } => Ok(json!({
            "kind": "edge-beneficiary", "players": n, "beneficiary": beneficiary, "pair": [pair.0, pair.1]
        })),
        WorthBody::Hashed { seed, scope } => Ok(json!({
            "kind": "hashed", "players": n, "seed": seed,
            "scope": match scope { HashScope::Global => "global", HashScope::Internal => "internal" },
        })),
        WorthBody::TuInduced(v) => Ok(tu_to_value(v)),
        WorthBody::PffInduced(v) => Ok(pff_to_value(v)),
        _ => Err(Error::domain("this worth function has no file form; tabulate it first")),
    }
}

/// `{"players": n, "payoffs": {"1": "1/3", ...}}`.
pub fn allocation_to_value(a: &Allocation) -> Value {
    let payoffs: Map<String, Value> = a
        .as_slice()
        .iter()
        .enumerate()
        .map(|(i, x)| ((i + 1).to_string(), rational_json(x)))
        .collect();
    json!({"players": a.players(), "payoffs": payoffs})
}

pub fn read_allocation(text: &str) -> Result<Allocation> {
    allocation_from_value(&parse_json(text)?, "$")
}

pub fn allocation_from_value(value: &Value, path: &str) -> Result<Allocation> {
    let obj = as_object(value, path)?;
    let n = read_players(obj, path)?;
    let payoffs = as_object(field(obj, path, "payoffs")?, &format!("{path}.payoffs"))?;
    let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
    for (key, x) in payoffs {
        let here = format!("{path}.payoffs[{key:?}]");
        let p: usize = key.parse().map_err(|_| Error::parse(&here, "keys are players"))?;
        if p < 1 || p > n {
            return Err(Error::parse(here, format!("player {p} outside 1..={n}")));
        }
        out.insert(p, as_rational(x, &here)?);
    }
    if out.len() != n {
        return Err(Error::parse(format!("{path}.payoffs"), format!("expected {n} payoffs")));
    }
    Ok(Allocation::from_vec(out.into_values().collect()))
}

/// `{"kind": "dividends", "players": n, "entries": [{"coalition", "partition", "dividend"}]}`.
pub fn dividends_to_value(table: &DividendTable) -> Value {
    let entries: Vec<Value> = table
        .entries()
        .map(|(key, b)| {
            json!({
                "coalition": coalition_json(key.coalition()),
                "partition": partition_json(key.partition()),
                "dividend": rational_json(b),
            })
        })
        .collect();
    json!({"kind": "dividends", "players": table.players(), "entries": entries})
}

/// Reads a dividends document back as `(embedded coalition, coefficient)` rows.
pub fn read_dividends(text: &str) -> Result<Vec<(EmbeddedCoalition, Rational)>> {
    let value = parse_json(text)?;
    let obj = as_object(&value, "$")?;
    if obj.get("kind").and_then(Value::as_str) != Some("dividends") {
        return Err(Error::parse("$.kind", "expected \"dividends\""));
    }
    let n = read_players(obj, "$")?;
    let mut rows = Vec::new();
    for (k, entry) in as_array(field(obj, "$", "entries")?, "$.entries")?.iter().enumerate() {
        let here = format!("$.entries[{k}]");
        let e = as_object(entry, &here)?;
        let c = read_coalition(field(e, &here, "coalition")?, n, &format!("{here}.coalition"))?;
        let p = read_partition(field(e, &here, "partition")?, n, &format!("{here}.partition"))?;
        let b = as_rational(field(e, &here, "dividend")?, &format!("{here}.dividend"))?;
        rows.push((EmbeddedCoalition::new(c, p).map_err(|e| Error::parse(&here, e.to_string()))?, b));
    }
    Ok(rows)
}

fn witness_to_value(w: &Witness) -> Value {
    let mut obj = Map::new();
    obj.insert("players".into(), json!(w.players));
    obj.insert(
        "networks".into(),
        Value::Array(w.networks.iter().map(links_json).collect()),
    );
    if !w.coalitions.is_empty() {
        obj.insert(
            "coalitions".into(),
            Value::Array(w.coalitions.iter().map(|&c| coalition_json(c)).collect()),
        );
    }
    if let Some(pi) = &w.permutation {
        obj.insert("permutation".into(), json!(pi.images()));
    }
    obj.insert("lhs".into(), rational_json(&w.lhs));
    obj.insert("rhs".into(), rational_json(&w.rhs));
    Value::Object(obj)
}

fn entry_to_value(e: &SuiteEntry) -> Value {
    let mut obj = Map::new();
    obj.insert("axiom".into(), json!(e.axiom.name()));
    obj.insert("rule".into(), json!(e.rule));
    obj.insert("game".into(), json!(e.case));
    obj.insert("network".into(), links_json(&e.network));
    obj.insert("expected".into(), json!(e.expected));
    match &e.outcome {
        Ok(report) => {
            obj.insert("checked".into(), json!(report.checked));
            obj.insert(
                "violations".into(),
                Value::Array(report.violations.iter().map(witness_to_value).collect()),
            );
        }
        Err(message) => {
            obj.insert("error".into(), json!(message));
        }
    }
    Value::Object(obj)
}

/// `{"audits": [...], "passed": bool}`.
pub fn suite_to_value(report: &SuiteReport) -> Value {
    json!({
        "audits": report.entries.iter().map(entry_to_value).collect::<Vec<_>>(),
        "passed": report.exit_code() == 0,
    })
}

pub fn oracle_to_value(outcome: &OracleOutcome, axiom: &str) -> Value {
    let failures: Vec<Value> = outcome
        .report
        .failures
        .iter()
        .map(|f| {
            json!({
                "network": links_json(&f.network),
                "component": coalition_json(f.component),
                "rank": f.rank,
                "unknowns": f.unknowns,
                "inconsistent_equations": f.inconsistent_equations,
            })
        })
        .collect();
    json!({
        "axiom": axiom,
        "allocation": outcome.allocation.as_ref().map(allocation_to_value),
        "systems": outcome.report.systems,
        "equations": outcome.report.equations,
        "consistent": outcome.report.consistent,
        "full_rank": outcome.report.full_rank,
        "failures": failures,
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_text(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}
