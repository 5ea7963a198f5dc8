//! Built-in instances with known outcomes, and the command manifest that
//! checks them through the command-line tool.

use serde_json::{json, Value};

use crate::error::Result;
use crate::games::{HashScope, PffGame, WorthFunction};
use crate::io::GameDocument;
use crate::net::{Coalition, Network, Partition};

/// A game together with the networks it is evaluated on.
#[derive(Clone, Debug)]
pub struct Example {
    pub name: &'static str,
    pub description: &'static str,
    pub game: GameDocument,
    pub networks: Vec<(&'static str, Network)>,
}

impl Example {
    pub fn game_file(&self) -> String {
        format!("{}.game.json", self.name)
    }

    pub fn network_file(&self, label: &str) -> String {
        format!("{}.{label}.network.json", self.name)
    }

    pub fn network(&self, label: &str) -> Option<&Network> {
        self.networks.iter().find(|(l, _)| *l == label).map(|(_, g)| g)
    }
}

/// One command and the output it must produce.
///
/// `expected` is matched structurally against the command's JSON output:
/// object keys present in `expected` must match, arrays must have equal
/// length and match elementwise, and other values must be equal.
#[derive(Clone, Debug)]
pub struct ManifestEntry {
    pub example: &'static str,
    pub source: &'static str,
    pub args: Vec<String>,
    pub exit_code: i32,
    pub expected: Value,
}

fn net(n: usize, links: &[(usize, usize)]) -> Network {
    Network::from_links(n, links.iter().copied()).expect("catalog networks are valid")
}

fn set(players: &[usize]) -> Coalition {
    players.iter().copied().collect()
}

/// `v(T, Q) = 1` iff `3 ∈ T` and `{{1,2},{3}}` refines `Q`.
pub fn restricted_unanimity() -> Result<PffGame> {
    let p = Partition::new(3, vec![set(&[1, 2]), set(&[3])])?;
    PffGame::unanimity(3, set(&[3]), &p)
}

pub fn examples() -> Result<Vec<Example>> {
    let beneficiary3 = WorthFunction::linked_beneficiary(3, 3, (1, 2))?;
    Ok(vec![
        Example {
            name: "linked-beneficiary",
            description: "player 3 earns 1 whenever players 1 and 2 are linked; 3 isolated, then exposed to 1",
            game: GameDocument::Worth(beneficiary3),
            networks: vec![
                ("isolated", net(3, &[(1, 2)])),
                ("exposed", net(3, &[(1, 2), (1, 3)])),
            ],
        },
        Example {
            name: "pairwise-contributions",
            description: "four players on the path 2-1-4-3; player 3 earns 1 while 1 and 2 are connected",
            game: GameDocument::Worth(WorthFunction::linked_beneficiary(4, 3, (1, 2))?),
            networks: vec![("path", net(4, &[(1, 2), (1, 4), (3, 4)]))],
        },
        Example {
            name: "edge-beneficiary",
            description: "player 3 earns 1 when the link {1,2} is present in the network",
            game: GameDocument::Worth(WorthFunction::edge_beneficiary(3, 3, (1, 2))?),
            networks: vec![
                ("base", net(3, &[(1, 2)])),
                ("target", net(3, &[(1, 3), (2, 3)])),
            ],
        },
        Example {
            name: "restricted-unanimity",
            description: "unanimity partition game on player 3 embedded in {{1,2},{3}}",
            game: GameDocument::Pff(restricted_unanimity()?),
            networks: vec![
                ("isolated", net(3, &[(1, 2)])),
                ("exposed", net(3, &[(1, 2), (1, 3)])),
                ("complete", net(3, &[(1, 2), (1, 3), (2, 3)])),
            ],
        },
        Example {
            name: "triangle",
            description: "pseudo-random worths with externalities on the triangle",
            game: GameDocument::Worth(WorthFunction::hashed(3, 11, HashScope::Global)),
            networks: vec![("triangle", net(3, &[(1, 2), (1, 3), (2, 3)]))],
        },
    ])
}

fn payoffs(values: &[&str]) -> Value {
    let map: serde_json::Map<String, Value> = values
        .iter()
        .enumerate()
        .map(|(i, x)| ((i + 1).to_string(), json!(x)))
        .collect();
    json!({ "players": values.len(), "payoffs": map })
}

fn args(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn compute(example: &'static str, network: &str, rule: &str, values: &[&str], source: &'static str) -> ManifestEntry {
    ManifestEntry {
        example,
        source,
        args: args(&[
            "--format",
            "json",
            "compute",
            "--rule",
            rule,
            "--game",
            &format!("{example}.game.json"),
            "--network",
            &format!("{example}.{network}.network.json"),
        ]),
        exit_code: 0,
        expected: payoffs(values),
    }
}

fn oracle(example: &'static str, network: &str, axiom: &str, values: &[&str], source: &'static str) -> ManifestEntry {
    ManifestEntry {
        example,
        source,
        args: args(&[
            "--format",
            "json",
            "oracle",
            "--axiom",
            axiom,
            "--game",
            &format!("{example}.game.json"),
            "--network",
            &format!("{example}.{network}.network.json"),
        ]),
        exit_code: 0,
        expected: json!({ "allocation": payoffs(values), "consistent": true, "full_rank": true }),
    }
}

fn audit(example: &'static str, network: &str, rule: &str, axioms: &str, exit_code: i32, expected: Value, source: &'static str) -> ManifestEntry {
    ManifestEntry {
        example,
        source,
        args: args(&[
            "--format",
            "json",
            "audit",
            "--rule",
            rule,
            "--axioms",
            axioms,
            "--game",
            &format!("{example}.game.json"),
            "--network",
            &format!("{example}.{network}.network.json"),
        ]),
        exit_code,
        expected,
    }
}

fn restrict(network: &str, source: &'static str) -> ManifestEntry {
    let unanimity_entries = json!([
        { "coalition": [1, 2, 3], "partition": [[1, 2, 3]], "worth": "1" },
        { "coalition": [3], "partition": [[1, 2], [3]], "worth": "1" },
    ]);
    ManifestEntry {
        example: "restricted-unanimity",
        source,
        args: args(&[
            "--format",
            "json",
            "restrict",
            "--game",
            "restricted-unanimity.game.json",
            "--network",
            &format!("restricted-unanimity.{network}.network.json"),
        ]),
        exit_code: 0,
        expected: json!({ "kind": "pff", "players": 3, "entries": unanimity_entries }),
    }
}

/// Commands to run from inside the directory the examples were written to.
pub fn manifest() -> Vec<ManifestEntry> {
    let mut out = vec![
        compute("linked-beneficiary", "isolated", "bce", &["0", "0", "1"], "isolated beneficiary keeps the worth"),
        compute("linked-beneficiary", "isolated", "fce", &["0", "0", "1"], "isolated beneficiary keeps the worth"),
        compute("linked-beneficiary", "exposed", "bce", &["1/3", "1/3", "1/3"], "balanced contributions force the equal split"),
        compute("linked-beneficiary", "exposed", "fce", &["0", "0", "1"], "fairness leaves the beneficiary with the worth"),
        compute("linked-beneficiary", "exposed", "fce-direct", &["0", "0", "1"], "fairness leaves the beneficiary with the worth"),
        oracle("linked-beneficiary", "exposed", "bc", &["1/3", "1/3", "1/3"], "balanced contributions system is consistent and full rank"),
        oracle("linked-beneficiary", "exposed", "f", &["0", "0", "1"], "fairness system is consistent and full rank"),
        audit(
            "linked-beneficiary",
            "exposed",
            "bce",
            "ce,bc,sym",
            0,
            json!({ "passed": true }),
            "the tree-built rule is efficient, balanced and symmetric",
        ),
        audit(
            "linked-beneficiary",
            "exposed",
            "bce",
            "f",
            1,
            json!({ "passed": false, "audits": [{ "axiom": "f", "rule": "bce" }] }),
            "balanced contributions and fairness are incompatible",
        ),
        audit(
            "linked-beneficiary",
            "exposed",
            "fce",
            "bc",
            1,
            json!({ "passed": false, "audits": [{ "axiom": "bc", "rule": "fce" }] }),
            "the fair rule violates balanced contributions",
        ),
        compute("pairwise-contributions", "path", "bce", &["0", "0", "1", "0"], "only player 3 is paid on the path"),
        audit(
            "pairwise-contributions",
            "path",
            "bce",
            "bcplus",
            1,
            json!({
                "passed": false,
                "audits": [{
                    "axiom": "bcplus",
                    "violations": [
                        { "players": [1, 3], "lhs": "0", "rhs": "1" },
                        { "players": [2, 3] },
                    ],
                }],
            }),
            "isolating 3 leaves 1 at 0 while isolating 1 drops 3 from 1 to 0",
        ),
        ManifestEntry {
            example: "edge-beneficiary",
            source: "projection changes worths off the subnetworks of the base network",
            args: args(&[
                "--format",
                "json",
                "project",
                "--game",
                "edge-beneficiary.game.json",
                "--network",
                "edge-beneficiary.base.network.json",
                "--target",
                "edge-beneficiary.target.network.json",
            ]),
            exit_code: 0,
            expected: json!({
                "kind": "worth-table",
                "players": 3,
                "entries": [{ "component": [1, 2, 3], "network": [[1, 3], [2, 3]], "worth": "1" }],
            }),
        },
        compute("edge-beneficiary", "base", "bce", &["0", "0", "1"], "isolated beneficiary keeps the worth"),
        ManifestEntry {
            example: "restricted-unanimity",
            source: "the dividend table of a unanimity game is a single unit entry",
            args: args(&["--format", "json", "dividends", "--verify", "--game", "restricted-unanimity.game.json"]),
            exit_code: 0,
            expected: json!({
                "kind": "dividends",
                "players": 3,
                "entries": [{ "coalition": [3], "partition": [[1, 2], [3]], "dividend": "1" }],
            }),
        },
        restrict("isolated", "restriction by either network gives the same game"),
        restrict("exposed", "restriction by either network gives the same game"),
        restrict("complete", "restriction by the complete network reproduces the game"),
        compute("restricted-unanimity", "isolated", "bce", &["0", "0", "1"], "the tree-built rule differs across the two networks"),
        compute("restricted-unanimity", "exposed", "bce", &["1/3", "1/3", "1/3"], "the tree-built rule differs across the two networks"),
        compute("restricted-unanimity", "isolated", "fce", &["0", "0", "1"], "the fair rule agrees across the two networks"),
        compute("restricted-unanimity", "exposed", "fce", &["0", "0", "1"], "the fair rule agrees across the two networks"),
        compute("restricted-unanimity", "complete", "ef", &["1/3", "1/3", "1/3"], "externality-free value of the unanimity game"),
    ];
    out.push(ManifestEntry {
        example: "triangle",
        source: "the cycle-sum identity holds for any rule",
        args: args(&[
            "--format",
            "json",
            "--seed",
            "5",
            "identity",
            "--rule",
            "hashed",
            "--game",
            "triangle.game.json",
            "--network",
            "triangle.triangle.network.json",
        ]),
        exit_code: 0,
        expected: json!({ "all_equal": true, "cycles": [{ "cycle": [1, 2, 3], "equal": true }] }),
    });
    out
}

/// Whether `actual` contains everything `expected` asks for, in the sense of
/// [`ManifestEntry::expected`].
pub fn matches(expected: &Value, actual: &Value) -> bool {
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => e
            .iter()
            .all(|(k, v)| a.get(k).is_some_and(|x| matches(v, x))),
        (Value::Array(e), Value::Array(a)) => {
            e.len() == a.len() && e.iter().zip(a).all(|(x, y)| matches(x, y))
        }
        _ => expected == actual,
    }
}

pub fn manifest_to_value(entries: &[ManifestEntry]) -> Value {
    Value::Array(
        entries
            .iter()
            .map(|e| {
                json!({
                    "example": e.example,
                    "source": e.source,
                    "args": e.args,
                    "exit_code": e.exit_code,
                    "expected": e.expected,
                })
            })
            .collect(),
    )
}
