use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::Path;

use netvalue::axioms::{
    cycle_sum_check, run_suite, Axiom, Expectation, HashedRule, PermutationChoice, SuiteCase,
    SuiteReport,
};
use netvalue::catalog;
use netvalue::games::{graph_restrict_pff, project_worth};
use netvalue::io::{self, GameDocument};
use netvalue::net::{all_cycles, Cycle};
use netvalue::rational;
use netvalue::values::{oracle_solve, pff_dividends, rule_by_name, AllocationRule, OracleAxiom, RULE_NAMES};
use netvalue::{Allocation, Coalition, Network, WorthFunction};
use serde_json::{json, Value};

use crate::{AxiomArg, Command, ExpectArg, Format, GameNetwork};

pub struct Context {
    pub format: Format,
    pub seed: u64,
}

pub struct Output {
    pub text: String,
    pub status: u8,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Guard(String),
}

impl CliError {
    pub fn status(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) => 3,
            CliError::Guard(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Data(m) | CliError::Guard(m) => write!(f, "{m}"),
        }
    }
}

impl From<netvalue::Error> for CliError {
    fn from(err: netvalue::Error) -> Self {
        match err {
            netvalue::Error::ResourceGuard { .. } => CliError::Guard(err.to_string()),
            other => CliError::Data(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, result: netvalue::Result<T>) -> CliResult<T> {
    result.map_err(|e| match CliError::from(e) {
        CliError::Data(m) => CliError::Data(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn load_game(path: &Path) -> CliResult<GameDocument> {
    let text = read_file(path)?;
    in_file(path, io::read_game(&text))
}

fn load_network(path: &Path) -> CliResult<Network> {
    let text = read_file(path)?;
    in_file(path, io::read_network(&text))
}

fn load_pair(input: &GameNetwork) -> CliResult<(GameDocument, Network)> {
    let game = load_game(&input.game)?;
    let g = load_network(&input.network)?;
    if g.players() != game.players() {
        return Err(CliError::Data(format!(
            "{} has {} players but {} has {}",
            input.game.display(),
            game.players(),
            input.network.display(),
            g.players()
        )));
    }
    Ok((game, g))
}

fn make_rule(name: &str, seed: u64) -> CliResult<Box<dyn AllocationRule>> {
    if name == "hashed" {
        return Ok(Box::new(HashedRule { seed }));
    }
    rule_by_name(name).ok_or_else(|| {
        CliError::Usage(format!("unknown rule {name:?}; expected one of {}, hashed", RULE_NAMES.join(", ")))
    })
}

/// Rejects rules that need a particular game kind before any work is done.
fn check_kind(rule: &str, game: &GameDocument) -> CliResult<()> {
    let needed = match rule {
        "shapley" | "myerson" => "tu",
        "pff-value" => "pff",
        _ => return Ok(()),
    };
    if game.kind() != needed {
        return Err(CliError::Usage(format!(
            "rule {rule} needs a {needed} game, got {}",
            game.kind()
        )));
    }
    Ok(())
}

fn need_pff(game: GameDocument) -> CliResult<netvalue::PffGame> {
    match game {
        GameDocument::Pff(v) => Ok(v),
        other => Err(CliError::Usage(format!("expected a pff game, got {}", other.kind()))),
    }
}

fn emit(ctx: &Context, value: Value, table: String, status: u8) -> Output {
    let text = match ctx.format {
        Format::Json => io::to_text(&value),
        Format::Table => table,
    };
    Output { text, status }
}

fn allocation_value(rule: &str, a: &Allocation) -> Value {
    let mut value = io::allocation_to_value(a);
    let obj = value.as_object_mut().expect("allocation is an object");
    obj.insert("rule".into(), json!(rule));
    value
}

pub fn run(ctx: &Context, command: &Command) -> CliResult<Output> {
    match command {
        Command::Compute { rule, input } => compute(ctx, rule, input),
        Command::Audit { rule, axioms, expect, samples, input } => {
            audit(ctx, rule, axioms, *expect, *samples, input)
        }
        Command::Dividends { game, verify } => dividends(ctx, game, *verify),
        Command::Restrict { input } => restrict(ctx, input),
        Command::Project { input, target } => project(ctx, input, target),
        Command::Oracle { axiom, input } => oracle(ctx, *axiom, input),
        Command::Identity { rule, cycle, input } => identity(ctx, rule, cycle.as_deref(), input),
        Command::Examples { out } => examples(ctx, out),
    }
}

fn compute(ctx: &Context, rule: &str, input: &GameNetwork) -> CliResult<Output> {
    let r = make_rule(rule, ctx.seed)?;
    let (game, g) = load_pair(input)?;
    check_kind(rule, &game)?;
    let a = r.allocate(&game.to_worth(), &g)?;
    Ok(emit(ctx, allocation_value(rule, &a), format!("{}\n", a.to_table_line()), 0))
}

fn audit(
    ctx: &Context,
    rules: &[String],
    axioms: &[String],
    expect: ExpectArg,
    samples: usize,
    input: &GameNetwork,
) -> CliResult<Output> {
    let axioms: Vec<Axiom> = axioms
        .iter()
        .filter(|a| !a.is_empty())
        .map(|a| {
            Axiom::from_name(a).ok_or_else(|| {
                CliError::Usage(format!("unknown axiom {a:?}; expected ce, bc, f, bcplus or sym"))
            })
        })
        .collect::<CliResult<_>>()?;
    if axioms.is_empty() {
        return Err(CliError::Usage("no axioms given".into()));
    }
    let built: Vec<Box<dyn AllocationRule>> = rules
        .iter()
        .map(|r| make_rule(r, ctx.seed))
        .collect::<CliResult<_>>()?;
    if built.is_empty() {
        return Err(CliError::Usage("no rules given".into()));
    }
    let (game, g) = load_pair(input)?;
    for r in rules {
        check_kind(r, &game)?;
    }
    let case = SuiteCase {
        name: input
            .game
            .file_stem()
            .map(|s| s.to_string_lossy().trim_end_matches(".game").to_string())
            .unwrap_or_default(),
        w: game.to_worth(),
        g,
    };
    let refs: Vec<&dyn AllocationRule> = built.iter().map(|b| b.as_ref()).collect();
    let expectation = match expect {
        ExpectArg::All => Expectation::AllRequested,
        ExpectArg::Characterized => Expectation::Characterized,
    };
    let sampled = PermutationChoice::Sample { count: samples, seed: ctx.seed };
    let report = run_suite(&refs, &[case], &axioms, &sampled, expectation);
    let status = report.exit_code() as u8;
    Ok(emit(ctx, io::suite_to_value(&report), audit_table(&report), status))
}

fn audit_table(report: &SuiteReport) -> String {
    let mut out = String::new();
    for e in &report.entries {
        let head = format!("{} {} on {} {}", e.rule, e.axiom, e.case, e.network);
        match &e.outcome {
            Ok(r) if r.holds() => out.push_str(&format!("{head}: holds ({} checked)\n", r.checked)),
            Ok(r) => {
                let tag = if e.expected { "FAIL" } else { "violated" };
                out.push_str(&format!("{head}: {tag}, {} of {} checks\n", r.violations.len(), r.checked));
                for v in &r.violations {
                    let players: Vec<String> = v.players.iter().map(|p| p.to_string()).collect();
                    out.push_str(&format!(
                        "  players {}: {} != {}\n",
                        players.join(","),
                        rational::format(&v.lhs),
                        rational::format(&v.rhs)
                    ));
                }
            }
            Err(msg) => out.push_str(&format!("{head}: error: {msg}\n")),
        }
    }
    out
}

fn dividends(ctx: &Context, path: &Path, verify: bool) -> CliResult<Output> {
    let v = need_pff(load_game(path)?)?;
    let table = pff_dividends(&v)?;
    if verify && table.reconstruct()? != v {
        return Err(CliError::Data("dividends do not reconstruct the game".into()));
    }
    let lines: String = table
        .entries()
        .map(|(key, b)| format!("{key} = {}\n", rational::format(b)))
        .collect();
    Ok(emit(ctx, io::dividends_to_value(&table), lines, 0))
}

fn pff_lines(v: &netvalue::PffGame) -> String {
    v.entries()
        .map(|(key, x)| format!("{key} = {}\n", rational::format(x)))
        .collect()
}

fn restrict(ctx: &Context, input: &GameNetwork) -> CliResult<Output> {
    let (game, g) = load_pair(input)?;
    let v = need_pff(game)?;
    let restricted = graph_restrict_pff(&v, &g)?;
    Ok(emit(ctx, io::pff_to_value(&restricted), pff_lines(&restricted), 0))
}

fn project(ctx: &Context, input: &GameNetwork, targets: &[std::path::PathBuf]) -> CliResult<Output> {
    let (game, g) = load_pair(input)?;
    let n = g.players();
    let networks: BTreeSet<Network> = if targets.is_empty() {
        Coalition::full(n).subsets().map(|d| g.remove_players(d)).collect()
    } else {
        let mut set = BTreeSet::new();
        for t in targets {
            let h = load_network(t)?;
            if h.players() != n {
                return Err(CliError::Data(format!("{} is not on {n} players", t.display())));
            }
            set.insert(h);
        }
        set
    };
    let projected: WorthFunction = project_worth(&game.to_worth(), &g)?;
    let mut rows = Vec::new();
    for h in &networks {
        for &c in h.components().blocks() {
            rows.push((c, *h, projected.eval(c, h)?));
        }
    }
    let value = io::worth_table_to_value(n, &rows);
    let lines: String = rows
        .iter()
        .filter(|(_, _, x)| *x != rational::zero())
        .map(|(c, h, x)| format!("{c} in {h} = {}\n", rational::format(x)))
        .collect();
    Ok(emit(ctx, value, lines, 0))
}

fn oracle(ctx: &Context, axiom: AxiomArg, input: &GameNetwork) -> CliResult<Output> {
    let (game, g) = load_pair(input)?;
    let (which, name) = match axiom {
        AxiomArg::Bc => (OracleAxiom::Bc, "bc"),
        AxiomArg::F => (OracleAxiom::F, "f"),
    };
    let outcome = oracle_solve(&game.to_worth(), &g, which)?;
    let r = &outcome.report;
    let mut table = match &outcome.allocation {
        Some(a) => format!("{}\n", a.to_table_line()),
        None => "no unique solution\n".to_string(),
    };
    table.push_str(&format!(
        "systems: {}, equations: {}, consistent: {}, full rank: {}\n",
        r.systems, r.equations, r.consistent, r.full_rank
    ));
    for f in &r.failures {
        table.push_str(&format!(
            "  {} in {}: rank {} of {}\n",
            f.component, f.network, f.rank, f.unknowns
        ));
        for eq in &f.inconsistent_equations {
            table.push_str(&format!("    inconsistent: {eq}\n"));
        }
    }
    let status = if r.consistent && r.full_rank { 0 } else { 1 };
    Ok(emit(ctx, io::oracle_to_value(&outcome, name), table, status))
}

fn identity(ctx: &Context, rule: &str, cycle: Option<&[usize]>, input: &GameNetwork) -> CliResult<Output> {
    let r = make_rule(rule, ctx.seed)?;
    let (game, g) = load_pair(input)?;
    check_kind(rule, &game)?;
    let cycles = match cycle {
        Some(vertices) => vec![Cycle::new(&g, vertices.to_vec()).map_err(|e| CliError::Usage(e.to_string()))?],
        None => all_cycles(&g),
    };
    let w = game.to_worth();
    let mut bound = r.bind(&w);
    let mut entries = Vec::new();
    let mut table = String::new();
    let mut all_equal = true;
    for z in &cycles {
        let sum = cycle_sum_check(bound.as_mut(), &g, z)?;
        all_equal &= sum.equal;
        let (lhs, rhs) = (rational::format(&sum.lhs), rational::format(&sum.rhs));
        let label: Vec<String> = z.vertices().iter().map(|p| p.to_string()).collect();
        table.push_str(&format!(
            "cycle {}: lhs {lhs}, rhs {rhs}, {}\n",
            label.join("-"),
            if sum.equal { "equal" } else { "DIFFERENT" }
        ));
        entries.push(json!({
            "cycle": z.vertices(),
            "lhs": lhs,
            "rhs": rhs,
            "equal": sum.equal,
            "terms": sum.terms.len(),
        }));
    }
    let value = json!({ "rule": rule, "cycles": entries, "all_equal": all_equal });
    Ok(emit(ctx, value, table, if all_equal { 0 } else { 1 }))
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn examples(ctx: &Context, out: &Path) -> CliResult<Output> {
    fs::create_dir_all(out).map_err(|e| CliError::Data(format!("{}: {e}", out.display())))?;
    let mut written = Vec::new();
    for e in catalog::examples()? {
        let file = e.game_file();
        write(&out.join(&file), &io::to_text(&io::game_to_value(&e.game)?))?;
        written.push(file);
        for (label, g) in &e.networks {
            let file = e.network_file(label);
            write(&out.join(&file), &io::to_text(&io::network_to_value(g)))?;
            written.push(file);
        }
    }
    let manifest = catalog::manifest_to_value(&catalog::manifest());
    write(&out.join("manifest.json"), &io::to_text(&manifest))?;
    written.push("manifest.json".to_string());
    let table: String = written.iter().map(|f| format!("{}\n", out.join(f).display())).collect();
    Ok(emit(ctx, json!({ "directory": out.display().to_string(), "files": written }), table, 0))
}
