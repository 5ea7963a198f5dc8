//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use netvalue::axioms::{
    check_bcplus, run_suite, sweep_cycle_identity, Axiom, Expectation, HashedRule,
    PermutationChoice, SuiteCase,
};
use netvalue::catalog::restricted_unanimity;
use netvalue::games::{
    graph_restrict_pff, induced_worth_from_pff, project_worth, HashScope, PffSpace,
};
use netvalue::io::{pff_to_value, to_text};
use netvalue::net::spanning_forests;
use netvalue::random::{self, Instance};
use netvalue::rational::{int, ratio};
use netvalue::values::{
    bce, bce_with_forest, ef_value, fce_direct, fce_formula, jw_value, myerson, oracle_solve,
    pff_dividends, pff_value, AllocationRule, Bce, BceSolver, FceFormula, OracleAxiom, Payoffs,
};
use netvalue::{Allocation, Network, PffGame, WorthFunction};

const SUITE_SEED: u64 = 20240611;

type Outcome = Result<String, String>;

fn net(n: usize, links: &[(usize, usize)]) -> Network {
    Network::from_links(n, links.iter().copied()).unwrap()
}

fn alloc(values: &[(i64, i64)]) -> Allocation {
    Allocation::from_vec(values.iter().map(|&(p, q)| ratio(p, q)).collect())
}

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, actual: T, expected: T) -> Result<(), String> {
    ensure(actual == expected, || format!("{what}: got {actual:?}, expected {expected:?}"))
}

fn lift<T>(r: netvalue::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn seeded_suite() -> Vec<Instance> {
    random::suite(SUITE_SEED, 120, 5, 10).expect("suite generation")
}

fn c1() -> Outcome {
    let w = lift(WorthFunction::linked_beneficiary(3, 3, (1, 2)))?;
    let g = net(3, &[(1, 2), (1, 3)]);
    expect_eq("bce", lift(bce(&w, &g))?, alloc(&[(1, 3), (1, 3), (1, 3)]))?;
    expect_eq("fce_formula", lift(fce_formula(&w, &g))?, alloc(&[(0, 1), (0, 1), (1, 1)]))?;
    Ok("bce (1/3,1/3,1/3), fce (0,0,1)".into())
}

fn c2() -> Outcome {
    let w = lift(WorthFunction::linked_beneficiary(4, 3, (1, 2)))?;
    let g = net(4, &[(1, 2), (1, 4), (3, 4)]);
    expect_eq("bce", lift(bce(&w, &g))?, alloc(&[(0, 1), (0, 1), (1, 1), (0, 1)]))?;
    let mut solver = BceSolver::new(&w);
    let report = lift(check_bcplus(&mut solver, &g))?;
    let first = report
        .violations
        .iter()
        .find(|v| v.players == [1, 3])
        .ok_or("no violation at pair (1,3)")?;
    expect_eq("sides at (1,3)", (first.lhs.clone(), first.rhs.clone()), (int(0), int(1)))?;
    let pairs: Vec<Vec<usize>> = report.violations.iter().map(|v| v.players.clone()).collect();
    // Player 2 is also cut off from 3's payoff by removing 2, so (2,3) violates too.
    expect_eq("violating pairs", pairs, vec![vec![1, 3], vec![2, 3]])?;
    for v in &report.violations {
        ensure(lift(v.reverify(&Bce, &w))?, || format!("witness {:?} does not reverify", v.players))?;
    }
    Ok("bce (0,0,1,0); (1,3): 0 - 0 != 1 - 0; (2,3) also violates".into())
}

fn c3() -> Outcome {
    let v = lift(restricted_unanimity())?;
    let g = net(3, &[(1, 2)]);
    let g2 = net(3, &[(1, 2), (1, 3)]);
    let a = to_text(&pff_to_value(&lift(graph_restrict_pff(&v, &g))?));
    let b = to_text(&pff_to_value(&lift(graph_restrict_pff(&v, &g2))?));
    ensure(a.as_bytes() == b.as_bytes(), || "restrictions differ".into())?;
    let w = induced_worth_from_pff(&v);
    expect_eq("bce(g)", lift(bce(&w, &g))?, alloc(&[(0, 1), (0, 1), (1, 1)]))?;
    expect_eq("bce(g')", lift(bce(&w, &g2))?, alloc(&[(1, 3), (1, 3), (1, 3)]))?;
    expect_eq("fce(g)", lift(fce_formula(&w, &g))?, alloc(&[(0, 1), (0, 1), (1, 1)]))?;
    expect_eq("fce(g')", lift(fce_formula(&w, &g2))?, alloc(&[(0, 1), (0, 1), (1, 1)]))?;
    Ok(format!("restrictions byte-identical ({} bytes); bce differs, fce agrees", a.len()))
}

fn c4(suite: &[Instance]) -> Outcome {
    for (k, inst) in suite.iter().enumerate() {
        let out = lift(oracle_solve(&inst.w, &inst.g, OracleAxiom::Bc))?;
        ensure(out.report.consistent && out.report.full_rank, || {
            format!("instance {k}: {:?}", out.report.failures)
        })?;
        expect_eq(&format!("instance {k}"), out.allocation, Some(lift(bce(&inst.w, &inst.g))?))?;
    }
    Ok(format!("{} instances consistent, full rank, equal to bce", suite.len()))
}

fn c5(suite: &[Instance]) -> Outcome {
    let mut forests = 0;
    for (k, inst) in suite.iter().enumerate() {
        let reference = lift(bce(&inst.w, &inst.g))?;
        for f in spanning_forests(&inst.g) {
            forests += 1;
            expect_eq(&format!("instance {k} forest {f}"), lift(bce_with_forest(&inst.w, &inst.g, &f))?, reference.clone())?;
        }
    }
    Ok(format!("{forests} spanning forests over {} networks, zero discrepancies", suite.len()))
}

fn c6() -> Outcome {
    let start = Instant::now();
    let mut summary = Vec::new();
    for n in 3..=6 {
        let w = WorthFunction::hashed(n, 17 + n as u64, HashScope::Global);
        let hashed = HashedRule { seed: 5 };
        let mut rules: Vec<(&str, Box<dyn Payoffs + '_>)> = vec![
            ("bce", Box::new(BceSolver::new(&w))),
            ("fce", FceFormula.bind(&w)),
            ("hashed", hashed.bind(&w)),
        ];
        for (name, rule) in rules.iter_mut() {
            let sweep = lift(sweep_cycle_identity(rule.as_mut(), n))?;
            ensure(sweep.failures.is_empty(), || {
                format!("{name} n={n}: {} failures, first {:?}", sweep.failures.len(), sweep.failures[0])
            })?;
            if n == 6 {
                summary.push(format!("{name}: {} cycles", sweep.cycles));
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    ensure(elapsed < 60.0, || format!("sweep took {elapsed:.1}s"))?;
    Ok(format!("n=3..6 all equal; at n=6 {}; {elapsed:.1}s", summary.join(", ")))
}

fn c7(suite: &[Instance]) -> Outcome {
    let cases: Vec<SuiteCase> = suite
        .iter()
        .enumerate()
        .map(|(k, i)| SuiteCase { name: format!("seeded-{k}"), w: i.w.clone(), g: i.g })
        .collect();
    let rules: [&dyn AllocationRule; 2] = [&Bce, &FceFormula];
    let axioms = [Axiom::Ce, Axiom::Bc, Axiom::F, Axiom::BcPlus, Axiom::Symmetry];
    let sampled = PermutationChoice::Sample { count: 20, seed: SUITE_SEED };
    let report = run_suite(&rules, &cases, &axioms, &sampled, Expectation::Characterized);
    if let Some(f) = report.failures().next() {
        return Err(format!("{} {} on {} failed: {:?}", f.rule, f.axiom, f.case, f.outcome));
    }
    let violated = |rule: &str, axiom: Axiom| {
        report
            .select(rule, axiom)
            .filter(|e| matches!(&e.outcome, Ok(r) if !r.holds()))
            .count()
    };
    let (f_bce, bcplus_bce, bc_fce) = (
        violated("bce", Axiom::F),
        violated("bce", Axiom::BcPlus),
        violated("fce", Axiom::Bc),
    );
    ensure(f_bce > 0 && bcplus_bce > 0 && bc_fce > 0, || {
        format!("missing witnesses: bce/F {f_bce}, bce/BC+ {bcplus_bce}, fce/BC {bc_fce}")
    })?;
    let fce_sym = violated("fce", Axiom::Symmetry) + violated("fce", Axiom::Ce) + violated("fce", Axiom::F);
    ensure(fce_sym == 0, || "fce violates a characterizing axiom".into())?;
    Ok(format!(
        "characterizing axioms hold; witnesses: bce fails F on {f_bce}, BC+ on {bcplus_bce}; fce fails BC on {bc_fce}"
    ))
}

fn c8() -> Outcome {
    let mut rng = random::rng(SUITE_SEED ^ 8);
    let mut tu = 0;
    for n in 2..=5 {
        for _ in 0..15 {
            let v = lift(random::tu_game(&mut rng, n, 10))?;
            let g = lift(random::network(&mut rng, n, 0.6))?;
            let w = WorthFunction::tu(v.clone());
            let b = lift(bce(&w, &g))?;
            expect_eq("myerson", lift(myerson(&v, &g))?, b.clone())?;
            expect_eq("jw", lift(jw_value(&w, &g))?, b.clone())?;
            expect_eq("fce", lift(fce_formula(&w, &g))?, b)?;
            tu += 1;
        }
    }
    let mut pff = 0;
    for n in 2..=5 {
        let rounds = if n == 5 { 4 } else { 10 };
        for _ in 0..rounds {
            let v = lift(random::pff_game(&mut rng, n, 10))?;
            let w = induced_worth_from_pff(&v);
            let g = lift(Network::complete(n))?;
            expect_eq("ef", lift(bce(&w, &g))?, lift(ef_value(&v))?)?;
            pff += 1;
        }
    }
    Ok(format!("{tu} TU instances: bce = myerson = jw = fce; {pff} complete PFF instances: bce = ef"))
}

fn c9(suite: &[Instance]) -> Outcome {
    for (k, inst) in suite.iter().enumerate() {
        let projected = lift(project_worth(&inst.w, &inst.g))?;
        expect_eq(&format!("bce instance {k}"), lift(bce(&projected, &inst.g))?, lift(bce(&inst.w, &inst.g))?)?;
        expect_eq(
            &format!("fce instance {k}"),
            lift(fce_formula(&projected, &inst.g))?,
            lift(fce_formula(&inst.w, &inst.g))?,
        )?;
    }
    let mut rng = random::rng(SUITE_SEED ^ 9);
    let mut pff = 0;
    for n in 2..=5 {
        for _ in 0..8 {
            let v = lift(random::pff_game(&mut rng, n, 10))?;
            let g = lift(random::network(&mut rng, n, 0.6))?;
            let restricted = lift(graph_restrict_pff(&v, &g))?;
            expect_eq(
                "pff restriction",
                lift(bce(&induced_worth_from_pff(&restricted), &g))?,
                lift(bce(&induced_worth_from_pff(&v), &g))?,
            )?;
            pff += 1;
        }
    }
    Ok(format!("{} seeded instances and {pff} PFF games invariant", suite.len()))
}

fn c10() -> Outcome {
    let mut rng = random::rng(SUITE_SEED ^ 10);
    let mut games = 0;
    for k in 0..120 {
        let n = 1 + k % 4;
        let v = lift(random::pff_game(&mut rng, n, 10))?;
        let table = lift(pff_dividends(&v))?;
        expect_eq(&format!("reconstruction {k}"), lift(table.reconstruct())?, v)?;
        games += 1;
    }
    let mut basis = 0;
    for n in 1..=4 {
        let space = lift(PffSpace::get(n))?;
        for key in space.entries() {
            let t = key.coalition();
            let u = lift(PffGame::unanimity(n, t, key.partition()))?;
            let share = ratio(1, t.len() as i64);
            let expected = Allocation::from_vec(
                (1..=n).map(|i| if t.contains(i) { share.clone() } else { int(0) }).collect(),
            );
            expect_eq(&format!("basis {key}"), lift(pff_value(&u))?, expected)?;
            basis += 1;
        }
    }
    Ok(format!("{games} reconstructions exact; {basis} basis games split 1/|T|"))
}

fn c11(suite: &[Instance]) -> Outcome {
    let mut checked = 0;
    for (k, inst) in suite.iter().enumerate().filter(|(_, i)| i.g.link_count() <= 8) {
        let formula = lift(fce_formula(&inst.w, &inst.g))?;
        expect_eq(&format!("direct instance {k}"), lift(fce_direct(&inst.w, &inst.g))?, formula.clone())?;
        let out = lift(oracle_solve(&inst.w, &inst.g, OracleAxiom::F))?;
        ensure(out.report.consistent && out.report.full_rank, || format!("instance {k}: oracle failed"))?;
        expect_eq(&format!("oracle instance {k}"), out.allocation, Some(formula))?;
        checked += 1;
    }
    Ok(format!("{checked} instances: formula = direct = oracle"))
}

fn main() {
    let suite = seeded_suite();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("1 linked beneficiary on two networks", Box::new(c1)),
        ("2 pairwise balanced contributions witness", Box::new(c2)),
        ("3 equal restrictions, different bce", Box::new(c3)),
        ("4 bce equals the BC oracle", Box::new(|| c4(&suite))),
        ("5 forest independence", Box::new(|| c5(&suite))),
        ("6 cycle-sum identity sweep", Box::new(c6)),
        ("7 axiom matrix", Box::new(|| c7(&suite))),
        ("8 coincidences", Box::new(c8)),
        ("9 projection and restriction invariance", Box::new(|| c9(&suite))),
        ("10 dividends", Box::new(c10)),
        ("11 fce cross-implementation", Box::new(|| c11(&suite))),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name} [{secs:.2}s]: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name} [{secs:.2}s]: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
