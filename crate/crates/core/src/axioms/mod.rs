//! Axiom audits, BC residuals and the cycle-sum identity.

mod adversarial;
mod audit;
mod cycles;
mod suite;

pub use adversarial::{ConstantRule, DictatorRule, HashedRule};
pub use audit::{
    audit, bc_residual, check_bc, check_bcplus, check_ce, check_f, check_symmetry, AuditReport,
    Axiom, PermutationChoice, ResidualValue, Witness, EXHAUSTIVE_SYMMETRY_PLAYERS,
};
pub use cycles::{
    cycle_sum_check, sweep_cycle_identity, CycleSum, CycleSweep, CycleTerm, SWEEP_MAX_PLAYERS,
};
pub use suite::{characterizes, run_suite, Expectation, SuiteCase, SuiteEntry, SuiteReport};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allocation;
    use crate::games::{Allocation, HashScope, WorthFunction};
    use crate::net::{Coalition, Network, Permutation, Player};
    use crate::rational::{int, zero};
    use crate::values::{AllocationRule, Bce, FceFormula};

    fn net(n: usize, links: &[(Player, Player)]) -> Network {
        Network::from_links(n, links.iter().copied()).unwrap()
    }

    fn set(players: &[Player]) -> Coalition {
        players.iter().copied().collect()
    }

    fn third_party(n: usize) -> WorthFunction {
        WorthFunction::linked_beneficiary(n, 3, (1, 2)).unwrap()
    }

    #[test]
    fn bcplus_fails_on_pairs_not_linked() {
        let w = third_party(4);
        let g = net(4, &[(1, 2), (1, 4), (3, 4)]);
        let report = audit(&Bce, &w, &g, Axiom::BcPlus, &PermutationChoice::All).unwrap();
        assert_eq!(report.checked, 6);
        // Player 2 is as indispensable to 3's dollar as player 1 is.
        let pairs: Vec<_> = report.violations.iter().map(|v| v.players.clone()).collect();
        assert_eq!(pairs, vec![vec![1, 3], vec![2, 3]]);
        let v = &report.violations[0];
        assert_eq!((v.lhs.clone(), v.rhs.clone()), (zero(), int(1)));
        assert_eq!(v.coalitions, vec![set(&[1, 2, 3, 4]), set(&[1, 2, 4]), set(&[3, 4])]);
        assert!(report.violations.iter().all(|v| v.reverify(&Bce, &w).unwrap()));
        let bc = audit(&Bce, &w, &g, Axiom::Bc, &PermutationChoice::All).unwrap();
        assert!(bc.holds());
    }

    #[test]
    fn bce_is_unfair_and_fce_unbalanced() {
        let w = third_party(3);
        let g = net(3, &[(1, 2), (1, 3)]);
        let f = audit(&Bce, &w, &g, Axiom::F, &PermutationChoice::All).unwrap();
        assert!(!f.holds());
        assert!(f.violations.iter().all(|v| v.reverify(&Bce, &w).unwrap()));
        let bc = audit(&FceFormula, &w, &g, Axiom::Bc, &PermutationChoice::All).unwrap();
        assert!(!bc.holds());
        assert!(bc.violations.iter().all(|v| v.reverify(&FceFormula, &w).unwrap()));
        for axiom in [Axiom::Ce, Axiom::F, Axiom::Symmetry] {
            assert!(audit(&FceFormula, &w, &g, axiom, &PermutationChoice::All).unwrap().holds());
        }
        for axiom in [Axiom::Ce, Axiom::Bc, Axiom::Symmetry] {
            assert!(audit(&Bce, &w, &g, axiom, &PermutationChoice::All).unwrap().holds());
        }
    }

    #[test]
    fn constant_rules() {
        let w = WorthFunction::table(2, [(set(&[1, 2]), net(2, &[(1, 2)]), int(1))]).unwrap();
        let g = net(2, &[(1, 2)]);
        let zero_rule = ConstantRule { payoffs: Allocation::zeros(2) };
        let ce = audit(&zero_rule, &w, &g, Axiom::Ce, &PermutationChoice::All).unwrap();
        assert_eq!(ce.violations.len(), 1);
        assert!(ce.violations[0].reverify(&zero_rule, &w).unwrap());
        let ce = audit(&zero_rule, &WorthFunction::zero(2), &g, Axiom::Ce, &PermutationChoice::All).unwrap();
        assert!(ce.holds());

        let rule = ConstantRule { payoffs: allocation![(3, 1), (-1, 2)] };
        let mut bound = rule.bind(&w);
        let r = bc_residual(bound.as_mut(), &g, 1, 2, Coalition::EMPTY).unwrap();
        assert_eq!(r.value, zero());
        assert!(bc_residual(bound.as_mut(), &g, 1, 2, set(&[1])).is_err());
    }

    #[test]
    fn dictator_breaks_symmetry() {
        let w = WorthFunction::hashed(3, 1, HashScope::Internal);
        let g = Network::complete(3).unwrap();
        let rule = DictatorRule { player: 1 };
        let swap = Permutation::transposition(3, 1, 2).unwrap();
        let report =
            check_symmetry(&rule, &w, &g, &PermutationChoice::Given(vec![swap])).unwrap();
        assert!(!report.holds());
        assert!(report.violations.iter().all(|v| v.reverify(&rule, &w).unwrap()));
        let identity = PermutationChoice::Given(vec![Permutation::identity(3)]);
        assert!(check_symmetry(&rule, &w, &g, &identity).unwrap().holds());
    }

    #[test]
    fn sampled_symmetry_for_bce() {
        let w = WorthFunction::hashed(5, 8, HashScope::Internal);
        let g = net(5, &[(1, 2), (2, 3), (3, 1), (4, 5)]);
        let choice = PermutationChoice::Sample { count: 5, seed: 1 };
        let report = check_symmetry(&Bce, &w, &g, &choice).unwrap();
        assert_eq!(report.checked, 25);
        assert!(report.holds());
    }

    #[test]
    fn suite_exit_codes() {
        let cases = vec![SuiteCase {
            name: "path".into(),
            w: third_party(4),
            g: net(4, &[(1, 2), (1, 4), (3, 4)]),
        }];
        let rules: Vec<&dyn AllocationRule> = vec![&Bce];
        let sample = PermutationChoice::Sample { count: 4, seed: 0 };
        let report = run_suite(&rules, &cases, &Axiom::ALL, &sample, Expectation::Characterized);
        assert_eq!(report.entries.len(), 5);
        assert_eq!(report.exit_code(), 0);
        let strict = run_suite(&rules, &cases, &Axiom::ALL, &sample, Expectation::AllRequested);
        assert_eq!(strict.exit_code(), 1);
        assert!(run_suite(&rules, &[], &Axiom::ALL, &sample, Expectation::AllRequested)
            .entries
            .is_empty());
    }
}
