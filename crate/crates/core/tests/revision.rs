mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spacerev_core::consistency::{is_consistent, Budget, BudgetKind, ConsistencyError};
use spacerev_core::flood::{compile, generate, GeneratorParams, Layout};
use spacerev_core::kb::{Atom, Clause, ClauseId, KnowledgeBase, Literal, Source};
use spacerev_core::revision::{
    compare, contained_revision, global_rdr, Regime, RevisionConfig, RevisionError, Verdict,
};
use spacerev_core::space::{SeedPolicy, SpaceGraph};

use common::{contained_instance, random_graph, straddling_instance, wide_instance};

fn consistent(kb: &KnowledgeBase) -> bool {
    is_consistent(&kb.clauses().iter().collect::<Vec<&Clause>>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn contained_equals_global_when_conflicts_fit(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s, config) = contained_instance(&mut rng);
        let kb = compile(&s);
        let local = contained_revision(&kb, s.graph(), &config).unwrap();
        let global = global_rdr(&kb, &config.budget, config.k_r).unwrap();
        prop_assert_eq!(&local.global_hitting_sets, &global.global_hitting_sets);
        prop_assert_eq!(&local.chosen, &global.chosen);
        prop_assert!(consistent(&local.revised_kb));
        prop_assert!(!local.conjecture_verified);
    }

    #[test]
    fn worker_count_does_not_change_the_result(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s, config) = contained_instance(&mut rng);
        let kb = compile(&s);
        let one = contained_revision(&kb, s.graph(), &config).unwrap();
        let many =
            contained_revision(&kb, s.graph(), &RevisionConfig { jobs: 4, ..config }).unwrap();
        prop_assert_eq!(one.global_hitting_sets, many.global_hitting_sets);
        prop_assert_eq!(one.regime_per_block, many.regime_per_block);
        prop_assert_eq!(one.diagnostics.conflicts, many.diagnostics.conflicts);
    }

    #[test]
    fn random_seeds_reach_the_same_repair(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s, config) = contained_instance(&mut rng);
        let kb = compile(&s);
        let det = contained_revision(&kb, s.graph(), &config).unwrap();
        let config = RevisionConfig { seed_policy: SeedPolicy::Random(seed), ..config };
        let rnd = contained_revision(&kb, s.graph(), &config).unwrap();
        prop_assert_eq!(det.global_hitting_sets, rnd.global_hitting_sets);
    }

    #[test]
    fn base_pass_drops_exactly_earlier_owned_clauses(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s, config) = contained_instance(&mut rng);
        let kb = compile(&s);
        let r = contained_revision(&kb, s.graph(), &config).unwrap();
        let base = r.diagnostics.base.as_ref().unwrap();
        for t in &r.diagnostics.block_traces {
            let window = base.window(t.block).unwrap();
            let expected: BTreeSet<ClauseId> =
                kb.clauses_within(&window).iter().map(|c| c.id()).collect();
            let got: BTreeSet<ClauseId> = t.working.iter().chain(&t.removed).copied().collect();
            prop_assert_eq!(got, expected);
            for id in &t.removed {
                let owners: BTreeSet<Option<usize>> = kb
                    .get(*id)
                    .unwrap()
                    .footprint()
                    .iter()
                    .map(|&p| base.block_of(p))
                    .collect();
                prop_assert_eq!(owners.len(), 1);
                prop_assert!(owners.into_iter().next().unwrap().unwrap() < t.block);
            }
        }
    }
}

#[test]
fn consistent_scenario_needs_no_repair() {
    let p = GeneratorParams {
        layout: Layout::Grid { rows: 4, cols: 4 },
        planted_conflict_size: None,
        ..Default::default()
    };
    let s = generate(&p, 11).unwrap();
    let kb = compile(&s);
    let r = contained_revision(&kb, s.graph(), &RevisionConfig::default()).unwrap();
    assert!(r.chosen.is_empty());
    assert_eq!(r.revised_kb, kb);
    assert!(r
        .regime_per_block
        .values()
        .all(|&g| g == Regime::SpaceIndependent));
    assert_eq!(r.h0.d_c, 0);
    assert!(r.h0.holds);
    assert_eq!(r.shifts_used, 16);
}

#[test]
fn straddling_conflict_found_only_by_a_shift() {
    let (s, config) = straddling_instance();
    let kb = compile(&s);
    let r = contained_revision(&kb, s.graph(), &config).unwrap();
    let base = r.diagnostics.base.as_ref().unwrap();
    assert_eq!(base.blocks().len(), 2);
    assert_eq!(r.diagnostics.base_pass_conflicts, 0);
    assert!(r.diagnostics.shift_pass_conflicts >= 1);
    assert!(!r.chosen.is_empty());
    let global = global_rdr(&kb, &config.budget, config.k_r).unwrap();
    assert_eq!(r.chosen, global.chosen);
    assert_eq!(r.global_hitting_sets, global.global_hitting_sets);
}

#[test]
fn wide_conflict_is_flagged() {
    for seed in 0..5 {
        let (s, config) = wide_instance(seed);
        let kb = compile(&s);
        let cmp = compare(&kb, s.graph(), &config).unwrap();
        assert_eq!(
            cmp.verdict,
            Verdict::Divergent {
                widest: 3,
                thickness: 1
            },
            "seed {seed}"
        );
        assert!(!cmp.contained.conjecture_verified);
        assert!(!cmp.contained_consistent);
        assert!(cmp.contained.chosen.is_empty());
    }
}

#[test]
fn compare_verifies_contained_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..5 {
        let (s, config) = contained_instance(&mut rng);
        let kb = compile(&s);
        let cmp = compare(&kb, s.graph(), &config).unwrap();
        assert_eq!(cmp.verdict, Verdict::Equal);
        assert!(cmp.contained.conjecture_verified);
    }
}

#[test]
fn protected_only_conflict_is_unrepairable() {
    let g = Arc::new(SpaceGraph::path(3));
    let p = || Atom::new("p", 1);
    let kb = KnowledgeBase::new(
        g.clone(),
        vec![
            Clause::new(ClauseId(0), Source::S2, [Literal::pos(p())]).unwrap(),
            Clause::new(ClauseId(1), Source::S2, [Literal::neg(p())]).unwrap(),
        ],
    )
    .unwrap();
    let err = contained_revision(&kb, &g, &RevisionConfig::default()).unwrap_err();
    assert!(matches!(err, RevisionError::UnrepairableConflict(_)));
}

#[test]
fn budget_overrun_is_an_error() {
    let p = GeneratorParams {
        layout: Layout::Path(9),
        planted_conflict_size: Some(2),
        ..Default::default()
    };
    let s = generate(&p, 1).unwrap();
    let kb = compile(&s);
    let config = RevisionConfig {
        k: 2,
        kprime: 4,
        budget: Budget::with_cardinality(3),
        ..Default::default()
    };
    let err = contained_revision(&kb, s.graph(), &config).unwrap_err();
    assert_eq!(
        err,
        RevisionError::Consistency(ConsistencyError::BudgetExceeded(BudgetKind::Cardinality(3)))
    );
}

#[test]
fn general_graphs_warn_about_the_heuristic() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let g = Arc::new(random_graph(&mut rng, 8, 0.4));
    let kb = KnowledgeBase::new(
        g.clone(),
        vec![Clause::new(ClauseId(0), Source::S1, [Literal::pos(Atom::new("p", 0))]).unwrap()],
    )
    .unwrap();
    let r = contained_revision(&kb, &g, &RevisionConfig::default()).unwrap();
    assert!(r.warnings.iter().any(|w| w.contains("heuristic")));
}

#[test]
fn h0_gate_boundary() {
    use spacerev_core::revision::check_h0;
    for d_c in 0..10 {
        assert!(check_h0(d_c, 3 * d_c).holds);
        assert!(!check_h0(d_c + 1, 3 * d_c + 2).holds);
    }
}
