mod common;

use common::{fact, problem};
use geodd::catalog;
use geodd::engine::{EngineConfig, ProofResult};
use geodd::error::RuleError;
use geodd::geometry::{PredicateKind::*, Symmetries};
use geodd::proof::{check_trace, check_trace_with, collect_ndgs, register_lemma, verify_trace, Origin};
use geodd::{ProofTrace, Rule};

fn proved(name: &str, rules: &[Rule], cfg: &EngineConfig) -> ProofTrace {
    let p = problem(name);
    match p.prove(rules, cfg).unwrap() {
        ProofResult::Proved { trace, .. } => trace,
        ProofResult::NotProved { missing, .. } => panic!("{name}: missing {missing:?}"),
    }
}

fn theorem1() -> ProofTrace {
    proved("theorem1.p", &catalog::year7(), &EngineConfig::default())
}

fn with_lemma() -> Vec<Rule> {
    let mut rules = catalog::year7();
    let p = problem("theorem1.p");
    let lemma = register_lemma("theorem1", &p.hypotheses, &p.goals, &theorem1(), &rules).unwrap();
    rules.push(lemma);
    rules
}

fn step_with(trace: &ProofTrace, label: &str) -> usize {
    trace.steps.iter().position(|s| s.rule == label).unwrap()
}

#[test]
fn produced_traces_verify() {
    let year7 = catalog::year7();
    for cfg in [
        EngineConfig::default(),
        EngineConfig {
            all_pairs_enumeration: true,
            ..Default::default()
        },
    ] {
        for name in ["theorem1.p", "theorem2.p"] {
            let t = proved(name, &year7, &cfg);
            check_trace(&t, &year7).unwrap_or_else(|d| panic!("{name}: {d}"));
        }
    }
    let exchange = EngineConfig {
        eqangle_exchange: true,
        ..Default::default()
    };
    let t = proved("theorem1.p", &year7, &exchange);
    check_trace_with(&t, &year7, Symmetries::with_eqangle_exchange()).unwrap();

    let rules = with_lemma();
    let t = proved("theorem2.p", &rules, &EngineConfig::default());
    assert!(t.labels().contains(&"theorem1"));
    check_trace(&t, &rules).unwrap();
}

#[test]
fn checker_needs_the_rule() {
    let t = theorem1();
    let rules = catalog::without(&catalog::year7(), &["D58"]);
    assert!(!verify_trace(&t, &rules));
}

#[test]
fn wrong_rule_label_is_rejected() {
    let mut t = theorem1();
    let i = step_with(&t, "D40");
    t.steps[i].rule = "D58".into();
    let d = check_trace(&t, &catalog::year7()).unwrap_err();
    assert_eq!(d.step, Some(i));
}

#[test]
fn missing_premise_is_rejected() {
    let mut t = theorem1();
    let i = step_with(&t, "D61");
    t.steps[i].used_facts.pop();
    assert!(!verify_trace(&t, &catalog::year7()));
}

#[test]
fn reordered_dependency_is_rejected() {
    let mut t = theorem1();
    let last = t.steps.len() - 1;
    t.steps.swap(0, last);
    assert!(!verify_trace(&t, &catalog::year7()));
}

#[test]
fn forged_goal_is_rejected() {
    let mut t = theorem1();
    t.goals.push(fact(Cong, &[0, 1, 0, 2]));
    let d = check_trace(&t, &catalog::year7()).unwrap_err();
    assert_eq!(d.step, None);
}

#[test]
fn bad_ndg_is_rejected() {
    let year7 = catalog::year7();
    let mut t = theorem1();
    let i = step_with(&t, "D58");
    t.steps[i].ndgs = vec![fact(Coll, &[0, 1, 3])];
    assert!(!verify_trace(&t, &year7));
    t.steps[i].ndgs.clear();
    assert!(!verify_trace(&t, &year7));
}

#[test]
fn forged_conclusion_is_rejected() {
    let mut t = theorem1();
    let i = step_with(&t, "R4a");
    t.steps[i].new_facts.push(fact(Cong, &[0, 1, 0, 2]));
    assert!(!verify_trace(&t, &catalog::year7()));
}

#[test]
fn forged_trivial_step_is_rejected() {
    let mut t = theorem1();
    let i = t.steps.iter().position(|s| s.is_trivial()).unwrap();
    t.steps[i].new_facts = vec![fact(Cong, &[0, 1, 2, 3])];
    assert!(!verify_trace(&t, &catalog::year7()));
}

#[test]
fn wrong_substitution_is_rejected() {
    let mut t = theorem1();
    let i = step_with(&t, "D40");
    let (_, p) = &mut t.steps[i].substitution[0];
    p.0 = (p.0 + 1) % 4;
    assert!(!verify_trace(&t, &catalog::year7()));
}

#[test]
fn ndgs_of_traces() {
    let t = theorem1();
    assert_eq!(t.ndgs, vec![fact(Coll, &[0, 1, 2])]);
    assert_eq!(collect_ndgs(&t), t.ndgs);
    let t2 = proved("theorem2.p", &catalog::year7(), &EngineConfig::default());
    assert!(t2.ndgs.contains(&fact(Coll, &[0, 1, 2])));
}

#[test]
fn lemma_carries_the_proviso() {
    let rules = with_lemma();
    let lemma = rules.last().unwrap();
    assert_eq!(lemma.premises.len(), 1);
    assert_eq!(lemma.conclusions.len(), 2);
    assert_eq!(lemma.ndg_premises.len(), 1);
    assert_eq!(lemma.ndg_premises[0].kind, Coll);
}

#[test]
fn lemma_name_collision() {
    let year7 = catalog::year7();
    let p = problem("theorem1.p");
    let t = theorem1();
    for name in ["R8", "ruleR8"] {
        let err = register_lemma(name, &p.hypotheses, &p.goals, &t, &year7).unwrap_err();
        assert!(matches!(err, RuleError::NameCollision(_)));
    }
}

#[test]
fn lemma_mode_has_injected_reflexive_side() {
    let rules = with_lemma();
    let p = problem("theorem2.p");
    let r = p.prove(&rules, &EngineConfig::default()).unwrap();
    let fp = r.fixpoint();
    for f in [fact(Cong, &[0, 1, 0, 1]), fact(Cong, &[1, 2, 1, 2])] {
        let id = fp.query(&f).expect("reflexive fact present");
        assert!(matches!(fp.db.provenance(id).origin, Origin::TrivialInjected));
    }
}
