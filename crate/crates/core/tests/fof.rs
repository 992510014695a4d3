mod common;

use std::path::Path;

use common::problems_dir;
use geodd::catalog::{self, YEAR7_FILE};
use geodd::engine::{compile_rule, RuleSource};
use geodd::fof::{parse_units, print_unit, Atom, QuantifiedHorn, Role, SourceOrigin, SourceUnit, Term};
use geodd::geometry::PredicateKind;
use proptest::prelude::*;

fn corpus() -> Vec<(String, String)> {
    let mut files = vec![(YEAR7_FILE.to_string(), catalog::embedded_file(YEAR7_FILE).unwrap().to_string())];
    for name in common::CORPUS {
        files.push((name.to_string(), std::fs::read_to_string(problems_dir().join(name)).unwrap()));
    }
    files
}

fn reparse(u: &SourceUnit) -> SourceUnit {
    let text = print_unit(u);
    let mut back = parse_units(&text, Path::new("printed")).unwrap().units;
    assert_eq!(back.len(), 1, "{text}");
    back.pop().unwrap()
}

#[test]
fn corpus_parses_and_round_trips() {
    let mut total = 0;
    for (name, text) in corpus() {
        let parsed = parse_units(&text, Path::new(&name)).unwrap();
        for u in &parsed.units {
            let once = reparse(u);
            assert!(once.same_structure(u), "{name}: {}", u.name);
            assert!(reparse(&once).same_structure(&once));
        }
        total += parsed.units.len();
    }
    assert!(total >= 20, "{total}");
}

#[test]
fn catalog_compiles() {
    let text = catalog::embedded_file(YEAR7_FILE).unwrap();
    let units = parse_units(text, Path::new(YEAR7_FILE)).unwrap().units;
    let rules: Vec<_> = units.iter().map(|u| compile_rule(u, RuleSource::Builtin, true).unwrap()).collect();
    assert_eq!(rules.len(), 21);
    let d40 = rules.iter().find(|r| r.label() == "D40").unwrap();
    let enumerated: Vec<&str> = d40.enum_vars.iter().map(|&v| d40.vars[v].as_str()).collect();
    assert_eq!(enumerated, ["P", "Q"]);
    let d58 = rules.iter().find(|r| r.label() == "D58").unwrap();
    assert_eq!(d58.ndg_premises.len(), 1);
    assert_eq!(d58.ndg_premises[0].kind, PredicateKind::Coll);
    for r in rules.iter().filter(|r| r.label() != "D40") {
        assert!(r.enum_vars.is_empty(), "{}", r.name);
    }
}

#[test]
fn enumeration_can_be_refused() {
    let text = catalog::embedded_file(YEAR7_FILE).unwrap();
    let units = parse_units(text, Path::new(YEAR7_FILE)).unwrap().units;
    let d40 = units.iter().find(|u| u.name == "ruleD40").unwrap();
    assert!(compile_rule(d40, RuleSource::Builtin, false).is_err());
}

const VARS: [&str; 8] = ["A", "B", "C", "D", "E", "F", "P", "Q"];

fn arb_atom() -> impl Strategy<Value = Atom> {
    (
        prop::sample::select(PredicateKind::ALL.to_vec()),
        prop::collection::vec(prop::sample::select(VARS.to_vec()), 8),
    )
        .prop_map(|(k, vs)| Atom {
            predicate: k,
            args: vs[..k.arity()].iter().map(|v| Term::Var(v.to_string())).collect(),
        })
}

fn arb_unit() -> impl Strategy<Value = SourceUnit> {
    (
        "[a-z][a-zA-Z0-9_]{0,8}",
        prop::collection::vec(arb_atom(), 0..4),
        prop::collection::vec(arb_atom(), 0..2),
        prop::collection::vec(arb_atom(), 1..3),
    )
        .prop_map(|(name, premises, ndgs, conclusions)| {
            let mut variables: Vec<String> = Vec::new();
            for a in premises.iter().chain(&ndgs).chain(&conclusions) {
                for v in a.vars() {
                    if !variables.iter().any(|x| x == v) {
                        variables.push(v.to_string());
                    }
                }
            }
            let ndg_premises = if premises.is_empty() { vec![] } else { ndgs };
            SourceUnit {
                name,
                role: Role::Axiom,
                formula: QuantifiedHorn {
                    variables,
                    premises,
                    ndg_premises,
                    conclusions,
                },
                origin: SourceOrigin::default(),
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn print_parse_round_trip(u in arb_unit()) {
        let back = reparse(&u);
        prop_assert!(back.same_structure(&u), "{}", print_unit(&u));
    }
}
