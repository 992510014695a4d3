//! Proving with a rule set written inline.
//!
//! A reduced catalog is compiled from FOF text and extended with one extra
//! rule. Any rule without a built-in prose template needs one supplied.

use std::path::Path;

use geodd::catalog::{self, rules_from_units};
use geodd::engine::{EngineConfig, ProofResult, RuleSource};
use geodd::fof::{parse_units, FsLoader};
use geodd::render::{render_prose, render_table, TemplateCatalog};
use geodd::{check_trace, Problem};

// Opposite sides of a parallelogram, stated directly as a rule.
const EXTRA: &str = "\
fof(ruleX1,axiom,(![A,B,C,D] : (parallelogram(A,B,C,D) => cong(A,B,C,D)))).
";

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("problems/theorem1.p");
    let problem = Problem::load(&path, &FsLoader::from_env()).expect("problem loads");
    let config = EngineConfig::default();

    let mut rules = catalog::select(&catalog::year7(), &["R1a", "R1b"]);
    let only_defs = problem.prove(&rules, &config).expect("within limits");
    println!("definitions only: proved = {}", only_defs.trace().is_some());
    if let ProofResult::NotProved { fixpoint, .. } = &only_defs {
        println!("  saturated at {} facts", fixpoint.db.len());
    }

    let units = parse_units(EXTRA, Path::new("inline")).expect("parses").units;
    rules.extend(rules_from_units(&units, RuleSource::File).expect("compiles"));
    let result = problem.prove(&rules, &config).expect("within limits");
    let Some(trace) = result.trace() else {
        println!("still not proved");
        return;
    };
    check_trace(trace, &rules).expect("trace checks");
    print!("{}", render_table(trace));

    let templates = TemplateCatalog::builtin()
        .with("X1", "Since {premises}, its opposite sides give {conclusions}.")
        .for_rules(&rules)
        .expect("every rule has a template");
    print!("{}", render_prose(trace, &templates).expect("prose"));
}
