//! Diagonals of a rectangle are equal, proved with a lemma.
//!
//! Proves that opposite sides of a parallelogram are equal, registers that
//! theorem as a single rule, and uses it for the rectangle.

use std::path::Path;

use geodd::catalog;
use geodd::engine::{EngineConfig, ProofResult};
use geodd::fof::FsLoader;
use geodd::proof::{check_trace, register_lemma};
use geodd::render::render_table;
use geodd::Problem;

fn load(name: &str) -> Problem {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("problems").join(name);
    Problem::load(&path, &FsLoader::from_env()).expect("problem loads")
}

fn main() {
    let config = EngineConfig::default();
    let mut rules = catalog::year7();

    let th1 = load("theorem1.p");
    let ProofResult::Proved { trace, .. } = th1.prove(&rules, &config).expect("within limits") else {
        panic!("theorem1 not proved");
    };
    let lemma = register_lemma("theorem1", &th1.hypotheses, &th1.goals, &trace, &rules).expect("fresh name");
    println!("lemma: {lemma}");
    rules.push(lemma);

    let th2 = load("theorem2.p");
    let result = th2.prove(&rules, &config).expect("within limits");
    let trace = result.trace().expect("theorem2 proved");
    print!("{}", render_table(trace));
    match check_trace(trace, &rules) {
        Ok(()) => println!("trace checked"),
        Err(d) => println!("trace rejected: {d}"),
    }
}
