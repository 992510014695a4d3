//! Opposite sides of a parallelogram are equal.
//!
//! Proves the conjecture with the embedded catalog and prints the proof as a
//! table and as prose.

use std::path::Path;
use std::time::Instant;

use geodd::catalog;
use geodd::engine::{EngineConfig, ProofResult};
use geodd::fof::FsLoader;
use geodd::render::{render_prose, render_table, TemplateCatalog};
use geodd::Problem;

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("problems/theorem1.p");
    let problem = Problem::load(&path, &FsLoader::from_env()).expect("problem loads");
    let rules = catalog::year7();

    let started = Instant::now();
    let result = problem.prove(&rules, &EngineConfig::default()).expect("within limits");
    let elapsed = started.elapsed();

    let ProofResult::Proved { trace, fixpoint } = result else {
        panic!("not proved");
    };
    println!("proved in {elapsed:?}, {} facts", fixpoint.db.len());
    println!();
    print!("{}", render_table(&trace));
    println!();
    let templates = TemplateCatalog::builtin().for_rules(&rules).expect("templates");
    print!("{}", render_prose(&trace, &templates).expect("prose"));
}
