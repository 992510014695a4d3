//! One proof in every output format.
//!
//! The structured form is parsed back and re-rendered to show the round trip.

use std::path::Path;

use geodd::catalog::{self, catalog_identity};
use geodd::engine::EngineConfig;
use geodd::fof::FsLoader;
use geodd::render::{config_hash, parse_structured, render_prose, render_structured, render_table, TemplateCatalog, TraceMeta};
use geodd::Problem;

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("problems/theorem2.p");
    let problem = Problem::load(&path, &FsLoader::from_env()).expect("problem loads");
    let rules = catalog::year7();
    let config = EngineConfig::default();
    let result = problem.prove(&rules, &config).expect("within limits");
    let trace = result.trace().expect("proved");

    println!("== table");
    print!("{}", render_table(trace));
    println!("\n== prose");
    let templates = TemplateCatalog::builtin().for_rules(&rules).expect("templates");
    print!("{}", render_prose(trace, &templates).expect("prose"));

    let meta = TraceMeta {
        catalog: catalog_identity(&rules),
        config: config_hash(&config),
    };
    let json = render_structured(trace, &meta);
    println!("\n== structured ({} bytes)", json.len());
    println!("{json}");
    let (back, _) = parse_structured(&json).expect("parses");
    assert_eq!(render_table(&back), render_table(trace));
    println!("round trip ok");
}
