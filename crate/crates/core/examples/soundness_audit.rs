//! Numeric audit of a saturated fixpoint.
//!
//! Samples coordinate models of the hypotheses and evaluates every derived
//! fact in each of them. A fact planted by hand shows what a violation looks
//! like.

use std::path::Path;

use geodd::catalog;
use geodd::engine::EngineConfig;
use geodd::fof::FsLoader;
use geodd::oracle::{check_facts, check_fixpoint, sample_models, ConstructionRecipe};
use geodd::{Fact, PointId, PredicateKind, Problem};

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "theorem2.p".into());
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("problems").join(&name);
    let problem = Problem::load(&path, &FsLoader::from_env()).expect("problem loads");
    let fixpoint = problem.saturate(&catalog::year7(), &EngineConfig::default()).expect("within limits");

    let recipe = ConstructionRecipe::for_hypotheses(&problem.hypotheses, &problem.points, 7);
    println!("{name}: {} facts, recipe {:?}", fixpoint.db.len(), recipe.kind);
    let models = sample_models(&recipe, 50).expect("models");
    let violations = check_fixpoint(&models, &fixpoint);
    println!("{} models, {} violations", models.len(), violations.len());

    // AB = AC is not a consequence of any corpus hypothesis
    let bogus = Fact::new(PredicateKind::Cong, &[PointId(0), PointId(1), PointId(0), PointId(2)]).unwrap();
    let hits = check_facts(&models, &[bogus]);
    println!("planted {}: false in {} of {} models", fixpoint.display_fact(&bogus), hits.len(), models.len());
    if let Some(m) = hits.first() {
        print!("first counter-model:\n{}", models[m.model].print(&problem.points));
    }
}
