mod common;

use std::sync::OnceLock;

use common::truth::{self, Pt};
use common::{fact, problem};
use geodd::catalog;
use geodd::engine::EngineConfig;
use geodd::error::OracleError;
use geodd::geometry::{Fact, PointId, PredicateKind::*, Symmetries};
use geodd::oracle::{
    admissible, check_facts, check_fixpoint, eval_fact, sample_model, sample_models, ConstructionRecipe, Model,
    RecipeKind,
};
use geodd::proof::{Origin, Provenance};
use geodd::Fixpoint;
use proptest::prelude::*;

const MODELS: usize = 100;
const SEED: u64 = 0x5EED;

fn coords(m: &Model) -> impl Fn(usize) -> Pt + '_ {
    |i| {
        let (x, y) = m.coords[&PointId(i as u16)];
        [x, y]
    }
}

fn audit(name: &str) -> (Fixpoint, Vec<Model>) {
    let p = problem(name);
    let fp = p.saturate(&catalog::year7(), &EngineConfig::default()).unwrap();
    let recipe = ConstructionRecipe::for_hypotheses(&p.hypotheses, &p.points, SEED);
    assert_ne!(recipe.kind, RecipeKind::FreePoints);
    let models = sample_models(&recipe, MODELS).unwrap();
    (fp, models)
}

#[test]
fn fixpoints_hold_on_recipe_models() {
    for name in ["theorem1.p", "theorem2.p"] {
        let (fp, models) = audit(name);
        assert!(check_fixpoint(&models, &fp).is_empty(), "{name}");
        for m in &models {
            for &h in &fp.hypotheses {
                assert_eq!(truth::holds(fp.db.fact(h), coords(m)), Some(true));
            }
            for f in fp.db.facts() {
                assert_eq!(truth::holds(f, coords(m)), Some(true), "{name}: {}", fp.display_fact(f));
            }
        }
    }
}

#[test]
fn planted_fact_is_the_only_violation() {
    let (mut fp, models) = audit("theorem1.p");
    let planted = fact(Cong, &[0, 1, 0, 2]);
    let prov = Provenance {
        origin: Origin::Hypothesis,
        premises: vec![],
        ndgs: vec![],
        firing: 0,
    };
    fp.db.insert(planted, prov);
    let v = check_fixpoint(&models, &fp);
    assert!(!v.is_empty());
    assert!(v.iter().all(|v| v.fact == planted.canonical()));
}

#[test]
fn false_conjecture_fails_on_a_model() {
    let p = problem("false_conjecture.p");
    let recipe = ConstructionRecipe::for_hypotheses(&p.hypotheses, &p.points, SEED);
    let m = sample_model(&recipe).unwrap();
    assert!(admissible(&m, &p.hypotheses, &[fact(Coll, &[0, 1, 2])]));
    assert!(!eval_fact(&m, &p.goals[0]).unwrap());
    assert_eq!(truth::holds(&p.goals[0], coords(&m)), Some(false));
    assert_eq!(check_facts(&[m], &p.goals).len(), 1);
}

#[test]
fn evaluation_errors() {
    let m = Model::new().with(PointId(0), 0.0, 0.0).with(PointId(1), 1.0, 0.0);
    assert!(matches!(eval_fact(&m, &fact(Coll, &[0, 1, 2])), Err(OracleError::MissingPoint(_))));
    let m = m.with(PointId(2), 0.0, 0.0).with(PointId(3), 2.0, 2.0);
    // A and C coincide: line AC has no direction
    let f = Fact::new(Para, &[PointId(0), PointId(2), PointId(1), PointId(3)]).unwrap();
    assert!(matches!(eval_fact(&m, &f), Err(OracleError::ZeroLength(_))));
}

#[test]
fn model_file_round_trip() {
    let p = problem("theorem1.p");
    let m = sample_model(&ConstructionRecipe::new(RecipeKind::Parallelogram, &p.points, 7)).unwrap();
    let back = Model::parse(&m.print(&p.points), &p.points).unwrap();
    assert_eq!(back, m);
    assert!(matches!(
        Model::parse("A 1 2\nZ 0 0\n", &p.points),
        Err(OracleError::ModelFile { line: 2, .. })
    ));
}

#[test]
fn eqangle_ignores_segment_direction() {
    let recipe = ConstructionRecipe {
        kind: RecipeKind::FreePoints,
        names: (0..8).map(|i| i.to_string()).collect(),
        seed: 3,
        margin: 1e-3,
    };
    let (fp, models) = audit("theorem1.p");
    for f in fp.db.facts().iter().filter(|f| f.kind() == EqAngle) {
        let a = f.args();
        for flip in 0..16u32 {
            let mut b = a.to_vec();
            for line in 0..4 {
                if flip & (1 << line) != 0 {
                    b.swap(2 * line, 2 * line + 1);
                }
            }
            let g = Fact::raw(EqAngle, &b).unwrap();
            for m in &models[..5] {
                assert_eq!(eval_fact(m, f).unwrap(), eval_fact(m, &g).unwrap());
            }
        }
    }
    // and a generic (false) configuration
    let m = sample_model(&recipe).unwrap();
    let ids: Vec<PointId> = (0..8).map(PointId).collect();
    let f = Fact::raw(EqAngle, &ids).unwrap();
    let g = Fact::raw(EqAngle, &[ids[1], ids[0], ids[2], ids[3], ids[4], ids[5], ids[7], ids[6]]).unwrap();
    assert_eq!(eval_fact(&m, &f).unwrap(), eval_fact(&m, &g).unwrap());
}

/// True facts (rectangle fixpoint) paired with rectangle models.
fn true_pool() -> &'static (Vec<Fact>, Vec<Model>) {
    static POOL: OnceLock<(Vec<Fact>, Vec<Model>)> = OnceLock::new();
    POOL.get_or_init(|| {
        let (fp, models) = audit("theorem2.p");
        (fp.db.facts().to_vec(), models)
    })
}

fn check_orbit(f: &Fact, m: &Model, sym: &Symmetries) -> Result<(), TestCaseError> {
    let want = eval_fact(m, f).unwrap();
    prop_assert_eq!(truth::holds(f, coords(m)), Some(want));
    for g in sym.orbit(f) {
        prop_assert_eq!(eval_fact(m, &g).unwrap(), want);
        prop_assert_eq!(truth::holds(&g, coords(m)), Some(want));
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn symmetries_preserve_truth(
        true_case in any::<bool>(),
        pick in any::<prop::sample::Index>(),
        seed in any::<u64>(),
        kind in prop::sample::select(geodd::geometry::PredicateKind::ALL.to_vec()),
        args in prop::collection::vec(0u16..8, 8),
        exchange in any::<bool>(),
    ) {
        let sym = Symmetries::get(exchange);
        if true_case {
            let (facts, models) = true_pool();
            let f = facts[pick.index(facts.len())];
            check_orbit(&f, &models[(seed % MODELS as u64) as usize], sym)?;
        } else {
            let ids: Vec<PointId> = args[..kind.arity()].iter().map(|&i| PointId(i)).collect();
            let f = Fact::raw(kind, &ids).unwrap();
            prop_assume!(f.is_valid());
            let recipe = ConstructionRecipe {
                kind: RecipeKind::FreePoints,
                names: (0..8).map(|i| i.to_string()).collect(),
                seed,
                margin: 1e-3,
            };
            check_orbit(&f, &sample_model(&recipe).unwrap(), sym)?;
        }
    }
}
