//! Coordinate models: predicate evaluation, seeded random constructions and
//! fixpoint audits.
//!
//! All comparisons are relative to a model-wide scale, the squared largest
//! coordinate span. A clean audit is evidence of soundness, not a proof.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::Fixpoint;
use crate::error::OracleError;
use crate::geometry::{Fact, PointId, PointTable, PredicateKind};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_MARGIN: f64 = 1e-3;
/// Draws before `sample_model` gives up.
pub const RESAMPLE_BUDGET: usize = 10_000;

type Vec2 = (f64, f64);

fn sub(a: Vec2, b: Vec2) -> Vec2 {
    (a.0 - b.0, a.1 - b.1)
}

fn cross(a: Vec2, b: Vec2) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

fn dot(a: Vec2, b: Vec2) -> f64 {
    a.0 * b.0 + a.1 * b.1
}

fn norm2(a: Vec2) -> f64 {
    dot(a, a)
}

/// Planar coordinates for some points.
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub coords: BTreeMap<PointId, Vec2>,
    pub tolerance: f64,
}

impl Model {
    pub fn new() -> Self {
        Model {
            coords: BTreeMap::new(),
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn with(mut self, p: PointId, x: f64, y: f64) -> Self {
        self.coords.insert(p, (x, y));
        self
    }

    /// Squared largest coordinate span; 1 for a single point.
    pub fn scale(&self) -> f64 {
        let mut it = self.coords.values();
        let Some(&(x0, y0)) = it.next() else { return 1.0 };
        let (mut lo, mut hi) = ((x0, y0), (x0, y0));
        for &(x, y) in it {
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        let span = (hi.0 - lo.0).max(hi.1 - lo.1);
        if span > 0.0 {
            span * span
        } else {
            1.0
        }
    }

    /// Reads `NAME x y` lines; `#` starts a comment line. Names are looked
    /// up in `points`.
    pub fn parse(text: &str, points: &PointTable) -> Result<Model, OracleError> {
        let mut model = Model::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| OracleError::ModelFile { line: i + 1, message };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [name, x, y] = fields[..] else {
                return Err(err(format!("expected `NAME x y`, found `{line}`")));
            };
            let p = points.get(name).ok_or_else(|| err(format!("unknown point `{name}`")))?;
            let x: f64 = x.parse().map_err(|_| err(format!("bad coordinate `{x}`")))?;
            let y: f64 = y.parse().map_err(|_| err(format!("bad coordinate `{y}`")))?;
            model.coords.insert(p, (x, y));
        }
        Ok(model)
    }

    pub fn print(&self, points: &PointTable) -> String {
        let mut out = String::new();
        for (p, (x, y)) in &self.coords {
            let _ = writeln!(out, "{} {x:?} {y:?}", points.name(*p));
        }
        out
    }

    fn at(&self, p: PointId) -> Result<Vec2, OracleError> {
        self.coords
            .get(&p)
            .copied()
            .ok_or_else(|| OracleError::MissingPoint(format!("#{}", p.0)))
    }
}

impl Default for Model {
    fn default() -> Self {
        Self::new()
    }
}

/// Wraps an angle into (-pi/2, pi/2].
fn wrap_half_turn(a: f64) -> f64 {
    let r = a.rem_euclid(PI);
    if r > PI / 2.0 {
        r - PI
    } else {
        r
    }
}

/// Evaluates `fact` on `model`.
pub fn eval_fact(model: &Model, fact: &Fact) -> Result<bool, OracleError> {
    let pts: Vec<Vec2> = fact.args().iter().map(|&p| model.at(p)).collect::<Result<_, _>>()?;
    let eps = model.tolerance;
    let scale = model.scale();
    for &(i, j) in fact.kind().line_slots() {
        if norm2(sub(pts[j], pts[i])) <= f64::EPSILON * scale {
            return Err(OracleError::ZeroLength(format!("#{}#{}", fact.args()[i].0, fact.args()[j].0)));
        }
    }
    let dir = |i: usize, j: usize| sub(pts[j], pts[i]);
    let len2 = |i: usize, j: usize| norm2(dir(i, j));
    let small = |v: f64, s: f64| v.abs() <= eps * s;
    let para = |a: usize, b: usize, c: usize, d: usize| small(cross(dir(a, b), dir(c, d)), scale);
    let perp = |a: usize, b: usize, c: usize, d: usize| small(dot(dir(a, b), dir(c, d)), scale);
    let cong = |a: usize, b: usize, c: usize, d: usize| small(len2(a, b) - len2(c, d), scale);
    // corresponding sides of triangles (0,1,2) and (3,4,5)
    let sides = [(0, 1, 3, 4), (0, 2, 3, 5), (1, 2, 4, 5)];
    Ok(match fact.kind() {
        PredicateKind::Coll => small(cross(dir(0, 1), dir(0, 2)), scale),
        PredicateKind::Para => para(0, 1, 2, 3),
        PredicateKind::Perp | PredicateKind::RightAngle => perp(0, 1, 2, 3),
        PredicateKind::Cong => cong(0, 1, 2, 3),
        PredicateKind::EqAngle => {
            let angle = |a: Vec2, b: Vec2| cross(a, b).atan2(dot(a, b));
            let first = angle(dir(0, 1), dir(2, 3));
            let second = angle(dir(4, 5), dir(6, 7));
            wrap_half_turn(first - second).abs() <= eps
        }
        PredicateKind::SimTri => {
            let l: Vec<(f64, f64)> = sides.iter().map(|&(a, b, c, d)| (len2(a, b), len2(c, d))).collect();
            // ratios l[k].0 / l[k].1 all equal, cross-multiplied
            (0..3).all(|k| {
                let m = (k + 1) % 3;
                small(l[k].0 * l[m].1 - l[m].0 * l[k].1, scale * scale)
            })
        }
        PredicateKind::ConTri => sides.iter().all(|&(a, b, c, d)| cong(a, b, c, d)),
        PredicateKind::Parallelogram => para(0, 1, 3, 2) && para(0, 3, 1, 2),
        PredicateKind::Rectangle => {
            perp(3, 0, 0, 1) && perp(0, 1, 1, 2) && perp(1, 2, 2, 3) && perp(2, 3, 3, 0)
        }
    })
}

/// A seeded random construction of named points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecipeKind {
    Parallelogram,
    Rectangle,
    FreePoints,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstructionRecipe {
    pub kind: RecipeKind,
    /// The i-th name gets `PointId(i)`. Quadrilateral recipes use the first four.
    pub names: Vec<String>,
    pub seed: u64,
    pub margin: f64,
}

impl ConstructionRecipe {
    pub fn new(kind: RecipeKind, points: &PointTable, seed: u64) -> Self {
        ConstructionRecipe {
            kind,
            names: points.names().to_vec(),
            seed,
            margin: DEFAULT_MARGIN,
        }
    }

    /// A recipe matching a single quadrilateral hypothesis, else free points.
    pub fn for_hypotheses(hypotheses: &[Fact], points: &PointTable, seed: u64) -> Self {
        let quad = |k: PredicateKind| {
            hypotheses.len() == 1
                && hypotheses[0].kind() == k
                && hypotheses[0].args().iter().enumerate().all(|(i, p)| p.index() == i)
        };
        let kind = if quad(PredicateKind::Parallelogram) {
            RecipeKind::Parallelogram
        } else if quad(PredicateKind::Rectangle) {
            RecipeKind::Rectangle
        } else {
            RecipeKind::FreePoints
        };
        Self::new(kind, points, seed)
    }
}

fn draw(rng: &mut ChaCha8Rng) -> Vec2 {
    (rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0))
}

fn non_degenerate(coords: &[Vec2], margin: f64, scale: f64) -> bool {
    let n = coords.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if cross(sub(coords[b], coords[a]), sub(coords[c], coords[a])).abs() <= margin * scale {
                    return false;
                }
            }
        }
    }
    n >= 3 || (n == 2 && norm2(sub(coords[1], coords[0])) > margin * scale)
}

/// Draws a model from a ChaCha8 stream seeded with `recipe.seed`, retrying
/// until no three points are within `margin` of collinear.
pub fn sample_model(recipe: &ConstructionRecipe) -> Result<Model, OracleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(recipe.seed);
    let n = recipe.names.len();
    if recipe.kind != RecipeKind::FreePoints && n < 4 {
        return Err(OracleError::MissingPoint(
            ["A", "B", "C", "D"].get(n).copied().unwrap_or("?").to_string(),
        ));
    }
    for _ in 0..RESAMPLE_BUDGET {
        let mut coords: Vec<Vec2> = Vec::with_capacity(n);
        match recipe.kind {
            RecipeKind::Parallelogram => {
                let (a, b, c) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
                coords.extend([a, b, c, (a.0 + c.0 - b.0, a.1 + c.1 - b.1)]);
            }
            RecipeKind::Rectangle => {
                let a = draw(&mut rng);
                let theta: f64 = rng.gen_range(0.0..2.0 * PI);
                let u = (theta.cos(), theta.sin());
                let w = (-u.1, u.0);
                let s: f64 = rng.gen_range(0.0..10.0);
                let t: f64 = rng.gen_range(0.0..10.0);
                let b = (a.0 + s * u.0, a.1 + s * u.1);
                let c = (b.0 + t * w.0, b.1 + t * w.1);
                let d = (a.0 + t * w.0, a.1 + t * w.1);
                coords.extend([a, b, c, d]);
            }
            RecipeKind::FreePoints => {}
        }
        while coords.len() < n {
            coords.push(draw(&mut rng));
        }
        let mut model = Model::new();
        for (i, &(x, y)) in coords.iter().enumerate() {
            model = model.with(PointId(i as u16), x, y);
        }
        if non_degenerate(&coords, recipe.margin, model.scale()) {
            return Ok(model);
        }
    }
    Err(OracleError::ResampleBudget(RESAMPLE_BUDGET))
}

/// `count` models with seeds `seed, seed + 1, ...`.
pub fn sample_models(recipe: &ConstructionRecipe, count: usize) -> Result<Vec<Model>, OracleError> {
    (0..count as u64)
        .map(|i| {
            sample_model(&ConstructionRecipe {
                seed: recipe.seed.wrapping_add(i),
                ..recipe.clone()
            })
        })
        .collect()
}

/// A fact that failed (or could not be evaluated) in some model.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub fact: Fact,
    pub model: usize,
}

/// Every (fact, model) pair that does not hold, sorted.
pub fn check_facts(models: &[Model], facts: &[Fact]) -> Vec<Violation> {
    let mut out = Vec::new();
    for (m, model) in models.iter().enumerate() {
        for f in facts {
            if !matches!(eval_fact(model, f), Ok(true)) {
                out.push(Violation { fact: *f, model: m });
            }
        }
    }
    out.sort();
    out
}

/// Audits every fact of the fixpoint.
pub fn check_fixpoint(models: &[Model], fixpoint: &Fixpoint) -> Vec<Violation> {
    check_facts(models, fixpoint.db.facts())
}

/// True iff all `facts` hold and no `ndgs` atom does.
pub fn admissible(model: &Model, facts: &[Fact], ndgs: &[Fact]) -> bool {
    facts.iter().all(|f| matches!(eval_fact(model, f), Ok(true)))
        && ndgs.iter().all(|f| matches!(eval_fact(model, f), Ok(false)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: u16) -> PointId {
        PointId(i)
    }

    fn f(kind: PredicateKind, args: &[u16]) -> Fact {
        Fact::new(kind, &args.iter().map(|&i| p(i)).collect::<Vec<_>>()).unwrap()
    }

    fn quad(c: [(f64, f64); 4]) -> Model {
        let mut m = Model::new();
        for (i, (x, y)) in c.into_iter().enumerate() {
            m = m.with(p(i as u16), x, y);
        }
        m
    }

    #[test]
    fn parallelogram_model() {
        let m = quad([(0.0, 0.0), (4.0, 0.0), (5.0, 2.0), (1.0, 2.0)]);
        assert!(eval_fact(&m, &f(PredicateKind::Parallelogram, &[0, 1, 2, 3])).unwrap());
        assert!(eval_fact(&m, &f(PredicateKind::Cong, &[0, 1, 2, 3])).unwrap());
        assert!(!eval_fact(&m, &f(PredicateKind::Cong, &[0, 1, 0, 2])).unwrap());
    }

    #[test]
    fn rectangle_model() {
        let m = quad([(0.0, 0.0), (3.0, 0.0), (3.0, 2.0), (0.0, 2.0)]);
        assert!(eval_fact(&m, &f(PredicateKind::Cong, &[0, 2, 1, 3])).unwrap());
        assert!(eval_fact(&m, &f(PredicateKind::EqAngle, &[0, 1, 1, 2, 2, 3, 3, 0])).unwrap());
        assert!(eval_fact(&m, &f(PredicateKind::Rectangle, &[0, 1, 2, 3])).unwrap());
    }

    #[test]
    fn collinear_on_axis() {
        let m = Model::new().with(p(0), 0.0, 0.0).with(p(1), 1.0, 0.0).with(p(2), 2.0, 0.0);
        assert!(eval_fact(&m, &f(PredicateKind::Coll, &[0, 1, 2])).unwrap());
    }

    #[test]
    fn errors() {
        let m = Model::new().with(p(0), 0.0, 0.0).with(p(1), 0.0, 0.0).with(p(2), 1.0, 1.0);
        assert!(matches!(
            eval_fact(&m, &f(PredicateKind::Perp, &[0, 1, 1, 2])),
            Err(OracleError::ZeroLength(_))
        ));
        assert!(matches!(
            eval_fact(&m, &f(PredicateKind::Coll, &[0, 1, 3])),
            Err(OracleError::MissingPoint(_))
        ));
    }

    #[test]
    fn model_file_round_trip() {
        let mut t = PointTable::new();
        for n in ["A", "B"] {
            t.intern(n);
        }
        let m = Model::parse("# unit square corner\nA 0.0 0.0\nB 1.5 -2\n", &t).unwrap();
        assert_eq!(m.coords[&p(1)], (1.5, -2.0));
        assert_eq!(Model::parse(&m.print(&t), &t).unwrap(), m);
        assert!(matches!(Model::parse("Z 1 2", &t), Err(OracleError::ModelFile { line: 1, .. })));
    }

    #[test]
    fn sampling_is_deterministic() {
        let mut t = PointTable::new();
        for n in ["A", "B", "C", "D"] {
            t.intern(n);
        }
        for kind in [RecipeKind::Parallelogram, RecipeKind::Rectangle, RecipeKind::FreePoints] {
            let r = ConstructionRecipe::new(kind, &t, 7);
            assert_eq!(sample_model(&r).unwrap(), sample_model(&r).unwrap());
        }
        let rect = sample_model(&ConstructionRecipe::new(RecipeKind::Rectangle, &t, 3)).unwrap();
        for args in [[3, 0, 0, 1], [0, 1, 1, 2], [1, 2, 2, 3], [2, 3, 3, 0]] {
            assert!(eval_fact(&rect, &f(PredicateKind::RightAngle, &args)).unwrap());
        }
    }

    #[test]
    fn impossible_margin() {
        let mut t = PointTable::new();
        for n in ["A", "B", "C"] {
            t.intern(n);
        }
        let mut r = ConstructionRecipe::new(RecipeKind::FreePoints, &t, 1);
        r.margin = 1e6;
        assert!(matches!(sample_model(&r), Err(OracleError::ResampleBudget(_))));
    }
}
