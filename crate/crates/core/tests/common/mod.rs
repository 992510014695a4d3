#![allow(dead_code)]

pub mod symmetry;
pub mod truth;

use std::collections::{BTreeSet, HashMap};
use std::path::{Path, PathBuf};

use geodd::engine::{Pattern, Rule};
use geodd::fof::FsLoader;
use geodd::geometry::{is_reflexive_trivial, Fact, PointId, PredicateKind, Symmetries};
use geodd::Problem;

pub fn problems_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("problems")
}

pub fn problem(file: &str) -> Problem {
    Problem::load(&problems_dir().join(file), &FsLoader::default()).expect("corpus problem loads")
}

pub const CORPUS: &[&str] = &["theorem1.p", "theorem2.p", "false_conjecture.p"];

pub fn fact(kind: PredicateKind, args: &[u16]) -> Fact {
    let ids: Vec<PointId> = args.iter().map(|&i| PointId(i)).collect();
    Fact::new(kind, &ids).expect("valid fact")
}

/// Every valid reflexive fact over `n` points, canonical.
pub fn all_reflexive(n: usize, sym: &Symmetries) -> BTreeSet<Fact> {
    let mut out = BTreeSet::new();
    for kind in [PredicateKind::Cong, PredicateKind::EqAngle, PredicateKind::SimTri, PredicateKind::ConTri] {
        let arity = kind.arity();
        let mut args = vec![0u16; arity];
        loop {
            let ids: Vec<PointId> = args.iter().map(|&i| PointId(i)).collect();
            let f = Fact::raw(kind, &ids).unwrap();
            if f.is_valid() && is_reflexive_trivial(&f) {
                out.insert(sym.canon(&f));
            }
            // odometer
            let mut k = 0;
            while k < arity {
                args[k] += 1;
                if (args[k] as usize) < n {
                    break;
                }
                args[k] = 0;
                k += 1;
            }
            if k == arity {
                break;
            }
        }
    }
    out
}

type Index = HashMap<(PredicateKind, u8), HashMap<Vec<PointId>, Vec<Fact>>>;

struct Naive<'a> {
    n: usize,
    sym: &'a Symmetries,
    all_pairs: bool,
    facts: &'a BTreeSet<Fact>,
    lines: BTreeSet<(PointId, PointId)>,
    variants: HashMap<PredicateKind, Vec<Fact>>,
    index: Index,
    out: BTreeSet<Fact>,
}

impl Naive<'_> {
    fn candidates(&mut self, p: &Pattern, subst: &[Option<PointId>]) -> Vec<Fact> {
        let mut mask = 0u8;
        let mut key = Vec::new();
        for (slot, &v) in p.args.iter().enumerate() {
            if let Some(x) = subst[v] {
                mask |= 1 << slot;
                key.push(x);
            }
        }
        let variants = &self.variants;
        let table = self.index.entry((p.kind, mask)).or_insert_with(|| {
            let mut t: HashMap<Vec<PointId>, Vec<Fact>> = HashMap::new();
            for f in variants.get(&p.kind).map(Vec::as_slice).unwrap_or(&[]) {
                let k: Vec<PointId> = (0..p.args.len())
                    .filter(|s| mask & (1 << s) != 0)
                    .map(|s| f.args()[s])
                    .collect();
                t.entry(k).or_default().push(*f);
            }
            t
        });
        table.get(&key).cloned().unwrap_or_default()
    }

    fn join(&mut self, rule: &Rule, i: usize, subst: &mut Vec<Option<PointId>>) {
        if i == rule.premises.len() {
            self.enumerate(rule, 0, subst);
            return;
        }
        let p = &rule.premises[i];
        for f in self.candidates(p, subst) {
            let mut next = subst.clone();
            let ok = p.args.iter().zip(f.args()).all(|(&v, &x)| match next[v] {
                Some(y) => y == x,
                None => {
                    next[v] = Some(x);
                    true
                }
            });
            if ok {
                self.join(rule, i + 1, &mut next);
            }
        }
    }

    fn enumerate(&mut self, rule: &Rule, k: usize, subst: &mut Vec<Option<PointId>>) {
        if k < rule.vars.len() {
            if subst[k].is_some() {
                return self.enumerate(rule, k + 1, subst);
            }
            for x in 0..self.n {
                subst[k] = Some(PointId(x as u16));
                self.enumerate(rule, k + 1, subst);
            }
            subst[k] = None;
            return;
        }
        let s: Vec<PointId> = subst.iter().map(|x| x.unwrap()).collect();
        let ground = |p: &Pattern| Fact::raw(p.kind, &p.args.iter().map(|&v| s[v]).collect::<Vec<_>>()).unwrap();
        for &(a, b) in &rule.enum_lines {
            let (p, q) = (s[a].min(s[b]), s[a].max(s[b]));
            if p == q || (!self.all_pairs && !self.lines.contains(&(p, q))) {
                return;
            }
        }
        if rule.ndg_premises.iter().any(|p| !ground(p).is_valid()) {
            return;
        }
        let conclusions: Vec<Fact> = rule
            .conclusions
            .iter()
            .map(ground)
            .filter(|f| f.is_valid())
            .map(|f| self.sym.canon(&f))
            .filter(|f| !is_reflexive_trivial(f))
            .collect();
        if conclusions.is_empty() {
            return;
        }
        for p in &rule.premises {
            let f = self.sym.canon(&ground(p));
            if !self.facts.contains(&f) {
                self.out.insert(f);
            }
        }
        self.out.extend(conclusions);
    }
}

/// Closure by re-applying every rule to every fact until nothing changes.
/// Reflexive facts count as present; those used by a productive firing are
/// added. Enumerated pairs must be lines of the current facts.
pub fn naive_closure(
    n: usize,
    hypotheses: &[Fact],
    rules: &[Rule],
    all_pairs: bool,
    sym: &Symmetries,
) -> BTreeSet<Fact> {
    let trivial = all_reflexive(n, sym);
    let mut facts: BTreeSet<Fact> = hypotheses.iter().map(|f| sym.canon(f)).collect();
    loop {
        let mut variants: HashMap<PredicateKind, Vec<Fact>> = HashMap::new();
        for f in facts.iter().chain(&trivial) {
            variants.entry(f.kind()).or_default().extend(sym.orbit(f));
        }
        let mut state = Naive {
            n,
            sym,
            all_pairs,
            facts: &facts,
            lines: facts.iter().flat_map(|f| f.lines()).collect(),
            variants,
            index: HashMap::new(),
            out: BTreeSet::new(),
        };
        for rule in rules {
            let mut subst = vec![None; rule.vars.len()];
            state.join(rule, 0, &mut subst);
        }
        let new: Vec<Fact> = state.out.into_iter().filter(|f| !facts.contains(f)).collect();
        if new.is_empty() {
            return facts;
        }
        facts.extend(new);
    }
}
