//! Predicate vocabulary, interned points and canonical facts.
//!
//! Every predicate carries a symmetry group over its argument positions. A
//! fact is stored as the lexicographically smallest tuple of its orbit under
//! that group, so two facts are semantically the same statement iff their
//! canonical forms are equal.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use crate::error::GeometryError;

/// A point of one problem, identified by its interning order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PointId(pub u16);

impl PointId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Bijection between point labels and dense ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PointTable {
    names: Vec<String>,
    ids: HashMap<String, PointId>,
}

impl PointTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id of `name`, allocating the next dense id on first sight.
    pub fn intern(&mut self, name: &str) -> PointId {
        if let Some(&id) = self.ids.get(name) {
            return id;
        }
        let id = PointId(self.names.len() as u16);
        self.names.push(name.to_string());
        self.ids.insert(name.to_string(), id);
        id
    }

    pub fn get(&self, name: &str) -> Option<PointId> {
        self.ids.get(name).copied()
    }

    pub fn name(&self, id: PointId) -> &str {
        self.names
            .get(id.index())
            .map(String::as_str)
            .unwrap_or("?")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn ids(&self) -> impl Iterator<Item = PointId> + '_ {
        (0..self.names.len()).map(|i| PointId(i as u16))
    }
}

/// The closed set of geometric predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PredicateKind {
    Coll,
    Para,
    Perp,
    Cong,
    RightAngle,
    EqAngle,
    SimTri,
    ConTri,
    Parallelogram,
    Rectangle,
}

impl PredicateKind {
    pub const ALL: [PredicateKind; 10] = [
        PredicateKind::Coll,
        PredicateKind::Para,
        PredicateKind::Perp,
        PredicateKind::Cong,
        PredicateKind::RightAngle,
        PredicateKind::EqAngle,
        PredicateKind::SimTri,
        PredicateKind::ConTri,
        PredicateKind::Parallelogram,
        PredicateKind::Rectangle,
    ];

    pub fn arity(self) -> usize {
        match self {
            PredicateKind::Coll => 3,
            PredicateKind::EqAngle => 8,
            PredicateKind::SimTri | PredicateKind::ConTri => 6,
            _ => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PredicateKind::Coll => "coll",
            PredicateKind::Para => "para",
            PredicateKind::Perp => "perp",
            PredicateKind::Cong => "cong",
            PredicateKind::RightAngle => "rightangle",
            PredicateKind::EqAngle => "eqangle",
            PredicateKind::SimTri => "simtri",
            PredicateKind::ConTri => "contri",
            PredicateKind::Parallelogram => "parallelogram",
            PredicateKind::Rectangle => "rectangle",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|k| k.name() == name)
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Argument index pairs that denote lines.
    pub fn line_slots(self) -> &'static [(usize, usize)] {
        match self {
            PredicateKind::Para | PredicateKind::Perp | PredicateKind::RightAngle => {
                &[(0, 1), (2, 3)]
            }
            PredicateKind::EqAngle => &[(0, 1), (2, 3), (4, 5), (6, 7)],
            _ => &[],
        }
    }
}

impl fmt::Display for PredicateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub const MAX_ARITY: usize = 8;

/// A predicate applied to points. Positions past the arity are always zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fact {
    kind: PredicateKind,
    points: [PointId; MAX_ARITY],
}

impl Fact {
    /// Builds a fact without any well-formedness check beyond arity.
    pub fn raw(kind: PredicateKind, args: &[PointId]) -> Result<Self, GeometryError> {
        if args.len() != kind.arity() {
            return Err(GeometryError::Arity {
                kind,
                expected: kind.arity(),
                found: args.len(),
            });
        }
        let mut points = [PointId(0); MAX_ARITY];
        points[..args.len()].copy_from_slice(args);
        Ok(Fact { kind, points })
    }

    /// Builds a fact and rejects degenerate argument tuples.
    pub fn new(kind: PredicateKind, args: &[PointId]) -> Result<Self, GeometryError> {
        let fact = Self::raw(kind, args)?;
        fact.validate()?;
        Ok(fact)
    }

    pub fn kind(&self) -> PredicateKind {
        self.kind
    }

    pub fn args(&self) -> &[PointId] {
        &self.points[..self.kind.arity()]
    }

    /// Degeneracy rules: line slots and segments need two distinct points,
    /// triangles and quadrilaterals need distinct vertices, `coll` needs three
    /// distinct points.
    pub fn validate(&self) -> Result<(), GeometryError> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(GeometryError::Degenerate(format!("{}{:?}", self.kind, self.args())))
        }
    }

    pub fn is_valid(&self) -> bool {
        let a = self.args();
        let degenerate = match self.kind {
            PredicateKind::Para
            | PredicateKind::Perp
            | PredicateKind::RightAngle
            | PredicateKind::EqAngle
            | PredicateKind::Cong => a.chunks(2).any(|p| p[0] == p[1]),
            PredicateKind::Coll => !all_distinct(a),
            PredicateKind::SimTri | PredicateKind::ConTri => {
                !all_distinct(&a[..3]) || !all_distinct(&a[3..])
            }
            PredicateKind::Parallelogram | PredicateKind::Rectangle => !all_distinct(a),
        };
        !degenerate
    }

    fn permuted(&self, perm: &[usize]) -> Fact {
        let mut points = [PointId(0); MAX_ARITY];
        for (slot, &src) in perm.iter().enumerate() {
            points[slot] = self.points[src];
        }
        Fact {
            kind: self.kind,
            points,
        }
    }

    /// Canonical form under the standard symmetry groups.
    pub fn canonical(&self) -> Fact {
        Symmetries::standard().canon(self)
    }

    /// Unordered point pairs this fact asserts as lines.
    pub fn lines(&self) -> Vec<(PointId, PointId)> {
        let a = self.args();
        let mut out = Vec::new();
        let mut push = |p: PointId, q: PointId| {
            if p != q {
                out.push(if p < q { (p, q) } else { (q, p) });
            }
        };
        match self.kind {
            PredicateKind::Coll => {
                push(a[0], a[1]);
                push(a[0], a[2]);
                push(a[1], a[2]);
            }
            PredicateKind::Parallelogram | PredicateKind::Rectangle => {
                for i in 0..4 {
                    push(a[i], a[(i + 1) % 4]);
                }
                push(a[0], a[2]);
                push(a[1], a[3]);
            }
            k => {
                for &(i, j) in k.line_slots() {
                    push(a[i], a[j]);
                }
            }
        }
        out
    }

    pub fn display<'a>(&'a self, points: &'a PointTable) -> FactDisplay<'a> {
        FactDisplay { fact: self, points }
    }
}

fn all_distinct(a: &[PointId]) -> bool {
    a.iter()
        .enumerate()
        .all(|(i, p)| a[..i].iter().all(|q| q != p))
}

pub struct FactDisplay<'a> {
    fact: &'a Fact,
    points: &'a PointTable,
}

impl fmt::Display for FactDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.fact.kind)?;
        for (i, p) in self.fact.args().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(self.points.name(*p))?;
        }
        f.write_str(")")
    }
}

type Perm = Vec<usize>;

/// Symmetry groups of every predicate, as explicit permutation lists.
///
/// `perm[slot] = source` means the permuted fact takes argument `source` of
/// the original at position `slot`.
#[derive(Debug)]
pub struct Symmetries {
    groups: Vec<Vec<Perm>>,
    eqangle_exchange: bool,
}

impl Symmetries {
    pub fn standard() -> &'static Symmetries {
        static STANDARD: OnceLock<Symmetries> = OnceLock::new();
        STANDARD.get_or_init(|| Symmetries::build(false))
    }

    /// Groups extended with the exchange law ∠[a,b]=∠[c,d] ⇔ ∠[a,c]=∠[b,d].
    pub fn with_eqangle_exchange() -> &'static Symmetries {
        static EXCHANGE: OnceLock<Symmetries> = OnceLock::new();
        EXCHANGE.get_or_init(|| Symmetries::build(true))
    }

    pub fn get(eqangle_exchange: bool) -> &'static Symmetries {
        if eqangle_exchange {
            Self::with_eqangle_exchange()
        } else {
            Self::standard()
        }
    }

    pub fn eqangle_exchange(&self) -> bool {
        self.eqangle_exchange
    }

    fn build(eqangle_exchange: bool) -> Self {
        let groups = PredicateKind::ALL
            .iter()
            .map(|&k| close_group(k.arity(), &generators(k, eqangle_exchange)))
            .collect();
        Symmetries {
            groups,
            eqangle_exchange,
        }
    }

    pub fn group(&self, kind: PredicateKind) -> &[Perm] {
        &self.groups[kind.index()]
    }

    /// Generating permutations of `kind`'s group.
    pub fn generators(&self, kind: PredicateKind) -> Vec<Vec<usize>> {
        generators(kind, self.eqangle_exchange)
    }

    /// All distinct argument tuples equivalent to `fact`, sorted.
    pub fn orbit(&self, fact: &Fact) -> Vec<Fact> {
        let set: BTreeSet<Fact> = self
            .group(fact.kind)
            .iter()
            .map(|p| fact.permuted(p))
            .collect();
        set.into_iter().collect()
    }

    /// Orbit elements in group order, possibly with repeats. Cheaper than
    /// `orbit` when the caller deduplicates anyway.
    pub fn variants<'a>(&'a self, fact: &'a Fact) -> impl Iterator<Item = Fact> + 'a {
        self.group(fact.kind).iter().map(move |p| fact.permuted(p))
    }

    pub fn canon(&self, fact: &Fact) -> Fact {
        let a = fact.args();
        let group = self.group(fact.kind);
        let Some((mut best, rest)) = group.split_first() else {
            return *fact;
        };
        for p in rest {
            for (&x, &y) in p.iter().zip(best) {
                match a[x].cmp(&a[y]) {
                    std::cmp::Ordering::Less => {
                        best = p;
                        break;
                    }
                    std::cmp::Ordering::Greater => break,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        fact.permuted(best)
    }

    /// `canon` with the degeneracy check.
    pub fn canon_checked(&self, fact: &Fact) -> Result<Fact, GeometryError> {
        fact.validate()?;
        Ok(self.canon(fact))
    }

    pub fn apply(&self, fact: &Fact, perm: &[usize]) -> Fact {
        fact.permuted(perm)
    }
}

/// Free function form of [`Symmetries::orbit`] under the standard groups.
pub fn orbit(fact: &Fact) -> Vec<Fact> {
    Symmetries::standard().orbit(fact)
}

/// Free function form of [`Symmetries::canon_checked`] under the standard groups.
pub fn canon(fact: &Fact) -> Result<Fact, GeometryError> {
    Symmetries::standard().canon_checked(fact)
}

fn generators(kind: PredicateKind, eqangle_exchange: bool) -> Vec<Perm> {
    use PredicateKind::*;
    match kind {
        Coll => vec![vec![1, 0, 2], vec![0, 2, 1]],
        Para | Perp | Cong | RightAngle => vec![
            vec![1, 0, 2, 3],
            vec![0, 1, 3, 2],
            vec![2, 3, 0, 1],
        ],
        EqAngle => {
            let mut gens = vec![
                vec![1, 0, 2, 3, 4, 5, 6, 7],
                vec![0, 1, 3, 2, 4, 5, 6, 7],
                vec![0, 1, 2, 3, 5, 4, 6, 7],
                vec![0, 1, 2, 3, 4, 5, 7, 6],
                // (L1,L2) <-> (L3,L4)
                vec![4, 5, 6, 7, 0, 1, 2, 3],
                // L1 <-> L2 together with L3 <-> L4
                vec![2, 3, 0, 1, 6, 7, 4, 5],
            ];
            if eqangle_exchange {
                // L2 <-> L3
                gens.push(vec![0, 1, 4, 5, 2, 3, 6, 7]);
            }
            gens
        }
        SimTri | ConTri => vec![
            vec![1, 0, 2, 4, 3, 5],
            vec![0, 2, 1, 3, 5, 4],
            vec![3, 4, 5, 0, 1, 2],
        ],
        Parallelogram | Rectangle => vec![vec![1, 2, 3, 0], vec![0, 3, 2, 1]],
    }
}

fn compose(p: &[usize], q: &[usize]) -> Perm {
    // apply q first, then p
    p.iter().map(|&i| q[i]).collect()
}

fn close_group(arity: usize, gens: &[Perm]) -> Vec<Perm> {
    let identity: Perm = (0..arity).collect();
    let mut seen: BTreeSet<Perm> = BTreeSet::new();
    seen.insert(identity.clone());
    let mut frontier = vec![identity];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let next = compose(g, &p);
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    seen.into_iter().collect()
}

/// True for facts that hold by reflexivity alone: `cong(X,Y,X,Y)`,
/// `eqangle` with the same angle on both sides (or a zero angle on both
/// sides), and `simtri`/`contri` of a triangle with itself. `para` and
/// `perp` are never considered trivial.
pub fn is_reflexive_trivial(fact: &Fact) -> bool {
    let a = fact.args();
    let same_line = |i: usize, j: usize| {
        (a[i] == a[j] && a[i + 1] == a[j + 1]) || (a[i] == a[j + 1] && a[i + 1] == a[j])
    };
    match fact.kind() {
        PredicateKind::Cong => same_line(0, 2),
        PredicateKind::EqAngle => {
            (same_line(0, 4) && same_line(2, 6)) || (same_line(0, 2) && same_line(4, 6))
        }
        PredicateKind::SimTri | PredicateKind::ConTri => a[..3] == a[3..],
        _ => false,
    }
}

type Shape = &'static [(usize, usize)];

const CONG_SHAPES: &[Shape] = &[&[(0, 2), (1, 3)], &[(0, 3), (1, 2)]];
const EQANGLE_SHAPES: &[Shape] = &[
    &[(0, 4), (1, 5), (2, 6), (3, 7)],
    &[(0, 4), (1, 5), (2, 7), (3, 6)],
    &[(0, 5), (1, 4), (2, 6), (3, 7)],
    &[(0, 5), (1, 4), (2, 7), (3, 6)],
    &[(0, 2), (1, 3), (4, 6), (5, 7)],
    &[(0, 2), (1, 3), (4, 7), (5, 6)],
    &[(0, 3), (1, 2), (4, 6), (5, 7)],
    &[(0, 3), (1, 2), (4, 7), (5, 6)],
];
const TRIANGLE_SHAPES: &[Shape] = &[&[(0, 3), (1, 4), (2, 5)]];

/// Slot equalities under which a fact of `kind` is reflexive: a fact is
/// reflexive-trivial iff its arguments satisfy every equality of some shape.
pub fn reflexive_shapes(kind: PredicateKind) -> &'static [Shape] {
    match kind {
        PredicateKind::Cong => CONG_SHAPES,
        PredicateKind::EqAngle => EQANGLE_SHAPES,
        PredicateKind::SimTri | PredicateKind::ConTri => TRIANGLE_SHAPES,
        _ => &[],
    }
}
