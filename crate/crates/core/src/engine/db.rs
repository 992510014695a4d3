use std::collections::{BTreeSet, HashMap};

use crate::geometry::{Fact, PointId, PredicateKind, Symmetries, MAX_ARITY};
use crate::proof::Provenance;

/// Handle of a stored fact; equal to its insertion index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactId(pub u32);

impl FactId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Bit set of argument positions that are bound in a lookup.
pub type Mask = u8;

type MaskedKey = [PointId; MAX_ARITY];
/// Variants of facts that agree on the masked slots.
type VariantBucket = HashMap<MaskedKey, Vec<(FactId, Fact)>>;

fn masked(fact: &Fact, mask: Mask) -> MaskedKey {
    let mut key = [PointId(0); MAX_ARITY];
    for (i, p) in fact.args().iter().enumerate() {
        if mask & (1 << i) != 0 {
            key[i] = *p;
        }
    }
    key
}

/// Insertion-ordered set of canonical facts with provenance and indexes.
#[derive(Debug, Clone)]
pub struct FactDatabase {
    symmetries: &'static Symmetries,
    facts: Vec<Fact>,
    provenance: Vec<Provenance>,
    lookup: HashMap<Fact, FactId>,
    by_kind: Vec<Vec<FactId>>,
    by_point: HashMap<(PredicateKind, PointId), Vec<FactId>>,
    /// For every registered `(kind, mask)`: bound values -> matching
    /// `(fact, variant)` pairs over the whole symmetry orbit.
    variant_index: HashMap<(PredicateKind, Mask), VariantBucket>,
}

impl FactDatabase {
    pub fn new(symmetries: &'static Symmetries) -> Self {
        FactDatabase {
            symmetries,
            facts: Vec::new(),
            provenance: Vec::new(),
            lookup: HashMap::new(),
            by_kind: vec![Vec::new(); PredicateKind::ALL.len()],
            by_point: HashMap::new(),
            variant_index: HashMap::new(),
        }
    }

    pub fn symmetries(&self) -> &'static Symmetries {
        self.symmetries
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn fact(&self, id: FactId) -> &Fact {
        &self.facts[id.index()]
    }

    pub fn provenance(&self, id: FactId) -> &Provenance {
        &self.provenance[id.index()]
    }

    pub fn facts(&self) -> &[Fact] {
        &self.facts
    }

    pub fn iter(&self) -> impl Iterator<Item = (FactId, &Fact)> {
        self.facts
            .iter()
            .enumerate()
            .map(|(i, f)| (FactId(i as u32), f))
    }

    /// Looks a fact up by its canonical form.
    pub fn get(&self, fact: &Fact) -> Option<FactId> {
        self.lookup.get(&self.symmetries.canon(fact)).copied()
    }

    pub fn contains(&self, fact: &Fact) -> bool {
        self.get(fact).is_some()
    }

    pub fn of_kind(&self, kind: PredicateKind) -> &[FactId] {
        &self.by_kind[kind.index()]
    }

    pub fn with_point(&self, kind: PredicateKind, point: PointId) -> &[FactId] {
        self.by_point
            .get(&(kind, point))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Inserts a canonical fact; returns its id and whether it was new.
    /// An existing fact keeps its first provenance.
    pub fn insert(&mut self, fact: Fact, provenance: Provenance) -> (FactId, bool) {
        debug_assert_eq!(self.symmetries.canon(&fact), fact, "fact must be canonical");
        if let Some(&id) = self.lookup.get(&fact) {
            return (id, false);
        }
        let id = FactId(self.facts.len() as u32);
        self.facts.push(fact);
        self.provenance.push(provenance);
        self.lookup.insert(fact, id);
        self.by_kind[fact.kind().index()].push(id);
        let points: BTreeSet<PointId> = fact.args().iter().copied().collect();
        for p in points {
            self.by_point.entry((fact.kind(), p)).or_default().push(id);
        }
        let masks: Vec<Mask> = self
            .variant_index
            .keys()
            .filter(|(k, _)| *k == fact.kind())
            .map(|(_, m)| *m)
            .collect();
        for mask in masks {
            self.index_fact(id, fact, mask);
        }
        (id, true)
    }

    fn index_fact(&mut self, id: FactId, fact: Fact, mask: Mask) {
        let orbit = self.symmetries.orbit(&fact);
        let table = self
            .variant_index
            .get_mut(&(fact.kind(), mask))
            .expect("registered mask");
        for v in orbit {
            table.entry(masked(&v, mask)).or_default().push((id, v));
        }
    }

    /// Makes `(kind, mask)` lookups available, indexing existing facts.
    pub fn register_mask(&mut self, kind: PredicateKind, mask: Mask) {
        if self.variant_index.contains_key(&(kind, mask)) {
            return;
        }
        self.variant_index.insert((kind, mask), HashMap::new());
        let ids = self.by_kind[kind.index()].clone();
        for id in ids {
            let fact = self.facts[id.index()];
            self.index_fact(id, fact, mask);
        }
    }

    /// Variants of stored facts whose bound positions equal `probe`'s.
    /// The mask must have been registered.
    pub fn variants_matching(&self, kind: PredicateKind, mask: Mask, probe: &Fact) -> &[(FactId, Fact)] {
        self.variant_index
            .get(&(kind, mask))
            .and_then(|t| t.get(&masked(probe, mask)))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }
}
