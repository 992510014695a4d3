//! Symmetry groups rebuilt from generators by breadth-first closure.

use std::collections::BTreeSet;

use geodd::geometry::{Fact, PointId, PredicateKind, PredicateKind::*};

/// Argument permutations generating each predicate's symmetry group.
fn generators(kind: PredicateKind, exchange: bool) -> Vec<Vec<usize>> {
    match kind {
        Coll => vec![vec![1, 0, 2], vec![0, 2, 1]],
        Para | Perp | Cong | RightAngle => vec![vec![1, 0, 2, 3], vec![0, 1, 3, 2], vec![2, 3, 0, 1]],
        EqAngle => {
            let mut g = vec![
                vec![1, 0, 2, 3, 4, 5, 6, 7],
                vec![0, 1, 3, 2, 4, 5, 6, 7],
                vec![0, 1, 2, 3, 5, 4, 6, 7],
                vec![0, 1, 2, 3, 4, 5, 7, 6],
                vec![4, 5, 6, 7, 0, 1, 2, 3],
                vec![2, 3, 0, 1, 6, 7, 4, 5],
            ];
            if exchange {
                g.push(vec![0, 1, 4, 5, 2, 3, 6, 7]);
            }
            g
        }
        SimTri | ConTri => vec![vec![1, 0, 2, 4, 3, 5], vec![0, 2, 1, 3, 5, 4], vec![3, 4, 5, 0, 1, 2]],
        Parallelogram | Rectangle => vec![vec![1, 2, 3, 0], vec![0, 3, 2, 1]],
    }
}

pub fn bfs_orbit(f: &Fact, exchange: bool) -> BTreeSet<Fact> {
    let gens = generators(f.kind(), exchange);
    let mut seen = BTreeSet::from([*f]);
    let mut todo = vec![*f];
    while let Some(x) = todo.pop() {
        for g in &gens {
            let args: Vec<PointId> = g.iter().map(|&i| x.args()[i]).collect();
            let y = Fact::raw(x.kind(), &args).unwrap();
            if seen.insert(y) {
                todo.push(y);
            }
        }
    }
    seen
}

