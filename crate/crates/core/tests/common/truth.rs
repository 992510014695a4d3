//! Predicate truth on coordinates, written against unit directions, true
//! lengths and line angles mod pi.

use std::f64::consts::PI;

use geodd::geometry::{Fact, PredicateKind};

/// Tolerance on normalized quantities (sines, cosines, radians, length ratios).
pub const TOL: f64 = 1e-7;

pub type Pt = [f64; 2];

fn len(a: Pt, b: Pt) -> f64 {
    ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt()
}

fn unit(a: Pt, b: Pt) -> Pt {
    let l = len(a, b);
    [(b[0] - a[0]) / l, (b[1] - a[1]) / l]
}

/// Direction of line ab in [0, pi).
fn heading(a: Pt, b: Pt) -> f64 {
    let t = (b[1] - a[1]).atan2(b[0] - a[0]);
    t.rem_euclid(PI)
}

/// Distance between two values mod pi.
fn mod_pi_gap(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(PI);
    d.min(PI - d)
}

fn sin_between(a: Pt, b: Pt, c: Pt, d: Pt) -> f64 {
    let (u, v) = (unit(a, b), unit(c, d));
    u[0] * v[1] - u[1] * v[0]
}

fn cos_between(a: Pt, b: Pt, c: Pt, d: Pt) -> f64 {
    let (u, v) = (unit(a, b), unit(c, d));
    u[0] * v[0] + u[1] * v[1]
}

fn same_len(a: Pt, b: Pt, c: Pt, d: Pt) -> bool {
    let (x, y) = (len(a, b), len(c, d));
    (x - y).abs() <= TOL * x.max(y)
}

/// `None` when a line slot has coincident endpoints.
pub fn holds(fact: &Fact, at: impl Fn(usize) -> Pt) -> Option<bool> {
    let p: Vec<Pt> = fact.args().iter().map(|x| at(x.index())).collect();
    for &(i, j) in fact.kind().line_slots() {
        if len(p[i], p[j]) < 1e-12 {
            return None;
        }
    }
    let para = |a: usize, b: usize, c: usize, d: usize| sin_between(p[a], p[b], p[c], p[d]).abs() <= TOL;
    let perp = |a: usize, b: usize, c: usize, d: usize| cos_between(p[a], p[b], p[c], p[d]).abs() <= TOL;
    let tri = [(0, 1, 3, 4), (0, 2, 3, 5), (1, 2, 4, 5)];
    Some(match fact.kind() {
        PredicateKind::Coll => sin_between(p[0], p[1], p[0], p[2]).abs() <= TOL,
        PredicateKind::Para => para(0, 1, 2, 3),
        PredicateKind::Perp | PredicateKind::RightAngle => perp(0, 1, 2, 3),
        PredicateKind::Cong => same_len(p[0], p[1], p[2], p[3]),
        PredicateKind::EqAngle => {
            let first = heading(p[2], p[3]) - heading(p[0], p[1]);
            let second = heading(p[6], p[7]) - heading(p[4], p[5]);
            mod_pi_gap(first, second) <= TOL
        }
        PredicateKind::SimTri => {
            let r: Vec<f64> = tri.iter().map(|&(a, b, c, d)| len(p[a], p[b]) / len(p[c], p[d])).collect();
            (r[0] - r[1]).abs() <= TOL * r[0] && (r[0] - r[2]).abs() <= TOL * r[0]
        }
        PredicateKind::ConTri => tri.iter().all(|&(a, b, c, d)| same_len(p[a], p[b], p[c], p[d])),
        PredicateKind::Parallelogram => para(0, 1, 3, 2) && para(0, 3, 1, 2),
        PredicateKind::Rectangle => perp(3, 0, 0, 1) && perp(0, 1, 1, 2) && perp(1, 2, 2, 3),
    })
}
