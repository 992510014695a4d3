//! Natural-language proofs from sentence templates.
//!
//! A template is plain text with slots in braces:
//!
//! * `{A,B}` concatenates the points bound to rule variables `A` and `B`
//!   (a segment, a line or a triangle);
//! * `{angle A,B,C,D}` names the angle between lines `AB` and `CD`, as a
//!   three-letter vertex angle when the lines share a point;
//! * `{premises}` and `{conclusions}` describe the step's facts in words.

use std::collections::BTreeMap;
use std::path::Path;

use thiserror::Error;

use crate::engine::{Rule, RuleSource};
use crate::geometry::{Fact, PointId, PointTable, PredicateKind};
use crate::proof::{ProofStep, ProofTrace};

const GENERIC: &str = "By {label}, since {premises}, {conclusions}.";

const BUILTIN: &[(&str, &str)] = &[
    ("R1", "Since {premises}, by rule R1 (parallelogram definition) [{A,B,C,D}] is a parallelogram."),
    ("R1a", "Since [{A,B,C,D}] is a parallelogram, by rule R1 (parallelogram definition) {conclusions}."),
    ("R1b", "Since [{A,B,C,D}] is a parallelogram, by rule R1 (parallelogram definition) {conclusions}."),
    (
        "D40",
        "By rule R2, since the lines {A,B} and {C,D} are parallel, the angles {angle A,B,P,Q} and {angle C,D,P,Q} are equal.",
    ),
    (
        "D58",
        "Since the angles {angle A,B,B,C} and {angle P,Q,Q,R} are equal and the angles {angle A,C,B,C} and {angle P,R,Q,R} are equal, the triangles [{A,B,C}] and [{P,Q,R}] are similar.",
    ),
    (
        "D61",
        "Since the triangles [{A,B,C}] and [{P,Q,R}] are similar and {A,B} = {P,Q}, by rule R3 (a.s.a. criterion of equality) the triangles [{A,B,C}] and [{P,Q,R}] are equal.",
    ),
    ("R4", "Since {premises}, by rule R4 the triangles [{A,B,C}] and [{P,Q,R}] are equal."),
    ("R4a", "Using rule R4, since the triangles [{A,B,C}] and [{P,Q,R}] are equal, we have {conclusions}."),
    ("R4b", "Using rule R4, since the triangles [{A,B,C}] and [{P,Q,R}] are equal, we have {conclusions}."),
    ("R4c", "Using rule R4, since the triangles [{A,B,C}] and [{P,Q,R}] are equal, we have {conclusions}."),
    ("R5", "Since {premises}, by rule R5 (rectangle definition) [{A,B,C,D}] is a rectangle."),
    ("R5a", "Since [{A,B,C,D}] is a rectangle, by rule R5 {conclusions}."),
    ("R5b", "Since [{A,B,C,D}] is a rectangle, by rule R5 {conclusions}."),
    ("R5c", "Since [{A,B,C,D}] is a rectangle, by rule R5 {conclusions}."),
    ("R5d", "Since [{A,B,C,D}] is a rectangle, by rule R5 {conclusions}."),
    ("R5e", "Since [{A,B,C,D}] is a rectangle, by rule R5 {conclusions}."),
    ("R5f", "Since [{A,B,C,D}] is a rectangle, by rule R5 {conclusions}."),
    ("R6", "By rule R6, the lines {A,B} and {B,C} are perpendicular."),
    (
        "D9",
        "By rule R7, since {A,B} and {C,D} are both perpendicular to {E,F}, {A,B} and {C,D} are parallel.",
    ),
    (
        "R8",
        "Since {A,B} = {D,E}, {B,C} = {E,F} and the angles {angle A,B,B,C} and {angle D,E,E,F} are right angles, by rule R8 (s.a.s. criterion of equality of right triangles) {A,C} = {D,F}.",
    ),
    ("eqtrans", "{conclusions}, by transitivity of equal angles"),
];

/// Labels whose steps are folded into the next sentence.
const STRUCTURAL: &[&str] = &["eqtrans", crate::proof::TRIVIAL_LABEL];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TemplateError {
    #[error("no sentence template for rule `{0}`")]
    Missing(String),
    #[error("template for `{rule}`: unknown slot `{slot}`")]
    BadSlot { rule: String, slot: String },
    #[error("template for `{rule}`: unclosed `{{`")]
    Unclosed { rule: String },
    #[error("template file: {0}")]
    File(String),
}

/// Sentence templates by rule label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateCatalog {
    templates: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Piece {
    Text(String),
    Points(Vec<String>),
    Angle(Vec<String>),
    Premises,
    Conclusions,
    Label,
}

fn parse_template(rule: &str, text: &str) -> Result<Vec<Piece>, TemplateError> {
    let mut out = Vec::new();
    let mut rest = text;
    while let Some(open) = rest.find('{') {
        if open > 0 {
            out.push(Piece::Text(rest[..open].to_string()));
        }
        let close = rest[open..]
            .find('}')
            .ok_or_else(|| TemplateError::Unclosed { rule: rule.into() })?;
        let slot = rest[open + 1..open + close].trim();
        let vars = |s: &str| s.split(',').map(|v| v.trim().to_string()).collect::<Vec<_>>();
        out.push(match slot {
            "premises" => Piece::Premises,
            "conclusions" => Piece::Conclusions,
            "label" => Piece::Label,
            s if s.starts_with("angle ") => Piece::Angle(vars(&s[6..])),
            s => Piece::Points(vars(s)),
        });
        rest = &rest[open + close + 1..];
    }
    if !rest.is_empty() {
        out.push(Piece::Text(rest.to_string()));
    }
    Ok(out)
}

impl TemplateCatalog {
    /// Templates for the embedded catalog.
    pub fn builtin() -> Self {
        TemplateCatalog {
            templates: BUILTIN.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
        }
    }

    pub fn with(mut self, label: &str, template: &str) -> Self {
        self.templates.insert(label.to_string(), template.to_string());
        self
    }

    /// Adds templates from a TOML table of `label = "template"` entries.
    pub fn merge_file(mut self, path: &Path) -> Result<Self, TemplateError> {
        let text = std::fs::read_to_string(path).map_err(|e| TemplateError::File(e.to_string()))?;
        let table: BTreeMap<String, String> =
            toml::from_str(&text).map_err(|e| TemplateError::File(e.to_string()))?;
        self.templates.extend(table);
        Ok(self)
    }

    /// Checks that every rule has a well-formed template. Lemma rules
    /// without one get the generic sentence.
    pub fn for_rules(mut self, rules: &[Rule]) -> Result<Self, TemplateError> {
        for r in rules {
            let label = r.label();
            let template = match self.templates.get(label) {
                Some(t) => t.clone(),
                None if r.source == RuleSource::Lemma => {
                    self.templates.insert(label.to_string(), GENERIC.to_string());
                    GENERIC.to_string()
                }
                None => return Err(TemplateError::Missing(label.to_string())),
            };
            for piece in parse_template(label, &template)? {
                if let Piece::Points(vs) | Piece::Angle(vs) = &piece {
                    if let Some(v) = vs.iter().find(|v| !r.vars.contains(v)) {
                        return Err(TemplateError::BadSlot {
                            rule: label.to_string(),
                            slot: v.clone(),
                        });
                    }
                }
            }
        }
        Ok(self)
    }

    pub fn get(&self, label: &str) -> Option<&str> {
        self.templates.get(label).map(String::as_str)
    }
}

fn points(table: &PointTable, ps: &[PointId]) -> String {
    ps.iter().map(|&p| table.name(p)).collect()
}

/// `ABC` for lines `BA` and `BC`, else "the angle between AB and CD".
pub fn angle_name(table: &PointTable, l1: (PointId, PointId), l2: (PointId, PointId)) -> String {
    let (a, b) = l1;
    let (c, d) = l2;
    let shared = [(a, b, c, d), (a, b, d, c), (b, a, c, d), (b, a, d, c)]
        .into_iter()
        .find(|(v, _, w, _)| v == w);
    match shared {
        Some((v, p, _, q)) if p != q => points(table, &[p, v, q]),
        _ => format!("between {} and {}", points(table, &[a, b]), points(table, &[c, d])),
    }
}

/// One fact in words.
pub fn describe(table: &PointTable, fact: &Fact) -> String {
    let a = fact.args();
    let seg = |i: usize| points(table, &a[i..i + 2]);
    match fact.kind() {
        PredicateKind::Coll => format!(
            "{}, {} and {} are collinear",
            table.name(a[0]),
            table.name(a[1]),
            table.name(a[2])
        ),
        PredicateKind::Para => format!("the lines {} and {} are parallel", seg(0), seg(2)),
        PredicateKind::Perp => format!("the lines {} and {} are perpendicular", seg(0), seg(2)),
        PredicateKind::Cong => format!("{} = {}", seg(0), seg(2)),
        PredicateKind::RightAngle => {
            format!("the angle {} is right", angle_name(table, (a[0], a[1]), (a[2], a[3])))
        }
        PredicateKind::EqAngle => format!(
            "the angles {} and {} are equal",
            angle_name(table, (a[0], a[1]), (a[2], a[3])),
            angle_name(table, (a[4], a[5]), (a[6], a[7]))
        ),
        PredicateKind::SimTri => format!(
            "the triangles [{}] and [{}] are similar",
            points(table, &a[..3]),
            points(table, &a[3..])
        ),
        PredicateKind::ConTri => format!(
            "the triangles [{}] and [{}] are equal",
            points(table, &a[..3]),
            points(table, &a[3..])
        ),
        PredicateKind::Parallelogram => format!("[{}] is a parallelogram", points(table, a)),
        PredicateKind::Rectangle => format!("[{}] is a rectangle", points(table, a)),
    }
}

fn join_and(items: Vec<String>) -> String {
    match items.len() {
        0 => String::new(),
        1 => items.into_iter().next().unwrap_or_default(),
        n => format!("{} and {}", items[..n - 1].join(", "), items[n - 1]),
    }
}

fn fill(trace: &ProofTrace, step: &ProofStep, template: &str) -> Result<String, TemplateError> {
    let table = &trace.points;
    let lookup = |v: &String| {
        step.substitution
            .iter()
            .find(|(name, _)| name == v)
            .map(|(_, p)| *p)
            .ok_or_else(|| TemplateError::BadSlot {
                rule: step.rule.clone(),
                slot: v.clone(),
            })
    };
    let mut out = String::new();
    for piece in parse_template(&step.rule, template)? {
        match piece {
            Piece::Text(t) => out.push_str(&t),
            Piece::Points(vs) => {
                let ps = vs.iter().map(lookup).collect::<Result<Vec<_>, _>>()?;
                out.push_str(&points(table, &ps));
            }
            Piece::Angle(vs) => {
                let ps = vs.iter().map(lookup).collect::<Result<Vec<_>, _>>()?;
                if ps.len() != 4 {
                    return Err(TemplateError::BadSlot {
                        rule: step.rule.clone(),
                        slot: vs.join(","),
                    });
                }
                out.push_str(&angle_name(table, (ps[0], ps[1]), (ps[2], ps[3])));
            }
            Piece::Premises => out.push_str(&join_and(step.used_facts.iter().map(|f| describe(table, f)).collect())),
            Piece::Conclusions => {
                out.push_str(&join_and(step.new_facts.iter().map(|f| describe(table, f)).collect()))
            }
            Piece::Label => out.push_str(&step.rule),
        }
    }
    Ok(out)
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_uppercase().collect::<String>() + c.as_str(),
        None => String::new(),
    }
}

fn attach(sentence: &mut String, notes: &[String]) {
    if notes.is_empty() {
        return;
    }
    let note = format!(" ({})", notes.join("; "));
    if sentence.ends_with('.') {
        sentence.insert_str(sentence.len() - 1, &note);
    } else {
        sentence.push_str(&note);
    }
}

/// Renders the trace as a paragraph per step, then the provisos.
pub fn render_prose(trace: &ProofTrace, templates: &TemplateCatalog) -> Result<String, TemplateError> {
    let table = &trace.points;
    let mut paragraphs = Vec::new();
    let hyps = join_and(trace.hypotheses.iter().map(|f| describe(table, f)).collect());
    paragraphs.push(if hyps.is_empty() {
        "There are no hypotheses.".to_string()
    } else {
        format!("Suppose {hyps}.")
    });

    let mut notes: Vec<String> = Vec::new();
    let mut sentences: Vec<String> = Vec::new();
    for step in &trace.steps {
        if step.is_trivial() {
            let facts = join_and(step.new_facts.iter().map(|f| describe(table, f)).collect());
            notes.push(format!("trivially {facts}"));
            continue;
        }
        let template = templates
            .get(&step.rule)
            .ok_or_else(|| TemplateError::Missing(step.rule.clone()))?;
        let text = fill(trace, step, template)?;
        if STRUCTURAL.contains(&step.rule.as_str()) {
            notes.push(text);
            continue;
        }
        let mut sentence = capitalize(&text);
        attach(&mut sentence, &notes);
        notes.clear();
        sentences.push(sentence);
    }
    if let Some(last) = sentences.last_mut() {
        attach(last, &notes);
    } else if !notes.is_empty() {
        sentences.push(capitalize(&notes.join("; ")) + ".");
    }
    paragraphs.extend(sentences);

    let goals = join_and(trace.goals.iter().map(|f| describe(table, f)).collect());
    if trace.steps.is_empty() {
        paragraphs.push(format!("Therefore {goals}: the conclusion is a hypothesis."));
    } else {
        paragraphs.push(format!("Therefore {goals}."));
    }
    if trace.ndgs.is_empty() {
        paragraphs.push("No non-degeneracy conditions are needed.".to_string());
    } else {
        let conds = join_and(trace.ndgs.iter().map(|f| negated(table, f)).collect());
        paragraphs.push(format!(
            "The proof assumes the non-degeneracy conditions: {conds}. They are added to the hypotheses."
        ));
    }
    Ok(paragraphs.join("\n\n") + "\n")
}

fn negated(table: &PointTable, fact: &Fact) -> String {
    let text = describe(table, fact);
    for (from, to) in [(" are ", " are not "), (" is ", " is not ")] {
        if let Some(i) = text.find(from) {
            return format!("{}{}{}", &text[..i], to, &text[i + from.len()..]);
        }
    }
    format!("not ({text})")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> PointTable {
        let mut t = PointTable::new();
        for n in ["A", "B", "C", "D"] {
            t.intern(n);
        }
        t
    }

    #[test]
    fn three_letter_angles() {
        let t = table();
        let p = |i| PointId(i);
        assert_eq!(angle_name(&t, (p(0), p(1)), (p(0), p(2))), "BAC");
        assert_eq!(angle_name(&t, (p(2), p(3)), (p(0), p(2))), "DCA");
        assert_eq!(angle_name(&t, (p(0), p(1)), (p(2), p(3))), "between AB and CD");
    }

    #[test]
    fn ndg_wording() {
        let t = table();
        let f = Fact::new(PredicateKind::Coll, &[PointId(0), PointId(1), PointId(2)]).unwrap();
        assert_eq!(negated(&t, &f), "A, B and C are not collinear");
    }

    #[test]
    fn builtin_covers_year7() {
        assert!(TemplateCatalog::builtin().for_rules(&crate::catalog::year7()).is_ok());
    }

    #[test]
    fn missing_and_bad_templates() {
        let rules = crate::catalog::year7();
        let bare = TemplateCatalog {
            templates: BTreeMap::new(),
        };
        assert!(matches!(bare.for_rules(&rules), Err(TemplateError::Missing(_))));
        let bad = TemplateCatalog::builtin().with("R6", "{Z,B}");
        assert!(matches!(bad.for_rules(&rules), Err(TemplateError::BadSlot { .. })));
        let open = TemplateCatalog::builtin().with("R6", "{A,B");
        assert!(matches!(open.for_rules(&rules), Err(TemplateError::Unclosed { .. })));
    }
}
