use std::collections::HashSet;
use std::path::Path;

use super::lexer::{tokenize, Spanned, Tok};
use super::{Atom, IncludeDirective, ParsedFile, QuantifiedHorn, Role, SourceOrigin, SourceUnit, Term};
use crate::error::{FofError, Position};
use crate::geometry::PredicateKind;

/// Parses every `fof` unit and `include` directive of one file.
pub fn parse_units(text: &str, origin: &Path) -> Result<ParsedFile, FofError> {
    let tokens = tokenize(text, origin)?;
    let mut p = Parser {
        tokens,
        at: 0,
        origin,
    };
    let mut file = ParsedFile::default();
    let mut names = HashSet::new();
    while !p.done() {
        let (kw, line, column) = p.ident()?;
        match kw.as_str() {
            "include" => {
                p.expect(Tok::LParen)?;
                let path = match p.next()? {
                    Spanned {
                        tok: Tok::Quoted(s),
                        ..
                    } => s,
                    other => return Err(p.unexpected(&other, "a quoted file name")),
                };
                p.expect(Tok::RParen)?;
                p.expect(Tok::Dot)?;
                file.includes.push(IncludeDirective {
                    path,
                    origin: SourceOrigin {
                        path: origin.to_path_buf(),
                        line,
                    },
                });
            }
            "fof" => {
                p.expect(Tok::LParen)?;
                let (name, nl, nc) = p.ident()?;
                if !names.insert(name.clone()) {
                    return Err(FofError::DuplicateUnit {
                        pos: p.pos(nl, nc),
                        name,
                    });
                }
                p.expect(Tok::Comma)?;
                let (role, rl, rc) = p.ident()?;
                let role = match role.as_str() {
                    "axiom" => Role::Axiom,
                    "conjecture" => Role::Conjecture,
                    other => {
                        return Err(FofError::Syntax {
                            pos: p.pos(rl, rc),
                            message: format!("unsupported role `{other}`"),
                        })
                    }
                };
                p.expect(Tok::Comma)?;
                let expr = p.expr()?;
                p.expect(Tok::RParen)?;
                p.expect(Tok::Dot)?;
                let formula = to_horn(expr, &p.pos(line, column))?;
                file.units.push(SourceUnit {
                    name,
                    role,
                    formula,
                    origin: SourceOrigin {
                        path: origin.to_path_buf(),
                        line,
                    },
                });
            }
            other => {
                return Err(FofError::Syntax {
                    pos: p.pos(line, column),
                    message: format!("expected `fof` or `include`, found `{other}`"),
                })
            }
        }
    }
    Ok(file)
}

#[derive(Debug)]
enum Expr {
    Atom(Atom, Position),
    Not(Box<Expr>, Position),
    And(Vec<Expr>),
    Implies(Box<Expr>, Box<Expr>, Position),
    Forall(Vec<(String, Position)>, Box<Expr>, Position),
}

struct Parser<'a> {
    tokens: Vec<Spanned>,
    at: usize,
    origin: &'a Path,
}

impl Parser<'_> {
    fn done(&self) -> bool {
        self.at >= self.tokens.len()
    }

    fn pos(&self, line: usize, column: usize) -> Position {
        Position {
            path: self.origin.to_path_buf(),
            line,
            column,
        }
    }

    fn here(&self) -> Position {
        match self.tokens.get(self.at).or(self.tokens.last()) {
            Some(t) => self.pos(t.line, t.column),
            None => self.pos(1, 1),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.at).map(|t| &t.tok)
    }

    fn next(&mut self) -> Result<Spanned, FofError> {
        match self.tokens.get(self.at) {
            Some(t) => {
                self.at += 1;
                Ok(t.clone())
            }
            None => Err(FofError::Syntax {
                pos: self.here(),
                message: "unexpected end of input (unbalanced parentheses?)".into(),
            }),
        }
    }

    fn unexpected(&self, t: &Spanned, wanted: &str) -> FofError {
        FofError::Syntax {
            pos: self.pos(t.line, t.column),
            message: format!("expected {wanted}, found {}", t.tok.describe()),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), FofError> {
        let t = self.next()?;
        if t.tok == tok {
            Ok(())
        } else {
            Err(self.unexpected(&t, &tok.describe()))
        }
    }

    fn ident(&mut self) -> Result<(String, usize, usize), FofError> {
        let t = self.next()?;
        match t.tok {
            Tok::Ident(s) => Ok((s, t.line, t.column)),
            _ => Err(self.unexpected(&t, "an identifier")),
        }
    }

    fn expr(&mut self) -> Result<Expr, FofError> {
        let lhs = self.conj()?;
        if self.peek() == Some(&Tok::Implies) {
            let pos = self.here();
            self.at += 1;
            let rhs = self.conj()?;
            if self.peek() == Some(&Tok::Implies) {
                return Err(FofError::Shape {
                    pos: self.here(),
                    message: "chained implications are not supported".into(),
                });
            }
            return Ok(Expr::Implies(Box::new(lhs), Box::new(rhs), pos));
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> Result<Expr, FofError> {
        let mut parts = vec![self.unary()?];
        while self.peek() == Some(&Tok::Amp) {
            self.at += 1;
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("one part")
        } else {
            Expr::And(parts)
        })
    }

    fn unary(&mut self) -> Result<Expr, FofError> {
        let t = self.next()?;
        match t.tok {
            Tok::Tilde => {
                let inner = self.unary()?;
                Ok(Expr::Not(Box::new(inner), self.pos(t.line, t.column)))
            }
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Bang => {
                self.expect(Tok::LBracket)?;
                let mut vars = Vec::new();
                loop {
                    let (v, l, c) = self.ident()?;
                    vars.push((v, self.pos(l, c)));
                    let sep = self.next()?;
                    match sep.tok {
                        Tok::Comma => continue,
                        Tok::RBracket => break,
                        _ => return Err(self.unexpected(&sep, "`,` or `]`")),
                    }
                }
                self.expect(Tok::Colon)?;
                let body = self.expr()?;
                Ok(Expr::Forall(vars, Box::new(body), self.pos(t.line, t.column)))
            }
            Tok::Ident(name) => {
                let pos = self.pos(t.line, t.column);
                let predicate = PredicateKind::from_name(&name).ok_or_else(|| {
                    FofError::UnknownPredicate {
                        pos: pos.clone(),
                        name: name.clone(),
                    }
                })?;
                self.expect(Tok::LParen)?;
                let mut args = Vec::new();
                loop {
                    let (arg, _, _) = self.ident()?;
                    let starts_upper = arg.chars().next().is_some_and(|c| c.is_ascii_uppercase());
                    args.push(if starts_upper {
                        Term::Var(arg)
                    } else {
                        Term::Const(arg)
                    });
                    let sep = self.next()?;
                    match sep.tok {
                        Tok::Comma => continue,
                        Tok::RParen => break,
                        _ => return Err(self.unexpected(&sep, "`,` or `)`")),
                    }
                }
                if args.len() != predicate.arity() {
                    return Err(FofError::Arity {
                        pos,
                        name,
                        expected: predicate.arity(),
                        found: args.len(),
                    });
                }
                Ok(Expr::Atom(Atom { predicate, args }, pos))
            }
            _ => Err(self.unexpected(&t, "a formula")),
        }
    }
}

fn shape(pos: &Position, message: &str) -> FofError {
    FofError::Shape {
        pos: pos.clone(),
        message: message.to_string(),
    }
}

fn flatten(e: Expr, out: &mut Vec<Expr>) {
    match e {
        Expr::And(parts) => parts.into_iter().for_each(|p| flatten(p, out)),
        other => out.push(other),
    }
}

fn to_horn(expr: Expr, unit_pos: &Position) -> Result<QuantifiedHorn, FofError> {
    let (vars, body) = match expr {
        Expr::Forall(vars, body, _) => (vars, *body),
        other => (Vec::new(), other),
    };
    let mut formula = QuantifiedHorn::default();
    let mut seen = HashSet::new();
    for (v, pos) in &vars {
        if !v.starts_with(|c: char| c.is_ascii_uppercase()) {
            return Err(shape(pos, &format!("`{v}` is not a variable name")));
        }
        if !seen.insert(v.clone()) {
            return Err(shape(pos, &format!("variable `{v}` quantified twice")));
        }
        formula.variables.push(v.clone());
    }

    let (lhs, rhs) = match body {
        Expr::Implies(l, r, _) => (Some(*l), *r),
        other => (None, other),
    };
    let mut atoms_pos = Vec::new();
    if let Some(lhs) = lhs {
        let mut lits = Vec::new();
        flatten(lhs, &mut lits);
        for lit in lits {
            match lit {
                Expr::Atom(a, pos) => {
                    atoms_pos.push((a.clone(), pos));
                    formula.premises.push(a);
                }
                Expr::Not(inner, npos) => match *inner {
                    Expr::Atom(a, pos) => {
                        atoms_pos.push((a.clone(), pos));
                        formula.ndg_premises.push(a);
                    }
                    _ => return Err(shape(&npos, "negation applies to atoms only")),
                },
                Expr::Forall(_, _, pos) => {
                    return Err(shape(&pos, "quantifiers are only allowed at the top"))
                }
                Expr::Implies(_, _, pos) => return Err(shape(&pos, "nested implication")),
                Expr::And(_) => unreachable!("flattened"),
            }
        }
    }
    let mut lits = Vec::new();
    flatten(rhs, &mut lits);
    for lit in lits {
        match lit {
            Expr::Atom(a, pos) => {
                atoms_pos.push((a.clone(), pos));
                formula.conclusions.push(a);
            }
            Expr::Not(_, pos) => {
                return Err(shape(&pos, "negated literals are only allowed in premises"))
            }
            Expr::Forall(_, _, pos) => {
                return Err(shape(&pos, "quantifiers are only allowed at the top"))
            }
            Expr::Implies(_, _, pos) => return Err(shape(&pos, "nested implication")),
            Expr::And(_) => unreachable!("flattened"),
        }
    }
    if formula.conclusions.is_empty() {
        return Err(shape(unit_pos, "formula has no conclusion"));
    }
    for (atom, pos) in atoms_pos {
        for v in atom.vars() {
            if !seen.contains(v) {
                return Err(FofError::Unquantified {
                    pos,
                    name: v.to_string(),
                });
            }
        }
    }
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<ParsedFile, FofError> {
        parse_units(text, Path::new("test.ax"))
    }

    fn vars(names: &[&str]) -> Vec<Term> {
        names.iter().map(|n| Term::Var(n.to_string())).collect()
    }

    #[test]
    fn rule_r6() {
        let f = parse(
            "fof(ruleR6,axiom,(![A,B,C] :\n           (rightangle(A,B,B,C) => perp(A,B,B,C)) )).",
        )
        .unwrap();
        let u = &f.units[0];
        assert_eq!(u.name, "ruleR6");
        assert_eq!(u.role, Role::Axiom);
        assert_eq!(u.formula.variables, ["A", "B", "C"]);
        assert_eq!(
            u.formula.premises,
            vec![Atom {
                predicate: PredicateKind::RightAngle,
                args: vars(&["A", "B", "B", "C"])
            }]
        );
        assert_eq!(u.formula.conclusions[0].predicate, PredicateKind::Perp);
    }

    #[test]
    fn theorem1_without_inner_parens() {
        let f = parse(
            "include('geometryDeductiveDatabaseMethod.ax').\n\
             fof(theorem1,conjecture,(![A,B,C,D] :\n\
             parallelogram(A,B,C,D) => cong(A,B,C,D) & cong(A,D,B,C) )).",
        )
        .unwrap();
        assert_eq!(f.includes[0].path, "geometryDeductiveDatabaseMethod.ax");
        let u = &f.units[0];
        assert_eq!(u.role, Role::Conjecture);
        assert_eq!(u.formula.premises.len(), 1);
        assert_eq!(u.formula.conclusions.len(), 2);
        assert_eq!(u.formula.conclusions[1].args, vars(&["A", "D", "B", "C"]));
    }

    #[test]
    fn negated_premise_becomes_ndg() {
        let f = parse(
            "fof(ruleD58,axiom,(![A,B,C,P,Q,R] : ((eqangle(A,B,B,C,P,Q,Q,R) & \
             eqangle(A,C,B,C,P,R,Q,R) & ~coll(A,B,C)) => simtri(A,B,C,P,Q,R)) )).",
        )
        .unwrap();
        let h = &f.units[0].formula;
        assert_eq!(h.premises.len(), 2);
        assert_eq!(h.ndg_premises.len(), 1);
        assert_eq!(h.ndg_premises[0].predicate, PredicateKind::Coll);
    }

    #[test]
    fn empty_text() {
        let f = parse("").unwrap();
        assert!(f.units.is_empty() && f.includes.is_empty());
        assert!(parse("% only a comment\n").unwrap().units.is_empty());
    }

    #[test]
    fn error_cases() {
        assert!(matches!(
            parse("fof(a,axiom,(![A] : foo(A))).").unwrap_err(),
            FofError::UnknownPredicate { .. }
        ));
        assert!(matches!(
            parse("fof(a,axiom,(![A,B] : cong(A,B))).").unwrap_err(),
            FofError::Arity { .. }
        ));
        assert!(matches!(
            parse("fof(a,axiom,(![A,B,C] : coll(A,B,C))).\nfof(a,axiom,(![A,B,C] : coll(A,B,C))).")
                .unwrap_err(),
            FofError::DuplicateUnit { .. }
        ));
        assert!(matches!(
            parse("fof(a,axiom,(![A,B] : coll(A,B,C))).").unwrap_err(),
            FofError::Unquantified { .. }
        ));
        assert!(matches!(
            parse("fof(a,axiom,(![A,B,C] : coll(A,B,C) => ~coll(A,B,C))).").unwrap_err(),
            FofError::Shape { .. }
        ));
    }

    #[test]
    fn unbalanced_d9_listing_is_reported() {
        let text = "fof(ruleD9,axiom,(![A,B,C,D,E,F] :\n\
                    (perp(A,B,E,F) & perp(C,D,E,F) => para(A,B,C,D) )).";
        match parse(text).unwrap_err() {
            FofError::Syntax { pos, .. } => assert_eq!(pos.line, 2),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn ground_fact_with_constants() {
        let f = parse("fof(h1,axiom,parallelogram(a,b,c,d)).").unwrap();
        let h = &f.units[0].formula;
        assert!(h.is_ground_fact());
        assert_eq!(h.conclusions[0].args[0], Term::Const("a".into()));
    }
}
