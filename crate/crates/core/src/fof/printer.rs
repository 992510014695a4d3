use super::{Atom, SourceUnit};

pub fn print_atom(atom: &Atom) -> String {
    let args: Vec<&str> = atom.args.iter().map(|t| t.name()).collect();
    format!("{}({})", atom.predicate.name(), args.join(","))
}

/// Renders one unit as a single line of FOF text.
pub fn print_unit(unit: &SourceUnit) -> String {
    let f = &unit.formula;
    let mut lhs: Vec<String> = f.premises.iter().map(print_atom).collect();
    lhs.extend(f.ndg_premises.iter().map(|a| format!("~{}", print_atom(a))));
    let rhs: Vec<String> = f.conclusions.iter().map(print_atom).collect();
    let body = if lhs.is_empty() {
        rhs.join(" & ")
    } else {
        format!("{} => {}", lhs.join(" & "), rhs.join(" & "))
    };
    let formula = if f.variables.is_empty() {
        format!("({body})")
    } else {
        format!("(![{}] : ({body}))", f.variables.join(","))
    };
    format!("fof({},{},{}).", unit.name, unit.role.as_str(), formula)
}

#[cfg(test)]
mod tests {
    use std::path::Path;

    use super::*;
    use crate::fof::parse_units;

    fn strip(s: &str) -> String {
        s.chars().filter(|c| !c.is_whitespace()).collect()
    }

    #[test]
    fn r1a_matches_listing_modulo_whitespace() {
        let listing = "fof(ruleR1a,axiom,(![A,B,C,D] :\n           (parallelogram(A,B,C,D) => para(A,B,D,C)) )).";
        let unit = &parse_units(listing, Path::new("r.ax")).unwrap().units[0];
        assert_eq!(strip(&print_unit(unit)), strip(listing));
    }

    #[test]
    fn theorem2_one_line() {
        let listing = "fof(theorem2,conjecture,(![A,B,C,D] : rectangle(A,B,C,D) => cong(A,C,B,D) )).";
        let unit = &parse_units(listing, Path::new("t.p")).unwrap().units[0];
        let printed = print_unit(unit);
        assert!(!printed.contains('\n'));
        assert_eq!(
            printed,
            "fof(theorem2,conjecture,(![A,B,C,D] : (rectangle(A,B,C,D) => cong(A,C,B,D))))."
        );
    }
}
