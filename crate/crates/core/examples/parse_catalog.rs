//! Parses a FOF file, prints each unit back and compiles the rules.
//!
//! With no argument the embedded rule catalog is used.

use std::path::Path;

use geodd::catalog::{self, rules_from_units, YEAR7_FILE};
use geodd::engine::RuleSource;
use geodd::fof::{parse_units, print_unit, Role};

fn main() {
    let (name, text) = match std::env::args().nth(1) {
        Some(p) => (p.clone(), std::fs::read_to_string(&p).expect("readable file")),
        None => (YEAR7_FILE.to_string(), catalog::embedded_file(YEAR7_FILE).unwrap().to_string()),
    };
    let parsed = match parse_units(&text, Path::new(&name)) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    for inc in &parsed.includes {
        println!("include {} (line {})", inc.path, inc.origin.line);
    }
    for unit in &parsed.units {
        println!("{}", print_unit(unit));
    }

    let axioms: Vec<_> = parsed
        .units
        .iter()
        .filter(|u| u.role == Role::Axiom && !u.formula.is_ground_fact())
        .cloned()
        .collect();
    match rules_from_units(&axioms, RuleSource::File) {
        Ok(rules) => {
            println!();
            for r in &rules {
                let enumerated: Vec<&str> = r.enum_vars.iter().map(|&v| r.vars[v].as_str()).collect();
                println!(
                    "{:<8} {} premises, {} ndg, {} conclusions, enumerates {:?}",
                    r.label(),
                    r.premises.len(),
                    r.ndg_premises.len(),
                    r.conclusions.len(),
                    enumerated
                );
            }
        }
        Err(e) => eprintln!("rule error: {e}"),
    }
}
