use std::collections::HashSet;

use crate::geometry::Fact;
use crate::proof::ProofTrace;

const HEADERS: [&str; 4] = ["New Facts", "Rules", "Already Known Facts", "ndg."];

/// Four-column proof table. The known-facts column is cumulative: a fact
/// cited by several steps is listed only the first time.
pub fn render_table(trace: &ProofTrace) -> String {
    let show = |f: &Fact| trace.show(f);
    let neg = |f: &Fact| format!("~{}", trace.show(f));
    let mut rows: Vec<[Vec<String>; 4]> = Vec::new();
    for h in &trace.hypotheses {
        rows.push([vec![show(h)], vec!["by hyp.".into()], vec![], vec![]]);
    }
    let mut listed: HashSet<Fact> = HashSet::new();
    for step in &trace.steps {
        let known: Vec<String> = step
            .used_facts
            .iter()
            .filter(|f| listed.insert(f.canonical()))
            .map(show)
            .collect();
        rows.push([
            step.new_facts.iter().map(show).collect(),
            vec![step.rule.clone()],
            known,
            step.ndgs.iter().map(neg).collect(),
        ]);
    }

    let mut widths = HEADERS.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = cell.iter().map(String::len).fold(*w, usize::max);
        }
    }
    let line = |cells: [&str; 4]| -> String {
        let parts: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        format!("| {} |\n", parts.join(" | "))
    };
    let rule = {
        let parts: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        format!("|-{}-|\n", parts.join("-|-"))
    };

    let mut out = line(HEADERS);
    out.push_str(&rule);
    for row in &rows {
        let height = row.iter().map(Vec::len).max().unwrap_or(1).max(1);
        for i in 0..height {
            let cell = |c: usize| row[c].get(i).map(String::as_str).unwrap_or("");
            out.push_str(&line([cell(0), cell(1), cell(2), cell(3)]));
        }
        out.push_str(&rule);
    }
    out
}
