//! Graphviz output for orders and decompositions.

use std::fmt::Write;

use super::Document;
use crate::decomposition::{classify, Decomposition};
use crate::error::{Error, Result};
use crate::order::{strict_covers, Poset, Proset};

fn quote(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

fn edges(p: &Proset) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = strict_covers(p)
        .into_iter()
        .map(|(a, b)| (p.element_name(a).to_owned(), p.element_name(b).to_owned()))
        .collect();
    out.sort();
    out
}

fn sorted_elements(p: &Proset) -> Vec<String> {
    let mut names = p.elements().to_vec();
    names.sort();
    names
}

/// Hasse diagram, drawn bottom to top.
pub fn export_dot_poset(p: &Poset) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
    for e in sorted_elements(p) {
        let _ = writeln!(out, "  {};", quote(&e));
    }
    for (a, b) in edges(p) {
        let _ = writeln!(out, "  {} -> {};", quote(&a), quote(&b));
    }
    out.push_str("}\n");
    out
}

/// Strata as nodes with their flags; edges are covers of the decomposition
/// preorder, with mutually related strata joined by a dashed edge.
pub fn export_dot_decomposition(d: &Decomposition) -> Result<String> {
    let report = classify(d)?;
    let pre = d.decomposition_preorder()?;
    let mut out = String::from("digraph decomposition {\n  rankdir=BT;\n");
    let _ = writeln!(out, "  label={};", quote(report.level.as_str()));
    for id in sorted_elements(&pre) {
        let i = d.stratum_index(&id)?;
        let lc = if report.locally_closed[&id] {
            "locally closed"
        } else {
            "not locally closed"
        };
        let points = d.space().sorted_names(d.stratum(i)).join(",");
        let label = format!("{id}\\n{{{points}}}\\n{lc}");
        let _ = writeln!(
            out,
            "  {} [label=\"{}\"];",
            quote(&id),
            label.replace('"', "\\\"")
        );
    }
    for (a, b) in edges(&pre) {
        let _ = writeln!(out, "  {} -> {};", quote(&a), quote(&b));
    }
    let mut equivalent = Vec::new();
    for i in 0..pre.len() {
        for j in 0..pre.len() {
            let (a, b) = (pre.element_name(i), pre.element_name(j));
            if a < b && pre.leq(i, j) && pre.leq(j, i) {
                equivalent.push((a.to_owned(), b.to_owned()));
            }
        }
    }
    equivalent.sort();
    for (a, b) in equivalent {
        let _ = writeln!(
            out,
            "  {} -> {} [style=dashed, dir=both];",
            quote(&a),
            quote(&b)
        );
    }
    out.push_str("}\n");
    Ok(out)
}

pub fn export_dot(doc: &Document) -> Result<String> {
    match doc {
        Document::Poset(p) | Document::OrderOnStrata(p) => Ok(export_dot_poset(p)),
        Document::Proset(p) => Ok(export_dot_poset(&Poset::new(p.clone())?)),
        Document::Decomposition(d) => export_dot_decomposition(d),
        Document::PosetStratification(ps) => export_dot_decomposition(ps.decomposition()),
        other => Err(Error::InvalidDocument(format!(
            "cannot draw a `{}` document",
            other.kind()
        ))),
    }
}
