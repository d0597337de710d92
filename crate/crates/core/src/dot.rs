//! Graphviz export of Hasse diagrams.

use std::fmt::Write;

use crate::lattice::AnyLattice;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One node per element, one edge per cover pair, drawn bottom-up with the
/// bottom alone on the lowest rank. Orthocomplements go in each node's
/// `xlabel`.
pub fn render(l: &AnyLattice) -> String {
    let lat = l.lattice();
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(lat.name())).unwrap();
    out.push_str("  rankdir=BT;\n  node [shape=plaintext];\n  edge [arrowhead=none];\n");
    for e in lat.elements() {
        match l.ortho() {
            Some(o) => writeln!(
                out,
                "  n{e} [label={}, xlabel={}];",
                quote(lat.label(e)),
                quote(&format!("⊥ {}", lat.label(o.ortho(e))))
            ),
            None => writeln!(out, "  n{e} [label={}];", quote(lat.label(e))),
        }
        .unwrap();
    }
    writeln!(out, "  {{ rank=min; n{}; }}", lat.bottom()).unwrap();
    for (a, b) in lat.hasse() {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}
